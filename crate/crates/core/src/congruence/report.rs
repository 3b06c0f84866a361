use serde::{Deserialize, Serialize};

use super::registry::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One evaluated instance. `lhs` and `rhs` are exact values; residues are
/// present when the instance is a congruence and the side is p-integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs_residue: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs_residue: Option<String>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub terms: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub identity: String,
    pub params: Params,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| !w.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
