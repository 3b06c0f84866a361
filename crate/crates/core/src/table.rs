//! Tables of family values and their CSV, JSON and LaTeX encodings.
//!
//! Cells are exact: integers print as `a`, other values as `a/b` (or
//! `\frac{a}{b}` in LaTeX). Every encoding parses back to the same values.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{Family, FamilyError, FamilyIndex};
use crate::rational::{format_rational, parse_rational, Rational};

pub const MAX_N: usize = 64;
pub const MAX_ABS_K: i64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("bad range '{0}', expected a..b or a single value")]
    BadRange(String),
    #[error("unknown format '{0}', expected csv, json or latex")]
    BadFormat(String),
    #[error("{0}")]
    OutOfBounds(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "latex" | "tex" => Ok(Format::Latex),
            _ => Err(TableError::BadFormat(s.to_string())),
        }
    }
}

/// Parses `a..b` (inclusive) or a single value `a`.
pub fn parse_range<T>(text: &str) -> Result<RangeInclusive<T>, TableError>
where
    T: FromStr + PartialOrd + Copy,
{
    let bad = || TableError::BadRange(text.to_string());
    let text = text.trim();
    // a leading minus belongs to the first bound
    let split = text.get(1..).and_then(|rest| rest.find("..")).map(|i| i + 1);
    let (lo, hi) = match split {
        Some(i) => (&text[..i], &text[i + 2..]),
        None => (text, text),
    };
    let lo: T = lo.trim().parse().map_err(|_| bad())?;
    let hi: T = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// Rows are orders `n`, columns are weights `k` in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputTable {
    pub family: Family,
    pub ns: Vec<usize>,
    pub ks: Vec<i64>,
    pub cells: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    family: String,
    k: Vec<i64>,
    rows: Vec<JsonRow>,
}

#[derive(Serialize, Deserialize)]
struct JsonRow {
    n: usize,
    values: Vec<String>,
}

impl OutputTable {
    pub fn compute(family: Family, ns: RangeInclusive<usize>, ks: RangeInclusive<i64>) -> Result<Self, TableError> {
        if *ns.end() > MAX_N {
            return Err(TableError::OutOfBounds(format!("n must be at most {MAX_N}")));
        }
        if ks.start().abs() > MAX_ABS_K || ks.end().abs() > MAX_ABS_K {
            return Err(TableError::OutOfBounds(format!("|k| must be at most {MAX_ABS_K}")));
        }
        if family == Family::TildeD && *ks.end() > 0 {
            return Err(TableError::OutOfBounds("tilde-d needs k <= 0".to_string()));
        }
        let ns: Vec<usize> = ns.collect();
        let ks: Vec<i64> = ks.collect();
        let cells = ns
            .iter()
            .map(|&n| ks.iter().map(|&k| FamilyIndex::new(family, n, k).value()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OutputTable { family, ns, ks, cells })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Latex => self.to_latex(),
        }
    }

    pub fn parse(text: &str, format: Format) -> Result<Self, TableError> {
        match format {
            Format::Csv => Self::from_csv(text),
            Format::Json => Self::from_json(text),
            Format::Latex => Self::from_latex(text),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = format!("# {}\nn", self.family.id());
        for k in &self.ks {
            let _ = write!(out, ",k={k}");
        }
        out.push('\n');
        for (n, row) in self.ns.iter().zip(&self.cells) {
            let _ = write!(out, "{n}");
            for c in row {
                let _ = write!(out, ",{}", format_rational(c));
            }
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let table = JsonTable {
            family: self.family.id().to_string(),
            k: self.ks.clone(),
            rows: self
                .ns
                .iter()
                .zip(&self.cells)
                .map(|(&n, row)| JsonRow { n, values: row.iter().map(format_rational).collect() })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&table).expect("table serializes");
        s.push('\n');
        s
    }

    fn to_latex(&self) -> String {
        let mut out = format!("% {}\n\\begin{{tabular}}{{r|{}}}\n", self.family.id(), "r".repeat(self.ks.len()));
        out.push_str("$n \\backslash k$");
        for k in &self.ks {
            let _ = write!(out, " & ${k}$");
        }
        out.push_str(" \\\\\n\\hline\n");
        for (n, row) in self.ns.iter().zip(&self.cells) {
            let _ = write!(out, "${n}$");
            for c in row {
                let _ = write!(out, " & ${}$", latex_cell(c));
            }
            out.push_str(" \\\\\n");
        }
        out.push_str("\\end{tabular}\n");
        out
    }

    fn from_csv(text: &str) -> Result<Self, TableError> {
        let mut lines = text.lines();
        let family = header_family(lines.next(), "# ")?;
        let header = lines.next().ok_or_else(|| TableError::Parse("missing header".into()))?;
        let ks = header
            .split(',')
            .skip(1)
            .map(|h| h.trim_start_matches("k=").parse::<i64>().map_err(|_| TableError::Parse(format!("bad column '{h}'"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut ns = Vec::new();
        let mut cells = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let mut fields = line.split(',');
            ns.push(parse_index(fields.next())?);
            cells.push(fields.map(parse_cell).collect::<Result<Vec<_>, _>>()?);
        }
        Ok(OutputTable { family, ns, ks, cells })
    }

    fn from_json(text: &str) -> Result<Self, TableError> {
        let table: JsonTable = serde_json::from_str(text).map_err(|e| TableError::Parse(e.to_string()))?;
        let family = table.family.parse().map_err(TableError::Parse)?;
        let ns = table.rows.iter().map(|r| r.n).collect();
        let cells = table
            .rows
            .iter()
            .map(|r| r.values.iter().map(|v| parse_cell(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OutputTable { family, ns, ks: table.k, cells })
    }

    fn from_latex(text: &str) -> Result<Self, TableError> {
        let mut lines = text.lines();
        let family = header_family(lines.next(), "% ")?;
        let mut ks = Vec::new();
        let mut ns = Vec::new();
        let mut cells = Vec::new();
        for line in lines {
            let Some(body) = line.strip_suffix(" \\\\") else { continue };
            let mut fields = body.split(" & ").map(|f| f.trim().trim_matches('$'));
            let first = fields.next().unwrap_or_default();
            if first.starts_with("n ") {
                ks = fields.map(|f| f.parse::<i64>().map_err(|_| TableError::Parse(format!("bad column '{f}'")))).collect::<Result<_, _>>()?;
            } else {
                ns.push(parse_index(Some(first))?);
                cells.push(fields.map(parse_latex_cell).collect::<Result<Vec<_>, _>>()?);
            }
        }
        Ok(OutputTable { family, ns, ks, cells })
    }
}

fn latex_cell(c: &Rational) -> String {
    if c.is_integer() {
        return c.numer().to_string();
    }
    let sign = if c.numer() < &BigInt::from(0) { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", c.numer().magnitude(), c.denom())
}

fn parse_latex_cell(text: &str) -> Result<Rational, TableError> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let value = match body.strip_prefix("\\frac{") {
        Some(rest) => {
            let (num, den) = rest
                .strip_suffix('}')
                .and_then(|r| r.split_once("}{"))
                .ok_or_else(|| TableError::Parse(format!("bad cell '{text}'")))?;
            parse_cell(&format!("{num}/{den}"))?
        }
        None => parse_cell(body)?,
    };
    Ok(if neg { -value } else { value })
}

fn parse_cell(text: &str) -> Result<Rational, TableError> {
    parse_rational(text).ok_or_else(|| TableError::Parse(format!("bad cell '{text}'")))
}

fn parse_index(text: Option<&str>) -> Result<usize, TableError> {
    let text = text.unwrap_or_default();
    text.trim().parse().map_err(|_| TableError::Parse(format!("bad row index '{text}'")))
}

fn header_family(line: Option<&str>, prefix: &str) -> Result<Family, TableError> {
    line.and_then(|l| l.strip_prefix(prefix))
        .ok_or_else(|| TableError::Parse("missing family line".into()))?
        .trim()
        .parse()
        .map_err(TableError::Parse)
}
