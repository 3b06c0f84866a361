//! Modular and p-adic checks of the identities satisfied by the families.

mod padic;
mod registry;
mod report;

pub use padic::{alpha, gamma, is_prime, ord_p, primes_up_to, reduce_mod, valuation, CvsBranch, PadicError, Residue, ValuationReport};
pub use registry::{
    cvs_cose_rhs, cvs_cota_extra, cvs_cota_extra_as_printed, verify, verify_perturbed, IdentityId, Params, VerifyError,
};
pub use report::{Report, Verdict, Witness};
