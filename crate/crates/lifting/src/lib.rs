//! Lifting problems against monomorphisms of finite presheaves, the
//! certificate verifier, and fibrancy tests at a dimension bound.
//!
//! Every verdict here is about truncated presheaves. A lift that is not
//! found within budget is reported as such and never as nonexistence, and a
//! missing finite cell certificate proves nothing about the transfinite
//! class it approximates.

mod certify;
pub mod corpus;
mod fibrancy;
mod problem;

pub use certify::{horn_product_certificate, verify_certificate, CertificateCheck};
pub use fibrancy::{is_formal_quasicategory, isofibration_check, TruncatedVerdict, Verdict};
pub use problem::{all_lifts, find_lift, naive_lifts, LiftOutcome, LiftingProblem};

use intertwiner::IntertwinerError;
use presheaf_engine::PresheafError;
use simplex_core::SimplexError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftingError {
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error(transparent)]
    Intertwiner(#[from] IntertwinerError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error("the left map of a lifting problem must be a monomorphism")]
    NotMono,
    #[error("the maps do not fit together: {0}")]
    Shape(String),
    #[error("the square does not commute at {object}, element {element}")]
    NotCommuting { object: String, element: String },
    #[error("deciding dimension {dim} needs a site of dimension at least {needed}, have {have}")]
    Truncation { dim: usize, needed: usize, have: usize },
    #[error("the {0} of the map is not a formal quasicategory up to the bound")]
    NotFibrant(&'static str),
}
