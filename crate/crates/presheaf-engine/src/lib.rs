//! Finite presheaves on a graded category, truncated to an explicit finite
//! set of objects.
//!
//! A [`Site`] fixes the objects (usually all objects up to some dimension)
//! and numbers every arrow between them. A [`FinPresheaf`] stores one
//! finite set per object and one action table per arrow. On top of that:
//! maps, subobjects, monic pushouts, cells and skeleta, restriction along
//! functors, and a backtracking search for natural maps.

mod cells;
mod certificate;
mod change;
mod map;
mod presheaf;
mod pushout;
mod search;
pub mod serial;
mod site;
mod subobject;

pub use cells::{ez_table, nondegenerate_cells, skeleton, Cell, EzTable};
pub use certificate::{replay, CellCertificate, CertStep, Replay};
pub use change::{cosk0_simplex, e_n, local_termination, preorder_nerve, restrict, underlying_sset};
pub use map::PresheafMap;
pub use presheaf::FinPresheaf;
pub use pushout::{pushout, Pushout};
pub use search::{all_maps, CellFilter, Extension, Search};
pub use site::{ArrowId, Site};
pub use subobject::Subobject;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresheafError {
    #[error("presheaves live on different sites ({left} vs {right})")]
    SiteMismatch { left: String, right: String },
    #[error("subobjects of different ambient presheaves")]
    AmbientMismatch,
    #[error("object {object} is not in site {site}")]
    MissingObject { object: String, site: String },
    #[error("malformed presheaf data: {0}")]
    Malformed(String),
    #[error("functoriality fails: {0}")]
    NotFunctorial(String),
    #[error("naturality fails for arrow {arrow} at element {element}")]
    NotNatural { arrow: String, element: String },
    #[error("not closed under the action: {0}")]
    NotClosed(String),
    #[error("pushouts are only formed along monomorphisms")]
    NotMono,
    #[error("Eilenberg-Zilber decomposition fails at {element} in {object}: {reason}")]
    EzViolation { object: String, element: String, reason: String },
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
