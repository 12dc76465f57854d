//! Exact combinatorics of the simplex category.
//!
//! Objects `[n]` are plain naturals. Maps are [`MonotoneMap`]s stored as their
//! value sequence. Products `Δ^n × Δ^m` are handled through strict chains in
//! the grid poset `[n] × [m]`, which are exactly the nondegenerate simplices.

mod filtration;
mod monotone;
mod shuffle;

pub use filtration::{
    horn_product_filtration, inner_filtration, missing_simplices, verify_filtration, Chain,
    ChainComplex, HornFiltration, HornStep,
};
pub use monotone::{binomial, enumerate_monotone, epi_mono_factor, MonotoneMap};
pub use shuffle::{shuffles, Axis, Shuffle};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("values {values:?} do not define a monotone map [{from}] -> [{target}]")]
    NotMonotone {
        from: usize,
        target: usize,
        values: Vec<usize>,
    },
    #[error("cannot compose: target [{left}] differs from source [{right}]")]
    Mismatch { left: usize, right: usize },
    #[error("horn Λ^{n}_{j} is not inner")]
    OuterHorn { n: usize, j: usize },
    #[error("invalid shuffle string {0:?}")]
    BadShuffle(String),
    #[error("filtration search exhausted its budget of {0} nodes")]
    Budget(usize),
    #[error("no inner filtration exists from the given subcomplex")]
    NoFiltration,
    #[error("filtration step {index} is invalid: {reason}")]
    BadStep { index: usize, reason: String },
}
