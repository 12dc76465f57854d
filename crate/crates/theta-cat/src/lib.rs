//! Graded categories with a Reedy-style factorization: the tower `Θ_k` and
//! binary products of such categories.
//!
//! Every category here is normal skeletal: identities are the only
//! automorphisms, each arrow factors uniquely as a minus map followed by a
//! plus map, and `dim` is monotone along plus maps.

mod category;
mod cr;
mod product;
mod theta;

pub use category::{is_mono, Category, Factorization};
pub use cr::{check_cr_axioms, is_degenerate_family_oracle, CrReport};
pub use product::Product;
pub use theta::{Theta, ThetaMap, ThetaObj};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("cannot parse object {0:?}")]
    ParseObject(String),
    #[error("cannot parse map {0:?}")]
    ParseMap(String),
    #[error("object {obj} does not live in {category}")]
    WrongLevel { obj: String, category: String },
}
