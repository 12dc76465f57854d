//! Labeled simplices `V_K(A⃗)` over `Θ[C]` and the monomorphisms built from
//! them: boundaries, inner horns, spines, corner domains, the generator
//! sets, and spine certificates.
//!
//! Labels are subpresheaves of representables on `C`, so every `V_K(A⃗)` is
//! a subobject of the representable `[n](c⃗)` and all unions are computed
//! inside it.

mod construct;
mod generators;
mod region;
mod spine;

pub use construct::{boundary, corner_domain, horn, in_region, spine, v_construct, v_subobject};
pub use generators::{generator_ids, GeneratorId, GeneratorKind, Library};
pub use region::{Label, LabelSub, LabeledRegion, SimplicialSubset};
pub use spine::{lift_step, product_cells, spine_anodyne_certificate, spine_filtration, spine_filtration_on, SimplicialStep};

use presheaf_engine::PresheafError;
use simplex_core::SimplexError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntertwinerError {
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error("horn Λ^{n}_{k} is not inner")]
    OuterHorn { n: usize, k: usize },
    #[error("expected {expected} label legs, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("leg {0} is not a monomorphism")]
    NotMonic(usize),
    #[error("ambient presheaf is not the representable on the region's carrier")]
    NotRepresentable,
    #[error("unknown generator id {0:?}")]
    BadGenerator(String),
}
