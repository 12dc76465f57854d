//! The coherent realization of labeled simplices as enriched categories,
//! its pointwise description, necklace mapping spaces, cosimplicial
//! resolutions of `[1](c)`, mapping objects and the coherent nerve.
//!
//! Enriched homs are finite presheaves on `C × Δ`, truncated to a box of
//! objects `(c, [m])`.

mod enriched;
mod kstar;
mod necklace;
mod nerve;
mod pointwise;
mod realize;
mod resolution;
mod serial;

pub use enriched::{box_index, box_site, BoxCat, CompTable, EnrichedCat, EnrichedFunctor, Hom};
pub use kstar::{constant_map, constant_object, k_star, k_star_labeled, label_map};
pub use necklace::{nec_mapping_space, nec_mapping_space_at, necklace_maps, NecSpace, Necklace, NecklaceMap};
pub use nerve::{coherent_nerve, functors_from, nerve_presheaf};
pub use pointwise::{pointwise_compare, Pointwise, PointwiseReport};
pub use realize::{cube_edges, realize, realize_labeled_simplex, realize_map, HomKey, Realization};
pub use resolution::{check_filtration, map_object, resolution, resolution_l_filtration, resolution_map, resolution_root, Flavor, MapObject, Resolution};
pub use serial::{parse_enriched, write_enriched};

use intertwiner::IntertwinerError;
use presheaf_engine::PresheafError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error(transparent)]
    Intertwiner(#[from] IntertwinerError),
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("law fails: {0}")]
    Law(String),
    #[error("comparison fails: {0}")]
    Mismatch(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
}
