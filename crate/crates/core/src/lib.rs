//! Constructive tilings of integer intervals by 4-sets that share a gap
//! sequence `p, q, r`.
//!
//! The pipeline builds coverings of small planar shapes by blocks in Z³
//! ([`blocks`]), assembles them into wide layers ([`layers`]), flattens
//! stacks of layers onto the integers ([`flatten`]) and glues shifted copies
//! into a full interval ([`assemble`]). Every emitted object is checked by an
//! independent verifier, and [`oracle`] provides brute-force searches to
//! cross-check small cases.

pub mod assemble;
pub mod blocks;
pub mod error;
pub mod exec;
pub mod flatten;
pub mod json;
pub mod layers;
pub mod oracle;
pub mod render;
pub mod tiling;

pub use assemble::{decompose_good, threshold, tile, tile_with, Branch, Plan, PlanParameters};
pub use blocks::{
    base_covering, compose, covering_s3, covering_s4, covering_s7, is_block, replicate_height, stretch_e1, translate,
    verify_covering, BaseId, Block, Cell, Covering, CoveringRejection, CoveringViolation, Family, Point3, Vec3,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use flatten::{flatten_blocks, FamilyCase, LayerStack, StackCell};
pub use layers::{layer, layer_x1, layer_x2, layer_y1, layer_y2, Layer, LayerKind, NiceLayer};
pub use oracle::{min_interval, solve_covering, solve_interval, SearchBudget, SearchOutcome};
pub use tiling::{gap_multiset, verify_tiling, GapSequence, Part, Tiling, TilingRejection, TilingViolation, Verdict};
