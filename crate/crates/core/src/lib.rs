//! Square-tile sikku kolams as crossing assignments on shared edges.
//!
//! A template is a grid of dots, each the center of a square cell. A kolam
//! chooses, for every edge shared by two cells, whether the curve crosses it.
//! The tile in each cell follows from which of its edges are crossed.

pub mod enumeration;
pub mod error;
pub mod feasibility;
pub mod format;
pub mod render;
pub mod strands;
pub mod symmetry;
pub mod template;
pub mod tiles;

pub use enumeration::{
    brute_force_histogram, closed_form_es, count_exact_symmetry, count_up_to_symmetry, count_with_symmetry,
    exact_symmetry_counts, generate_with_symmetry, CountReport, Kolam, SymmetricGenerator,
};
pub use error::{Error, Result};
pub use feasibility::{
    compose_from_multiset, edge_budget_check, min_tiles_to_specify, mirror_line_constraints, parity_check,
    validate_partial, Composition, PartialPlacement, TileMultiset,
};
pub use format::{parse_kolam, serialize_kolam, KolamFile};
pub use render::{render_catalog, render_svg, RenderStyle};
pub use strands::{encirclement_check, loop_count, tile_strands, trace, Port};
pub use symmetry::{edge_orbits, template_group, GroupLabel, PointGroup, SymOp};
pub use template::{build, CellId, EdgeId, Template, TemplateShape, Variant};
pub use tiles::{EdgeDir, EndSet, TileKind, TilePlacement};
