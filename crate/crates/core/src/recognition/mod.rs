//! Outerplanarity, forbidden-pattern containment and the local structure
//! predicates used by the extremal arguments.

mod containment;
mod minor;
mod outerplanar;
mod pattern;
mod structure;

pub use containment::{contains_cycle, contains_disjoint_paths, contains_pattern, is_f_free};
pub use minor::{has_minor, has_minor_named, MinorPattern};
pub use outerplanar::{is_outerplanar, is_outerplanar_by_minors, passes_edge_bound};
pub use pattern::ForbiddenPattern;
pub use structure::{
    common_neighbors, is_linear_forest, local_structure_violations, neighborhood_is_paths,
    neighborhood_path_orders, LocalStructureViolation,
};
