//! Deterministic test categories with known answers.

mod disk;
mod quivers;
mod toy;

pub use disk::{
    disk_with_stops_category, path_count_oracle, stop_removal_testcase, Arc, DiskModel,
    StopRemovalCase, WeightConstraint,
};
pub use quivers::{
    acyclic_pair_category, contractible_pair_category, ex_category, graded_a3_category,
    linear_quiver_category, twisted_a3_variants, unit_category, unit_category_with_action,
    GaugeVariant,
};
pub use toy::{retraction_toy, RetractionToy};
