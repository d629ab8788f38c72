//! The polynomial part of the cohomology ring of `C_p^r`, restriction to
//! subgroups, regular pairs vanishing on prescribed subgroups, and cohomology
//! dimensions from minimal free resolutions.

mod avoidance;
mod poly;
mod resolution;

pub use avoidance::{
    find_avoidance_pair, random_avoidance_instance, verify_avoidance_pair, AvoidanceCheck,
    AvoidancePair, AvoidanceWitness, ClassName,
};
pub use poly::{
    format_form, normalize_form, proportional, restrict_class, restrict_form, LinearFormProduct,
    PolyClass,
};
pub use resolution::{
    cohomology_dims, e1_dimension_table, minimal_free_resolution, trivial_resolution,
    ResolutionSlice,
};
