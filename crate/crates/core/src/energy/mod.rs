//! Bending functionals on closed meshes and the a-priori estimates around them.

mod bounds;
mod config;
mod functional;

pub use bounds::{
    cauchy_schwarz_constant, feasibility, helfrich_lower_bound, willmore_ambient_comparison,
    willmore_bound_from_helfrich, BoundCase, BoundReport, Feasibility, ISOPERIMETRIC_SLACK,
};
pub use config::{BuiltinField, Curvature, EnergyConfig, EnergyKind, HawkingField};
pub use functional::{energy, hawking_deficit, hawking_energy, helfrich, willmore};
pub(crate) use functional::{local_term, nonlocal_coefficient};
