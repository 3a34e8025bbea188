//! Exact energy gradients, the constrained minimizer and the Euler-Lagrange
//! residual used to check its output.

mod fd;
mod gradient;
mod chart;
mod minimize;
mod precond;
mod residual;

pub use fd::{directional_derivative, fd_gradient, fd_gradient_of};
pub use gradient::{
    area_gradient, energy_and_gradient, energy_gradient, gradient_norm, volume_gradient, Gradient,
    MAX_VALENCE,
};
pub use minimize::{
    minimize_constrained, AlStep, ConstraintSpec, IterationRecord, OptimOptions, OptimResult,
    OptimState, Termination,
};
pub use residual::{cotan_laplacian, el_residual, residual_norms, ResidualNorms};
