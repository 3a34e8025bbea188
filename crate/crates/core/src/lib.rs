//! Constrained minimization of Willmore-type bending energies on closed
//! triangle meshes, and a combinatorial engine for bubble forests with
//! ghost components.
//!
//! - [`geometry`]: mesh kernel (area, volume, mean curvature, shape operators)
//! - [`energy`]: Willmore, Helfrich and Hawking functionals, a-priori bounds
//! - [`optimize`]: exact gradients, augmented-Lagrangian minimizer, Euler-Lagrange residual
//! - [`forest`]: dual graphs, ghost reduction, coloring lemma, branched Gauss-Bonnet
//! - [`io`]: OBJ/OFF meshes and JSON helpers

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod energy;
pub mod error;
pub mod forest;
pub mod geometry;
pub mod io;
pub mod optimize;

pub use error::{Error, Result};
pub use geometry::TriMesh;
