//! Discrete triangle-mesh kernel: closed indexed meshes, areas, enclosed
//! volume, mean curvature, shape operators and the angle-defect check.

pub mod dual;
pub mod fixtures;
mod measures;
mod mesh;
mod shape;
pub(crate) mod star;

pub use measures::{
    angle_defect_sum, enclosed_volume, gauss_bonnet_defect, mean_curvature, signed_volume,
    total_area, vertex_areas, vertex_normals, VertexGeometry, VertexScalars, VertexVectors,
};
pub(crate) use measures::{blowup_at, v3};
pub use mesh::{Edge, Star, TriMesh, DEGENERATE_AREA_RATIO};
pub use shape::{shape_operators, tracefree_a_norm_sq, ShapeOperators};
