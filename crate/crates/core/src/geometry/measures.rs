//! Area, enclosed volume and per-vertex differential quantities.

use nalgebra::{Point3, Vector3};
use rayon::prelude::*;

use super::dual::V3;
use super::mesh::TriMesh;
use super::star::{eval_star, COT_LIMIT};
use crate::error::{Error, Result};

pub type VertexScalars = Vec<f64>;
pub type VertexVectors = Vec<Vector3<f64>>;

pub(crate) fn v3(p: &Point3<f64>) -> V3<f64> {
    V3::new(p.x, p.y, p.z)
}

/// Sum of face areas.
pub fn total_area(mesh: &TriMesh) -> f64 {
    (0..mesh.n_faces()).map(|f| mesh.face_area(f)).sum()
}

/// Signed enclosed volume via the divergence theorem, taken about the vertex
/// centroid. Positive for outward-oriented meshes.
pub fn signed_volume(mesh: &TriMesh) -> f64 {
    let x0 = mesh.centroid();
    let p = mesh.positions();
    mesh.faces()
        .iter()
        .map(|&[a, b, c]| {
            let (pa, pb, pc) = (p[a] - x0, p[b] - x0, p[c] - x0);
            pa.dot(&pb.cross(&pc))
        })
        .sum::<f64>()
        / 6.0
}

/// Enclosed volume; errors when the signed volume is not positive.
pub fn enclosed_volume(mesh: &TriMesh) -> Result<f64> {
    let volume = signed_volume(mesh);
    if volume > 0.0 {
        Ok(volume)
    } else {
        Err(Error::Orientation { volume })
    }
}

/// Per-vertex geometry shared by energies, gradients and residuals.
#[derive(Debug, Clone)]
pub struct VertexGeometry {
    /// Mixed Voronoi vertex areas; they partition the total area.
    pub area: VertexScalars,
    /// Signed mean curvature, sum-of-principal-curvatures convention.
    pub mean_curvature: VertexScalars,
    /// Unit area-weighted vertex normals.
    pub normal: VertexVectors,
}

impl VertexGeometry {
    pub fn compute(mesh: &TriMesh) -> Result<Self> {
        let p = mesh.positions();
        let evals: Vec<_> = mesh
            .stars()
            .par_iter()
            .map(|s| {
                let local: Vec<V3<f64>> = s.verts.iter().map(|&v| v3(&p[v])).collect();
                eval_star(&local, &s.faces)
            })
            .collect();
        for (v, e) in evals.iter().enumerate() {
            if e.max_cot > COT_LIMIT {
                return Err(blowup_at(mesh, v));
            }
        }
        Ok(VertexGeometry {
            area: evals.iter().map(|e| e.area).collect(),
            mean_curvature: evals.iter().map(|e| e.mean_curvature).collect(),
            normal: evals
                .iter()
                .map(|e| {
                    let m = Vector3::new(e.normal_sum.x, e.normal_sum.y, e.normal_sum.z);
                    m / m.norm()
                })
                .collect(),
        })
    }

    /// Discrete integral of `H`.
    pub fn integrated_mean_curvature(&self) -> f64 {
        self.mean_curvature
            .iter()
            .zip(&self.area)
            .map(|(h, a)| h * a)
            .sum()
    }
}

/// Error naming the sliver face in the star of `v`.
pub(crate) fn blowup_at(mesh: &TriMesh, v: usize) -> Error {
    let face = mesh
        .vertex_faces(v)
        .iter()
        .copied()
        .find(|&f| min_angle(mesh, f) < 1e-3)
        .unwrap_or(mesh.vertex_faces(v)[0]);
    Error::CotangentBlowup { face }
}

fn min_angle(mesh: &TriMesh, f: usize) -> f64 {
    let p = mesh.positions();
    let t = mesh.faces()[f];
    (0..3)
        .map(|k| {
            let (a, b, c) = (p[t[k]], p[t[(k + 1) % 3]], p[t[(k + 2) % 3]]);
            corner_angle(&a, &b, &c)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Interior angle at `a` of triangle (a, b, c).
pub(crate) fn corner_angle(a: &Point3<f64>, b: &Point3<f64>, c: &Point3<f64>) -> f64 {
    let (u, w) = (b - a, c - a);
    u.cross(&w).norm().atan2(u.dot(&w))
}

/// Mixed Voronoi vertex areas.
pub fn vertex_areas(mesh: &TriMesh) -> VertexScalars {
    let p = mesh.positions();
    mesh.stars()
        .par_iter()
        .map(|s| {
            let local: Vec<V3<f64>> = s.verts.iter().map(|&v| v3(&p[v])).collect();
            eval_star(&local, &s.faces).area
        })
        .collect()
}

/// Per-vertex signed mean curvature `H` (unit sphere: `H = 2`).
pub fn mean_curvature(mesh: &TriMesh) -> Result<VertexScalars> {
    Ok(VertexGeometry::compute(mesh)?.mean_curvature)
}

/// Unit area-weighted vertex normals.
pub fn vertex_normals(mesh: &TriMesh) -> VertexVectors {
    (0..mesh.n_vertices())
        .map(|v| {
            let n: Vector3<f64> = mesh
                .vertex_faces(v)
                .iter()
                .map(|&f| mesh.face_normal_scaled(f))
                .sum();
            n.normalize()
        })
        .collect()
}

/// Angle-defect sum minus `2 pi chi`; zero up to rounding for any closed mesh.
pub fn gauss_bonnet_defect(mesh: &TriMesh) -> f64 {
    angle_defect_sum(mesh) - 2.0 * std::f64::consts::PI * mesh.euler_characteristic() as f64
}

/// Sum over vertices of `2 pi - (angle sum)`.
pub fn angle_defect_sum(mesh: &TriMesh) -> f64 {
    let p = mesh.positions();
    let mut angle_sum = vec![0.0; mesh.n_vertices()];
    for t in mesh.faces() {
        for k in 0..3 {
            let (a, b, c) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            angle_sum[a] += corner_angle(&p[a], &p[b], &p[c]);
        }
    }
    angle_sum
        .iter()
        .map(|s| 2.0 * std::f64::consts::PI - s)
        .sum()
}
