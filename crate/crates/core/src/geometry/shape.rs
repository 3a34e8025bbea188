//! Per-vertex shape operator from a local quadric fit, and the norms of the
//! second fundamental form derived from it.

use nalgebra::{DMatrix, DVector, Matrix2, Vector3};
use rayon::prelude::*;

use super::measures::{vertex_normals, VertexScalars};
use super::mesh::TriMesh;

/// Principal curvatures and second-fundamental-form norms at each vertex.
#[derive(Debug, Clone)]
pub struct ShapeOperators {
    /// Larger principal curvature (outward normal; unit sphere gives 1).
    pub k1: VertexScalars,
    pub k2: VertexScalars,
    /// `|A|^2 = k1^2 + k2^2`.
    pub a_norm_sq: VertexScalars,
    /// `|A°|^2 = |A|^2 - H^2 / 2`, clamped at zero.
    pub tracefree_norm_sq: VertexScalars,
    /// Number of vertices where rounding produced a negative `|A°|^2`.
    pub clamped: usize,
}

/// Fits `w = a u^2 + b uv + c v^2 + d u + e v` in the tangent frame of each
/// vertex over its 1-ring (2-ring when the 1-ring has fewer than six
/// vertices) and reads the shape operator off the graph at the origin.
pub fn shape_operators(mesh: &TriMesh) -> ShapeOperators {
    let normals = vertex_normals(mesh);
    let per_vertex: Vec<(f64, f64)> = (0..mesh.n_vertices())
        .into_par_iter()
        .map(|v| principal_curvatures(mesh, v, &normals[v]))
        .collect();
    let mut clamped = 0;
    let mut out = ShapeOperators {
        k1: Vec::with_capacity(per_vertex.len()),
        k2: Vec::with_capacity(per_vertex.len()),
        a_norm_sq: Vec::with_capacity(per_vertex.len()),
        tracefree_norm_sq: Vec::with_capacity(per_vertex.len()),
        clamped: 0,
    };
    for (k1, k2) in per_vertex {
        let a2 = k1 * k1 + k2 * k2;
        let h = k1 + k2;
        let mut tf = a2 - 0.5 * h * h;
        if tf < 0.0 {
            clamped += 1;
            tf = 0.0;
        }
        out.k1.push(k1);
        out.k2.push(k2);
        out.a_norm_sq.push(a2);
        out.tracefree_norm_sq.push(tf);
    }
    out.clamped = clamped;
    out
}

/// Per-vertex `|A°|^2`.
pub fn tracefree_a_norm_sq(mesh: &TriMesh) -> VertexScalars {
    shape_operators(mesh).tracefree_norm_sq
}

fn ring(mesh: &TriMesh, v: usize) -> Vec<usize> {
    let mut nb: Vec<usize> = mesh.neighbors(v).to_vec();
    if nb.len() < 6 {
        let mut extra = Vec::new();
        for &w in &nb {
            for &x in mesh.neighbors(w) {
                if x != v && !nb.contains(&x) && !extra.contains(&x) {
                    extra.push(x);
                }
            }
        }
        nb.extend(extra);
    }
    nb
}

fn principal_curvatures(mesh: &TriMesh, v: usize, n: &Vector3<f64>) -> (f64, f64) {
    let p = mesh.positions();
    let helper = if n.x.abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let t1 = n.cross(&helper).normalize();
    let t2 = n.cross(&t1);
    let nb = ring(mesh, v);
    let rows = nb.len();
    let mut m = DMatrix::zeros(rows, 5);
    let mut rhs = DVector::zeros(rows);
    // scale coordinates by the mean edge length for conditioning
    let h = nb.iter().map(|&w| (p[w] - p[v]).norm()).sum::<f64>() / rows as f64;
    for (r, &w) in nb.iter().enumerate() {
        let d = (p[w] - p[v]) / h;
        let (x, y, z) = (d.dot(&t1), d.dot(&t2), d.dot(n));
        m[(r, 0)] = x * x;
        m[(r, 1)] = x * y;
        m[(r, 2)] = y * y;
        m[(r, 3)] = x;
        m[(r, 4)] = y;
        rhs[r] = z;
    }
    let coef = m
        .svd(true, true)
        .solve(&rhs, 1e-12)
        .expect("SVD solve with both factors computed");
    // undo scaling: second-order coefficients pick up 1/h, first-order are unchanged
    let (a, b, c) = (coef[0] / h, coef[1] / h, coef[2] / h);
    let (du, dv) = (coef[3], coef[4]);
    let first = Matrix2::new(1.0 + du * du, du * dv, du * dv, 1.0 + dv * dv);
    let w = (1.0 + du * du + dv * dv).sqrt();
    // the outward normal points to +w, so bending away from it is positive curvature
    let second = Matrix2::new(2.0 * a, b, b, 2.0 * c) * (-1.0 / w);
    let s = first.try_inverse().unwrap_or_else(Matrix2::identity) * second;
    let tr = s.trace();
    let det = s.determinant();
    let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
    (0.5 * tr + disc, 0.5 * tr - disc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures;

    #[test]
    fn sphere_is_umbilic() {
        let m = fixtures::icosphere(4, 1.0);
        let s = shape_operators(&m);
        let max_tf = s.tracefree_norm_sq.iter().cloned().fold(0.0, f64::max);
        assert!(max_tf < 0.05, "max |A°|^2 = {max_tf}");
        for v in 0..m.n_vertices() {
            assert!((s.k1[v] - 1.0).abs() < 0.02 && (s.k2[v] - 1.0).abs() < 0.02);
        }
    }

    /// Torus principal curvatures: 1/r around the tube and
    /// cos(v) / (R + r cos(v)) around the axis.
    #[test]
    fn torus_matches_analytic_principal_curvatures() {
        let (big_r, r) = (3.0, 0.5);
        let m = fixtures::torus(big_r, r, 120, 40);
        let s = shape_operators(&m);
        let mut worst: f64 = 0.0;
        for (i, p) in m.positions().iter().enumerate() {
            let rho = (p.x * p.x + p.y * p.y).sqrt();
            let cosv = (rho - big_r) / r;
            let kt = 1.0 / r;
            let ka = cosv / rho;
            let tf = 0.5 * (kt - ka) * (kt - ka);
            worst = worst.max((s.tracefree_norm_sq[i] - tf).abs() / tf);
        }
        assert!(worst < 0.05, "relative |A°|^2 error {worst}");
    }

    #[test]
    fn ellipsoid_matches_closed_form_curvatures() {
        let (a, b, c) = (2.0, 1.0, 1.0);
        let m = fixtures::ellipsoid(4, a, b, c);
        let s = shape_operators(&m);
        let mut worst: f64 = 0.0;
        for (i, p) in m.positions().iter().enumerate() {
            let q = p.x * p.x / a.powi(4) + p.y * p.y / b.powi(4) + p.z * p.z / c.powi(4);
            let gauss = 1.0 / (a * a * b * b * c * c * q * q);
            let mean = (a * a + b * b + c * c - p.coords.norm_squared())
                / (a * a * b * b * c * c * q.powf(1.5));
            let disc = (0.25 * mean * mean - gauss).max(0.0).sqrt();
            let (k1, k2) = (0.5 * mean + disc, 0.5 * mean - disc);
            worst = worst
                .max((s.k1[i] - k1).abs() / k1)
                .max((s.k2[i] - k2).abs() / k2);
        }
        assert!(worst < 0.05, "relative principal curvature error {worst}");
    }
}
