//! Vertex-star kernel: mixed area, cotangent area gradient, normal and
//! signed mean curvature of one vertex, generic over the scalar type.
//!
//! Every per-vertex quantity consumed by the energies depends only on the
//! closed 1-ring of that vertex, so the gradient of a vertex term is the
//! Jacobian of this kernel with respect to the star positions.

use super::dual::{Real, V3};

/// Cotangent of 1e-3 rad; larger cotangents mean a near-degenerate angle.
pub const COT_LIMIT: f64 = 999.999_666_666_6;

#[derive(Debug, Clone, Copy)]
pub struct StarEval<T> {
    /// Mixed Voronoi area of the centre vertex.
    pub area: T,
    /// Sum of unnormalised incident face normals (twice the area-weighted normal).
    pub normal_sum: V3<T>,
    /// Signed scalar mean curvature `g . n / area`, where `g` is the gradient
    /// of the total area with respect to the centre.
    pub mean_curvature: T,
    /// Largest cotangent met in the incident faces.
    pub max_cot: f64,
}

/// Evaluates the star of a vertex. `p[0]` is the centre, `faces` are local
/// triples with the centre first.
pub fn eval_star<T: Real>(p: &[V3<T>], faces: &[[usize; 3]]) -> StarEval<T> {
    let zero = T::cst(0.0);
    let mut area = zero;
    let mut grad = V3::zero();
    let mut msum = V3::zero();
    let mut max_cot = f64::NEG_INFINITY;
    let c = p[0];
    for f in faces {
        let (pj, pl) = (p[f[1]], p[f[2]]);
        let ej = pj - c;
        let el = pl - c;
        let cr = ej.cross(&el);
        let dbl = cr.norm();
        msum += cr;
        let cot0 = ej.dot(&el) / dbl;
        let cotj = (c - pj).dot(&(pl - pj)) / dbl;
        let cotl = (c - pl).dot(&(pj - pl)) / dbl;
        max_cot = max_cot.max(cot0.value()).max(cotj.value()).max(cotl.value());

        // edge (c, j) is opposite l, edge (c, l) is opposite j
        grad += (c - pj).mul_s(cotl.scale(0.5)) + (c - pl).mul_s(cotj.scale(0.5));

        let tri = dbl.scale(0.5);
        area += if cot0.value() < 0.0 {
            tri.scale(0.5)
        } else if cotj.value() < 0.0 || cotl.value() < 0.0 {
            tri.scale(0.25)
        } else {
            (ej.norm_sq() * cotl + el.norm_sq() * cotj).scale(0.125)
        };
    }
    let n = msum.mul_s(T::cst(1.0) / msum.norm());
    StarEval {
        area,
        normal_sum: msum,
        mean_curvature: grad.dot(&n) / area,
        max_cot,
    }
}

/// Cotangent weights `w_0k = cot(alpha) + cot(beta)` of the edges from the
/// centre to each star vertex (`weights[0]` is unused and zero).
pub fn cot_weights(p: &[V3<f64>], faces: &[[usize; 3]]) -> Vec<f64> {
    let mut w = vec![0.0; p.len()];
    let c = p[0];
    for f in faces {
        let (pj, pl) = (p[f[1]], p[f[2]]);
        let dbl = (pj - c).cross(&(pl - c)).norm();
        let cotj = (c - pj).dot(&(pl - pj)) / dbl;
        let cotl = (c - pl).dot(&(pj - pl)) / dbl;
        w[f[1]] += cotl;
        w[f[2]] += cotj;
    }
    w
}
