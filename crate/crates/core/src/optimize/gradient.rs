//! Exact gradients of the discrete energies and constraint functionals.
//!
//! Vertex terms depend only on their closed 1-ring, so each star is pushed
//! through [`eval_star`] with dual numbers seeded on the star coordinates;
//! the resulting local Jacobians of `H_v` and `A_v` are then combined by the
//! chain rule and scattered in vertex order.

use nalgebra::{Point3, Vector3};
use rayon::prelude::*;

use crate::energy::{local_term, nonlocal_coefficient, EnergyConfig};
use crate::error::{Error, Result};
use crate::geometry::dual::{Dual, Real, V3};
use crate::geometry::star::{eval_star, COT_LIMIT};
use crate::geometry::{blowup_at, Star, TriMesh};

pub type Gradient = Vec<Vector3<f64>>;

/// Largest supported valence (tangent width 96 = 3 * 32).
pub const MAX_VALENCE: usize = 31;

#[derive(Debug, Clone)]
struct StarJacobian {
    h: f64,
    area: f64,
    max_cot: f64,
    dh: Vec<Vector3<f64>>,
    darea: Vec<Vector3<f64>>,
}

fn jacobian_n<const N: usize>(p: &[Point3<f64>], star: &Star) -> StarJacobian {
    let local: Vec<V3<Dual<N>>> = star
        .verts
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let q = p[v];
            V3::new(
                Dual::var(q.x, 3 * k),
                Dual::var(q.y, 3 * k + 1),
                Dual::var(q.z, 3 * k + 2),
            )
        })
        .collect();
    let e = eval_star(&local, &star.faces);
    let unpack = |d: &Dual<N>| -> Vec<Vector3<f64>> {
        (0..star.verts.len())
            .map(|k| Vector3::new(d.d[3 * k], d.d[3 * k + 1], d.d[3 * k + 2]))
            .collect()
    };
    StarJacobian {
        h: e.mean_curvature.value(),
        area: e.area.value(),
        max_cot: e.max_cot,
        dh: unpack(&e.mean_curvature),
        darea: unpack(&e.area),
    }
}

fn star_jacobian(mesh: &TriMesh, vertex: usize) -> Result<StarJacobian> {
    let (p, star) = (mesh.positions(), mesh.star(vertex));
    let width = 3 * star.verts.len();
    let j = if width <= 24 {
        jacobian_n::<24>(p, star)
    } else if width <= 48 {
        jacobian_n::<48>(p, star)
    } else if width <= 96 {
        jacobian_n::<96>(p, star)
    } else {
        return Err(Error::ValenceTooLarge {
            vertex,
            valence: star.valence(),
            max: MAX_VALENCE,
        });
    };
    if j.max_cot > COT_LIMIT {
        return Err(blowup_at(mesh, vertex));
    }
    Ok(j)
}

/// Energy value and its gradient with respect to every vertex position.
pub fn energy_and_gradient(mesh: &TriMesh, cfg: &EnergyConfig) -> Result<(f64, Gradient)> {
    let p = mesh.positions();
    let jacs: Vec<StarJacobian> = (0..mesh.n_vertices())
        .into_par_iter()
        .map(|v| star_jacobian(mesh, v))
        .collect::<Result<_>>()?;
    let b = nonlocal_coefficient(cfg);
    let total_h: f64 = jacs.iter().map(|j| j.h * j.area).sum();
    let mut value = 0.0;
    let mut grad = vec![Vector3::zeros(); mesh.n_vertices()];
    for (v, j) in jacs.iter().enumerate() {
        let t = local_term(cfg, j.h, j.area, &p[v]);
        value += t.value;
        let coef_h = t.d_h + 2.0 * b * total_h * j.area;
        let coef_a = t.d_area + 2.0 * b * total_h * j.h;
        let star = mesh.star(v);
        for (k, &w) in star.verts.iter().enumerate() {
            grad[w] += j.dh[k] * coef_h + j.darea[k] * coef_a;
        }
        grad[v] += t.d_x;
    }
    value += b * total_h * total_h;
    if let Some(v) = grad.iter().position(|g| !g.iter().all(|c| c.is_finite())) {
        return Err(Error::NonFiniteGradient { vertex: v });
    }
    Ok((value, grad))
}

/// Gradient of the discrete energy selected by `cfg`.
pub fn energy_gradient(mesh: &TriMesh, cfg: &EnergyConfig) -> Result<Gradient> {
    Ok(energy_and_gradient(mesh, cfg)?.1)
}

/// Gradient of the total area.
pub fn area_gradient(mesh: &TriMesh) -> Gradient {
    let p = mesh.positions();
    let mut g = vec![Vector3::zeros(); mesh.n_vertices()];
    for &[a, b, c] in mesh.faces() {
        let n = (p[b] - p[a]).cross(&(p[c] - p[a])).normalize();
        g[a] += n.cross(&(p[c] - p[b])) * 0.5;
        g[b] += n.cross(&(p[a] - p[c])) * 0.5;
        g[c] += n.cross(&(p[b] - p[a])) * 0.5;
    }
    g
}

/// Gradient of the signed enclosed volume.
pub fn volume_gradient(mesh: &TriMesh) -> Gradient {
    let p = mesh.positions();
    let x0 = mesh.centroid();
    let mut g = vec![Vector3::zeros(); mesh.n_vertices()];
    for &[a, b, c] in mesh.faces() {
        let (pa, pb, pc) = (p[a] - x0, p[b] - x0, p[c] - x0);
        g[a] += pb.cross(&pc) / 6.0;
        g[b] += pc.cross(&pa) / 6.0;
        g[c] += pa.cross(&pb) / 6.0;
    }
    g
}

/// Euclidean norm of a per-vertex gradient.
pub fn gradient_norm(g: &[Vector3<f64>]) -> f64 {
    g.iter().map(|v| v.norm_squared()).sum::<f64>().sqrt()
}
