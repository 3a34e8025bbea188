//! Pointwise Euler-Lagrange residual of the constrained problem.
//!
//! For the Helfrich functional the first variation along `phi nu` is
//! `∫ G phi` with
//!
//! ```text
//! G = -2 [ ΔH + H|A°|^2 + c|A|^2 - cH^2 - c^2 H/2
//!          - (2H + c) dc(nu) + tr_S Hess c + b I |A°|^2 - b I H^2 / 2 ]
//! ```
//!
//! where `I = ∫H` and `|A|^2 = |A°|^2 + H^2/2`. Critical points of
//! `E - lambda A - p V` satisfy `G = lambda H + p`, and the residual reported
//! here is `R = -(G - lambda H - p) / 2`. The same normalization is used for
//! the other kinds: Willmore is `1/4` of the `c = b = 0` Helfrich variation,
//! the Hawking deficit shifts `lambda` by `P^2`.
//!
//! On a round sphere of radius `r` with constant `c` this vanishes iff
//! `c^2/r + 2c/r^2 - lambda/r - p/2 + 16 pi b / r = 0`.

use crate::energy::{Curvature, EnergyConfig, EnergyKind};
use crate::error::Result;
use crate::geometry::star::cot_weights;
use crate::geometry::{shape_operators, v3, TriMesh, VertexGeometry, VertexScalars};

/// Cotangent Laplace-Beltrami of a vertex function, normalized by `areas`.
/// Negative semidefinite: `Δ x = -H nu` on the embedding.
pub fn cotan_laplacian(mesh: &TriMesh, areas: &[f64], f: &[f64]) -> VertexScalars {
    let p = mesh.positions();
    (0..mesh.n_vertices())
        .map(|v| {
            let star = mesh.star(v);
            let local: Vec<_> = star.verts.iter().map(|&w| v3(&p[w])).collect();
            let w = cot_weights(&local, &star.faces);
            let sum: f64 = star
                .verts
                .iter()
                .zip(&w)
                .skip(1)
                .map(|(&j, wj)| 0.5 * wj * (f[j] - f[v]))
                .sum();
            sum / areas[v]
        })
        .collect()
}

/// Per-vertex residual `R` for multipliers `lambda` (area) and `p` (volume).
pub fn el_residual(mesh: &TriMesh, cfg: &EnergyConfig, lambda: f64, p: f64) -> Result<VertexScalars> {
    let zero = Curvature::constant(0.0);
    let (c, b, lam, pres, scale) = match cfg.kind {
        EnergyKind::Willmore => (zero, 0.0, 4.0 * lambda, 4.0 * p, 0.25),
        EnergyKind::Helfrich => (cfg.c, cfg.b, lambda, p, 1.0),
        EnergyKind::Hawking => (zero, 0.0, lambda + cfg.p_value().powi(2), p, 1.0),
    };
    let geo = VertexGeometry::compute(mesh)?;
    let shape = shape_operators(mesh);
    let lap_h = cotan_laplacian(mesh, &geo.area, &geo.mean_curvature);
    let total_h = if b != 0.0 { geo.integrated_mean_curvature() } else { 0.0 };
    let out = mesh
        .positions()
        .iter()
        .enumerate()
        .map(|(v, x)| {
            let h = geo.mean_curvature[v];
            let tf = shape.tracefree_norm_sq[v];
            let full = tf + 0.5 * h * h;
            let nu = geo.normal[v];
            let cv = c.value(x);
            let dc = c.gradient(x).dot(&nu);
            let hess = c.hessian(x);
            let tan_trace = hess.trace() - nu.dot(&(hess * nu));
            let r = lap_h[v] + h * tf + cv * full - cv * h * h - 0.5 * cv * cv * h
                - (2.0 * h + cv) * dc
                + tan_trace
                + b * total_h * (tf - 0.5 * h * h)
                + 0.5 * lam * h
                + 0.5 * pres;
            scale * r
        })
        .collect();
    Ok(out)
}

/// Sup norm and area-weighted RMS of a vertex function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualNorms {
    pub max: f64,
    pub rms: f64,
}

pub fn residual_norms(mesh: &TriMesh, r: &[f64]) -> Result<ResidualNorms> {
    let geo = VertexGeometry::compute(mesh)?;
    let total: f64 = geo.area.iter().sum();
    let sq: f64 = r.iter().zip(&geo.area).map(|(x, a)| x * x * a).sum();
    Ok(ResidualNorms {
        max: r.iter().map(|x| x.abs()).fold(0.0, f64::max),
        rms: (sq / total).sqrt(),
    })
}
