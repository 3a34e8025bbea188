//! Vertex-lumped discretizations of the Willmore, Helfrich and Hawking functionals.
//!
//! Every functional has the form `sum_v e(H_v, A_v, x_v) + b * (sum_v H_v A_v)^2`
//! where `H_v` is the signed mean curvature and `A_v` the mixed vertex area.
//! [`LocalTerm`] carries `e` with its partial derivatives so that the
//! optimizer differentiates exactly the quantity evaluated here.

use std::f64::consts::PI;

use nalgebra::{Point3, Vector3};

use super::config::{EnergyConfig, EnergyKind};
use crate::error::Result;
use crate::geometry::{total_area, TriMesh, VertexGeometry};

/// Value and partials of one vertex term `e(H, A, x)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LocalTerm {
    pub value: f64,
    pub d_h: f64,
    pub d_area: f64,
    pub d_x: Vector3<f64>,
}

pub(crate) fn local_term(cfg: &EnergyConfig, h: f64, area: f64, x: &Point3<f64>) -> LocalTerm {
    match cfg.kind {
        EnergyKind::Willmore => LocalTerm {
            value: 0.25 * h * h * area,
            d_h: 0.5 * h * area,
            d_area: 0.25 * h * h,
            d_x: Vector3::zeros(),
        },
        EnergyKind::Helfrich => {
            let s = h + cfg.c.value(x);
            LocalTerm {
                value: s * s * area,
                d_h: 2.0 * s * area,
                d_area: s * s,
                d_x: cfg.c.gradient(x) * (2.0 * s * area),
            }
        }
        EnergyKind::Hawking => {
            let p2 = cfg.p_value().powi(2);
            LocalTerm {
                value: (h * h - p2) * area,
                d_h: 2.0 * h * area,
                d_area: h * h - p2,
                d_x: Vector3::zeros(),
            }
        }
    }
}

/// Coefficient of the nonlocal `(integral of H)^2` term.
pub(crate) fn nonlocal_coefficient(cfg: &EnergyConfig) -> f64 {
    match cfg.kind {
        EnergyKind::Helfrich => cfg.b,
        _ => 0.0,
    }
}

/// Objective value from precomputed vertex geometry. Summation is sequential
/// in vertex order, so the result does not depend on the thread count.
pub(crate) fn objective_from(geo: &VertexGeometry, positions: &[Point3<f64>], cfg: &EnergyConfig) -> f64 {
    let mut sum = 0.0;
    for (v, x) in positions.iter().enumerate() {
        sum += local_term(cfg, geo.mean_curvature[v], geo.area[v], x).value;
    }
    let b = nonlocal_coefficient(cfg);
    if b != 0.0 {
        let total_h = geo.integrated_mean_curvature();
        sum += b * total_h * total_h;
    }
    sum
}

/// The energy the optimizer minimizes for `cfg.kind`: Willmore energy,
/// Helfrich energy, or the Hawking deficit.
pub fn energy(mesh: &TriMesh, cfg: &EnergyConfig) -> Result<f64> {
    let geo = VertexGeometry::compute(mesh)?;
    Ok(objective_from(&geo, mesh.positions(), cfg))
}

/// `W = 1/4 sum_v H_v^2 A_v`.
pub fn willmore(mesh: &TriMesh) -> Result<f64> {
    energy(mesh, &EnergyConfig::willmore())
}

/// `sum_v (H_v + c(x_v))^2 A_v + b (sum_v H_v A_v)^2`, no 1/4 prefactor.
pub fn helfrich(mesh: &TriMesh, cfg: &EnergyConfig) -> Result<f64> {
    let cfg = EnergyConfig {
        kind: EnergyKind::Helfrich,
        ..*cfg
    };
    energy(mesh, &cfg)
}

/// `sum_v (H_v^2 - P^2) A_v`.
pub fn hawking_deficit(mesh: &TriMesh, cfg: &EnergyConfig) -> Result<f64> {
    let cfg = EnergyConfig {
        kind: EnergyKind::Hawking,
        ..*cfg
    };
    energy(mesh, &cfg)
}

/// `sqrt(|S| / 16 pi) * (1 - deficit / 16 pi)`.
pub fn hawking_energy(mesh: &TriMesh, cfg: &EnergyConfig) -> Result<f64> {
    let deficit = hawking_deficit(mesh, cfg)?;
    let area = total_area(mesh);
    Ok((area / (16.0 * PI)).sqrt() * (1.0 - deficit / (16.0 * PI)))
}
