//! Central finite differences, kept deliberately naive: every coordinate is
//! perturbed on a fresh mesh and the full functional re-evaluated.

use nalgebra::Vector3;

use super::gradient::Gradient;
use crate::energy::{energy, EnergyConfig};
use crate::error::Result;
use crate::geometry::TriMesh;

/// Central-difference gradient of `f` with absolute step `h`. O(V^2).
pub fn fd_gradient_of<F>(mesh: &TriMesh, h: f64, f: F) -> Result<Gradient>
where
    F: Fn(&TriMesh) -> Result<f64>,
{
    let base = mesh.positions().to_vec();
    let mut g = vec![Vector3::zeros(); base.len()];
    for v in 0..base.len() {
        for k in 0..3 {
            let mut p = base.clone();
            p[v][k] = base[v][k] + h;
            let fp = f(&mesh.with_positions(p.clone())?)?;
            p[v][k] = base[v][k] - h;
            let fm = f(&mesh.with_positions(p)?)?;
            g[v][k] = (fp - fm) / (2.0 * h);
        }
    }
    Ok(g)
}

/// Central-difference gradient of the configured energy.
pub fn fd_gradient(mesh: &TriMesh, cfg: &EnergyConfig, h: f64) -> Result<Gradient> {
    fd_gradient_of(mesh, h, |m| energy(m, cfg))
}

/// `d/dt E(x + t dir)` at `t = 0` by central differences.
pub fn directional_derivative(
    mesh: &TriMesh,
    cfg: &EnergyConfig,
    dir: &[Vector3<f64>],
    h: f64,
) -> Result<f64> {
    let shifted = |t: f64| -> Result<f64> {
        let p = mesh
            .positions()
            .iter()
            .zip(dir)
            .map(|(x, d)| x + d * t)
            .collect();
        energy(&mesh.with_positions(p)?, cfg)
    };
    Ok((shifted(h)? - shifted(-h)?) / (2.0 * h))
}
