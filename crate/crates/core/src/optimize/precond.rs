//! Bending-type preconditioner `P = K M^-1 K` with `K = L + s M`, where `L`
//! is the cotangent stiffness matrix and `M` the lumped vertex-area mass.
//! `P` approximates the Hessian of the bending energies in the normal
//! direction, so preconditioned descent needs a mesh-independent number of
//! steps.

use nalgebra::DMatrix;
use nalgebra_sparse::factorization::CscCholesky;
use nalgebra_sparse::{CooMatrix, CscMatrix};

use crate::geometry::{total_area, v3, vertex_areas, TriMesh};

/// Shift `s` in `K = L + s M`: the first non-constant Laplace eigenvalue
/// `2 / R^2` of a sphere with the same area.
fn spectral_shift(mesh: &TriMesh) -> f64 {
    8.0 * std::f64::consts::PI / total_area(mesh)
}

/// Cotangent stiffness matrix as `(row, col, value)` triplets.
fn stiffness_triplets(mesh: &TriMesh) -> Vec<(usize, usize, f64)> {
    let p = mesh.positions();
    let mut out = Vec::with_capacity(12 * mesh.faces().len());
    for f in mesh.faces() {
        for k in 0..3 {
            let (i, j, o) = (f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
            let (a, b) = (v3(&p[i]) - v3(&p[o]), v3(&p[j]) - v3(&p[o]));
            let w = 0.5 * a.dot(&b) / a.cross(&b).norm();
            out.extend([(i, j, -w), (j, i, -w), (i, i, w), (j, j, w)]);
        }
    }
    out
}

pub(crate) struct Preconditioner {
    chol: CscCholesky<f64>,
    mass: Vec<f64>,
}

impl Preconditioner {
    /// `None` if `K` is not positive definite, which can happen on badly
    /// obtuse meshes.
    pub(crate) fn new(mesh: &TriMesh) -> Option<Self> {
        let n = mesh.n_vertices();
        let mass = vertex_areas(mesh);
        let shift = spectral_shift(mesh);
        let mut coo = CooMatrix::new(n, n);
        for (v, &m) in mass.iter().enumerate() {
            coo.push(v, v, shift * m);
        }
        for (i, j, w) in stiffness_triplets(mesh) {
            coo.push(i, j, w);
        }
        let chol = CscCholesky::factor(&CscMatrix::from(&coo)).ok()?;
        Some(Preconditioner { chol, mass })
    }

    /// `P^-1` applied to every column of a vertex-indexed matrix.
    pub(crate) fn apply(&self, rhs: &DMatrix<f64>) -> DMatrix<f64> {
        let mut x = self.chol.solve(rhs);
        for (v, m) in self.mass.iter().enumerate() {
            x.row_mut(v).scale_mut(*m);
        }
        self.chol.solve(&x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures;

    #[test]
    fn inverse_is_symmetric_positive() {
        let m = fixtures::perturbed_sphere(2, 0.05, 3);
        let n = m.n_vertices();
        let pc = Preconditioner::new(&m).unwrap();
        let a = DMatrix::from_fn(n, 1, |v, _| (v as f64 * 0.37).sin());
        let b = DMatrix::from_fn(n, 1, |v, _| (v as f64 * 0.11).cos());
        let (pa, pb) = (pc.apply(&a), pc.apply(&b));
        assert!((a.dot(&pb) - b.dot(&pa)).abs() < 1e-10 * a.dot(&pa));
        assert!(a.dot(&pa) > 0.0);
    }

    #[test]
    fn stiffness_annihilates_constants() {
        let m = fixtures::icosphere(1, 1.0);
        let mut row = vec![0.0; m.n_vertices()];
        for (i, _, w) in stiffness_triplets(&m) {
            row[i] += w;
        }
        assert!(row.iter().all(|r| r.abs() < 1e-12));
    }
}
