//! Coordinates for the inner solve. A chart is a fixed linear map from a
//! coordinate vector to per-vertex displacements, so the inner objective is
//! a smooth function of the coordinates and its gradient is the pullback of
//! the position gradient. Fixing the chart for a whole inner solve keeps
//! quasi-Newton updates consistent.

use nalgebra::{DMatrix, DVector, Vector3};

use super::gradient::Gradient;
use super::precond::Preconditioner;
use crate::geometry::{vertex_normals, TriMesh};

enum Kind {
    /// Three coordinates per vertex.
    Free,
    /// One offset per vertex along a fixed unit direction.
    Normal(Vec<Vector3<f64>>),
}

pub(crate) struct Chart {
    kind: Kind,
    prec: Option<Preconditioner>,
    n_vertices: usize,
}

impl Chart {
    pub(crate) fn free(mesh: &TriMesh, precondition: bool) -> Self {
        Self::vertexwise(mesh, Kind::Free, precondition)
    }

    pub(crate) fn normal(mesh: &TriMesh, precondition: bool) -> Self {
        Self::vertexwise(mesh, Kind::Normal(vertex_normals(mesh)), precondition)
    }

    fn vertexwise(mesh: &TriMesh, kind: Kind, precondition: bool) -> Self {
        let prec = if precondition { Preconditioner::new(mesh) } else { None };
        if precondition && prec.is_none() {
            log::debug!("stiffness matrix not positive definite; descending without preconditioner");
        }
        Chart {
            kind,
            prec,
            n_vertices: mesh.n_vertices(),
        }
    }

    /// Per-vertex displacement for coordinates `x`.
    pub(crate) fn lift(&self, x: &DVector<f64>) -> Gradient {
        match &self.kind {
            Kind::Free => (0..self.n_vertices)
                .map(|v| Vector3::new(x[3 * v], x[3 * v + 1], x[3 * v + 2]))
                .collect(),
            Kind::Normal(n) => n.iter().zip(x.iter()).map(|(n, s)| n * *s).collect(),
        }
    }

    /// Coordinate gradient for a position gradient `g`; the transpose of
    /// [`Chart::lift`].
    pub(crate) fn pull(&self, g: &[Vector3<f64>]) -> DVector<f64> {
        match &self.kind {
            Kind::Free => DVector::from_iterator(3 * g.len(), g.iter().flat_map(|v| [v.x, v.y, v.z])),
            Kind::Normal(n) => DVector::from_iterator(g.len(), n.iter().zip(g).map(|(n, g)| n.dot(g))),
        }
    }

    /// Initial inverse-Hessian estimate applied to a coordinate vector.
    pub(crate) fn h0(&self, q: &DVector<f64>) -> DVector<f64> {
        match (&self.kind, &self.prec) {
            (_, None) => q.clone(),
            (Kind::Free, Some(pc)) => {
                let cols = DMatrix::from_row_slice(self.n_vertices, 3, q.as_slice());
                let x = pc.apply(&cols);
                DVector::from_iterator(q.len(), (0..self.n_vertices).flat_map(|v| [x[(v, 0)], x[(v, 1)], x[(v, 2)]]))
            }
            (Kind::Normal(_), Some(pc)) => {
                let x = pc.apply(&DMatrix::from_column_slice(q.len(), 1, q.as_slice()));
                DVector::from_column_slice(x.as_slice())
            }
        }
    }
}
