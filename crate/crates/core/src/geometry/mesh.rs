//! Indexed closed triangle mesh with derived adjacency.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::{Point3, Vector3};

use crate::error::{Error, Result};

/// Relative threshold for degenerate faces, in units of the squared bounding-box diagonal.
pub const DEGENERATE_AREA_RATIO: f64 = 1e-12;

/// Closed 1-ring neighbourhood of a vertex.
///
/// `verts[0]` is the centre vertex; `faces` are the incident faces in local
/// indices, rotated so that the centre comes first while keeping the mesh
/// orientation.
#[derive(Debug, Clone)]
pub struct Star {
    pub verts: Vec<usize>,
    pub faces: Vec<[usize; 3]>,
}

impl Star {
    pub fn valence(&self) -> usize {
        self.verts.len() - 1
    }
}

/// Undirected edge with its two incident faces.
#[derive(Debug, Clone, Copy)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub faces: [usize; 2],
}

#[derive(Debug)]
pub struct Topology {
    faces: Vec<[usize; 3]>,
    vertex_faces: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    stars: Vec<Star>,
}

/// Closed, consistently oriented triangle mesh.
///
/// Topology is shared behind an `Arc`; replacing positions via
/// [`TriMesh::with_positions`] is cheap and revalidates only the geometry.
#[derive(Debug, Clone)]
pub struct TriMesh {
    positions: Vec<Point3<f64>>,
    topo: Arc<Topology>,
}

impl TriMesh {
    pub fn new(positions: Vec<Point3<f64>>, faces: Vec<[usize; 3]>) -> Result<Self> {
        let topo = Topology::build(positions.len(), faces)?;
        let mesh = TriMesh {
            positions,
            topo: Arc::new(topo),
        };
        mesh.check_geometry()?;
        Ok(mesh)
    }

    /// New mesh with the same connectivity and different vertex positions.
    pub fn with_positions(&self, positions: Vec<Point3<f64>>) -> Result<Self> {
        if positions.len() != self.positions.len() {
            return Err(Error::PositionCount {
                expected: self.positions.len(),
                got: positions.len(),
            });
        }
        let mesh = TriMesh {
            positions,
            topo: Arc::clone(&self.topo),
        };
        mesh.check_geometry()?;
        Ok(mesh)
    }

    /// Applies `f` to every vertex position.
    pub fn map_positions(&self, f: impl Fn(&Point3<f64>) -> Point3<f64>) -> Result<Self> {
        self.with_positions(self.positions.iter().map(f).collect())
    }

    fn check_geometry(&self) -> Result<()> {
        if self.positions.iter().any(|p| !p.coords.iter().all(|c| c.is_finite())) {
            return Err(Error::InvalidParameter("non-finite vertex position".into()));
        }
        let diag = self.bbox_diagonal();
        let threshold = DEGENERATE_AREA_RATIO * diag * diag;
        for f in 0..self.n_faces() {
            let area = self.face_area(f);
            if !(area > threshold) {
                return Err(Error::DegenerateFace {
                    face: f,
                    area,
                    threshold,
                });
            }
        }
        Ok(())
    }

    pub fn positions(&self) -> &[Point3<f64>] {
        &self.positions
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.topo.faces
    }

    pub fn n_vertices(&self) -> usize {
        self.positions.len()
    }

    pub fn n_faces(&self) -> usize {
        self.topo.faces.len()
    }

    pub fn n_edges(&self) -> usize {
        self.topo.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.topo.edges
    }

    pub fn vertex_faces(&self, v: usize) -> &[usize] {
        &self.topo.vertex_faces[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.topo.neighbors[v]
    }

    pub fn star(&self, v: usize) -> &Star {
        &self.topo.stars[v]
    }

    pub fn stars(&self) -> &[Star] {
        &self.topo.stars
    }

    /// V - E + F.
    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices() as i64 - self.n_edges() as i64 + self.n_faces() as i64
    }

    /// Genus of the (connected, orientable) surface, from the Euler characteristic.
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    pub fn face_normal_scaled(&self, f: usize) -> Vector3<f64> {
        let [a, b, c] = self.topo.faces[f];
        let (pa, pb, pc) = (self.positions[a], self.positions[b], self.positions[c]);
        (pb - pa).cross(&(pc - pa))
    }

    pub fn face_area(&self, f: usize) -> f64 {
        0.5 * self.face_normal_scaled(f).norm()
    }

    pub fn min_face_area(&self) -> f64 {
        (0..self.n_faces())
            .map(|f| self.face_area(f))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn bbox(&self) -> (Point3<f64>, Point3<f64>) {
        let mut lo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut hi = Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.positions {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }

    pub fn bbox_diagonal(&self) -> f64 {
        let (lo, hi) = self.bbox();
        (hi - lo).norm()
    }

    pub fn centroid(&self) -> Point3<f64> {
        let n = self.positions.len() as f64;
        let s = self
            .positions
            .iter()
            .fold(Vector3::zeros(), |acc, p| acc + p.coords);
        Point3::from(s / n)
    }
}

impl Topology {
    fn build(n_vertices: usize, faces: Vec<[usize; 3]>) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::EmptyMesh);
        }
        let mut vertex_faces = vec![Vec::new(); n_vertices];
        for (fi, f) in faces.iter().enumerate() {
            for &v in f {
                if v >= n_vertices {
                    return Err(Error::IndexOutOfRange {
                        face: fi,
                        vertex: v,
                        count: n_vertices,
                    });
                }
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::RepeatedVertex { face: fi });
            }
            for &v in f {
                vertex_faces[v].push(fi);
            }
        }
        if let Some(v) = vertex_faces.iter().position(|fs| fs.is_empty()) {
            return Err(Error::UnreferencedVertex { vertex: v });
        }

        // Directed half-edges must be unique; every undirected edge needs both directions.
        let mut directed: HashMap<(usize, usize), usize> = HashMap::with_capacity(faces.len() * 3);
        for (fi, f) in faces.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                if directed.insert((a, b), fi).is_some() {
                    return Err(Error::InconsistentOrientation { a, b });
                }
            }
        }
        let mut edges = Vec::with_capacity(directed.len() / 2);
        for (fi, f) in faces.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                match directed.get(&(b, a)) {
                    Some(&other) => {
                        if a < b {
                            edges.push(Edge {
                                a,
                                b,
                                faces: [fi, other],
                            });
                        }
                    }
                    None => {
                        let count = 1;
                        return Err(Error::NonManifoldEdge {
                            a: a.min(b),
                            b: a.max(b),
                            count,
                        });
                    }
                }
            }
        }
        edges.sort_by_key(|e| (e.a, e.b));

        let mut neighbors = vec![Vec::new(); n_vertices];
        for e in &edges {
            neighbors[e.a].push(e.b);
            neighbors[e.b].push(e.a);
        }
        for ns in neighbors.iter_mut() {
            ns.sort_unstable();
        }

        let stars = (0..n_vertices)
            .map(|v| {
                let mut verts = vec![v];
                verts.extend(neighbors[v].iter().copied());
                let local = |g: usize| verts.iter().position(|&x| x == g).unwrap();
                let fs = vertex_faces[v]
                    .iter()
                    .map(|&fi| {
                        let f = faces[fi];
                        let k = f.iter().position(|&x| x == v).unwrap();
                        [
                            local(f[k]),
                            local(f[(k + 1) % 3]),
                            local(f[(k + 2) % 3]),
                        ]
                    })
                    .collect();
                Star { verts, faces: fs }
            })
            .collect();

        Ok(Topology {
            faces,
            vertex_faces,
            neighbors,
            edges,
            stars,
        })
    }
}
