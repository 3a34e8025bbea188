//! Procedural test meshes: icospheres, ellipsoids, randomized spheres, tori
//! and voxel-boundary surfaces of arbitrary genus.

use std::collections::HashMap;

use nalgebra::{Point3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::mesh::TriMesh;

/// Icosahedron subdivided `level` times and projected onto the sphere of radius `r`.
pub fn icosphere(level: u32, r: f64) -> TriMesh {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Vector3<f64>> = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Vector3::new(x, y, z).normalize())
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, verts: &mut Vec<Vector3<f64>>| -> usize {
            *cache.entry((a.min(b), a.max(b))).or_insert_with(|| {
                verts.push((verts[a] + verts[b]).normalize());
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for &[a, b, c] in &faces {
            let ab = mid(a, b, &mut verts);
            let bc = mid(b, c, &mut verts);
            let ca = mid(c, a, &mut verts);
            next.extend_from_slice(&[[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    let positions = verts.iter().map(|v| Point3::from(v * r)).collect();
    TriMesh::new(positions, faces).expect("icosphere is a valid closed mesh")
}

/// Icosphere mapped onto the ellipsoid with semi-axes `(a, b, c)`.
pub fn ellipsoid(level: u32, a: f64, b: f64, c: f64) -> TriMesh {
    icosphere(level, 1.0)
        .map_positions(|p| Point3::new(a * p.x, b * p.y, c * p.z))
        .expect("ellipsoid is valid for positive semi-axes")
}

/// Icosphere with every vertex moved radially by a factor in `[1 - amp, 1 + amp]`.
pub fn perturbed_sphere(level: u32, amp: f64, seed: u64) -> TriMesh {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = icosphere(level, 1.0);
    let moved = base
        .positions()
        .iter()
        .map(|p| p * (1.0 + amp * rng.gen_range(-1.0..1.0)))
        .collect();
    base.with_positions(moved)
        .expect("small radial perturbations keep the icosphere valid")
}

/// Convex hull of `n` random points on the unit sphere, then radially
/// perturbed by up to `amp`. Valence and triangle shapes are irregular.
pub fn random_sphere(n: usize, amp: f64, seed: u64) -> TriMesh {
    assert!(n >= 4, "need at least four points");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<Vector3<f64>> = (0..n)
            .map(|_| loop {
                let v = Vector3::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                );
                let l = v.norm();
                if l > 0.1 && l <= 1.0 {
                    break v / l;
                }
            })
            .collect();
        let faces = match convex_hull(&pts) {
            Some(f) => f,
            None => continue,
        };
        let positions: Vec<Point3<f64>> = pts
            .iter()
            .map(|p| Point3::from(p * (1.0 + amp * rng.gen_range(-1.0..1.0))))
            .collect();
        if let Ok(m) = TriMesh::new(positions, faces) {
            // reject hulls with slivers that would dominate finite-difference checks
            let ok = m.faces().iter().all(|t| {
                (0..3).all(|k| {
                    let p = m.positions();
                    let ang = super::measures::corner_angle(
                        &p[t[k]],
                        &p[t[(k + 1) % 3]],
                        &p[t[(k + 2) % 3]],
                    );
                    ang > 0.05
                })
            });
            if ok {
                return m;
            }
        }
    }
}

/// Incremental convex hull of points in general position, outward oriented.
fn convex_hull(pts: &[Vector3<f64>]) -> Option<Vec<[usize; 3]>> {
    let n = pts.len();
    let eps = 1e-10;
    // initial tetrahedron from 0, 1, then first non-collinear and non-coplanar points
    let i2 = (2..n).find(|&i| (pts[1] - pts[0]).cross(&(pts[i] - pts[0])).norm() > 1e-6)?;
    let nrm = (pts[1] - pts[0]).cross(&(pts[i2] - pts[0]));
    let i3 = (2..n).find(|&i| i != i2 && nrm.dot(&(pts[i] - pts[0])).abs() > 1e-6)?;
    let mut faces: Vec<[usize; 3]> = if nrm.dot(&(pts[i3] - pts[0])) > 0.0 {
        vec![[0, i2, 1], [0, 1, i3], [1, i2, i3], [i2, 0, i3]]
    } else {
        vec![[0, 1, i2], [0, i3, 1], [1, i3, i2], [i2, i3, 0]]
    };
    let normal = |f: &[usize; 3]| (pts[f[1]] - pts[f[0]]).cross(&(pts[f[2]] - pts[f[0]]));
    for p in 0..n {
        if p == 0 || p == 1 || p == i2 || p == i3 {
            continue;
        }
        let visible: Vec<bool> = faces
            .iter()
            .map(|f| normal(f).dot(&(pts[p] - pts[f[0]])) > eps)
            .collect();
        if !visible.iter().any(|&v| v) {
            return None;
        }
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for k in 0..3 {
                directed.insert((f[k], f[(k + 1) % 3]), fi);
            }
        }
        let mut next = Vec::with_capacity(faces.len() + 2);
        let mut horizon = Vec::new();
        for (fi, f) in faces.iter().enumerate() {
            if !visible[fi] {
                next.push(*f);
                continue;
            }
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                let twin = directed[&(b, a)];
                if !visible[twin] {
                    horizon.push((a, b));
                }
            }
        }
        for (a, b) in horizon {
            next.push([a, b, p]);
        }
        faces = next;
    }
    Some(faces)
}

/// Parametric torus with major radius `big_r`, tube radius `r`.
pub fn torus(big_r: f64, r: f64, nu: usize, nv: usize) -> TriMesh {
    let mut positions = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let u = 2.0 * std::f64::consts::PI * i as f64 / nu as f64;
        for j in 0..nv {
            let v = 2.0 * std::f64::consts::PI * j as f64 / nv as f64;
            let rho = big_r + r * v.cos();
            positions.push(Point3::new(rho * u.cos(), rho * u.sin(), r * v.sin()));
        }
    }
    let idx = |i: usize, j: usize| (i % nu) * nv + (j % nv);
    let mut faces = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    TriMesh::new(positions, faces).expect("torus grid is a valid closed mesh")
}

/// Boundary surface of a set of unit voxels, each square split into two triangles.
pub fn voxel_surface(cells: &[[i64; 3]]) -> TriMesh {
    use std::collections::HashSet;
    let filled: HashSet<[i64; 3]> = cells.iter().copied().collect();
    let mut index: HashMap<[i64; 3], usize> = HashMap::new();
    let mut positions = Vec::new();
    let mut faces = Vec::new();
    let mut vid = |c: [i64; 3], positions: &mut Vec<Point3<f64>>| -> usize {
        *index.entry(c).or_insert_with(|| {
            positions.push(Point3::new(c[0] as f64, c[1] as f64, c[2] as f64));
            positions.len() - 1
        })
    };
    let mut sorted: Vec<[i64; 3]> = filled.iter().copied().collect();
    sorted.sort();
    for cell in sorted {
        for d in 0..3 {
            let (u, v) = ((d + 1) % 3, (d + 2) % 3);
            for s in [1i64, -1] {
                let mut nb = cell;
                nb[d] += s;
                if filled.contains(&nb) {
                    continue;
                }
                let corner = |du: i64, dv: i64| {
                    let mut c = cell;
                    if s > 0 {
                        c[d] += 1;
                    }
                    c[u] += du;
                    c[v] += dv;
                    c
                };
                let mut quad = [corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)];
                if s < 0 {
                    quad.reverse();
                }
                let q: Vec<usize> = quad.iter().map(|&c| vid(c, &mut positions)).collect();
                faces.push([q[0], q[1], q[2]]);
                faces.push([q[0], q[2], q[3]]);
            }
        }
    }
    TriMesh::new(positions, faces).expect("voxel boundary is a valid closed mesh")
}

/// Cube of side `size` whose faces are `n x n` grids.
pub fn subdivided_cube(n: i64, size: f64) -> TriMesh {
    let mut cells = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                cells.push([i, j, k]);
            }
        }
    }
    let s = size / n as f64;
    voxel_surface(&cells)
        .map_positions(|p| Point3::from(p.coords * s))
        .unwrap()
}

/// Genus-2 surface: a 5 x 3 slab of voxels with two holes punched through.
pub fn double_torus() -> TriMesh {
    let mut cells = Vec::new();
    for i in 0..5 {
        for j in 0..3 {
            if j == 1 && (i == 1 || i == 3) {
                continue;
            }
            cells.push([i, j, 0]);
        }
    }
    voxel_surface(&cells)
}

/// Regular tetrahedron with the given edge length.
pub fn regular_tetrahedron(edge: f64) -> TriMesh {
    let s = edge / (2.0 * 2f64.sqrt());
    let p = vec![
        Point3::new(s, s, s),
        Point3::new(s, -s, -s),
        Point3::new(-s, s, -s),
        Point3::new(-s, -s, s),
    ];
    let f = vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];
    TriMesh::new(p, f).expect("regular tetrahedron is valid")
}

/// Rescales `mesh` uniformly about its centroid so that its area equals `area`.
pub fn rescale_to_area(mesh: &TriMesh, area: f64) -> TriMesh {
    let s = (area / super::measures::total_area(mesh)).sqrt();
    let c = mesh.centroid();
    mesh.map_positions(|p| c + (p - c) * s)
        .expect("uniform scaling keeps validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::measures::{enclosed_volume, total_area};

    #[test]
    fn icosphere_counts() {
        for (level, nv) in [(0u32, 12usize), (1, 42), (2, 162), (3, 642), (4, 2562)] {
            let m = icosphere(level, 1.0);
            assert_eq!(m.n_vertices(), nv);
            assert_eq!(m.euler_characteristic(), 2);
            assert!(enclosed_volume(&m).is_ok());
        }
    }

    #[test]
    fn random_sphere_is_outward_genus_zero() {
        for seed in 0..5 {
            let m = random_sphere(80, 0.05, seed);
            assert_eq!(m.n_vertices(), 80);
            assert_eq!(m.genus(), 0);
            assert!(enclosed_volume(&m).unwrap() > 3.0);
        }
    }

    #[test]
    fn voxel_surfaces_have_expected_genus() {
        assert_eq!(subdivided_cube(3, 1.0).genus(), 0);
        assert_eq!(double_torus().genus(), 2);
        assert!((total_area(&subdivided_cube(4, 2.0)) - 24.0).abs() < 1e-12);
        assert!((enclosed_volume(&double_torus()).unwrap() - 13.0).abs() < 1e-12);
    }

    #[test]
    fn torus_is_genus_one() {
        let t = torus(2.0, 0.5, 24, 12);
        assert_eq!(t.genus(), 1);
        assert!(enclosed_volume(&t).is_ok());
    }
}
