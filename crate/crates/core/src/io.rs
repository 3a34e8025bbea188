//! Wavefront OBJ (`v`/`f` records) and OFF mesh reading and writing, plus
//! float rounding for JSON reports.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::Point3;

use crate::error::{Error, Result};
use crate::geometry::TriMesh;

fn parse_f64(tok: Option<&str>, line: usize) -> Result<f64> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        message: "missing coordinate".into(),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid number {tok:?}"),
    })
}

/// Parses OBJ text. Only `v` and `f` records are read; polygons are fan
/// triangulated and `f` entries may carry `/vt/vn` suffixes.
pub fn parse_obj(text: &str) -> Result<TriMesh> {
    let mut positions = Vec::new();
    let mut faces = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            Some("v") => {
                let x = parse_f64(toks.next(), line)?;
                let y = parse_f64(toks.next(), line)?;
                let z = parse_f64(toks.next(), line)?;
                positions.push(Point3::new(x, y, z));
            }
            Some("f") => {
                let idx = toks
                    .map(|t| {
                        let head = t.split('/').next().unwrap_or("");
                        let k: i64 = head.parse().map_err(|_| Error::Parse {
                            line,
                            message: format!("invalid face index {t:?}"),
                        })?;
                        // negative indices are relative to the end
                        let n = positions.len() as i64;
                        let k = if k < 0 { n + k } else { k - 1 };
                        if k < 0 {
                            return Err(Error::Parse {
                                line,
                                message: format!("face index {t:?} out of range"),
                            });
                        }
                        Ok(k as usize)
                    })
                    .collect::<Result<Vec<usize>>>()?;
                if idx.len() < 3 {
                    return Err(Error::Parse {
                        line,
                        message: "face with fewer than 3 vertices".into(),
                    });
                }
                for k in 1..idx.len() - 1 {
                    faces.push([idx[0], idx[k], idx[k + 1]]);
                }
            }
            _ => {}
        }
    }
    TriMesh::new(positions, faces)
}

/// Parses OFF text (optionally with `#` comments).
pub fn parse_off(text: &str) -> Result<TriMesh> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty OFF file".into(),
    })?;
    let rest = header.strip_prefix("OFF").ok_or(Error::Parse {
        line,
        message: "missing OFF header".into(),
    })?;
    let mut counts_line = rest.trim().to_string();
    let mut counts_at = line;
    if counts_line.is_empty() {
        let (l, c) = lines.next().ok_or(Error::Parse {
            line,
            message: "missing counts".into(),
        })?;
        counts_line = c.to_string();
        counts_at = l;
    }
    let counts: Vec<usize> = counts_line
        .split_whitespace()
        .map(|t| t.parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse {
            line: counts_at,
            message: "invalid counts".into(),
        })?;
    if counts.len() < 2 {
        return Err(Error::Parse {
            line: counts_at,
            message: "expected vertex and face counts".into(),
        });
    }
    let (nv, nf) = (counts[0], counts[1]);
    let mut positions = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (l, s) = lines.next().ok_or(Error::Parse {
            line: counts_at,
            message: "truncated vertex list".into(),
        })?;
        let mut t = s.split_whitespace();
        positions.push(Point3::new(
            parse_f64(t.next(), l)?,
            parse_f64(t.next(), l)?,
            parse_f64(t.next(), l)?,
        ));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (l, s) = lines.next().ok_or(Error::Parse {
            line: counts_at,
            message: "truncated face list".into(),
        })?;
        let vals: Vec<usize> = s
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                line: l,
                message: "invalid face record".into(),
            })?;
        let k = *vals.first().ok_or(Error::Parse {
            line: l,
            message: "empty face record".into(),
        })?;
        if k < 3 || vals.len() < k + 1 {
            return Err(Error::Parse {
                line: l,
                message: "malformed face record".into(),
            });
        }
        for j in 1..k - 1 {
            faces.push([vals[1], vals[1 + j], vals[2 + j]]);
        }
    }
    TriMesh::new(positions, faces)
}

/// Formats a float with 9 significant digits.
fn sig9(x: f64) -> String {
    format!("{:.8e}", x)
}

pub fn to_obj(mesh: &TriMesh) -> String {
    let mut s = String::with_capacity(mesh.n_vertices() * 48 + mesh.n_faces() * 24);
    for p in mesh.positions() {
        let _ = writeln!(s, "v {} {} {}", sig9(p.x), sig9(p.y), sig9(p.z));
    }
    for f in mesh.faces() {
        let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    s
}

pub fn to_off(mesh: &TriMesh) -> String {
    let mut s = format!("OFF\n{} {} 0\n", mesh.n_vertices(), mesh.n_faces());
    for p in mesh.positions() {
        let _ = writeln!(s, "{} {} {}", sig9(p.x), sig9(p.y), sig9(p.z));
    }
    for f in mesh.faces() {
        let _ = writeln!(s, "3 {} {} {}", f[0], f[1], f[2]);
    }
    s
}

fn is_off(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("off"))
}

/// Reads a mesh, choosing the format from the extension (`.off`, else OBJ).
pub fn read_mesh(path: &Path) -> Result<TriMesh> {
    let text = std::fs::read_to_string(path)?;
    if is_off(path) {
        parse_off(&text)
    } else {
        parse_obj(&text)
    }
}

pub fn write_mesh(path: &Path, mesh: &TriMesh) -> Result<()> {
    let text = if is_off(path) {
        to_off(mesh)
    } else {
        to_obj(mesh)
    };
    std::fs::write(path, text)?;
    Ok(())
}

/// Rounds to 12 significant digits so JSON reports print at most that many.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.11e}", x).parse().unwrap_or(x)
}
