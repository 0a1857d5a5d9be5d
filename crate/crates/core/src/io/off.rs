//! Object File Format: `OFF`, then `nv nf ne`, vertex lines, and face lines
//! `3 i j k` with 0-based indices.

use std::io::Write;
use std::path::Path;

use super::fmt_coord;
use crate::error::{Error, Result};
use crate::geometry::{Point3, Polyhedron, TriMesh};

pub fn write_off<W: Write, P: Polyhedron + ?Sized>(mesh: &P, w: &mut W) -> std::io::Result<()> {
    let edges = crate::geometry::mesh::edge_face_counts(mesh.faces()).len();
    writeln!(w, "OFF")?;
    writeln!(
        w,
        "{} {} {}",
        mesh.positions().len(),
        mesh.faces().len(),
        edges
    )?;
    for p in mesh.positions() {
        writeln!(
            w,
            "{} {} {}",
            fmt_coord(p.x),
            fmt_coord(p.y),
            fmt_coord(p.z)
        )?;
    }
    for f in mesh.faces() {
        writeln!(w, "3 {} {} {}", f[0], f[1], f[2])?;
    }
    Ok(())
}

pub fn read_off(path: &Path) -> Result<TriMesh> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_off(&text, path)
}

/// Parses triangle-only OFF. Comments (`#` to end of line) and blank lines are skipped.
pub fn parse_off(text: &str, path: &Path) -> Result<TriMesh> {
    let err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (n, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
    // The counts may follow the keyword on the same line.
    let rest = header
        .strip_prefix("OFF")
        .ok_or_else(|| err(n, format!("expected OFF, got {header:?}")))?
        .trim();
    let (n, counts_line) = if rest.is_empty() {
        lines
            .next()
            .ok_or_else(|| err(n, "missing counts".into()))?
    } else {
        (n, rest)
    };
    let counts: Vec<usize> = counts_line
        .split_whitespace()
        .map(|s| s.parse().map_err(|e| err(n, format!("{s:?}: {e}"))))
        .collect::<Result<_>>()?;
    let [nv, nf, _] = counts[..] else {
        return Err(err(n, "expected three counts".into()));
    };

    let mut positions = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (n, l) = lines
            .next()
            .ok_or_else(|| err(n, "missing vertex".into()))?;
        let xyz: Vec<f64> = l
            .split_whitespace()
            .map(|s| s.parse().map_err(|e| err(n, format!("{s:?}: {e}"))))
            .collect::<Result<_>>()?;
        if xyz.len() < 3 {
            return Err(err(n, "vertex needs three coordinates".into()));
        }
        positions.push(Point3::new(xyz[0], xyz[1], xyz[2]));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (n, l) = lines.next().ok_or_else(|| err(n, "missing face".into()))?;
        let idx: Vec<usize> = l
            .split_whitespace()
            .map(|s| s.parse().map_err(|e| err(n, format!("{s:?}: {e}"))))
            .collect::<Result<_>>()?;
        match idx[..] {
            [3, a, b, c, ..] => faces.push([a, b, c]),
            _ => return Err(err(n, format!("only triangles are supported: {l:?}"))),
        }
    }
    TriMesh::new(positions, faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::construct_q;
    use crate::param::ParamT;
    use crate::verification::mesh_volume;

    #[test]
    fn grammar() {
        let m = construct_q(ParamT::new(0.2).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_off(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "OFF");
        assert_eq!(lines[1], "5 6 9");
        assert_eq!(lines.len(), 2 + 5 + 6);
        for l in &lines[2..7] {
            assert_eq!(l.split_whitespace().count(), 3);
        }
        for l in &lines[7..] {
            let f: Vec<usize> = l.split_whitespace().map(|s| s.parse().unwrap()).collect();
            assert_eq!(f[0], 3);
            assert!(f[1..].iter().all(|&i| i < 5));
        }
        let back = parse_off(&text, Path::new("mem")).unwrap();
        assert_eq!(back.positions(), m.positions());
        assert_eq!(mesh_volume(&back).unwrap(), mesh_volume(&m).unwrap());
    }

    #[test]
    fn comments_and_inline_counts() {
        let text = "# cube corner\nOFF 4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n\
                    3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3 # last\n";
        let m = parse_off(text, Path::new("mem")).unwrap();
        assert!((mesh_volume(&m).unwrap() - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn rejects_bad_header() {
        assert!(parse_off("PLY\n", Path::new("m")).is_err());
        assert!(parse_off("OFF\n1 2\n", Path::new("m")).is_err());
    }
}
