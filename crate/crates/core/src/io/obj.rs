//! Wavefront OBJ with bipyramid metadata in comments.
//!
//! ```text
//! # family p
//! # labels A B D E F
//! v 1.4389026019298506e1 0.0000000000000000e0 0.0000000000000000e0
//! ...
//! # marker C 0.0000000000000000e0 0.0000000000000000e0 0.0000000000000000e0
//! f 1 2 4
//! ```
//!
//! Markers are not vertices. On import they are rebuilt as the midpoint of
//! the family's host edge (`EF` for p, `B′D′` for q).

use std::io::Write;
use std::path::Path;

use super::fmt_coord;
use crate::error::{Error, Result};
use crate::geometry::{Family, Label, LabeledMesh, Point3, Polyhedron};

pub fn write_obj<W: Write>(mesh: &LabeledMesh, w: &mut W) -> std::io::Result<()> {
    let fam = mesh.family();
    writeln!(w, "# oblique triangular bipyramid {}(t)", fam.short())?;
    writeln!(w, "# family {}", fam.short())?;
    let names: Vec<String> = mesh.labels().iter().map(|&l| mesh.name(l)).collect();
    writeln!(w, "# labels {}", names.join(" "))?;
    for p in mesh.positions() {
        writeln!(
            w,
            "v {} {} {}",
            fmt_coord(p.x),
            fmt_coord(p.y),
            fmt_coord(p.z)
        )?;
    }
    for (l, p) in mesh.markers() {
        writeln!(
            w,
            "# marker {} {} {} {}",
            mesh.name(l),
            fmt_coord(p.x),
            fmt_coord(p.y),
            fmt_coord(p.z)
        )?;
    }
    for f in mesh.faces() {
        writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}

pub fn read_obj(path: &Path) -> Result<LabeledMesh> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_obj(&text, path)
}

fn parse_label(s: &str) -> Option<Label> {
    let mut chars = s.chars();
    let l = Label::from_letter(chars.next()?)?;
    match chars.as_str() {
        "" | "'" | "′" => Some(l),
        _ => None,
    }
}

/// Parses the subset of OBJ written by [`write_obj`]: `v`, triangular `f`
/// (optionally with `/`-separated texture and normal indices), and the
/// metadata comments. Without a `labels` comment, five vertices are named
/// `A, B, D, E, F` in order.
pub fn parse_obj(text: &str, path: &Path) -> Result<LabeledMesh> {
    let err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut family = Family::P;
    let mut labels: Option<Vec<Label>> = None;
    let mut positions = Vec::new();
    let mut faces = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let mut tok = raw.split_whitespace();
        match tok.next() {
            Some("#") => match tok.next() {
                Some("family") => {
                    family = match tok.next() {
                        Some("p") => Family::P,
                        Some("q") => Family::Q,
                        other => return Err(err(line, format!("unknown family {other:?}"))),
                    }
                }
                Some("labels") => {
                    labels = Some(
                        tok.map(|s| {
                            parse_label(s).ok_or_else(|| err(line, format!("bad label {s:?}")))
                        })
                        .collect::<Result<_>>()?,
                    )
                }
                _ => {}
            },
            Some("v") => {
                let xyz: Vec<f64> = tok
                    .take(3)
                    .map(|s| {
                        s.parse::<f64>()
                            .map_err(|e| err(line, format!("{s:?}: {e}")))
                    })
                    .collect::<Result<_>>()?;
                if xyz.len() != 3 {
                    return Err(err(line, "vertex needs three coordinates".into()));
                }
                positions.push(Point3::new(xyz[0], xyz[1], xyz[2]));
            }
            Some("f") => {
                let idx: Vec<usize> = tok
                    .map(|s| {
                        let head = s.split('/').next().unwrap_or(s);
                        match head.parse::<usize>() {
                            Ok(i) if i >= 1 => Ok(i - 1),
                            _ => Err(err(line, format!("bad face index {s:?}"))),
                        }
                    })
                    .collect::<Result<_>>()?;
                let [a, b, c] = idx[..] else {
                    return Err(err(
                        line,
                        format!("only triangles are supported, got {}", idx.len()),
                    ));
                };
                faces.push([a, b, c]);
            }
            Some(s) if s.starts_with('#') => {}
            None => {}
            Some(_) => {}
        }
    }

    let labels = match labels {
        Some(l) => l,
        None if positions.len() == 5 => Label::VERTICES.to_vec(),
        None => return Err(err(0, "no labels comment and not five vertices".into())),
    };
    if labels.len() != positions.len() {
        return Err(err(
            0,
            format!("{} labels for {} vertices", labels.len(), positions.len()),
        ));
    }
    if let Some(&i) = faces.iter().flatten().find(|&&i| i >= labels.len()) {
        return Err(err(0, format!("face index {} out of range", i + 1)));
    }
    let face_labels: Vec<[Label; 3]> = faces.iter().map(|f| f.map(|i| labels[i])).collect();
    let vertices: Vec<(Label, Point3)> = labels.iter().copied().zip(positions).collect();

    let (u, v) = family.marker_host();
    let marker = match (
        vertices.iter().find(|(l, _)| *l == u),
        vertices.iter().find(|(l, _)| *l == v),
    ) {
        (Some((_, a)), Some((_, b))) => vec![(Label::C, nalgebra::center(a, b))],
        _ => vec![],
    };
    LabeledMesh::new(family, vertices, &face_labels, marker)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{construct_p, construct_q};
    use crate::param::ParamT;
    use crate::verification::mesh_volume;

    #[test]
    fn structure_counts() {
        let m = construct_p(ParamT::new(0.2).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_obj(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 5);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 6);
        assert!(text.contains("# marker C "));
    }

    #[test]
    fn round_trip_is_bit_exact() {
        for m in [
            construct_p(ParamT::new(0.2).unwrap()).unwrap(),
            construct_q(ParamT::new(0.2).unwrap()).unwrap(),
        ] {
            let mut buf = Vec::new();
            write_obj(&m, &mut buf).unwrap();
            let back = parse_obj(std::str::from_utf8(&buf).unwrap(), Path::new("mem")).unwrap();
            assert_eq!(back, m);
            assert_eq!(
                mesh_volume(&back).unwrap().to_bits(),
                mesh_volume(&m).unwrap().to_bits()
            );
        }
    }

    #[test]
    fn plain_obj_defaults() {
        let text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 0 0 -1\n\
                    f 1 2 4\nf 2 3 4\nf 3 1 4\nf 1 3 5\nf 3 2 5\nf 2 1 5\n";
        let m = parse_obj(text, Path::new("mem")).unwrap();
        assert_eq!(m.labels(), &Label::VERTICES);
        assert_eq!(m.marker(Label::C), Some(Point3::origin()));
    }

    #[test]
    fn malformed_lines() {
        assert!(parse_obj("v 1 2\n", Path::new("m")).is_err());
        assert!(parse_obj("v a b c\n", Path::new("m")).is_err());
        let quads = "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 1 1 1\nf 1 2 3 4\n";
        assert!(matches!(
            parse_obj(quads, Path::new("m")),
            Err(Error::Parse { line: 6, .. })
        ));
    }
}
