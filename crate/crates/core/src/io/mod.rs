//! Mesh files (OBJ, OFF) and sweep tables (CSV).

mod obj;
mod off;

pub use obj::{parse_obj, read_obj, write_obj};
pub use off::{parse_off, read_off, write_off};

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::LabeledMesh;
use crate::solver::SweepRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MeshFormat {
    Obj,
    Off,
}

impl MeshFormat {
    /// Format implied by a file extension, if any.
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "obj" => Some(MeshFormat::Obj),
            "off" => Some(MeshFormat::Off),
            _ => None,
        }
    }
}

/// Formats coordinates with 17 significant digits, enough to round-trip any f64.
pub(crate) fn fmt_coord(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn export_mesh(mesh: &LabeledMesh, format: MeshFormat, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    match format {
        MeshFormat::Obj => write_obj(mesh, &mut w),
        MeshFormat::Off => write_off(mesh, &mut w),
    }
    .and_then(|_| w.flush())
    .map_err(|e| Error::io(path, e))
}

/// Writes a sweep with header
/// `t,vol_p_closed,vol_p_mesh,vol_q_closed,vol_q_mesh,ratio,p_convex,q_convex,iso_discrepancy`.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRecord], w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for r in rows {
        wtr.serialize(r)?;
    }
    wtr.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn export_sweep_csv(rows: &[SweepRecord], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_sweep_csv(rows, BufWriter::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::sweep;

    #[test]
    fn csv_header_and_rows() {
        let rows = sweep(0.1, 0.3, 3).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t,vol_p_closed,vol_p_mesh,vol_q_closed,vol_q_mesh,ratio,p_convex,q_convex,iso_discrepancy"
        );
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 9);
        assert_eq!(first[1].parse::<f64>().unwrap(), rows[0].vol_p_closed);
        assert_eq!(first[6], "true");
        assert_eq!(first[7], "false");
        assert_eq!(text.lines().count(), 4);
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(
            MeshFormat::from_path(Path::new("a.OBJ")),
            Some(MeshFormat::Obj)
        );
        assert_eq!(
            MeshFormat::from_path(Path::new("a.off")),
            Some(MeshFormat::Off)
        );
        assert_eq!(MeshFormat::from_path(Path::new("a")), None);
    }

    #[test]
    fn coordinates_round_trip() {
        for x in [0.1, -1.0 / 3.0, 5.0 * 3f64.sqrt(), 1e-300, -0.0] {
            assert_eq!(fmt_coord(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
