//! Data export: CSV, the `OQF1` binary grid format and the JSON metadata sidecar.
//!
//! `OQF1` layout: magic `b"OQF1"`, `u32` LE rank, one `u32` LE count per axis,
//! then interleaved `f64` LE `(re, im)` pairs in row-major order.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupfn::{Chart, GroupFunction};
use crate::hilbert::StateVector;
use crate::C64;

pub const MAGIC: &[u8; 4] = b"OQF1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisMeta {
    pub label: String,
    pub min: f64,
    pub step: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub object: String,
    pub group: String,
    pub orbit_sign: String,
    pub chart: String,
    pub anchor: String,
    pub axes: Vec<AxisMeta>,
}

pub fn encode_oqf(shape: &[usize], values: &[C64]) -> Result<Vec<u8>> {
    let n: usize = shape.iter().product();
    if n != values.len() {
        return Err(Error::DimensionMismatch { expected: n, got: values.len() });
    }
    let mut buf = Vec::with_capacity(8 + 4 * shape.len() + 16 * n);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(shape.len() as u32).to_le_bytes());
    for &c in shape {
        buf.extend_from_slice(&(c as u32).to_le_bytes());
    }
    for z in values {
        buf.extend_from_slice(&z.re.to_le_bytes());
        buf.extend_from_slice(&z.im.to_le_bytes());
    }
    Ok(buf)
}

pub fn decode_oqf(bytes: &[u8]) -> Result<(Vec<usize>, Vec<C64>)> {
    let bad = |m: &str| Error::Format(m.to_string());
    if bytes.len() < 8 || &bytes[..4] != MAGIC {
        return Err(bad("missing OQF1 magic"));
    }
    let u32_at = |o: usize| -> Result<u32> {
        bytes
            .get(o..o + 4)
            .map(|b| u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
            .ok_or_else(|| bad("truncated header"))
    };
    let rank = u32_at(4)? as usize;
    let mut shape = Vec::with_capacity(rank);
    for i in 0..rank {
        shape.push(u32_at(8 + 4 * i)? as usize);
    }
    let start = 8 + 4 * rank;
    let n: usize = shape.iter().product();
    if bytes.len() != start + 16 * n {
        return Err(bad(&format!("expected {} payload bytes, found {}", 16 * n, bytes.len().saturating_sub(start))));
    }
    let f = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().expect("8 bytes"));
    let values = (0..n).map(|i| C64::new(f(start + 16 * i), f(start + 16 * i + 8))).collect();
    Ok((shape, values))
}

pub fn write_oqf(path: &Path, shape: &[usize], values: &[C64]) -> Result<()> {
    fs::write(path, encode_oqf(shape, values)?)?;
    Ok(())
}

pub fn read_oqf(path: &Path) -> Result<(Vec<usize>, Vec<C64>)> {
    decode_oqf(&fs::read(path)?)
}

fn num(x: f64) -> String {
    format!("{:.16e}", x)
}

/// CSV with header `labels..., re, im`; `coords(i)` gives the axis values of row `i`.
pub fn write_csv<F: Fn(usize) -> Vec<f64>>(path: &Path, labels: &[String], coords: F, values: &[C64]) -> Result<()> {
    let mut out = std::io::BufWriter::new(fs::File::create(path)?);
    writeln!(out, "{},re,im", labels.join(","))?;
    for (i, z) in values.iter().enumerate() {
        let mut row: Vec<String> = coords(i).into_iter().map(num).collect();
        row.push(num(z.re));
        row.push(num(z.im));
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()?;
    Ok(())
}

fn labels_for(f: &GroupFunction) -> Vec<String> {
    let prefix = match f.grid.chart {
        Chart::Exponential => "x",
        Chart::Orbit => "y",
    };
    (0..f.grid.dim()).map(|i| format!("{}{}", prefix, i + 1)).collect()
}

/// Writes `<name>.csv`, `<name>.oqf` and `<name>.meta.json` into `dir`.
pub fn export_function(dir: &Path, name: &str, f: &GroupFunction, anchor: &str) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let labels = labels_for(f);
    let d = f.grid.dim();
    let csv = dir.join(format!("{}.csv", name));
    write_csv(&csv, &labels, |i| f.grid.coords(i)[..d].to_vec(), &f.values)?;
    let oqf = dir.join(format!("{}.oqf", name));
    write_oqf(&oqf, &f.grid.shape(), &f.values)?;
    let meta = Meta {
        object: name.to_string(),
        group: f.grid.group.name().to_string(),
        orbit_sign: format!("{:?}", f.grid.sign).to_lowercase(),
        chart: format!("{:?}", f.grid.chart).to_lowercase(),
        anchor: anchor.to_string(),
        axes: f
            .grid
            .axes
            .iter()
            .zip(&labels)
            .map(|(a, l)| AxisMeta { label: l.clone(), min: a.min, step: a.step, count: a.count })
            .collect(),
    };
    let mp = dir.join(format!("{}.meta.json", name));
    fs::write(&mp, serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(vec![csv, oqf, mp])
}

/// Same triple for a carrier vector.
pub fn export_state(dir: &Path, name: &str, v: &StateVector, group: &str, anchor: &str) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let labels: Vec<String> = v
        .grid
        .axes
        .iter()
        .enumerate()
        .map(|(i, a)| format!("{}{}", if a.kind == crate::hilbert::AxisKind::Log { "r" } else { "s" }, i + 1))
        .collect();
    let vals: Vec<C64> = v.values.iter().copied().collect();
    let csv = dir.join(format!("{}.csv", name));
    let na = v.grid.axes.len();
    write_csv(&csv, &labels, |i| v.grid.point(i)[..na].to_vec(), &vals)?;
    let shape: Vec<usize> = v.grid.axes.iter().map(|a| a.count).collect();
    let oqf = dir.join(format!("{}.oqf", name));
    write_oqf(&oqf, &shape, &vals)?;
    let meta = Meta {
        object: name.to_string(),
        group: group.to_string(),
        orbit_sign: String::new(),
        chart: "carrier".into(),
        anchor: anchor.to_string(),
        axes: v
            .grid
            .axes
            .iter()
            .zip(&labels)
            .map(|(a, l)| AxisMeta { label: l.clone(), min: a.min, step: a.step, count: a.count })
            .collect(),
    };
    let mp = dir.join(format!("{}.meta.json", name));
    fs::write(&mp, serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(vec![csv, oqf, mp])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oqf_round_trip_and_rejects_garbage() {
        let v = vec![C64::new(1.0, -2.0), C64::new(0.5, 0.25), C64::new(-3.0, 0.0), C64::new(0.0, 1e-300)];
        let b = encode_oqf(&[2, 2], &v).unwrap();
        assert_eq!(&b[..4], b"OQF1");
        assert_eq!(b.len(), 8 + 8 + 64);
        assert_eq!(decode_oqf(&b).unwrap(), (vec![2, 2], v.clone()));
        assert!(decode_oqf(&b[..b.len() - 1]).is_err());
        assert!(decode_oqf(b"NOPE").is_err());
        assert!(encode_oqf(&[3], &v).is_err());
    }
}
