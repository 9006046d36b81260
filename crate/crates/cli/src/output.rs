//! CSV and JSON writers.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use wetdry_core::analysis::ConvergenceRow;
use wetdry_core::{Bathymetry, Grid};

#[derive(Serialize)]
pub struct SnapshotRow {
    pub x: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub w: f64,
    pub h: f64,
    pub hu: f64,
    pub u: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GaugeRow {
    pub t: f64,
    pub gauge_id: String,
    pub h: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrontRow {
    pub t: f64,
    pub x_front: Option<f64>,
    pub u_front_numeric: Option<f64>,
    pub x_front_exact: f64,
    pub u_front_exact: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeviationRow {
    pub t: f64,
    pub scheme: &'static str,
    pub dev_w: f64,
    pub dev_hu: f64,
}

#[derive(Serialize)]
struct TableRow {
    #[serde(rename = "N")]
    n: usize,
    l1_h: f64,
    eoc_h: Option<f64>,
    l1_hu: f64,
    eoc_hu: Option<f64>,
}

pub fn write_csv<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Desingularized velocity.
pub fn velocity(h: f64, hu: f64, eps: f64) -> f64 {
    if h >= eps {
        hu / h
    } else {
        0.0
    }
}

pub fn snapshot_rows(
    grid: &Grid,
    bathy: &Bathymetry,
    depth: &[f64],
    hu: &[f64],
    eps: f64,
) -> Vec<SnapshotRow> {
    (0..depth.len())
        .map(|j| {
            let b = bathy.cell(j);
            SnapshotRow {
                x: grid.center(j),
                b,
                w: b + depth[j],
                h: depth[j],
                hu: hu[j],
                u: velocity(depth[j], hu[j], eps),
            }
        })
        .collect()
}

pub fn write_table(path: &Path, rows: &[ConvergenceRow]) -> Result<()> {
    write_csv(
        path,
        rows.iter().map(|r| TableRow {
            n: r.n,
            l1_h: r.errors.l1_h,
            eoc_h: r.eoc_h,
            l1_hu: r.errors.l1_hu,
            eoc_hu: r.eoc_hu,
        }),
    )
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))
}

/// File-name friendly rendering of a time.
pub fn time_tag(t: f64) -> String {
    format!("{t}").replace('-', "m")
}
