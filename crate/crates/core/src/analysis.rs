//! Error norms, convergence orders, front tracking and distance from
//! equilibrium.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Bathymetry, CellState, Grid};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub l1_h: f64,
    pub l1_hu: f64,
    pub linf_h: f64,
    pub linf_hu: f64,
}

/// Averages groups of fine cells onto a grid of `n_coarse` cells.
pub fn project(fine: &[f64], n_coarse: usize) -> Result<Vec<f64>> {
    if n_coarse == 0 || !fine.len().is_multiple_of(n_coarse) {
        return Err(Error::IncompatibleGrids(format!(
            "{} fine cells do not split into {} coarse cells",
            fine.len(),
            n_coarse
        )));
    }
    let r = fine.len() / n_coarse;
    Ok(fine
        .chunks(r)
        .map(|c| c.iter().sum::<f64>() / r as f64)
        .collect())
}

fn norms(a: &[f64], b: &[f64], dx: f64) -> (f64, f64) {
    a.iter().zip(b).fold((0.0, 0.0_f64), |(l1, li), (x, y)| {
        let d = (x - y).abs();
        (l1 + d * dx, li.max(d))
    })
}

/// L¹ and L∞ differences of depth and discharge between a solution and a
/// reference on a finer grid covering the same domain.
pub fn error_norms(
    coarse: &CellState,
    coarse_bathy: &Bathymetry,
    reference: &CellState,
    reference_bathy: &Bathymetry,
) -> Result<ErrorReport> {
    let n = coarse.len();
    let m = reference.len();
    let lc = coarse_bathy.dx() * n as f64;
    let lr = reference_bathy.dx() * m as f64;
    if (lc - lr).abs() > 1e-9 * lc.abs().max(1.0) {
        return Err(Error::IncompatibleGrids(format!(
            "domain lengths differ: {lc} vs {lr}"
        )));
    }
    let h_ref = project(&reference.depths(reference_bathy), n)?;
    let hu_ref = project(reference.hu_bar(), n)?;
    let dx = coarse_bathy.dx();
    let (l1_h, linf_h) = norms(&coarse.depths(coarse_bathy), &h_ref, dx);
    let (l1_hu, linf_hu) = norms(coarse.hu_bar(), &hu_ref, dx);
    Ok(ErrorReport {
        l1_h,
        l1_hu,
        linf_h,
        linf_hu,
    })
}

/// `log₂(e_coarse / e_fine)`; `None` when either error is zero.
pub fn eoc(err_coarse: f64, err_fine: f64) -> Option<f64> {
    (err_coarse > 0.0 && err_fine > 0.0).then(|| (err_coarse / err_fine).log2())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub errors: ErrorReport,
    pub eoc_h: Option<f64>,
    pub eoc_hu: Option<f64>,
}

/// Adds EOC columns between consecutive resolutions that differ by a
/// factor of two.
pub fn convergence_table(results: &[(usize, ErrorReport)]) -> Vec<ConvergenceRow> {
    results
        .iter()
        .enumerate()
        .map(|(k, &(n, errors))| {
            let prev = k
                .checked_sub(1)
                .map(|p| results[p])
                .filter(|&(np, _)| 2 * np == n);
            ConvergenceRow {
                n,
                errors,
                eoc_h: prev.and_then(|(_, e)| eoc(e.l1_h, errors.l1_h)),
                eoc_hu: prev.and_then(|(_, e)| eoc(e.l1_hu, errors.l1_hu)),
            }
        })
        .collect()
}

fn opt(v: Option<f64>, width: usize) -> String {
    match v {
        Some(x) => format!("{x:>width$.2}"),
        None => " ".repeat(width),
    }
}

/// Text table with columns `# points, h error, EOC, hu error, EOC`.
pub fn format_table(rows: &[ConvergenceRow]) -> String {
    let mut s = String::from("# points    h error    EOC   hu error    EOC\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{:>8}  {:>9.2e}  {}  {:>9.2e}  {}",
            r.n,
            r.errors.l1_h,
            opt(r.eoc_h, 5),
            r.errors.l1_hu,
            opt(r.eoc_hu, 5)
        );
    }
    s
}

/// Center of the rightmost cell deeper than `eps`.
pub fn front_position(depth: &[f64], grid: &Grid, eps: f64) -> Option<f64> {
    depth.iter().rposition(|&h| h > eps).map(|j| grid.center(j))
}

/// L∞ deviation from the lake at rest at `level`: of the free surface from
/// `level` in cells lying wholly below it, of the depth from zero in cells
/// wholly above it, and of the discharge from zero. Shoreline cells only
/// enter through the discharge.
pub fn equilibrium_deviation(state: &CellState, bathy: &Bathymetry, level: f64) -> (f64, f64) {
    let mut dev_w = 0.0_f64;
    for j in 0..state.len() {
        let (bl, br) = (bathy.interface(j), bathy.interface(j + 1));
        if level >= bl.max(br) {
            dev_w = dev_w.max((state.w_bar()[j] - level).abs());
        } else if level <= bl.min(br) {
            dev_w = dev_w.max((state.w_bar()[j] - bathy.cell(j)).abs());
        }
    }
    let dev_hu = state.hu_bar().iter().fold(0.0_f64, |m, q| m.max(q.abs()));
    (dev_w, dev_hu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn projection() {
        assert_eq!(project(&[1.0, 3.0, 5.0, 7.0], 2).unwrap(), vec![2.0, 6.0]);
        let v = vec![0.1, 0.7, 0.3];
        assert_eq!(project(&v, 3).unwrap(), v);
        assert!(project(&v, 2).is_err());
    }

    #[test]
    fn norm_examples() {
        let grid = Grid::new(4, 0.0, 2.0).unwrap();
        let b = Bathymetry::flat(&grid);
        let s = CellState::from_depths(&[1.0; 4], &[0.0; 4], &b);
        let e = error_norms(&s, &b, &s, &b).unwrap();
        assert_eq!(e, ErrorReport::default());
        let t = CellState::from_depths(&[1.25; 4], &[0.0; 4], &b);
        let e = error_norms(&t, &b, &s, &b).unwrap();
        assert_relative_eq!(e.l1_h, 0.5);
        assert_eq!(e.linf_h, 0.25);

        let fine = Grid::new(6, 0.0, 2.0).unwrap();
        let bf = Bathymetry::flat(&fine);
        let r = CellState::from_depths(&[1.0; 6], &[0.0; 6], &bf);
        assert!(error_norms(&s, &b, &r, &bf).is_err());
    }

    #[test]
    fn eoc_examples() {
        assert_eq!(eoc(4e-3, 1e-3), Some(2.0));
        assert_relative_eq!(eoc(1.40e-3, 3.59e-4).unwrap(), 1.96, epsilon = 5e-3);
        assert_relative_eq!(eoc(2.81e-3, 1.65e-3).unwrap(), 0.77, epsilon = 5e-3);
        assert_eq!(eoc(1.0, 0.0), None);
    }

    #[test]
    fn table_has_eoc_only_between_doublings() {
        let e = |x: f64| ErrorReport {
            l1_h: x,
            l1_hu: 2.0 * x,
            ..Default::default()
        };
        let rows = convergence_table(&[(25, e(4e-3)), (50, e(1e-3)), (200, e(1e-4))]);
        assert_eq!(rows[0].eoc_h, None);
        assert_eq!(rows[1].eoc_h, Some(2.0));
        assert_eq!(rows[1].eoc_hu, Some(2.0));
        assert_eq!(rows[2].eoc_h, None);
        let text = format_table(&rows);
        assert_eq!(text.lines().count(), 4);
        assert!(text.contains("2.00"));
        assert_eq!(convergence_table(&[(100, e(1e-3))]).len(), 1);
    }

    #[test]
    fn front() {
        let grid = Grid::new(4, 0.0, 4.0).unwrap();
        assert_eq!(front_position(&[0.0; 4], &grid, 1e-9), None);
        assert_eq!(
            front_position(&[1.0, 0.5, 1e-10, 0.0], &grid, 1e-9),
            Some(1.5)
        );
    }

    #[test]
    fn deviation() {
        let grid = Grid::new(3, 0.0, 3.0).unwrap();
        let b = Bathymetry::from_samples(&grid, vec![0.0, 0.0, 1.0, 2.0]).unwrap();
        let s = CellState::from_depths(&[1.0, 0.5, 0.0], &[0.0, 0.0, 0.0], &b);
        assert_eq!(equilibrium_deviation(&s, &b, 1.0), (0.0, 0.0));
        let t = CellState::new(vec![1.0 + 1e-6, 1.0, 1.5], vec![0.0, -3e-7, 0.0]).unwrap();
        let (dw, dq) = equilibrium_deviation(&t, &b, 1.0);
        assert_relative_eq!(dw, 1e-6, epsilon = 1e-15);
        assert_eq!(dq, 3e-7);
        let shore = CellState::new(vec![1.0, 1.0, 1.0], vec![0.0; 3]).unwrap();
        let b2 = Bathymetry::from_samples(&grid, vec![0.0, 0.5, 1.5, 2.0]).unwrap();
        assert_eq!(equilibrium_deviation(&shore, &b2, 1.0).0, 0.75);
    }
}
