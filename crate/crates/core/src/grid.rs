//! Uniform grid, piecewise-linear bottom and the conserved cell state.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform 1D grid of `n` cells on `[x_left, x_right]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    n: usize,
    x_left: f64,
    x_right: f64,
    dx: f64,
}

impl Grid {
    pub fn new(n: usize, x_left: f64, x_right: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 cells, got {n}"
            )));
        }
        if !(x_left.is_finite() && x_right.is_finite()) || x_right <= x_left {
            return Err(Error::InvalidGrid(format!(
                "bad domain [{x_left}, {x_right}]"
            )));
        }
        Ok(Self {
            n,
            x_left,
            x_right,
            dx: (x_right - x_left) / n as f64,
        })
    }

    /// Builds a grid from explicit interface coordinates. Only uniform
    /// spacing is accepted.
    pub fn from_interfaces(xs: &[f64]) -> Result<Self> {
        if xs.len() < 4 {
            return Err(Error::InvalidGrid("need at least 4 interfaces".into()));
        }
        let grid = Self::new(xs.len() - 1, xs[0], xs[xs.len() - 1])?;
        let tol = 1e-9 * grid.dx;
        for (i, &x) in xs.iter().enumerate() {
            if (x - grid.interface(i)).abs() > tol {
                return Err(Error::InvalidGrid(format!(
                    "non-uniform spacing at interface {i}"
                )));
            }
        }
        Ok(grid)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    pub fn x_right(&self) -> f64 {
        self.x_right
    }

    pub fn length(&self) -> f64 {
        self.x_right - self.x_left
    }

    /// Center of cell `j`.
    pub fn center(&self, j: usize) -> f64 {
        self.x_left + (j as f64 + 0.5) * self.dx
    }

    /// Interface `i`, the left edge of cell `i` (`i = n` is the right end).
    pub fn interface(&self, i: usize) -> f64 {
        self.x_left + i as f64 * self.dx
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.center(j)).collect()
    }

    pub fn interfaces(&self) -> Vec<f64> {
        (0..=self.n).map(|i| self.interface(i)).collect()
    }

    /// Index of the cell containing `x`, or `None` outside the domain.
    pub fn locate(&self, x: f64) -> Option<usize> {
        if !(x >= self.x_left && x <= self.x_right) {
            return None;
        }
        let j = ((x - self.x_left) / self.dx).floor() as usize;
        Some(j.min(self.n - 1))
    }
}

/// A jump of the bottom function located at an interface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    pub x: f64,
    pub left: f64,
    pub right: f64,
}

/// Continuous piecewise-linear bottom, stored by its interface values.
///
/// Cell values and slopes are derived: `B_j` is the mean of the two
/// interface values, which is also the cell average of the interpolant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bathymetry {
    ifc: Vec<f64>,
    dx: f64,
}

impl Bathymetry {
    pub fn from_samples(grid: &Grid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() + 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} interface samples, got {}",
                grid.len() + 1,
                samples.len()
            )));
        }
        if let Some(i) = samples.iter().position(|b| !b.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite bottom sample at interface {i}"
            )));
        }
        Ok(Self {
            ifc: samples,
            dx: grid.dx(),
        })
    }

    /// Samples a continuous bottom function at the interfaces.
    pub fn from_fn(grid: &Grid, bottom: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_samples(grid, grid.interfaces().into_iter().map(bottom).collect())
    }

    /// Samples `bottom` at the interfaces; interfaces that coincide with one
    /// of `jumps` take the mean of the one-sided limits instead.
    pub fn with_jumps(grid: &Grid, bottom: impl Fn(f64) -> f64, jumps: &[Jump]) -> Result<Self> {
        let tol = 1e-9 * grid.dx();
        let samples = grid
            .interfaces()
            .into_iter()
            .map(|x| match jumps.iter().find(|jp| (jp.x - x).abs() <= tol) {
                Some(jp) => 0.5 * (jp.left + jp.right),
                None => bottom(x),
            })
            .collect();
        Self::from_samples(grid, samples)
    }

    pub fn flat(grid: &Grid) -> Self {
        Self {
            ifc: vec![0.0; grid.len() + 1],
            dx: grid.dx(),
        }
    }

    pub fn len(&self) -> usize {
        self.ifc.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.ifc.len() < 2
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Interface values `B_{j-1/2}`, `j = 0..=n`.
    pub fn interfaces(&self) -> &[f64] {
        &self.ifc
    }

    pub fn interface(&self, i: usize) -> f64 {
        self.ifc[i]
    }

    pub fn cell(&self, j: usize) -> f64 {
        0.5 * (self.ifc[j] + self.ifc[j + 1])
    }

    pub fn slope(&self, j: usize) -> f64 {
        (self.ifc[j + 1] - self.ifc[j]) / self.dx
    }

    pub fn cells(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.cell(j)).collect()
    }

    /// Evaluates the piecewise-linear interpolant at `x`.
    pub fn eval(&self, grid: &Grid, x: f64) -> f64 {
        let s = ((x - grid.x_left()) / self.dx).clamp(0.0, self.len() as f64);
        let i = (s.floor() as usize).min(self.len() - 1);
        let t = s - i as f64;
        self.ifc[i] + (self.ifc[i + 1] - self.ifc[i]) * t
    }
}

/// Conserved cell averages: free surface `w̄` and discharge `hu̅`.
///
/// A state built from depths keeps them, so nearly dry cells do not lose
/// their depth to the rounding of `w̄`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellState {
    w_bar: Vec<f64>,
    hu_bar: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    depth: Option<Vec<f64>>,
}

impl CellState {
    pub fn new(w_bar: Vec<f64>, hu_bar: Vec<f64>) -> Result<Self> {
        if w_bar.len() != hu_bar.len() {
            return Err(Error::InvalidInput("w and hu lengths differ".into()));
        }
        Ok(Self {
            w_bar,
            hu_bar,
            depth: None,
        })
    }

    pub fn from_depths(depth: &[f64], hu: &[f64], bathy: &Bathymetry) -> Self {
        Self {
            w_bar: depth
                .iter()
                .enumerate()
                .map(|(j, h)| h + bathy.cell(j))
                .collect(),
            hu_bar: hu.to_vec(),
            depth: Some(depth.to_vec()),
        }
    }

    pub fn w_bar(&self) -> &[f64] {
        &self.w_bar
    }

    pub fn hu_bar(&self) -> &[f64] {
        &self.hu_bar
    }

    pub fn len(&self) -> usize {
        self.w_bar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w_bar.is_empty()
    }

    pub fn depth(&self, bathy: &Bathymetry, j: usize) -> f64 {
        cell_depth(self, bathy, j)
    }

    pub fn depths(&self, bathy: &Bathymetry) -> Vec<f64> {
        match &self.depth {
            Some(d) => d.clone(),
            None => (0..self.len())
                .map(|j| cell_depth(self, bathy, j))
                .collect(),
        }
    }

    /// Total water volume `Σ h̄_j Δx`.
    pub fn mass(&self, bathy: &Bathymetry) -> f64 {
        self.depths(bathy).iter().sum::<f64>() * bathy.dx()
    }
}

/// `h̄_j = w̄_j − B_j`.
pub fn cell_depth(state: &CellState, bathy: &Bathymetry, j: usize) -> f64 {
    match &state.depth {
        Some(d) => d[j],
        None => state.w_bar[j] - bathy.cell(j),
    }
}

/// Scheme constants shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub g: f64,
    /// Generalized minmod parameter in `[1, 2]`.
    pub theta: f64,
    /// Dry tolerance for velocity desingularization.
    pub eps: f64,
    pub cfl: f64,
}

impl Default for SchemeParams {
    fn default() -> Self {
        Self {
            g: 9.812,
            theta: 1.3,
            eps: 1e-9,
            cfl: 0.5,
        }
    }
}

impl SchemeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.g > 0.0 && self.g.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "g must be positive, got {}",
                self.g
            )));
        }
        if !(1.0..=2.0).contains(&self.theta) {
            return Err(Error::InvalidParams(format!(
                "theta must lie in [1, 2], got {}",
                self.theta
            )));
        }
        if !(self.eps > 0.0) {
            return Err(Error::InvalidParams(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        if !(self.cfl > 0.0 && self.cfl <= 0.5) {
            return Err(Error::InvalidParams(format!(
                "cfl must lie in (0, 0.5], got {}",
                self.cfl
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn rejects_tiny_and_inverted_grids() {
        assert!(Grid::new(2, 0.0, 1.0).is_err());
        assert!(Grid::new(10, 1.0, 0.0).is_err());
        assert!(Grid::new(10, 0.0, f64::NAN).is_err());
    }

    #[test]
    fn rejects_non_uniform_interfaces() {
        assert!(Grid::from_interfaces(&[0.0, 0.25, 0.5, 0.75, 1.0]).is_ok());
        assert!(Grid::from_interfaces(&[0.0, 0.2, 0.5, 0.75, 1.0]).is_err());
    }

    #[test]
    fn flat_bottom_has_zero_values_and_slopes() {
        let grid = Grid::new(8, 0.0, 1.0).unwrap();
        let b = Bathymetry::from_fn(&grid, |_| 0.0).unwrap();
        assert!(b.interfaces().iter().all(|&v| v == 0.0));
        assert!((0..8).all(|j| b.slope(j) == 0.0 && b.cell(j) == 0.0));
    }

    #[test]
    fn sine_squared_bottom_on_four_cells() {
        let grid = Grid::new(4, 0.0, 1.0).unwrap();
        let b = Bathymetry::from_fn(&grid, |x| (PI * x).sin().powi(2)).unwrap();
        let expected = [0.0, 0.5, 1.0, 0.5, 0.0];
        for (got, want) in b.interfaces().iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn jump_takes_mean_of_one_sided_limits() {
        let grid = Grid::new(4, 0.0, 1.0).unwrap();
        let step = |x: f64| if x < 0.5 { 1.0 } else { 0.0 };
        let b = Bathymetry::with_jumps(
            &grid,
            step,
            &[Jump {
                x: 0.5,
                left: 1.0,
                right: 0.0,
            }],
        )
        .unwrap();
        assert_eq!(b.interfaces(), &[1.0, 1.0, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn non_finite_samples_are_rejected() {
        let grid = Grid::new(3, 0.0, 1.0).unwrap();
        assert!(Bathymetry::from_samples(&grid, vec![0.0, f64::NAN, 0.0, 0.0]).is_err());
        assert!(Bathymetry::from_samples(&grid, vec![0.0; 3]).is_err());
    }

    #[test]
    fn cell_value_is_bitwise_mean_of_interfaces() {
        let grid = Grid::new(37, -1.3, 2.9).unwrap();
        let b = Bathymetry::from_fn(&grid, |x| (3.1 * x).sin() + 0.2 * x * x).unwrap();
        for j in 0..37 {
            assert_eq!(
                b.cell(j).to_bits(),
                (0.5 * (b.interface(j) + b.interface(j + 1))).to_bits()
            );
        }
    }

    #[test]
    fn cell_values_converge_at_second_order() {
        let f = |x: f64| (PI * x).sin().powi(2);
        let err = |n: usize| {
            let grid = Grid::new(n, 0.0, 1.0).unwrap();
            let b = Bathymetry::from_fn(&grid, f).unwrap();
            (0..n)
                .map(|j| (b.cell(j) - f(grid.center(j))).abs())
                .fold(0.0, f64::max)
        };
        let rate = (err(64) / err(128)).log2();
        assert!(rate > 1.95, "rate {rate}");
    }

    #[test]
    fn depths_survive_a_large_bottom() {
        let grid = Grid::new(3, 0.0, 3.0).unwrap();
        let b = Bathymetry::from_samples(&grid, vec![1000.0, 999.0, 1000.0, 1000.0]).unwrap();
        let s = CellState::from_depths(&[1e-12, 0.0, 0.5], &[0.0; 3], &b);
        assert_eq!(s.depths(&b), [1e-12, 0.0, 0.5]);
        assert_eq!(s.depth(&b, 0), 1e-12);
        assert_eq!(s.w_bar()[1], 999.5);
    }

    #[test]
    fn depth_is_surface_minus_bottom() {
        let grid = Grid::new(3, 0.0, 3.0).unwrap();
        let b = Bathymetry::from_samples(&grid, vec![1.0, 1.0, 0.1, 0.1]).unwrap();
        let s = CellState::new(vec![1.0, 0.6, 0.4], vec![0.0; 3]).unwrap();
        assert_eq!(cell_depth(&s, &b, 0), 0.0);
        assert_relative_eq!(cell_depth(&s, &b, 2), 0.3, epsilon = 1e-15);
    }

    #[test]
    fn params_validation() {
        assert!(SchemeParams::default().validate().is_ok());
        let bad = SchemeParams {
            theta: 2.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SchemeParams {
            cfl: 0.6,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn locate_cells() {
        let grid = Grid::new(10, 0.0, 1.0).unwrap();
        assert_eq!(grid.locate(0.0), Some(0));
        assert_eq!(grid.locate(0.55), Some(5));
        assert_eq!(grid.locate(1.0), Some(9));
        assert_eq!(grid.locate(1.5), None);
    }
}
