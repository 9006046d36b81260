//! Test problems and the conversion of interface data into cell averages.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::boundary::{Boundary, BoundaryCondition};
use crate::error::{Error, Result};
use crate::friction::FrictionParams;
use crate::grid::{Bathymetry, CellState, Grid, Jump};

/// A function of `x`.
pub type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

pub const GRAVITY: f64 = 9.812;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlopeClass {
    Wet,
    Dry,
    /// Still water can rest against the dry side (the wet side is lower).
    Upward,
    /// The wet side is higher; no still water state is possible.
    Downward,
}

/// Depth average of a cell whose wet interface is `h_wet` and whose bottom
/// rises by `rise` toward the dry interface: the inverse of the wet/dry
/// free-surface rule, `h̄ = h_wet² / (2·rise)`.
pub fn adverse_slope_depth(h_wet: f64, rise: f64) -> f64 {
    assert!(rise > 0.0, "adverse slope needs a bottom rise, got {rise}");
    h_wet * h_wet / (2.0 * rise)
}

/// Cell averages from point values at the interfaces.
///
/// Discharge and the depth of wet and downward-slope cells use the
/// trapezoidal rule. Upward-slope cells get the depth of flat still water
/// touching the dry interface; if the wet depth reaches above the dry
/// interface's bottom the water cannot be still and the trapezoidal rule
/// is used.
pub fn init_cell_averages(
    h_ifc: &[f64],
    hu_ifc: &[f64],
    bathy: &Bathymetry,
) -> Result<(CellState, Vec<SlopeClass>)> {
    let n = bathy.len();
    if h_ifc.len() != n + 1 || hu_ifc.len() != n + 1 {
        return Err(Error::InvalidInput(format!(
            "expected {} interface values",
            n + 1
        )));
    }
    if let Some(i) = h_ifc.iter().position(|h| !(h.is_finite() && *h >= 0.0)) {
        return Err(Error::InvalidInput(format!(
            "interface depth {} at interface {i} is not a nonnegative number",
            h_ifc[i]
        )));
    }
    let b = bathy.interfaces();
    let mut depth = Vec::with_capacity(n);
    let mut class = Vec::with_capacity(n);
    for j in 0..n {
        let (hl, hr) = (h_ifc[j], h_ifc[j + 1]);
        let trapezoid = 0.5 * (hl + hr);
        let (h, c) = match (hl > 0.0, hr > 0.0) {
            (true, true) => (trapezoid, SlopeClass::Wet),
            (false, false) => (0.0, SlopeClass::Dry),
            (wet_left, _) => {
                let (h_wet, rise) = if wet_left {
                    (hl, b[j + 1] - b[j])
                } else {
                    (hr, b[j] - b[j + 1])
                };
                if rise > 0.0 {
                    let h = if h_wet < rise {
                        adverse_slope_depth(h_wet, rise)
                    } else {
                        trapezoid
                    };
                    (h, SlopeClass::Upward)
                } else {
                    (trapezoid, SlopeClass::Downward)
                }
            }
        };
        depth.push(h);
        class.push(c);
    }
    let hu: Vec<f64> = hu_ifc.windows(2).map(|p| 0.5 * (p[0] + p[1])).collect();
    Ok((CellState::from_depths(&depth, &hu, bathy), class))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gauge {
    pub name: String,
    pub x: f64,
}

/// A complete test problem: geometry, initial data, boundary conditions
/// and run length.
#[derive(Clone)]
pub struct Scenario {
    pub name: String,
    pub x_left: f64,
    pub x_right: f64,
    pub default_cells: usize,
    pub bottom: Profile,
    pub jumps: Vec<Jump>,
    /// Initial depth `h(x, 0)` sampled at interfaces.
    pub depth0: Profile,
    /// Initial discharge `hu(x, 0)` sampled at interfaces.
    pub discharge0: Profile,
    pub boundary: Boundary,
    pub g: f64,
    pub t_end: f64,
    pub gauges: Vec<Gauge>,
    pub friction: Option<FrictionParams>,
    /// Still-water level the solution should settle to, if any.
    pub equilibrium_level: Option<f64>,
    /// Inclination of the dam-break plane.
    pub alpha: Option<f64>,
}

impl fmt::Debug for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scenario")
            .field("name", &self.name)
            .field("domain", &(self.x_left, self.x_right))
            .field("default_cells", &self.default_cells)
            .field("boundary", &self.boundary)
            .field("g", &self.g)
            .field("t_end", &self.t_end)
            .field("gauges", &self.gauges)
            .field("friction", &self.friction)
            .finish_non_exhaustive()
    }
}

/// Grid, bottom and initial cell averages of a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Discretization {
    pub grid: Grid,
    pub bathy: Bathymetry,
    pub state: CellState,
    pub classes: Vec<SlopeClass>,
}

impl Scenario {
    pub fn discretize(&self, n: usize) -> Result<Discretization> {
        let grid = Grid::new(n, self.x_left, self.x_right)?;
        let bathy = Bathymetry::with_jumps(&grid, |x| (self.bottom)(x), &self.jumps)?;
        let xs = grid.interfaces();
        let h: Vec<f64> = xs.iter().map(|&x| (self.depth0)(x)).collect();
        let hu: Vec<f64> = xs.iter().map(|&x| (self.discharge0)(x)).collect();
        let (state, classes) = init_cell_averages(&h, &hu, &bathy)?;
        Ok(Discretization {
            grid,
            bathy,
            state,
            classes,
        })
    }

    pub fn with_t_end(mut self, t_end: f64) -> Self {
        self.t_end = t_end;
        self
    }

    fn check(self) -> Result<Self> {
        if !(self.x_right > self.x_left) {
            return Err(Error::InvalidInput("empty domain".into()));
        }
        if let Some(g) = self
            .gauges
            .iter()
            .find(|g| g.x < self.x_left || g.x > self.x_right)
        {
            return Err(Error::InvalidInput(format!(
                "gauge {} at x = {} lies outside the domain",
                g.name, g.x
            )));
        }
        if !(self.t_end >= 0.0) {
            return Err(Error::InvalidInput(format!("bad end time {}", self.t_end)));
        }
        self.boundary.validate()?;
        Ok(self)
    }
}

fn profile(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Profile {
    Arc::new(f)
}

/// Smooth periodic flow over `B = sin²(πx)` on `[0, 1]`.
pub fn make_accuracy_test() -> Scenario {
    use std::f64::consts::PI;
    Scenario {
        name: "accuracy".into(),
        x_left: 0.0,
        x_right: 1.0,
        default_cells: 200,
        bottom: profile(|x| (PI * x).sin().powi(2)),
        jumps: Vec::new(),
        depth0: profile(|x| 5.0 + (2.0 * PI * x).cos().exp()),
        discharge0: profile(|x| (2.0 * PI * x).cos().sin()),
        boundary: Boundary::periodic(),
        g: GRAVITY,
        t_end: 0.1,
        gauges: Vec::new(),
        friction: None,
        equilibrium_level: None,
        alpha: None,
    }
}

pub fn lake_bottom(x: f64) -> f64 {
    0.25 - 0.25 * ((2.0 * x - 1.0) * std::f64::consts::PI).cos()
}

/// Lake at rest at level 0.4 in a bowl, or the oscillating lake when
/// `perturbed`.
pub fn make_lake_at_rest(perturbed: bool) -> Scenario {
    let depth0 = if perturbed {
        profile(|x| {
            let b = lake_bottom(x);
            (0.4 + (4.0 * x - 2.0 - (b - 0.4).max(0.0)).sin() / 25.0 - b).max(0.0)
        })
    } else {
        profile(|x| (0.4 - lake_bottom(x)).max(0.0))
    };
    Scenario {
        name: if perturbed {
            "oscillating-lake"
        } else {
            "lake-at-rest"
        }
        .into(),
        x_left: 0.0,
        x_right: 1.0,
        default_cells: 200,
        bottom: profile(lake_bottom),
        jumps: Vec::new(),
        depth0,
        discharge0: profile(|_| 0.0),
        boundary: Boundary::walls(),
        g: GRAVITY,
        t_end: 19.87,
        gauges: Vec::new(),
        friction: None,
        equilibrium_level: (!perturbed).then_some(0.4),
        alpha: None,
    }
}

/// Initial velocity of the run-up wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RunupVelocity {
    /// `u₀ = √(g/D)·(H₀ − D)`: a right-going solitary wave.
    #[default]
    Elevation,
    /// `u₀ = √(g/D)·H₀`, the full surface height.
    Surface,
}

pub struct RunupParams {
    pub depth: f64,
    pub amplitude: f64,
    pub gamma: f64,
    pub x_a: f64,
}

pub fn runup_params() -> RunupParams {
    let d: f64 = 1.0;
    let delta: f64 = 0.019;
    let gamma = (3.0 * delta / (4.0 * d)).sqrt();
    let x_a = (4.0 * d / (3.0 * delta)).sqrt() * 20f64.sqrt().acosh();
    RunupParams {
        depth: d,
        amplitude: delta,
        gamma,
        x_a,
    }
}

/// Solitary wave running up a plane shore of slope 1/19.85.
pub fn make_runup() -> Scenario {
    make_runup_with(RunupVelocity::default())
}

pub fn make_runup_with(velocity: RunupVelocity) -> Scenario {
    let p = runup_params();
    let (d, delta, gamma, x_a) = (p.depth, p.amplitude, p.gamma, p.x_a);
    let bottom = move |x: f64| {
        if x < 2.0 * x_a {
            0.0
        } else {
            (x - 2.0 * x_a) / 19.85
        }
    };
    let surface = move |x: f64| {
        let s = 1.0 / (gamma * (x - x_a)).cosh();
        (d + delta * s * s).max(bottom(x))
    };
    let c = (GRAVITY / d).sqrt();
    let discharge = move |x: f64| {
        let w = surface(x);
        let h = w - bottom(x);
        let u = match velocity {
            RunupVelocity::Elevation => c * (w - d),
            RunupVelocity::Surface => c * w,
        };
        if h > 0.0 {
            h * u
        } else {
            0.0
        }
    };
    Scenario {
        name: "runup".into(),
        x_left: 0.0,
        x_right: 80.0,
        default_cells: 200,
        bottom: profile(bottom),
        jumps: Vec::new(),
        depth0: profile(move |x| surface(x) - bottom(x)),
        discharge0: profile(discharge),
        boundary: Boundary::new(BoundaryCondition::Outflow, BoundaryCondition::Wall)
            .expect("non-periodic pair"),
        g: GRAVITY,
        t_end: 80.0,
        gauges: Vec::new(),
        friction: None,
        equilibrium_level: Some(d),
        alpha: None,
    }
}

/// Dam break at `x = 0` onto a dry plane `B = x·tan α`, so that positive
/// angles run uphill. The still reservoir behind the dam has `w = 1`.
pub fn make_dambreak_plane(alpha: f64) -> Scenario {
    let t = alpha.tan();
    Scenario {
        name: "dambreak-plane".into(),
        x_left: -15.0,
        x_right: 15.0,
        default_cells: 200,
        bottom: profile(move |x| x * t),
        jumps: Vec::new(),
        depth0: profile(move |x| if x < 0.0 { 1.0 - x * t } else { 0.0 }),
        discharge0: profile(|_| 0.0),
        boundary: Boundary::new(
            BoundaryCondition::Discharge(0.0),
            BoundaryCondition::Outflow,
        )
        .expect("non-periodic pair"),
        g: GRAVITY,
        t_end: 2.0,
        gauges: Vec::new(),
        friction: None,
        equilibrium_level: None,
        alpha: Some(alpha),
    }
}

/// Exact front position and velocity of the dam break over a plane.
pub fn exact_front(t: f64, alpha: f64, g: f64) -> (f64, f64) {
    let c = (g * alpha.cos()).sqrt();
    let s = alpha.tan();
    (2.0 * t * c - 0.5 * g * t * t * s, 2.0 * c - g * t * s)
}

pub const CADAM_DAM: f64 = 15.5;
pub const CADAM_GAUGES: [f64; 7] = [2.0, 4.0, 8.0, 10.0, 11.0, 13.0, 20.0];

pub fn cadam_bottom(x: f64) -> f64 {
    let (foot, apex, end, height) = (28.5, 31.5, 34.5, 0.4);
    if x <= foot || x >= end {
        0.0
    } else if x <= apex {
        height * (x - foot) / (apex - foot)
    } else {
        height * (end - x) / (end - apex)
    }
}

/// Laboratory dam break over a triangular hump with Manning friction.
pub fn make_cadam_hump() -> Scenario {
    Scenario {
        name: "cadam-hump".into(),
        x_left: 0.0,
        x_right: 38.0,
        default_cells: 200,
        bottom: profile(cadam_bottom),
        jumps: Vec::new(),
        depth0: profile(|x| {
            if x < CADAM_DAM {
                0.75 - cadam_bottom(x)
            } else {
                0.0
            }
        }),
        discharge0: profile(|_| 0.0),
        boundary: Boundary::new(BoundaryCondition::Wall, BoundaryCondition::Outflow)
            .expect("non-periodic pair"),
        g: GRAVITY,
        t_end: 90.0,
        gauges: CADAM_GAUGES
            .iter()
            .map(|&d| Gauge {
                name: format!("GP{d}"),
                x: CADAM_DAM + d,
            })
            .collect(),
        friction: Some(FrictionParams::manning(0.0125)),
        equilibrium_level: None,
        alpha: None,
    }
}

pub const SCENARIO_NAMES: [&str; 6] = [
    "accuracy",
    "lake-at-rest",
    "oscillating-lake",
    "runup",
    "dambreak-plane",
    "cadam-hump",
];

pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "accuracy" => "smooth periodic flow over sin^2 bottom, t = 0.1",
        "lake-at-rest" => "still lake in a cosine bowl with dry shores, t = 19.87",
        "oscillating-lake" => "perturbed lake in the same bowl, t = 19.87",
        "runup" => "solitary wave running up a 1:19.85 shore, t = 80",
        "dambreak-plane" => "dam break onto a dry inclined plane (--alpha), t = 2",
        "cadam-hump" => "laboratory dam break over a triangular hump with friction, t = 90",
        _ => return None,
    })
}

/// Scenario by name; `alpha` only applies to the dam break.
pub fn by_name(name: &str, alpha: Option<f64>) -> Result<Scenario> {
    Ok(match name {
        "accuracy" => make_accuracy_test(),
        "lake-at-rest" => make_lake_at_rest(false),
        "oscillating-lake" => make_lake_at_rest(true),
        "runup" => make_runup(),
        "dambreak-plane" => make_dambreak_plane(alpha.unwrap_or(0.0)),
        "cadam-hump" => make_cadam_hump(),
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown scenario '{name}' (known: {})",
                SCENARIO_NAMES.join(", ")
            )))
        }
    })
}

/// Linear interpolant through `(x, value)` points, constant beyond the
/// ends.
pub fn piecewise_linear(mut points: Vec<(f64, f64)>) -> Result<Profile> {
    if points.is_empty() {
        return Err(Error::InvalidInput("no sample points".into()));
    }
    if points.iter().any(|(x, v)| !x.is_finite() || !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite sample point".into()));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    if points.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::InvalidInput("repeated sample abscissa".into()));
    }
    Ok(profile(move |x| {
        let k = points.partition_point(|p| p.0 <= x);
        if k == 0 {
            return points[0].1;
        }
        if k == points.len() {
            return points[k - 1].1;
        }
        let (x0, v0) = points[k - 1];
        let (x1, v1) = points[k];
        v0 + (v1 - v0) * (x - x0) / (x1 - x0)
    }))
}

/// User-defined problem from sampled bottom, depth and discharge.
pub struct CustomSpec {
    pub name: String,
    pub x_left: f64,
    pub x_right: f64,
    pub cells: usize,
    pub bottom: Vec<(f64, f64)>,
    pub depth: Vec<(f64, f64)>,
    pub discharge: Vec<(f64, f64)>,
    pub boundary: Boundary,
    pub g: f64,
    pub t_end: f64,
    pub gauges: Vec<Gauge>,
    pub friction: Option<FrictionParams>,
}

pub fn custom(def: CustomSpec) -> Result<Scenario> {
    if def.depth.iter().any(|&(_, h)| h < 0.0) {
        return Err(Error::InvalidInput("negative initial depth".into()));
    }
    let discharge = if def.discharge.is_empty() {
        profile(|_| 0.0)
    } else {
        piecewise_linear(def.discharge)?
    };
    Scenario {
        name: def.name,
        x_left: def.x_left,
        x_right: def.x_right,
        default_cells: def.cells,
        bottom: piecewise_linear(def.bottom)?,
        jumps: Vec::new(),
        depth0: piecewise_linear(def.depth)?,
        discharge0: discharge,
        boundary: def.boundary,
        g: def.g,
        t_end: def.t_end,
        gauges: def.gauges,
        friction: def.friction,
        equilibrium_level: None,
        alpha: None,
    }
    .check()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reconstruction::free_surface_level;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    /// Depth and class of the first cell of a three-cell grid whose other
    /// cells are dry and level with its right interface.
    fn first_cell(hl: f64, hr: f64, bl: f64, br: f64) -> (f64, SlopeClass) {
        let grid = Grid::new(3, 0.0, 3.0).unwrap();
        let b = Bathymetry::from_samples(&grid, vec![bl, br, br, br]).unwrap();
        let (s, c) = init_cell_averages(&[hl, hr, 0.0, 0.0], &[0.0; 4], &b).unwrap();
        (s.depth(&b, 0), c[0])
    }

    #[test]
    fn cell_average_examples() {
        let grid = Grid::new(3, 0.0, 3.0).unwrap();
        let b = Bathymetry::flat(&grid);
        let (s, c) = init_cell_averages(&[1.0, 2.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0], &b).unwrap();
        assert_eq!(s.w_bar()[0], 1.5);
        assert_eq!(s.hu_bar()[0], 0.5);
        assert_eq!(
            c,
            vec![SlopeClass::Wet, SlopeClass::Downward, SlopeClass::Dry]
        );

        let (h, c) = first_cell(0.0, 0.5, 1.0, 0.0);
        assert_eq!(c, SlopeClass::Upward);
        assert_eq!(h, 0.125);
        let (w, _) = free_surface_level(h, 1.0, 0.0, 1.0);
        assert_relative_eq!(w, 0.5, epsilon = 1e-15);

        assert_eq!(first_cell(0.0, 0.5, 0.0, 1.0), (0.25, SlopeClass::Downward));
        // Mirror of the adverse slope.
        assert_eq!(first_cell(0.5, 0.0, 0.0, 1.0), (0.125, SlopeClass::Upward));
    }

    #[test]
    fn deep_water_against_a_low_rise_uses_trapezoid() {
        assert_eq!(first_cell(0.0, 1.0, 0.1, 0.0).0, 0.5);
    }

    #[test]
    fn negative_interface_depth_is_rejected() {
        let grid = Grid::new(3, 0.0, 3.0).unwrap();
        let b = Bathymetry::flat(&grid);
        assert!(init_cell_averages(&[-0.1, 1.0, 1.0, 1.0], &[0.0; 4], &b).is_err());
        assert!(init_cell_averages(&[1.0; 3], &[0.0; 3], &b).is_err());
    }

    #[test]
    fn accuracy_data() {
        let s = make_accuracy_test();
        assert_relative_eq!((s.depth0)(0.0), 5.0 + std::f64::consts::E);
        assert_relative_eq!((s.bottom)(0.5), 1.0);
        assert!((s.discharge0)(0.25).abs() < 1e-15);
        assert!(s.boundary.is_periodic());
    }

    #[test]
    fn lake_data() {
        let s = make_lake_at_rest(false);
        assert_eq!((s.bottom)(0.5), 0.0);
        assert_relative_eq!((s.depth0)(0.5), 0.4);
        assert_eq!((s.depth0)(0.0), 0.0);
        let d = s.discretize(200).unwrap();
        for j in 0..200 {
            let h = d.state.depth(&d.bathy, j);
            assert!(h >= 0.0);
            if d.classes[j] == SlopeClass::Wet {
                assert_relative_eq!(d.state.w_bar()[j], 0.4, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn runup_data() {
        let p = runup_params();
        assert_relative_eq!(p.gamma, 0.119_373, epsilon = 1e-6);
        assert_relative_eq!(p.x_a, 8.377_078 * 2.178_272, epsilon = 1e-5);
        let s = make_runup();
        assert_eq!((s.bottom)(2.0 * p.x_a - 1e-9), 0.0);
        assert!((s.bottom)(80.0) > 1.0);
        // cosh(γ x_a) = √20, so the left end carries a twentieth of the crest.
        let c = GRAVITY.sqrt();
        let eta = 0.019 / 20.0;
        assert_relative_eq!((s.discharge0)(0.0), c * eta * (1.0 + eta), epsilon = 1e-12);
        assert_relative_eq!((s.discharge0)(p.x_a), c * 0.019 * 1.019, epsilon = 1e-12);
        let printed = make_runup_with(RunupVelocity::Surface);
        assert_relative_eq!(
            (printed.discharge0)(0.0),
            c * (1.0 + eta).powi(2),
            epsilon = 1e-12
        );
    }

    #[test]
    fn dambreak_data() {
        let s = make_dambreak_plane(0.0);
        assert_eq!((s.depth0)(-1.0), 1.0);
        assert_eq!((s.depth0)(0.0), 0.0);
        let s = make_dambreak_plane(PI / 60.0);
        assert_relative_eq!(
            (s.depth0)(-15.0),
            1.0 + 15.0 * 0.052_407_779,
            epsilon = 1e-8
        );
        assert_relative_eq!((s.bottom)(-15.0) + (s.depth0)(-15.0), 1.0, epsilon = 1e-12);
        assert!((s.bottom)(10.0) > 0.0);
    }

    #[test]
    fn exact_front_examples() {
        let (x, u) = exact_front(0.0, 0.3, GRAVITY);
        assert_eq!(x, 0.0);
        assert_relative_eq!(u, 2.0 * (GRAVITY * 0.3f64.cos()).sqrt());
        assert_relative_eq!(exact_front(2.0, 0.0, GRAVITY).0, 12.5297, epsilon = 1e-4);
        let (c, t) = ((GRAVITY * 0.998_629_535).sqrt(), 0.052_407_779);
        assert_relative_eq!(
            exact_front(2.0, PI / 60.0, GRAVITY).0,
            4.0 * c - 2.0 * GRAVITY * t,
            epsilon = 1e-7
        );
    }

    #[test]
    fn cadam_data() {
        let s = make_cadam_hump();
        assert_relative_eq!((s.bottom)(31.5), 0.4, epsilon = 1e-15);
        assert_eq!(s.gauges[5].x, 28.5);
        assert_eq!(s.gauges.len(), 7);
        assert_eq!((s.depth0)(10.0), 0.75);
        assert_eq!((s.depth0)(20.0), 0.0);
    }

    #[test]
    fn every_scenario_starts_nonnegative() {
        for name in SCENARIO_NAMES {
            let s = by_name(name, Some(-PI / 60.0)).unwrap();
            let d = s.discretize(s.default_cells).unwrap();
            assert!(d.state.depths(&d.bathy).iter().all(|&h| h >= 0.0), "{name}");
            assert!(describe(name).is_some());
        }
        assert!(by_name("nope", None).is_err());
    }

    #[test]
    fn interpolant() {
        let f = piecewise_linear(vec![(1.0, 2.0), (0.0, 0.0)]).unwrap();
        assert_eq!(f(0.5), 1.0);
        assert_eq!(f(-1.0), 0.0);
        assert_eq!(f(3.0), 2.0);
        assert!(piecewise_linear(vec![]).is_err());
        assert!(piecewise_linear(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
    }
}
