//! Time stepping.
//!
//! A forward Euler stage reconstructs, computes the central-upwind fluxes and
//! then cuts the outgoing mass and advective fluxes of every cell at the
//! time the cell would run empty. Gravity fluxes and the source term always
//! use the full step so that they cancel on steady states. Three such stages
//! are combined into the third-order SSP Runge-Kutta step, all with the
//! step size chosen from the CFL condition at the first stage.

use serde::{Deserialize, Serialize};

use crate::boundary::Boundary;
use crate::error::{Error, Result};
use crate::friction::{apply_friction, FrictionParams};
use crate::grid::{Bathymetry, CellState, Grid, SchemeParams};
use crate::numerics::{cu_flux, source_term, FluxSet, SideState};
use crate::reconstruction::{
    boundary_side, correct_cell, side_state, CorrectionStats, GhostScratch, Side, Variant,
    WetLengths,
};

/// Global step from the CFL condition, or `dt_max` when nothing moves.
pub fn cfl_dt(a_plus: &[f64], a_minus: &[f64], dx: f64, cfl: f64, dt_max: f64) -> f64 {
    let a = a_plus
        .iter()
        .zip(a_minus)
        .fold(0.0_f64, |m, (&p, &q)| m.max(p).max(-q));
    if a > 0.0 {
        (cfl * dx / a).min(dt_max)
    } else {
        dt_max
    }
}

/// Time after which the outflow through the two edges of a cell has
/// removed all of its water. Infinite without outflow.
#[inline]
pub fn draining_time(depth: f64, mass_flux_left: f64, mass_flux_right: f64, dx: f64) -> f64 {
    let outflow = mass_flux_right.max(0.0) + (-mass_flux_left).max(0.0);
    if outflow > 0.0 {
        dx * depth / outflow
    } else {
        f64::INFINITY
    }
}

/// Effective step at every interface: the global step capped by the
/// draining time of the upwind cell. Interfaces without flux, and inflow
/// through a non-periodic domain end, are not cut.
pub fn effective_dt(dt: f64, dt_drain: &[f64], mass_flux: &[f64], periodic: bool) -> Vec<f64> {
    (0..mass_flux.len())
        .map(|i| interface_dt(i, dt, dt_drain, mass_flux[i], periodic))
        .collect()
}

#[inline(always)]
fn interface_dt(i: usize, dt: f64, dt_drain: &[f64], h1: f64, periodic: bool) -> f64 {
    let n = dt_drain.len();
    let upwind = if h1 > 0.0 {
        match i {
            0 if periodic => n - 1,
            0 => return dt,
            _ => i - 1,
        }
    } else if h1 < 0.0 {
        match i {
            _ if i == n && periodic => 0,
            _ if i == n => return dt,
            _ => i,
        }
    } else {
        return dt;
    };
    dt.min(dt_drain[upwind])
}

/// What the first forward Euler stage of a step saw.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StepDiagnostics {
    pub dt: f64,
    pub dt_drain: Vec<f64>,
    pub dt_eff: Vec<f64>,
    /// `a_j`: the largest local speed at either edge of cell `j`.
    pub max_speed: Vec<f64>,
    pub dx_star: Vec<f64>,
    /// `max_j dt·2a_j/Δx*_j` over cells with water at an edge; at most one
    /// guarantees positivity without the draining cut.
    pub cfl_star: f64,
    /// Interfaces whose effective step is shorter than `dt`.
    pub drain_cuts: usize,
    pub correction: CorrectionStats,
}

/// Buffers of one stage evaluation.
#[derive(Debug, Clone, Default)]
struct Workspace {
    scratch: GhostScratch,
    flux: FluxSet,
    dx_star: Vec<f64>,
    max_speed: Vec<f64>,
    /// `max_j 2a_j/Δx*_j` over cells with water at an edge.
    rate: f64,
    stats: CorrectionStats,
    dt_drain: Vec<f64>,
    dt_eff: Vec<f64>,
    drain_cuts: usize,
    diag: StepDiagnostics,
    stage_depth: Vec<f64>,
    stage_hu: Vec<f64>,
    tmp_depth: Vec<f64>,
    tmp_hu: Vec<f64>,
}

/// Solver for one grid, bottom and set of boundary conditions.
#[derive(Debug, Clone)]
pub struct Solver {
    grid: Grid,
    bathy: Bathymetry,
    params: SchemeParams,
    boundary: Boundary,
    variant: Variant,
    draining: bool,
    friction: Option<FrictionParams>,
    dt_floor: f64,
    ws: Workspace,
}

/// Read-only view of the solution handed to run observers.
pub struct StepView<'a> {
    pub t: f64,
    pub step: usize,
    pub depth: &'a [f64],
    pub hu: &'a [f64],
    pub bathy: &'a Bathymetry,
    pub grid: &'a Grid,
    pub diagnostics: &'a StepDiagnostics,
}

impl StepView<'_> {
    pub fn to_state(&self) -> CellState {
        CellState::from_depths(self.depth, self.hu, self.bathy)
    }

    pub fn mass(&self) -> f64 {
        self.depth.iter().sum::<f64>() * self.grid.dx()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub t_end: f64,
    /// Times the step sequence must land on exactly (snapshots).
    pub stop_times: Vec<f64>,
    /// Step used while nothing moves; defaults to the remaining time.
    pub dt_max: Option<f64>,
    /// Stop after this many steps even if `t_end` is not reached.
    pub max_steps: Option<usize>,
}

impl RunOptions {
    pub fn until(t_end: f64) -> Self {
        Self {
            t_end,
            stop_times: Vec::new(),
            dt_max: None,
            max_steps: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub state: CellState,
    pub t: f64,
    pub steps: usize,
    pub dt_history: Vec<f64>,
    pub drain_cuts: usize,
    pub correction: CorrectionStats,
}

#[inline(always)]
fn side(s: Side) -> SideState {
    SideState {
        h: s.h,
        u: s.u,
        hu: s.hu,
    }
}

impl Solver {
    pub fn new(
        grid: Grid,
        bathy: Bathymetry,
        params: SchemeParams,
        boundary: Boundary,
    ) -> Result<Self> {
        params.validate()?;
        boundary.validate()?;
        if bathy.len() != grid.len() {
            return Err(Error::InvalidInput(format!(
                "bottom has {} cells, grid has {}",
                bathy.len(),
                grid.len()
            )));
        }
        if boundary.is_periodic() {
            let b = bathy.interfaces();
            let (b0, bn) = (b[0], b[b.len() - 1]);
            if (b0 - bn).abs() > 1e-12 * (1.0 + b0.abs()) {
                return Err(Error::InvalidInput(
                    "periodic boundaries need equal bottom values at both ends".into(),
                ));
            }
        }
        Ok(Self {
            grid,
            bathy,
            params,
            boundary,
            variant: Variant::Bckn,
            draining: true,
            friction: None,
            dt_floor: 1e-14,
            ws: Workspace::default(),
        })
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    /// Enables or disables the draining-time flux cut.
    pub fn with_draining(mut self, on: bool) -> Self {
        self.draining = on;
        self
    }

    pub fn with_friction(mut self, friction: Option<FrictionParams>) -> Self {
        self.friction = friction.filter(|f| f.enabled);
        self
    }

    pub fn with_dt_floor(mut self, floor: f64) -> Self {
        self.dt_floor = floor;
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn bathymetry(&self) -> &Bathymetry {
        &self.bathy
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    fn split(&self, state: &CellState) -> Result<(Vec<f64>, Vec<f64>)> {
        if state.len() != self.grid.len() {
            return Err(Error::InvalidInput(format!(
                "state has {} cells, grid has {}",
                state.len(),
                self.grid.len()
            )));
        }
        let mut depth = state.depths(&self.bathy);
        for (j, h) in depth.iter_mut().enumerate() {
            // w − B can round to a tiny negative for nearly dry cells.
            if *h < 0.0 && -*h <= 8.0 * f64::EPSILON * state.w_bar()[j].abs() + f64::MIN_POSITIVE {
                *h = 0.0;
            }
            if !h.is_finite() {
                return Err(Error::NonFinite {
                    quantity: "depth",
                    cell: j,
                    time: f64::NAN,
                });
            }
            if *h < 0.0 {
                return Err(Error::Positivity {
                    cell: j,
                    depth: *h,
                    time: f64::NAN,
                });
            }
        }
        if let Some(j) = state.hu_bar().iter().position(|q| !q.is_finite()) {
            return Err(Error::NonFinite {
                quantity: "discharge",
                cell: j,
                time: f64::NAN,
            });
        }
        Ok((depth, state.hu_bar().to_vec()))
    }

    /// Reconstruction, wet/dry correction and interface fluxes in a single
    /// sweep, plus per-cell wet lengths and speeds.
    fn evaluate(&mut self, depth: &[f64], hu: &[f64]) {
        let n = depth.len();
        let dx = self.grid.dx();
        let (g, eps) = (self.params.g, self.params.eps);
        let variant = self.variant;
        let boundary = self.boundary;
        let b = self.bathy.interfaces();
        let ws = &mut self.ws;
        ws.scratch
            .prepare(depth, hu, &self.bathy, &self.params, &self.boundary);
        let sc = &ws.scratch;
        let flux = &mut ws.flux;
        for v in [
            &mut flux.mass,
            &mut flux.advective,
            &mut flux.gravity,
            &mut flux.a_plus,
            &mut flux.a_minus,
        ] {
            v.resize(n + 1, 0.0);
        }
        ws.dx_star.resize(n, dx);
        ws.max_speed.resize(n, 0.0);

        // Sides of cell 0 and cell n − 1 that the periodic wrap needs.
        let (wrap_minus, wrap_plus) = if boundary.is_periodic() {
            let last = sc.cell(n);
            let c = correct_cell(&last, &sc.cell(n - 1), &sc.cell(n + 1), dx, variant);
            let minus = side_state(c.w_right, last.u_right, b[0]);
            let first = sc.cell(1);
            let c = correct_cell(&first, &sc.cell(0), &sc.cell(2), dx, variant);
            let plus = side_state(c.w_left, first.u_left, b[n]);
            (Some(minus), Some(plus))
        } else {
            (None, None)
        };

        let mut stats = CorrectionStats::default();
        let mut rate = 0.0_f64;
        let mut prev = sc.cell(0);
        let mut cur = sc.cell(1);
        let mut pending_minus = Side::default();
        let mut put = |i: usize, minus: Side, plus: Side| {
            let f = cu_flux(side(minus), side(plus), g);
            flux.mass[i] = f.mass;
            flux.advective[i] = f.advective;
            flux.gravity[i] = f.gravity;
            flux.a_plus[i] = f.speeds.a_plus;
            flux.a_minus[i] = f.speeds.a_minus;
            f.speeds.max_abs()
        };
        let mut a_left = 0.0_f64;
        let mut prev_wet = false;
        let mut prev_star = dx;
        for j in 0..n {
            let next = sc.cell(j + 2);
            let c = correct_cell(&cur, &prev, &next, dx, variant);
            stats.count(c.branch);
            ws.dx_star[j] = c.dx_star;
            let plus = side_state(c.w_left, cur.u_left, b[j]);
            let minus = if j == 0 {
                wrap_minus.unwrap_or_else(|| boundary_side(boundary.left, plus, eps))
            } else {
                pending_minus
            };
            let a = put(j, minus, plus);
            if j > 0 {
                let a_cell = a_left.max(a);
                ws.max_speed[j - 1] = a_cell;
                if prev_wet && a_cell > 0.0 {
                    rate = rate.max(2.0 * a_cell / prev_star);
                }
            }
            a_left = a;
            pending_minus = side_state(c.w_right, cur.u_right, b[j + 1]);
            prev_wet = plus.h > 0.0 || pending_minus.h > 0.0;
            prev_star = c.dx_star;
            prev = cur;
            cur = next;
        }
        let plus = wrap_plus.unwrap_or_else(|| boundary_side(boundary.right, pending_minus, eps));
        let a = put(n, pending_minus, plus);
        let a_cell = a_left.max(a);
        ws.max_speed[n - 1] = a_cell;
        if prev_wet && a_cell > 0.0 {
            rate = rate.max(2.0 * a_cell / prev_star);
        }
        ws.rate = rate;
        ws.stats = stats;
    }

    /// Forward Euler update with the fluxes from the last `evaluate`.
    fn apply(
        &mut self,
        depth: &[f64],
        hu: &[f64],
        dt: f64,
        t: f64,
        out_depth: &mut [f64],
        out_hu: &mut [f64],
    ) -> Result<()> {
        let n = depth.len();
        let dx = self.grid.dx();
        let g = self.params.g;
        let b = self.bathy.interfaces();
        let periodic = self.boundary.is_periodic();
        let ws = &mut self.ws;
        let flux = &ws.flux;
        ws.dt_drain.resize(n, f64::INFINITY);
        ws.dt_eff.resize(n + 1, dt);
        if self.draining {
            for j in 0..n {
                ws.dt_drain[j] = draining_time(depth[j], flux.mass[j], flux.mass[j + 1], dx);
            }
        } else {
            ws.dt_drain.fill(f64::INFINITY);
        }
        let drain = &ws.dt_drain;
        let eff = &mut ws.dt_eff;
        let mut cuts = 0;
        let mut eff_l = interface_dt(0, dt, drain, flux.mass[0], periodic);
        eff[0] = eff_l;
        cuts += usize::from(eff_l < dt);
        for j in 0..n {
            let eff_r = interface_dt(j + 1, dt, drain, flux.mass[j + 1], periodic);
            eff[j + 1] = eff_r;
            cuts += usize::from(eff_r < dt);
            let out_r = eff_r * flux.mass[j + 1];
            let out_l = eff_l * flux.mass[j];
            let mut h = depth[j] - (out_r - out_l) / dx;
            if h < 0.0 {
                let scale = depth[j] + (out_r.abs() + out_l.abs()) / dx;
                if -h <= 64.0 * f64::EPSILON * scale + f64::MIN_POSITIVE {
                    h = 0.0;
                } else {
                    return Err(Error::Positivity {
                        cell: j,
                        depth: h,
                        time: t,
                    });
                }
            }
            let s = source_term(depth[j], b[j], b[j + 1], dx, g);
            let q = hu[j]
                - (eff_r * flux.advective[j + 1] - eff_l * flux.advective[j]) / dx
                - dt * ((flux.gravity[j + 1] - flux.gravity[j]) / dx - s);
            if !h.is_finite() {
                return Err(Error::NonFinite {
                    quantity: "depth",
                    cell: j,
                    time: t,
                });
            }
            if !q.is_finite() {
                return Err(Error::NonFinite {
                    quantity: "discharge",
                    cell: j,
                    time: t,
                });
            }
            out_depth[j] = h;
            out_hu[j] = q;
            eff_l = eff_r;
        }
        ws.drain_cuts = cuts;
        Ok(())
    }

    /// Moves the buffers of the last evaluate/apply pair into the step
    /// diagnostics.
    fn record_diagnostics(&mut self, dt: f64) {
        let ws = &mut self.ws;
        let d = &mut ws.diag;
        d.dt = dt;
        d.cfl_star = dt * ws.rate;
        d.drain_cuts = ws.drain_cuts;
        d.correction = ws.stats;
        std::mem::swap(&mut d.dt_drain, &mut ws.dt_drain);
        std::mem::swap(&mut d.dt_eff, &mut ws.dt_eff);
        std::mem::swap(&mut d.max_speed, &mut ws.max_speed);
        std::mem::swap(&mut d.dx_star, &mut ws.dx_star);
    }

    /// Interface fluxes, wet lengths and correction counts for a state.
    pub fn evaluate_fluxes(
        &mut self,
        state: &CellState,
    ) -> Result<(FluxSet, WetLengths, CorrectionStats)> {
        let (depth, hu) = self.split(state)?;
        self.evaluate(&depth, &hu);
        Ok((
            self.ws.flux.clone(),
            WetLengths {
                dx_star: self.ws.dx_star.clone(),
            },
            self.ws.stats,
        ))
    }

    /// Largest step that keeps a plain forward Euler update nonnegative
    /// without the draining cut: `min_j Δx*_j / (2a_j)` over cells with
    /// water at an edge.
    pub fn positivity_bound(&mut self, state: &CellState) -> Result<f64> {
        let (depth, hu) = self.split(state)?;
        Ok(self.positivity_bound_depths(&depth, &hu))
    }

    /// [`Solver::positivity_bound`] for a state given by depths.
    pub fn positivity_bound_depths(&mut self, depth: &[f64], hu: &[f64]) -> f64 {
        self.evaluate(depth, hu);
        if self.ws.rate > 0.0 {
            1.0 / self.ws.rate
        } else {
            f64::INFINITY
        }
    }

    /// Forward Euler step on depths and discharges in place.
    pub fn euler_step_depths(&mut self, depth: &mut [f64], hu: &mut [f64], dt: f64) -> Result<()> {
        let n = self.grid.len();
        if depth.len() != n || hu.len() != n {
            return Err(Error::InvalidInput(format!("expected {n} cells")));
        }
        self.evaluate(depth, hu);
        let mut nd = std::mem::take(&mut self.ws.tmp_depth);
        let mut nq = std::mem::take(&mut self.ws.tmp_hu);
        nd.resize(n, 0.0);
        nq.resize(n, 0.0);
        let result = self.apply(depth, hu, dt, 0.0, &mut nd, &mut nq);
        if result.is_ok() {
            self.record_diagnostics(dt);
            depth.copy_from_slice(&nd);
            hu.copy_from_slice(&nq);
        }
        self.ws.tmp_depth = nd;
        self.ws.tmp_hu = nq;
        result
    }

    /// Diagnostics of the last step.
    pub fn last_diagnostics(&self) -> &StepDiagnostics {
        &self.ws.diag
    }

    /// Step size from the CFL condition for the given state.
    pub fn stable_dt(&mut self, state: &CellState, dt_max: f64) -> Result<f64> {
        let (depth, hu) = self.split(state)?;
        self.evaluate(&depth, &hu);
        Ok(self.cfl_step(dt_max))
    }

    fn cfl_step(&self, dt_max: f64) -> f64 {
        cfl_dt(
            &self.ws.flux.a_plus,
            &self.ws.flux.a_minus,
            self.grid.dx(),
            self.params.cfl,
            dt_max,
        )
    }

    /// One forward Euler step with the draining-time flux cut.
    pub fn euler_step(
        &mut self,
        state: &CellState,
        dt: f64,
    ) -> Result<(CellState, StepDiagnostics)> {
        let (depth, hu) = self.split(state)?;
        self.evaluate(&depth, &hu);
        let mut nd = vec![0.0; depth.len()];
        let mut nq = vec![0.0; depth.len()];
        self.apply(&depth, &hu, dt, 0.0, &mut nd, &mut nq)?;
        self.record_diagnostics(dt);
        Ok((
            CellState::from_depths(&nd, &nq, &self.bathy),
            self.ws.diag.clone(),
        ))
    }

    /// One SSP-RK3 step of size `dt`. Diagnostics are those of the first
    /// stage. Cells ending below the dry tolerance lose their momentum.
    pub fn ssp_rk3_step(
        &mut self,
        state: &CellState,
        dt: f64,
    ) -> Result<(CellState, StepDiagnostics)> {
        let (mut depth, mut hu) = self.split(state)?;
        self.evaluate(&depth, &hu);
        self.rk3_from_evaluated(&mut depth, &mut hu, dt, 0.0)?;
        Ok((
            CellState::from_depths(&depth, &hu, &self.bathy),
            self.ws.diag.clone(),
        ))
    }

    /// RK3 step in place; the first stage must already be evaluated.
    fn rk3_from_evaluated(
        &mut self,
        depth: &mut [f64],
        hu: &mut [f64],
        dt: f64,
        t: f64,
    ) -> Result<()> {
        let n = depth.len();
        let mut s_d = std::mem::take(&mut self.ws.stage_depth);
        let mut s_q = std::mem::take(&mut self.ws.stage_hu);
        let mut t_d = std::mem::take(&mut self.ws.tmp_depth);
        let mut t_q = std::mem::take(&mut self.ws.tmp_hu);
        s_d.resize(n, 0.0);
        s_q.resize(n, 0.0);
        t_d.resize(n, 0.0);
        t_q.resize(n, 0.0);
        let result = (|| {
            self.apply(depth, hu, dt, t, &mut s_d, &mut s_q)?;
            self.record_diagnostics(dt);
            // U2 = 3/4 U0 + 1/4 E(U1)
            self.evaluate(&s_d, &s_q);
            self.apply(&s_d, &s_q, dt, t, &mut t_d, &mut t_q)?;
            for j in 0..n {
                s_d[j] = 0.75 * depth[j] + 0.25 * t_d[j];
                s_q[j] = 0.75 * hu[j] + 0.25 * t_q[j];
            }
            // U = 1/3 U0 + 2/3 E(U2)
            self.evaluate(&s_d, &s_q);
            self.apply(&s_d, &s_q, dt, t, &mut t_d, &mut t_q)?;
            let eps = self.params.eps;
            for j in 0..n {
                depth[j] = depth[j] / 3.0 + 2.0 * t_d[j] / 3.0;
                hu[j] = hu[j] / 3.0 + 2.0 * t_q[j] / 3.0;
                // Momentum left in a cell below the dry tolerance would
                // never move again, since its velocity is zero.
                if depth[j] < eps {
                    hu[j] = 0.0;
                }
            }
            Ok(())
        })();
        self.ws.stage_depth = s_d;
        self.ws.stage_hu = s_q;
        self.ws.tmp_depth = t_d;
        self.ws.tmp_hu = t_q;
        result
    }

    fn apply_friction_in_place(&self, depth: &[f64], hu: &mut [f64], dt: f64) {
        if let Some(f) = self.friction {
            for (q, &h) in hu.iter_mut().zip(depth) {
                *q = apply_friction(h, *q, dt, f.manning_n, self.params.g, self.params.eps);
            }
        }
    }

    /// Integrates from `state` at `t = 0` to `opts.t_end`. The observer is
    /// called once with the initial state (step 0) and after every step.
    pub fn run<F>(
        &mut self,
        state: &CellState,
        opts: &RunOptions,
        mut observer: F,
    ) -> Result<RunSummary>
    where
        F: FnMut(&StepView<'_>),
    {
        let (mut depth, mut hu) = self.split(state)?;
        let mut stops: Vec<f64> = opts
            .stop_times
            .iter()
            .copied()
            .filter(|&s| s > 0.0 && s < opts.t_end)
            .collect();
        stops.sort_by(f64::total_cmp);
        stops.push(opts.t_end);
        let mut next_stop = 0;

        let mut t = 0.0;
        let mut steps = 0;
        let mut dt_history = Vec::new();
        let mut drain_cuts = 0;
        let mut correction = CorrectionStats::default();
        self.ws.diag = StepDiagnostics::default();
        observer(&StepView {
            t,
            step: 0,
            depth: &depth,
            hu: &hu,
            bathy: &self.bathy,
            grid: &self.grid,
            diagnostics: &self.ws.diag,
        });

        while t < opts.t_end && opts.max_steps.is_none_or(|m| steps < m) {
            while next_stop < stops.len() - 1 && stops[next_stop] <= t {
                next_stop += 1;
            }
            let target = stops[next_stop];
            let remaining = target - t;
            self.evaluate(&depth, &hu);
            let dt_cap = opts.dt_max.unwrap_or(opts.t_end - t).min(opts.t_end - t);
            let mut dt = self.cfl_step(dt_cap);
            let landing = dt >= remaining;
            if landing {
                dt = remaining;
            } else if dt < self.dt_floor {
                return Err(Error::StepUnderflow {
                    dt,
                    floor: self.dt_floor,
                    time: t,
                });
            }
            self.rk3_from_evaluated(&mut depth, &mut hu, dt, t)?;
            self.apply_friction_in_place(&depth, &mut hu, dt);
            t = if landing { target } else { t + dt };
            steps += 1;
            dt_history.push(dt);
            drain_cuts += self.ws.diag.drain_cuts;
            correction.accumulate(&self.ws.diag.correction);
            observer(&StepView {
                t,
                step: steps,
                depth: &depth,
                hu: &hu,
                bathy: &self.bathy,
                grid: &self.grid,
                diagnostics: &self.ws.diag,
            });
        }
        Ok(RunSummary {
            state: CellState::from_depths(&depth, &hu, &self.bathy),
            t,
            steps,
            dt_history,
            drain_cuts,
            correction,
        })
    }
}
