use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use wetdry_core::analysis::{self, convergence_table, error_norms, format_table, ErrorReport};
use wetdry_core::scenarios::{self, exact_front, Discretization, SCENARIO_NAMES};
use wetdry_core::{Error, RunOptions, RunSummary, Solver, StepView, Variant};

use crate::config::RunConfig;
use crate::output::{self, DeviationRow, FrontRow, GaugeRow};

/// A solver abort, as opposed to a configuration problem.
#[derive(Debug)]
pub struct SolverFailure(pub Error);

impl std::fmt::Display for SolverFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "solver failed: {}", self.0)
    }
}

impl std::error::Error for SolverFailure {}

fn scheme_name(v: Variant) -> &'static str {
    match v {
        Variant::Bckn => "bckn",
        Variant::Kp => "kp",
    }
}

/// Fires at `0, dt, 2dt, …`, on the first step at or past each mark.
struct Sampler {
    dt: f64,
    k: u64,
}

impl Sampler {
    fn new(dt: f64) -> Self {
        Self { dt, k: 0 }
    }

    fn due(&mut self, t: f64) -> bool {
        if self.dt == 0.0 {
            return true;
        }
        if t < self.k as f64 * self.dt {
            return false;
        }
        while self.k as f64 * self.dt <= t {
            self.k += 1;
        }
        true
    }
}

#[derive(Default, Serialize)]
struct History {
    t: Vec<f64>,
    dt: Vec<f64>,
    drain_cuts: Vec<usize>,
    under_resolved: Vec<usize>,
    mass: Vec<f64>,
}

#[derive(Serialize)]
struct Diagnostics<'a> {
    scenario: &'a str,
    scheme: &'static str,
    n: usize,
    t_end: f64,
    status: &'static str,
    error: Option<String>,
    steps: usize,
    t_reached: f64,
    drain_cuts: usize,
    under_resolved: usize,
    history: &'a History,
}

/// What to record while a simulation runs.
#[derive(Default)]
struct Record {
    snapshots_to: Option<PathBuf>,
    gauges: bool,
    front: bool,
    deviation: bool,
}

struct Outcome {
    disc: Discretization,
    result: std::result::Result<RunSummary, Error>,
    history: History,
    gauges: Vec<GaugeRow>,
    front: Vec<FrontRow>,
    deviation: Vec<DeviationRow>,
    snapshot_error: Option<anyhow::Error>,
}

fn simulate(cfg: &RunConfig, n: usize, variant: Variant, rec: &Record) -> Result<Outcome> {
    let s = &cfg.scenario;
    let disc = s.discretize(n)?;
    let mut solver = Solver::new(disc.grid, disc.bathy.clone(), cfg.params, s.boundary)?
        .with_variant(variant)
        .with_friction(s.friction);
    let opts = RunOptions {
        stop_times: cfg.snapshots.clone(),
        ..RunOptions::until(cfg.t_end)
    };
    let eps = cfg.params.eps;
    let gauge_cells: Vec<(String, usize)> = s
        .gauges
        .iter()
        .filter_map(|g| disc.grid.locate(g.x).map(|j| (g.name.clone(), j)))
        .collect();
    let (h0, hu0) = (disc.state.depths(&disc.bathy), disc.state.hu_bar().to_vec());
    let scheme = scheme_name(variant);

    let mut history = History::default();
    let mut gauges = Vec::new();
    let mut front = Vec::new();
    let mut deviation = Vec::new();
    let mut snapshot_error = None;
    let mut next_snapshot = 0;
    let mut sampler = Sampler::new(cfg.gauge_dt);

    let observer = |v: &StepView<'_>| {
        let d = v.diagnostics;
        history.t.push(v.t);
        history.dt.push(if v.step == 0 { 0.0 } else { d.dt });
        history.drain_cuts.push(d.drain_cuts);
        history.under_resolved.push(d.correction.under_resolved);
        history.mass.push(v.mass());

        if let Some(dir) = &rec.snapshots_to {
            while next_snapshot < cfg.snapshots.len() && cfg.snapshots[next_snapshot] <= v.t {
                let path = dir.join(format!(
                    "snapshot_t{}.csv",
                    output::time_tag(cfg.snapshots[next_snapshot])
                ));
                let rows = output::snapshot_rows(v.grid, v.bathy, v.depth, v.hu, eps);
                if let Err(e) = output::write_csv(&path, rows) {
                    snapshot_error.get_or_insert(e);
                }
                next_snapshot += 1;
            }
        }
        if !sampler.due(v.t) {
            return;
        }
        if rec.gauges {
            for (name, j) in &gauge_cells {
                gauges.push(GaugeRow {
                    t: v.t,
                    gauge_id: name.clone(),
                    h: v.depth[*j],
                });
            }
        }
        if rec.front {
            if let Some(alpha) = s.alpha {
                let j = v.depth.iter().rposition(|&h| h > eps);
                let (xe, ue) = exact_front(v.t, alpha, s.g);
                front.push(FrontRow {
                    t: v.t,
                    x_front: j.map(|j| v.grid.center(j)),
                    u_front_numeric: j.map(|j| output::velocity(v.depth[j], v.hu[j], eps)),
                    x_front_exact: xe,
                    u_front_exact: ue,
                });
            }
        }
        if rec.deviation {
            let (dev_w, dev_hu) = match s.equilibrium_level {
                Some(level) => analysis::equilibrium_deviation(&v.to_state(), v.bathy, level),
                None => {
                    let max_diff = |a: &[f64], b: &[f64]| {
                        a.iter()
                            .zip(b)
                            .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
                    };
                    (max_diff(v.depth, &h0), max_diff(v.hu, &hu0))
                }
            };
            deviation.push(DeviationRow {
                t: v.t,
                scheme,
                dev_w,
                dev_hu,
            });
        }
    };
    let result = solver.run(&disc.state, &opts, observer);
    Ok(Outcome {
        disc,
        result,
        history,
        gauges,
        front,
        deviation,
        snapshot_error,
    })
}

fn prepare_out(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))
}

fn write_diagnostics(path: &Path, cfg: &RunConfig, variant: Variant, out: &Outcome) -> Result<()> {
    let h = &out.history;
    let (status, error) = match &out.result {
        Ok(_) => ("ok", None),
        Err(e) => ("failed", Some(e.to_string())),
    };
    let diag = Diagnostics {
        scenario: &cfg.scenario.name,
        scheme: scheme_name(variant),
        n: out.disc.grid.len(),
        t_end: cfg.t_end,
        status,
        error,
        steps: h.t.len().saturating_sub(1),
        t_reached: h.t.last().copied().unwrap_or(0.0),
        drain_cuts: h.drain_cuts.iter().sum(),
        under_resolved: h.under_resolved.iter().sum(),
        history: h,
    };
    output::write_json(path, &diag)
}

fn summary(out: &mut Outcome) -> Result<RunSummary> {
    if let Some(e) = out.snapshot_error.take() {
        return Err(e);
    }
    out.result.clone().map_err(|e| SolverFailure(e).into())
}

fn report_final(cfg: &RunConfig, variant: Variant, out: &Outcome, summary: &RunSummary) {
    let d = &out.disc;
    let m0 = d.state.mass(&d.bathy);
    let m1 = summary.state.mass(&d.bathy);
    let drift = if m0 > 0.0 {
        (m1 - m0).abs() / m0
    } else {
        (m1 - m0).abs()
    };
    println!(
        "{} [{}] N={} t={} steps={} drain cuts={} under-resolved fronts={}",
        cfg.scenario.name,
        scheme_name(variant),
        d.grid.len(),
        summary.t,
        summary.steps,
        summary.drain_cuts,
        summary.correction.under_resolved
    );
    println!("relative mass change {drift:.3e}");
    let h0 = d.state.depths(&d.bathy);
    let h1 = summary.state.depths(&d.bathy);
    let max_diff = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
    };
    println!(
        "Linf change from initial state: h {:.3e}, hu {:.3e}",
        max_diff(&h1, &h0),
        max_diff(summary.state.hu_bar(), d.state.hu_bar())
    );
    if let Some(level) = cfg.scenario.equilibrium_level {
        let (w, hu) = analysis::equilibrium_deviation(&summary.state, &d.bathy, level);
        println!("deviation from rest at level {level}: w {w:.3e}, hu {hu:.3e}");
    }
}

pub fn run(cfg: &RunConfig) -> Result<()> {
    prepare_out(&cfg.out)?;
    let rec = Record {
        snapshots_to: Some(cfg.out.clone()),
        gauges: true,
        front: cfg.scenario.alpha.is_some(),
        deviation: false,
    };
    let out = simulate(cfg, cfg.n, cfg.variant, &rec)?;
    write_diagnostics(&cfg.out.join("diagnostics.json"), cfg, cfg.variant, &out)?;
    let mut out = out;
    let summary = summary(&mut out)?;

    let d = &out.disc;
    let depth = summary.state.depths(&d.bathy);
    output::write_csv(
        &cfg.out.join("final.csv"),
        output::snapshot_rows(
            &d.grid,
            &d.bathy,
            &depth,
            summary.state.hu_bar(),
            cfg.params.eps,
        ),
    )?;
    for g in &cfg.scenario.gauges {
        let rows = out.gauges.iter().filter(|r| r.gauge_id == g.name);
        output::write_csv(&cfg.out.join(format!("gauge_{}.csv", g.name)), rows)?;
    }
    if rec.front {
        output::write_csv(&cfg.out.join("front.csv"), &out.front)?;
    }
    report_final(cfg, cfg.variant, &out, &summary);
    Ok(())
}

pub fn converge(cfg: &RunConfig, ns: &[usize], reference: usize) -> Result<()> {
    if ns.is_empty() {
        bail!("no resolutions given");
    }
    if ns.windows(2).any(|w| w[1] != 2 * w[0]) {
        bail!("resolutions must form a doubling chain");
    }
    if let Some(n) = ns.iter().find(|&&n| n == 0 || !reference.is_multiple_of(n)) {
        bail!("reference resolution {reference} is not a multiple of {n}");
    }
    prepare_out(&cfg.out)?;
    let start = Instant::now();
    let solve = |n: usize| -> Result<(Outcome, RunSummary)> {
        let mut out = simulate(cfg, n, cfg.variant, &Record::default())?;
        let run = summary(&mut out)?;
        Ok((out, run))
    };
    let (ref_out, ref_run) = solve(reference)?;
    let mut results: Vec<(usize, ErrorReport)> = Vec::new();
    for &n in ns {
        let (out, run) = solve(n)?;
        let e = error_norms(
            &run.state,
            &out.disc.bathy,
            &ref_run.state,
            &ref_out.disc.bathy,
        )?;
        results.push((n, e));
    }
    let rows = convergence_table(&results);
    output::write_table(&cfg.out.join("convergence.csv"), &rows)?;
    println!(
        "{} [{}] t={} reference N={}",
        cfg.scenario.name,
        scheme_name(cfg.variant),
        cfg.t_end,
        reference
    );
    print!("{}", format_table(&rows));
    println!("elapsed {:.1} s", start.elapsed().as_secs_f64());
    Ok(())
}

pub fn compare(cfg: &RunConfig) -> Result<()> {
    prepare_out(&cfg.out)?;
    let rec = Record {
        deviation: true,
        ..Record::default()
    };
    let mut series = Vec::new();
    for variant in [Variant::Bckn, Variant::Kp] {
        let name = scheme_name(variant);
        let mut out = simulate(cfg, cfg.n, variant, &rec)?;
        write_diagnostics(
            &cfg.out.join(format!("diagnostics_{name}.json")),
            cfg,
            variant,
            &out,
        )?;
        let summary = summary(&mut out)?;
        let d = &out.disc;
        let depth = summary.state.depths(&d.bathy);
        output::write_csv(
            &cfg.out.join(format!("final_{name}.csv")),
            output::snapshot_rows(
                &d.grid,
                &d.bathy,
                &depth,
                summary.state.hu_bar(),
                cfg.params.eps,
            ),
        )?;
        report_final(cfg, variant, &out, &summary);
        series.extend(out.deviation);
    }
    output::write_csv(&cfg.out.join("compare.csv"), &series)
}

pub fn list_scenarios() {
    for name in SCENARIO_NAMES {
        println!("{name:<18} {}", scenarios::describe(name).unwrap_or(""));
    }
    println!("{:<18} user profiles from a config file", "custom");
}
