//! Run configuration: command-line flags layered over an optional flat TOML
//! file, plus loading of user-defined scenarios from sampled CSV profiles.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use serde::Deserialize;

use wetdry_core::friction::FrictionParams;
use wetdry_core::scenarios::{self, CustomSpec, Gauge};
use wetdry_core::{Boundary, BoundaryCondition, Scenario, SchemeParams, Variant};

/// Flags shared by every simulation subcommand. Each one overrides the
/// matching key of the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Built-in scenario name, or "custom" with a config file.
    #[arg(long)]
    pub scenario: Option<String>,
    /// Flat TOML file with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Number of cells.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub cfl: Option<f64>,
    /// Dry tolerance.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Wet/dry correction: bckn or kp.
    #[arg(long)]
    pub scheme: Option<String>,
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    /// Plane inclination for dambreak-plane, in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Snapshot times, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub snapshots: Option<Vec<f64>>,
    /// Sampling interval of gauge, front and deviation series.
    #[arg(long = "gauge-dt")]
    pub gauge_dt: Option<f64>,
    /// Manning coefficient; 0 switches friction off.
    #[arg(long)]
    pub manning: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    scenario: Option<String>,
    n: Option<usize>,
    theta: Option<f64>,
    cfl: Option<f64>,
    eps: Option<f64>,
    scheme: Option<String>,
    t_end: Option<f64>,
    alpha: Option<f64>,
    out: Option<PathBuf>,
    snapshots: Option<Vec<f64>>,
    gauge_dt: Option<f64>,
    manning: Option<f64>,
    g: Option<f64>,
    x_left: Option<f64>,
    x_right: Option<f64>,
    bottom_csv: Option<PathBuf>,
    depth_csv: Option<PathBuf>,
    discharge_csv: Option<PathBuf>,
    left_bc: Option<String>,
    right_bc: Option<String>,
    /// Entries of the form `name@x`.
    gauges: Option<Vec<String>>,
}

/// Fully resolved configuration of one simulation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub n: usize,
    pub params: SchemeParams,
    pub variant: Variant,
    pub t_end: f64,
    pub out: PathBuf,
    pub snapshots: Vec<f64>,
    pub gauge_dt: f64,
}

fn read_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("bad config {}", path.display()))
}

/// Two-column `(x, value)` samples; a non-numeric first row is a header.
pub fn read_profile(path: &Path) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut points = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        if rec.len() != 2 {
            bail!("{}: line {} needs two columns", path.display(), i + 1);
        }
        match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
            (Ok(x), Ok(v)) => points.push((x, v)),
            _ if i == 0 => continue,
            _ => bail!("{}: line {} is not numeric", path.display(), i + 1),
        }
    }
    Ok(points)
}

fn parse_gauge(s: &str) -> Result<Gauge> {
    let (name, x) = s
        .split_once('@')
        .ok_or_else(|| anyhow!("gauge {s:?} should look like name@x"))?;
    Ok(Gauge {
        name: name.trim().to_string(),
        x: x.trim()
            .parse()
            .with_context(|| format!("bad gauge position in {s:?}"))?,
    })
}

fn custom_scenario(file: &FileConfig, base: &Path, manning: Option<f64>) -> Result<Scenario> {
    let path = |p: &Option<PathBuf>, key: &str| -> Result<PathBuf> {
        let p = p
            .as_ref()
            .ok_or_else(|| anyhow!("custom scenario needs {key}"))?;
        Ok(base.join(p))
    };
    let bottom = read_profile(&path(&file.bottom_csv, "bottom_csv")?)?;
    let depth = read_profile(&path(&file.depth_csv, "depth_csv")?)?;
    let discharge = match &file.discharge_csv {
        Some(p) => read_profile(&base.join(p))?,
        None => Vec::new(),
    };
    let bc = |s: &Option<String>| -> Result<BoundaryCondition> {
        Ok(BoundaryCondition::parse(s.as_deref().unwrap_or("wall"))?)
    };
    let (x_left, x_right) = match (file.x_left, file.x_right) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            let lo = bottom.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
            let hi = bottom.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
            (file.x_left.unwrap_or(lo), file.x_right.unwrap_or(hi))
        }
    };
    let gauges = file
        .gauges
        .iter()
        .flatten()
        .map(|s| parse_gauge(s))
        .collect::<Result<_>>()?;
    let def = CustomSpec {
        name: "custom".into(),
        x_left,
        x_right,
        cells: 200,
        bottom,
        depth,
        discharge,
        boundary: Boundary::new(bc(&file.left_bc)?, bc(&file.right_bc)?)?,
        g: file.g.unwrap_or(SchemeParams::default().g),
        t_end: file
            .t_end
            .ok_or_else(|| anyhow!("custom scenario needs t_end"))?,
        gauges,
        friction: manning.filter(|&n| n > 0.0).map(FrictionParams::manning),
    };
    Ok(scenarios::custom(def)?)
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self> {
        let (file, base) = match &flags.config {
            Some(p) => (
                read_file(p)?,
                p.parent().map(Path::to_path_buf).unwrap_or_default(),
            ),
            None => (FileConfig::default(), PathBuf::new()),
        };
        let name = flags
            .scenario
            .clone()
            .or_else(|| file.scenario.clone())
            .ok_or_else(|| anyhow!("no scenario given (see list-scenarios)"))?;
        let alpha = flags.alpha.or(file.alpha);
        let manning = flags.manning.or(file.manning);
        let mut scenario = if name == "custom" {
            custom_scenario(&file, &base, manning)?
        } else {
            scenarios::by_name(&name, alpha)?
        };
        if let Some(n) = manning {
            if !(n >= 0.0) {
                bail!("manning coefficient must be nonnegative");
            }
            scenario.friction = (n > 0.0).then(|| FrictionParams::manning(n));
        }
        if let Some(g) = file.g {
            scenario.g = g;
        }

        let defaults = SchemeParams::default();
        let params = SchemeParams {
            g: scenario.g,
            theta: flags.theta.or(file.theta).unwrap_or(defaults.theta),
            eps: flags.eps.or(file.eps).unwrap_or(defaults.eps),
            cfl: flags.cfl.or(file.cfl).unwrap_or(defaults.cfl),
        };
        params.validate()?;

        let scheme = flags
            .scheme
            .clone()
            .or(file.scheme)
            .unwrap_or_else(|| "bckn".into());
        let variant = Variant::parse(&scheme)
            .ok_or_else(|| anyhow!("unknown scheme {scheme:?} (bckn or kp)"))?;
        let n = flags.n.or(file.n).unwrap_or(scenario.default_cells);
        if n == 0 {
            bail!("need at least one cell");
        }
        let t_end = flags.t_end.or(file.t_end).unwrap_or(scenario.t_end);
        if !(t_end >= 0.0 && t_end.is_finite()) {
            bail!("bad end time {t_end}");
        }
        let mut snapshots = flags
            .snapshots
            .clone()
            .or(file.snapshots)
            .unwrap_or_default();
        if snapshots.iter().any(|&t| !(0.0..=t_end).contains(&t)) {
            bail!("snapshot times must lie in [0, {t_end}]");
        }
        snapshots.sort_by(f64::total_cmp);
        snapshots.dedup();
        let gauge_dt = flags.gauge_dt.or(file.gauge_dt).unwrap_or(t_end / 500.0);
        if !(gauge_dt >= 0.0) {
            bail!("gauge interval must be nonnegative");
        }
        scenario = scenario.with_t_end(t_end);
        Ok(Self {
            scenario,
            n,
            params,
            variant,
            t_end,
            out: flags
                .out
                .clone()
                .or(file.out)
                .unwrap_or_else(|| "out".into()),
            snapshots,
            gauge_dt,
        })
    }
}
