//! Configuration-driven sweeps that produce CSV tables.
//!
//! Each run is described by a TOML file naming one [`ExperimentId`], the PT
//! parameter sets, the per-arm channels and the time grid. Grid points are
//! evaluated in parallel and written back in grid order, so the same config
//! always yields byte-identical output.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Deserialize;

use crate::beamsplitter::{bs_output, QubitState};
use crate::channels::{apply_two_arm, ChannelSpec, PD_RANGE_SLACK};
use crate::cxmat::c;
use crate::error::{Error, Result};
use crate::measures::{concurrence, measure_all, mid, negativity};
use crate::ptqubit::{eigenvalues, qubit_state_at, PTParams};

/// Overrides the directory searched for `<experiment>.toml`.
pub const CONFIG_DIR_ENV: &str = "PTNC_CONFIG_DIR";
pub const DEFAULT_CONFIG_DIR: &str = "configs";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentId {
    EigenSurface,
    MeasuresVsTime,
    ChannelConcurrenceP1,
    MidUnderNoise,
    ConcurrenceUnderNoise,
    NegativityUnderNoise,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 6] = [
        ExperimentId::EigenSurface,
        ExperimentId::MeasuresVsTime,
        ExperimentId::ChannelConcurrenceP1,
        ExperimentId::MidUnderNoise,
        ExperimentId::ConcurrenceUnderNoise,
        ExperimentId::NegativityUnderNoise,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentId::EigenSurface => "eigen-surface",
            ExperimentId::MeasuresVsTime => "measures-vs-time",
            ExperimentId::ChannelConcurrenceP1 => "channel-concurrence-p1",
            ExperimentId::MidUnderNoise => "mid-under-noise",
            ExperimentId::ConcurrenceUnderNoise => "concurrence-under-noise",
            ExperimentId::NegativityUnderNoise => "negativity-under-noise",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ExperimentId::EigenSurface => "eigenvalues of H_eff over an (omega, gamma, phi) grid",
            ExperimentId::MeasuresVsTime => "MID, concurrence and negativity of the noiseless output",
            ExperimentId::ChannelConcurrenceP1 => "concurrence of the p = 1 output under each channel",
            ExperimentId::MidUnderNoise => "MID of the evolved output under each channel",
            ExperimentId::ConcurrenceUnderNoise => "concurrence of the evolved output under each channel",
            ExperimentId::NegativityUnderNoise => "negativity of the evolved output under each channel",
        }
    }

    /// Which of Q, C, N the table carries.
    pub fn columns(self) -> Columns {
        match self {
            ExperimentId::EigenSurface => Columns::NONE,
            ExperimentId::MeasuresVsTime => Columns::ALL,
            ExperimentId::ChannelConcurrenceP1 | ExperimentId::ConcurrenceUnderNoise => Columns {
                c: true,
                ..Columns::NONE
            },
            ExperimentId::MidUnderNoise => Columns {
                q: true,
                ..Columns::NONE
            },
            ExperimentId::NegativityUnderNoise => Columns {
                n: true,
                ..Columns::NONE
            },
        }
    }

    fn uses_channels(self) -> bool {
        !matches!(self, ExperimentId::EigenSurface | ExperimentId::MeasuresVsTime)
    }

    fn uses_pt(self) -> bool {
        !matches!(self, ExperimentId::EigenSurface | ExperimentId::ChannelConcurrenceP1)
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Columns {
    pub q: bool,
    pub c: bool,
    pub n: bool,
}

impl Columns {
    pub const NONE: Columns = Columns {
        q: false,
        c: false,
        n: false,
    };
    pub const ALL: Columns = Columns {
        q: true,
        c: true,
        n: true,
    };
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PtSet {
    pub label: String,
    pub omega: f64,
    pub phi: f64,
    pub gamma: f64,
}

impl PtSet {
    pub fn params(&self) -> Result<PTParams> {
        PTParams::new(self.omega, self.phi, self.gamma)
            .map_err(|e| Error::Config(format!("PT set '{}': {e}", self.label)))
    }
}

/// One arm's channel as written in the config.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ArmChannel {
    Identity,
    Rtn { coupling: f64, switching_rate: f64 },
    Pd { eta: f64 },
    Ad { chi: f64 },
}

impl ArmChannel {
    pub fn spec(self) -> Result<ChannelSpec> {
        match self {
            ArmChannel::Identity => Ok(ChannelSpec::Identity),
            ArmChannel::Rtn {
                coupling,
                switching_rate,
            } => ChannelSpec::rtn(coupling, switching_rate),
            ArmChannel::Pd { eta } => ChannelSpec::phase_damping(eta),
            ArmChannel::Ad { chi } => ChannelSpec::amplitude_damping(chi),
        }
    }
}

/// A labelled channel; `arm_b` defaults to the same channel as arm A.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct ChannelConfig {
    pub label: String,
    #[serde(flatten)]
    pub arm_a: ArmChannel,
    #[serde(default)]
    pub arm_b: Option<ArmChannel>,
}

impl ChannelConfig {
    pub fn specs(&self) -> Result<(ChannelSpec, ChannelSpec)> {
        let wrap = |e: Error| Error::Config(format!("channel '{}': {e}", self.label));
        let a = self.arm_a.spec().map_err(wrap)?;
        let b = self.arm_b.unwrap_or(self.arm_a).spec().map_err(wrap)?;
        Ok((a, b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::Config(format!("time grid needs at least 2 steps, got {}", self.steps)));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start >= 0.0) {
            return Err(Error::Config("time grid bounds must be finite and start >= 0".into()));
        }
        if self.stop <= self.start {
            return Err(Error::Config(format!(
                "time grid must be increasing, got [{}, {}]",
                self.start, self.stop
            )));
        }
        let pts = self.points();
        if pts.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("time grid is not strictly increasing".into()));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.steps.max(2) - 1;
        let span = self.stop - self.start;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.stop
                } else {
                    self.start + span * i as f64 / n as f64
                }
            })
            .collect()
    }
}

/// Either a single value or an evenly spaced inclusive range.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    Fixed(f64),
    Range { start: f64, stop: f64, steps: usize },
}

impl Axis {
    pub fn points(&self) -> Result<Vec<f64>> {
        match *self {
            Axis::Fixed(v) if v.is_finite() => Ok(vec![v]),
            Axis::Fixed(v) => Err(Error::Config(format!("axis value must be finite, got {v}"))),
            Axis::Range { start, stop, steps } => {
                if steps < 2 || !(start.is_finite() && stop.is_finite()) || stop <= start {
                    return Err(Error::Config(format!(
                        "invalid axis range [{start}, {stop}] with {steps} steps"
                    )));
                }
                let n = steps - 1;
                Ok((0..=n)
                    .map(|i| if i == n { stop } else { start + (stop - start) * i as f64 / n as f64 })
                    .collect())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenGrid {
    pub omega: Axis,
    pub gamma: Axis,
    pub phi: Axis,
}

/// Input qubit for `channel-concurrence-p1`; defaults to `p = 1, x = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputState {
    pub p: f64,
    #[serde(default)]
    pub x_re: f64,
    #[serde(default)]
    pub x_im: f64,
}

impl Default for InputState {
    fn default() -> Self {
        Self {
            p: 1.0,
            x_re: 0.0,
            x_im: 0.0,
        }
    }
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentId,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub time: Option<TimeGrid>,
    #[serde(default)]
    pub pt: Vec<PtSet>,
    #[serde(default)]
    pub channels: Vec<ChannelConfig>,
    #[serde(default)]
    pub eigen: Option<EigenGrid>,
    #[serde(default)]
    pub state: Option<InputState>,
    /// Emit a noiseless reference series next to the channel series.
    #[serde(default = "yes")]
    pub include_noiseless: bool,
}

impl ExperimentConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// The parameters shipped in `configs/`.
    pub fn builtin(id: ExperimentId) -> Self {
        let pt = vec![
            PtSet {
                label: "PTS".into(),
                omega: 2.0,
                phi: PI,
                gamma: 0.5,
            },
            PtSet {
                label: "PTSB".into(),
                omega: 0.7,
                phi: 0.0,
                gamma: 1.0,
            },
        ];
        let channel = |label: &str, arm: ArmChannel| ChannelConfig {
            label: label.into(),
            arm_a: arm,
            arm_b: None,
        };
        let channels = vec![
            channel(
                "RTN-nonMarkovian",
                ArmChannel::Rtn {
                    coupling: 1.0,
                    switching_rate: 0.2,
                },
            ),
            channel(
                "RTN-Markovian",
                ArmChannel::Rtn {
                    coupling: 0.1,
                    switching_rate: 1.0,
                },
            ),
            channel("PD", ArmChannel::Pd { eta: 0.15 }),
            channel("AD", ArmChannel::Ad { chi: 0.3 }),
        ];
        let time = Some(TimeGrid {
            start: 0.0,
            stop: 10.0,
            steps: 501,
        });
        let base = ExperimentConfig {
            experiment: id,
            output: Some(PathBuf::from(format!("out/{id}.csv"))),
            time: None,
            pt: Vec::new(),
            channels: Vec::new(),
            eigen: None,
            state: None,
            include_noiseless: true,
        };
        match id {
            ExperimentId::EigenSurface => ExperimentConfig {
                eigen: Some(EigenGrid {
                    omega: Axis::Range {
                        start: 0.0,
                        stop: 3.0,
                        steps: 61,
                    },
                    gamma: Axis::Range {
                        start: 0.0,
                        stop: 3.0,
                        steps: 61,
                    },
                    phi: Axis::Fixed(0.0),
                }),
                ..base
            },
            ExperimentId::MeasuresVsTime => ExperimentConfig { time, pt, ..base },
            ExperimentId::ChannelConcurrenceP1 => ExperimentConfig {
                time,
                channels,
                state: Some(InputState::default()),
                ..base
            },
            _ => ExperimentConfig {
                time,
                pt,
                channels,
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let id = self.experiment;
        if id == ExperimentId::EigenSurface {
            let grid = self
                .eigen
                .as_ref()
                .ok_or_else(|| Error::Config("eigen-surface needs an [eigen] grid".into()))?;
            for axis in [grid.omega, grid.gamma, grid.phi] {
                axis.points()?;
            }
            if grid.gamma.points()?.iter().any(|&g| g < 0.0) {
                return Err(Error::Config("gamma must be non-negative".into()));
            }
            return Ok(());
        }
        let time = self
            .time
            .as_ref()
            .ok_or_else(|| Error::Config(format!("{id} needs a [time] grid")))?;
        time.validate()?;
        if id.uses_pt() {
            if self.pt.is_empty() {
                return Err(Error::Config(format!("{id} needs at least one [[pt]] set")));
            }
            for set in &self.pt {
                set.params()?;
            }
        }
        if id.uses_channels() {
            if self.channels.is_empty() && !self.include_noiseless {
                return Err(Error::Config(format!("{id} has nothing to run")));
            }
            for ch in &self.channels {
                let (a, b) = ch.specs()?;
                for spec in [a, b] {
                    if let ChannelSpec::PhaseDamping { eta } = spec {
                        if eta * time.stop > FRAC_PI_2 + PD_RANGE_SLACK {
                            return Err(Error::Config(format!(
                                "channel '{}': eta*t reaches {} > pi/2 on the time grid",
                                ch.label,
                                eta * time.stop
                            )));
                        }
                    }
                }
            }
        }
        if let Some(s) = self.state {
            QubitState::new(s.p, c(s.x_re, s.x_im))
                .map_err(|e| Error::Config(format!("input state: {e}")))?;
        }
        Ok(())
    }
}

/// `<dir>/<experiment>.toml`, where `dir` comes from the environment
/// variable [`CONFIG_DIR_ENV`] or falls back to `configs`.
pub fn default_config_path(id: ExperimentId) -> PathBuf {
    let dir = std::env::var_os(CONFIG_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CONFIG_DIR));
    dir.join(format!("{id}.toml"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub t: f64,
    pub label: String,
    pub q: Option<f64>,
    pub c: Option<f64>,
    pub n: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenRow {
    pub omega: f64,
    pub gamma: f64,
    pub phi: f64,
    pub e_plus: (f64, f64),
    pub e_minus: (f64, f64),
    pub label: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Table {
    Eigen(Vec<EigenRow>),
    Series { columns: Columns, rows: Vec<ResultRow> },
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidState(format!("{what} is not finite: {v}")))
    }
}

impl Table {
    pub fn header(&self) -> Vec<&'static str> {
        match self {
            Table::Eigen(_) => vec![
                "omega", "gamma", "phi", "re_e_plus", "im_e_plus", "re_e_minus", "im_e_minus", "label",
            ],
            Table::Series { columns, .. } => {
                let mut h = vec!["t", "label"];
                if columns.q {
                    h.push("Q");
                }
                if columns.c {
                    h.push("C");
                }
                if columns.n {
                    h.push("N");
                }
                h
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Table::Eigen(rows) => rows.len(),
            Table::Series { rows, .. } => rows.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn series(&self) -> &[ResultRow] {
        match self {
            Table::Series { rows, .. } => rows,
            Table::Eigen(_) => &[],
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header())?;
        match self {
            Table::Eigen(rows) => {
                for r in rows {
                    let mut rec: Vec<String> = [
                        r.omega,
                        r.gamma,
                        r.phi,
                        r.e_plus.0,
                        r.e_plus.1,
                        r.e_minus.0,
                        r.e_minus.1,
                    ]
                    .iter()
                    .map(|&v| format_float(v))
                    .collect();
                    rec.push(r.label.clone());
                    w.write_record(&rec)?;
                }
            }
            Table::Series { columns, rows } => {
                for r in rows {
                    let mut rec = vec![format_float(r.t), r.label.clone()];
                    for (on, v) in [(columns.q, r.q), (columns.c, r.c), (columns.n, r.n)] {
                        if on {
                            let v = v.ok_or_else(|| {
                                Error::InvalidState(format!("row at t={} misses a column", r.t))
                            })?;
                            rec.push(format_float(v));
                        }
                    }
                    w.write_record(&rec)?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn write_to_path(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }
}

pub fn run(cfg: &ExperimentConfig) -> Result<Table> {
    cfg.validate()?;
    match cfg.experiment {
        ExperimentId::EigenSurface => run_eigen_surface(cfg),
        ExperimentId::MeasuresVsTime => run_measures_vs_time(cfg),
        _ => run_channel_experiments(cfg),
    }
}

pub fn run_eigen_surface(cfg: &ExperimentConfig) -> Result<Table> {
    let grid = cfg
        .eigen
        .as_ref()
        .ok_or_else(|| Error::Config("eigen-surface needs an [eigen] grid".into()))?;
    let omegas = grid.omega.points()?;
    let gammas = grid.gamma.points()?;
    let phis = grid.phi.points()?;
    let mut points = Vec::with_capacity(omegas.len() * gammas.len() * phis.len());
    for &o in &omegas {
        for &g in &gammas {
            for &f in &phis {
                points.push((o, g, f));
            }
        }
    }
    let rows = points
        .par_iter()
        .map(|&(omega, gamma, phi)| {
            let p = PTParams::new(omega, phi, gamma)?;
            let (ep, em) = eigenvalues(&p);
            Ok(EigenRow {
                omega,
                gamma,
                phi,
                e_plus: (finite(ep.re, "eigenvalue")?, finite(ep.im, "eigenvalue")?),
                e_minus: (finite(em.re, "eigenvalue")?, finite(em.im, "eigenvalue")?),
                label: p.phase().to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::Eigen(rows))
}

fn time_points(cfg: &ExperimentConfig) -> Result<Vec<f64>> {
    cfg.time
        .as_ref()
        .map(TimeGrid::points)
        .ok_or_else(|| Error::Config(format!("{} needs a [time] grid", cfg.experiment)))
}

pub fn run_measures_vs_time(cfg: &ExperimentConfig) -> Result<Table> {
    let times = time_points(cfg)?;
    let mut rows = Vec::new();
    for set in &cfg.pt {
        let p = set.params()?;
        let series = times
            .par_iter()
            .map(|&t| {
                let out = bs_output(&qubit_state_at(&p, t)?)?;
                let m = measure_all(&out)?;
                Ok(ResultRow {
                    t,
                    label: set.label.clone(),
                    q: Some(finite(m.mid, "MID")?),
                    c: Some(finite(m.concurrence, "concurrence")?),
                    n: Some(finite(m.negativity, "negativity")?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.extend(series);
    }
    Ok(Table::Series {
        columns: Columns::ALL,
        rows,
    })
}

enum Input {
    Fixed(QubitState),
    Evolved(PTParams),
}

impl Input {
    fn at(&self, t: f64) -> Result<QubitState> {
        match self {
            Input::Fixed(q) => Ok(*q),
            Input::Evolved(p) => qubit_state_at(p, t),
        }
    }
}

/// Channel sweeps: every (input, channel) pair becomes one labelled series,
/// optionally preceded by the noiseless reference.
pub fn run_channel_experiments(cfg: &ExperimentConfig) -> Result<Table> {
    let id = cfg.experiment;
    let columns = id.columns();
    let times = time_points(cfg)?;

    let inputs: Vec<(Option<String>, Input)> = if id == ExperimentId::ChannelConcurrenceP1 {
        let s = cfg.state.unwrap_or_default();
        vec![(None, Input::Fixed(QubitState::new(s.p, c(s.x_re, s.x_im))?))]
    } else {
        cfg.pt
            .iter()
            .map(|set| Ok((Some(set.label.clone()), Input::Evolved(set.params()?))))
            .collect::<Result<_>>()?
    };

    let mut channels: Vec<(String, ChannelSpec, ChannelSpec)> = Vec::new();
    if cfg.include_noiseless {
        channels.push(("noiseless".into(), ChannelSpec::Identity, ChannelSpec::Identity));
    }
    for ch in &cfg.channels {
        let (a, b) = ch.specs()?;
        channels.push((ch.label.clone(), a, b));
    }

    let mut rows = Vec::new();
    for (prefix, input) in &inputs {
        for (name, spec_a, spec_b) in &channels {
            let label = match prefix {
                Some(p) => format!("{p}/{name}"),
                None => name.clone(),
            };
            let series = times
                .par_iter()
                .map(|&t| {
                    let out = bs_output(&input.at(t)?)?;
                    let noisy = apply_two_arm(spec_a, spec_b, t, t, &out)?;
                    let q = if columns.q { Some(finite(mid(&noisy)?, "MID")?) } else { None };
                    let c = if columns.c {
                        Some(finite(concurrence(&noisy)?, "concurrence")?)
                    } else {
                        None
                    };
                    let n = if columns.n {
                        Some(finite(negativity(&noisy)?, "negativity")?)
                    } else {
                        None
                    };
                    Ok(ResultRow {
                        t,
                        label: label.clone(),
                        q,
                        c,
                        n,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.extend(series);
        }
    }
    Ok(Table::Series { columns, rows })
}

/// Mean of each measure per label, in first-appearance order.
pub fn time_averages(rows: &[ResultRow]) -> Vec<(String, [Option<f64>; 3])> {
    let mut out: Vec<(String, [f64; 3], [usize; 3])> = Vec::new();
    for r in rows {
        let idx = match out.iter().position(|(l, _, _)| *l == r.label) {
            Some(i) => i,
            None => {
                out.push((r.label.clone(), [0.0; 3], [0; 3]));
                out.len() - 1
            }
        };
        for (k, v) in [r.q, r.c, r.n].into_iter().enumerate() {
            if let Some(v) = v {
                out[idx].1[k] += v;
                out[idx].2[k] += 1;
            }
        }
    }
    out.into_iter()
        .map(|(l, sum, cnt)| {
            let mean = |k: usize| (cnt[k] > 0).then(|| sum[k] / cnt[k] as f64);
            (l, [mean(0), mean(1), mean(2)])
        })
        .collect()
}
