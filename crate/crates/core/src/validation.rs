//! Analytic-versus-numeric cross-checks bundled as a report, for the
//! `validate` command. Every randomized check draws from a fixed seed.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::beamsplitter::{bs_conjugate, bs_output, bs_unitary, QubitState};
use crate::channels::{
    apply_kraus_two_arm, concurrence_analytic, kraus_at, memory_kernel, ChannelSpec, KrausPair,
};
use crate::cxmat::{c, eig_hermitian, ComplexMatrix, C64, ONE, ZERO};
use crate::error::Result;
use crate::experiment::{run, time_averages, ExperimentConfig, ExperimentId, ResultRow};
use crate::measures::{concurrence, mid, negativity, negativity_trace_norm};
use crate::ptqubit::{eigenvalues, h_eff, propagator, propagator_with, PTParams, PhaseLabel, PropagatorBranch};
use crate::sampling::{random_density_matrix, random_ket, random_qubit_state};
use crate::schmidt::{
    pd_bell_diagonal_concurrence, schmidt_decompose, singular_values, singular_values_numeric,
    AmplitudeMatrix,
};
use crate::TwoModeState;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Deliberate defects, used to confirm that the checks can fail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Fault {
    /// Adds `ε` to the `|01><10|` entry of the beam-splitter unitary.
    PerturbedBeamSplitter(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidationOptions {
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} max_dev={:.3e} tol={:.0e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.max_deviation,
            self.tolerance
        )?;
        if !self.detail.is_empty() {
            write!(f, "  {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn check(name: &'static str, max_deviation: f64, tolerance: f64, detail: String) -> Check {
    Check {
        name,
        passed: max_deviation <= tolerance,
        max_deviation,
        tolerance,
        detail,
    }
}

/// A check whose body errored counts as failed.
fn guarded(name: &'static str, tolerance: f64, body: impl FnOnce() -> Result<Check>) -> Check {
    body().unwrap_or_else(|e| Check {
        name,
        passed: false,
        max_deviation: f64::INFINITY,
        tolerance,
        detail: format!("error: {e}"),
    })
}

pub fn run_validation(opts: &ValidationOptions) -> ValidationReport {
    let seed = opts.seed;
    let mut checks = vec![
        guarded("noiseless-concurrence", 1e-9, || noiseless_concurrence(seed)),
        guarded("channel-analytic", 1e-8, || channel_analytic(seed)),
        guarded("beam-splitter-conjugation", 1e-12, || bs_conjugation(seed, opts.fault)),
        guarded("pt-spectrum", 1e-10, || pt_spectrum(seed)),
        guarded("pt-exceptional-branch", 1e-8, || pt_exceptional(seed)),
        guarded("kraus-trace-psd", 1e-10, || kraus_trace_psd(seed)),
        guarded("rtn-regimes", 1e-6, || rtn_regimes(seed)),
        guarded("pts-enhancement", 0.0, pts_enhancement),
    ];
    checks.extend(noise_degrades());
    checks.push(guarded("schmidt", 1e-9, || schmidt(seed)));
    checks.push(guarded("negativity-dual-form", 1e-10, || negativity_forms(seed)));
    ValidationReport { checks }
}

fn noiseless_concurrence(seed: u64) -> Result<Check> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let q = random_qubit_state(&mut rng);
        worst = worst.max((concurrence(&bs_output(&q)?)? - q.p).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    let mut c = check("noiseless-concurrence", worst, 1e-9, format!("1000 states in {secs:.2}s"));
    c.passed &= secs < 5.0;
    Ok(c)
}

/// Random rates for one channel kind, arms drawn independently.
fn random_channel_pair(rng: &mut ChaCha8Rng, kind: usize) -> Result<(ChannelSpec, ChannelSpec, f64, f64)> {
    let spec = |rng: &mut ChaCha8Rng| -> Result<ChannelSpec> {
        match kind {
            0 => ChannelSpec::rtn(rng.gen_range(0.0..2.0), rng.gen_range(0.01..2.0)),
            1 => ChannelSpec::phase_damping(rng.gen_range(0.01..1.0)),
            _ => ChannelSpec::amplitude_damping(rng.gen_range(0.0..2.0)),
        }
    };
    let a = spec(rng)?;
    let b = spec(rng)?;
    let ta = rng.gen_range(0.0..a.max_time().min(10.0));
    let tb = rng.gen_range(0.0..b.max_time().min(10.0));
    Ok((a, b, ta, tb))
}

fn channel_analytic(seed: u64) -> Result<Check> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2);
    let mut worst = [0.0f64; 3];
    let mut negative_products = 0;
    for (kind, w) in worst.iter_mut().enumerate() {
        for _ in 0..500 {
            let q = random_qubit_state(&mut rng);
            let (a, b, ta, tb) = random_channel_pair(&mut rng, kind)?;
            let noisy = apply_kraus_two_arm(&kraus_at(&a, ta)?, &kraus_at(&b, tb)?, &bs_output(&q)?)?;
            let want = concurrence_analytic(&q, &a, &b, ta, tb)?;
            *w = w.max((concurrence(&noisy)? - want).abs());
            if kind == 0 && a.parameter_at(ta)? * b.parameter_at(tb)? < 0.0 {
                negative_products += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let mut c = check(
        "channel-analytic",
        worst.iter().copied().fold(0.0, f64::max),
        1e-8,
        format!(
            "rtn {:.1e} pd {:.1e} ad {:.1e}; {negative_products} rtn cases with Λ1Λ2 < 0; {secs:.2}s",
            worst[0], worst[1], worst[2]
        ),
    );
    c.passed &= secs < 30.0;
    Ok(c)
}

fn bs_conjugation(seed: u64, fault: Option<Fault>) -> Result<Check> {
    let mut u = bs_unitary();
    if let Some(Fault::PerturbedBeamSplitter(eps)) = fault {
        let mut data = u.entries().to_vec();
        // row |01>, column |10>
        data[6] += eps;
        u = ComplexMatrix::new(4, data)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let q = random_qubit_state(&mut rng);
        worst = worst.max(bs_conjugate(&u, &q)?.max_abs_diff(bs_output(&q)?.rho()));
    }
    let detail = match fault {
        Some(f) => format!("1000 inputs, injected {f:?}"),
        None => "1000 inputs".into(),
    };
    Ok(check("beam-splitter-conjugation", worst, 1e-12, detail))
}

fn pt_spectrum(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4);
    let mut root = 0.0f64;
    let mut unitarity = 0.0f64;
    let mut misclassified = 0;
    for _ in 0..1000 {
        let p = PTParams::new(
            rng.gen_range(0.0..3.0),
            rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
            rng.gen_range(0.0..3.0),
        )?;
        let h = h_eff(&p);
        let (ep, em) = eigenvalues(&p);
        for e in [ep, em] {
            let det = (h[(0, 0)] - e) * (h[(1, 1)] - e) - h[(0, 1)] * h[(1, 0)];
            root = root.max(det.norm());
        }
        let gap = p.j() - p.gamma;
        let label = p.phase();
        if gap.abs() > 1e-6 {
            let want = if gap > 0.0 { PhaseLabel::Pts } else { PhaseLabel::Ptsb };
            if label != want {
                misclassified += 1;
            }
        }

        let herm = PTParams::new(p.omega_eff, p.phi, 0.0)?;
        let u = propagator(&herm, rng.gen_range(0.0..10.0))?;
        let uu = &u * &u.adjoint();
        unitarity = unitarity.max(uu.max_abs_diff(&ComplexMatrix::identity(2)?));
    }
    let mut c = check(
        "pt-spectrum",
        root.max(unitarity),
        1e-10,
        format!("det residual {root:.1e}, unitarity {unitarity:.1e}, {misclassified} misclassified"),
    );
    c.passed &= misclassified == 0;
    Ok(c)
}

fn pt_exceptional(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5);
    let mut worst = 0.0f64;
    for k in 0..400 {
        let w = 10f64.powf(rng.gen_range(-6.0..-3.0));
        let j = if k % 2 == 0 { (1.0 - w * w).sqrt() } else { (1.0 + w * w).sqrt() };
        let p = PTParams::new(1.0 - j, 0.0, 1.0)?;
        let t = rng.gen_range(0.0..5.0);
        let s = propagator_with(&p, t, PropagatorBranch::Series)?;
        let d = propagator_with(&p, t, PropagatorBranch::Direct)?;
        worst = worst.max(s.max_abs_diff(&d));
    }
    Ok(check("pt-exceptional-branch", worst, 1e-8, "400 points, |ω| in [1e-6, 1e-3]".into()))
}

fn kraus_trace_psd(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6);
    let mut completeness = 0.0f64;
    let mut trace = 0.0f64;
    let mut negative = 0.0f64;
    for i in 0..600 {
        let (a, b, ta, tb) = random_channel_pair(&mut rng, i % 3)?;
        let ka = kraus_at(&a, ta)?;
        let kb = kraus_at(&b, tb)?;
        completeness = completeness.max(ka.completeness_error()).max(kb.completeness_error());
        let rho = TwoModeState::new(random_density_matrix(&mut rng, 4))?;
        let out = apply_kraus_two_arm(&ka, &kb, &rho)?;
        trace = trace.max((out.rho().trace() - ONE).norm());
        let min = eig_hermitian(out.rho())?.values[3];
        negative = negative.max(-min);
    }
    Ok(check(
        "kraus-trace-psd",
        completeness.max(trace).max(negative),
        1e-10,
        format!("completeness {completeness:.1e}, trace {trace:.1e}, negativity of spectrum {negative:.1e}"),
    ))
}

fn rtn_regimes(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7);
    let mut slope = 0.0f64;
    let mut at_zero = 0.0f64;
    let mut regime_failures = 0;
    for k in 0..200 {
        let g = rng.gen_range(0.05..2.0);
        // 4aτ = 2a/γ̃
        let ratio = if k % 2 == 0 {
            rng.gen_range(1.0..10.0)
        } else {
            rng.gen_range(0.0..1.0)
        };
        let a = ratio * g / 2.0;
        let stop = 20.0 / g;
        let values: Vec<f64> = (0..=4000).map(|i| memory_kernel(a, g, stop * i as f64 / 4000.0)).collect();
        let ok = if ratio > 1.0 {
            values.iter().any(|&v| v < 0.0)
        } else if ratio < 1.0 {
            values.iter().all(|&v| v > 0.0 && v <= 1.0)
        } else {
            true
        };
        if !ok {
            regime_failures += 1;
        }
        at_zero = at_zero.max((memory_kernel(a, g, 0.0) - 1.0).abs());
        let h = 1e-4 / (a + g);
        let d = (-3.0 * memory_kernel(a, g, 0.0) + 4.0 * memory_kernel(a, g, h) - memory_kernel(a, g, 2.0 * h))
            / (2.0 * h);
        slope = slope.max(d.abs());
    }
    let mut c = check(
        "rtn-regimes",
        slope.max(at_zero),
        1e-6,
        format!("|Λ'(0)| {slope:.1e}, |Λ(0)-1| {at_zero:.1e}, {regime_failures} regime failures"),
    );
    c.passed &= regime_failures == 0;
    Ok(c)
}

fn pts_enhancement() -> Result<Check> {
    let table = run(&ExperimentConfig::builtin(ExperimentId::MeasuresVsTime))?;
    let avg = time_averages(table.series());
    let find = |l: &str| avg.iter().find(|(k, _)| k == l).map(|(_, v)| *v);
    let (Some(pts), Some(ptsb)) = (find("PTS"), find("PTSB")) else {
        return Ok(check("pts-enhancement", f64::INFINITY, 0.0, "missing PTS or PTSB series".into()));
    };
    let mut margin = f64::INFINITY;
    for k in 0..3 {
        margin = margin.min(pts[k].unwrap_or(0.0) - ptsb[k].unwrap_or(0.0));
    }
    let fmt = |v: [Option<f64>; 3]| format!("{:.4}/{:.4}/{:.4}", v[0].unwrap_or(f64::NAN), v[1].unwrap_or(f64::NAN), v[2].unwrap_or(f64::NAN));
    Ok(Check {
        name: "pts-enhancement",
        passed: margin > 0.0,
        max_deviation: (-margin).max(0.0),
        tolerance: 0.0,
        detail: format!("mean Q/C/N: PTS {} vs PTSB {}", fmt(pts), fmt(ptsb)),
    })
}

/// Largest `noisy - noiseless` per measure, with its location.
fn excess_over_noiseless(rows: &[ResultRow], pick: impl Fn(&ResultRow) -> Option<f64>) -> (f64, String, usize) {
    let mut worst = (f64::NEG_INFINITY, String::new(), 0);
    for r in rows {
        let Some((prefix, channel)) = r.label.split_once('/') else { continue };
        if channel == "noiseless" {
            continue;
        }
        let base_label = format!("{prefix}/noiseless");
        let Some(base) = rows.iter().find(|b| b.label == base_label && b.t == r.t) else { continue };
        if let (Some(x), Some(y)) = (pick(r), pick(base)) {
            let d = x - y;
            if d > 1e-9 {
                worst.2 += 1;
            }
            if d > worst.0 {
                worst.0 = d;
                worst.1 = format!("{} at t={}", r.label, r.t);
            }
        }
    }
    worst
}

type Column = fn(&ResultRow) -> Option<f64>;

fn noise_degrades() -> Vec<Check> {
    let cases: [(&'static str, ExperimentId, Column); 3] = [
        ("noise-degrades-mid", ExperimentId::MidUnderNoise, |r| r.q),
        ("noise-degrades-concurrence", ExperimentId::ConcurrenceUnderNoise, |r| r.c),
        ("noise-degrades-negativity", ExperimentId::NegativityUnderNoise, |r| r.n),
    ];
    cases
        .into_iter()
        .map(|(name, id, pick)| {
            guarded(name, 1e-9, || {
                let table = run(&ExperimentConfig::builtin(id))?;
                let (excess, at, count) = excess_over_noiseless(table.series(), pick);
                let detail = if count > 0 {
                    format!("{count} grid points above noiseless, worst {at}")
                } else {
                    format!("largest excess at {at}")
                };
                Ok(check(name, excess.max(0.0), 1e-9, detail))
            })
        })
        .collect()
}

fn schmidt(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9);
    let mut sv = 0.0f64;
    for _ in 0..1000 {
        let m = AmplitudeMatrix::from_ket(&random_ket(&mut rng, 4))?;
        let (p, q) = singular_values(&m);
        let (pn, qn) = singular_values_numeric(&m)?;
        sv = sv.max((p - pn).abs()).max((q - qn).abs());
    }
    let half = c(0.5, 0.0);
    let flat = schmidt_decompose(&AmplitudeMatrix::new(half, half, half, half)?)?;
    let canonical = flat.canonical_ket();
    let example = (flat.alpha - 1.0)
        .abs()
        .max(canonical.iter().zip([ZERO, ONE, ZERO, ZERO]).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max));

    let p1 = bs_output(&QubitState::new(1.0, ZERO)?)?;
    let mut bell = 0.0f64;
    for i in 0..20 {
        for j in 0..20 {
            let (l1, l2) = (i as f64 / 19.0, j as f64 / 19.0);
            let noisy = apply_kraus_two_arm(
                &KrausPair::phase_damping(l1),
                &KrausPair::phase_damping(l2),
                &p1,
            )?;
            bell = bell.max((concurrence(&noisy)? - pd_bell_diagonal_concurrence(l1, l2)?).abs());
        }
    }
    let mut c = check(
        "schmidt",
        bell,
        1e-9,
        format!("singular values {sv:.1e} (tol 1e-10), flat example {example:.1e}, Bell-diagonal grid {bell:.1e}"),
    );
    c.passed &= sv <= 1e-10 && example <= 1e-10;
    Ok(c)
}

fn negativity_forms(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let rho = TwoModeState::new(random_density_matrix(&mut rng, 4))?;
        worst = worst.max((negativity(&rho)? - negativity_trace_norm(&rho)?).abs());
    }
    let bell = bs_output(&QubitState::new(1.0, C64::new(0.0, 0.0))?)?;
    let n = negativity(&bell)?;
    let q = mid(&bell)?;
    let bell_dev = (n - 0.5).abs().max((q - 1.0).abs());
    Ok(check(
        "negativity-dual-form",
        worst.max(bell_dev),
        1e-10,
        format!("dual forms {worst:.1e}; p = 1 output N = {n:.12}, Q = {q:.12}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injected_fault_is_caught() {
        let clean = bs_conjugation(DEFAULT_SEED, None).unwrap();
        assert!(clean.passed, "{clean}");
        let broken = bs_conjugation(DEFAULT_SEED, Some(Fault::PerturbedBeamSplitter(1e-6))).unwrap();
        assert!(!broken.passed, "{broken}");
        assert!(broken.max_deviation > 1e-8);
    }

    #[test]
    fn pipeline_deviation_is_reported_below_1e8() {
        let c = channel_analytic(DEFAULT_SEED).unwrap();
        assert!(c.passed && c.max_deviation < 1e-8, "{c}");
    }

    #[test]
    fn errors_become_failed_checks() {
        let c = guarded("boom", 1.0, || Err(crate::Error::NonFinite));
        assert!(!c.passed);
        assert!(c.detail.starts_with("error"));
    }
}
