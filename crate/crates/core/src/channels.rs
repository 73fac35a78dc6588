//! Random telegraph noise (RTN), phase damping (PD) and amplitude damping
//! (AD) acting locally on each output arm of the beam splitter.
//!
//! The RTN switching rate is written `γ̃` (`switching_rate`) to keep it apart
//! from the PT gain/loss rate; it relates to the correlation time by
//! `γ̃ = 1/(2τ)`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::beamsplitter::{QubitState, TwoModeState};
use crate::cxmat::{c, r, tensor, ComplexMatrix, C64, DEFAULT_TOL, ONE, ZERO};
use crate::error::{Error, Result};

const KERNEL_SERIES_THRESHOLD: f64 = 1e-6;

/// PD time grids may overshoot `ηt = π/2` by this much (rounding only).
pub const PD_RANGE_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChannelSpec {
    /// Noiseless arm.
    Identity,
    Rtn { coupling: f64, switching_rate: f64 },
    PhaseDamping { eta: f64 },
    AmplitudeDamping { chi: f64 },
}

fn check_rate(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "{name} must be finite and non-negative, got {v}"
        )));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "time must be finite and non-negative, got {t}"
        )));
    }
    Ok(())
}

impl ChannelSpec {
    pub fn rtn(coupling: f64, switching_rate: f64) -> Result<Self> {
        check_rate("RTN coupling a", coupling)?;
        check_rate("RTN switching rate", switching_rate)?;
        Ok(ChannelSpec::Rtn {
            coupling,
            switching_rate,
        })
    }

    /// RTN from the correlation time `τ`, i.e. `γ̃ = 1/(2τ)`.
    pub fn rtn_from_tau(coupling: f64, tau: f64) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
        }
        Self::rtn(coupling, 1.0 / (2.0 * tau))
    }

    pub fn phase_damping(eta: f64) -> Result<Self> {
        check_rate("PD rate eta", eta)?;
        Ok(ChannelSpec::PhaseDamping { eta })
    }

    pub fn amplitude_damping(chi: f64) -> Result<Self> {
        check_rate("AD rate chi", chi)?;
        Ok(ChannelSpec::AmplitudeDamping { chi })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ChannelSpec::Identity => Ok(()),
            ChannelSpec::Rtn {
                coupling,
                switching_rate,
            } => Self::rtn(coupling, switching_rate).map(|_| ()),
            ChannelSpec::PhaseDamping { eta } => check_rate("PD rate eta", eta),
            ChannelSpec::AmplitudeDamping { chi } => check_rate("AD rate chi", chi),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ChannelSpec::Identity => "identity",
            ChannelSpec::Rtn { .. } => "rtn",
            ChannelSpec::PhaseDamping { .. } => "pd",
            ChannelSpec::AmplitudeDamping { .. } => "ad",
        }
    }

    fn same_kind(&self, other: &Self) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }

    /// RTN correlation time `τ = 1/(2γ̃)`.
    pub fn tau(&self) -> Option<f64> {
        match *self {
            ChannelSpec::Rtn { switching_rate, .. } => Some(1.0 / (2.0 * switching_rate)),
            _ => None,
        }
    }

    /// `4aτ > 1`, equivalently `2a > γ̃`. `None` for non-RTN channels.
    pub fn is_non_markovian(&self) -> Option<bool> {
        match *self {
            ChannelSpec::Rtn {
                coupling,
                switching_rate,
            } => Some(2.0 * coupling > switching_rate),
            _ => None,
        }
    }

    /// Largest time for which the channel is defined (`π/(2η)` for PD).
    pub fn max_time(&self) -> f64 {
        match *self {
            ChannelSpec::PhaseDamping { eta } if eta > 0.0 => FRAC_PI_2 / eta,
            _ => f64::INFINITY,
        }
    }

    /// The scalar that fixes the Kraus pair at time `t`: the memory kernel
    /// `Λ(t)` for RTN, `λ = 1 - cos²(ηt)` for PD, `γ = 1 - e^{-χt}` for AD
    /// and 1 for the identity (read as `Λ = 1`).
    pub fn parameter_at(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        match *self {
            ChannelSpec::Identity => Ok(1.0),
            ChannelSpec::Rtn {
                coupling,
                switching_rate,
            } => Ok(memory_kernel(coupling, switching_rate, t)),
            ChannelSpec::PhaseDamping { eta } => {
                let et = eta * t;
                if et > FRAC_PI_2 + PD_RANGE_SLACK {
                    return Err(Error::InvalidParameter(format!(
                        "phase damping requires eta*t <= pi/2, got {et}"
                    )));
                }
                let cs = et.min(FRAC_PI_2).cos();
                Ok(1.0 - cs * cs)
            }
            ChannelSpec::AmplitudeDamping { chi } => Ok(-(-chi * t).exp_m1()),
        }
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ChannelSpec::Identity => write!(f, "identity"),
            ChannelSpec::Rtn {
                coupling,
                switching_rate,
            } => write!(f, "rtn(a={coupling}, switching_rate={switching_rate})"),
            ChannelSpec::PhaseDamping { eta } => write!(f, "pd(eta={eta})"),
            ChannelSpec::AmplitudeDamping { chi } => write!(f, "ad(chi={chi})"),
        }
    }
}

/// RTN memory kernel
/// `Λ(t) = e^{-γ̃t} (cos(μγ̃t) + sin(μγ̃t)/μ)`, `μ = sqrt((2a/γ̃)² - 1)`.
///
/// Evaluated through `ν = μγ̃ = sqrt(4a² - γ̃²)` (complex, principal branch)
/// as `Re[((1 + γ̃/(iν)) e^{(-γ̃+iν)t} + (1 - γ̃/(iν)) e^{(-γ̃-iν)t}) / 2]`.
/// Because `|Im ν| <= γ̃`, neither exponential grows, so the Markovian
/// (imaginary `ν`) branch cannot overflow.
pub fn memory_kernel(coupling: f64, switching_rate: f64, t: f64) -> f64 {
    let g = switching_rate;
    let nu = c(4.0 * coupling * coupling - g * g, 0.0).sqrt();
    let nut = nu * t;
    if nut.norm() < KERNEL_SERIES_THRESHOLD {
        let nut2 = (nut * nut).re;
        return (-g * t).exp() * ((1.0 - nut2 / 2.0) + g * t * (1.0 - nut2 / 6.0));
    }
    let i_nu = C64::i() * nu;
    let up = ((i_nu - g) * t).exp();
    let down = ((-i_nu - g) * t).exp();
    let ratio = g / i_nu;
    (((ONE + ratio) * up + (ONE - ratio) * down) * 0.5).re
}

/// `Λ(t)` for an RTN spec.
pub fn rtn_kernel(spec: &ChannelSpec, t: f64) -> Result<f64> {
    match spec {
        ChannelSpec::Rtn { .. } => spec.parameter_at(t),
        other => Err(Error::InvalidParameter(format!(
            "memory kernel needs an RTN channel, got {}",
            other.kind_name()
        ))),
    }
}

/// Two-element Kraus family `{K0, K1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausPair {
    pub k0: ComplexMatrix,
    pub k1: ComplexMatrix,
}

impl KrausPair {
    pub fn identity() -> Self {
        Self {
            k0: ComplexMatrix::identity(2).expect("2x2"),
            k1: ComplexMatrix::zeros(2).expect("2x2"),
        }
    }

    /// `K0 = sqrt((1+Λ)/2) I`, `K1 = sqrt((1-Λ)/2) σ_z`.
    pub fn rtn(kernel: f64) -> Self {
        let l = kernel.clamp(-1.0, 1.0);
        let a = ((1.0 + l) / 2.0).sqrt();
        let b = ((1.0 - l) / 2.0).sqrt();
        Self {
            k0: ComplexMatrix::from_rows([[r(a), ZERO], [ZERO, r(a)]]),
            k1: ComplexMatrix::from_rows([[r(b), ZERO], [ZERO, r(-b)]]),
        }
    }

    /// `K0 = diag(1, sqrt(1-λ))`, `K1 = diag(0, sqrt(λ))`.
    pub fn phase_damping(lambda: f64) -> Self {
        let l = lambda.clamp(0.0, 1.0);
        Self {
            k0: ComplexMatrix::from_rows([[ONE, ZERO], [ZERO, r((1.0 - l).sqrt())]]),
            k1: ComplexMatrix::from_rows([[ZERO, ZERO], [ZERO, r(l.sqrt())]]),
        }
    }

    /// `K0 = diag(1, sqrt(1-γ))`, `K1 = sqrt(γ) |0><1|`.
    pub fn amplitude_damping(gamma: f64) -> Self {
        let g = gamma.clamp(0.0, 1.0);
        Self {
            k0: ComplexMatrix::from_rows([[ONE, ZERO], [ZERO, r((1.0 - g).sqrt())]]),
            k1: ComplexMatrix::from_rows([[ZERO, r(g.sqrt())], [ZERO, ZERO]]),
        }
    }

    pub fn operators(&self) -> [&ComplexMatrix; 2] {
        [&self.k0, &self.k1]
    }

    /// `max |K0†K0 + K1†K1 - I|`.
    pub fn completeness_error(&self) -> f64 {
        let sum = &(&self.k0.adjoint() * &self.k0) + &(&self.k1.adjoint() * &self.k1);
        sum.max_abs_diff(&ComplexMatrix::identity(2).expect("2x2"))
    }
}

pub fn kraus_at(spec: &ChannelSpec, t: f64) -> Result<KrausPair> {
    spec.validate()?;
    let q = spec.parameter_at(t)?;
    Ok(match spec {
        ChannelSpec::Identity => KrausPair::identity(),
        ChannelSpec::Rtn { .. } => KrausPair::rtn(q),
        ChannelSpec::PhaseDamping { .. } => KrausPair::phase_damping(q),
        ChannelSpec::AmplitudeDamping { .. } => KrausPair::amplitude_damping(q),
    })
}

fn check_qubit_density(rho: &ComplexMatrix) -> Result<()> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: rho.dim(),
        });
    }
    if !rho.is_density_matrix(DEFAULT_TOL) {
        return Err(Error::InvalidState(
            "qubit input is not a density matrix".into(),
        ));
    }
    Ok(())
}

pub fn apply_kraus_qubit(k: &KrausPair, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_qubit_density(rho)?;
    let out = &rho.conjugate_by(&k.k0) + &rho.conjugate_by(&k.k1);
    Ok(out.hermitian_part())
}

pub fn apply_qubit(spec: &ChannelSpec, t: f64, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    apply_kraus_qubit(&kraus_at(spec, t)?, rho)
}

/// `Σ_ij (K_i ⊗ L_j) ρ (K_i ⊗ L_j)†`.
pub fn apply_kraus_two_arm(
    arm_a: &KrausPair,
    arm_b: &KrausPair,
    state: &TwoModeState,
) -> Result<TwoModeState> {
    let rho = state.rho();
    let mut out = ComplexMatrix::zeros(4)?;
    for ka in arm_a.operators() {
        for kb in arm_b.operators() {
            let k = tensor(ka, kb)?;
            out = &out + &rho.conjugate_by(&k);
        }
    }
    TwoModeState::new(out)
}

pub fn apply_two_arm(
    spec_a: &ChannelSpec,
    spec_b: &ChannelSpec,
    t_a: f64,
    t_b: f64,
    state: &TwoModeState,
) -> Result<TwoModeState> {
    apply_kraus_two_arm(&kraus_at(spec_a, t_a)?, &kraus_at(spec_b, t_b)?, state)
}

/// Closed-form concurrence of the beam-splitter output after identical
/// channel kinds on both arms:
///
/// | channel   | concurrence              |
/// |-----------|--------------------------|
/// | noiseless | `p`                      |
/// | RTN       | `p |Λ1 Λ2|`              |
/// | PD        | `p sqrt((1-λ1)(1-λ2))`   |
/// | AD        | `p sqrt((1-γ1)(1-γ2))`   |
///
/// The RTN row takes the modulus: the channels only rescale the
/// `|01><10|` coherence and never populate `|11>`, so the Wootters value is
/// `2|ρ_{01,10}|`. It coincides with `p Λ1 Λ2` while the kernel product is
/// non-negative.
pub fn concurrence_analytic(
    q: &QubitState,
    spec_a: &ChannelSpec,
    spec_b: &ChannelSpec,
    t_a: f64,
    t_b: f64,
) -> Result<f64> {
    let q = QubitState::new(q.p, q.x)?;
    if !spec_a.same_kind(spec_b) {
        return Err(Error::MixedChannelKinds(
            spec_a.kind_name(),
            spec_b.kind_name(),
        ));
    }
    spec_a.validate()?;
    spec_b.validate()?;
    let qa = spec_a.parameter_at(t_a)?;
    let qb = spec_b.parameter_at(t_b)?;
    let factor = match spec_a {
        ChannelSpec::Identity => 1.0,
        ChannelSpec::Rtn { .. } => (qa * qb).abs(),
        ChannelSpec::PhaseDamping { .. } | ChannelSpec::AmplitudeDamping { .. } => {
            ((1.0 - qa) * (1.0 - qb)).max(0.0).sqrt()
        }
    };
    Ok(q.p * factor)
}

/// Product of the two RTN memory kernels, the `p = 1` concurrence while the
/// product stays non-negative (its modulus otherwise).
pub fn concurrence_rtn_p1(spec_1: &ChannelSpec, spec_2: &ChannelSpec, t: f64) -> Result<f64> {
    Ok(rtn_kernel(spec_1, t)? * rtn_kernel(spec_2, t)?)
}
