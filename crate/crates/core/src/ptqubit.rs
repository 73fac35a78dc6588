//! Effective PT-symmetric two-level system.
//!
//! The generator in the basis `{|1>, |3>}` is
//!
//! ```text
//! H = [[ iγ,           1 - Ω e^{iφ} ],
//!      [ 1 - Ω e^{-iφ}, -iγ          ]]
//! ```
//!
//! with spectrum `±ω`, `ω = sqrt(J² - γ²)`, `J = |1 - Ω e^{iφ}|`. The same
//! complex `ω` drives the trigonometric (PTS), hyperbolic (PTSB) and
//! degenerate (exceptional) regimes; only the exact `ω t → 0` limit needs a
//! separate series form.

use std::fmt;

use crate::beamsplitter::QubitState;
use crate::cxmat::{c, ComplexMatrix, C64, I, ONE, ZERO};
use crate::error::{Error, Result};

/// Tolerance on `|J - γ|` below which a point is labelled exceptional.
pub const PHASE_TOL: f64 = 1e-9;

/// Below this `|ω t|` the propagator uses its Taylor form.
pub const SERIES_THRESHOLD: f64 = 1e-6;

const NORM_FLOOR: f64 = 1e-14;

/// Parameters of the three-level Λ system in the rotating frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThreeLevelParams {
    pub delta1: f64,
    pub delta2: f64,
    pub g: f64,
    pub big_g: f64,
    /// RF coupling strength Ω′.
    pub omega_rf: f64,
    pub phi: f64,
}

fn nearly_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Dimensionless coupling `Δ Ω′ / G²` of the reduced two-level model. The
/// reduction assumes equal detunings and equal Rabi frequencies.
pub fn effective_coupling(tl: &ThreeLevelParams) -> Result<f64> {
    if !nearly_equal(tl.delta1, tl.delta2) {
        return Err(Error::InvalidParameter(format!(
            "detunings must be equal (got {} and {})",
            tl.delta1, tl.delta2
        )));
    }
    if !nearly_equal(tl.g, tl.big_g) {
        return Err(Error::InvalidParameter(format!(
            "Rabi frequencies must be equal (got g = {}, G = {})",
            tl.g, tl.big_g
        )));
    }
    if tl.big_g == 0.0 {
        return Err(Error::InvalidParameter("G must be non-zero".into()));
    }
    Ok(tl.delta1 * tl.omega_rf / (tl.big_g * tl.big_g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseLabel {
    Pts,
    Ptsb,
    Exceptional,
}

impl PhaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseLabel::Pts => "PTS",
            PhaseLabel::Ptsb => "PTSB",
            PhaseLabel::Exceptional => "EXCEPTIONAL",
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(Ω, φ, γ)` of the effective Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PTParams {
    pub omega_eff: f64,
    pub phi: f64,
    pub gamma: f64,
}

impl PTParams {
    pub fn new(omega_eff: f64, phi: f64, gamma: f64) -> Result<Self> {
        if !(omega_eff.is_finite() && phi.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidParameter(
                "PT parameters must be finite".into(),
            ));
        }
        if gamma < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gain/loss rate must be non-negative, got {gamma}"
            )));
        }
        Ok(Self {
            omega_eff,
            phi,
            gamma,
        })
    }

    /// `1 - Ω e^{iφ}`, the off-diagonal element `<1|H|3>`.
    pub fn coupling(&self) -> C64 {
        ONE - C64::from_polar(self.omega_eff, self.phi)
    }

    /// `J = |1 - Ω e^{iφ}|`.
    pub fn j(&self) -> f64 {
        self.coupling().norm()
    }

    /// Principal square root of `J² - γ²`.
    pub fn omega(&self) -> C64 {
        let j = self.j();
        c((j - self.gamma) * (j + self.gamma), 0.0).sqrt()
    }

    pub fn phase(&self) -> PhaseLabel {
        self.phase_with_tol(PHASE_TOL)
    }

    pub fn phase_with_tol(&self, tol: f64) -> PhaseLabel {
        let gap = self.j() - self.gamma;
        if gap > tol {
            PhaseLabel::Pts
        } else if gap < -tol {
            PhaseLabel::Ptsb
        } else {
            PhaseLabel::Exceptional
        }
    }
}

pub fn h_eff(p: &PTParams) -> ComplexMatrix {
    let k = p.coupling();
    ComplexMatrix::from_rows([[I * p.gamma, k], [k.conj(), -I * p.gamma]])
}

/// `(E+, E-) = (ω, -ω)`.
pub fn eigenvalues(p: &PTParams) -> (C64, C64) {
    let w = p.omega();
    (w, -w)
}

/// How the propagator evaluates `cos(ωt)` and `sin(ωt)/ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropagatorBranch {
    /// Series form when `|ωt| < SERIES_THRESHOLD`, complex trig otherwise.
    Auto,
    /// `cos ≈ 1 - (ωt)²/2`, `sin(ωt)/ω ≈ t (1 - (ωt)²/6)`.
    Series,
    /// Complex trigonometric functions, no guard.
    Direct,
}

/// `exp(-i H t)` written as `cos(ωt) I - i H sin(ωt)/ω`.
pub fn propagator(p: &PTParams, t: f64) -> Result<ComplexMatrix> {
    propagator_with(p, t, PropagatorBranch::Auto)
}

pub fn propagator_with(p: &PTParams, t: f64, branch: PropagatorBranch) -> Result<ComplexMatrix> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "time must be finite and non-negative, got {t}"
        )));
    }
    let w = p.omega();
    let wt = w * t;
    let use_series = match branch {
        PropagatorBranch::Auto => wt.norm() < SERIES_THRESHOLD,
        PropagatorBranch::Series => true,
        PropagatorBranch::Direct => false,
    };
    let (cos_wt, sinc) = if use_series {
        let wt2 = wt * wt;
        (ONE - wt2 * 0.5, (ONE - wt2 / 6.0) * t)
    } else {
        (wt.cos(), wt.sin() / w)
    };
    let k = p.coupling();
    let gs = sinc * p.gamma;
    ComplexMatrix::new(
        2,
        vec![
            cos_wt + gs,
            -I * k * sinc,
            -I * k.conj() * sinc,
            cos_wt - gs,
        ],
    )
    .map_err(|_| {
        Error::InvalidParameter(format!(
            "propagator not finite at t = {t} (|ω| = {:e})",
            w.norm()
        ))
    })
}

/// Initial state `|1> = (1, 0)^T`.
pub fn default_initial_ket() -> [C64; 2] {
    [ONE, ZERO]
}

/// Normalized `ρ(t) = U|ψ0><ψ0|U^† / (|α|² + |β|²)` for the default `|1>`.
pub fn rho_t(p: &PTParams, t: f64) -> Result<ComplexMatrix> {
    rho_t_from(p, t, &default_initial_ket())
}

pub fn rho_t_from(p: &PTParams, t: f64, ket: &[C64; 2]) -> Result<ComplexMatrix> {
    let u = propagator(p, t)?;
    let psi = u.mul_vec(ket);
    let (alpha, beta) = (psi[0], psi[1]);
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if !norm.is_finite() || norm < NORM_FLOOR {
        return Err(Error::VanishingNorm(norm));
    }
    ComplexMatrix::new(
        2,
        vec![
            c(alpha.norm_sqr() / norm, 0.0),
            alpha * beta.conj() / norm,
            beta * alpha.conj() / norm,
            c(beta.norm_sqr() / norm, 0.0),
        ],
    )
}

/// `ρ(t)` read in the `(p, x)` form `[[1-p, x], [x*, p]]`.
pub fn qubit_state_at(p: &PTParams, t: f64) -> Result<QubitState> {
    QubitState::from_density(&rho_t(p, t)?)
}
