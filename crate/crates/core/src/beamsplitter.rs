//! Balanced beam splitter acting on a qubit and the vacuum.
//!
//! Each output mode is truncated to `{|0>, |1>}`. The input `ρ ⊗ |0><0|`
//! carries at most one photon and the beam splitter conserves photon number,
//! so nothing is lost by the truncation.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use crate::cxmat::{
    c, phase_aligned_distance, r, tensor, ComplexMatrix, PhaseAlignment, C64, DEFAULT_TOL, I,
    ONE, ZERO,
};
use crate::error::{Error, Result};

/// Single-qubit state `[[1-p, x], [x*, p]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitState {
    pub p: f64,
    pub x: C64,
}

impl QubitState {
    pub fn new(p: f64, x: C64) -> Result<Self> {
        if !(p.is_finite() && x.re.is_finite() && x.im.is_finite()) {
            return Err(Error::InvalidState("non-finite qubit parameters".into()));
        }
        if !(-DEFAULT_TOL..=1.0 + DEFAULT_TOL).contains(&p) {
            return Err(Error::InvalidState(format!("p = {p} outside [0, 1]")));
        }
        let p = p.clamp(0.0, 1.0);
        let bound = (p * (1.0 - p)).sqrt();
        if x.norm() > bound + DEFAULT_TOL {
            return Err(Error::InvalidState(format!(
                "|x| = {} exceeds sqrt(p(1-p)) = {bound}",
                x.norm()
            )));
        }
        Ok(Self { p, x })
    }

    pub fn vacuum() -> Self {
        Self { p: 0.0, x: ZERO }
    }

    /// Reads `p = ρ_11`, `x = ρ_01` from a 2x2 density matrix.
    pub fn from_density(rho: &ComplexMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: rho.dim(),
            });
        }
        if !rho.is_hermitian(DEFAULT_TOL) || !rho.trace_one(DEFAULT_TOL) {
            return Err(Error::InvalidState(
                "qubit matrix must be Hermitian with unit trace".into(),
            ));
        }
        Self::new(rho.get(1, 1).re, rho.get(0, 1))
    }

    pub fn density(&self) -> ComplexMatrix {
        ComplexMatrix::from_rows([[r(1.0 - self.p), self.x], [self.x.conj(), r(self.p)]])
    }
}

/// Validated 4x4 two-mode density matrix, basis `|00>, |01>, |10>, |11>`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeState {
    rho: ComplexMatrix,
}

impl TwoModeState {
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        Self::with_tol(rho, DEFAULT_TOL)
    }

    pub fn with_tol(rho: ComplexMatrix, tol: f64) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: rho.dim(),
            });
        }
        let asym = rho.hermitian_asymmetry();
        if asym > tol {
            return Err(Error::NotHermitian(asym));
        }
        let tr = rho.trace();
        if (tr - ONE).norm() > tol {
            return Err(Error::InvalidState(format!(
                "trace is {}{:+}i, expected 1",
                tr.re, tr.im
            )));
        }
        let eig = crate::cxmat::eig_hermitian_tol(&rho, tol)?;
        let min = eig.values[3];
        if min < -tol {
            return Err(Error::NotPsd(min));
        }
        Ok(Self {
            rho: rho.hermitian_part(),
        })
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.rho
    }
}

/// Output of the balanced beam splitter for input `q ⊗ |0><0|`, written out
/// entry by entry.
pub fn bs_output(q: &QubitState) -> Result<TwoModeState> {
    let q = QubitState::new(q.p, q.x)?;
    let s = FRAC_1_SQRT_2;
    let (p, x) = (q.p, q.x);
    let xc = x.conj();
    let half = p / 2.0;
    let rho = ComplexMatrix::from_rows([
        [r(1.0 - p), I * x * s, x * s, ZERO],
        [-I * xc * s, r(half), c(0.0, -half), ZERO],
        [xc * s, c(0.0, half), r(half), ZERO],
        [ZERO, ZERO, ZERO, ZERO],
    ]);
    TwoModeState::new(rho)
}

/// Balanced beam splitter restricted to at most one photon per mode.
pub fn bs_unitary() -> ComplexMatrix {
    bs_unitary_theta(FRAC_PI_2)
}

/// `exp(-i θ G)` with `G = (a1† a2 + a1 a2†)/2` on the single-photon sector
/// `{|01>, |10>}`. `|00>` is invariant and `|11>` is left untouched, since
/// the truncation cannot hold its two-photon image and the input never
/// populates it.
pub fn bs_unitary_theta(theta: f64) -> ComplexMatrix {
    let (cs, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    ComplexMatrix::from_rows([
        [ONE, ZERO, ZERO, ZERO],
        [ZERO, r(cs), c(0.0, -sn), ZERO],
        [ZERO, c(0.0, -sn), r(cs), ZERO],
        [ZERO, ZERO, ZERO, ONE],
    ])
}

/// `U (q ⊗ |0><0|) U^†`.
pub fn bs_conjugate(u: &ComplexMatrix, q: &QubitState) -> Result<ComplexMatrix> {
    let vac = ComplexMatrix::from_diag(&[1.0, 0.0])?;
    Ok(tensor(&q.density(), &vac)?.conjugate_by(u))
}

pub fn t_gate() -> ComplexMatrix {
    ComplexMatrix::from_rows([[ONE, ZERO], [ZERO, C64::from_polar(1.0, FRAC_PI_4)]])
}

pub fn s_gate() -> ComplexMatrix {
    ComplexMatrix::from_rows([[ONE, ZERO], [ZERO, I]])
}

pub fn controlled_s() -> ComplexMatrix {
    ComplexMatrix::from_diag_complex(&[ONE, ONE, ONE, I]).expect("4x4")
}

pub fn swap() -> ComplexMatrix {
    ComplexMatrix::from_rows([
        [ONE, ZERO, ZERO, ZERO],
        [ZERO, ZERO, ONE, ZERO],
        [ZERO, ONE, ZERO, ZERO],
        [ZERO, ZERO, ZERO, ONE],
    ])
}

pub fn sqrt_swap() -> ComplexMatrix {
    let a = c(0.5, 0.5);
    let b = c(0.5, -0.5);
    ComplexMatrix::from_rows([
        [ONE, ZERO, ZERO, ZERO],
        [ZERO, a, b, ZERO],
        [ZERO, b, a, ZERO],
        [ZERO, ZERO, ZERO, ONE],
    ])
}

/// `CS · (T ⊗ T) · √SWAP`.
pub fn gate_decomposition() -> ComplexMatrix {
    let tt = tensor(&t_gate(), &t_gate()).expect("2x2 factors");
    &(&controlled_s() * &tt) * &sqrt_swap()
}

/// Distance between the gate product and [`bs_unitary`] after removing the
/// best global phase.
pub fn gate_decomposition_deviation() -> PhaseAlignment {
    phase_aligned_distance(&gate_decomposition(), &bs_unitary())
}

/// Photon-number operator `diag(0, 1, 1, 2)`.
pub fn photon_number() -> ComplexMatrix {
    ComplexMatrix::from_diag(&[0.0, 1.0, 1.0, 2.0]).expect("4x4")
}
