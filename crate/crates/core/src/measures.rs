//! Nonclassicality measures on two-qubit states: von Neumann entropy,
//! mutual information, measurement-induced disturbance (MID), Wootters
//! concurrence and negativity.

use crate::beamsplitter::{bs_output, QubitState, TwoModeState};
use crate::cxmat::{
    clamp_numerical_zero, eig_hermitian, partial_trace, partial_transpose, pauli_y, sqrt_psd, tensor,
    trace_norm_hermitian, ComplexMatrix, Subsystem, DEFAULT_TOL, EIG_FLOOR,
};
use crate::error::{Error, Result};

/// Two marginal eigenvalues closer than this count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// MID, concurrence and negativity of one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureReport {
    pub mid: f64,
    pub concurrence: f64,
    pub negativity: f64,
}

fn check_density(rho: &ComplexMatrix) -> Result<()> {
    let asym = rho.hermitian_asymmetry();
    if asym > DEFAULT_TOL {
        return Err(Error::NotHermitian(asym));
    }
    if !rho.trace_one(DEFAULT_TOL) {
        return Err(Error::InvalidState("trace differs from 1".into()));
    }
    Ok(())
}

fn entropy_of_spectrum(values: &[f64]) -> f64 {
    let s: f64 = values
        .iter()
        .filter(|&&l| l > EIG_FLOOR)
        .map(|&l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// `-Σ λ log₂ λ`, zero eigenvalues contributing nothing.
pub fn entropy(rho: &ComplexMatrix) -> Result<f64> {
    check_density(rho)?;
    let eig = eig_hermitian(rho)?;
    let min = *eig.values.last().expect("non-empty spectrum");
    if min < -DEFAULT_TOL {
        return Err(Error::NotPsd(min));
    }
    Ok(entropy_of_spectrum(&eig.values))
}

fn mutual_information_raw(rho: &ComplexMatrix) -> Result<f64> {
    let sa = entropy(&partial_trace(rho, Subsystem::A)?)?;
    let sb = entropy(&partial_trace(rho, Subsystem::B)?)?;
    Ok(sa + sb - entropy(rho)?)
}

/// `I(ρ) = S(ρ_A) + S(ρ_B) - S(ρ)`.
pub fn mutual_information(state: &TwoModeState) -> Result<f64> {
    mutual_information_raw(state.rho())
}

/// Rank-one projectors onto the eigenbasis of a 2x2 marginal. A degenerate
/// marginal is proportional to the identity; the computational basis is used
/// then.
pub fn marginal_projectors(marginal: &ComplexMatrix) -> Result<[ComplexMatrix; 2]> {
    let eig = eig_hermitian(marginal)?;
    if (eig.values[0] - eig.values[1]).abs() <= DEGENERACY_TOL {
        return Ok([
            ComplexMatrix::from_diag(&[1.0, 0.0])?,
            ComplexMatrix::from_diag(&[0.0, 1.0])?,
        ]);
    }
    Ok([
        ComplexMatrix::outer(&eig.vector(0))?,
        ComplexMatrix::outer(&eig.vector(1))?,
    ])
}

/// `Π(ρ) = Σ_ij (Π_i^A ⊗ Π_j^B) ρ (Π_i^A ⊗ Π_j^B)` with projectors from the
/// spectral resolution of the marginals.
pub fn measured_state(state: &TwoModeState) -> Result<ComplexMatrix> {
    let rho = state.rho();
    let pa = marginal_projectors(&partial_trace(rho, Subsystem::A)?)?;
    let pb = marginal_projectors(&partial_trace(rho, Subsystem::B)?)?;
    let mut out = ComplexMatrix::zeros(4)?;
    for a in &pa {
        for b in &pb {
            let proj = tensor(a, b)?;
            out = &out + &(&(&proj * rho) * &proj);
        }
    }
    Ok(out.hermitian_part())
}

/// Measurement-induced disturbance `Q(ρ) = I(ρ) - I(Π(ρ))`.
pub fn mid(state: &TwoModeState) -> Result<f64> {
    let measured = measured_state(state)?;
    Ok(mutual_information(state)? - mutual_information_raw(&measured)?)
}

/// `(σ_y ⊗ σ_y) ρ* (σ_y ⊗ σ_y)`.
pub fn spin_flip(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let yy = tensor(&pauli_y(), &pauli_y())?;
    Ok(rho.conj().conjugate_by(&yy))
}

/// Descending `λ_i`, the square roots of the eigenvalues of the Hermitian
/// matrix `√ρ ρ̃ √ρ`.
pub fn concurrence_spectrum(state: &TwoModeState) -> Result<Vec<f64>> {
    let rho = state.rho();
    let root = sqrt_psd(rho)?;
    let m = (&(&root * &spin_flip(rho)?) * &root).hermitian_part();
    Ok(clamp_numerical_zero(&eig_hermitian(&m)?.values)
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect())
}

/// `C(ρ) = max(0, λ1 - λ2 - λ3 - λ4)`.
pub fn concurrence(state: &TwoModeState) -> Result<f64> {
    let l = concurrence_spectrum(state)?;
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// Spectrum of the partial transpose on subsystem A.
pub fn partial_transpose_spectrum(state: &TwoModeState) -> Result<Vec<f64>> {
    let pt = partial_transpose(state.rho(), Subsystem::A)?;
    Ok(eig_hermitian(&pt)?.values)
}

/// `N(ρ) = Σ_k (|λ_k| - λ_k)/2` over the partial-transpose spectrum.
pub fn negativity(state: &TwoModeState) -> Result<f64> {
    let n: f64 = partial_transpose_spectrum(state)?
        .iter()
        .map(|&l| (l.abs() - l) / 2.0)
        .sum();
    Ok(n)
}

/// `N(ρ) = (‖ρ^{Γ_A}‖₁ - 1)/2`.
pub fn negativity_trace_norm(state: &TwoModeState) -> Result<f64> {
    let pt = partial_transpose(state.rho(), Subsystem::A)?;
    Ok(((trace_norm_hermitian(&pt)? - 1.0) / 2.0).max(0.0))
}

pub fn measure_all(state: &TwoModeState) -> Result<MeasureReport> {
    Ok(MeasureReport {
        mid: mid(state)?,
        concurrence: concurrence(state)?,
        negativity: negativity(state)?,
    })
}

/// Concurrence and negativity potentials `(C(ρ_out), N(ρ_out))`.
pub fn potentials(q: &QubitState) -> Result<(f64, f64)> {
    let out = bs_output(q)?;
    Ok((concurrence(&out)?, negativity(&out)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cxmat::{c, r, C64, ONE, ZERO};
    use crate::sampling::{random_density_matrix, random_hermitian, random_qubit_state};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn state(m: ComplexMatrix) -> TwoModeState {
        TwoModeState::new(m).unwrap()
    }

    fn bs(p: f64, x: C64) -> TwoModeState {
        bs_output(&QubitState::new(p, x).unwrap()).unwrap()
    }

    fn bell() -> TwoModeState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        state(ComplexMatrix::outer(&[ZERO, r(s), r(s), ZERO]).unwrap())
    }

    fn random_local_unitary(rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let ua = eig_hermitian(&random_hermitian(rng, 2)).unwrap().vectors;
        let ub = eig_hermitian(&random_hermitian(rng, 2)).unwrap().vectors;
        tensor(&ua, &ub).unwrap()
    }

    #[test]
    fn entropy_examples() {
        let pure = ComplexMatrix::outer(&[r(0.6), c(0.0, 0.8)]).unwrap();
        assert_abs_diff_eq!(entropy(&pure).unwrap(), 0.0, epsilon = 1e-12);
        let half = ComplexMatrix::identity(2).unwrap().scale_re(0.5);
        assert_abs_diff_eq!(entropy(&half).unwrap(), 1.0, epsilon = 1e-14);
        let d = ComplexMatrix::from_diag(&[0.75, 0.25]).unwrap();
        let expect = 2.0 - 0.75 * 3f64.log2();
        assert_abs_diff_eq!(entropy(&d).unwrap(), expect, epsilon = 1e-14);
        assert_abs_diff_eq!(expect, 0.811278, epsilon = 1e-6);
    }

    #[test]
    fn entropy_rejects_invalid_input() {
        assert!(entropy(&ComplexMatrix::identity(2).unwrap()).is_err());
        let neg = ComplexMatrix::from_diag(&[1.5, -0.5]).unwrap();
        assert!(matches!(entropy(&neg), Err(Error::NotPsd(_))));
    }

    #[test]
    fn mutual_information_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_density_matrix(&mut rng, 2);
        let b = random_density_matrix(&mut rng, 2);
        let prod = state(tensor(&a, &b).unwrap());
        assert_abs_diff_eq!(mutual_information(&prod).unwrap(), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(mutual_information(&bell()).unwrap(), 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(
            mutual_information(&bs(1.0, ZERO)).unwrap(),
            2.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn mid_examples() {
        let prod = state(
            tensor(
                &ComplexMatrix::from_diag(&[0.3, 0.7]).unwrap(),
                &ComplexMatrix::from_diag(&[0.9, 0.1]).unwrap(),
            )
            .unwrap(),
        );
        assert_abs_diff_eq!(mid(&prod).unwrap(), 0.0, epsilon = 1e-12);

        let bl = bs(1.0, ZERO);
        let measured = measured_state(&bl).unwrap();
        let expect = ComplexMatrix::from_diag(&[0.0, 0.5, 0.5, 0.0]).unwrap();
        assert!(measured.max_abs_diff(&expect) < 1e-12);
        assert_abs_diff_eq!(mid(&bl).unwrap(), 1.0, epsilon = 1e-10);

        assert_abs_diff_eq!(mid(&bs(0.0, ZERO)).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn concurrence_examples() {
        for &p in &[0.0, 0.2, 0.5, 1.0] {
            assert_abs_diff_eq!(concurrence(&bs(p, ZERO)).unwrap(), p, epsilon = 1e-9);
        }
        let sep = state(ComplexMatrix::from_diag(&[0.1, 0.2, 0.3, 0.4]).unwrap());
        assert_abs_diff_eq!(concurrence(&sep).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(concurrence(&bs(0.37, r(0.2))).unwrap(), 0.37, epsilon = 1e-9);
        assert_abs_diff_eq!(concurrence(&bell()).unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn negativity_examples() {
        let sep = state(ComplexMatrix::from_diag(&[0.1, 0.2, 0.3, 0.4]).unwrap());
        assert_abs_diff_eq!(negativity(&sep).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(negativity(&bs(1.0, ZERO)).unwrap(), 0.5, epsilon = 1e-12);
        let spec = partial_transpose_spectrum(&bs(1.0, ZERO)).unwrap();
        for (got, want) in spec.iter().zip([0.5, 0.5, 0.5, -0.5]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(negativity(&bs(0.0, ZERO)).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn potentials_examples() {
        let (cp, np) = potentials(&QubitState::new(1.0, ZERO).unwrap()).unwrap();
        assert_abs_diff_eq!(cp, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(np, 0.5, epsilon = 1e-12);

        let (cp, np) = potentials(&QubitState::vacuum()).unwrap();
        assert_abs_diff_eq!(cp, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(np, 0.0, epsilon = 1e-12);

        // For x = 0 the partial transpose splits into diag(p/2, p/2) on
        // {|01>,|10>} and [[1-p, ·], [·, 0]] with off-diagonal modulus p/2 on
        // {|00>,|11>}; the only negative eigenvalue comes from the latter.
        let p: f64 = 0.5;
        let neg = ((1.0 - p) - ((1.0 - p).powi(2) + p * p).sqrt()) / 2.0;
        let (cp, np) = potentials(&QubitState::new(p, ZERO).unwrap()).unwrap();
        assert_abs_diff_eq!(cp, 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(np, -neg, epsilon = 1e-12);
        assert_abs_diff_eq!(np, 0.103_553_390_593_273_8, epsilon = 1e-12);
    }

    #[test]
    fn mid_invariant_under_phase_gates_on_diagonal_marginals() {
        let phase = |t: f64| {
            ComplexMatrix::from_diag_complex(&[ONE, C64::from_polar(1.0, t)]).unwrap()
        };
        for &p in &[0.2, 0.6, 0.9] {
            let s = bs(p, ZERO);
            let u = tensor(&phase(0.7), &phase(-1.9)).unwrap();
            let rotated = state(s.rho().conjugate_by(&u));
            assert_abs_diff_eq!(mid(&s).unwrap(), mid(&rotated).unwrap(), epsilon = 1e-10);
        }
    }

    proptest! {
        #[test]
        fn entanglement_measures_are_local_unitary_invariant(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = state(random_density_matrix(&mut rng, 4));
            let u = random_local_unitary(&mut rng);
            let t = state(s.rho().conjugate_by(&u));
            prop_assert!((concurrence(&s).unwrap() - concurrence(&t).unwrap()).abs() < 1e-9);
            prop_assert!((negativity(&s).unwrap() - negativity(&t).unwrap()).abs() < 1e-10);
        }

        #[test]
        fn negativity_forms_agree(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = state(random_density_matrix(&mut rng, 4));
            let n9 = negativity(&s).unwrap();
            let n8 = negativity_trace_norm(&s).unwrap();
            prop_assert!((n8 - n9).abs() < 1e-10);
            prop_assert!((-1e-12..=0.5).contains(&n9));
        }

        #[test]
        fn beam_splitter_family_properties(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = random_qubit_state(&mut rng);
            let s = bs_output(&q).unwrap();
            let r = measure_all(&s).unwrap();
            prop_assert!((r.concurrence - q.p).abs() < 1e-9);
            prop_assert!(r.mid >= -1e-10);
            prop_assert_eq!(r.concurrence < 1e-9, r.negativity < 1e-9);
            let pure = (s.rho() * s.rho()).max_abs_diff(s.rho()) < 1e-9;
            prop_assert_eq!(entropy(s.rho()).unwrap() < 1e-6, pure);
        }
    }
}
