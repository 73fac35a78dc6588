//! Schmidt form of two-qubit pure states through the SVD of their 2x2
//! amplitude matrix, and the Bell-diagonal state left by phase damping.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::beamsplitter::TwoModeState;
use crate::cxmat::{eig_hermitian, r, ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;

/// Amplitudes of `a|00> + b|01> + c|10> + d|11>`, read as `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeMatrix {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl AmplitudeMatrix {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let m = Self { a, b, c, d };
        let n = m.norm_sqr();
        if !n.is_finite() || (n - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "amplitudes must be normalized, |a|²+|b|²+|c|²+|d|² = {n}"
            )));
        }
        Ok(m)
    }

    pub fn from_ket(ket: &[C64]) -> Result<Self> {
        if ket.len() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: ket.len(),
            });
        }
        Self::new(ket[0], ket[1], ket[2], ket[3])
    }

    fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()
    }

    pub fn ket(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_rows([[self.a, self.b], [self.c, self.d]])
    }

    /// `|ad - bc|`.
    pub fn abs_det(&self) -> f64 {
        (self.a * self.d - self.b * self.c).norm()
    }
}

/// Closed-form singular values
/// `σ± = sqrt(1/2 ± sqrt(1/4 - |ad - bc|²))`, with `σ-` taken as
/// `|ad - bc| / σ+` to avoid cancellation.
pub fn singular_values(m: &AmplitudeMatrix) -> (f64, f64) {
    let det = m.abs_det();
    let inner = (0.25 - det * det).max(0.0).sqrt();
    let plus = (0.5 + inner).sqrt();
    (plus, det / plus)
}

/// Singular values as `‖M v_k‖` over the eigenvectors `v_k` of `M†M`.
pub fn singular_values_numeric(m: &AmplitudeMatrix) -> Result<(f64, f64)> {
    let (s, _) = right_singular_vectors(m)?;
    Ok((s[0], s[1]))
}

fn right_singular_vectors(m: &AmplitudeMatrix) -> Result<([f64; 2], [Vec<C64>; 2])> {
    let mat = m.matrix();
    let gram = &mat.adjoint() * &mat;
    let eig = eig_hermitian(&gram)?;
    let v0 = eig.vector(0);
    let v1 = eig.vector(1);
    let norm = |v: &[C64]| mat.mul_vec(v).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(([norm(&v0), norm(&v1)], [v0, v1]))
}

/// `|w> = σ+ |u0>|r0> + σ- |u1>|r1>` with `α = σ+²`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtForm {
    pub alpha: f64,
    pub left_basis: [[C64; 2]; 2],
    pub right_basis: [[C64; 2]; 2],
}

impl SchmidtForm {
    pub fn sigma_plus(&self) -> f64 {
        self.alpha.sqrt()
    }

    pub fn sigma_minus(&self) -> f64 {
        (1.0 - self.alpha).max(0.0).sqrt()
    }

    /// Reassembles the ket in the computational basis.
    pub fn ket(&self) -> [C64; 4] {
        let w = [self.sigma_plus(), self.sigma_minus()];
        let mut out = [ZERO; 4];
        for ((u, v), wk) in self.left_basis.iter().zip(&self.right_basis).zip(w) {
            for i in 0..2 {
                for j in 0..2 {
                    out[2 * i + j] += u[i] * v[j] * wk;
                }
            }
        }
        out
    }

    /// The same weights after relabelling `u0 -> |0>`, `u1 -> |1>`,
    /// `r0 -> |1>`, `r1 -> |0>`: `sqrt(α)|01> + sqrt(1-α)|10>`.
    pub fn canonical_ket(&self) -> [C64; 4] {
        psi_alpha(self.alpha)
    }
}

/// `sqrt(α)|01> + sqrt(1-α)|10>`.
pub fn psi_alpha(alpha: f64) -> [C64; 4] {
    [ZERO, r(alpha.sqrt()), r((1.0 - alpha).max(0.0).sqrt()), ZERO]
}

/// SVD-based Schmidt decomposition. Degenerate weights keep the eigenvector
/// order of `M†M`, which is the computational basis for a multiple of the
/// identity.
pub fn schmidt_decompose(m: &AmplitudeMatrix) -> Result<SchmidtForm> {
    let (sigma, [v0, v1]) = right_singular_vectors(m)?;
    let mat = m.matrix();
    let u0: Vec<C64> = mat.mul_vec(&v0).into_iter().map(|z| z / sigma[0]).collect();
    let u1: Vec<C64> = if sigma[1] > 1e-12 {
        mat.mul_vec(&v1).into_iter().map(|z| z / sigma[1]).collect()
    } else {
        vec![-u0[1].conj(), u0[0].conj()]
    };
    let total = sigma[0] * sigma[0] + sigma[1] * sigma[1];
    Ok(SchmidtForm {
        alpha: sigma[0] * sigma[0] / total,
        left_basis: [[u0[0], u0[1]], [u1[0], u1[1]]],
        right_basis: [[v0[0].conj(), v0[1].conj()], [v1[0].conj(), v1[1].conj()]],
    })
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidParameter(format!("{name} = {v} outside [0, 1]")));
    }
    Ok(())
}

/// Weights `(l+, l-) = ((1 ± sqrt((1-λ1)(1-λ2)))/2)`.
pub fn pd_bell_weights(lambda1: f64, lambda2: f64) -> Result<(f64, f64)> {
    check_unit("lambda1", lambda1)?;
    check_unit("lambda2", lambda2)?;
    let s = ((1.0 - lambda1) * (1.0 - lambda2)).sqrt();
    Ok(((1.0 + s) / 2.0, (1.0 - s) / 2.0))
}

/// `l+ |β1><β1| + l- |β2><β2|` with `|β1,2> = (|01> ± |10>)/√2`: phase
/// damping with strengths `λ1, λ2` applied to `(|01> + |10>)/√2`.
pub fn pd_bell_diagonal_state(lambda1: f64, lambda2: f64) -> Result<TwoModeState> {
    let (lp, lm) = pd_bell_weights(lambda1, lambda2)?;
    let s = FRAC_1_SQRT_2;
    let b1 = ComplexMatrix::outer(&[ZERO, r(s), r(s), ZERO])?;
    let b2 = ComplexMatrix::outer(&[ZERO, r(s), r(-s), ZERO])?;
    TwoModeState::new(&b1.scale_re(lp) + &b2.scale_re(lm))
}

/// Concurrence of the Bell-diagonal PD state, `sqrt((1-λ1)(1-λ2))`.
pub fn pd_bell_diagonal_concurrence(lambda1: f64, lambda2: f64) -> Result<f64> {
    check_unit("lambda1", lambda1)?;
    check_unit("lambda2", lambda2)?;
    Ok(((1.0 - lambda1) * (1.0 - lambda2)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beamsplitter::{bs_output, QubitState};
    use crate::channels::{apply_kraus_two_arm, KrausPair};
    use crate::cxmat::{c, ONE};
    use crate::measures::concurrence;
    use crate::sampling::random_ket;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn amp(k: &[C64]) -> AmplitudeMatrix {
        AmplitudeMatrix::from_ket(k).unwrap()
    }

    fn ket_distance(a: &[C64; 4], b: &[C64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(AmplitudeMatrix::new(ONE, ONE, ZERO, ZERO).is_err());
        assert!(AmplitudeMatrix::from_ket(&[ONE]).is_err());
    }

    #[test]
    fn singular_value_examples() {
        let prod = amp(&[ONE, ZERO, ZERO, ZERO]);
        assert_eq!(singular_values(&prod), (1.0, 0.0));

        let s = FRAC_1_SQRT_2;
        let bell = amp(&[ZERO, r(s), r(s), ZERO]);
        let (p, m) = singular_values(&bell);
        assert_abs_diff_eq!(p, s, epsilon = 1e-15);
        assert_abs_diff_eq!(m, s, epsilon = 1e-15);

        let flat = amp(&[r(0.5); 4]);
        let (p, m) = singular_values(&flat);
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m, 0.0, epsilon = 1e-15);
        let form = schmidt_decompose(&flat).unwrap();
        assert_abs_diff_eq!(form.alpha, 1.0, epsilon = 1e-15);
        let expect = [ZERO, ONE, ZERO, ZERO];
        assert!(ket_distance(&form.canonical_ket(), &expect) < 1e-7);
    }

    #[test]
    fn decompose_examples() {
        let prod = amp(&[ZERO, ZERO, c(0.6, 0.0), c(0.0, 0.8)]);
        let form = schmidt_decompose(&prod).unwrap();
        assert_abs_diff_eq!(form.alpha, 1.0, epsilon = 1e-15);
        assert!(ket_distance(&form.ket(), &prod.ket()) < 1e-15);

        let s = FRAC_1_SQRT_2;
        let bell = amp(&[ZERO, r(s), r(s), ZERO]);
        let form = schmidt_decompose(&bell).unwrap();
        assert_abs_diff_eq!(form.alpha, 0.5, epsilon = 1e-15);
        assert!(ket_distance(&form.ket(), &bell.ket()) < 1e-15);
    }

    #[test]
    fn psi_alpha_decomposes_in_computational_basis() {
        for k in 0..=20 {
            let alpha = 0.5 + 0.5 * k as f64 / 20.0;
            let form = schmidt_decompose(&amp(&psi_alpha(alpha))).unwrap();
            assert_abs_diff_eq!(form.alpha, alpha, epsilon = 1e-12);
            for basis in [form.left_basis, form.right_basis] {
                for v in basis {
                    let on_axis = (v[0].norm() - 1.0).abs() < 1e-12 && v[1].norm() < 1e-12
                        || (v[1].norm() - 1.0).abs() < 1e-12 && v[0].norm() < 1e-12;
                    assert!(on_axis, "alpha {alpha}: {v:?}");
                }
            }
            if alpha > 0.5 {
                assert_eq!(form.left_basis[0], [ONE, ZERO]);
                assert_eq!(form.right_basis[0], [ZERO, ONE]);
            }
        }
    }

    #[test]
    fn pd_bell_diagonal_examples() {
        assert_abs_diff_eq!(pd_bell_diagonal_concurrence(0.0, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(pd_bell_diagonal_concurrence(1.0, 1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            pd_bell_diagonal_concurrence(0.19, 0.19).unwrap(),
            0.81,
            epsilon = 1e-15
        );
        assert!(pd_bell_diagonal_concurrence(1.2, 0.0).is_err());
        assert!(pd_bell_diagonal_state(0.0, -0.1).is_err());

        for &(l1, l2) in &[(0.0, 0.0), (0.3, 0.7), (1.0, 0.2)] {
            let (lp, _) = pd_bell_weights(l1, l2).unwrap();
            let c = pd_bell_diagonal_concurrence(l1, l2).unwrap();
            assert_abs_diff_eq!(c, 2.0 * (lp - 0.5).max(0.0), epsilon = 1e-15);
        }
    }

    #[test]
    fn pd_bell_state_matches_kraus_evolution() {
        let psi = TwoModeState::new(ComplexMatrix::outer(&psi_alpha(0.5)).unwrap()).unwrap();
        let p1 = bs_output(&QubitState::new(1.0, ZERO).unwrap()).unwrap();
        for &(l1, l2) in &[(0.1, 0.4), (0.9, 0.05), (0.5, 0.5)] {
            let ka = KrausPair::phase_damping(l1);
            let kb = KrausPair::phase_damping(l2);
            let evolved = apply_kraus_two_arm(&ka, &kb, &psi).unwrap();
            let closed = pd_bell_diagonal_state(l1, l2).unwrap();
            assert!(evolved.rho().max_abs_diff(closed.rho()) < 1e-15);

            let want = pd_bell_diagonal_concurrence(l1, l2).unwrap();
            assert_abs_diff_eq!(concurrence(&closed).unwrap(), want, epsilon = 1e-9);
            let pipeline = concurrence(&apply_kraus_two_arm(&ka, &kb, &p1).unwrap()).unwrap();
            assert_abs_diff_eq!(pipeline, want, epsilon = 1e-9);
        }
    }

    proptest! {
        #[test]
        fn closed_form_matches_eigensolver(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = amp(&random_ket(&mut rng, 4));
            let (p, q) = singular_values(&m);
            let (pn, qn) = singular_values_numeric(&m).unwrap();
            prop_assert!((p - pn).abs() < 1e-10 && (q - qn).abs() < 1e-10);
            prop_assert!((p * p + q * q - 1.0).abs() < 1e-12);
            prop_assert!(p >= q);
        }

        #[test]
        fn decomposition_reconstructs(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = amp(&random_ket(&mut rng, 4));
            let form = schmidt_decompose(&m).unwrap();
            prop_assert!(ket_distance(&form.ket(), &m.ket()) < 1e-9);
            prop_assert!((0.5 - 1e-12..=1.0 + 1e-12).contains(&form.alpha));
            for basis in [form.left_basis, form.right_basis] {
                let ip = basis[0][0].conj() * basis[1][0] + basis[0][1].conj() * basis[1][1];
                prop_assert!(ip.norm() < 1e-10);
                for v in basis {
                    prop_assert!((v[0].norm_sqr() + v[1].norm_sqr() - 1.0).abs() < 1e-10);
                }
            }
            // pure-state concurrence from the Schmidt weight
            let rho = TwoModeState::new(ComplexMatrix::outer(&m.ket()).unwrap()).unwrap();
            let want = 2.0 * (form.alpha * (1.0 - form.alpha)).sqrt();
            prop_assert!((concurrence(&rho).unwrap() - want).abs() < 1e-9);
        }
    }
}
