//! Seeded random draws used by property tests and the validation battery.

use rand::Rng;

use crate::beamsplitter::QubitState;
use crate::cxmat::{c, ComplexMatrix, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn random_ket<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    let raw: Vec<C64> = (0..dim).map(|_| c(gaussian(rng), gaussian(rng))).collect();
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    raw.into_iter().map(|z| z / norm).collect()
}

/// Hermitian matrix with entries of order one.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| c(gaussian(rng), gaussian(rng))).unwrap();
    g.hermitian_part()
}

/// Full-rank mixed state `G G^dagger / tr(G G^dagger)` with Ginibre `G`.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| c(gaussian(rng), gaussian(rng))).unwrap();
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    w.scale_re(1.0 / tr).hermitian_part()
}

/// Uniform `p` and a coherence uniformly placed in the allowed disc.
pub fn random_qubit_state<R: Rng + ?Sized>(rng: &mut R) -> QubitState {
    let p: f64 = rng.gen();
    let radius = (p * (1.0 - p)).sqrt() * rng.gen::<f64>().sqrt();
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    QubitState::new(p, C64::from_polar(radius, angle)).expect("sampled inside the disc")
}
