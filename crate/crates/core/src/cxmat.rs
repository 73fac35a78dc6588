//! Dense complex matrices of dimension 2 and 4.
//!
//! Everything in the crate that is a state, a propagator, a gate or a Kraus
//! operator is carried as a [`ComplexMatrix`]. Two-qubit matrices use the basis
//! order `|00>, |01>, |10>, |11>` with the first tensor factor being
//! subsystem A.
//!
//! The only spectral routine is a cyclic complex Jacobi solver for Hermitian
//! input, which is all the measures need.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Default absolute tolerance for structural predicates.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Eigenvalues above `-EIG_FLOOR` are treated as zero in PSD operations.
pub const EIG_FLOOR: f64 = 1e-12;

/// Relative size below which an eigenvalue of a PSD matrix cannot be told
/// apart from zero after a Jacobi solve.
pub const RANK_EPS: f64 = 64.0 * f64::EPSILON;

const MAX_SWEEPS: usize = 64;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Which factor of a two-qubit tensor product an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

/// Square complex matrix, row-major, dimension 2 or 4.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::BadLength {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from nested rows. Panics on ragged input or a
    /// dimension other than 2 or 4; meant for literals.
    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Self {
        assert!(N == 2 || N == 4, "dimension must be 2 or 4");
        let data = rows.iter().flat_map(|row| row.iter().copied()).collect();
        Self { dim: N, data }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self::new(dim, data)
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        let d: Vec<C64> = diag.iter().map(|&x| r(x)).collect();
        Self::from_diag_complex(&d)
    }

    pub fn from_diag_complex(diag: &[C64]) -> Result<Self> {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { ZERO })
    }

    /// `|k><k|` for a ket of length 2 or 4 (not normalized here).
    pub fn outer(ket: &[C64]) -> Result<Self> {
        Self::from_fn(ket.len(), |i, j| ket[i] * ket[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.dim).map(|c| c.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    fn map_indexed(&self, f: impl Fn(usize, usize) -> C64) -> Self {
        let n = self.dim;
        Self {
            dim: n,
            data: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        self.map_indexed(|i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        self.map_indexed(|i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn scale(&self, k: C64) -> Self {
        self.map(|z| z * k)
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.map(|z| z * k)
    }

    pub fn trace(&self) -> C64 {
        self.diagonal().into_iter().sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(Self { dim: n, data })
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// `u * self * u^dagger`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    /// Largest `|m_ij - conj(m_ji)|`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_asymmetry() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let id = Self::identity(self.dim).expect("valid dimension");
        (self * &self.adjoint()).max_abs_diff(&id) <= tol
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        match eig_hermitian_tol(self, tol) {
            Ok(e) => e.values.iter().all(|&l| l >= -tol),
            Err(_) => false,
        }
    }

    pub fn trace_one(&self, tol: f64) -> bool {
        (self.trace() - ONE).norm() <= tol
    }

    /// Hermitian, PSD and unit trace within `tol`.
    pub fn is_density_matrix(&self, tol: f64) -> bool {
        self.trace_one(tol) && self.is_psd(tol)
    }

    /// Hermitian part `(m + m^dagger)/2`.
    pub fn hermitian_part(&self) -> Self {
        self.map_indexed(|i, j| (self.get(i, j) + self.get(j, i).conj()) * 0.5)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim) {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

fn require(m: &ComplexMatrix, dim: usize) -> Result<()> {
    if m.dim != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: m.dim,
        });
    }
    Ok(())
}

/// Kronecker product `a ⊗ b` of two 2x2 matrices; `a` acts on subsystem A.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    require(a, 2)?;
    require(b, 2)?;
    ComplexMatrix::from_fn(4, |i, j| a.get(i / 2, j / 2) * b.get(i % 2, j % 2))
}

/// Kronecker product of two kets of length 2.
pub fn tensor_ket(a: &[C64], b: &[C64]) -> Vec<C64> {
    assert!(a.len() == 2 && b.len() == 2, "kets must have length 2");
    vec![a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

/// Reduced 2x2 matrix on `keep`, tracing out the other qubit.
pub fn partial_trace(m: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    require(m, 4)?;
    ComplexMatrix::from_fn(2, |i, j| match keep {
        Subsystem::A => m.get(2 * i, 2 * j) + m.get(2 * i + 1, 2 * j + 1),
        Subsystem::B => m.get(i, j) + m.get(2 + i, 2 + j),
    })
}

/// Transpose with respect to one tensor factor.
pub fn partial_transpose(m: &ComplexMatrix, on: Subsystem) -> Result<ComplexMatrix> {
    require(m, 4)?;
    ComplexMatrix::from_fn(4, |i, j| {
        let (ia, ib, ja, jb) = (i / 2, i % 2, j / 2, j % 2);
        match on {
            Subsystem::A => m.get(2 * ja + ib, 2 * ia + jb),
            Subsystem::B => m.get(2 * ia + jb, 2 * ja + ib),
        }
    })
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Real eigenvalues, descending.
    pub values: Vec<f64>,
    /// Column `k` is the normalized eigenvector of `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// `V diag(f(lambda)) V^dagger`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| v.get(i, k) * v.get(j, k).conj() * f(self.values[k]))
                .sum()
        })
        .expect("finite spectral function")
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| l)
    }
}

pub fn eig_hermitian(m: &ComplexMatrix) -> Result<HermitianEigen> {
    eig_hermitian_tol(m, DEFAULT_TOL)
}

/// Cyclic complex Jacobi. Each rotation first removes the phase of the
/// pivot `a_pq` with a diagonal unitary and then applies a real Givens
/// rotation, so the iteration stays within Hermitian matrices.
pub fn eig_hermitian_tol(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    let asym = m.hermitian_asymmetry();
    if asym > tol {
        return Err(Error::NotHermitian(asym));
    }
    let n = m.dim;
    let mut a = m.hermitian_part().data;
    let mut v = ComplexMatrix::identity(n)?.data;
    let scale = m.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale * 1e-2 || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let rho = apq.norm();
                if rho <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / rho;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * rho);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                let ph_c = phase.conj();

                // A <- A G with G_pp = c, G_pq = s, G_qp = -s e^{-i phi}, G_qq = c e^{-i phi}
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * cs - akq * ph_c * sn;
                    a[k * n + q] = akp * sn + akq * ph_c * cs;
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * cs - vkq * ph_c * sn;
                    v[k * n + q] = vkp * sn + vkq * ph_c * cs;
                }
                // A <- G^dagger A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * cs - aqk * phase * sn;
                    a[q * n + k] = apk * sn + aqk * phase * cs;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p] = r(app - t * rho);
                a[q * n + q] = r(aqq + t * rho);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re));
    let values: Vec<f64> = order.iter().map(|&k| a[k * n + k].re).collect();

    let mut vectors = vec![ZERO; n * n];
    for (col, &k) in order.iter().enumerate() {
        let colvec: Vec<C64> = (0..n).map(|i| v[i * n + k]).collect();
        // fix the phase: the first largest component is real and positive
        let big = colvec.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let lead = colvec
            .iter()
            .find(|z| z.norm() >= big * (1.0 - 1e-9))
            .copied()
            .unwrap_or(ONE);
        let fix = lead.conj() / lead.norm();
        for i in 0..n {
            vectors[i * n + col] = colvec[i] * fix;
        }
    }
    Ok(HermitianEigen {
        values,
        vectors: ComplexMatrix::new(n, vectors)?,
    })
}

/// Zeroes eigenvalues that are rounding noise relative to the largest one.
pub fn clamp_numerical_zero(values: &[f64]) -> Vec<f64> {
    let top = values.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
    let floor = RANK_EPS * top;
    values
        .iter()
        .map(|&l| if l.abs() <= floor { 0.0 } else { l })
        .collect()
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// `[-EIG_FLOOR, 0)` and those at rounding level are clamped to zero.
pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut eig = eig_hermitian(m)?;
    if let Some(&min) = eig.values.last() {
        if min < -EIG_FLOOR {
            return Err(Error::NotPsd(min));
        }
    }
    eig.values = clamp_numerical_zero(&eig.values);
    Ok(eig.reconstruct_with(|l| l.max(0.0).sqrt()))
}

/// Sum of absolute eigenvalues.
pub fn trace_norm_hermitian(m: &ComplexMatrix) -> Result<f64> {
    Ok(eig_hermitian(m)?.values.iter().map(|l| l.abs()).sum())
}

/// Result of comparing two matrices modulo a global phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseAlignment {
    /// `theta` such that `a ≈ e^{i theta} b`.
    pub phase: f64,
    pub frobenius: f64,
    pub max_entry: f64,
}

/// Minimizes `||a - e^{i theta} b||_F` over `theta`, which is attained at
/// `theta = arg tr(b^dagger a)`.
pub fn phase_aligned_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> PhaseAlignment {
    let overlap = (&b.adjoint() * a).trace();
    let phase = if overlap.norm() > 0.0 { overlap.arg() } else { 0.0 };
    let rotated = b.scale(C64::from_polar(1.0, phase));
    let diff = a - &rotated;
    PhaseAlignment {
        phase,
        frobenius: diff.frobenius_norm(),
        max_entry: a.max_abs_diff(&rotated),
    }
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows([[ZERO, ONE], [ONE, ZERO]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows([[ZERO, -I], [I, ZERO]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows([[ONE, ZERO], [ZERO, -ONE]])
}
