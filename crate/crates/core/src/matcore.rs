//! Dense complex matrix primitives.
//!
//! Everything here works on small (dim ≲ 64) dense matrices backed by
//! [`nalgebra::DMatrix`]. Spectral routines return eigenvalues in ascending
//! order, and PSD functions treat eigenvalues that sit at the floating-point
//! noise floor as exact zeros so that square roots of low-rank operators stay
//! low rank.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Maximum entrywise deviation `|A - A†|` accepted for Hermitian inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero.
pub const PSD_TOL: f64 = 1e-10;
/// An eigenvalue of a density matrix counts as nonzero iff it is at least this.
pub const RANK_THRESHOLD: f64 = 1e-10;
/// Eigenvalues closer than this are grouped into one eigenspace.
pub const DEGENERACY_TOL: f64 = 1e-8;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn ensure_square(a: &ComplexMatrix) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(a.nrows())
}

pub(crate) fn ensure_finite(a: &ComplexMatrix) -> Result<()> {
    if a.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimMismatch { expected, found })
    }
}

/// Largest entry of `|A - A†|`.
pub fn hermitian_deviation(a: &ComplexMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `(A + A†) / 2`.
pub fn hermitian_part(a: &ComplexMatrix) -> ComplexMatrix {
    (a + a.adjoint()).scale(0.5)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn diag(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    ComplexMatrix::from_fn(n, n, |i, j| if i == j { c(values[i], 0.0) } else { c(0.0, 0.0) })
}

pub fn trace(a: &ComplexMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

/// `|u⟩⟨v|`.
pub fn outer(u: &ComplexVector, v: &ComplexVector) -> ComplexMatrix {
    u * v.adjoint()
}

/// Orthogonal projector onto the span of the (orthonormal) columns of `basis`.
pub fn projector(basis: &ComplexMatrix) -> ComplexMatrix {
    basis * basis.adjoint()
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: DVector<f64>,
    /// Orthonormal eigenvectors, one per column, matching `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V f(Λ) V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let scaled = ComplexMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            v[(i, j)] * f(self.eigenvalues[j])
        });
        scaled * v.adjoint()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|x| x)
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// The input is re-symmetrized as `(A + A†)/2` after the Hermiticity check.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEig> {
    let n = ensure_square(a)?;
    ensure_finite(a)?;
    let deviation = hermitian_deviation(a);
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    if n == 0 {
        return Ok(HermitianEig {
            eigenvalues: DVector::zeros(0),
            eigenvectors: ComplexMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::new(hermitian_part(a));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues below this are rounding noise of a PSD spectrum and are
/// treated as exact zeros.
pub(crate) fn noise_floor(eigenvalues: &DVector<f64>) -> f64 {
    let scale = eigenvalues.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    16.0 * f64::EPSILON * eigenvalues.len().max(1) as f64 * scale
}

/// Clamp a PSD spectrum: reject anything below `-PSD_TOL`, zero out the rest
/// of the negative part and the noise floor.
pub(crate) fn clamp_psd_spectrum(eigenvalues: &DVector<f64>) -> Result<DVector<f64>> {
    let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let floor = noise_floor(eigenvalues);
    Ok(eigenvalues.map(|x| if x <= floor { 0.0 } else { x }))
}

/// Principal square root of a Hermitian PSD matrix.
pub fn psd_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a)?;
    let clamped = clamp_psd_spectrum(&eig.eigenvalues)?;
    let eig = HermitianEig {
        eigenvalues: clamped,
        eigenvectors: eig.eigenvectors,
    };
    Ok(eig.map(f64::sqrt))
}

/// Singular values in descending order.
pub fn singular_values(a: &ComplexMatrix) -> DVector<f64> {
    if a.is_empty() {
        return DVector::zeros(0);
    }
    let mut sv: Vec<f64> = a.singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    DVector::from_vec(sv)
}

/// `tr|A| = tr √(A†A)`, the sum of singular values.
pub fn trace_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a).sum()
}

/// Frobenius norm.
pub fn frobenius(a: &ComplexMatrix) -> f64 {
    a.norm()
}

struct Polar {
    abs: ComplexMatrix,
    left: ComplexMatrix,
    right: ComplexMatrix,
    sigma: DVector<f64>,
}

fn polar_parts(a: &ComplexMatrix) -> Option<Polar> {
    let svd = a.clone().svd(true, true);
    let u = svd.u?;
    let v_t = svd.v_t?;
    let n = svd.singular_values.len();
    let v = v_t.adjoint();
    let scaled = ComplexMatrix::from_fn(a.ncols(), n, |i, j| v[(i, j)] * svd.singular_values[j]);
    Some(Polar {
        abs: scaled * &v_t,
        left: u,
        right: v,
        sigma: svd.singular_values,
    })
}

/// `|A| = √(A†A)`.
pub fn abs_matrix(a: &ComplexMatrix) -> ComplexMatrix {
    match polar_parts(a) {
        Some(p) => p.abs,
        None => ComplexMatrix::zeros(a.ncols(), a.ncols()),
    }
}

/// Return `θ` if `A = e^{iθ}|A|` holds to `tol · max(1, ‖A‖_F)` in Frobenius norm.
///
/// The candidate phase is `arg tr A`; when the trace vanishes the phase is read
/// off the leading singular pair (`A v₁ = σ₁ u₁` forces `u₁ = e^{iθ} v₁`).
/// The returned phase lies in `(-π, π]`.
pub fn unimodular_proportionality_check(a: &ComplexMatrix, tol: f64) -> Option<f64> {
    if a.nrows() != a.ncols() || a.is_empty() {
        return None;
    }
    let scale = frobenius(a).max(1.0);
    let polar = polar_parts(a)?;
    let tr = trace(a);
    let theta = if tr.norm() > tol * scale {
        tr.arg()
    } else {
        let lead = polar.sigma.imax();
        if polar.sigma[lead] <= tol * scale {
            0.0
        } else {
            polar.right.column(lead).dotc(&polar.left.column(lead)).arg()
        }
    };
    let residual = frobenius(&(a - &polar.abs * Complex64::from_polar(1.0, theta)));
    (residual <= tol * scale).then_some(theta)
}
