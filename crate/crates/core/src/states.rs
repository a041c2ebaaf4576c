//! Density matrices, time-independent Hamiltonians and unitary dynamics.
//!
//! Units are ħ = 1 throughout, so energies are angular frequencies.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{
    self, c, clamp_psd_spectrum, ensure_dim, ensure_finite, ensure_square, hermitian_deviation,
    hermitian_eig, hermitian_part, outer, projector, trace, trace_norm, ComplexMatrix,
    ComplexVector, HermitianEig, DEGENERACY_TOL, HERMITIAN_TOL, RANK_THRESHOLD,
};

/// Maximum deviation of `tr ρ` from one.
pub const TRACE_TOL: f64 = 1e-10;

/// A validated quantum state with its spectral decomposition cached.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    // descending, clamped to be nonnegative
    weights: DVector<f64>,
    vectors: ComplexMatrix,
    purity: f64,
    rank: usize,
}

impl DensityMatrix {
    /// Validate and wrap a matrix. Hermiticity drift up to `1e-10` is removed
    /// by symmetrization.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        ensure_square(&matrix)?;
        ensure_finite(&matrix)?;
        let deviation = hermitian_deviation(&matrix);
        if deviation > HERMITIAN_TOL {
            return Err(Error::NonHermitian { deviation });
        }
        let matrix = hermitian_part(&matrix);
        let tr = trace(&matrix).re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace: tr });
        }
        let eig = hermitian_eig(&matrix)?;
        let n = eig.dim();
        let clamped = clamp_psd_spectrum(&eig.eigenvalues)?;
        let weights = DVector::from_iterator(n, (0..n).rev().map(|k| clamped[k]));
        let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, n - 1 - j)]);
        let rank = weights.iter().filter(|&&p| p >= RANK_THRESHOLD).count();
        let purity = matrix.norm_squared();
        Ok(Self {
            matrix,
            weights,
            vectors,
            purity,
            rank,
        })
    }

    /// `|ψ⟩⟨ψ|` for a nonzero vector, normalized first.
    pub fn pure(psi: &ComplexVector) -> Result<Self> {
        let norm = psi.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Domain("state vector must be nonzero".into()));
        }
        let psi = psi.unscale(norm);
        Self::new(outer(&psi, &psi))
    }

    /// `Σ p_j |v_j⟩⟨v_j|` for a probability vector and unit vectors.
    pub fn from_ensemble(weights: &[f64], vectors: &[ComplexVector]) -> Result<Self> {
        if weights.len() != vectors.len() || weights.is_empty() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} vectors",
                weights.len(),
                vectors.len()
            )));
        }
        validate_weights(weights)?;
        let dim = vectors[0].len();
        let mut rho = ComplexMatrix::zeros(dim, dim);
        for (p, v) in weights.iter().zip(vectors) {
            ensure_dim(dim, v.len())?;
            rho += outer(v, v) * c(*p, 0.0);
        }
        Self::new(rho)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::new(matcore::identity(dim).unscale(dim as f64)).expect("identity/dim is a state")
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues `p_j`, descending.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.weights
    }

    /// Eigenvectors `|ψ_j⟩` as columns, matching [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn eigenvector(&self, j: usize) -> ComplexVector {
        self.vectors.column(j).into_owned()
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.purity
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Eigenvectors whose weight is at least the rank threshold.
    pub fn support_basis(&self) -> ComplexMatrix {
        self.vectors.columns(0, self.rank).into_owned()
    }

    /// Orthogonal projector onto `supp ρ`.
    pub fn support_projector(&self) -> ComplexMatrix {
        projector(&self.support_basis())
    }

    /// `√ρ`, built from the cached spectrum.
    pub fn sqrt(&self) -> ComplexMatrix {
        let n = self.dim();
        let scaled = ComplexMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * self.weights[j].sqrt());
        scaled * self.vectors.adjoint()
    }
}

pub(crate) fn validate_weights(weights: &[f64]) -> Result<()> {
    if weights.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::InvalidWeights("weights must be finite and nonnegative".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > TRACE_TOL {
        return Err(Error::InvalidWeights(format!("weights sum to {total}, expected 1")));
    }
    Ok(())
}

/// One eigenvalue of a Hamiltonian together with its eigenspace.
#[derive(Clone, Debug)]
pub struct Level {
    pub energy: f64,
    /// Orthonormal basis of the eigenspace, one vector per column.
    pub basis: ComplexMatrix,
    pub projector: ComplexMatrix,
}

impl Level {
    pub fn multiplicity(&self) -> usize {
        self.basis.ncols()
    }
}

/// A time-independent Hamiltonian with its spectrum grouped into levels.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    matrix: ComplexMatrix,
    levels: Vec<Level>,
}

impl Hamiltonian {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eig(&matrix)?;
        Ok(Self {
            matrix: hermitian_part(&matrix),
            levels: group_levels(&eig),
        })
    }

    pub fn diagonal(energies: &[f64]) -> Result<Self> {
        Self::new(matcore::diag(energies))
    }

    /// `V diag(E) V†` for a unitary `V`.
    pub fn from_spectrum(energies: &[f64], basis: &ComplexMatrix) -> Result<Self> {
        ensure_square(basis)?;
        ensure_dim(basis.nrows(), energies.len())?;
        Self::new(basis * matcore::diag(energies) * basis.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Distinct energies with their eigenspaces, strictly ascending.
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> Result<&Level> {
        self.levels.get(k).ok_or(Error::NoSuchLevel {
            index: k,
            levels: self.levels.len(),
        })
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    /// `E_max - E_min` over the whole spectrum.
    pub fn spectral_spread(&self) -> f64 {
        match (self.levels.first(), self.levels.last()) {
            (Some(lo), Some(hi)) => hi.energy - lo.energy,
            _ => 0.0,
        }
    }

    /// `-H`, sharing the eigenspaces of `H` with the level order reversed.
    pub fn negated(&self) -> Self {
        Self {
            matrix: -self.matrix.clone(),
            levels: self
                .levels
                .iter()
                .rev()
                .map(|l| Level {
                    energy: -l.energy,
                    basis: l.basis.clone(),
                    projector: l.projector.clone(),
                })
                .collect(),
        }
    }

    /// `U_t = e^{-itH} = Σ_k e^{-itE_k} P_k`.
    pub fn propagator(&self, t: f64) -> ComplexMatrix {
        let mut u = ComplexMatrix::zeros(self.dim(), self.dim());
        for level in &self.levels {
            u += &level.projector * Complex64::from_polar(1.0, -t * level.energy);
        }
        u
    }
}

fn group_levels(eig: &HermitianEig) -> Vec<Level> {
    let n = eig.dim();
    let mut levels = Vec::new();
    let mut start = 0;
    while start < n {
        let first = eig.eigenvalues[start];
        let mut end = start + 1;
        while end < n && eig.eigenvalues[end] - first <= DEGENERACY_TOL {
            end += 1;
        }
        let basis = eig.eigenvectors.columns(start, end - start).into_owned();
        let energy = eig.eigenvalues.rows(start, end - start).mean();
        levels.push(Level {
            energy,
            projector: projector(&basis),
            basis,
        });
        start = end;
    }
    levels
}

/// `ρ_t = U_t ρ U_t†`.
pub fn evolve(rho: &DensityMatrix, h: &Hamiltonian, t: f64) -> Result<DensityMatrix> {
    ensure_dim(h.dim(), rho.dim())?;
    if !t.is_finite() {
        return Err(Error::Domain(format!("time must be finite, got {t}")));
    }
    let u = h.propagator(t);
    DensityMatrix::new(&u * rho.matrix() * u.adjoint())
}

/// Uhlmann–Jozsa fidelity `(tr|√ρ₁ √ρ₂|)²`, clamped to `[0, 1]`.
pub fn fidelity(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    ensure_dim(rho1.dim(), rho2.dim())?;
    let root = trace_norm(&(rho1.sqrt() * rho2.sqrt()));
    Ok((root * root).clamp(0.0, 1.0))
}

/// `tr(ρH)`.
pub fn expected_energy(rho: &DensityMatrix, h: &Hamiltonian) -> Result<f64> {
    ensure_dim(h.dim(), rho.dim())?;
    Ok(trace(&(rho.matrix() * h.matrix())).re)
}

/// `tr(P_k ρ)` for every level of `h`.
pub fn level_populations(rho: &DensityMatrix, h: &Hamiltonian) -> Result<Vec<f64>> {
    ensure_dim(h.dim(), rho.dim())?;
    Ok(h.levels()
        .iter()
        .map(|l| trace(&(&l.projector * rho.matrix())).re)
        .collect())
}

/// Indices of the levels with population above `tol`, ascending in energy.
pub fn populated_levels(rho: &DensityMatrix, h: &Hamiltonian, tol: f64) -> Result<Vec<usize>> {
    Ok(level_populations(rho, h)?
        .into_iter()
        .enumerate()
        .filter(|(_, p)| *p > tol)
        .map(|(k, _)| k)
        .collect())
}

/// Smallest and largest populated energies `(E0, E_m)`.
pub fn populated_energy_range(rho: &DensityMatrix, h: &Hamiltonian) -> Result<(f64, f64)> {
    let populated = populated_levels(rho, h, RANK_THRESHOLD)?;
    match (populated.first(), populated.last()) {
        (Some(&lo), Some(&hi)) => Ok((h.levels()[lo].energy, h.levels()[hi].energy)),
        _ => Err(Error::Numerical("state populates no energy level".into())),
    }
}

/// A unit vector in `H ⊗ H` whose first-factor reduction is `source`.
///
/// Components are stored as `w[i·d + a]` for first-factor index `i` and
/// second-factor index `a`.
#[derive(Clone, Debug)]
pub struct Purification {
    pub vector: ComplexVector,
    pub source: DensityMatrix,
}

impl Purification {
    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    /// `(U_t ⊗ 𝟙)|w⟩`.
    pub fn evolved(&self, h: &Hamiltonian, t: f64) -> Result<ComplexVector> {
        let d = self.dim();
        ensure_dim(d, h.dim())?;
        let u = h.propagator(t);
        Ok(ComplexVector::from_fn(d * d, |idx, _| {
            let (i, a) = (idx / d, idx % d);
            (0..d).map(|k| u[(i, k)] * self.vector[k * d + a]).sum()
        }))
    }
}

/// Trace out the second factor of `|w⟩⟨w|`.
pub fn partial_trace_second(w: &ComplexVector, dim: usize) -> Result<ComplexMatrix> {
    ensure_dim(dim * dim, w.len())?;
    Ok(ComplexMatrix::from_fn(dim, dim, |i, k| {
        (0..dim).map(|a| w[i * dim + a] * w[k * dim + a].conj()).sum()
    }))
}

/// Canonical purification `Σ_j √p_j |ψ_j⟩ ⊗ |e_j⟩`.
pub fn purify(rho: &DensityMatrix) -> Purification {
    let d = rho.dim();
    let vector = ComplexVector::from_fn(d * d, |idx, _| {
        let (i, j) = (idx / d, idx % d);
        rho.eigenvectors()[(i, j)] * rho.eigenvalues()[j].sqrt()
    });
    Purification {
        vector,
        source: rho.clone(),
    }
}

/// `|⟨w|w_t⟩|² = |tr(ρ U_t)|²`.
pub fn purified_overlap(w: &Purification, h: &Hamiltonian, t: f64) -> Result<f64> {
    ensure_dim(w.dim(), h.dim())?;
    Ok(trace(&(w.source.matrix() * h.propagator(t))).norm_sqr())
}
