//! States that attain the Margolus–Levitin bound, and a checker for the
//! structural conditions that characterize them.
//!
//! A state `ρ` evolving under `H` saturates the bound at fidelity `δ` iff
//!
//! 1. its support lies in `𝓔₀ ⊕ 𝓔₁`, the eigenspaces of two energies
//!    `E₀ < E₁`;
//! 2. every eigenvector with nonzero weight has ground population
//!    `(1 − z_δ)/2` and excited population `(1 + z_δ)/2`;
//! 3. the ground and excited components of different eigenvectors are
//!    mutually orthogonal, so each eigenvector evolves in its own
//!    two-dimensional subspace.
//!
//! The last condition caps the rank at `min(dim 𝓔₀, dim 𝓔₁)`; in particular no
//! full-rank state saturates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{
    self, c, ensure_dim, frobenius, hermitian_eig, trace, trace_norm,
    unimodular_proportionality_check, ComplexMatrix, ComplexVector, DEGENERACY_TOL,
    RANK_THRESHOLD,
};
use crate::mlbound::minimize_objective;
use crate::states::{
    evolve, expected_energy, fidelity, level_populations, validate_weights, DensityMatrix,
    Hamiltonian,
};

/// Default tolerance for every saturation residual.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Orthonormality and eigenspace-membership tolerance for pairing vectors.
pub const PAIRING_TOL: f64 = 1e-10;

/// `z_δ`, the minimizer of the objective.
pub fn z_for_delta(delta: f64) -> Result<f64> {
    Ok(minimize_objective(delta)?.z_min)
}

/// Ingredients of a saturating state: a Hamiltonian, the two levels it
/// populates, a fidelity, the spectrum of the state and, for each eigenvector,
/// the pair `(|E₀ʲ⟩, |E₁ʲ⟩)` of energy eigenvectors it superposes.
#[derive(Clone, Debug)]
pub struct SaturatingSpec {
    pub hamiltonian: Hamiltonian,
    pub level0: usize,
    pub level1: usize,
    pub delta: f64,
    pub weights: Vec<f64>,
    pub pairing: Vec<(ComplexVector, ComplexVector)>,
}

impl SaturatingSpec {
    /// Pair the first `weights.len()` basis vectors of each level.
    pub fn with_level_bases(
        hamiltonian: Hamiltonian,
        level0: usize,
        level1: usize,
        delta: f64,
        weights: Vec<f64>,
    ) -> Result<Self> {
        let b0 = hamiltonian.level(level0)?.basis.clone();
        let b1 = hamiltonian.level(level1)?.basis.clone();
        let r = weights.len();
        let max_rank = b0.ncols().min(b1.ncols());
        if r > max_rank {
            return Err(Error::RankBoundViolation { rank: r, max_rank });
        }
        let pairing = (0..r)
            .map(|j| (b0.column(j).into_owned(), b1.column(j).into_owned()))
            .collect();
        Ok(Self {
            hamiltonian,
            level0,
            level1,
            delta,
            weights,
            pairing,
        })
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn energies(&self) -> Result<(f64, f64)> {
        Ok((
            self.hamiltonian.level(self.level0)?.energy,
            self.hamiltonian.level(self.level1)?.energy,
        ))
    }

    /// The same data viewed under `−H`: levels are renumbered and the roles
    /// of the two members of each pair swap.
    pub fn time_reversed(&self) -> Self {
        let top = self.hamiltonian.levels().len() - 1;
        Self {
            hamiltonian: self.hamiltonian.negated(),
            level0: top - self.level1,
            level1: top - self.level0,
            delta: self.delta,
            weights: self.weights.clone(),
            pairing: self
                .pairing
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        let (e0, e1) = self.energies()?;
        if e1 <= e0 {
            return Err(Error::LevelOrder {
                level0: self.level0,
                level1: self.level1,
                energy0: e0,
                energy1: e1,
            });
        }
        if self.delta.is_nan() || !(0.0..=1.0).contains(&self.delta) {
            return Err(Error::Domain(format!("fidelity must lie in [0, 1], got {}", self.delta)));
        }
        if self.weights.len() != self.pairing.len() || self.weights.is_empty() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} pairs",
                self.weights.len(),
                self.pairing.len()
            )));
        }
        if self.weights.iter().any(|&p| p <= 0.0) {
            return Err(Error::InvalidWeights("weights must be strictly positive".into()));
        }
        validate_weights(&self.weights)?;
        let l0 = self.hamiltonian.level(self.level0)?;
        let l1 = self.hamiltonian.level(self.level1)?;
        let max_rank = l0.multiplicity().min(l1.multiplicity());
        if self.rank() > max_rank {
            return Err(Error::RankBoundViolation {
                rank: self.rank(),
                max_rank,
            });
        }
        let dim = self.hamiltonian.dim();
        let mut all = Vec::with_capacity(2 * self.rank());
        for (j, (v0, v1)) in self.pairing.iter().enumerate() {
            ensure_dim(dim, v0.len())?;
            ensure_dim(dim, v1.len())?;
            for (v, level, index) in [(v0, l0, self.level0), (v1, l1, self.level1)] {
                let residual = (v - &level.projector * v).norm();
                if residual > PAIRING_TOL {
                    return Err(Error::NotInEigenspace {
                        index: j,
                        level: index,
                        residual,
                    });
                }
            }
            all.push(v0.clone());
            all.push(v1.clone());
        }
        let mut residual = 0.0_f64;
        for (a, u) in all.iter().enumerate() {
            for (b, v) in all.iter().enumerate() {
                let expected = if a == b { 1.0 } else { 0.0 };
                residual = residual.max((u.dotc(v) - c(expected, 0.0)).norm());
            }
        }
        if residual > PAIRING_TOL {
            return Err(Error::NonOrthogonalPairing { residual });
        }
        Ok(())
    }

    fn build(&self, ground_amp: f64, excited_amp: f64) -> Result<DensityMatrix> {
        let vectors: Vec<ComplexVector> = self
            .pairing
            .iter()
            .map(|(v0, v1)| v0 * c(ground_amp, 0.0) + v1 * c(excited_amp, 0.0))
            .collect();
        DensityMatrix::from_ensemble(&self.weights, &vectors)
    }
}

/// `ρ = Σ p_j |ψ_j⟩⟨ψ_j|` with `|ψ_j⟩ = √((1−z_δ)/2)|E₀ʲ⟩ + √((1+z_δ)/2)|E₁ʲ⟩`.
pub fn construct_saturating_state(spec: &SaturatingSpec) -> Result<DensityMatrix> {
    spec.validate()?;
    let z = z_for_delta(spec.delta)?;
    spec.build(((1.0 - z) / 2.0).sqrt(), ((1.0 + z) / 2.0).sqrt())
}

/// Saturating state for the dual bound, with `level1` read as the top level
/// `E_m`: `|ψ_j⟩ = √((1+z_δ)/2)|E₀ʲ⟩ + √((1−z_δ)/2)|E_mʲ⟩`.
pub fn construct_dual_saturating_state(spec: &SaturatingSpec) -> Result<DensityMatrix> {
    spec.validate()?;
    let z = z_for_delta(spec.delta)?;
    spec.build(((1.0 + z) / 2.0).sqrt(), ((1.0 - z) / 2.0).sqrt())
}

/// `τ* = α(δ)/(E − E₀)` for a state built from `spec`, where
/// `E − E₀ = (1 + z_δ)(E₁ − E₀)/2`. The dual construction has the same time.
pub fn saturation_time(spec: &SaturatingSpec) -> Result<f64> {
    let (e0, e1) = spec.energies()?;
    let m = minimize_objective(spec.delta)?;
    if m.boundary {
        return Err(Error::Domain(
            "at fidelity 1 the saturating state is stationary; there is no positive saturation time"
                .into(),
        ));
    }
    Ok(m.alpha / ((1.0 + m.z_min) * (e1 - e0) / 2.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportCheck {
    pub pass: bool,
    /// Levels with nonzero population, ascending.
    pub populated_levels: Vec<usize>,
    /// `‖(𝟙 − P₀ − P₁)ρ‖_F`.
    pub leakage: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeCheck {
    pub pass: bool,
    /// `(1 − z_δ)/2`.
    pub expected_ground_population: f64,
    /// Per eigenvector: `max(|‖P₀ψ‖² − (1−z)/2|, |‖P₁ψ‖² − (1+z)/2|)`.
    pub residuals: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityCheck {
    pub pass: bool,
    /// Largest overlap between energy components of distinct eigenvectors.
    pub max_overlap: f64,
}

/// Measured compressions of `U_τ` and of the level projectors onto `supp ρ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompressionCheck {
    /// `θ` with `√ρ U_τ √ρ = e^{iθ}|√ρ U_τ √ρ|`; absent when that operator
    /// vanishes or is not a phase times a positive operator.
    pub phase: Option<f64>,
    /// `tr|√ρ U_τ √ρ|`.
    pub sqrt_compression_trace_norm: f64,
    /// `‖P U_τ P − √δ e^{iθ} P‖_F`, or `‖P U_τ P‖_F` when the phase is absent
    /// because `√ρ U_τ √ρ` vanishes.
    pub residual: f64,
    /// `‖√ρ U_τ √ρ − c ρ‖_F` with `c = ((1−z)e^{−iτE₀} + (1+z)e^{−iτE₁})/2`.
    pub sufficiency_residual: Option<f64>,
    /// `tr(P P₀ P)/r` and `tr(P P₁ P)/r`.
    pub q0: f64,
    pub q1: f64,
    /// `max_i ‖P P_i P − q_i P‖_F`.
    pub proportionality_residual: f64,
    /// The coefficients predicted from `√δ e^{iθ}` and the two phases `e^{−iτE_i}`.
    pub q0_predicted: Option<ComplexValue>,
    pub q1_predicted: Option<ComplexValue>,
    pub q_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaturationReport {
    pub delta: f64,
    pub tau_star: f64,
    pub tol: f64,
    pub z_delta: f64,
    pub condition_i: SupportCheck,
    pub condition_ii: AmplitudeCheck,
    pub condition_iii: OrthogonalityCheck,
    pub compression: CompressionCheck,
    /// `F(ρ, ρ_τ)`.
    pub fidelity_at_tau: f64,
    /// `τ(E − E₀) − α(δ)`.
    pub bound_gap: f64,
    pub saturates: bool,
}

/// Eigenbasis of `supp ρ` in which `√ρ P₀ √ρ` is diagonal. Inside each
/// degenerate block of `ρ` the basis is not unique; rotate it to diagonalize
/// the compression of `P₀`.
fn resolved_support_basis(rho: &DensityMatrix, p0: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut basis = rho.support_basis();
    let weights = rho.eigenvalues();
    let r = basis.ncols();
    let mut start = 0;
    while start < r {
        let mut end = start + 1;
        while end < r && (weights[start] - weights[end]).abs() <= DEGENERACY_TOL {
            end += 1;
        }
        if end - start > 1 {
            let block = basis.columns(start, end - start).into_owned();
            let compressed = matcore::hermitian_part(&(block.adjoint() * p0 * &block));
            let eig = hermitian_eig(&compressed)?;
            let rotated = block * eig.eigenvectors;
            basis.columns_mut(start, end - start).copy_from(&rotated);
        }
        start = end;
    }
    Ok(basis)
}

fn unit(v: ComplexVector) -> Option<ComplexVector> {
    let n = v.norm();
    (n > 1e-12).then(|| v.unscale(n))
}

/// Test `ρ` against the saturation conditions at time `tau` and fidelity
/// `delta`.
pub fn check_saturation(
    rho: &DensityMatrix,
    h: &Hamiltonian,
    tau: f64,
    delta: f64,
    tol: f64,
) -> Result<SaturationReport> {
    ensure_dim(h.dim(), rho.dim())?;
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    let minimum = minimize_objective(delta)?;
    let z = minimum.z_min;
    let dim = rho.dim();

    let populations = level_populations(rho, h)?;
    let populated: Vec<usize> = (0..populations.len())
        .filter(|&k| populations[k] > RANK_THRESHOLD)
        .collect();
    let ground = populated[0];
    let excited = populated
        .get(1)
        .copied()
        .or_else(|| (ground + 1 < h.levels().len()).then_some(ground + 1));
    let p0 = h.levels()[ground].projector.clone();
    let p1 = excited
        .map(|k| h.levels()[k].projector.clone())
        .unwrap_or_else(|| ComplexMatrix::zeros(dim, dim));
    let e0 = h.levels()[ground].energy;
    let e1 = excited.map(|k| h.levels()[k].energy);

    let leakage = frobenius(&((matcore::identity(dim) - &p0 - &p1) * rho.matrix()));
    let condition_i = SupportCheck {
        pass: populated.len() <= 2 && leakage <= tol,
        populated_levels: populated,
        leakage,
    };

    let basis = resolved_support_basis(rho, &p0)?;
    let target0 = (1.0 - z) / 2.0;
    let target1 = (1.0 + z) / 2.0;
    let mut residuals = Vec::with_capacity(basis.ncols());
    let mut ground_parts = Vec::new();
    let mut excited_parts = Vec::new();
    for psi in basis.column_iter() {
        let psi = psi.into_owned();
        let g = &p0 * &psi;
        let e = &p1 * &psi;
        residuals.push((g.norm_squared() - target0).abs().max((e.norm_squared() - target1).abs()));
        ground_parts.push(unit(g));
        excited_parts.push(unit(e));
    }
    let condition_ii = AmplitudeCheck {
        pass: residuals.iter().all(|&r| r <= tol),
        expected_ground_population: target0,
        residuals,
    };

    let overlap = |a: &Option<ComplexVector>, b: &Option<ComplexVector>| match (a, b) {
        (Some(a), Some(b)) => a.dotc(b).norm(),
        _ => 0.0,
    };
    let mut max_overlap = 0.0_f64;
    for j in 0..ground_parts.len() {
        for k in 0..ground_parts.len() {
            if j == k {
                continue;
            }
            max_overlap = max_overlap
                .max(overlap(&ground_parts[j], &ground_parts[k]))
                .max(overlap(&excited_parts[j], &excited_parts[k]))
                .max(overlap(&ground_parts[j], &excited_parts[k]));
        }
    }
    let condition_iii = OrthogonalityCheck {
        pass: max_overlap <= tol,
        max_overlap,
    };

    let compression = compression_check(rho, h, tau, delta, z, (&p0, &p1), (e0, e1), tol);

    let evolved = evolve(rho, h, tau)?;
    let fidelity_at_tau = fidelity(rho, &evolved)?;
    let energy = expected_energy(rho, h)?;
    let bound_gap = tau * (energy - e0) - minimum.alpha;
    let saturates = condition_i.pass
        && condition_ii.pass
        && condition_iii.pass
        && (fidelity_at_tau - delta).abs() <= tol
        && bound_gap.abs() <= tol;

    Ok(SaturationReport {
        delta,
        tau_star: tau,
        tol,
        z_delta: z,
        condition_i,
        condition_ii,
        condition_iii,
        compression,
        fidelity_at_tau,
        bound_gap,
        saturates,
    })
}

#[allow(clippy::too_many_arguments)]
fn compression_check(
    rho: &DensityMatrix,
    h: &Hamiltonian,
    tau: f64,
    delta: f64,
    z: f64,
    (p0, p1): (&ComplexMatrix, &ComplexMatrix),
    (e0, e1): (f64, Option<f64>),
    tol: f64,
) -> CompressionCheck {
    let u = h.propagator(tau);
    let root = rho.sqrt();
    let sandwiched = &root * &u * &root;
    let tn = trace_norm(&sandwiched);
    let support = rho.support_projector();
    let pup = &support * &u * &support;

    let (phase, residual) = if tn <= tol {
        (None, frobenius(&pup))
    } else {
        let phase = unimodular_proportionality_check(&sandwiched, tol);
        let theta = phase.unwrap_or_else(|| trace(&sandwiched).arg());
        let target = &support * Complex64::from_polar(delta.sqrt(), theta);
        (phase, frobenius(&(&pup - target)))
    };

    let a = Complex64::from_polar(1.0, -tau * e0);
    let b = e1.map(|e1| Complex64::from_polar(1.0, -tau * e1));
    let sufficiency_residual = b.map(|b| {
        let coefficient = (a * (1.0 - z) + b * (1.0 + z)) * 0.5;
        frobenius(&(&sandwiched - rho.matrix() * coefficient))
    });

    let r = rho.rank().max(1) as f64;
    let c0 = &support * p0 * &support;
    let c1 = &support * p1 * &support;
    let q0 = trace(&c0).re / r;
    let q1 = trace(&c1).re / r;
    let proportionality_residual = frobenius(&(&c0 - &support * c(q0, 0.0)))
        .max(frobenius(&(&c1 - &support * c(q1, 0.0))));

    let scale = match phase {
        Some(theta) => Some(Complex64::from_polar(delta.sqrt(), theta)),
        None if tn <= tol => Some(c(0.0, 0.0)),
        None => None,
    };
    let predicted = match (scale, b) {
        (Some(s), Some(b)) if (a - b).norm() > 1e-12 => Some(((s - b) / (a - b), (s - a) / (b - a))),
        _ => None,
    };
    let q_residual =
        predicted.map(|(q0p, q1p)| (c(q0, 0.0) - q0p).norm().max((c(q1, 0.0) - q1p).norm()));

    CompressionCheck {
        phase,
        sqrt_compression_trace_norm: tn,
        residual,
        sufficiency_residual,
        q0,
        q1,
        proportionality_residual,
        q0_predicted: predicted.map(|p| p.0.into()),
        q1_predicted: predicted.map(|p| p.1.into()),
        q_residual,
    }
}

/// Convenience: the dual-bound counterpart of [`check_saturation`], which is
/// the ordinary check under `−H`.
pub fn check_dual_saturation(
    rho: &DensityMatrix,
    h: &Hamiltonian,
    tau: f64,
    delta: f64,
    tol: f64,
) -> Result<SaturationReport> {
    check_saturation(rho, &h.negated(), tau, delta, tol)
}
