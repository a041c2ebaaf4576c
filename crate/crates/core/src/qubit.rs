//! Two-level systems, where the bound can be sharpened by the purity.
//!
//! In the energy eigenbasis a qubit is a Bloch vector `r = (x, y, z)` with
//! `|r|² = 2℘ − 1`. The dynamics precess `r` about the z-axis at angular speed
//! `ω = E₁ − E₀`, so the time to reach fidelity `δ` is governed by
//!
//! ```text
//! f_{δ,℘}(z) = (1 + z) · arcsin √((1 − δ)/(2℘ − 1 − z²)),   z² ≤ δ + 2℘ − 2,
//! ```
//!
//! and `τ ≥ α(δ,℘)/(E − E₀)` with `α(δ,℘) = min f_{δ,℘}`. Unitary orbits of
//! purity `℘` never reach fidelities below `2(1 − ℘)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{c, ComplexMatrix};
use crate::mlbound::{golden_min, time_bound, BoundReport, BoundVariant, BOUNDARY_EPS};
use crate::states::{expected_energy, populated_energy_range, DensityMatrix, Hamiltonian};

/// Grid resolution of the global scan in [`qubit_alpha`].
pub const QUBIT_GRID_POINTS: usize = 100_000;
/// Golden-section refinement width on `z`.
pub const QUBIT_REFINE_WIDTH: f64 = 1e-12;
/// Allowed drift of the Bloch-vector length and of purities being compared.
pub const BLOCH_TOL: f64 = 1e-10;
/// Slack on the feasibility threshold `δ ≥ 2(1 − ℘)`.
pub const FEASIBILITY_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// `℘ = (1 + |r|²)/2`.
    pub purity: f64,
    /// `ω = E₁ − E₀`.
    pub omega: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64, omega: f64) -> Self {
        Self {
            x,
            y,
            z,
            purity: (1.0 + x * x + y * y + z * z) / 2.0,
            omega,
        }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Angle of the projection onto the xy-plane.
    pub fn azimuth(&self) -> f64 {
        self.y.atan2(self.x)
    }

    /// The vector after evolving for time `t`.
    pub fn precessed(&self, t: f64) -> Self {
        let (s, co) = (self.omega * t).sin_cos();
        Self {
            x: co * self.x - s * self.y,
            y: s * self.x + co * self.y,
            ..*self
        }
    }
}

fn qubit_levels(h: &Hamiltonian) -> Result<(f64, f64, ComplexMatrix)> {
    if h.dim() != 2 {
        return Err(Error::NotQubit { dim: h.dim() });
    }
    if h.levels().len() != 2 {
        return Err(Error::DegenerateHamiltonian);
    }
    let e0 = &h.levels()[0];
    let e1 = &h.levels()[1];
    let mut basis = ComplexMatrix::zeros(2, 2);
    basis.set_column(0, &e0.basis.column(0));
    basis.set_column(1, &e1.basis.column(0));
    Ok((e0.energy, e1.energy, basis))
}

/// Bloch vector of `ρ` in the eigenbasis `{|E₀⟩, |E₁⟩}` of `h`.
pub fn bloch_from_state(rho: &DensityMatrix, h: &Hamiltonian) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::NotQubit { dim: rho.dim() });
    }
    let (e0, e1, basis) = qubit_levels(h)?;
    let m = basis.adjoint() * rho.matrix() * &basis;
    let coherence = m[(1, 0)];
    Ok(BlochVector::new(
        2.0 * coherence.re,
        -2.0 * coherence.im,
        m[(1, 1)].re - m[(0, 0)].re,
        e1 - e0,
    ))
}

/// Inverse of [`bloch_from_state`]. The `purity` and `omega` fields of `b`
/// are ignored.
pub fn state_from_bloch(b: &BlochVector, h: &Hamiltonian) -> Result<DensityMatrix> {
    let norm = b.norm();
    if norm.is_nan() || norm > 1.0 + 1e-12 {
        return Err(Error::OutsideBall { norm });
    }
    let (_, _, basis) = qubit_levels(h)?;
    let coherence = c(b.x / 2.0, -b.y / 2.0);
    let m = ComplexMatrix::from_row_slice(
        2,
        2,
        &[
            c((1.0 - b.z) / 2.0, 0.0),
            coherence.conj(),
            coherence,
            c((1.0 + b.z) / 2.0, 0.0),
        ],
    );
    DensityMatrix::new(&basis * m * basis.adjoint())
}

/// Hübner's fidelity along a unitary orbit: `(3 + r·s − 2℘)/2`.
pub fn hubner_fidelity(b1: &BlochVector, b2: &BlochVector) -> Result<f64> {
    let (p1, p2) = (b1.purity, b2.purity);
    if (p1 - p2).abs() > BLOCH_TOL {
        return Err(Error::PurityMismatch {
            first: p1,
            second: p2,
        });
    }
    Ok(((3.0 + b1.dot(b2) - 2.0 * p1) / 2.0).clamp(0.0, 1.0))
}

/// Angle swept by the xy-projection between `b` and `b_t`, from their dot
/// product; `None` when the projection is (numerically) a point.
pub fn precession_angle(b: &BlochVector, b_t: &BlochVector) -> Option<f64> {
    let planar = 2.0 * b.purity - 1.0 - b.z * b.z;
    if planar <= BLOCH_TOL {
        return None;
    }
    Some(((b.dot(b_t) - b.z * b.z) / planar).clamp(-1.0, 1.0).acos())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitObjectiveMinimum {
    pub delta: f64,
    pub purity: f64,
    /// `z_{δ,℘}`.
    pub z_min: f64,
    /// `α(δ,℘)`.
    pub alpha_p: f64,
}

/// Smallest fidelity reachable along a unitary orbit of purity `purity`.
pub fn min_reachable_fidelity(purity: f64) -> f64 {
    2.0 * (1.0 - purity)
}

/// `f_{δ,℘}(z)`; the arcsin argument is clamped into `[0, 1]`.
pub fn qubit_objective(delta: f64, purity: f64, z: f64) -> f64 {
    let planar = 2.0 * purity - 1.0 - z * z;
    let ratio = if planar > 0.0 { (1.0 - delta) / planar } else { 1.0 };
    (1.0 + z) * ratio.clamp(0.0, 1.0).sqrt().asin()
}

fn check_feasible(delta: f64, purity: f64) -> Result<()> {
    if delta.is_nan() || !(0.0..=1.0).contains(&delta) {
        return Err(Error::Domain(format!("fidelity must lie in [0, 1], got {delta}")));
    }
    if purity.is_nan() || !(0.5 - BLOCH_TOL..=1.0 + BLOCH_TOL).contains(&purity) {
        return Err(Error::Domain(format!("qubit purity must lie in [1/2, 1], got {purity}")));
    }
    let min_fidelity = min_reachable_fidelity(purity);
    if delta < min_fidelity - FEASIBILITY_SLACK {
        return Err(Error::InfeasibleFidelity {
            delta,
            purity,
            min_fidelity,
        });
    }
    Ok(())
}

/// `α(δ,℘)` by a dense scan of the whole domain followed by golden-section
/// refinement around the best grid point.
pub fn qubit_alpha(delta: f64, purity: f64) -> Result<QubitObjectiveMinimum> {
    check_feasible(delta, purity)?;
    let purity = purity.clamp(0.5, 1.0);
    let half_width = (delta + 2.0 * purity - 2.0).max(0.0).sqrt();
    let done = |z_min: f64, alpha_p: f64| QubitObjectiveMinimum {
        delta,
        purity,
        z_min,
        alpha_p,
    };
    if delta >= 1.0 - BOUNDARY_EPS {
        return Ok(done(-half_width, 0.0));
    }
    if half_width <= FEASIBILITY_SLACK {
        return Ok(done(0.0, qubit_objective(delta, purity, 0.0)));
    }
    let f = |z: f64| qubit_objective(delta, purity, z);
    let step = 2.0 * half_width / (QUBIT_GRID_POINTS - 1) as f64;
    let at = |k: usize| (-half_width + k as f64 * step).min(half_width);
    let best = (0..QUBIT_GRID_POINTS)
        .map(|k| (k, f(at(k))))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(k, _)| k)
        .unwrap_or(0);
    let lo = at(best.saturating_sub(1));
    let hi = at((best + 1).min(QUBIT_GRID_POINTS - 1));
    let (z, value) = golden_min(&|z| Ok(f(z)), lo, hi, QUBIT_REFINE_WIDTH)?;
    let grid_value = f(at(best));
    Ok(if value <= grid_value {
        done(z, value)
    } else {
        done(at(best), grid_value)
    })
}

/// `τ ≥ α(δ,℘)/(E − E₀)` for a qubit `ρ` of purity `℘`.
pub fn qubit_ml_bound(rho: &DensityMatrix, h: &Hamiltonian, delta: f64) -> Result<BoundReport> {
    if rho.dim() != 2 {
        return Err(Error::NotQubit { dim: rho.dim() });
    }
    qubit_levels(h)?;
    let minimum = qubit_alpha(delta, rho.purity())?;
    let energy = expected_energy(rho, h)?;
    let (ground_energy, top_energy) = populated_energy_range(rho, h)?;
    Ok(BoundReport {
        tau_lower: time_bound(minimum.alpha_p, energy - ground_energy),
        energy,
        ground_energy,
        top_energy,
        delta,
        variant: BoundVariant::Standard,
    })
}

/// The qubit of purity `℘` with Bloch vector `(√(2℘−1−z²), 0, z)`,
/// `z = z_{δ,℘}`, which attains the qubit bound.
pub fn construct_saturating_qubit(delta: f64, purity: f64, h: &Hamiltonian) -> Result<DensityMatrix> {
    let (e0, e1, _) = qubit_levels(h)?;
    let m = qubit_alpha(delta, purity)?;
    let z = m.z_min;
    let x = (2.0 * m.purity - 1.0 - z * z).max(0.0).sqrt();
    state_from_bloch(&BlochVector::new(x, 0.0, z, e1 - e0), h)
}

/// First time the saturating qubit of [`construct_saturating_qubit`] reaches
/// fidelity `δ`: `2 arcsin √((1−δ)/x²)/ω`, i.e. `2α(δ,℘)/((1 + z)ω)`.
pub fn saturating_qubit_time(delta: f64, purity: f64, omega: f64) -> Result<f64> {
    let m = qubit_alpha(delta, purity)?;
    if m.alpha_p == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * m.alpha_p / ((1.0 + m.z_min) * omega))
}
