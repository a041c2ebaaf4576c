//! The Margolus–Levitin bound `τ ≥ α(δ)/(E − E₀)` and its dual.
//!
//! `α(δ)` is the minimum of
//!
//! ```text
//! f_δ(z) = (1 + z) · arcsin √((1 − δ)/(1 − z²)),   z² ≤ δ.
//! ```
//!
//! The minimum lies in `[−√δ, 0]` and, for `0 < δ < 1`, is the unique zero of
//! `f'_δ` in the open interval `(−√δ, 0)`: the derivative diverges to `−∞` at
//! the left end and tends to `arcsin √(1 − δ) > 0` at the right end, and it is
//! positive at each of its own stationary points, so it crosses zero once.
//! [`minimize_objective`] brackets that crossing and bisects it.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::ensure_dim;
use crate::states::{self, expected_energy, populated_energy_range, DensityMatrix, Hamiltonian};

/// Slack on the constraint `z² ≤ δ`.
pub const DOMAIN_SLACK: f64 = 1e-14;
/// Fidelities this close to 0 or 1 get the analytic boundary values.
pub const BOUNDARY_EPS: f64 = 1e-12;
/// Bisection stops once the bracket on `z_δ` is narrower than this.
pub const BISECTION_WIDTH: f64 = 1e-14;
/// `E − E₀` at or below this is treated as zero.
pub const ENERGY_GAP_TOL: f64 = 1e-12;

fn check_delta(delta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&delta) {
        Ok(())
    } else {
        Err(Error::Domain(format!("fidelity must lie in [0, 1], got {delta}")))
    }
}

/// `√((1−δ)/(1−z²))`, clamped into `[0, 1]`.
fn arcsin_argument(delta: f64, z: f64) -> f64 {
    ((1.0 - delta) / (1.0 - z * z)).sqrt().min(1.0)
}

/// `f_δ(z)`.
pub fn objective(delta: f64, z: f64) -> Result<f64> {
    check_delta(delta)?;
    if !z.is_finite() || z * z > delta + DOMAIN_SLACK {
        return Err(Error::Domain(format!("z = {z} violates z² ≤ δ = {delta}")));
    }
    if delta == 1.0 {
        return Ok(0.0);
    }
    Ok((1.0 + z) * arcsin_argument(delta, z).asin())
}

/// `f'_δ(z)` on the open interval `−√δ < z < 0`.
pub fn objective_derivative(delta: f64, z: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("derivative needs 0 < δ < 1, got {delta}")));
    }
    if !(z > -delta.sqrt() && z < 0.0) {
        return Err(Error::Domain(format!(
            "derivative needs −√δ < z < 0, got z = {z}"
        )));
    }
    Ok(derivative_unchecked(delta, z))
}

fn derivative_unchecked(delta: f64, z: f64) -> f64 {
    let slack = (delta - z * z).max(f64::MIN_POSITIVE);
    arcsin_argument(delta, z).asin() + z * (1.0 - delta).sqrt() / ((1.0 - z) * slack.sqrt())
}

/// Minimizer and minimum of `f_δ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveMinimum {
    pub delta: f64,
    /// `z_δ ∈ [−√δ, 0]`.
    pub z_min: f64,
    /// `α(δ) = f_δ(z_δ)`.
    pub alpha: f64,
    /// Set at `δ = 1`, where the domain degenerates and `z_min = −1` is a
    /// convention; only `alpha = 0` is meaningful there.
    pub boundary: bool,
}

/// Locate `z_δ` and `α(δ)`.
pub fn minimize_objective(delta: f64) -> Result<ObjectiveMinimum> {
    check_delta(delta)?;
    if delta <= BOUNDARY_EPS {
        return Ok(ObjectiveMinimum {
            delta,
            z_min: 0.0,
            alpha: FRAC_PI_2,
            boundary: false,
        });
    }
    if delta >= 1.0 - BOUNDARY_EPS {
        return Ok(ObjectiveMinimum {
            delta,
            z_min: -1.0,
            alpha: 0.0,
            boundary: true,
        });
    }
    let mut lo = -delta.sqrt() * (1.0 - 1e-12);
    let mut hi = -1e-15;
    debug_assert!(derivative_unchecked(delta, lo) < 0.0);
    debug_assert!(derivative_unchecked(delta, hi) > 0.0);
    while hi - lo >= BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if derivative_unchecked(delta, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let z_min = 0.5 * (lo + hi);
    Ok(ObjectiveMinimum {
        delta,
        z_min,
        alpha: objective(delta, z_min)?,
        boundary: false,
    })
}

/// `α(δ)`; strictly decreasing from `π/2` at `δ = 0` to `0` at `δ = 1`.
pub fn alpha(delta: f64) -> Result<f64> {
    Ok(minimize_objective(delta)?.alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundVariant {
    /// `α(δ)/(E − E₀)`.
    Standard,
    /// `α(δ)/(E_m − E)`.
    Dual,
}

/// A lower bound on evolution time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum TimeBound {
    Finite(f64),
    /// The state has no energy spread on the relevant side, so it cannot reach
    /// the requested fidelity at all.
    Unbounded,
}

impl TimeBound {
    pub fn finite(self) -> Option<f64> {
        match self {
            TimeBound::Finite(t) => Some(t),
            TimeBound::Unbounded => None,
        }
    }

    /// Does `tau` respect this bound to within `tol`?
    pub fn admits(self, tau: f64, tol: f64) -> bool {
        match self {
            TimeBound::Finite(t) => tau >= t - tol,
            TimeBound::Unbounded => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub tau_lower: TimeBound,
    /// Expected energy `tr(ρH)`.
    pub energy: f64,
    /// Smallest populated energy.
    pub ground_energy: f64,
    /// Largest populated energy.
    pub top_energy: f64,
    pub delta: f64,
    pub variant: BoundVariant,
}

/// `τ ≥ α(δ)/(E − E₀)` with `E₀` the smallest populated eigenvalue.
pub fn ml_bound(rho: &DensityMatrix, h: &Hamiltonian, delta: f64) -> Result<BoundReport> {
    ensure_dim(h.dim(), rho.dim())?;
    let a = alpha(delta)?;
    let energy = expected_energy(rho, h)?;
    let (ground_energy, top_energy) = populated_energy_range(rho, h)?;
    Ok(BoundReport {
        tau_lower: time_bound(a, energy - ground_energy),
        energy,
        ground_energy,
        top_energy,
        delta,
        variant: BoundVariant::Standard,
    })
}

pub(crate) fn time_bound(alpha: f64, gap: f64) -> TimeBound {
    if gap > ENERGY_GAP_TOL {
        TimeBound::Finite(alpha / gap)
    } else if alpha == 0.0 {
        TimeBound::Finite(0.0)
    } else {
        TimeBound::Unbounded
    }
}

/// `τ ≥ α(δ)/(E_m − E)` with `E_m` the largest populated eigenvalue.
///
/// Evaluated as the standard bound for `−H`: reversing the Hamiltonian runs
/// `ρ_τ` back to `ρ` in the same time, maps `E ↦ −E` and makes `−E_m` the
/// smallest populated energy.
pub fn dual_ml_bound(rho: &DensityMatrix, h: &Hamiltonian, delta: f64) -> Result<BoundReport> {
    let reversed = ml_bound(rho, &h.negated(), delta)?;
    Ok(BoundReport {
        tau_lower: reversed.tau_lower,
        energy: -reversed.energy,
        ground_energy: -reversed.top_energy,
        top_energy: -reversed.ground_energy,
        delta,
        variant: BoundVariant::Dual,
    })
}

/// Bisection stops once the time bracket is narrower than this.
pub const TIME_RESOLUTION: f64 = 1e-12;
/// Grid steps per half period of the fastest Bohr frequency.
const SCAN_STEPS_PER_HALF_PERIOD: f64 = 50.0;
/// A local minimum of `√F − √δ` at or below this counts as reaching `δ`.
const TOUCH_TOL: f64 = 1e-9;

/// Earliest `t ∈ (0, horizon]` with `F(ρ, ρ_t) = δ`, or `None` if none exists.
///
/// Scans `g(t) = √F(ρ, ρ_t) − √δ` on a grid of step `π / (50 (E_max − E_min))`
/// and bisects the first sign change. A grid-level local minimum is refined by
/// golden-section search as well, so that trajectories which only touch the
/// target (as every saturating state does at `δ = 0`) are not skipped.
pub fn minimal_time_to_fidelity(
    rho: &DensityMatrix,
    h: &Hamiltonian,
    delta: f64,
    horizon: f64,
) -> Result<Option<f64>> {
    check_delta(delta)?;
    ensure_dim(h.dim(), rho.dim())?;
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::Domain(format!("horizon must be positive, got {horizon}")));
    }
    let spread = h.spectral_spread();
    if spread <= 0.0 {
        return Err(Error::DegenerateHamiltonian);
    }
    if delta >= 1.0 {
        return Ok(None);
    }
    let target = delta.sqrt();
    let gap = |t: f64| -> Result<f64> {
        let evolved = states::evolve(rho, h, t)?;
        Ok(states::fidelity(rho, &evolved)?.sqrt() - target)
    };

    let step = PI / (SCAN_STEPS_PER_HALF_PERIOD * spread);
    let mut prev2: Option<(f64, f64)> = None;
    let mut prev = (0.0, gap(0.0)?);
    let mut k = 1_u64;
    loop {
        let t = (k as f64 * step).min(horizon);
        let g = gap(t)?;
        if g <= 0.0 {
            return Ok(Some(bisect(&gap, prev.0, t)?));
        }
        if let Some(before) = prev2 {
            if prev.1 < before.1 && prev.1 <= g {
                let (tm, gm) = golden_min(&gap, before.0, t, TIME_RESOLUTION * t.max(1.0))?;
                if gm <= 0.0 {
                    return Ok(Some(bisect(&gap, before.0, tm)?));
                }
                if gm <= TOUCH_TOL {
                    return Ok(Some(tm));
                }
            }
        }
        if t >= horizon {
            return Ok(None);
        }
        prev2 = Some(prev);
        prev = (t, g);
        k += 1;
    }
}

/// Root of `f` in `[lo, hi]` given `f(lo) > 0 ≥ f(hi)`.
fn bisect(f: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    while hi - lo > TIME_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
pub(crate) fn golden_min(
    f: &impl Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    width: f64,
) -> Result<(f64, f64)> {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > width {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
        if x1 >= x2 {
            break;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}
