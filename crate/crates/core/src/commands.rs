//! The operations behind each `speedlimit` subcommand, returning CSV text or
//! serializable reports so they can be driven from code and tests as well as
//! from the binary.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::MatrixJson;
use crate::mlbound::{
    dual_ml_bound, minimal_time_to_fidelity, minimize_objective, ml_bound, objective,
    BoundReport, TimeBound,
};
use crate::qubit::{min_reachable_fidelity, qubit_alpha};
use crate::sampling::{random_density_matrix, random_hamiltonian, sample_rng};
use crate::saturation::{
    check_dual_saturation, check_saturation, construct_dual_saturating_state,
    construct_saturating_state, saturation_time, SaturatingSpec, SaturationReport,
};
use crate::states::{evolve, fidelity, purified_overlap, purify, DensityMatrix, Hamiltonian};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;

/// Process exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Numerical(_) => EXIT_NUMERICAL,
        Error::InfeasibleFidelity { .. }
        | Error::RankBoundViolation { .. }
        | Error::DegenerateHamiltonian => EXIT_INFEASIBLE,
        _ => EXIT_SCHEMA,
    }
}

/// Default fidelities for [`objective_curves_csv`].
pub const DEFAULT_CURVE_DELTAS: [f64; 5] = [0.9, 0.7, 0.5, 0.3, 0.1];
/// Samples per objective curve.
pub const CURVE_SAMPLES: usize = 2001;
/// Default purities for [`qubit_alpha_sweep_csv`].
pub const DEFAULT_PURITIES: [f64; 5] = [1.0, 0.9, 0.8, 0.7, 0.6];

/// 17 significant digits, locale-free.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn uniform_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| {
        if k + 1 == n {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    })
}

fn require_grid(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("grid needs at least 2 points, got {n}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlphaRow {
    pub delta: f64,
    pub z_min: f64,
    pub alpha: f64,
}

/// `α(δ)` on `n` equally spaced fidelities in `[0, 1]`. At `δ = 1` the
/// minimizer is reported as `−1`.
pub fn alpha_sweep(n: usize) -> Result<Vec<AlphaRow>> {
    require_grid(n)?;
    uniform_grid(0.0, 1.0, n)
        .map(|delta| {
            let m = minimize_objective(delta)?;
            Ok(AlphaRow {
                delta,
                z_min: m.z_min,
                alpha: m.alpha,
            })
        })
        .collect()
}

pub fn alpha_sweep_csv(n: usize) -> Result<String> {
    let mut out = String::from("delta,z_min,alpha\n");
    for r in alpha_sweep(n)? {
        let _ = writeln!(out, "{},{},{}", fmt_num(r.delta), fmt_num(r.z_min), fmt_num(r.alpha));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub delta: f64,
    pub z: f64,
    pub f: f64,
    pub is_min: bool,
}

/// `f_δ` sampled at [`CURVE_SAMPLES`] points across `[−√δ, √δ]` for each
/// `δ`, each curve followed by one row at its minimizer.
pub fn objective_curves(deltas: &[f64]) -> Result<Vec<CurveRow>> {
    let mut rows = Vec::with_capacity(deltas.len() * (CURVE_SAMPLES + 1));
    for &delta in deltas {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::Domain(format!(
                "objective curves need fidelities in (0, 1), got {delta}"
            )));
        }
        let edge = delta.sqrt();
        for z in uniform_grid(-edge, edge, CURVE_SAMPLES) {
            rows.push(CurveRow {
                delta,
                z,
                f: objective(delta, z)?,
                is_min: false,
            });
        }
        let m = minimize_objective(delta)?;
        rows.push(CurveRow {
            delta,
            z: m.z_min,
            f: m.alpha,
            is_min: true,
        });
    }
    Ok(rows)
}

pub fn objective_curves_csv(deltas: &[f64]) -> Result<String> {
    let mut out = String::from("delta,z,f,is_min\n");
    for r in objective_curves(deltas)? {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_num(r.delta),
            fmt_num(r.z),
            fmt_num(r.f),
            u8::from(r.is_min)
        );
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QubitAlphaRow {
    pub delta: f64,
    pub purity: f64,
    pub z_min: f64,
    pub alpha: f64,
}

/// `α(δ,℘)` for each purity on `n` fidelities spanning the feasible range
/// `[2(1 − ℘), 1]`.
pub fn qubit_alpha_sweep(n: usize, purities: &[f64]) -> Result<Vec<QubitAlphaRow>> {
    require_grid(n)?;
    let mut rows = Vec::with_capacity(n * purities.len());
    for &purity in purities {
        let lo = min_reachable_fidelity(purity).max(0.0);
        for delta in uniform_grid(lo, 1.0, n) {
            let m = qubit_alpha(delta, purity)?;
            rows.push(QubitAlphaRow {
                delta,
                purity,
                z_min: m.z_min,
                alpha: m.alpha_p,
            });
        }
    }
    Ok(rows)
}

pub fn qubit_alpha_sweep_csv(n: usize, purities: &[f64]) -> Result<String> {
    let mut out = String::from("delta,purity,z_min,alpha\n");
    for r in qubit_alpha_sweep(n, purities)? {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_num(r.delta),
            fmt_num(r.purity),
            fmt_num(r.z_min),
            fmt_num(r.alpha)
        );
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidateConfig {
    pub count: usize,
    pub dim_min: usize,
    pub dim_max: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        Self {
            count: 1000,
            dim_min: 2,
            dim_max: 6,
            seed: 0,
            tol: 1e-9,
        }
    }
}

/// One randomized evolution. Margins are `τ − bound`, so negative values
/// are violations; `None` means the bound is unbounded.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleOutcome {
    pub index: usize,
    pub dim: usize,
    pub rank: usize,
    pub tau: f64,
    pub fidelity: f64,
    pub standard_margin: Option<f64>,
    pub dual_margin: Option<f64>,
    /// `F(ρ, ρ_τ) − |⟨w|w_τ⟩|²`.
    pub purification_margin: f64,
    /// `τ − α(|⟨w|w_τ⟩|²)/(E − E₀)`: the pure-state bound on the purification.
    pub purified_bound_margin: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub check: &'static str,
    pub margin: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct WorstMargins {
    pub standard: Option<f64>,
    pub dual: Option<f64>,
    pub purification: Option<f64>,
    pub purified_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub schema: u32,
    pub config: ValidateConfig,
    pub samples: usize,
    pub violations: Vec<Violation>,
    pub worst_margins: WorstMargins,
}

fn margin(bound: &BoundReport, tau: f64) -> Option<f64> {
    match bound.tau_lower {
        TimeBound::Finite(t) => Some(tau - t),
        TimeBound::Unbounded => None,
    }
}

/// Evaluate sample `index` of the campaign.
pub fn validation_sample(config: &ValidateConfig, index: usize) -> Result<SampleOutcome> {
    let mut rng = sample_rng(config.seed, index as u64);
    let dim = rng.random_range(config.dim_min..=config.dim_max);
    let rho = random_density_matrix(&mut rng, dim)?;
    let h = random_hamiltonian(&mut rng, dim, 1.0)?;
    let spread = h.spectral_spread().max(f64::MIN_POSITIVE);
    let tau = rng.random_range(0.0..1.0) * 2.0 * PI / spread;
    let f = fidelity(&rho, &evolve(&rho, &h, tau)?)?;
    let standard = ml_bound(&rho, &h, f)?;
    let dual = dual_ml_bound(&rho, &h, f)?;
    let overlap = purified_overlap(&purify(&rho), &h, tau)?.min(1.0);
    let purified = ml_bound(&rho, &h, overlap)?;
    Ok(SampleOutcome {
        index,
        dim,
        rank: rho.rank(),
        tau,
        fidelity: f,
        standard_margin: margin(&standard, tau),
        dual_margin: margin(&dual, tau),
        purification_margin: f - overlap,
        purified_bound_margin: margin(&purified, tau),
    })
}

/// Randomized campaign over states, Hamiltonians and times, checking the
/// standard and dual bounds, the purification inequality and the bound on
/// the purification.
pub fn validate(config: &ValidateConfig) -> Result<ValidationReport> {
    if config.dim_min < 2 || config.dim_max > 8 || config.dim_min > config.dim_max {
        return Err(Error::Domain(format!(
            "dimensions must satisfy 2 <= dim-min <= dim-max <= 8, got {}..={}",
            config.dim_min, config.dim_max
        )));
    }
    let outcomes: Vec<SampleOutcome> = (0..config.count)
        .into_par_iter()
        .map(|i| validation_sample(config, i))
        .collect::<Result<_>>()?;

    let tol = config.tol;
    let mut violations = Vec::new();
    let mut worst = WorstMargins::default();
    let fold = |slot: &mut Option<f64>, m: f64| *slot = Some(slot.map_or(m, |w: f64| w.min(m)));
    for o in &outcomes {
        let bound_checks = [
            ("standard", o.standard_margin, &mut worst.standard),
            ("dual", o.dual_margin, &mut worst.dual),
            ("purified_bound", o.purified_bound_margin, &mut worst.purified_bound),
        ];
        for (check, m, slot) in bound_checks {
            match m {
                Some(m) => {
                    fold(slot, m);
                    if m < -tol {
                        violations.push(Violation {
                            index: o.index,
                            check,
                            margin: Some(m),
                        });
                    }
                }
                None => violations.push(Violation {
                    index: o.index,
                    check,
                    margin: None,
                }),
            }
        }
        fold(&mut worst.purification, o.purification_margin);
        if o.purification_margin < -tol {
            violations.push(Violation {
                index: o.index,
                check: "purification",
                margin: Some(o.purification_margin),
            });
        }
    }
    Ok(ValidationReport {
        schema: SCHEMA_VERSION,
        config: config.clone(),
        samples: outcomes.len(),
        violations,
        worst_margins: worst,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructOutput {
    pub schema: u32,
    pub dual: bool,
    pub state: MatrixJson,
    pub report: SaturationReport,
}

/// Build the state described by `spec` and check it at its saturation time.
pub fn construct(spec: &SaturatingSpec, dual: bool, tol: f64) -> Result<ConstructOutput> {
    let rho = if dual {
        construct_dual_saturating_state(spec)?
    } else {
        construct_saturating_state(spec)?
    };
    let tau = saturation_time(spec)?;
    let report = if dual {
        check_dual_saturation(&rho, &spec.hamiltonian, tau, spec.delta, tol)?
    } else {
        check_saturation(&rho, &spec.hamiltonian, tau, spec.delta, tol)?
    };
    Ok(ConstructOutput {
        schema: SCHEMA_VERSION,
        dual,
        state: (&rho).into(),
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutput {
    pub schema: u32,
    pub dual: bool,
    pub report: SaturationReport,
}

pub fn check(
    rho: &DensityMatrix,
    h: &Hamiltonian,
    tau: f64,
    delta: f64,
    tol: f64,
    dual: bool,
) -> Result<CheckOutput> {
    let report = if dual {
        check_dual_saturation(rho, h, tau, delta, tol)?
    } else {
        check_saturation(rho, h, tau, delta, tol)?
    };
    Ok(CheckOutput {
        schema: SCHEMA_VERSION,
        dual,
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimalTimeOutput {
    pub schema: u32,
    pub delta: f64,
    pub horizon: f64,
    /// Earliest time at which the fidelity reaches `delta`, if any.
    pub minimal_time: Option<f64>,
    pub bound: BoundReport,
    pub dual_bound: BoundReport,
}

/// Ten periods of the fastest Bohr frequency.
pub fn default_horizon(h: &Hamiltonian) -> f64 {
    20.0 * PI / h.spectral_spread()
}

pub fn minimal_time(
    rho: &DensityMatrix,
    h: &Hamiltonian,
    delta: f64,
    horizon: Option<f64>,
) -> Result<MinimalTimeOutput> {
    if h.spectral_spread() <= 0.0 {
        return Err(Error::DegenerateHamiltonian);
    }
    let horizon = horizon.unwrap_or_else(|| default_horizon(h));
    Ok(MinimalTimeOutput {
        schema: SCHEMA_VERSION,
        delta,
        horizon,
        minimal_time: minimal_time_to_fidelity(rho, h, delta, horizon)?,
        bound: ml_bound(rho, h, delta)?,
        dual_bound: dual_ml_bound(rho, h, delta)?,
    })
}
