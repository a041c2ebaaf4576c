//! Numerical toolkit for the Margolus–Levitin quantum speed limit on mixed
//! states.
//!
//! A state `ρ` evolving under a time-independent Hamiltonian `H` needs at
//! least
//!
//! ```text
//! τ ≥ α(δ) / (E − E₀)
//! ```
//!
//! to reach Uhlmann–Jozsa fidelity `δ` with its initial value, where `E` is
//! the mean energy and `E₀` the lowest populated energy. The crate evaluates
//! `α`, the bound and its dual `α(δ)/(E_m − E)`, builds every state that
//! attains the bound, checks arbitrary states against the saturation
//! conditions, and provides the sharper purity-dependent bound for qubits.
//!
//! ```
//! use speedlimit::{alpha, construct_saturating_state, saturation_time, Hamiltonian, SaturatingSpec};
//!
//! let h = Hamiltonian::diagonal(&[0.0, 0.0, 1.0, 1.0]).unwrap();
//! let spec = SaturatingSpec::with_level_bases(h, 0, 1, 0.5, vec![0.6, 0.4]).unwrap();
//! let rho = construct_saturating_state(&spec).unwrap();
//! assert_eq!(rho.rank(), 2);
//! assert!(saturation_time(&spec).unwrap() > 0.0);
//! assert!((alpha(0.0).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
//! ```

pub mod commands;
pub mod error;
pub mod io;
pub mod matcore;
pub mod mlbound;
pub mod qubit;
pub mod sampling;
pub mod saturation;
pub mod states;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, ComplexVector};
pub use mlbound::{
    alpha, dual_ml_bound, minimal_time_to_fidelity, minimize_objective, ml_bound, objective,
    objective_derivative, BoundReport, BoundVariant, ObjectiveMinimum, TimeBound,
};
pub use qubit::{
    bloch_from_state, construct_saturating_qubit, hubner_fidelity, qubit_alpha, qubit_ml_bound,
    state_from_bloch, BlochVector, QubitObjectiveMinimum,
};
pub use saturation::{
    check_saturation, construct_dual_saturating_state, construct_saturating_state,
    saturation_time, z_for_delta, SaturatingSpec, SaturationReport,
};
pub use states::{evolve, fidelity, purify, DensityMatrix, Hamiltonian, Level};
