//! Build a rank-2 state that attains the bound, then confirm it three ways:
//! the saturation checker, a direct search for the first time F = δ, and the
//! bound itself.

use speedlimit::{
    check_saturation, construct_saturating_state, minimal_time_to_fidelity, ml_bound,
    saturation_time, Hamiltonian, SaturatingSpec,
};

fn main() -> speedlimit::Result<()> {
    let h = Hamiltonian::diagonal(&[0.0, 0.0, 1.5, 1.5, 3.0])?;
    let delta = 0.3;
    let spec = SaturatingSpec::with_level_bases(h.clone(), 0, 1, delta, vec![0.7, 0.3])?;
    let rho = construct_saturating_state(&spec)?;
    println!("rank {} purity {:.6}", rho.rank(), rho.purity());

    let tau = saturation_time(&spec)?;
    let bound = ml_bound(&rho, &h, delta)?.tau_lower.finite().expect("finite bound");
    let reached = minimal_time_to_fidelity(&rho, &h, delta, 2.0 * tau)?.expect("reaches delta");
    println!("predicted τ* = {tau:.12}");
    println!("bound        = {bound:.12}");
    println!("first F = δ  = {reached:.12}");

    let report = check_saturation(&rho, &h, tau, delta, 1e-8)?;
    println!(
        "conditions: support {} amplitudes {} orthogonality {}; F(τ*) = {:.12}; saturates {}",
        report.condition_i.pass,
        report.condition_ii.pass,
        report.condition_iii.pass,
        report.fidelity_at_tau,
        report.saturates
    );
    if let Some(phase) = report.compression.phase {
        println!("compressed propagator phase θ = {phase:.10}");
    }
    Ok(())
}
