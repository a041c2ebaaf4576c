//! The dual bound uses the top of the populated spectrum. A state built for
//! it sits close to the top level and is limited by E_m − E rather than E − E₀.

use speedlimit::saturation::check_dual_saturation;
use speedlimit::{
    construct_dual_saturating_state, dual_ml_bound, minimal_time_to_fidelity, ml_bound,
    Hamiltonian, SaturatingSpec,
};

fn main() -> speedlimit::Result<()> {
    let h = Hamiltonian::diagonal(&[0.0, 1.0, 2.5])?;
    let delta = 0.4;
    let spec = SaturatingSpec::with_level_bases(h.clone(), 1, 2, delta, vec![1.0])?;
    let rho = construct_dual_saturating_state(&spec)?;

    let standard = ml_bound(&rho, &h, delta)?;
    let dual = dual_ml_bound(&rho, &h, delta)?;
    let reached = minimal_time_to_fidelity(&rho, &h, delta, 20.0)?.expect("reaches delta");
    println!("energy {:.6}, populated range [{}, {}]", standard.energy, standard.ground_energy, standard.top_energy);
    println!("standard bound {:?}", standard.tau_lower);
    println!("dual bound     {:?}", dual.tau_lower);
    println!("first F = δ    {reached:.12}");

    let report = check_dual_saturation(&rho, &h, reached, delta, 1e-8)?;
    println!("dual saturation verdict: {}", report.saturates);
    Ok(())
}
