//! Purity makes the qubit bound sharper: compare α(δ,℘) against α(δ) and
//! check that the saturating qubit reaches δ exactly at the predicted time.

use speedlimit::qubit::{min_reachable_fidelity, saturating_qubit_time};
use speedlimit::{
    alpha, bloch_from_state, construct_saturating_qubit, minimal_time_to_fidelity, qubit_alpha,
    Hamiltonian,
};

fn main() -> speedlimit::Result<()> {
    let h = Hamiltonian::diagonal(&[0.0, 1.0])?;
    for purity in [1.0, 0.9, 0.75] {
        let floor = min_reachable_fidelity(purity);
        println!("purity {purity}: fidelities below {floor:.3} are unreachable");
        for delta in [0.5, 0.7, 0.9] {
            if delta < floor {
                continue;
            }
            let sharp = qubit_alpha(delta, purity)?.alpha_p;
            let rho = construct_saturating_qubit(delta, purity, &h)?;
            let b = bloch_from_state(&rho, &h)?;
            let predicted = saturating_qubit_time(delta, purity, 1.0)?;
            let reached = minimal_time_to_fidelity(&rho, &h, delta, 50.0)?.unwrap_or(f64::NAN);
            println!(
                "  δ = {delta}: α = {:.6}, α_℘ = {sharp:.6}, Bloch z = {:+.4}, τ predicted {predicted:.8}, reached {reached:.8}",
                alpha(delta)?,
                b.z
            );
        }
    }
    Ok(())
}
