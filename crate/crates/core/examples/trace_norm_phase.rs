//! |tr A| ≤ tr|A|, with equality exactly when A = e^{iθ}P for P ≥ 0.
//! The phase is recovered from the equality case.

use num_complex::Complex64;
use speedlimit::matcore::{trace, trace_norm, unimodular_proportionality_check};
use speedlimit::sampling::{ginibre, sample_rng};

fn main() {
    let mut rng = sample_rng(3, 0);
    let a = ginibre(&mut rng, 4, 4);
    println!("generic A: |tr A| = {:.6}, tr|A| = {:.6}", trace(&a).norm(), trace_norm(&a));
    println!("  phase check: {:?}", unimodular_proportionality_check(&a, 1e-10));

    let g = ginibre(&mut rng, 4, 2);
    let theta = 2.1;
    let rotated = &g * g.adjoint() * Complex64::from_polar(1.0, theta);
    println!(
        "e^(i·{theta})P: |tr A| = {:.12}, tr|A| = {:.12}",
        trace(&rotated).norm(),
        trace_norm(&rotated)
    );
    println!("  recovered θ = {:?}", unimodular_proportionality_check(&rotated, 1e-10));
}
