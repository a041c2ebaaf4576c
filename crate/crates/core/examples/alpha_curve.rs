//! Tabulate α(δ) with the minimizing z, and trace one objective curve.

use speedlimit::{alpha, minimize_objective, objective};

fn main() -> speedlimit::Result<()> {
    println!("{:>6} {:>12} {:>12}", "delta", "z_min", "alpha");
    for k in 0..=10 {
        let delta = k as f64 / 10.0;
        let m = minimize_objective(delta)?;
        println!("{delta:>6.2} {:>12.8} {:>12.8}", m.z_min, m.alpha);
    }

    let delta: f64 = 0.5;
    let edge = delta.sqrt();
    println!("\nf_0.5(z) on [-√0.5, √0.5]:");
    for k in 0..=8 {
        let z = -edge + 2.0 * edge * k as f64 / 8.0;
        println!("  z = {z:>8.4}  f = {:.6}", objective(delta, z)?);
    }
    println!("minimum α(0.5) = {:.10}", alpha(delta)?);
    Ok(())
}
