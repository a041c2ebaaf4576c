//! Random states, Hamiltonians and times: neither bound should ever be beaten.
//! Pass a sample count as the first argument (default 2000).

use speedlimit::commands::{validate, ValidateConfig};

fn main() -> speedlimit::Result<()> {
    let count = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("sample count"))
        .unwrap_or(2000);
    let report = validate(&ValidateConfig {
        count,
        dim_min: 2,
        dim_max: 8,
        seed: 42,
        tol: 1e-9,
    })?;
    println!("{} samples, {} violations", report.samples, report.violations.len());
    println!("worst margins: {:?}", report.worst_margins);
    for v in report.violations.iter().take(10) {
        println!("  sample {} {} margin {:?}", v.index, v.check, v.margin);
    }
    Ok(())
}
