//! Checks the overlap integral and its radial and angular factors against
//! direct quadrature.

use wedge_cot::oracle::run_checks;
use wedge_cot::spectrum::PhysicalConstants;

fn main() -> wedge_cot::Result<()> {
    let samples = std::env::args()
        .nth(1)
        .map_or(8, |s| s.parse().expect("sample count"));
    let checks = run_checks(&PhysicalConstants::default(), samples)?;
    for c in &checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        println!(
            "{mark} {:<26} {:.2e} <= {:.0e}  {}",
            c.name, c.achieved, c.tolerance, c.note
        );
    }
    if checks.iter().any(|c| !c.passed) {
        std::process::exit(1);
    }
    Ok(())
}
