//! Exact closed-orbit catalog for the pi/5 wedge with the ion at beta = pi/15.
//!
//! `cargo run --example orbit_catalog -- 7 pi/21` picks another wedge and angle.

use wedge_cot::angle::PiFraction;
use wedge_cot::orbits::enumerate_exact;

fn main() -> wedge_cot::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args
        .next()
        .map_or(Ok(5), |s| s.parse())
        .expect("N must be a positive integer");
    let beta: PiFraction = args.next().as_deref().unwrap_or("pi/15").parse()?;

    println!("alpha = pi/{n}, beta = {beta}");
    println!(
        "{:>3} {:>10} {:>10} {:>3} {:>18}",
        "j", "phi_out", "phi_ret", "m", "L/rho"
    );
    for o in enumerate_exact(n, beta)? {
        println!(
            "{:>3} {:>10} {:>10} {:>3} {:>18.15}",
            o.index,
            o.phi_out.to_string(),
            o.phi_ret.to_string(),
            o.reflections,
            o.to_orbit(1.0).length
        );
    }
    Ok(())
}
