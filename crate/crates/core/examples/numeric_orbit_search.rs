//! Closed orbits by ray shooting, for a wedge whose opening angle is not pi/N.

use wedge_cot::geometry::{IonPosition, WedgeGeometry};
use wedge_cot::orbits::{enumerate_analytic, find_numeric, OrbitSearchConfig};

fn main() -> wedge_cot::Result<()> {
    let wedge = WedgeGeometry::new(0.7)?;
    let ion = IonPosition::new(200.0, 0.25)?;
    let cfg = OrbitSearchConfig::for_wedge(&wedge);
    let search = find_numeric(&wedge, &ion, &cfg)?;

    println!("alpha = 0.7 rad, up to {} reflections", cfg.max_reflections);
    for o in &search.orbits {
        println!(
            "j={:<2} phi_out={:.12} phi_ret={:.12} m={} L={:.9}",
            o.index, o.phi_out, o.phi_ret, o.reflections, o.length
        );
    }
    println!(
        "{} brackets skipped, {} singular launches",
        search.skipped.len(),
        search.singular_samples
    );

    // on a pi/N wedge the search must agree with the image construction
    let wedge = WedgeGeometry::from_n(6)?;
    let numeric = find_numeric(&wedge, &ion, &OrbitSearchConfig::for_wedge(&wedge))?.orbits;
    let analytic = enumerate_analytic(6, &ion)?;
    let worst = numeric
        .iter()
        .zip(&analytic)
        .map(|(a, b)| (a.length - b.length).abs() / b.length)
        .fold(0.0, f64::max);
    println!(
        "pi/6: {} numeric vs {} analytic orbits, worst length error {worst:.1e}",
        numeric.len(),
        analytic.len()
    );
    Ok(())
}
