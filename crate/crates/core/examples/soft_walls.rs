//! Hard and soft reflection phases on the same geometry. A soft wall loses
//! pi/2 per bounce instead of pi, which shifts the term of an orbit with m
//! bounces by m*pi/2.

use std::f64::consts::PI;

use wedge_cot::geometry::{IonPosition, WedgeGeometry};
use wedge_cot::spectrum::{sigma_total, ReflectionModel, SpectrumSettings};

fn main() -> wedge_cot::Result<()> {
    let wedge = WedgeGeometry::from_n(3)?;
    let ion = IonPosition::new(150.0, PI / 9.0)?;
    let hard = SpectrumSettings::default();
    let soft = SpectrumSettings {
        reflection: ReflectionModel::soft(),
        ..hard
    };

    println!("{:>8} {:>12} {:>12}", "E_eV", "hard", "soft");
    for i in 0..=16 {
        let e = 0.8 + 0.025 * i as f64;
        let h = sigma_total(e, &wedge, &ion, &hard)?;
        let s = sigma_total(e, &wedge, &ion, &soft)?;
        println!("{e:>8.3} {:>12.5} {:>12.5}", h.sigma, s.sigma);
    }
    Ok(())
}
