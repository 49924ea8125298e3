//! How the oscillation amplitude depends on the ion's distance from the apex
//! and on its angle between the surfaces.

use std::f64::consts::PI;

use wedge_cot::geometry::{IonPosition, WedgeGeometry};
use wedge_cot::spectrum::{Polarization, SpectrumSettings};
use wedge_cot::sweeps::{position_sweep, SweepGrid, SweepVariable};

fn band_max(values: &[f64], bands: usize) -> Vec<f64> {
    values
        .chunks(values.len().div_ceil(bands))
        .map(|c| c.iter().fold(0.0, |m: f64, v| m.max(v.abs())))
        .collect()
}

fn main() -> wedge_cot::Result<()> {
    let wedge = WedgeGeometry::from_n(5)?;
    let ion = IonPosition::new(200.0, PI / 15.0)?;

    let rho = SweepGrid::new(SweepVariable::Rho, 50.0, 800.0, 1024)?;
    let data = position_sweep(&rho, 1.0, &wedge, &ion, &SpectrumSettings::default())?;
    let osc = data.column("sigma_osc").expect("sigma_osc column");
    println!(
        "rho 50-800 a0 in 5 bands, max |sigma_osc|: {:.3?}",
        band_max(&osc, 5)
    );

    for (name, pol) in [("x", Polarization::x()), ("y", Polarization::y())] {
        let settings = SpectrumSettings {
            polarization: pol,
            ..Default::default()
        };
        let g = settings.beta_guard;
        let beta = SweepGrid::new(SweepVariable::Beta, g, wedge.opening_angle() - g, 1024)?;
        let data = position_sweep(&beta, 1.0, &wedge, &ion, &settings)?;
        let osc = data.column("sigma_osc").expect("sigma_osc column");
        println!(
            "{name}-pol beta thirds (left, middle, right): {:.3?}",
            band_max(&osc, 3)
        );
    }
    Ok(())
}
