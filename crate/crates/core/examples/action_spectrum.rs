//! Recovers closed-orbit lengths from the Fourier transform of `sigma_osc(k)`.

use std::f64::consts::PI;

use wedge_cot::geometry::IonPosition;
use wedge_cot::oracle::{action_spectrum, momentum_grid, sample_sigma_osc, ActionConfig, Window};
use wedge_cot::orbits::enumerate_analytic;
use wedge_cot::spectrum::{PhysicalConstants, Polarization, ReflectionModel};

fn main() -> wedge_cot::Result<()> {
    let ion = IonPosition::new(200.0, PI / 15.0)?;
    let orbits = enumerate_analytic(5, &ion)?;
    let ks = momentum_grid(0.2, 3.0, 4096)?;
    let samples = sample_sigma_osc(
        &ks,
        &orbits,
        &Polarization::x(),
        &ReflectionModel::hard(),
        &PhysicalConstants::default(),
    )?;

    for window in [Window::Rectangular, Window::Hann, Window::BlackmanHarris] {
        let cfg = ActionConfig {
            window,
            ..Default::default()
        };
        let spectrum = action_spectrum(&samples, &cfg)?;
        let lengths: Vec<String> = spectrum
            .peaks
            .iter()
            .map(|p| format!("{:.1}", p.length))
            .collect();
        println!(
            "{:<15} bin {:.2} a0, peaks at {}",
            window.name(),
            spectrum.bin_width,
            lengths.join(" ")
        );
    }
    let mut exact: Vec<f64> = orbits.iter().map(|o| o.length).collect();
    exact.sort_by(f64::total_cmp);
    exact.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let exact: Vec<String> = exact.iter().map(|l| format!("{l:.1}")).collect();
    println!("{:<15} {}", "orbit lengths", exact.join(" "));
    Ok(())
}
