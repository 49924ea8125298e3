//! `sigma_osc` at 1 eV over laser polarization directions, printed as a grid.

use std::f64::consts::PI;

use wedge_cot::geometry::{IonPosition, WedgeGeometry};
use wedge_cot::spectrum::SpectrumSettings;
use wedge_cot::sweeps::{polarization_map, SweepGrid, SweepVariable};

fn main() -> wedge_cot::Result<()> {
    let wedge = WedgeGeometry::from_n(5)?;
    let ion = IonPosition::new(200.0, PI / 15.0)?;
    let steps = 9;
    let theta = SweepGrid::new(SweepVariable::PolarizationGrid, 0.0, PI, steps)?;
    let phi = SweepGrid::new(SweepVariable::PolarizationGrid, 0.0, 2.0 * PI, steps)?;
    let map = polarization_map(
        &theta,
        &phi,
        1.0,
        &wedge,
        &ion,
        &SpectrumSettings::default(),
    )?;

    print!("theta\\phi");
    for p in phi.values() {
        print!("{:>9.3}", p);
    }
    println!();
    for row in map.rows.chunks(steps) {
        print!("{:>9.3}", row[0][0]);
        for cell in row {
            print!("{:>9.4}", cell[2]);
        }
        println!();
    }
    Ok(())
}
