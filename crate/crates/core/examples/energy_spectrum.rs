//! Total cross section against photon energy, written as CSV to stdout.

use std::f64::consts::PI;

use wedge_cot::cli::serialize::{serialize, Format};
use wedge_cot::geometry::{IonPosition, WedgeGeometry};
use wedge_cot::spectrum::SpectrumSettings;
use wedge_cot::sweeps::{energy_sweep, SweepGrid, SweepVariable};

fn main() -> wedge_cot::Result<()> {
    let wedge = WedgeGeometry::from_n(5)?;
    let ion = IonPosition::new(200.0, PI / 15.0)?;
    let grid = SweepGrid::new(SweepVariable::PhotonEnergy, 0.76, 1.4, 256)?;
    let mut data = energy_sweep(&grid, &wedge, &ion, &SpectrumSettings::default())?;
    data.push_provenance("rho_a0", ion.rho);
    data.push_provenance("beta_rad", ion.beta);
    serialize(&data, Format::Csv, None, std::io::stdout())
}
