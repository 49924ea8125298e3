//! Size of each closed orbit's contribution for x and y polarization.

use std::f64::consts::PI;

use wedge_cot::geometry::{IonPosition, WedgeGeometry};
use wedge_cot::spectrum::{CrossSectionModel, Polarization, SpectrumSettings};

fn main() -> wedge_cot::Result<()> {
    let wedge = WedgeGeometry::from_n(5)?;
    let ion = IonPosition::new(200.0, PI / 15.0)?;
    let energies: Vec<f64> = (0..1024).map(|i| 0.76 + 0.64 * i as f64 / 1023.0).collect();

    for (name, pol) in [("x", Polarization::x()), ("y", Polarization::y())] {
        let settings = SpectrumSettings {
            polarization: pol,
            ..Default::default()
        };
        let model = CrossSectionModel::new(wedge, ion, settings)?;
        let mut peak = vec![0.0f64; model.orbits().len()];
        for &e in &energies {
            let (_, terms) = model.decompose(e)?;
            for (p, t) in peak.iter_mut().zip(terms) {
                *p = p.max(t.abs());
            }
        }
        println!("{name}-polarized, max |term| over 0.76-1.4 eV:");
        for (o, p) in model.orbits().iter().zip(peak) {
            println!("  j={} L={:7.2} a0  {p:.4e} a0^2", o.index, o.length);
        }
    }
    Ok(())
}
