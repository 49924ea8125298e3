//! Independent numerical checks of the analytic ingredients: the overlap
//! integral and its factors, and the recovery of orbit lengths from spectra.

pub mod action;
pub mod quadrature;

pub use action::{
    action_spectrum, momentum_grid, sample_sigma_osc, ActionConfig, ActionPeak, ActionSpectrum,
    Window,
};
pub use quadrature::{
    angular_closed_form, angular_integral_check, factorized_overlap, overlap_closed_form,
    overlap_quadrature, overlap_scale, radial_closed_form, radial_integral, spherical_j1,
    OverlapEstimate, QuadratureSpec,
};

use std::f64::consts::PI;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::IonPosition;
use crate::orbits::enumerate_analytic;
use crate::spectrum::{PhysicalConstants, Polarization, ReflectionModel};

/// Outcome of one oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    /// Worst error seen (relative unless the name says otherwise).
    pub achieved: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: String,
}

impl Check {
    fn new(name: &str, achieved: f64, tolerance: f64, note: String) -> Self {
        Check {
            name: name.to_string(),
            achieved,
            tolerance,
            passed: achieved <= tolerance,
            note,
        }
    }
}

pub fn random_direction<R: Rng>(rng: &mut R) -> Vector3<f64> {
    let u: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    let s = (1.0 - u * u).sqrt();
    Vector3::new(s * phi.cos(), s * phi.sin(), u)
}

pub fn random_polarization<R: Rng>(rng: &mut R) -> Polarization {
    let d = random_direction(rng);
    Polarization::new(d.z.clamp(-1.0, 1.0).acos(), d.y.atan2(d.x)).expect("angles in range")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Overlap error relative to the closed form, or to the L1 scale when the
/// closed form vanishes.
pub fn overlap_error(
    value: num_complex::Complex64,
    reference: num_complex::Complex64,
    consts: &PhysicalConstants,
) -> f64 {
    let scale = reference.norm().max(1e-6 * overlap_scale(consts));
    (value - reference).norm() / scale
}

/// The checks behind `wedge-cot verify`. `overlap_samples` random
/// (k, polarization, direction) triples are drawn from a fixed seed.
pub fn run_checks(consts: &PhysicalConstants, overlap_samples: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_301);
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    for k in [0.01, 0.05, 0.1, 0.3, 0.5, 1.0, 2.0, 5.0, 10.0] {
        worst = worst.max(rel(
            radial_integral(k, consts)?,
            radial_closed_form(k, consts),
        ));
    }
    checks.push(Check::new(
        "radial_integral",
        worst,
        1e-10,
        "9 momenta in [0.01, 10]".into(),
    ));

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let pol = random_polarization(&mut rng);
        let dir = random_direction(&mut rng);
        let err = (angular_integral_check(&pol, &dir)? - angular_closed_form(&pol, &dir)).abs();
        worst = worst.max(err);
    }
    checks.push(Check::new(
        "angular_integral (abs)",
        worst,
        1e-10,
        "20 random pairs".into(),
    ));

    let spec = QuadratureSpec::for_constants(consts);
    let (mut worst, mut worst_comp) = (0.0f64, 0.0f64);
    for _ in 0..overlap_samples {
        let k = rng.gen_range(0.01..=1.0);
        let pol = random_polarization(&mut rng);
        let dir = random_direction(&mut rng);
        let q = overlap_quadrature(k, &pol, &dir, &spec, consts)?;
        worst = worst.max(overlap_error(
            q.value,
            overlap_closed_form(k, &pol, &dir, consts),
            consts,
        ));
        worst_comp = worst_comp.max(overlap_error(
            q.value,
            factorized_overlap(k, &pol, &dir, consts)?,
            consts,
        ));
    }
    let note = format!("{overlap_samples} random triples, k in [0.01, 1]");
    checks.push(Check::new("overlap_quadrature", worst, 1e-6, note.clone()));
    checks.push(Check::new("overlap_factorization", worst_comp, 1e-6, note));

    let ion = IonPosition::new(200.0, PI / 15.0)?;
    let orbits = enumerate_analytic(5, &ion)?;
    let ks = momentum_grid(0.2, 3.0, 4096)?;
    let samples = sample_sigma_osc(
        &ks,
        &orbits,
        &Polarization::x(),
        &ReflectionModel::hard(),
        consts,
    )?;
    let spectrum = action_spectrum(&samples, &ActionConfig::default())?;
    let mut lengths: Vec<f64> = orbits.iter().map(|o| o.length).collect();
    lengths.sort_by(f64::total_cmp);
    lengths.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * *b);
    let mut worst_bins = if spectrum.peaks.len() == lengths.len() {
        0.0f64
    } else {
        f64::INFINITY
    };
    for l in &lengths {
        let nearest = spectrum
            .peaks
            .iter()
            .map(|p| (p.length - l).abs() / spectrum.bin_width)
            .fold(f64::INFINITY, f64::min);
        worst_bins = worst_bins.max(nearest);
    }
    checks.push(Check::new(
        "action_spectrum (bins)",
        worst_bins,
        1.0,
        format!(
            "{} peaks for {} distinct lengths",
            spectrum.peaks.len(),
            lengths.len()
        ),
    ));

    Ok(checks)
}
