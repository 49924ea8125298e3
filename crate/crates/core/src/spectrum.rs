//! Photodetachment cross sections: the smooth free-ion background plus the
//! oscillatory closed-orbit sum.
//!
//! Everything is in atomic units except photon energies, which are taken in
//! eV at the public boundary. Each closed orbit contributes
//!
//! ```text
//! (3 sigma0 / k) * f(pi/2, phi_out) * f(pi/2, phi_ret) * sin(k L - m delta) / L
//! ```
//!
//! where `f` is the projection of the orbit direction on the polarization.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::geometry::{IonPosition, WedgeGeometry, DEFAULT_BETA_GUARD};
use crate::orbits::{
    angle_difference, enumerate_analytic, find_numeric, ClosedOrbit, OrbitSearchConfig,
};

pub const EV_PER_HARTREE: f64 = 27.211386245988;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Normalization `B` of the bound-state wave function.
    pub normalization: f64,
    /// Binding energy `E_b` of H-, hartree.
    pub binding_energy: f64,
    pub speed_of_light: f64,
    pub ev_per_hartree: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            normalization: 0.31522,
            binding_energy: 0.754 / EV_PER_HARTREE,
            speed_of_light: 137.036,
            ev_per_hartree: EV_PER_HARTREE,
        }
    }
}

impl PhysicalConstants {
    /// Defaults with any of `c`, `E_b` (eV) and `B` replaced.
    pub fn with_overrides(
        speed_of_light: Option<f64>,
        binding_energy_ev: Option<f64>,
        normalization: Option<f64>,
    ) -> Result<Self> {
        let mut c = PhysicalConstants::default();
        if let Some(v) = speed_of_light {
            c.speed_of_light = v;
        }
        if let Some(v) = binding_energy_ev {
            c.binding_energy = v / c.ev_per_hartree;
        }
        if let Some(v) = normalization {
            c.normalization = v;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("B", self.normalization),
            ("E_b", self.binding_energy),
            ("c", self.speed_of_light),
            ("eV per hartree", self.ev_per_hartree),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "constant {name}={v} must be positive and finite"
                )));
            }
        }
        Ok(())
    }

    pub fn binding_energy_ev(&self) -> f64 {
        self.binding_energy * self.ev_per_hartree
    }

    /// `k_b = sqrt(2 E_b)`.
    pub fn binding_momentum(&self) -> f64 {
        (2.0 * self.binding_energy).sqrt()
    }
}

/// Direction of the linear laser polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarization {
    theta: f64,
    phi: f64,
    unit: Vector3<f64>,
}

impl Polarization {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "polarization angles (theta={theta}, phi={phi}) need theta in [0, pi]"
            )));
        }
        let phi = phi.rem_euclid(2.0 * PI);
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Ok(Polarization {
            theta,
            phi,
            unit: Vector3::new(st * cp, st * sp, ct),
        })
    }

    pub fn x() -> Self {
        Polarization {
            theta: PI / 2.0,
            phi: 0.0,
            unit: Vector3::x(),
        }
    }

    pub fn y() -> Self {
        Polarization {
            theta: PI / 2.0,
            phi: PI / 2.0,
            unit: Vector3::y(),
        }
    }

    pub fn z() -> Self {
        Polarization {
            theta: 0.0,
            phi: 0.0,
            unit: Vector3::z(),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn unit_vector(&self) -> Vector3<f64> {
        self.unit
    }

    /// Projection of the polarization on an in-plane direction at azimuth `phi`.
    pub fn in_plane_factor(&self, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        self.unit.x * c + self.unit.y * s
    }
}

/// Phase lost at every bounce off a surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionModel {
    pub delta: f64,
}

impl ReflectionModel {
    pub fn hard() -> Self {
        ReflectionModel { delta: PI }
    }

    pub fn soft() -> Self {
        ReflectionModel { delta: PI / 2.0 }
    }

    pub fn new(delta: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "delta={delta} is not finite"
            )));
        }
        Ok(ReflectionModel { delta })
    }

    pub fn is_hard(&self) -> bool {
        self.delta == PI
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub photon_energy_ev: f64,
    /// Detached-electron energy, hartree.
    pub energy: f64,
    /// Electron momentum `sqrt(2E)`, a.u.
    pub momentum: f64,
    pub sigma0: f64,
    pub sigma_osc: f64,
    pub sigma: f64,
}

impl SpectrumPoint {
    fn new(photon_energy_ev: f64, energy: f64, momentum: f64, sigma0: f64, sigma_osc: f64) -> Self {
        SpectrumPoint {
            photon_energy_ev,
            energy,
            momentum,
            sigma0,
            sigma_osc,
            sigma: sigma0 + sigma_osc,
        }
    }
}

/// `cos(theta) cos(theta_L) + sin(theta) sin(theta_L) cos(phi - phi_L)`.
pub fn angular_factor(theta: f64, phi: f64, pol: &Polarization) -> f64 {
    let f = theta.cos() * pol.theta.cos() + theta.sin() * pol.theta.sin() * (phi - pol.phi).cos();
    f.clamp(-1.0, 1.0)
}

/// Electron energy (hartree) and momentum (a.u.) left over after detaching
/// with a photon of `photon_ev` eV.
pub fn energy_conversion(photon_ev: f64, consts: &PhysicalConstants) -> Result<(f64, f64)> {
    let energy = photon_ev / consts.ev_per_hartree - consts.binding_energy;
    if !(energy > 0.0) {
        return Err(Error::BelowThreshold {
            photon_ev,
            threshold_ev: consts.binding_energy_ev(),
        });
    }
    Ok((energy, (2.0 * energy).sqrt()))
}

/// Free-ion cross section `16 sqrt(2) B^2 pi^2 E^(3/2) / (3 c (E_b + E)^3)`, a0^2.
pub fn sigma_background(energy: f64, consts: &PhysicalConstants) -> Result<f64> {
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::NonPositiveEnergy(energy));
    }
    let b = consts.normalization;
    let denom = 3.0 * consts.speed_of_light * (consts.binding_energy + energy).powi(3);
    Ok(16.0 * 2f64.sqrt() * b * b * PI * PI * energy.powf(1.5) / denom)
}

const TWO_PI_HI: f64 = std::f64::consts::TAU;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;
const REDUCTION_THRESHOLD: f64 = 4_294_967_296.0;

/// `sin(k L - shift)`. Above 2^32 the product `k L` is formed exactly with
/// an fma and reduced against a two-word 2pi before taking the sine.
pub fn phase_sine(k: f64, length: f64, shift: f64) -> f64 {
    let p = k * length;
    if p.abs() <= REDUCTION_THRESHOLD {
        return (p - shift).sin();
    }
    let err = k.mul_add(length, -p);
    let turns = (p / TWO_PI_HI).round();
    let r = (-turns).mul_add(TWO_PI_HI, p);
    let r = (-turns).mul_add(TWO_PI_LO, r) + err;
    (r - shift).sin()
}

/// Contribution of one closed orbit to `sigma_osc`, a0^2.
pub fn orbit_term(
    orbit: &ClosedOrbit,
    k: f64,
    pol: &Polarization,
    refl: &ReflectionModel,
    consts: &PhysicalConstants,
) -> Result<f64> {
    if !(orbit.length > 0.0) {
        return Err(Error::ZeroLengthOrbit(orbit.length));
    }
    let sigma0 = sigma_background(0.5 * k * k, consts)?;
    Ok(orbit_term_with(orbit, k, sigma0, pol, refl))
}

fn orbit_term_with(
    orbit: &ClosedOrbit,
    k: f64,
    sigma0: f64,
    pol: &Polarization,
    refl: &ReflectionModel,
) -> f64 {
    let projection = pol.in_plane_factor(orbit.phi_out) * pol.in_plane_factor(orbit.phi_ret);
    let phase_loss = orbit.reflections as f64 * refl.delta;
    3.0 * sigma0 / k * projection * phase_sine(k, orbit.length, phase_loss) / orbit.length
}

/// For each orbit, the index of an earlier orbit tracing the same path in
/// the opposite direction. Such pairs contribute identical terms, so the
/// term is evaluated once and shared.
pub fn time_reversed_partners(orbits: &[ClosedOrbit]) -> Vec<Option<usize>> {
    const TOL: f64 = 1e-9;
    orbits
        .iter()
        .enumerate()
        .map(|(j, b)| {
            orbits[..j].iter().position(|a| {
                a.reflections == b.reflections
                    && (a.length - b.length).abs() <= TOL * a.length
                    && angle_difference(b.phi_out, a.phi_ret + PI).abs() <= TOL
                    && angle_difference(b.phi_ret, a.phi_out + PI).abs() <= TOL
            })
        })
        .collect()
}

/// Cross section at one photon energy for a given orbit catalog, together
/// with the per-orbit terms in catalog order.
pub fn decompose_from_orbits(
    photon_ev: f64,
    orbits: &[ClosedOrbit],
    pol: &Polarization,
    refl: &ReflectionModel,
    consts: &PhysicalConstants,
) -> Result<(SpectrumPoint, Vec<f64>)> {
    let (energy, k) = energy_conversion(photon_ev, consts)?;
    let sigma0 = sigma_background(energy, consts)?;
    let partners = time_reversed_partners(orbits);
    let mut terms: Vec<f64> = Vec::with_capacity(orbits.len());
    for (o, partner) in orbits.iter().zip(&partners) {
        if !(o.length > 0.0) {
            return Err(Error::ZeroLengthOrbit(o.length));
        }
        let t = match partner {
            Some(i) => terms[*i],
            None => orbit_term_with(o, k, sigma0, pol, refl),
        };
        terms.push(t);
    }
    let sigma_osc = terms.iter().sum();
    Ok((
        SpectrumPoint::new(photon_ev, energy, k, sigma0, sigma_osc),
        terms,
    ))
}

pub fn sigma_from_orbits(
    photon_ev: f64,
    orbits: &[ClosedOrbit],
    pol: &Polarization,
    refl: &ReflectionModel,
    consts: &PhysicalConstants,
) -> Result<SpectrumPoint> {
    decompose_from_orbits(photon_ev, orbits, pol, refl, consts).map(|(p, _)| p)
}

/// `sigma_osc` at electron momentum `k` (a.u.) rather than photon energy.
pub fn sigma_osc_at_momentum(
    k: f64,
    orbits: &[ClosedOrbit],
    pol: &Polarization,
    refl: &ReflectionModel,
    consts: &PhysicalConstants,
) -> Result<f64> {
    let sigma0 = sigma_background(0.5 * k * k, consts)?;
    let mut total = 0.0;
    for o in orbits {
        if !(o.length > 0.0) {
            return Err(Error::ZeroLengthOrbit(o.length));
        }
        total += orbit_term_with(o, k, sigma0, pol, refl);
    }
    Ok(total)
}

/// Where the closed orbits come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrbitSource {
    /// Method of images; needs an opening angle pi/N.
    Analytic,
    /// Ray shooting with the given search settings (`None` picks defaults
    /// for the wedge).
    Numeric(Option<OrbitSearchConfig>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSettings {
    pub polarization: Polarization,
    pub reflection: ReflectionModel,
    pub constants: PhysicalConstants,
    pub beta_guard: f64,
    pub orbit_source: OrbitSource,
}

impl Default for SpectrumSettings {
    fn default() -> Self {
        SpectrumSettings {
            polarization: Polarization::x(),
            reflection: ReflectionModel::hard(),
            constants: PhysicalConstants::default(),
            beta_guard: DEFAULT_BETA_GUARD,
            orbit_source: OrbitSource::Analytic,
        }
    }
}

/// Closed orbits for `ion` in `wedge` from the chosen source.
pub fn closed_orbits(
    wedge: &WedgeGeometry,
    ion: &IonPosition,
    source: OrbitSource,
) -> Result<Vec<ClosedOrbit>> {
    match source {
        OrbitSource::Analytic => {
            let n = wedge
                .n_integer()
                .ok_or(Error::NotIntegerWedge(wedge.opening_angle()))?;
            enumerate_analytic(n, ion)
        }
        OrbitSource::Numeric(cfg) => {
            let cfg = cfg.unwrap_or_else(|| OrbitSearchConfig::for_wedge(wedge));
            Ok(find_numeric(wedge, ion, &cfg)?.orbits)
        }
    }
}

/// A wedge, an ion and evaluation settings with the orbit catalog resolved
/// once up front.
#[derive(Debug, Clone)]
pub struct CrossSectionModel {
    wedge: WedgeGeometry,
    ion: IonPosition,
    settings: SpectrumSettings,
    orbits: Vec<ClosedOrbit>,
}

impl CrossSectionModel {
    pub fn new(wedge: WedgeGeometry, ion: IonPosition, settings: SpectrumSettings) -> Result<Self> {
        settings.constants.validate()?;
        ion.check_guard(&wedge, settings.beta_guard)?;
        let orbits = closed_orbits(&wedge, &ion, settings.orbit_source)?;
        Ok(CrossSectionModel {
            wedge,
            ion,
            settings,
            orbits,
        })
    }

    pub fn wedge(&self) -> &WedgeGeometry {
        &self.wedge
    }

    pub fn ion(&self) -> &IonPosition {
        &self.ion
    }

    pub fn settings(&self) -> &SpectrumSettings {
        &self.settings
    }

    pub fn orbits(&self) -> &[ClosedOrbit] {
        &self.orbits
    }

    pub fn evaluate(&self, photon_ev: f64) -> Result<SpectrumPoint> {
        sigma_from_orbits(
            photon_ev,
            &self.orbits,
            &self.settings.polarization,
            &self.settings.reflection,
            &self.settings.constants,
        )
    }

    pub fn decompose(&self, photon_ev: f64) -> Result<(SpectrumPoint, Vec<f64>)> {
        decompose_from_orbits(
            photon_ev,
            &self.orbits,
            &self.settings.polarization,
            &self.settings.reflection,
            &self.settings.constants,
        )
    }
}

/// Total cross section at `photon_ev` for the ion inside the wedge.
pub fn sigma_total(
    photon_ev: f64,
    wedge: &WedgeGeometry,
    ion: &IonPosition,
    settings: &SpectrumSettings,
) -> Result<SpectrumPoint> {
    // thresholds are checked before the (possibly expensive) orbit search
    energy_conversion(photon_ev, &settings.constants)?;
    CrossSectionModel::new(*wedge, *ion, *settings)?.evaluate(photon_ev)
}

struct ClosedFormInputs {
    point: SpectrumPoint,
    n: u32,
    rho: f64,
    beta: f64,
}

fn closed_form_inputs(
    photon_ev: f64,
    n: u32,
    ion: &IonPosition,
    refl: &ReflectionModel,
    consts: &PhysicalConstants,
) -> Result<ClosedFormInputs> {
    if !refl.is_hard() {
        return Err(Error::ClosedFormRequiresHardWall(refl.delta));
    }
    let wedge = WedgeGeometry::from_n(n)?;
    ion.validate_for(&wedge)?;
    let (energy, k) = energy_conversion(photon_ev, consts)?;
    let sigma0 = sigma_background(energy, consts)?;
    Ok(ClosedFormInputs {
        point: SpectrumPoint::new(photon_ev, energy, k, sigma0, 0.0),
        n,
        rho: ion.rho,
        beta: ion.beta,
    })
}

/// `3 sigma0 / (2 k rho s) * sin(2 k rho s)`.
fn chord_term(sigma0: f64, k: f64, rho: f64, s: f64) -> f64 {
    let chord = 2.0 * rho * s;
    3.0 * sigma0 / (k * chord) * phase_sine(k, chord, 0.0)
}

/// Closed-form cross section for polarization along `x` with hard walls.
pub fn sigma_x_closed_form(
    photon_ev: f64,
    n: u32,
    ion: &IonPosition,
    refl: &ReflectionModel,
    consts: &PhysicalConstants,
) -> Result<SpectrumPoint> {
    let ClosedFormInputs {
        point,
        n,
        rho,
        beta,
    } = closed_form_inputs(photon_ev, n, ion, refl, consts)?;
    let (s0, k) = (point.sigma0, point.momentum);
    let mut osc = chord_term(s0, k, rho, beta.sin());
    for j in 1..n {
        let a = j as f64 * PI / n as f64;
        osc += a.cos().powi(2) * chord_term(s0, k, rho, (a - beta).sin());
        osc += (a + beta).cos() * (a - beta).cos() * chord_term(s0, k, rho, a.sin());
    }
    Ok(SpectrumPoint::new(photon_ev, point.energy, k, s0, osc))
}

/// Closed-form cross section for polarization along `y` with hard walls.
pub fn sigma_y_closed_form(
    photon_ev: f64,
    n: u32,
    ion: &IonPosition,
    refl: &ReflectionModel,
    consts: &PhysicalConstants,
) -> Result<SpectrumPoint> {
    let ClosedFormInputs {
        point,
        n,
        rho,
        beta,
    } = closed_form_inputs(photon_ev, n, ion, refl, consts)?;
    let (s0, k) = (point.sigma0, point.momentum);
    let mut osc = 0.0;
    for j in 1..n {
        let a = j as f64 * PI / n as f64;
        osc += a.sin().powi(2) * chord_term(s0, k, rho, (a - beta).sin());
        osc -= (a + beta).sin() * (a - beta).sin() * chord_term(s0, k, rho, a.sin());
    }
    Ok(SpectrumPoint::new(photon_ev, point.energy, k, s0, osc))
}

/// Polarization along the wedge axis: no orbit contributes.
pub fn sigma_z_closed_form(photon_ev: f64, consts: &PhysicalConstants) -> Result<SpectrumPoint> {
    let (energy, k) = energy_conversion(photon_ev, consts)?;
    let sigma0 = sigma_background(energy, consts)?;
    Ok(SpectrumPoint::new(photon_ev, energy, k, sigma0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn angular_factor_examples() {
        let x = Polarization::x();
        assert_relative_eq!(
            angular_factor(PI / 2.0, 0.7, &Polarization::new(PI / 2.0, 0.7).unwrap()),
            1.0
        );
        for (t, p) in [(0.3, 1.0), (2.0, 4.0), (PI, 0.1)] {
            assert_eq!(angular_factor(t, p, &Polarization::z()), t.cos());
        }
        for p in [0.0, 0.4, 2.5, 5.9] {
            assert_relative_eq!(angular_factor(PI / 2.0, p, &x), p.cos(), epsilon = 1e-16);
            assert_relative_eq!(x.in_plane_factor(p), p.cos(), epsilon = 1e-16);
        }
    }

    #[test]
    fn in_plane_factor_agrees_with_spherical_form() {
        let pol = Polarization::new(1.1, 4.2).unwrap();
        for p in [0.0, 1.0, 2.0, 3.0, 6.0] {
            assert_relative_eq!(
                pol.in_plane_factor(p),
                angular_factor(PI / 2.0, p, &pol),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn polarization_validation() {
        assert!(Polarization::new(-0.1, 0.0).is_err());
        assert!(Polarization::new(3.2, 0.0).is_err());
        assert!(Polarization::new(1.0, f64::NAN).is_err());
        let p = Polarization::new(1.0, -0.5).unwrap();
        assert_relative_eq!(p.phi(), 2.0 * PI - 0.5);
    }

    #[test]
    fn energy_conversion_examples() {
        let c = PhysicalConstants::default();
        assert!(energy_conversion(0.754, &c).is_err());
        assert!(energy_conversion(0.5, &c).is_err());
        let (e, k) = energy_conversion(2.0 * 0.754, &c).unwrap();
        assert_relative_eq!(e, 0.754 / EV_PER_HARTREE, max_relative = 1e-15);
        assert_relative_eq!(0.5 * k * k, e, max_relative = 1e-15);
    }

    #[test]
    fn background_threshold_law() {
        let c = PhysicalConstants::default();
        assert!(sigma_background(0.0, &c).is_err());
        assert!(sigma_background(-1.0, &c).is_err());
        let a = sigma_background(1e-8, &c).unwrap();
        let b = sigma_background(4e-8, &c).unwrap();
        // doubling E^(3/2) twice: ratio 8 up to the (E_b + E)^3 factor
        assert_relative_eq!(b / a, 8.0, max_relative = 1e-5);
    }

    #[test]
    fn background_at_peak_matches_high_precision_value() {
        // 40-digit evaluation of the same expression at E = E_b
        let c = PhysicalConstants::default();
        let s = sigma_background(c.binding_energy, &c).unwrap();
        assert_relative_eq!(s, 1.462_801_246_419_351_4, max_relative = 1e-12);
    }

    #[test]
    fn background_peaks_at_binding_energy() {
        // golden-section search on sigma0(E)
        let c = PhysicalConstants::default();
        let f = |e: f64| sigma_background(e, &c).unwrap();
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (1e-4, 0.5);
        for _ in 0..200 {
            let x1 = b - g * (b - a);
            let x2 = a + g * (b - a);
            if f(x1) > f(x2) {
                b = x2;
            } else {
                a = x1;
            }
        }
        assert_relative_eq!(0.5 * (a + b), c.binding_energy, max_relative = 1e-6);
    }

    #[test]
    fn phase_sine_large_arguments() {
        // references from a 50-digit evaluation with the exact binary
        // values of k and L
        let k = 0.1;
        let l = 8_589_934_592.5 * 7.0;
        let reference = -0.759_554_471_348_064_1;
        assert_relative_eq!(phase_sine(k, l, 0.0), reference, epsilon = 1e-9);
        let shifted = phase_sine(k, l, PI);
        assert_relative_eq!(shifted, -reference, epsilon = 1e-9);
        assert_eq!(phase_sine(0.3, 10.0, 0.5), (3.0f64 - 0.5).sin());
    }

    #[test]
    fn orbit_term_rejects_zero_length() {
        let o = ClosedOrbit {
            index: 1,
            phi_out: 0.0,
            phi_ret: PI,
            reflections: 1,
            length: 0.0,
        };
        let c = PhysicalConstants::default();
        assert!(matches!(
            orbit_term(&o, 0.1, &Polarization::x(), &ReflectionModel::hard(), &c),
            Err(Error::ZeroLengthOrbit(_))
        ));
    }

    #[test]
    fn closed_forms_reject_soft_walls() {
        let ion = IonPosition::new(200.0, PI / 15.0).unwrap();
        let c = PhysicalConstants::default();
        for f in [sigma_x_closed_form, sigma_y_closed_form] {
            assert!(matches!(
                f(1.0, 5, &ion, &ReflectionModel::soft(), &c),
                Err(Error::ClosedFormRequiresHardWall(_))
            ));
        }
    }

    #[test]
    fn free_ion_limit() {
        let c = PhysicalConstants::default();
        let p =
            sigma_from_orbits(1.0, &[], &Polarization::x(), &ReflectionModel::hard(), &c).unwrap();
        assert_eq!(p.sigma_osc, 0.0);
        assert_eq!(p.sigma, p.sigma0);
    }

    #[test]
    fn analytic_source_needs_integer_wedge() {
        let wedge = WedgeGeometry::new(0.9 * PI).unwrap();
        let ion = IonPosition::new(100.0, 0.5).unwrap();
        assert!(matches!(
            CrossSectionModel::new(wedge, ion, SpectrumSettings::default()),
            Err(Error::NotIntegerWedge(_))
        ));
    }
}
