use std::f64::consts::PI;

use proptest::prelude::*;

use wedge_cot::geometry::{IonPosition, WedgeGeometry};
use wedge_cot::orbits::{enumerate_analytic, ClosedOrbit};
use wedge_cot::spectrum::{
    sigma_from_orbits, sigma_total, OrbitSource, PhysicalConstants, Polarization, ReflectionModel,
    SpectrumSettings,
};

fn case() -> impl Strategy<Value = (u32, IonPosition, f64)> {
    (1u32..=8, 10.0f64..800.0, 0.02f64..0.98, 0.76f64..3.0)
        .prop_map(|(n, rho, frac, e)| (n, IonPosition::new(rho, frac * PI / n as f64).unwrap(), e))
}

fn reflection() -> impl Strategy<Value = ReflectionModel> {
    prop_oneof![Just(ReflectionModel::hard()), Just(ReflectionModel::soft())]
}

/// `(3 sigma0 / k) sum 1/L`, the largest `|sigma_osc|` any polarization can reach.
fn envelope(e: f64, orbits: &[ClosedOrbit], c: &PhysicalConstants) -> f64 {
    let p = sigma_from_orbits(e, orbits, &Polarization::z(), &ReflectionModel::hard(), c).unwrap();
    3.0 * p.sigma0 / p.momentum * orbits.iter().map(|o| 1.0 / o.length).sum::<f64>()
}

proptest! {
    #[test]
    fn polarization_sum_identity((n, ion, e) in case(), refl in reflection()) {
        let c = PhysicalConstants::default();
        let orbits = enumerate_analytic(n, &ion).unwrap();
        let osc = |p: Polarization| sigma_from_orbits(e, &orbits, &p, &refl, &c).unwrap();
        let sum = osc(Polarization::x()).sigma_osc + osc(Polarization::y()).sigma_osc + osc(Polarization::z()).sigma_osc;
        let p = osc(Polarization::z());
        let rhs: f64 = orbits
            .iter()
            .map(|o| {
                let phase = p.momentum * o.length - o.reflections as f64 * refl.delta;
                3.0 * p.sigma0 / p.momentum * (o.phi_out - o.phi_ret).cos() * phase.sin() / o.length
            })
            .sum();
        prop_assert!((sum - rhs).abs() <= 1e-12 * envelope(e, &orbits, &c));
    }

    #[test]
    fn oscillation_is_bounded_by_the_envelope(
        (n, ion, e) in case(),
        theta in 0.0f64..=PI,
        phi in 0.0f64..2.0 * PI,
        refl in reflection(),
    ) {
        let c = PhysicalConstants::default();
        let orbits = enumerate_analytic(n, &ion).unwrap();
        let pol = Polarization::new(theta, phi).unwrap();
        let p = sigma_from_orbits(e, &orbits, &pol, &refl, &c).unwrap();
        prop_assert!(p.sigma_osc.abs() <= envelope(e, &orbits, &c) * (1.0 + 1e-12));
        prop_assert_eq!(p.sigma, p.sigma0 + p.sigma_osc);
    }

    #[test]
    fn out_of_plane_tilt_scales_as_sin_squared(
        (n, ion, e) in case(),
        theta in 0.0f64..=PI,
        phi in 0.0f64..2.0 * PI,
        refl in reflection(),
    ) {
        let c = PhysicalConstants::default();
        let orbits = enumerate_analytic(n, &ion).unwrap();
        let osc = |t: f64| sigma_from_orbits(e, &orbits, &Polarization::new(t, phi).unwrap(), &refl, &c).unwrap().sigma_osc;
        let expected = theta.sin().powi(2) * osc(PI / 2.0);
        prop_assert!((osc(theta) - expected).abs() <= 1e-12 * envelope(e, &orbits, &c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbit_source_does_not_change_the_spectrum((n, ion, e) in case(), refl in reflection()) {
        let w = WedgeGeometry::from_n(n).unwrap();
        let c = PhysicalConstants::default();
        let analytic = SpectrumSettings { reflection: refl, ..Default::default() };
        let numeric = SpectrumSettings { orbit_source: OrbitSource::Numeric(None), ..analytic };
        let a = sigma_total(e, &w, &ion, &analytic).unwrap();
        let b = sigma_total(e, &w, &ion, &numeric).unwrap();
        let orbits = enumerate_analytic(n, &ion).unwrap();
        prop_assert!((a.sigma_osc - b.sigma_osc).abs() <= 1e-8 * envelope(e, &orbits, &c));
    }
}
