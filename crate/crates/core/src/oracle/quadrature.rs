//! Direct numerical integration of the bound-to-continuum overlap and of its
//! radial and angular factors.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectrum::{PhysicalConstants, Polarization};

pub const MIN_NODES: usize = 64;
pub const OVERLAP_TOLERANCE: f64 = 1e-6;
const RADIAL_PANEL_NODES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Upper limit of the radial integration, a0.
    pub radial_cutoff: f64,
    pub radial_nodes: usize,
    pub polar_nodes: usize,
    pub azimuthal_nodes: usize,
}

impl QuadratureSpec {
    /// Cutoff `40 / k_b`; 256 radial, 128 polar and 256 azimuthal nodes.
    pub fn for_constants(consts: &PhysicalConstants) -> Self {
        QuadratureSpec {
            radial_cutoff: 40.0 / consts.binding_momentum(),
            radial_nodes: 256,
            polar_nodes: 128,
            azimuthal_nodes: 256,
        }
    }

    pub fn validate(&self, consts: &PhysicalConstants) -> Result<()> {
        let min_cutoff = 30.0 / consts.binding_momentum();
        if !(self.radial_cutoff >= min_cutoff) || !self.radial_cutoff.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "radial cutoff {} a0 is below 30/k_b = {min_cutoff}",
                self.radial_cutoff
            )));
        }
        for (name, n) in [
            ("radial", self.radial_nodes),
            ("polar", self.polar_nodes),
            ("azimuthal", self.azimuthal_nodes),
        ] {
            if n < MIN_NODES {
                return Err(Error::InvalidParameter(format!(
                    "{name} node count {n} is below {MIN_NODES}"
                )));
            }
        }
        Ok(())
    }

    /// Same cutoff with every node count multiplied by `num / den`.
    pub fn scaled(&self, num: usize, den: usize) -> Self {
        let s = |n: usize| (n * num / den).max(1);
        QuadratureSpec {
            radial_cutoff: self.radial_cutoff,
            radial_nodes: s(self.radial_nodes),
            polar_nodes: s(self.polar_nodes),
            azimuthal_nodes: s(self.azimuthal_nodes),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapEstimate {
    pub value: Complex64,
    /// `|I(n) - I(3n/4)|` plus a bound on the discarded radial tail.
    pub error_estimate: f64,
}

fn gauss_legendre(n: usize) -> GaussLegendre {
    GaussLegendre::new(NonZeroUsize::new(n).expect("node count is positive"))
}

/// Composite Gauss-Legendre nodes and weights on `[a, b]`.
fn composite_nodes(a: f64, b: f64, total: usize) -> Vec<(f64, f64)> {
    let panels = (total / RADIAL_PANEL_NODES).max(1);
    let per = (total / panels).max(1);
    let rule = gauss_legendre(per);
    let width = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * per);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let half = 0.5 * width;
        for &(x, w) in rule.as_node_weight_pairs() {
            out.push((lo + half * (x + 1.0), half * w));
        }
    }
    out
}

/// Unit vectors on a Gauss-Legendre (in cos theta) by trapezoid (in phi)
/// product grid, with solid-angle weights.
fn sphere_nodes(polar: usize, azimuthal: usize) -> Vec<(Vector3<f64>, f64)> {
    let rule = gauss_legendre(polar);
    let dphi = 2.0 * PI / azimuthal as f64;
    let mut out = Vec::with_capacity(polar * azimuthal);
    for &(u, wu) in rule.as_node_weight_pairs() {
        let s = (1.0 - u * u).max(0.0).sqrt();
        for j in 0..azimuthal {
            let (sp, cp) = (j as f64 * dphi).sin_cos();
            out.push((Vector3::new(s * cp, s * sp, u), wu * dphi));
        }
    }
    out
}

fn check_direction(dir: &Vector3<f64>) -> Result<Vector3<f64>> {
    let n = dir.norm();
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "direction {dir:?} has no length"
        )));
    }
    Ok(dir / n)
}

/// Bound on `int_R^inf 4 pi B r^2 exp(-k_b r) dr`.
fn radial_tail_bound(cutoff: f64, consts: &PhysicalConstants) -> f64 {
    let kb = consts.binding_momentum();
    let r = cutoff;
    4.0 * PI
        * consts.normalization
        * (-kb * r).exp()
        * (r * r / kb + 2.0 * r / (kb * kb) + 2.0 / (kb * kb * kb))
}

/// `int |f B exp(-k_b r)| d^3r` with `|f| <= 1`: the scale below which the
/// overlap counts as zero.
pub fn overlap_scale(consts: &PhysicalConstants) -> f64 {
    8.0 * PI * consts.normalization / consts.binding_momentum().powi(3)
}

fn integrate_overlap(
    k: f64,
    eps: &Vector3<f64>,
    khat: &Vector3<f64>,
    spec: &QuadratureSpec,
    consts: &PhysicalConstants,
) -> Complex64 {
    let kb = consts.binding_momentum();
    let radial = composite_nodes(0.0, spec.radial_cutoff, spec.radial_nodes);
    let sphere: Vec<(f64, f64, f64)> = sphere_nodes(spec.polar_nodes, spec.azimuthal_nodes)
        .into_iter()
        .map(|(n, w)| (w * eps.dot(&n), khat.dot(&n), w))
        .collect();
    let shells: Vec<Complex64> = radial
        .par_iter()
        .map(|&(r, wr)| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(wf, c, _) in &sphere {
                let (s, co) = (k * r * c).sin_cos();
                acc += Complex64::new(wf * co, wf * s);
            }
            acc * (wr * r * r * consts.normalization * (-kb * r).exp())
        })
        .collect();
    shells.iter().sum()
}

/// Numerical value of `int f B exp(-k_b r) exp(i k.r) d^3r` where `f` is the
/// projection of `r` on the polarization and `k` points along `k_ret_direction`.
pub fn overlap_quadrature(
    k: f64,
    pol: &Polarization,
    k_ret_direction: &Vector3<f64>,
    spec: &QuadratureSpec,
    consts: &PhysicalConstants,
) -> Result<OverlapEstimate> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "momentum k={k} must be positive"
        )));
    }
    spec.validate(consts)?;
    let khat = check_direction(k_ret_direction)?;
    let eps = pol.unit_vector();
    let fine = integrate_overlap(k, &eps, &khat, spec, consts);
    let coarse = integrate_overlap(k, &eps, &khat, &spec.scaled(3, 4), consts);
    let tail = radial_tail_bound(spec.radial_cutoff, consts);
    let estimate = (fine - coarse).norm() + tail;
    let tolerance = (OVERLAP_TOLERANCE * fine.norm()).max(1e-12 * overlap_scale(consts));
    if !(estimate <= tolerance) {
        return Err(Error::Convergence {
            estimate,
            tolerance,
            detail: format!(
                "k={k}, nodes {}x{}x{}, cutoff {} a0, tail bound {tail:e}",
                spec.radial_nodes, spec.polar_nodes, spec.azimuthal_nodes, spec.radial_cutoff
            ),
        });
    }
    Ok(OverlapEstimate {
        value: fine,
        error_estimate: estimate,
    })
}

/// `8 i B k pi / (k_b^2 + k^2)^2 * (eps . k_hat)`.
pub fn overlap_closed_form(
    k: f64,
    pol: &Polarization,
    k_ret_direction: &Vector3<f64>,
    consts: &PhysicalConstants,
) -> Complex64 {
    let kb2 = consts.binding_momentum().powi(2);
    let proj = pol.unit_vector().dot(&k_ret_direction.normalize());
    let amp = 8.0 * consts.normalization * k * PI / (kb2 + k * k).powi(2) * proj;
    Complex64::new(0.0, amp)
}

/// Spherical Bessel function `j1`.
pub fn spherical_j1(x: f64) -> f64 {
    if x.abs() < 0.25 {
        let x2 = x * x;
        // x/3 - x^3/30 + x^5/840 - x^7/45360 + x^9/3991680
        return x
            * (1.0 / 3.0
                + x2 * (-1.0 / 30.0
                    + x2 * (1.0 / 840.0 + x2 * (-1.0 / 45360.0 + x2 / 3991680.0))));
    }
    let (s, c) = x.sin_cos();
    s / (x * x) - c / x
}

fn adaptive<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let left = rule.integrate(a, m, f);
    let right = rule.integrate(m, b, f);
    let split = left + right;
    if (split - whole).abs() <= tol || depth == 0 {
        return split;
    }
    adaptive(rule, f, a, m, left, 0.5 * tol, depth - 1)
        + adaptive(rule, f, m, b, right, 0.5 * tol, depth - 1)
}

/// `int_0^inf exp(-k_b r) j1(k r) r^2 dr` by adaptive Gauss-Legendre.
pub fn radial_integral(k: f64, consts: &PhysicalConstants) -> Result<f64> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "momentum k={k} must be positive"
        )));
    }
    let kb = consts.binding_momentum();
    let f = |r: f64| (-kb * r).exp() * spherical_j1(k * r) * r * r;
    let cutoff = 80.0 / kb;
    // start with panels about one oscillation wide
    let panels = ((cutoff * k / (2.0 * PI)).ceil() as usize).clamp(8, 4096);
    let width = cutoff / panels as f64;
    let rule = gauss_legendre(20);
    let scale = 2.0 / kb.powi(3);
    let tol = 1e-15 * scale / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let (a, b) = (p as f64 * width, (p + 1) as f64 * width);
        let whole = rule.integrate(a, b, f);
        total += adaptive(&rule, &f, a, b, whole, tol, 30);
    }
    Ok(total)
}

/// `2 k / (k_b^2 + k^2)^2`.
pub fn radial_closed_form(k: f64, consts: &PhysicalConstants) -> f64 {
    let kb2 = consts.binding_momentum().powi(2);
    2.0 * k / (kb2 + k * k).powi(2)
}

/// `int (eps . n)(n . k_hat) dOmega` over the unit sphere.
pub fn angular_integral_check(pol: &Polarization, k_ret_direction: &Vector3<f64>) -> Result<f64> {
    let khat = check_direction(k_ret_direction)?;
    let eps = pol.unit_vector();
    Ok(sphere_nodes(16, 16)
        .iter()
        .map(|(n, w)| w * eps.dot(n) * khat.dot(n))
        .sum())
}

/// `(4 pi / 3) eps . k_hat`.
pub fn angular_closed_form(pol: &Polarization, k_ret_direction: &Vector3<f64>) -> f64 {
    4.0 * PI / 3.0 * pol.unit_vector().dot(&k_ret_direction.normalize())
}

/// The overlap rebuilt from its factors, `3 i B * radial * angular`.
pub fn factorized_overlap(
    k: f64,
    pol: &Polarization,
    k_ret_direction: &Vector3<f64>,
    consts: &PhysicalConstants,
) -> Result<Complex64> {
    let radial = radial_integral(k, consts)?;
    let angular = angular_integral_check(pol, k_ret_direction)?;
    Ok(Complex64::new(
        0.0,
        3.0 * consts.normalization * radial * angular,
    ))
}
