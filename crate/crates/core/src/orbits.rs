//! Closed orbits: trajectories that leave the ion and come back to it after
//! bouncing off the wedge surfaces.
//!
//! For an opening angle `pi/N` the catalog is known in closed form via the
//! method of images ([`enumerate_analytic`], [`enumerate_exact`]). For any
//! other angle, [`find_numeric`] shoots rays from the ion and refines every
//! return by bisection on the signed miss distance.

use std::f64::consts::PI;

use nalgebra::{Point2, Vector2};
use rayon::prelude::*;

use crate::angle::PiFraction;
use crate::error::{Error, Result};
use crate::geometry::{
    azimuth_of, azimuth_vector, ion_cartesian, trace, IonPosition, Surface, WedgeGeometry,
};

const TWO_PI: f64 = 2.0 * PI;

/// One closed orbit. Orbits are planar, so the polar angles of the outgoing
/// and returning momenta are both `pi/2` and not stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedOrbit {
    /// 1-based label in order of increasing `phi_out`.
    pub index: usize,
    pub phi_out: f64,
    /// Azimuth of the returning momentum.
    pub phi_ret: f64,
    pub reflections: u32,
    pub length: f64,
}

/// A closed orbit with angles kept as exact multiples of pi.
/// The length is `2 rho |sin(half_chord)|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOrbit {
    pub index: usize,
    pub phi_out: PiFraction,
    pub phi_ret: PiFraction,
    pub reflections: u32,
    pub half_chord: PiFraction,
}

impl ExactOrbit {
    pub fn to_orbit(&self, rho: f64) -> ClosedOrbit {
        ClosedOrbit {
            index: self.index,
            phi_out: self.phi_out.radians(),
            phi_ret: self.phi_ret.radians(),
            reflections: self.reflections,
            length: 2.0 * rho * self.half_chord.radians().sin().abs(),
        }
    }
}

fn wrap_angle(a: f64) -> f64 {
    let w = a.rem_euclid(TWO_PI);
    if w >= TWO_PI {
        0.0
    } else {
        w
    }
}

/// Difference `a - b` folded into `(-pi, pi]`.
pub fn angle_difference(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TWO_PI);
    if d > PI {
        d - TWO_PI
    } else {
        d
    }
}

fn reflection_count(j: usize, n: usize) -> u32 {
    if j <= n {
        j as u32
    } else {
        (2 * n - j) as u32
    }
}

/// The `2N - 1` closed orbits of the `pi/N` wedge.
pub fn enumerate_analytic(n: u32, ion: &IonPosition) -> Result<Vec<ClosedOrbit>> {
    let wedge = WedgeGeometry::from_n(n)?;
    ion.validate_for(&wedge)?;
    let n = n as usize;
    let beta = ion.beta;

    let phi_out = |j: usize| -> f64 {
        if j % 2 == 1 {
            (j + 1) as f64 * PI / (2 * n) as f64
        } else {
            j as f64 * PI / (2 * n) as f64 + beta
        }
    };

    Ok((1..2 * n)
        .map(|j| {
            let out = phi_out(j);
            let ret = if j % 2 == 1 {
                out + PI
            } else {
                phi_out(2 * n - j) + PI
            };
            ClosedOrbit {
                index: j,
                phi_out: out,
                phi_ret: wrap_angle(ret),
                reflections: reflection_count(j, n),
                length: 2.0 * ion.rho * (out - beta).sin().abs(),
            }
        })
        .collect())
}

/// Exact-angle version of [`enumerate_analytic`] for a rational `beta/pi`.
pub fn enumerate_exact(n: u32, beta: PiFraction) -> Result<Vec<ExactOrbit>> {
    let wedge = WedgeGeometry::from_n(n)?;
    let alpha = PiFraction::new(1, n as i64)?;
    if beta <= PiFraction::ZERO || beta >= alpha {
        return Err(Error::BetaOutsideWedge {
            beta: beta.radians(),
            alpha: wedge.opening_angle(),
        });
    }
    let n = n as usize;
    let two_n = 2 * n as i64;
    let phi_out = |j: usize| -> PiFraction {
        if j % 2 == 1 {
            PiFraction::new(j as i64 + 1, two_n).expect("non-zero denominator")
        } else {
            PiFraction::new(j as i64, two_n).expect("non-zero denominator") + beta
        }
    };
    Ok((1..2 * n)
        .map(|j| {
            let out = phi_out(j);
            let ret = if j % 2 == 1 {
                out + PiFraction::PI
            } else {
                phi_out(2 * n - j) + PiFraction::PI
            };
            ExactOrbit {
                index: j,
                phi_out: out,
                phi_ret: ret.wrap(),
                reflections: reflection_count(j, n),
                half_chord: out - beta,
            }
        })
        .collect())
}

/// Knobs for the numeric orbit search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSearchConfig {
    pub max_reflections: usize,
    /// Launch directions sampled around the full circle.
    pub scan_samples: usize,
    /// A refined orbit must pass this close to the ion (a0).
    pub return_radius: f64,
    /// Bisection stops once the bracket is narrower than this (rad).
    pub angle_tolerance: f64,
    /// Roots with the same reflection count closer than this are merged (rad).
    pub dedupe_tolerance: f64,
}

impl OrbitSearchConfig {
    pub fn new(max_reflections: usize) -> Self {
        OrbitSearchConfig {
            max_reflections,
            scan_samples: 720 * max_reflections.max(1),
            return_radius: 1e-6,
            angle_tolerance: 1e-13,
            dedupe_tolerance: 1e-8,
        }
    }

    /// A straight line seen from the apex sweeps less than pi, so no closed
    /// orbit bounces more than `floor(pi/alpha) + 1` times.
    pub fn for_wedge(wedge: &WedgeGeometry) -> Self {
        let bound = (PI / wedge.opening_angle()).floor() as usize + 1;
        Self::new(bound)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_reflections == 0 {
            return Err(Error::InvalidParameter(
                "max_reflections must be at least 1".into(),
            ));
        }
        if self.scan_samples < 4 * self.max_reflections {
            return Err(Error::InvalidParameter(format!(
                "scan_samples={} must be at least 4*max_reflections={}",
                self.scan_samples,
                4 * self.max_reflections
            )));
        }
        for (name, v) in [
            ("return_radius", self.return_radius),
            ("angle_tolerance", self.angle_tolerance),
            ("dedupe_tolerance", self.dedupe_tolerance),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name}={v} must be positive"
                )));
            }
        }
        Ok(())
    }
}

/// A bracketed root that could not be refined.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedRoot {
    pub bracket: (f64, f64),
    pub reflections: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OrbitSearch {
    pub orbits: Vec<ClosedOrbit>,
    pub skipped: Vec<SkippedRoot>,
    /// Launch samples that ran into the apex during the scan.
    pub singular_samples: usize,
}

/// Per-leg data for one launch direction: surfaces hit so far and the
/// signed miss distance of each leg's line from the ion.
struct Shot {
    surfaces: Vec<Surface>,
    misses: Vec<f64>,
}

fn shoot(
    wedge: &WedgeGeometry,
    ion: Point2<f64>,
    phi: f64,
    max_reflections: usize,
) -> Result<Shot> {
    let path = trace(wedge, ion, azimuth_vector(phi), max_reflections)?;
    // leg m is the one after m reflections; an escaping leg may have been
    // left out of `segments`
    let mut legs: Vec<(Point2<f64>, Vector2<f64>)> = path
        .segments
        .iter()
        .map(|s| (s.start, s.direction))
        .collect();
    if let Some(exit) = path.exit {
        if legs.len() == path.reflections {
            legs.push((exit.origin, exit.direction));
        }
    }
    let misses = legs.iter().map(|(p, d)| d.perp(&(ion - p))).collect();
    Ok(Shot {
        surfaces: path.surfaces,
        misses,
    })
}

impl Shot {
    fn miss(&self, m: usize, prefix: &[Surface]) -> Option<f64> {
        if self.surfaces.len() >= m && self.surfaces[..m] == *prefix {
            self.misses.get(m).copied()
        } else {
            None
        }
    }
}

/// Searches for closed orbits by scanning launch azimuths around the ion.
///
/// Every leg after `m >= 1` bounces defines a line whose signed distance from
/// the ion varies smoothly with the launch angle as long as the sequence of
/// surfaces hit stays the same. Sign changes between neighbouring samples
/// with matching sequences are refined by bisection.
pub fn find_numeric(
    wedge: &WedgeGeometry,
    ion: &IonPosition,
    cfg: &OrbitSearchConfig,
) -> Result<OrbitSearch> {
    cfg.validate()?;
    let origin = ion_cartesian(wedge, ion)?;
    let samples = cfg.scan_samples;
    let step = TWO_PI / samples as f64;

    let shots: Vec<Option<Shot>> = (0..=samples)
        .into_par_iter()
        .map(|i| shoot(wedge, origin, i as f64 * step, cfg.max_reflections).ok())
        .collect();

    let mut search = OrbitSearch {
        singular_samples: shots[..samples].iter().filter(|s| s.is_none()).count(),
        ..Default::default()
    };

    let mut brackets = Vec::new();
    for i in 0..samples {
        let (Some(a), Some(b)) = (&shots[i], &shots[i + 1]) else {
            continue;
        };
        let legs = a.misses.len().min(b.misses.len());
        for m in 1..legs {
            let prefix = &a.surfaces[..m];
            let (Some(fa), Some(fb)) = (a.miss(m, prefix), b.miss(m, prefix)) else {
                continue;
            };
            if (fa < 0.0) != (fb < 0.0) {
                brackets.push((
                    i as f64 * step,
                    (i + 1) as f64 * step,
                    m,
                    prefix.to_vec(),
                    fa,
                ));
            }
        }
    }

    let refined: Vec<std::result::Result<ClosedOrbit, SkippedRoot>> = brackets
        .into_par_iter()
        .map(|(lo, hi, m, prefix, f_lo)| refine(wedge, origin, cfg, lo, hi, m, &prefix, f_lo))
        .collect();

    let mut found = Vec::new();
    for r in refined {
        match r {
            Ok(o) => found.push(o),
            Err(s) => search.skipped.push(s),
        }
    }

    found.sort_by(|a, b| {
        a.phi_out
            .total_cmp(&b.phi_out)
            .then(a.reflections.cmp(&b.reflections))
    });
    let mut unique: Vec<ClosedOrbit> = Vec::with_capacity(found.len());
    for o in found {
        let dup = unique.iter().any(|u| {
            u.reflections == o.reflections
                && angle_difference(u.phi_out, o.phi_out).abs() <= cfg.dedupe_tolerance
        });
        if !dup {
            unique.push(o);
        }
    }
    if let Some(o) = apex_orbit(wedge, origin, cfg) {
        let dup = unique.iter().any(|u| {
            u.reflections == o.reflections
                && angle_difference(u.phi_out, o.phi_out).abs() <= cfg.dedupe_tolerance
        });
        if !dup {
            unique.push(o);
            unique.sort_by(|a, b| {
                a.phi_out
                    .total_cmp(&b.phi_out)
                    .then(a.reflections.cmp(&b.reflections))
            });
        }
    }
    for (k, o) in unique.iter_mut().enumerate() {
        o.index = k + 1;
    }
    search.orbits = unique;
    Ok(search)
}

/// A launch straight at the apex cannot be traced, but it is a closed orbit
/// when launches just to either side both come back antiparallel after the
/// same number of bounces, missing the ion on opposite sides.
fn apex_orbit(
    wedge: &WedgeGeometry,
    origin: Point2<f64>,
    cfg: &OrbitSearchConfig,
) -> Option<ClosedOrbit> {
    const OFFSET: f64 = 1e-9;
    let rho = origin.coords.norm();
    let phi = azimuth_of(&(-origin.coords));
    let back = origin.coords / rho;
    let mut sides = Vec::with_capacity(2);
    for s in [-OFFSET, OFFSET] {
        let path = trace(wedge, origin, azimuth_vector(phi + s), cfg.max_reflections).ok()?;
        let m = path.reflections;
        let a = *path.approach_after(m)?;
        if m == 0
            || (a.direction - back).norm() > 1e3 * OFFSET
            || a.miss.abs() > 10.0 * OFFSET * rho
        {
            return None;
        }
        sides.push((m, a.miss));
    }
    let ((m, lo), (m_hi, hi)) = (sides[0], sides[1]);
    if m != m_hi || (lo < 0.0) == (hi < 0.0) {
        return None;
    }
    Some(ClosedOrbit {
        index: 0,
        phi_out: wrap_angle(phi),
        phi_ret: azimuth_of(&back),
        reflections: m as u32,
        length: 2.0 * rho,
    })
}

#[allow(clippy::too_many_arguments)]
fn refine(
    wedge: &WedgeGeometry,
    origin: Point2<f64>,
    cfg: &OrbitSearchConfig,
    mut lo: f64,
    mut hi: f64,
    m: usize,
    prefix: &[Surface],
    mut f_lo: f64,
) -> std::result::Result<ClosedOrbit, SkippedRoot> {
    let skip = |lo: f64, hi: f64, reason: String| SkippedRoot {
        bracket: (lo, hi),
        reflections: m,
        reason,
    };
    while hi - lo > cfg.angle_tolerance {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let shot = shoot(wedge, origin, mid, m).map_err(|e| skip(lo, hi, e.to_string()))?;
        let Some(f_mid) = shot.miss(m, prefix) else {
            return Err(skip(
                lo,
                hi,
                "surface sequence changes inside the bracket".into(),
            ));
        };
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    let phi = 0.5 * (lo + hi);
    let path =
        trace(wedge, origin, azimuth_vector(phi), m).map_err(|e| skip(lo, hi, e.to_string()))?;
    if path.surfaces.len() < m || path.surfaces[..m] != *prefix {
        return Err(skip(
            lo,
            hi,
            "refined launch left the bracket's surface sequence".into(),
        ));
    }
    let Some(back) = path.approach_after(m) else {
        return Err(skip(lo, hi, "no return on the refined leg".into()));
    };
    if back.miss.abs() > cfg.return_radius {
        return Err(skip(
            lo,
            hi,
            format!("refined miss {:e} exceeds return radius", back.miss.abs()),
        ));
    }
    Ok(ClosedOrbit {
        index: 0,
        phi_out: wrap_angle(phi),
        phi_ret: azimuth_of(&back.direction),
        reflections: m as u32,
        length: back.path_length,
    })
}
