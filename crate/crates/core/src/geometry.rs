//! Wedge cavity, ion placement and specular ray tracing.
//!
//! Coordinates live on the cross-sectional plane with the apex at the
//! origin. The left surface is the half-line along `-y`, the right surface
//! the half-line at polar angle `alpha - pi/2`, and azimuths are measured
//! counterclockwise from `+x`. An ion at `(rho, beta)` sits at
//! `(rho sin(beta), -rho cos(beta))`.

use std::f64::consts::PI;

use nalgebra::{Point2, Vector2};

use crate::error::{Error, Result};

/// Tolerance on `|alpha - pi/N|` for recognising an integer wedge.
pub const INTEGER_WEDGE_TOLERANCE: f64 = 1e-12;

/// Segments passing this close to the apex (relative to the start radius)
/// are treated as singular.
pub const APEX_TOLERANCE: f64 = 1e-12;

/// Default lower bound on the ion's angular distance from either surface.
pub const DEFAULT_BETA_GUARD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    Left,
    Right,
}

impl Surface {
    pub fn name(&self) -> &'static str {
        match self {
            Surface::Left => "left",
            Surface::Right => "right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeGeometry {
    opening_angle: f64,
    n_integer: Option<u32>,
}

impl WedgeGeometry {
    pub fn new(opening_angle: f64) -> Result<Self> {
        if !(opening_angle > 0.0 && opening_angle <= PI) {
            return Err(Error::InvalidOpeningAngle(opening_angle));
        }
        let n = (PI / opening_angle).round();
        let n_integer = (n >= 1.0 && (opening_angle - PI / n).abs() <= INTEGER_WEDGE_TOLERANCE)
            .then_some(n as u32);
        Ok(WedgeGeometry {
            opening_angle,
            n_integer,
        })
    }

    /// The wedge with opening angle `pi/n`.
    pub fn from_n(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWedgeIndex(n));
        }
        Ok(WedgeGeometry {
            opening_angle: PI / n as f64,
            n_integer: Some(n),
        })
    }

    pub fn opening_angle(&self) -> f64 {
        self.opening_angle
    }

    /// True for the half-plane `alpha = pi`, where both surfaces are collinear.
    pub fn is_flat(&self) -> bool {
        (self.opening_angle - PI).abs() <= 4.0 * f64::EPSILON
    }

    pub fn n_integer(&self) -> Option<u32> {
        self.n_integer
    }

    /// Unit vector along the surface half-line, pointing away from the apex.
    pub fn surface_direction(&self, surface: Surface) -> Vector2<f64> {
        match surface {
            Surface::Left => Vector2::new(0.0, -1.0),
            Surface::Right => {
                let (s, c) = self.opening_angle.sin_cos();
                Vector2::new(s, -c)
            }
        }
    }

    /// Unit normal of the surface pointing out of the cavity.
    pub fn outward_normal(&self, surface: Surface) -> Vector2<f64> {
        match surface {
            Surface::Left => Vector2::new(-1.0, 0.0),
            Surface::Right => {
                let (s, c) = self.opening_angle.sin_cos();
                Vector2::new(c, s)
            }
        }
    }

    /// Distance from `p` to the plane containing `surface`.
    pub fn distance_to_surface(&self, p: &Point2<f64>, surface: Surface) -> f64 {
        self.outward_normal(surface).dot(&p.coords).abs()
    }

    /// Strict interior test, with a relative margin of [`APEX_TOLERANCE`].
    pub fn contains(&self, p: &Point2<f64>) -> bool {
        let r = p.coords.norm();
        if !(r > 0.0) || !r.is_finite() {
            return false;
        }
        let margin = APEX_TOLERANCE * r;
        [Surface::Left, Surface::Right]
            .iter()
            .all(|&s| self.outward_normal(s).dot(&p.coords) < -margin)
    }
}

/// Where the negative ion sits: distance `rho` from the apex line and
/// angle `beta` measured from the left surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonPosition {
    pub rho: f64,
    pub beta: f64,
}

impl IonPosition {
    pub fn new(rho: f64, beta: f64) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::InvalidRho(rho));
        }
        if !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta={beta} is not finite"
            )));
        }
        Ok(IonPosition { rho, beta })
    }

    /// The ion must be strictly inside the wedge.
    pub fn validate_for(&self, wedge: &WedgeGeometry) -> Result<()> {
        let alpha = wedge.opening_angle();
        if self.beta > 0.0 && self.beta < alpha {
            Ok(())
        } else {
            Err(Error::BetaOutsideWedge {
                beta: self.beta,
                alpha,
            })
        }
    }

    /// Cross-section work additionally keeps the ion `beta_min` away from
    /// both surfaces, where `1/L` diverges.
    pub fn check_guard(&self, wedge: &WedgeGeometry, beta_min: f64) -> Result<()> {
        if !(beta_min > 0.0) || 2.0 * beta_min >= wedge.opening_angle() {
            return Err(Error::InvalidParameter(format!(
                "beta guard {beta_min} must be positive and below alpha/2"
            )));
        }
        let (min, max) = (beta_min, wedge.opening_angle() - beta_min);
        if self.beta >= min && self.beta <= max {
            Ok(())
        } else {
            Err(Error::BetaGuard {
                beta: self.beta,
                min,
                max,
                beta_min,
            })
        }
    }
}

/// Cartesian position of the ion on the cross-sectional plane.
pub fn ion_cartesian(wedge: &WedgeGeometry, ion: &IonPosition) -> Result<Point2<f64>> {
    ion.validate_for(wedge)?;
    let (s, c) = ion.beta.sin_cos();
    Ok(Point2::new(ion.rho * s, -ion.rho * c))
}

/// Unit vector at azimuth `phi`.
pub fn azimuth_vector(phi: f64) -> Vector2<f64> {
    let (s, c) = phi.sin_cos();
    Vector2::new(c, s)
}

/// Azimuth of `v` in `[0, 2pi)`.
pub fn azimuth_of(v: &Vector2<f64>) -> f64 {
    let a = v.y.atan2(v.x);
    if a < 0.0 {
        let w = a + 2.0 * PI;
        // atan2 just below zero can round up to exactly 2pi
        if w >= 2.0 * PI {
            0.0
        } else {
            w
        }
    } else {
        a
    }
}

/// Specular reflection off `surface`: the tangential component is kept and
/// the normal component flips.
pub fn reflect(
    direction: &Vector2<f64>,
    surface: Surface,
    wedge: &WedgeGeometry,
) -> Result<Vector2<f64>> {
    let n = wedge.outward_normal(surface);
    let dn = direction.dot(&n);
    if dn.abs() <= 1e-15 * direction.norm() {
        return Err(Error::DegenerateIncidence(surface.name()));
    }
    Ok(direction - n * (2.0 * dn))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Point2<f64>,
    pub direction: Vector2<f64>,
}

impl Ray {
    pub fn new(origin: Point2<f64>, direction: Vector2<f64>) -> Result<Self> {
        let norm = direction.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidParameter(
                "ray direction must be a non-zero finite vector".into(),
            ));
        }
        Ok(Ray {
            origin,
            direction: direction / norm,
        })
    }

    pub fn from_azimuth(origin: Point2<f64>, phi: f64) -> Self {
        Ray {
            origin,
            direction: azimuth_vector(phi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: Point2<f64>,
    pub end: Point2<f64>,
    pub direction: Vector2<f64>,
}

impl Segment {
    pub fn length(&self) -> f64 {
        (self.end - self.start).norm()
    }
}

/// A pass of the ray near its starting point after at least one bounce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approach {
    /// Bounces so far.
    pub reflections: usize,
    /// Foot of the perpendicular from the start point onto the segment.
    pub point: Point2<f64>,
    /// Signed perpendicular distance; positive when the start point lies to
    /// the left of the direction of travel.
    pub miss: f64,
    /// Path length from the start to `point`.
    pub path_length: f64,
    pub direction: Vector2<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RayPath {
    pub segments: Vec<Segment>,
    pub reflections: usize,
    pub total_length: f64,
    /// Surfaces hit, in order.
    pub surfaces: Vec<Surface>,
    pub approaches: Vec<Approach>,
    /// The unbounded leg, when the ray leaves the wedge.
    pub exit: Option<Ray>,
}

impl RayPath {
    pub fn escaped(&self) -> bool {
        self.exit.is_some()
    }

    /// Direction of travel after the last reflection.
    pub fn final_direction(&self) -> Vector2<f64> {
        if let Some(exit) = &self.exit {
            return exit.direction;
        }
        self.segments
            .last()
            .map(|s| s.direction)
            .unwrap_or_else(Vector2::zeros)
    }

    /// Closest approach after exactly `m` reflections, if there was one.
    pub fn approach_after(&self, m: usize) -> Option<&Approach> {
        self.approaches.iter().find(|a| a.reflections == m)
    }
}

/// Nearest surface hit from `p` along `d`, skipping the surface the ray is
/// currently leaving.
fn next_hit(
    wedge: &WedgeGeometry,
    p: &Point2<f64>,
    d: &Vector2<f64>,
    leaving: Option<Surface>,
    scale: f64,
) -> Option<(f64, Surface)> {
    let mut best: Option<(f64, Surface)> = None;
    for surface in [Surface::Left, Surface::Right] {
        if leaving == Some(surface) {
            continue;
        }
        let u = wedge.surface_direction(surface);
        let denom = u.perp(d);
        // grazing rays never reach the surface at any finite distance
        if denom.abs() <= 1e-15 * d.norm() {
            continue;
        }
        let t = -u.perp(&p.coords) / denom;
        if !(t > APEX_TOLERANCE * scale) {
            continue;
        }
        let q = p.coords + d * t;
        if u.dot(&q) < -APEX_TOLERANCE * scale {
            continue;
        }
        if best.is_none_or(|(tb, _)| t < tb) {
            best = Some((t, surface));
        }
    }
    best
}

/// Follows a ray through the wedge with specular bounces.
///
/// The trace ends once `max_reflections` bounces have happened or the ray
/// escapes. The final segment stops at the closest approach to `start` when
/// that approach lies ahead of it; otherwise it runs to the next surface
/// (without bouncing) or, for an escaping ray, is dropped.
pub fn trace(
    wedge: &WedgeGeometry,
    start: Point2<f64>,
    direction: Vector2<f64>,
    max_reflections: usize,
) -> Result<RayPath> {
    if !wedge.contains(&start) {
        return Err(Error::StartOnSurface {
            x: start.x,
            y: start.y,
        });
    }
    let ray = Ray::new(start, direction)?;
    let scale = start.coords.norm();

    let mut pos = start;
    let mut dir = ray.direction;
    let mut leaving = None;
    let mut path = RayPath {
        segments: Vec::new(),
        reflections: 0,
        total_length: 0.0,
        surfaces: Vec::new(),
        approaches: Vec::new(),
        exit: None,
    };

    loop {
        let hit = next_hit(wedge, &pos, &dir, leaving, scale);
        let reach = hit.map_or(f64::INFINITY, |(t, _)| t);

        let mut approach = None;
        if path.reflections >= 1 {
            let rel = start - pos;
            let t = rel.dot(&dir);
            if t > 0.0 && t < reach {
                let a = Approach {
                    reflections: path.reflections,
                    point: pos + dir * t,
                    miss: dir.perp(&rel),
                    path_length: path.total_length + t,
                    direction: dir,
                };
                path.approaches.push(a);
                approach = Some(t);
            }
        }

        let Some((t_hit, surface)) = hit else {
            path.exit = Some(Ray {
                origin: pos,
                direction: dir,
            });
            if let Some(t) = approach {
                push_segment(&mut path, pos, dir, t);
            }
            return Ok(path);
        };

        let q = pos + dir * t_hit;
        let apex_distance = q.coords.norm();
        // a half-plane has no corner, so the apex reflects like any surface point
        if apex_distance <= APEX_TOLERANCE * scale && !wedge.is_flat() {
            return Err(Error::ApexSingularity {
                distance: apex_distance,
            });
        }

        if path.reflections == max_reflections {
            push_segment(&mut path, pos, dir, approach.unwrap_or(t_hit));
            return Ok(path);
        }

        push_segment(&mut path, pos, dir, t_hit);
        dir = reflect(&dir, surface, wedge)?;
        path.surfaces.push(surface);
        path.reflections += 1;
        leaving = Some(surface);
        pos = q;
    }
}

fn push_segment(path: &mut RayPath, start: Point2<f64>, dir: Vector2<f64>, length: f64) {
    path.segments.push(Segment {
        start,
        end: start + dir * length,
        direction: dir,
    });
    path.total_length += length;
}
