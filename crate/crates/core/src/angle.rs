//! Exact rational multiples of pi.
//!
//! Orbit angles for a pi/N wedge with a rational ion angle are themselves
//! rational multiples of pi, so they can be carried exactly and printed as
//! `2pi/15` instead of a truncated decimal.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// An angle `q * pi` with rational `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiFraction(Ratio<i64>);

impl PiFraction {
    pub const ZERO: PiFraction = PiFraction(Ratio::new_raw(0, 1));
    pub const PI: PiFraction = PiFraction(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidParameter(format!(
                "angle fraction {numer}pi/0 has a zero denominator"
            )));
        }
        Ok(PiFraction(Ratio::new(numer, denom)))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// Multiple of pi as a float.
    pub fn turns_of_pi(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn radians(&self) -> f64 {
        self.numer() as f64 * PI / self.denom() as f64
    }

    /// Reduce into `[0, 2pi)`.
    pub fn wrap(&self) -> Self {
        let two = Ratio::from_integer(2);
        let mut q = self.0 % two;
        if q < Ratio::from_integer(0) {
            q += two;
        }
        PiFraction(q)
    }

    pub fn scale(&self, factor: i64) -> Self {
        PiFraction(self.0 * factor)
    }
}

impl Add for PiFraction {
    type Output = PiFraction;
    fn add(self, rhs: Self) -> Self {
        PiFraction(self.0 + rhs.0)
    }
}

impl Sub for PiFraction {
    type Output = PiFraction;
    fn sub(self, rhs: Self) -> Self {
        PiFraction(self.0 - rhs.0)
    }
}

impl Neg for PiFraction {
    type Output = PiFraction;
    fn neg(self) -> Self {
        PiFraction(-self.0)
    }
}

impl fmt::Display for PiFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (self.numer(), self.denom());
        let head = match n {
            0 => return write!(f, "0"),
            1 => "pi".to_string(),
            -1 => "-pi".to_string(),
            _ => format!("{n}pi"),
        };
        if d == 1 {
            write!(f, "{head}")
        } else {
            write!(f, "{head}/{d}")
        }
    }
}

impl FromStr for PiFraction {
    type Err = Error;

    /// Accepts `pi`, `-pi/4`, `2pi/5`, `2*pi/5` and `0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("'{s}' is not a fraction of pi"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(PiFraction::ZERO);
        }
        let idx = t.find("pi").ok_or_else(bad)?;
        let coeff = t[..idx].trim_end_matches('*');
        let numer: i64 = match coeff {
            "" | "+" => 1,
            "-" => -1,
            c => c.parse().map_err(|_| bad())?,
        };
        let rest = &t[idx + 2..];
        let denom: i64 = if rest.is_empty() {
            1
        } else {
            rest.strip_prefix('/')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?
        };
        PiFraction::new(numer, denom)
    }
}

/// An angle as typed by a user: exact when written with `pi`, otherwise radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleInput {
    Exact(PiFraction),
    Radians(f64),
}

impl AngleInput {
    pub fn radians(&self) -> f64 {
        match self {
            AngleInput::Exact(q) => q.radians(),
            AngleInput::Radians(r) => *r,
        }
    }

    pub fn exact(&self) -> Option<PiFraction> {
        match self {
            AngleInput::Exact(q) => Some(*q),
            AngleInput::Radians(_) => None,
        }
    }
}

impl FromStr for AngleInput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains("pi") {
            return s.parse().map(AngleInput::Exact);
        }
        let r: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("'{s}' is not an angle")))?;
        if !r.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "angle '{s}' is not finite"
            )));
        }
        Ok(AngleInput::Radians(r))
    }
}

impl fmt::Display for AngleInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleInput::Exact(q) => write!(f, "{q}"),
            AngleInput::Radians(r) => write!(f, "{r}"),
        }
    }
}
