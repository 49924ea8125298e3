//! Fourier transform of `sigma_osc(k)` into an action (orbit length) spectrum.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::orbits::ClosedOrbit;
use crate::spectrum::{sigma_osc_at_momentum, PhysicalConstants, Polarization, ReflectionModel};

pub const MIN_SAMPLES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Window {
    Rectangular,
    #[default]
    Hann,
    BlackmanHarris,
}

impl Window {
    pub fn weights(&self, n: usize) -> Vec<f64> {
        let d = (n.max(2) - 1) as f64;
        (0..n)
            .map(|i| {
                let x = 2.0 * PI * i as f64 / d;
                match self {
                    Window::Rectangular => 1.0,
                    Window::Hann => 0.5 - 0.5 * x.cos(),
                    Window::BlackmanHarris => {
                        0.35875 - 0.48829 * x.cos() + 0.14128 * (2.0 * x).cos()
                            - 0.01168 * (3.0 * x).cos()
                    }
                }
            })
            .collect()
    }

    pub fn name(&self) -> &'static str {
        match self {
            Window::Rectangular => "rectangular",
            Window::Hann => "hann",
            Window::BlackmanHarris => "blackman-harris",
        }
    }
}

impl std::str::FromStr for Window {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rectangular" | "none" => Ok(Window::Rectangular),
            "hann" => Ok(Window::Hann),
            "blackman-harris" => Ok(Window::BlackmanHarris),
            _ => Err(Error::InvalidParameter(format!("unknown window '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionConfig {
    pub window: Window,
    /// Peaks below this fraction of the largest magnitude are ignored.
    pub noise_floor: f64,
    /// FFT length as a multiple of the sample count.
    pub zero_padding: usize,
}

impl Default for ActionConfig {
    fn default() -> Self {
        ActionConfig {
            window: Window::Hann,
            noise_floor: 0.01,
            zero_padding: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionPeak {
    /// Interpolated orbit length, a0.
    pub length: f64,
    pub magnitude: f64,
    /// Index of the grid bin holding the local maximum.
    pub bin: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ActionSpectrum {
    pub lengths: Vec<f64>,
    pub magnitudes: Vec<f64>,
    pub peaks: Vec<ActionPeak>,
    pub bin_width: f64,
}

fn check_grid(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::NonUniformGrid(format!(
            "{} samples, need at least {MIN_SAMPLES}",
            samples.len()
        )));
    }
    let n = samples.len();
    let dk = (samples[n - 1].0 - samples[0].0) / (n - 1) as f64;
    if !(dk > 0.0) || !dk.is_finite() {
        return Err(Error::NonUniformGrid(format!("step {dk} is not positive")));
    }
    for (i, &(k, s)) in samples.iter().enumerate() {
        let expected = samples[0].0 + i as f64 * dk;
        if (k - expected).abs() > 1e-6 * dk {
            return Err(Error::NonUniformGrid(format!(
                "k[{i}]={k} is off the uniform grid (expected {expected})"
            )));
        }
        if !s.is_finite() {
            return Err(Error::NonFinite {
                column: "sigma_osc".into(),
                row: i,
            });
        }
    }
    Ok(dk)
}

/// Magnitude of the windowed transform `sum_i w_i s(k_i) exp(-i k_i L) dk`
/// on the FFT length grid, with local maxima above the noise floor.
pub fn action_spectrum(samples: &[(f64, f64)], cfg: &ActionConfig) -> Result<ActionSpectrum> {
    let dk = check_grid(samples)?;
    if !(0.0..1.0).contains(&cfg.noise_floor) || cfg.zero_padding == 0 {
        return Err(Error::InvalidParameter(format!(
            "noise floor {} must be in [0, 1) and zero padding {} positive",
            cfg.noise_floor, cfg.zero_padding
        )));
    }
    let n = samples.len();
    let m = n * cfg.zero_padding;
    let w = cfg.window.weights(n);
    let mut buf: Vec<Complex64> = samples
        .iter()
        .zip(&w)
        .map(|(&(_, s), &wi)| Complex64::new(s * wi, 0.0))
        .collect();
    buf.resize(m, Complex64::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);

    let bin_width = 2.0 * PI / (m as f64 * dk);
    let half = m / 2;
    let magnitudes: Vec<f64> = buf[..=half].iter().map(|z| z.norm() * dk).collect();
    let lengths: Vec<f64> = (0..=half).map(|j| j as f64 * bin_width).collect();

    let top = magnitudes[1..].iter().cloned().fold(0.0, f64::max);
    let mut peaks = Vec::new();
    if top > 0.0 {
        let floor = cfg.noise_floor * top;
        for j in 1..half {
            let (a, b, c) = (magnitudes[j - 1], magnitudes[j], magnitudes[j + 1]);
            if b > a && b >= c && b > floor {
                let denom = a - 2.0 * b + c;
                let shift = if denom != 0.0 {
                    0.5 * (a - c) / denom
                } else {
                    0.0
                };
                peaks.push(ActionPeak {
                    length: (j as f64 + shift) * bin_width,
                    magnitude: b,
                    bin: j,
                });
            }
        }
    }
    Ok(ActionSpectrum {
        lengths,
        magnitudes,
        peaks,
        bin_width,
    })
}

/// Uniform grid of `n` momenta from `k_min` to `k_max` inclusive.
pub fn momentum_grid(k_min: f64, k_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(k_min > 0.0) || !(k_max > k_min) || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "momentum grid [{k_min}, {k_max}] with {n} points"
        )));
    }
    let dk = (k_max - k_min) / (n - 1) as f64;
    Ok((0..n).map(|i| k_min + i as f64 * dk).collect())
}

/// `(k, sigma_osc(k))` pairs for an orbit catalog.
pub fn sample_sigma_osc(
    momenta: &[f64],
    orbits: &[ClosedOrbit],
    pol: &Polarization,
    refl: &ReflectionModel,
    consts: &PhysicalConstants,
) -> Result<Vec<(f64, f64)>> {
    momenta
        .iter()
        .map(|&k| Ok((k, sigma_osc_at_momentum(k, orbits, pol, refl, consts)?)))
        .collect()
}
