//! Named analytic test vectors on a carrier.
//!
//! All profiles are functions of `t = ln r` on the log axis; on two-axis
//! carriers the linear coordinate enters through a Gaussian of the same width.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{AxisKind, CarrierGrid, StateVector};
use crate::C64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignalSpec {
    GaussianLog {
        center: f64,
        width: f64,
        #[serde(default)]
        chirp: f64,
    },
    HermiteLog {
        order: usize,
        #[serde(default)]
        center: f64,
        #[serde(default = "one")]
        width: f64,
    },
    Bump {
        center: f64,
        radius: f64,
    },
    Zero,
}

fn one() -> f64 {
    1.0
}

/// Physicists' Hermite polynomial by recurrence.
pub fn hermite(n: usize, x: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * x);
    if n == 0 {
        return h0;
    }
    for k in 1..n {
        let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

fn log_coords(grid: &CarrierGrid, p: &[f64; 2]) -> (f64, f64) {
    let t = match grid.axes[0].kind {
        AxisKind::Log => p[0].ln(),
        AxisKind::Linear => p[0],
    };
    (t, if grid.axes.len() > 1 { p[1] } else { 0.0 })
}

impl SignalSpec {
    /// Unnormalized samples.
    pub fn raw(&self, grid: &Arc<CarrierGrid>) -> StateVector {
        let g2 = grid.clone();
        grid.sample(move |p| {
            let (t, s) = log_coords(&g2, p);
            match *self {
                SignalSpec::GaussianLog { center, width, chirp } => {
                    let e = (-((t - center).powi(2) + s * s) / (2.0 * width * width)).exp();
                    C64::from_polar(e, chirp * (t - center).powi(2))
                }
                SignalSpec::HermiteLog { order, center, width } => {
                    let z = (t - center) / width;
                    let e = (-(z * z + (s / width).powi(2)) / 2.0).exp();
                    C64::new(hermite(order, z) * e, 0.0)
                }
                SignalSpec::Bump { center, radius } => {
                    let q = ((t - center).powi(2) + s * s) / (radius * radius);
                    if q < 1.0 {
                        C64::new((-1.0 / (1.0 - q)).exp(), 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                }
                SignalSpec::Zero => C64::new(0.0, 0.0),
            }
        })
    }

    /// Samples normalized to unit carrier norm (the zero signal stays zero).
    pub fn sample(&self, grid: &Arc<CarrierGrid>) -> Result<StateVector> {
        let v = self.raw(grid);
        if matches!(self, SignalSpec::Zero) {
            return Ok(v);
        }
        let n = v.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::Config(format!("signal {:?} vanishes on the carrier", self)));
        }
        Ok(v.normalized())
    }
}

/// Unit-norm Gaussian in `t = ln r`.
pub fn gaussian_log(grid: &Arc<CarrierGrid>, center: f64, width: f64) -> StateVector {
    SignalSpec::GaussianLog { center, width, chirp: 0.0 }.sample(grid).expect("gaussian is nonzero")
}

/// Unit-norm Gaussian in `t = ln r` modulated by `e^{2 pi i xi r}`.
pub fn gaussian_log_modulated(grid: &Arc<CarrierGrid>, center: f64, width: f64, xi: f64) -> StateVector {
    let g = gaussian_log(grid, center, width);
    let mut v = g.values.clone();
    for (k, z) in v.iter_mut().enumerate() {
        *z *= C64::from_polar(1.0, 2.0 * PI * xi * grid.point(k)[0]);
    }
    StateVector { grid: grid.clone(), values: v }.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(0, 0.3), 1.0);
        assert!((hermite(3, 0.5) - (8.0 * 0.125 - 12.0 * 0.5)).abs() < 1e-14);
    }

    #[test]
    fn gaussian_norm_converges() {
        // ||e^{-t^2}||^2 = sqrt(pi / 2)
        let exact = (PI / 2.0).sqrt();
        let mut errs = Vec::new();
        for n in [16, 32, 64] {
            let g = Arc::new(CarrierGrid::log_1d(-4.0, 4.0, n).unwrap());
            let v = SignalSpec::GaussianLog { center: 0.0, width: 0.5f64.sqrt(), chirp: 0.0 }.raw(&g);
            errs.push((v.norm().powi(2) - exact).abs());
        }
        assert!(errs[2] < 1e-6 && errs[2] <= errs[1] && errs[1] <= errs[0]);
    }

    #[test]
    fn zero_signal() {
        let g = Arc::new(CarrierGrid::log_1d(-1.0, 1.0, 8).unwrap());
        assert_eq!(SignalSpec::Zero.sample(&g).unwrap().norm(), 0.0);
        assert!(SignalSpec::Bump { center: 5.0, radius: 0.1 }.sample(&g).is_err());
    }
}
