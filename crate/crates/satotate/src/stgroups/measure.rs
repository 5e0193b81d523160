//! Closed-form trace measures on the real line for the genus-1 groups,
//! binned into histograms comparable with empirical data.

use crate::error::{Error, Result};

/// Distribution of the normalized Frobenius trace for one group, given by
/// its CDF on `[-2g, 2g]` plus point masses.
#[derive(Debug, Clone)]
pub struct TraceMeasure1D {
    pub support: f64,
    pub atoms: Vec<(f64, f64)>,
    cdf: fn(f64) -> f64,
}

impl TraceMeasure1D {
    /// Semicircle law: density `sqrt(4 - t^2) / (2 pi)` on `[-2, 2]`.
    pub fn su2() -> TraceMeasure1D {
        fn cdf(t: f64) -> f64 {
            let t = t.clamp(-2.0, 2.0);
            0.5 + (t * (4.0 - t * t).sqrt() / 4.0 + (t / 2.0).asin()) / std::f64::consts::PI
        }
        TraceMeasure1D {
            support: 2.0,
            atoms: vec![],
            cdf,
        }
    }

    /// Arcsine law: density `1 / (pi sqrt(4 - t^2))` on `[-2, 2]`, the
    /// pushforward of uniform `theta` under `2cos(theta)`.
    pub fn u1() -> TraceMeasure1D {
        fn cdf(t: f64) -> f64 {
            let t = t.clamp(-2.0, 2.0);
            0.5 + (t / 2.0).asin() / std::f64::consts::PI
        }
        TraceMeasure1D {
            support: 2.0,
            atoms: vec![],
            cdf,
        }
    }

    /// Normalizer of U(1): half the arcsine law plus mass 1/2 at zero.
    pub fn nu1() -> TraceMeasure1D {
        fn cdf(t: f64) -> f64 {
            let t = t.clamp(-2.0, 2.0);
            0.25 + 0.5 * (t / 2.0).asin() / std::f64::consts::PI
        }
        TraceMeasure1D {
            support: 2.0,
            atoms: vec![(0.0, 0.5)],
            cdf,
        }
    }

    /// Mass of `[lo, hi)` (the last histogram bin closes on the right).
    pub fn mass(&self, lo: f64, hi: f64, include_right: bool) -> f64 {
        let mut m = (self.cdf)(hi) - (self.cdf)(lo);
        for &(at, w) in &self.atoms {
            if at >= lo && (at < hi || (include_right && at <= hi)) {
                m += w;
            }
        }
        m
    }
}

/// Theoretical bin frequencies on the uniform partition of
/// `[-support, support]` into `bins` cells, matching the empirical
/// histogram's bin conventions.
pub fn theoretical_trace_histogram(measure: &TraceMeasure1D, bins: usize) -> Result<Vec<f64>> {
    if bins == 0 {
        return Err(Error::InvalidArgument("bins must be positive".into()));
    }
    let s = measure.support;
    let w = 2.0 * s / bins as f64;
    Ok((0..bins)
        .map(|i| {
            let lo = -s + i as f64 * w;
            let hi = -s + (i + 1) as f64 * w;
            measure.mass(lo, hi, i + 1 == bins)
        })
        .collect())
}
