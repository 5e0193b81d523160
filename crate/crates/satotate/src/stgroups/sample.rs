//! Seeded eigenangle samplers for the catalog groups, used for
//! sampler-vs-exact consistency checks and synthetic data.

use crate::error::{Error, Result};
use crate::stgroups::quadrature::{haar_density, QuadratureTarget};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplerKind {
    /// Uniform angle; trace `2cos(theta)` has the arcsine law.
    U1,
    /// `sin^2` weight; trace has the semicircle law.
    SU2,
    /// Coin flip between a U(1) point and the `-I` coset, where the trace
    /// vanishes identically.
    NU1,
    USp4,
    USp6,
}

/// Draws `count` eigenangle vectors. The N(U(1)) sampler marks its
/// zero-trace draws with an empty angle vector so the atom is exact.
pub fn sample_eigenangles(kind: SamplerKind, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be positive".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    match kind {
        SamplerKind::U1 => {
            for _ in 0..count {
                out.push(vec![rng.gen_range(0.0..PI)]);
            }
        }
        SamplerKind::SU2 => {
            for _ in 0..count {
                loop {
                    let theta: f64 = rng.gen_range(0.0..PI);
                    if rng.gen_range(0.0..1.0) < theta.sin().powi(2) {
                        out.push(vec![theta]);
                        break;
                    }
                }
            }
        }
        SamplerKind::NU1 => {
            for _ in 0..count {
                if rng.gen_bool(0.5) {
                    out.push(vec![rng.gen_range(0.0..PI)]);
                } else {
                    out.push(vec![]);
                }
            }
        }
        SamplerKind::USp4 | SamplerKind::USp6 => {
            let (g, target) = match kind {
                SamplerKind::USp4 => (2, QuadratureTarget::USp4),
                _ => (3, QuadratureTarget::USp6),
            };
            let bound = density_bound(target, g);
            for _ in 0..count {
                loop {
                    let theta: Vec<f64> = (0..g).map(|_| rng.gen_range(0.0..PI)).collect();
                    if rng.gen_range(0.0..bound) < haar_density(target, &theta) {
                        out.push(theta);
                        break;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Envelope for rejection sampling: fine-grid maximum of the Weyl density
/// padded by 1%.
fn density_bound(target: QuadratureTarget, g: usize) -> f64 {
    let n = 200usize;
    let mut best = 0.0f64;
    let mut idx = vec![0usize; g];
    loop {
        let theta: Vec<f64> = idx.iter().map(|&i| (i as f64 + 0.5) * PI / n as f64).collect();
        best = best.max(haar_density(target, &theta));
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == g {
                return best * 1.01;
            }
        }
    }
}

/// Normalized traces `sum_j 2cos(theta_j)`; empty angle vectors (the
/// N(U(1)) atom) give exactly `0.0`.
pub fn sample_traces(kind: SamplerKind, count: usize, seed: u64) -> Result<Vec<f64>> {
    Ok(sample_eigenangles(kind, count, seed)?
        .into_iter()
        .map(|angles| {
            if angles.is_empty() {
                0.0
            } else {
                angles.iter().map(|t| 2.0 * t.cos()).sum()
            }
        })
        .collect())
}
