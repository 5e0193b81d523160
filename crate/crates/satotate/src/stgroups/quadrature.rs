//! Numerical trace moments by Weyl integration. The integrands are
//! trigonometric polynomials, so a midpoint product rule on `[0, pi]^g`
//! converges to machine precision once the node count exceeds the
//! polynomial degree; we double until two successive grids agree.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureTarget {
    USp2,
    USp4,
    USp6,
    /// U(3) embedded in USp(6); trace of Frobenius is `2 Re tr`.
    U3,
}

const TOL: f64 = 1e-9;

/// Moments `M_0..M_nmax` of the Frobenius trace under Haar measure.
pub fn quadrature_moments(target: QuadratureTarget, nmax: usize) -> Result<Vec<f64>> {
    if nmax > 32 {
        return Err(Error::Capacity(format!(
            "quadrature moment order capped at 32, got {nmax}"
        )));
    }
    let g = match target {
        QuadratureTarget::USp2 => 1,
        QuadratureTarget::USp4 => 2,
        QuadratureTarget::USp6 | QuadratureTarget::U3 => 3,
    };
    let mut n_nodes = 32usize;
    let mut prev: Option<Vec<f64>> = None;
    loop {
        let cur = grid_moments(target, g, nmax, n_nodes);
        if let Some(p) = &prev {
            if p.iter()
                .zip(&cur)
                .all(|(a, b)| (a - b).abs() <= TOL * (1.0 + b.abs()))
            {
                return Ok(cur);
            }
        }
        if n_nodes > 1 << 12 {
            return Err(Error::Inconsistency(
                "quadrature failed to converge".into(),
            ));
        }
        prev = Some(cur);
        n_nodes *= 2;
    }
}

fn grid_moments(target: QuadratureTarget, g: usize, nmax: usize, n: usize) -> Vec<f64> {
    // USp eigenangles pair up, so [0, pi] per coordinate; U(3) angles run
    // over the full circle
    let period = match target {
        QuadratureTarget::U3 => 2.0 * std::f64::consts::PI,
        _ => std::f64::consts::PI,
    };
    let h = period / n as f64;
    let nodes: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
    let mut sums = vec![0.0f64; nmax + 1];
    let mut mass = 0.0f64;
    let mut idx = vec![0usize; g];
    loop {
        let theta: Vec<f64> = idx.iter().map(|&i| nodes[i]).collect();
        let w = haar_density(target, &theta) * h.powi(g as i32);
        let t = trace(target, &theta);
        mass += w;
        let mut tp = 1.0;
        for s in sums.iter_mut() {
            *s += w * tp;
            tp *= t;
        }
        // odometer over the product grid
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == g {
                return sums.iter().map(|s| s / mass).collect();
            }
        }
    }
}

fn trace(target: QuadratureTarget, theta: &[f64]) -> f64 {
    // both USp(2g) elements and the U(3) embedding contribute 2cos(theta_j)
    // per eigenangle pair
    let _ = target;
    theta.iter().map(|t| 2.0 * t.cos()).sum()
}

/// Weyl measure density (up to normalization, handled by dividing by the
/// total mass): product of `sin^2(theta_j)` factors times the squared
/// Vandermonde in `2cos(theta_j)` for USp, and the squared Vandermonde in
/// `e^{i theta_j}` with uniform angles for U(3).
pub(crate) fn haar_density(target: QuadratureTarget, theta: &[f64]) -> f64 {
    match target {
        QuadratureTarget::USp2 | QuadratureTarget::USp4 | QuadratureTarget::USp6 => {
            let mut d = 1.0;
            for t in theta {
                d *= t.sin().powi(2);
            }
            for j in 0..theta.len() {
                for k in j + 1..theta.len() {
                    d *= (2.0 * theta[j].cos() - 2.0 * theta[k].cos()).powi(2);
                }
            }
            d
        }
        QuadratureTarget::U3 => {
            // |e^{i a} - e^{i b}|^2 = 2 - 2cos(a - b), angles on the full circle
            let mut d = 1.0;
            for j in 0..theta.len() {
                for k in j + 1..theta.len() {
                    d *= 2.0 - 2.0 * (theta[j] - theta[k]).cos();
                }
            }
            d
        }
    }
}
