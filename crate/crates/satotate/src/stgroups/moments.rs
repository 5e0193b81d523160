//! Exact moment arithmetic: the two generator sequences (central binomial
//! for U(1), Catalan for SU(2)), scaling, binomial convolution for
//! products, and the closed form for USp(4).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Moments `M_0, M_1, ..., M_nmax` of the Frobenius trace, exact.
pub type MomentSequence = Vec<BigRational>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut b = BigInt::one();
    for i in 0..k.min(n - k) {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// `M_n = binom(n, n/2)` for even `n`, 0 for odd: trace `2cos(theta)`
/// with uniform theta.
pub fn u1_moments(nmax: usize) -> MomentSequence {
    (0..=nmax)
        .map(|n| {
            if n % 2 == 0 {
                BigRational::from_integer(binomial(n as u64, n as u64 / 2))
            } else {
                BigRational::zero()
            }
        })
        .collect()
}

/// `M_n = binom(n, n/2) * 2/(n+2)` for even `n` (the Catalan numbers), 0
/// for odd: trace `2cos(theta)` with semicircle weight.
pub fn su2_moments(nmax: usize) -> MomentSequence {
    (0..=nmax)
        .map(|n| {
            if n % 2 == 0 {
                BigRational::from_integer(binomial(n as u64, n as u64 / 2)) * rat(2)
                    / rat(n as i64 + 2)
            } else {
                BigRational::zero()
            }
        })
        .collect()
}

/// Moments of `m * X` from moments of `X`: `M_n -> m^n M_n`.
pub fn scale_moments(moments: &[BigRational], m: u64) -> MomentSequence {
    let mut pw = BigRational::one();
    moments
        .iter()
        .map(|v| {
            let out = v * &pw;
            pw *= rat(m as i64);
            out
        })
        .collect()
}

/// Moments of `X + Y` for independent `X`, `Y`:
/// `M_n = sum_r binom(n,r) A_r B_{n-r}`.
pub fn convolve_moments(a: &[BigRational], b: &[BigRational]) -> Result<MomentSequence> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(
            "moment sequences have different lengths".into(),
        ));
    }
    Ok((0..a.len())
        .map(|n| {
            (0..=n)
                .map(|r| {
                    BigRational::from_integer(binomial(n as u64, r as u64)) * &a[r] * &b[n - r]
                })
                .sum()
        })
        .collect())
}

/// `M_n(USp(4)) = c_n c_{n+4} - c_{n+2}^2` where `c_n` are the SU(2)
/// moments (Catalan numbers at even index).
pub fn usp4_closed_form(nmax: usize) -> MomentSequence {
    let c = su2_moments(nmax + 4);
    (0..=nmax)
        .map(|n| &c[n] * &c[n + 4] - &c[n + 2] * &c[n + 2])
        .collect()
}

pub fn moment_sequence_f64(m: &[BigRational]) -> Vec<f64> {
    m.iter().map(|v| v.to_f64().unwrap()).collect()
}
