//! Prime sieving, arithmetic in `F_p` and `F_{p^2}`, dense polynomial
//! arithmetic over `F_p`, and the factorization-pattern computation that
//! drives all weight-zero statistics.

use crate::error::{Error, Result};

/// Largest sieve bound we accept; keeps the sieve table at a sane size.
pub const MAX_SIEVE_BOUND: u64 = 1_000_000_000;

/// A prime that fits in a machine word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    /// Checks primality by trial division. Intended for one-off
    /// construction (CLI arguments, tests); bulk streams come from the sieve.
    pub fn checked(n: u64) -> Option<Prime> {
        if n < 2 {
            return None;
        }
        if n % 2 == 0 {
            return (n == 2).then_some(Prime(2));
        }
        let mut d = 3u64;
        while d.saturating_mul(d) <= n {
            if n % d == 0 {
                return None;
            }
            d += 2;
        }
        Some(Prime(n))
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

/// All primes `p <= bound`, strictly increasing.
pub fn sieve_primes(bound: u64) -> Result<Vec<Prime>> {
    if bound > MAX_SIEVE_BOUND {
        return Err(Error::Capacity(format!(
            "sieve bound {bound} exceeds {MAX_SIEVE_BOUND}"
        )));
    }
    let mut primes = Vec::new();
    if bound >= 2 {
        primes.push(Prime(2));
    }
    if bound < 3 {
        return Ok(primes);
    }
    // odd-only table: index i represents 2i+3
    let len = ((bound - 1) / 2) as usize;
    let mut composite = vec![false; len];
    let mut i = 0usize;
    while (2 * i + 3) * (2 * i + 3) <= bound as usize {
        if !composite[i] {
            let p = 2 * i + 3;
            let mut j = (p * p - 3) / 2;
            while j < len {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    for (i, &c) in composite.iter().enumerate() {
        if !c {
            primes.push(Prime((2 * i + 3) as u64));
        }
    }
    Ok(primes)
}

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Reduces a signed integer into `[0, p)`.
#[inline]
pub fn reduce(a: i64, p: u64) -> u64 {
    let r = a % p as i64;
    if r < 0 {
        (r + p as i64) as u64
    } else {
        r as u64
    }
}

/// Legendre symbol of `a` mod an odd prime `p`, via the Euler criterion.
pub fn quadratic_character(a: u64, p: Prime) -> Result<i32> {
    let p = p.value();
    if p == 2 {
        return Err(Error::UnsupportedCharacteristic);
    }
    let a = a % p;
    if a == 0 {
        return Ok(0);
    }
    let e = powmod(a, (p - 1) / 2, p);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Arithmetic context for `F_{p^2} = F_p[w]/(w^2 - c)`, with `c` the
/// smallest positive quadratic nonresidue mod p.
#[derive(Debug, Clone, Copy)]
pub struct Fp2 {
    pub p: u64,
    pub nonresidue: u64,
}

/// An element `c0 + c1*w` of `F_{p^2}`.
pub type Fp2Elem = (u64, u64);

impl Fp2 {
    pub fn new(p: Prime) -> Result<Fp2> {
        let pv = p.value();
        if pv == 2 {
            return Err(Error::UnsupportedCharacteristic);
        }
        let mut c = 2u64;
        while quadratic_character(c, p)? != -1 {
            c += 1;
        }
        Ok(Fp2 { p: pv, nonresidue: c })
    }

    #[inline]
    pub fn add(&self, a: Fp2Elem, b: Fp2Elem) -> Fp2Elem {
        let p = self.p;
        ((a.0 + b.0) % p, (a.1 + b.1) % p)
    }

    #[inline]
    pub fn mul(&self, a: Fp2Elem, b: Fp2Elem) -> Fp2Elem {
        let p = self.p;
        // (a0 + a1 w)(b0 + b1 w) = a0 b0 + c a1 b1 + (a0 b1 + a1 b0) w
        let c0 = (mulmod(a.0, b.0, p) + mulmod(self.nonresidue, mulmod(a.1, b.1, p), p)) % p;
        let c1 = (mulmod(a.0, b.1, p) + mulmod(a.1, b.0, p)) % p;
        (c0, c1)
    }

    /// Norm down to `F_p`: `N(c0 + c1 w) = c0^2 - c*c1^2`.
    #[inline]
    pub fn norm(&self, a: Fp2Elem) -> u64 {
        let p = self.p;
        let s = mulmod(a.0, a.0, p);
        let t = mulmod(self.nonresidue, mulmod(a.1, a.1, p), p);
        (s + p - t) % p
    }

    /// Quadratic character of `a` in `F_{p^2}`; equals the Legendre symbol
    /// of its norm since `a^{(p^2-1)/2} = N(a)^{(p-1)/2}`.
    pub fn quadratic_character(&self, a: Fp2Elem) -> i32 {
        let n = self.norm(a);
        if n == 0 {
            return 0;
        }
        if powmod(n, (self.p - 1) / 2, self.p) == 1 {
            1
        } else {
            -1
        }
    }
}

/// Dense polynomial over `F_p`, coefficients lowest degree first, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    pub coeffs: Vec<u64>,
    pub p: u64,
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> FpPoly {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut poly = FpPoly { coeffs, p };
        poly.trim();
        poly
    }

    pub fn from_int_coeffs(coeffs: &[i64], p: u64) -> FpPoly {
        FpPoly::new(coeffs.iter().map(|&c| reduce(c, p)).collect(), p)
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { coeffs: vec![], p }
    }

    pub fn constant(c: u64, p: u64) -> FpPoly {
        FpPoly::new(vec![c], p)
    }

    pub fn x(p: u64) -> FpPoly {
        FpPoly::new(vec![0, 1], p)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + b) % p;
        }
        FpPoly::new(out, p)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + p - b) % p;
        }
        FpPoly::new(out, p)
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        FpPoly::new(out, p)
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(self.coeffs.iter().map(|&c| mulmod(c, k, p)).collect(), p)
    }

    pub fn make_monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        if lead == 1 {
            return self.clone();
        }
        self.scale(invmod(lead, self.p))
    }

    /// Remainder of `self` divided by `divisor`.
    pub fn rem(&self, divisor: &FpPoly) -> Result<FpPoly> {
        if divisor.is_zero() {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        }
        let p = self.p;
        let dd = divisor.degree().unwrap();
        let lead_inv = invmod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let k = rem.len() - 1;
            let q = mulmod(rem[k], lead_inv, p);
            if q != 0 {
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    let idx = k - dd + j;
                    rem[idx] = (rem[idx] + p - mulmod(q, dc, p)) % p;
                }
            }
            rem.pop();
        }
        Ok(FpPoly::new(rem, p))
    }

    /// Exact quotient; errors if the division has a remainder.
    pub fn div_exact(&self, divisor: &FpPoly) -> Result<FpPoly> {
        if divisor.is_zero() {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        }
        let p = self.p;
        let dd = divisor.degree().unwrap();
        let lead_inv = invmod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let q = mulmod(rem[k], lead_inv, p);
            quot[k - dd] = q;
            if q != 0 {
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    let idx = k - dd + j;
                    rem[idx] = (rem[idx] + p - mulmod(q, dc, p)) % p;
                }
            }
            rem.pop();
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(Error::Inconsistency("inexact polynomial division".into()));
        }
        Ok(FpPoly::new(quot, p))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(i as u64 % p, c, p))
            .collect();
        FpPoly::new(coeffs, p)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, p) + c) % p;
        }
        acc
    }

    pub fn eval_fp2(&self, ctx: &Fp2, x: Fp2Elem) -> Fp2Elem {
        let mut acc = (0u64, 0u64);
        for &c in self.coeffs.iter().rev() {
            acc = ctx.mul(acc, x);
            acc = ctx.add(acc, (c, 0));
        }
        acc
    }
}

/// Monic gcd by the Euclidean algorithm.
pub fn poly_gcd(f: &FpPoly, g: &FpPoly) -> Result<FpPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into()));
    }
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.make_monic())
}

/// `base^exponent mod modulus_poly` by binary exponentiation.
pub fn poly_powmod(base: &FpPoly, mut exponent: u64, modulus_poly: &FpPoly) -> Result<FpPoly> {
    if modulus_poly.is_zero() {
        return Err(Error::InvalidArgument("zero modulus polynomial".into()));
    }
    let p = base.p;
    let mut acc = FpPoly::constant(1, p).rem(modulus_poly)?;
    let mut sq = base.rem(modulus_poly)?;
    while exponent > 0 {
        if exponent & 1 == 1 {
            acc = acc.mul(&sq).rem(modulus_poly)?;
        }
        sq = sq.mul(&sq).rem(modulus_poly)?;
        exponent >>= 1;
    }
    Ok(acc)
}

/// Multiset of irreducible-factor degrees of `f mod p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleType {
    /// `counts[i-1]` is the number of irreducible factors of degree `i`.
    pub counts: Vec<usize>,
}

impl CycleType {
    pub fn degree(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &n)| (i + 1) * n)
            .sum()
    }

    /// Number of linear factors, i.e. the number of roots in `F_p`.
    pub fn roots(&self) -> usize {
        self.counts.first().copied().unwrap_or(0)
    }
}

/// Degrees-of-irreducible-factors pattern of `f mod p` for squarefree
/// reductions, by stripping factors of degree 1, 2, ... using
/// `gcd(g, x^{p^i} - x)`, with the two early exits.
pub fn factorization_pattern(f: &[i64], p: Prime) -> Result<CycleType> {
    let pv = p.value();
    let d = f.len().saturating_sub(1);
    if d == 0 {
        return Err(Error::InvalidArgument("constant polynomial".into()));
    }
    let fp = FpPoly::from_int_coeffs(f, pv);
    if fp.degree() != Some(d) {
        return Err(Error::BadReduction { p: pv });
    }
    let deriv = fp.derivative();
    if deriv.is_zero() || poly_gcd(&fp, &deriv)?.degree() != Some(0) {
        return Err(Error::NotSquarefree { p: pv });
    }

    let mut counts = vec![0usize; d];
    let mut g = fp.make_monic();
    let mut r = FpPoly::x(pv); // r_{i-1} = x^{p^{i-1}} mod g_i
    for i in 1..=d {
        let gd = g.degree().unwrap();
        if 2 * i > gd {
            // whatever is left is a single irreducible factor
            if gd > 0 {
                counts[gd - 1] += 1;
            }
            break;
        }
        r = poly_powmod(&r, pv, &g)?;
        let h = poly_gcd(&g, &r.sub(&FpPoly::x(pv)))?;
        let hd = h.degree().unwrap();
        counts[i - 1] = hd / i;
        if hd > 0 {
            g = g.div_exact(&h)?;
            r = r.rem(&g)?;
            if g.degree() == Some(0) {
                break;
            }
        }
    }
    Ok(CycleType { counts })
}

/// Number of distinct roots of `f mod p`, as `deg gcd(x^p - x, f_p)`.
/// Works for arbitrary (possibly non-squarefree) reductions; used at
/// ramified primes.
pub fn distinct_root_count(f: &[i64], p: Prime) -> Result<usize> {
    let pv = p.value();
    let fp = FpPoly::from_int_coeffs(f, pv);
    match fp.degree() {
        None => Err(Error::InvalidArgument("zero polynomial".into())),
        Some(0) => Ok(0),
        Some(_) => {
            let fp = fp.make_monic();
            let xp = poly_powmod(&FpPoly::x(pv), pv, &fp)?;
            let g = poly_gcd(&fp, &xp.sub(&FpPoly::x(pv)))?;
            Ok(g.degree().unwrap_or(0))
        }
    }
}

/// Number of roots of `f mod p` counted with multiplicity: total degree
/// of the linear part of the factorization. Used at ramified primes.
pub fn root_count_with_multiplicity(f: &[i64], p: Prime) -> Result<usize> {
    let pv = p.value();
    let fp = FpPoly::from_int_coeffs(f, pv);
    match fp.degree() {
        None => Err(Error::InvalidArgument("zero polynomial".into())),
        Some(0) => Ok(0),
        Some(_) => {
            let mut g = fp.make_monic();
            let mut count = 0;
            for a in 0..pv {
                while g.degree().unwrap_or(0) >= 1 && g.eval(a) == 0 {
                    count += 1;
                    let lin = FpPoly::new(vec![(pv - a) % pv, 1], pv);
                    g = g.div_exact(&lin)?;
                }
            }
            Ok(count)
        }
    }
}
