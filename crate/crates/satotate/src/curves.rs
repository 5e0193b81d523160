//! Frobenius traces and L-polynomials for elliptic curves over `F_p` and
//! genus-2 hyperelliptic curves (using `F_{p^2}` counts), trace
//! normalization, Frobenius-power trace sequences, and prime surveys over
//! the rationals and over imaginary quadratic fields.

use crate::artin::LPolynomial;
use crate::error::{Error, Result};
use crate::ff_poly::{mulmod, powmod, reduce, sieve_primes, Fp2, FpPoly, Prime};
use crate::stats::TraceAccumulator;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Feasibility caps for desk-scale surveys.
pub const ELLIPTIC_SURVEY_CAP: u64 = 1_000_000;
pub const GENUS2_SURVEY_CAP: u64 = 8192;

/// Legendre tables are used below this threshold; Euler-criterion
/// exponentiation above it.
const CHAR_TABLE_LIMIT: u64 = 1 << 20;

/// `y^2 = x^3 + Ax + B` with nonzero discriminant.
#[derive(Debug, Clone, Copy)]
pub struct EllipticCurve {
    pub a: i64,
    pub b: i64,
}

impl EllipticCurve {
    pub fn new(a: i64, b: i64) -> Result<EllipticCurve> {
        let e = EllipticCurve { a, b };
        if e.discriminant().is_zero() {
            return Err(Error::InvalidArgument("singular curve: 4A^3 + 27B^2 = 0".into()));
        }
        Ok(e)
    }

    /// `-16(4A^3 + 27B^2)`.
    pub fn discriminant(&self) -> BigInt {
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        BigInt::from(-16) * (BigInt::from(4) * a.pow(3) + BigInt::from(27) * b.pow(2))
    }

    pub fn has_good_reduction(&self, p: Prime) -> bool {
        p.value() > 3 && !(self.discriminant() % BigInt::from(p.value())).is_zero()
    }
}

fn legendre_table(p: u64) -> Vec<i8> {
    let mut table = vec![-1i8; p as usize];
    table[0] = 0;
    let mut x = 1u64;
    for _ in 1..=(p - 1) / 2 {
        table[mulmod(x, x, p) as usize] = 1;
        x += 1;
    }
    table
}

/// Frobenius trace `t_p = -sum_x chi(x^3 + Ax + B)`, so that
/// `#E(F_p) = p + 1 - t_p` including the point at infinity.
pub fn ec_trace(e: &EllipticCurve, p: Prime) -> Result<i64> {
    if !e.has_good_reduction(p) {
        return Err(Error::BadReduction { p: p.value() });
    }
    let pv = p.value();
    let a = reduce(e.a, pv);
    let b = reduce(e.b, pv);
    let mut sum: i64 = 0;
    if pv <= CHAR_TABLE_LIMIT {
        let table = legendre_table(pv);
        for x in 0..pv {
            let v = (mulmod(mulmod(x, x, pv) + a, x, pv) + b) % pv;
            sum += table[v as usize] as i64;
        }
    } else {
        let half = (pv - 1) / 2;
        for x in 0..pv {
            let v = (mulmod(mulmod(x, x, pv) + a, x, pv) + b) % pv;
            if v != 0 {
                sum += if powmod(v, half, pv) == 1 { 1 } else { -1 };
            }
        }
    }
    let t = -sum;
    debug_assert!((t as i128) * (t as i128) <= 4 * pv as i128);
    Ok(t)
}

#[derive(Debug, Clone)]
pub struct PowerTrace {
    pub r: u64,
    /// `alpha^r + conj(alpha)^r`, exact.
    pub trace: BigInt,
    /// `trace / q^{r/2}`, in `[-2, 2]`.
    pub normalized: f64,
}

/// Traces of Frobenius powers via the power-sum recurrence
/// `a_{r+1} = t a_r - q a_{r-1}` with `a_0 = 2`, `a_1 = t`.
pub fn frobenius_power_traces(t: i64, q: u64, rmax: u64) -> Result<Vec<PowerTrace>> {
    if (t as i128) * (t as i128) > 4 * q as i128 {
        return Err(Error::InvalidArgument(format!("|{t}| > 2*sqrt({q})")));
    }
    let mut out = Vec::with_capacity(rmax as usize + 1);
    let mut prev = BigInt::from(2);
    let mut cur = BigInt::from(t);
    out.push(PowerTrace {
        r: 0,
        trace: prev.clone(),
        normalized: 2.0,
    });
    let phi = (t as f64 / (2.0 * (q as f64).sqrt())).clamp(-1.0, 1.0).acos();
    for r in 1..=rmax {
        out.push(PowerTrace {
            r,
            trace: cur.clone(),
            normalized: 2.0 * (r as f64 * phi).cos(),
        });
        let next = BigInt::from(t) * &cur - BigInt::from(q) * &prev;
        prev = cur;
        cur = next;
    }
    Ok(out)
}

/// Streaming normalized power traces `x_r = 2cos(r*phi)` for large `rmax`
/// where the exact integer traces are not needed.
pub fn normalized_power_traces(t: i64, q: u64, rmax: u64) -> Result<impl Iterator<Item = f64>> {
    if (t as i128) * (t as i128) > 4 * q as i128 {
        return Err(Error::InvalidArgument(format!("|{t}| > 2*sqrt({q})")));
    }
    let phi = (t as f64 / (2.0 * (q as f64).sqrt())).clamp(-1.0, 1.0).acos();
    Ok((1..=rmax).map(move |r| 2.0 * (r as f64 * phi).cos()))
}

/// `y^2 = f(x)` with `f` squarefree of degree 5 or 6; genus 2.
#[derive(Debug, Clone)]
pub struct HyperellipticCurve {
    pub f: Vec<i64>,
}

impl HyperellipticCurve {
    pub fn new(f: Vec<i64>) -> Result<HyperellipticCurve> {
        let d = f.len().saturating_sub(1);
        if !(d == 5 || d == 6) || f.last() == Some(&0) {
            return Err(Error::InvalidArgument(
                "f must have degree 5 or 6 with nonzero leading coefficient".into(),
            ));
        }
        if !rational_squarefree(&f) {
            return Err(Error::InvalidArgument("f is not squarefree over Q".into()));
        }
        Ok(HyperellipticCurve { f })
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn is_good_prime(&self, p: Prime) -> bool {
        let pv = p.value();
        if pv <= 3 || self.f.last().unwrap() % pv as i64 == 0 {
            return false;
        }
        let fp = FpPoly::from_int_coeffs(&self.f, pv);
        let deriv = fp.derivative();
        !deriv.is_zero()
            && crate::ff_poly::poly_gcd(&fp, &deriv)
                .map(|g| g.degree() == Some(0))
                .unwrap_or(false)
    }
}

/// Squarefreeness over Q via the rational Euclidean algorithm on (f, f').
fn rational_squarefree(f: &[i64]) -> bool {
    let to_rat = |c: i64| BigRational::from_integer(BigInt::from(c));
    let mut a: Vec<BigRational> = f.iter().map(|&c| to_rat(c)).collect();
    let mut b: Vec<BigRational> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| to_rat(c) * BigRational::from_integer(BigInt::from(i as i64)))
        .collect();
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        while a.len() >= b.len() {
            let ratio = a.last().unwrap() / b.last().unwrap();
            let shift = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                let v = a[i + shift].clone() - &ratio * bc;
                a[i + shift] = v;
            }
            a.pop();
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    a.len() == 1 // gcd is a nonzero constant
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSize {
    P,
    PSquared,
}

/// Smooth-model point count `#C(F_q)` for `q = p` or `p^2`:
/// `sum_x (1 + chi(f(x)))` plus points at infinity (one for degree 5;
/// two for degree 6 when the leading coefficient is a square in `F_q`,
/// none otherwise).
pub fn hyperelliptic_count(c: &HyperellipticCurve, p: Prime, field: FieldSize) -> Result<u64> {
    if !c.is_good_prime(p) {
        return Err(Error::BadReduction { p: p.value() });
    }
    let pv = p.value();
    let fp = FpPoly::from_int_coeffs(&c.f, pv);
    let lead = reduce(*c.f.last().unwrap(), pv);
    match field {
        FieldSize::P => {
            let table = legendre_table(pv);
            let mut count: u64 = 0;
            for x in 0..pv {
                count += (1 + table[fp.eval(x) as usize] as i64) as u64;
            }
            count += match c.degree() {
                5 => 1,
                _ => {
                    if table[lead as usize] == 1 {
                        2
                    } else {
                        0
                    }
                }
            };
            Ok(count)
        }
        FieldSize::PSquared => {
            let ctx = Fp2::new(p)?;
            let table = legendre_table(pv);
            let chi = |v: (u64, u64)| -> i64 {
                let n = ctx.norm(v);
                table[n as usize] as i64
            };
            let mut count: u64 = 0;
            // F_p line: f(x) lies in F_p, and every nonzero F_p element
            // is a square in F_{p^2}
            for x in 0..pv {
                count += if fp.eval(x) == 0 { 1 } else { 2 };
            }
            // conjugate pairs x = a + b*w, b > 0: chi(f(conj x)) = chi(f(x))
            // because the norm is conjugation-invariant
            for b in 1..=(pv - 1) / 2 {
                for a in 0..pv {
                    let v = fp.eval_fp2(&ctx, (a, b));
                    count += 2 * (1 + chi(v)) as u64;
                }
            }
            // every nonzero F_p element is a square in F_{p^2}
            count += match c.degree() {
                5 => 1,
                _ => 2,
            };
            Ok(count)
        }
    }
}

/// Degree-4 L-polynomial of a genus-2 curve from point counts over `F_p`
/// and `F_{p^2}`: with `s_r = p^r + 1 - #C(F_{p^r})`, `e_1 = s_1`,
/// `e_2 = (s_1^2 - s_2)/2`, and
/// `L_p(T) = 1 - e_1 T + e_2 T^2 - p e_1 T^3 + p^2 T^4`.
pub fn hyperelliptic_lpoly(c: &HyperellipticCurve, p: Prime) -> Result<LPolynomial> {
    let pv = p.value();
    let n1 = hyperelliptic_count(c, p, FieldSize::P)? as i64;
    let n2 = hyperelliptic_count(c, p, FieldSize::PSquared)? as i64;
    let s1 = pv as i64 + 1 - n1;
    let s2 = (pv * pv) as i64 + 1 - n2;
    let diff = s1 * s1 - s2;
    if diff % 2 != 0 {
        return Err(Error::Inconsistency(format!(
            "s_1^2 - s_2 = {diff} is odd at p = {pv}"
        )));
    }
    let e1 = s1;
    let e2 = diff / 2;
    if (e1 as i128) * (e1 as i128) > 16 * pv as i128 || e2.unsigned_abs() > 6 * pv {
        return Err(Error::Inconsistency(format!(
            "Weil bounds violated at p = {pv}: e1 = {e1}, e2 = {e2}"
        )));
    }
    Ok(LPolynomial {
        coeffs: vec![1, -e1, e2, -(pv as i64) * e1, (pv * pv) as i64],
        weight: 1,
        scale: pv,
    })
}

/// Coefficients of `L(T/sqrt(q))`: the degree-2g polynomial with unit
/// constant term and roots on the unit circle.
#[derive(Debug, Clone)]
pub struct NormalizedLPoly {
    /// `abar[i] = a_i / q^{i/2}`, including `abar[0] = 1`.
    pub abar: Vec<f64>,
    pub raw: LPolynomial,
    pub q: u64,
}

impl NormalizedLPoly {
    /// Normalized trace `s = -abar_1`.
    pub fn normalized_trace(&self) -> f64 {
        -self.abar[1]
    }
}

pub fn normalize_lpoly(lpoly: &LPolynomial, q: u64) -> NormalizedLPoly {
    let sq = (q as f64).sqrt();
    let abar = lpoly
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, &a)| a as f64 / sq.powi(i as i32))
        .collect();
    NormalizedLPoly {
        abar,
        raw: lpoly.clone(),
        q,
    }
}

/// Negative fundamental discriminant of an imaginary quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticField {
    pub discriminant: i64,
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<QuadraticField> {
        if d >= 0 {
            return Err(Error::InvalidArgument("discriminant must be negative".into()));
        }
        let m = d.rem_euclid(4);
        let fundamental = match m {
            1 => squarefree_int(d),
            0 => {
                let q = d / 4;
                let qm = q.rem_euclid(4);
                squarefree_int(q) && (qm == 2 || qm == 3)
            }
            _ => false,
        };
        if !fundamental {
            return Err(Error::InvalidArgument(format!(
                "{d} is not a fundamental discriminant"
            )));
        }
        Ok(QuadraticField { discriminant: d })
    }

    /// Splitting behavior of an odd good prime: 1 split, -1 inert, 0 ramified.
    pub fn split_type(&self, p: Prime) -> Result<i32> {
        let pv = p.value();
        if self.discriminant.unsigned_abs() % pv == 0 {
            return Ok(0);
        }
        crate::ff_poly::quadratic_character(reduce(self.discriminant, pv), p)
    }
}

fn squarefree_int(n: i64) -> bool {
    let mut n = n.unsigned_abs();
    let mut d = 2u64;
    while d * d <= n {
        if n % (d * d) == 0 {
            return false;
        }
        while n % d == 0 {
            n /= d;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone)]
pub enum SurveyTarget {
    Elliptic(EllipticCurve),
    Genus2(HyperellipticCurve),
}

#[derive(Debug, Clone, Copy)]
pub enum BaseField {
    Rationals,
    Quadratic(QuadraticField),
}

#[derive(Debug, Clone)]
pub struct CurveSurvey {
    pub accumulator: TraceAccumulator,
    /// Good primes whose traces were sampled (split primes count once here
    /// even though their sample is folded in twice).
    pub primes_used: u64,
    pub skipped_bad: Vec<u64>,
    /// (p, integer trace) pairs, for report output.
    pub samples: Vec<(u64, i64)>,
}

/// Survey of normalized Frobenius traces over good primes `5 <= p <= bound`.
///
/// Over an imaginary quadratic base only degree-1 primes contribute:
/// split rational primes fold their sample in twice, inert and ramified
/// primes are skipped.
pub fn curve_survey(
    target: &SurveyTarget,
    bound: u64,
    base: BaseField,
    workers: usize,
) -> Result<CurveSurvey> {
    let (cap, genus) = match target {
        SurveyTarget::Elliptic(_) => (ELLIPTIC_SURVEY_CAP, 1),
        SurveyTarget::Genus2(_) => (GENUS2_SURVEY_CAP, 2),
    };
    if bound > cap {
        return Err(Error::Capacity(format!(
            "survey bound {bound} exceeds feasibility cap {cap}"
        )));
    }
    if matches!(target, SurveyTarget::Genus2(_)) && matches!(base, BaseField::Quadratic(_)) {
        return Err(Error::UnsupportedCombination(
            "quadratic base fields are only supported for elliptic targets".into(),
        ));
    }
    let primes = sieve_primes(bound)?;
    let primes: Vec<Prime> = primes.into_iter().filter(|p| p.value() > 3).collect();
    let workers = crate::artin::resolve_workers(workers).min(primes.len().max(1));
    let chunks: Vec<&[Prime]> = if primes.is_empty() {
        vec![]
    } else {
        primes.chunks(primes.len().div_ceil(workers)).collect()
    };
    let partials: Vec<Result<CurveSurvey>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| scope.spawn(move || survey_chunk(target, chunk, base, genus)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut merged: Option<CurveSurvey> = None;
    for part in partials {
        let part = part?;
        merged = Some(match merged {
            None => part,
            Some(m) => CurveSurvey {
                accumulator: m.accumulator.merge(&part.accumulator)?,
                primes_used: m.primes_used + part.primes_used,
                skipped_bad: {
                    let mut v = m.skipped_bad;
                    v.extend(part.skipped_bad);
                    v
                },
                samples: {
                    let mut v = m.samples;
                    v.extend(part.samples);
                    v
                },
            },
        });
    }
    merged.ok_or_else(|| Error::InvalidArgument("no usable primes below bound".into()))
}

fn survey_chunk(
    target: &SurveyTarget,
    primes: &[Prime],
    base: BaseField,
    genus: u32,
) -> Result<CurveSurvey> {
    let mut acc = TraceAccumulator::for_genus(genus);
    let mut primes_used = 0u64;
    let mut skipped_bad = Vec::new();
    let mut samples = Vec::new();
    for &p in primes {
        let multiplicity = match base {
            BaseField::Rationals => 1,
            BaseField::Quadratic(field) => match field.split_type(p)? {
                1 => 2,
                _ => continue,
            },
        };
        let trace = match target {
            SurveyTarget::Elliptic(e) => match ec_trace(e, p) {
                Ok(t) => t,
                Err(Error::BadReduction { p }) => {
                    skipped_bad.push(p);
                    continue;
                }
                Err(e) => return Err(e),
            },
            SurveyTarget::Genus2(c) => match hyperelliptic_count(c, p, FieldSize::P) {
                Ok(n) => p.value() as i64 + 1 - n as i64,
                Err(Error::BadReduction { p }) => {
                    skipped_bad.push(p);
                    continue;
                }
                Err(e) => return Err(e),
            },
        };
        for _ in 0..multiplicity {
            acc.update(trace, p.value())?;
        }
        primes_used += 1;
        samples.push((p.value(), trace));
    }
    Ok(CurveSurvey {
        accumulator: acc,
        primes_used,
        skipped_bad,
        samples,
    })
}
