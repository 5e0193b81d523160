//! Weight-zero statistics: point counts `N_f(p^r)`, local L-polynomials
//! from cycle types, zeta-series expansion, exact trace distributions of
//! permutation groups, and empirical `c_i(B)` surveys.

use crate::error::{Error, Result};
use crate::ff_poly::{
    distinct_root_count, factorization_pattern, root_count_with_multiplicity, sieve_primes,
    CycleType, Prime,
};
use crate::stats::TraceAccumulator;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::HashSet;

/// Integer-coefficient L-polynomial, constant term first.
///
/// Weight 0: degree d, roots on the unit circle. Weight 1: degree 2g for
/// a genus-g curve at scale `q`, satisfying `a_{2g-i} = q^{g-i} a_i`.
/// The stored orientation has constant term 1, so the weight-1 trace is
/// minus the linear coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomial {
    pub coeffs: Vec<i64>,
    pub weight: u8,
    /// Prime power q for weight 1; 1 for weight 0.
    pub scale: u64,
}

impl LPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `N_f(p^r)` from the cycle type: fixed points of the r-th Frobenius
/// power, `sum_{i | r} i * n_i`.
pub fn weight0_counts(ct: &CycleType, r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    Ok(ct
        .counts
        .iter()
        .enumerate()
        .filter(|(i, _)| r % (*i as u64 + 1) == 0)
        .map(|(i, &n)| (i as u64 + 1) * n as u64)
        .sum())
}

/// `L_p(T) = prod_i (1 - T^i)^{n_i}` for the cycle type.
pub fn weight0_lpoly(ct: &CycleType) -> LPolynomial {
    let d = ct.degree();
    let mut coeffs = vec![0i64; d + 1];
    coeffs[0] = 1;
    let mut deg = 0usize;
    for (i, &n) in ct.counts.iter().enumerate() {
        let step = i + 1;
        for _ in 0..n {
            // multiply by (1 - T^step)
            for k in (step..=deg + step).rev() {
                coeffs[k] -= coeffs[k - step];
            }
            deg += step;
        }
    }
    LPolynomial {
        coeffs,
        weight: 0,
        scale: 1,
    }
}

/// Recovers `N_1..N_rmax` from `Z(T) = 1/L(T) = exp(sum N_r T^r / r)` by
/// the logarithmic-derivative recurrence `N_r = -r l_r - sum_{j<r} l_j N_{r-j}`.
pub fn zeta_expand(lpoly: &LPolynomial, rmax: usize) -> Vec<i64> {
    assert_eq!(lpoly.coeffs.first(), Some(&1), "constant term must be 1");
    let l = |k: usize| lpoly.coeffs.get(k).copied().unwrap_or(0);
    let mut counts = vec![0i64; rmax + 1];
    for r in 1..=rmax {
        let mut n = -(r as i64) * l(r);
        for j in 1..r {
            n -= l(j) * counts[r - j];
        }
        counts[r] = n;
    }
    counts.remove(0);
    counts
}

/// Permutation group on `{0, .., d-1}` given by generators.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

pub const GROUP_ORDER_CAP: usize = 10_000_000;

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Vec<usize>>) -> Result<PermGroup> {
        for g in &generators {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::InvalidArgument("generator has wrong length".into()));
            }
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidArgument("not a permutation".into()));
                }
                seen[x] = true;
            }
        }
        Ok(PermGroup { degree, generators })
    }

    /// All elements, by breadth-first closure.
    pub fn elements(&self) -> Result<Vec<Vec<usize>>> {
        let identity: Vec<usize> = (0..self.degree).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(identity.clone());
        let mut frontier = vec![identity];
        let mut all = Vec::new();
        while let Some(g) = frontier.pop() {
            all.push(g.clone());
            for gen in &self.generators {
                let h: Vec<usize> = (0..self.degree).map(|i| gen[g[i]]).collect();
                if seen.insert(h.clone()) {
                    if seen.len() > GROUP_ORDER_CAP {
                        return Err(Error::Capacity("group order cap exceeded".into()));
                    }
                    frontier.push(h);
                }
            }
        }
        Ok(all)
    }
}

/// Exact fixed-point-count distribution of a finite permutation group.
#[derive(Debug, Clone)]
pub struct TraceDistribution {
    pub degree: usize,
    /// (trace value, probability), traces ascending.
    pub classes: Vec<(usize, BigRational)>,
    /// `M_0..M_nmax`, exact.
    pub moments: Vec<BigRational>,
}

impl TraceDistribution {
    /// `c_i` for `0 <= i <= degree`.
    pub fn c_vector(&self) -> Vec<BigRational> {
        let mut c = vec![BigRational::from_integer(BigInt::from(0)); self.degree + 1];
        for (t, pr) in &self.classes {
            c[*t] += pr.clone();
        }
        c
    }
}

pub fn perm_group_distribution(group: &PermGroup, nmax: usize) -> Result<TraceDistribution> {
    let elements = group.elements()?;
    let order = BigInt::from(elements.len());
    let mut fix_counts = vec![0u64; group.degree + 1];
    for g in &elements {
        let fixed = g.iter().enumerate().filter(|(i, &x)| *i == x).count();
        fix_counts[fixed] += 1;
    }
    let classes: Vec<(usize, BigRational)> = fix_counts
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(t, &n)| {
            (
                t,
                BigRational::new(BigInt::from(n), order.clone()),
            )
        })
        .collect();
    let mut moments = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        if n == 0 {
            moments.push(BigRational::from_integer(BigInt::from(1)));
            continue;
        }
        let mut sum = BigInt::from(0);
        for (t, _) in &classes {
            let w = BigInt::from(fix_counts[*t]);
            sum += w * BigInt::from(*t).pow(n as u32);
        }
        moments.push(BigRational::new(sum, order.clone()));
    }
    Ok(TraceDistribution {
        degree: group.degree,
        classes,
        moments,
    })
}

/// How a survey treats p = 2 and ramified primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurveyConvention {
    /// Skip p = 2; a ramified prime is tallied twice, once by distinct
    /// root count and once by root count with multiplicity (but admitted
    /// once). Reproduces the printed c_i(B) tables.
    PaperTable,
    /// Include all primes; skip ramified (and bad-reduction) primes.
    Clean,
}

#[derive(Debug, Clone)]
pub struct ArtinSurvey {
    pub degree: usize,
    /// counts[i] = number of admitted primes with N_f(p) = i.
    pub counts: Vec<u64>,
    pub admitted: u64,
    pub accumulator: TraceAccumulator,
    /// Primes handled outside the squarefree path (ramified or bad
    /// reduction), with the root count used (PaperTable) or None (Clean).
    pub exceptional: Vec<(u64, Option<usize>)>,
}

impl ArtinSurvey {
    /// Exact `c_i(B)` vector.
    pub fn c_vector(&self) -> Vec<BigRational> {
        let denom = BigInt::from(self.admitted.max(1));
        self.counts
            .iter()
            .map(|&n| BigRational::new(BigInt::from(n), denom.clone()))
            .collect()
    }
}

/// Worker count 0 means one thread per available core.
pub(crate) fn resolve_workers(workers: usize) -> usize {
    if workers == 0 {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        workers
    }
}

/// `c_i(B)` proportions and a trace accumulator for `N_f(p)` over primes
/// `p <= bound` admitted by the convention.
pub fn artin_survey(
    f: &[i64],
    bound: u64,
    convention: SurveyConvention,
    workers: usize,
) -> Result<ArtinSurvey> {
    let d = f.len().saturating_sub(1);
    if d == 0 || f.last() == Some(&0) {
        return Err(Error::InvalidArgument(
            "polynomial must be nonconstant with nonzero leading coefficient".into(),
        ));
    }
    let primes = sieve_primes(bound)?;
    let workers = resolve_workers(workers).min(primes.len().max(1));
    let chunks: Vec<&[Prime]> = if primes.is_empty() {
        vec![]
    } else {
        primes.chunks(primes.len().div_ceil(workers)).collect()
    };
    let partials: Vec<Result<ArtinSurvey>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| scope.spawn(move || artin_survey_chunk(f, d, chunk, convention)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut merged: Option<ArtinSurvey> = None;
    for part in partials {
        let part = part?;
        merged = Some(match merged {
            None => part,
            Some(m) => ArtinSurvey {
                degree: d,
                counts: m
                    .counts
                    .iter()
                    .zip(&part.counts)
                    .map(|(a, b)| a + b)
                    .collect(),
                admitted: m.admitted + part.admitted,
                accumulator: m.accumulator.merge(&part.accumulator)?,
                exceptional: {
                    let mut e = m.exceptional;
                    e.extend(part.exceptional);
                    e
                },
            },
        });
    }
    merged.ok_or_else(|| Error::InvalidArgument("no primes below bound".into()))
}

fn artin_survey_chunk(
    f: &[i64],
    d: usize,
    primes: &[Prime],
    convention: SurveyConvention,
) -> Result<ArtinSurvey> {
    let mut counts = vec![0u64; d + 1];
    let mut admitted = 0u64;
    let mut acc = TraceAccumulator::with_range(d as u32);
    let mut exceptional = Vec::new();
    for &p in primes {
        if convention == SurveyConvention::PaperTable && p.value() == 2 {
            continue;
        }
        let n = match factorization_pattern(f, p) {
            Ok(ct) => ct.roots(),
            Err(Error::NotSquarefree { .. }) | Err(Error::BadReduction { .. }) => {
                match convention {
                    SurveyConvention::PaperTable => {
                        // ramified primes land in two rows of the printed
                        // tables: once by distinct root count, once by
                        // root count with multiplicity
                        let n = distinct_root_count(f, p)?;
                        let m = root_count_with_multiplicity(f, p)?;
                        if m != n {
                            counts[m] += 1;
                        }
                        exceptional.push((p.value(), Some(n)));
                        n
                    }
                    SurveyConvention::Clean => {
                        exceptional.push((p.value(), None));
                        continue;
                    }
                }
            }
            Err(e) => return Err(e),
        };
        counts[n] += 1;
        admitted += 1;
        acc.update(n as i64, 1)?;
    }
    Ok(ArtinSurvey {
        degree: d,
        counts,
        admitted,
        accumulator: acc,
        exceptional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ct(counts: &[usize]) -> CycleType {
        CycleType {
            counts: counts.to_vec(),
        }
    }

    #[test]
    fn counts_from_cycle_type() {
        assert_eq!(weight0_counts(&ct(&[0, 0, 1]), 3).unwrap(), 3);
        assert_eq!(weight0_counts(&ct(&[1, 1, 0]), 2).unwrap(), 3);
        assert_eq!(weight0_counts(&ct(&[3, 0, 0]), 1).unwrap(), 3);
        assert!(weight0_counts(&ct(&[1]), 0).is_err());
    }

    #[test]
    fn lpoly_from_cycle_type() {
        assert_eq!(weight0_lpoly(&ct(&[3, 0, 0])).coeffs, vec![1, -3, 3, -1]);
        assert_eq!(weight0_lpoly(&ct(&[0, 0, 1])).coeffs, vec![1, 0, 0, -1]);
        // (1 - T)(1 - T^2) expanded
        assert_eq!(weight0_lpoly(&ct(&[1, 1, 0])).coeffs, vec![1, -1, -1, 1]);
    }

    #[test]
    fn zeta_expand_examples() {
        let cubic = LPolynomial {
            coeffs: vec![1, 0, 0, -1],
            weight: 0,
            scale: 1,
        };
        assert_eq!(zeta_expand(&cubic, 6), vec![0, 0, 3, 0, 0, 3]);
        let split = LPolynomial {
            coeffs: vec![1, -3, 3, -1],
            weight: 0,
            scale: 1,
        };
        assert_eq!(zeta_expand(&split, 3), vec![3, 3, 3]);
    }

    /// Enumerate all cycle types of a given degree.
    pub(crate) fn all_cycle_types(d: usize) -> Vec<CycleType> {
        fn rec(d: usize, max_part: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if d == 0 {
                out.push(parts.clone());
                return;
            }
            for part in (1..=max_part.min(d)).rev() {
                parts.push(part);
                rec(d - part, part, parts, out);
                parts.pop();
            }
        }
        let mut partitions = Vec::new();
        rec(d, d, &mut Vec::new(), &mut partitions);
        partitions
            .into_iter()
            .map(|parts| {
                let mut counts = vec![0usize; d];
                for part in parts {
                    counts[part - 1] += 1;
                }
                CycleType { counts }
            })
            .collect()
    }

    #[test]
    fn zeta_roundtrip_through_degree_six() {
        for d in 1..=6 {
            for ct in all_cycle_types(d) {
                let lp = weight0_lpoly(&ct);
                let ns = zeta_expand(&lp, 12);
                for r in 1..=12u64 {
                    assert_eq!(
                        ns[r as usize - 1] as u64,
                        weight0_counts(&ct, r).unwrap(),
                        "ct={ct:?} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn s3_distribution() {
        let g = PermGroup::new(3, vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let dist = perm_group_distribution(&g, 5).unwrap();
        let c: Vec<f64> = dist.c_vector().iter().map(|r| r.to_f64().unwrap()).collect();
        assert_eq!(c, vec![1.0 / 3.0, 0.5, 0.0, 1.0 / 6.0]);
        let m: Vec<i64> = dist
            .moments
            .iter()
            .map(|r| r.to_integer().to_i64().unwrap())
            .collect();
        assert_eq!(m, vec![1, 1, 2, 5, 14, 41]);
        // closed form (3^{n-1} + 1)/2
        for n in 1..=5usize {
            assert_eq!(m[n], (3i64.pow(n as u32 - 1) + 1) / 2);
        }
    }

    #[test]
    fn c3_distribution() {
        let g = PermGroup::new(3, vec![vec![1, 2, 0]]).unwrap();
        let dist = perm_group_distribution(&g, 4).unwrap();
        let m: Vec<i64> = dist
            .moments
            .iter()
            .map(|r| r.to_integer().to_i64().unwrap())
            .collect();
        // direct enumeration of {id, two 3-cycles}: M_3 = 9, not the printed 19
        assert_eq!(m, vec![1, 1, 3, 9, 27]);
    }

    #[test]
    fn trivial_group_distribution() {
        let g = PermGroup::new(3, vec![]).unwrap();
        let dist = perm_group_distribution(&g, 4).unwrap();
        let m: Vec<i64> = dist
            .moments
            .iter()
            .map(|r| r.to_integer().to_i64().unwrap())
            .collect();
        assert_eq!(m, vec![1, 3, 9, 27, 81]);
    }

    #[test]
    fn survey_small_bounds() {
        let f = [1i64, -1, 0, 1];
        let s = artin_survey(&f, 1000, SurveyConvention::PaperTable, 1).unwrap();
        assert_eq!(s.admitted, 167);
        let c: Vec<f64> = s.c_vector().iter().map(|r| r.to_f64().unwrap()).collect();
        let expect = [0.323353, 0.520958, 0.005988, 0.155689];
        for (got, want) in c.iter().zip(expect) {
            assert!((got - want).abs() < 5e-7, "got {got} want {want}");
        }
        // the ramified prime 23 appears in both c_2 (two distinct roots)
        // and c_3 (three roots with multiplicity), so the c-vector sums to
        // 1 + 1/admitted
        let total: BigRational = s.c_vector().into_iter().sum();
        assert_eq!(
            total,
            BigRational::new(BigInt::from(168), BigInt::from(167))
        );
    }

    #[test]
    fn survey_single_prime() {
        let f = [1i64, -1, 0, 1];
        let s = artin_survey(&f, 2, SurveyConvention::Clean, 1).unwrap();
        assert_eq!(s.admitted, 1);
        // x^3 - x + 1 has no roots over F_2
        assert_eq!(s.counts[0], 1);
    }

    #[test]
    fn survey_partition_independent() {
        let f = [1i64, -1, 0, 1];
        let a = artin_survey(&f, 5000, SurveyConvention::PaperTable, 1).unwrap();
        let b = artin_survey(&f, 5000, SurveyConvention::PaperTable, 4).unwrap();
        assert_eq!(a.counts, b.counts);
        assert_eq!(a.admitted, b.admitted);
    }
}
