//! Streaming statistics over normalized Frobenius traces: mergeable
//! moment accumulators, histograms, and moment-based classification
//! against the theoretical catalog.

use crate::error::{Error, Result};
use crate::stgroups::catalog_group;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub const MOMENT_DEPTH: usize = 10;

/// Raw samples retained for histogramming before switching to a frozen
/// streaming histogram.
pub const SAMPLE_CAP: usize = 1 << 22;

/// Streaming, mergeable statistic over normalized traces.
///
/// Power sums are accumulated with compensated (Kahan) summation; the
/// zero-trace count is taken on the exact integer trace, never on a
/// floating threshold.
#[derive(Debug, Clone)]
pub struct TraceAccumulator {
    /// Maximum absolute normalized trace: `2g` for genus-g curves, the
    /// degree `d` for weight-zero data.
    max_norm: u32,
    count: u64,
    zero_count: u64,
    sums: [f64; MOMENT_DEPTH],
    comps: [f64; MOMENT_DEPTH],
    samples: Vec<f64>,
    overflow_hist: Option<Histogram>,
}

impl TraceAccumulator {
    pub fn with_range(max_norm: u32) -> TraceAccumulator {
        TraceAccumulator {
            max_norm,
            count: 0,
            zero_count: 0,
            sums: [0.0; MOMENT_DEPTH],
            comps: [0.0; MOMENT_DEPTH],
            samples: Vec::new(),
            overflow_hist: None,
        }
    }

    pub fn for_genus(g: u32) -> TraceAccumulator {
        TraceAccumulator::with_range(2 * g)
    }

    pub fn max_norm(&self) -> u32 {
        self.max_norm
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn zero_count(&self) -> u64 {
        self.zero_count
    }

    /// Folds in an integer trace with scale `q`; the normalized value is
    /// `t / sqrt(q)`.
    pub fn update(&mut self, t: i64, q: u64) -> Result<()> {
        let bound = self.max_norm as i128 * self.max_norm as i128 * q as i128;
        if (t as i128) * (t as i128) > bound {
            return Err(Error::InvalidArgument(format!(
                "trace {t} violates |t| <= {}*sqrt({q})",
                self.max_norm
            )));
        }
        let x = t as f64 / (q as f64).sqrt();
        self.push(x, t == 0);
        Ok(())
    }

    /// Folds in an already-normalized sample (synthetic data from the
    /// group samplers). A sample counts as zero-trace iff it is exactly 0.
    pub fn update_sample(&mut self, x: f64) -> Result<()> {
        if x.abs() > self.max_norm as f64 + 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "sample {x} outside [-{0}, {0}]",
                self.max_norm
            )));
        }
        self.push(x, x == 0.0);
        Ok(())
    }

    fn push(&mut self, x: f64, is_zero: bool) {
        self.count += 1;
        if is_zero {
            self.zero_count += 1;
        }
        let mut pow = 1.0;
        for k in 0..MOMENT_DEPTH {
            pow *= x;
            // Kahan step
            let y = pow - self.comps[k];
            let t = self.sums[k] + y;
            self.comps[k] = (t - self.sums[k]) - y;
            self.sums[k] = t;
        }
        if let Some(h) = &mut self.overflow_hist {
            h.insert(x);
        } else if self.samples.len() < SAMPLE_CAP {
            self.samples.push(x);
        } else {
            // freeze the default bin rule at first overflow
            let nbins = (self.count as f64).sqrt().round().max(1.0) as usize;
            let mut h = Histogram::empty(self.max_norm, nbins);
            for &s in &self.samples {
                h.insert(s);
            }
            h.insert(x);
            self.samples.clear();
            self.overflow_hist = Some(h);
        }
    }

    pub fn merge(&self, other: &TraceAccumulator) -> Result<TraceAccumulator> {
        if self.max_norm != other.max_norm {
            return Err(Error::RangeMismatch);
        }
        let mut out = self.clone();
        out.count += other.count;
        out.zero_count += other.zero_count;
        for k in 0..MOMENT_DEPTH {
            out.sums[k] += other.sums[k];
            out.comps[k] = 0.0;
        }
        match (&mut out.overflow_hist, &other.overflow_hist) {
            (Some(h), Some(g)) => h.merge_in(g)?,
            (Some(h), None) => {
                for &s in &other.samples {
                    h.insert(s);
                }
            }
            (None, Some(g)) => {
                let mut h = g.clone();
                for &s in &out.samples {
                    h.insert(s);
                }
                out.samples.clear();
                out.overflow_hist = Some(h);
            }
            (None, None) => {
                out.samples.extend_from_slice(&other.samples);
                if out.samples.len() > SAMPLE_CAP {
                    let nbins = (out.count as f64).sqrt().round().max(1.0) as usize;
                    let mut h = Histogram::empty(out.max_norm, nbins);
                    for &s in &out.samples {
                        h.insert(s);
                    }
                    out.samples.clear();
                    out.overflow_hist = Some(h);
                }
            }
        }
        Ok(out)
    }

    /// `M_n = S_n / N` for `0 <= n <= nmax`, with `M_0 = 1`.
    pub fn moments(&self, nmax: usize) -> Result<Vec<f64>> {
        if self.count == 0 {
            return Err(Error::EmptyAccumulator);
        }
        let nmax = nmax.min(MOMENT_DEPTH);
        let mut out = vec![1.0];
        for k in 0..nmax {
            out.push(self.sums[k] / self.count as f64);
        }
        Ok(out)
    }

    pub fn zero_density(&self) -> Result<f64> {
        if self.count == 0 {
            return Err(Error::EmptyAccumulator);
        }
        Ok(self.zero_count as f64 / self.count as f64)
    }

    /// Histogram of retained samples; `nbins` defaults to `round(sqrt(N))`.
    pub fn histogram(&self, nbins: Option<usize>) -> Result<Histogram> {
        if self.count == 0 {
            return Err(Error::EmptyAccumulator);
        }
        if nbins == Some(0) {
            return Err(Error::InvalidArgument("nbins must be positive".into()));
        }
        if let Some(frozen) = &self.overflow_hist {
            return Ok(frozen.clone());
        }
        let nbins = nbins.unwrap_or_else(|| (self.count as f64).sqrt().round().max(1.0) as usize);
        let mut h = Histogram::empty(self.max_norm, nbins);
        for &s in &self.samples {
            h.insert(s);
        }
        Ok(h)
    }
}

/// Equal-width histogram over `[-max_norm, max_norm]`; left-closed
/// right-open bins, last bin closed.
#[derive(Debug, Clone)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl Histogram {
    fn empty(max_norm: u32, nbins: usize) -> Histogram {
        let lo = -(max_norm as f64);
        let width = 2.0 * max_norm as f64 / nbins as f64;
        let mut edges: Vec<f64> = (0..=nbins).map(|i| lo + i as f64 * width).collect();
        edges[nbins] = max_norm as f64;
        Histogram {
            edges,
            counts: vec![0; nbins],
            total: 0,
        }
    }

    fn insert(&mut self, x: f64) {
        let nbins = self.counts.len();
        let lo = self.edges[0];
        let hi = self.edges[nbins];
        let width = (hi - lo) / nbins as f64;
        let mut idx = ((x - lo) / width).floor() as isize;
        if idx < 0 {
            idx = 0;
        }
        if idx as usize >= nbins {
            idx = nbins as isize - 1;
        }
        self.counts[idx as usize] += 1;
        self.total += 1;
    }

    fn merge_in(&mut self, other: &Histogram) -> Result<()> {
        if self.edges != other.edges {
            return Err(Error::InvalidArgument(
                "histogram bin layouts differ".into(),
            ));
        }
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
        self.total += other.total;
        Ok(())
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.total as f64)
            .collect()
    }

    /// CSV with header `lo,hi,count,frequency`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lo,hi,count,frequency\n");
        for (i, &c) in self.counts.iter().enumerate() {
            out.push_str(&format!(
                "{:.6},{:.6},{},{:.6}\n",
                self.edges[i],
                self.edges[i + 1],
                c,
                c as f64 / self.total as f64
            ));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    /// (catalog name, distance score), scores nondecreasing.
    pub ranking: Vec<(String, f64)>,
    pub metric: String,
    pub orders: Vec<usize>,
}

/// Ranks catalog candidates by worst-case relative moment deviation over
/// even orders up to 10, plus the zero-density gap for entries carrying
/// an atom at zero.
pub fn classify(acc: &TraceAccumulator, candidates: &[&str]) -> Result<ClassificationReport> {
    if acc.count() < 1000 {
        return Err(Error::InvalidArgument(
            "classification needs at least 1000 samples".into(),
        ));
    }
    if candidates.is_empty() {
        return Err(Error::InvalidArgument("no candidates given".into()));
    }
    let emp = acc.moments(MOMENT_DEPTH)?;
    let emp_zero = acc.zero_density()?;
    let orders: Vec<usize> = (1..=5).map(|k| 2 * k).collect();
    let mut ranking = Vec::new();
    for &name in candidates {
        let spec = catalog_group(name)?;
        if 2 * spec.genus != acc.max_norm() {
            return Err(Error::RangeMismatch);
        }
        let cat: Vec<f64> = spec.moments.iter().map(|v| v.to_f64().unwrap()).collect();
        let mut score: f64 = 0.0;
        for &n in &orders {
            let d = (emp[n] - cat[n]).abs() / (1.0 + cat[n]);
            score = score.max(d);
        }
        let zd = rational_to_f64(&spec.zero_trace_density);
        if zd > 0.0 {
            score += (emp_zero - zd).abs();
        }
        ranking.push((name.to_string(), score));
    }
    ranking.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(ClassificationReport {
        ranking,
        metric: "max relative even-moment deviation (n<=10) + zero-density gap".into(),
        orders,
    })
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// CSV with header `n,M_n`.
pub fn moments_csv(moments: &[f64], full_precision: bool) -> String {
    let mut out = String::from("n,M_n\n");
    for (n, m) in moments.iter().enumerate() {
        if full_precision {
            out.push_str(&format!("{n},{m}\n"));
        } else {
            out.push_str(&format!("{n},{m:.6}\n"));
        }
    }
    out
}
