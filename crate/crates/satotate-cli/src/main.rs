//! Command-line front end: prime surveys, exact catalog moments, Frobenius
//! power traces, and distribution classification, with CSV or JSON output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use satotate::artin::{artin_survey, SurveyConvention};
use satotate::curves::{
    curve_survey, frobenius_power_traces, BaseField, EllipticCurve, HyperellipticCurve,
    QuadraticField, SurveyTarget,
};
use satotate::stats::{classify, moments_csv};
use satotate::stgroups::{catalog_group, catalog_names};
use satotate::Error;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "satotate", version, about = "Frobenius-trace statistics and Sato-Tate moments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Precision {
    Rounded,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    #[value(name = "paper-table")]
    PaperTable,
    Clean,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Floating-point output precision (6 decimals unless `full`)
    #[arg(long, value_enum, default_value = "rounded")]
    precision: Precision,
}

impl OutputOpts {
    fn fmt(&self, v: f64) -> String {
        match self.precision {
            Precision::Rounded => format!("{v:.6}"),
            Precision::Full => format!("{v}"),
        }
    }
}

fn default_workers() -> usize {
    std::env::var("SATOTATE_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1)
}

#[derive(Subcommand)]
enum Command {
    /// Survey cycle types of a squarefree integer polynomial over primes up to a bound
    Artin {
        /// Coefficients, lowest degree first, comma-separated
        #[arg(long, value_delimiter = ',', required = true)]
        poly: Vec<i64>,
        #[arg(long)]
        bound: u64,
        #[arg(long, value_enum, default_value = "paper-table")]
        convention: Convention,
        /// Moment depth for the factorization distribution
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Survey normalized Frobenius traces of an elliptic curve y^2 = x^3 + Ax + B
    Ec {
        /// A,B
        #[arg(long, value_delimiter = ',', required = true)]
        curve: Vec<i64>,
        #[arg(long)]
        bound: u64,
        /// Survey over an imaginary quadratic field of this fundamental discriminant
        #[arg(long, allow_hyphen_values = true)]
        disc: Option<i64>,
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        /// Also print the per-prime (p, t, normalized) table
        #[arg(long)]
        emit_samples: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Survey normalized Frobenius traces of a genus-2 curve y^2 = f(x), deg f in {5, 6}
    Genus2 {
        /// Coefficients of f, lowest degree first
        #[arg(long, value_delimiter = ',', required = true)]
        poly: Vec<i64>,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[arg(long)]
        emit_samples: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Traces of Frobenius powers alpha^r + conj(alpha)^r for given t, q
    Powers {
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        rmax: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Print the exact moment sequence of a catalog Sato-Tate group
    Group {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Survey a curve, then rank catalog candidates by moment distance
    Classify {
        /// Elliptic A,B (exclusive with --poly)
        #[arg(long, value_delimiter = ',', conflicts_with = "poly")]
        curve: Option<Vec<i64>>,
        /// Genus-2 coefficients, lowest degree first
        #[arg(long, value_delimiter = ',')]
        poly: Option<Vec<i64>>,
        #[arg(long)]
        bound: u64,
        #[arg(long, allow_hyphen_values = true)]
        disc: Option<i64>,
        /// Candidate group names (default: all catalog entries of the right genus)
        #[arg(long, value_delimiter = ',')]
        candidates: Option<Vec<String>>,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Capacity(_) => ExitCode::from(3),
                Error::InvalidArgument(_) | Error::UnknownGroup(_) | Error::RangeMismatch => {
                    ExitCode::from(2)
                }
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn run(cmd: Command) -> satotate::Result<()> {
    match cmd {
        Command::Artin {
            poly,
            bound,
            convention,
            nmax,
            workers,
            out,
        } => {
            let convention = match convention {
                Convention::PaperTable => SurveyConvention::PaperTable,
                Convention::Clean => SurveyConvention::Clean,
            };
            let survey = artin_survey(&poly, bound, convention, workers)?;
            let c: Vec<f64> = survey
                .c_vector()
                .iter()
                .map(|v| v.to_f64().unwrap())
                .collect();
            let moments = survey.accumulator.moments(nmax)?;
            match out.format {
                Format::Csv => {
                    println!("i,c_i");
                    for (i, v) in c.iter().enumerate() {
                        println!("{i},{}", out.fmt(*v));
                    }
                    print!("{}", moments_csv(&moments, matches!(out.precision, Precision::Full)));
                    println!("admitted,{}", survey.admitted);
                    for (p, roots) in &survey.exceptional {
                        match roots {
                            Some(r) => println!("warning,ramified prime {p} counted with {r} distinct roots"),
                            None => println!("warning,skipped ramified prime {p}"),
                        }
                    }
                }
                Format::Json => {
                    let warnings: Vec<String> = survey
                        .exceptional
                        .iter()
                        .map(|(p, roots)| match roots {
                            Some(r) => format!("ramified prime {p} counted with {r} distinct roots"),
                            None => format!("skipped ramified prime {p}"),
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "c": c.iter().map(|v| json_num(*v, &out)).collect::<Vec<_>>(),
                            "moments": moments.iter().map(|v| json_num(*v, &out)).collect::<Vec<_>>(),
                            "admitted": survey.admitted,
                            "warnings": warnings,
                        })
                    );
                }
            }
            Ok(())
        }
        Command::Ec {
            curve,
            bound,
            disc,
            bins,
            nmax,
            workers,
            emit_samples,
            out,
        } => {
            let [a, b] = curve_pair(&curve)?;
            let e = EllipticCurve::new(a, b)?;
            let base = base_field(disc)?;
            let survey = curve_survey(&SurveyTarget::Elliptic(e), bound, base, workers)?;
            report_curve_survey(&survey, bins, nmax, emit_samples, &out)
        }
        Command::Genus2 {
            poly,
            bound,
            bins,
            nmax,
            workers,
            emit_samples,
            out,
        } => {
            let c = HyperellipticCurve::new(poly)?;
            let survey = curve_survey(
                &SurveyTarget::Genus2(c),
                bound,
                BaseField::Rationals,
                workers,
            )?;
            report_curve_survey(&survey, bins, nmax, emit_samples, &out)
        }
        Command::Powers { trace, q, rmax, out } => {
            let traces = frobenius_power_traces(trace, q, rmax)?;
            match out.format {
                Format::Csv => {
                    println!("r,trace,normalized");
                    for t in &traces {
                        println!("{},{},{}", t.r, t.trace, out.fmt(t.normalized));
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = traces
                        .iter()
                        .map(|t| {
                            serde_json::json!({
                                "r": t.r,
                                "trace": t.trace.to_string(),
                                "normalized": json_num(t.normalized, &out),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::Value::Array(rows));
                }
            }
            Ok(())
        }
        Command::Group { name, nmax, out } => {
            if nmax > 10 {
                return Err(Error::InvalidArgument("nmax is capped at 10".into()));
            }
            let g = catalog_group(&name)?;
            let vals: Vec<String> = g.moments[..=nmax].iter().map(format_rational).collect();
            match out.format {
                Format::Csv => {
                    println!("{}", vals.join(","));
                    if !g.zero_trace_density.to_f64().unwrap_or(0.0).eq(&0.0) {
                        println!("zero_trace_density,{}", format_rational(&g.zero_trace_density));
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "name": g.name,
                            "genus": g.genus,
                            "moments": vals,
                            "zero_trace_density": format_rational(&g.zero_trace_density),
                            "connected": g.connected,
                        })
                    );
                }
            }
            Ok(())
        }
        Command::Classify {
            curve,
            poly,
            bound,
            disc,
            candidates,
            workers,
            out,
        } => {
            let (target, genus) = match (curve, poly) {
                (Some(ab), None) => {
                    let [a, b] = curve_pair(&ab)?;
                    (SurveyTarget::Elliptic(EllipticCurve::new(a, b)?), 1u32)
                }
                (None, Some(f)) => (SurveyTarget::Genus2(HyperellipticCurve::new(f)?), 2),
                _ => {
                    return Err(Error::InvalidArgument(
                        "pass exactly one of --curve or --poly".into(),
                    ))
                }
            };
            let base = base_field(disc)?;
            let survey = curve_survey(&target, bound, base, workers)?;
            let names: Vec<String> = match candidates {
                Some(c) => c,
                None => catalog_names()
                    .into_iter()
                    .filter(|n| catalog_group(n).map(|g| g.genus == genus).unwrap_or(false))
                    .map(String::from)
                    .collect(),
            };
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let report = classify(&survey.accumulator, &refs)?;
            match out.format {
                Format::Csv => {
                    println!("name,score");
                    for (name, score) in &report.ranking {
                        println!("{name},{}", out.fmt(*score));
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = report
                        .ranking
                        .iter()
                        .map(|(name, score)| {
                            serde_json::json!({"name": name, "score": json_num(*score, &out)})
                        })
                        .collect();
                    println!("{}", serde_json::Value::Array(rows));
                }
            }
            Ok(())
        }
    }
}

fn curve_pair(coeffs: &[i64]) -> satotate::Result<[i64; 2]> {
    match coeffs {
        &[a, b] => Ok([a, b]),
        _ => Err(Error::InvalidArgument(
            "--curve takes exactly two coefficients A,B".into(),
        )),
    }
}

fn base_field(disc: Option<i64>) -> satotate::Result<BaseField> {
    Ok(match disc {
        None => BaseField::Rationals,
        Some(d) => BaseField::Quadratic(QuadraticField::new(d)?),
    })
}

fn report_curve_survey(
    survey: &satotate::curves::CurveSurvey,
    bins: Option<usize>,
    nmax: usize,
    emit_samples: bool,
    out: &OutputOpts,
) -> satotate::Result<()> {
    let acc = &survey.accumulator;
    let moments = acc.moments(nmax)?;
    let zd = acc.zero_density()?;
    let hist = acc.histogram(bins)?;
    match out.format {
        Format::Csv => {
            if emit_samples {
                println!("p,t,normalized");
                for &(p, t) in &survey.samples {
                    println!("{p},{t},{}", out.fmt(t as f64 / (p as f64).sqrt()));
                }
            }
            print!("{}", moments_csv(&moments, matches!(out.precision, Precision::Full)));
            println!("zero_trace_density,{}", out.fmt(zd));
            println!("lo,hi,count,frequency");
            for (lo, hi, count, freq) in histogram_rows(&hist) {
                println!("{},{},{count},{}", out.fmt(lo), out.fmt(hi), out.fmt(freq));
            }
            for p in &survey.skipped_bad {
                println!("warning,skipped bad prime {p}");
            }
        }
        Format::Json => {
            let samples: Option<Vec<_>> = emit_samples.then(|| {
                survey
                    .samples
                    .iter()
                    .map(|&(p, t)| {
                        serde_json::json!({
                            "p": p,
                            "t": t,
                            "normalized": json_num(t as f64 / (p as f64).sqrt(), out),
                        })
                    })
                    .collect()
            });
            let bins_json: Vec<_> = histogram_rows(&hist)
                .into_iter()
                .map(|(lo, hi, count, freq)| {
                    serde_json::json!({
                        "lo": json_num(lo, out),
                        "hi": json_num(hi, out),
                        "count": count,
                        "frequency": json_num(freq, out),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "count": acc.count(),
                    "moments": moments.iter().map(|v| json_num(*v, out)).collect::<Vec<_>>(),
                    "zero_trace_density": json_num(zd, out),
                    "histogram": bins_json,
                    "samples": samples,
                    "warnings": survey
                        .skipped_bad
                        .iter()
                        .map(|p| format!("skipped bad prime {p}"))
                        .collect::<Vec<_>>(),
                })
            );
        }
    }
    Ok(())
}

fn histogram_rows(hist: &satotate::stats::Histogram) -> Vec<(f64, f64, u64, f64)> {
    let freqs = hist.frequencies();
    (0..hist.counts.len())
        .map(|i| (hist.edges[i], hist.edges[i + 1], hist.counts[i], freqs[i]))
        .collect()
}

/// JSON numbers carry the same rounding as the CSV output so the two
/// formats agree digit for digit.
fn json_num(v: f64, out: &OutputOpts) -> serde_json::Value {
    match out.precision {
        Precision::Full => serde_json::json!(v),
        Precision::Rounded => {
            let r: f64 = format!("{v:.6}").parse().unwrap();
            serde_json::json!(r)
        }
    }
}

fn format_rational(r: &num_rational::BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
