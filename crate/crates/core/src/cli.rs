//! Command-line front end. Data goes to the output stream (or `--output`),
//! diagnostics to the error stream.
//!
//! Exit status: 0 when every requested check passes, 1 when any verdict
//! fails, 2 on usage or domain errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::families::{expected_map, ConstructionRecord, Family};
use crate::gf::{build_field, nt, ElemRepr, FieldCtx, GeneratorCtx};
use crate::interpolate::{canonical_equal, lagrange, to_sparse};
use crate::permlab::verify_record;
use crate::poly::terms_json;
use crate::surveyor::{survey_field, survey_generators, survey_range, write_csv_summary, FieldReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "invopoly", version, about = "Involutory permutation polynomials over F_q")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, env = "INVOPOLY_FORMAT", default_value = "json")]
    pub format: Format,

    /// Write data here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build polynomials for the selected families and k.
    Construct(SelectArgs),
    /// Build and exhaustively verify the selected polynomials.
    Verify(SelectArgs),
    /// Interpolate the prescribed maps and compare with the constructions.
    Interp(SelectArgs),
    /// Verify every family for one field or a range of field orders.
    Survey(SurveyArgs),
    /// Compare the polynomial sets produced by every generator.
    SurveyGenerators(FieldArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct FieldArgs {
    /// Field order; must be a prime power.
    #[arg(long)]
    pub q: Option<u64>,
    /// Characteristic (alternative to --q).
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree, with --p.
    #[arg(long)]
    pub n: Option<u32>,
    /// Monic irreducible modulus, low degree first, e.g. "2,0,1" for t^2+2.
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SelectArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Generator override: "3" in a prime field, "[c0,c1,..]" otherwise.
    #[arg(long)]
    pub gamma: Option<String>,
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// Select every family and k (the default when neither is given).
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SurveyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Generator override, single-field mode only.
    #[arg(long)]
    pub gamma: Option<String>,
    /// Lower end of the field order range (default 7).
    #[arg(long)]
    pub q_min: Option<u64>,
    /// Upper end of the field order range (default 100).
    #[arg(long)]
    pub q_max: Option<u64>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Domain(e) => write!(f, "error: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs a parsed command line, returning the process exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match &cli.command {
        Command::Construct(a) => construct(a, cli.format),
        Command::Verify(a) => verify(a, cli.format),
        Command::Interp(a) => interp(a, cli.format),
        Command::Survey(a) => survey(a, cli.format),
        Command::SurveyGenerators(a) => generators(a, cli.format),
    };
    let (data, failures) = match outcome {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, data.as_bytes()),
        None => out.write_all(data.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "{}", CliError::Io(e));
        return EXIT_USAGE;
    }
    for f in &failures {
        let _ = writeln!(err, "FAILED: {f}");
    }
    if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn parse_digits(s: &str) -> CliResult<Vec<u64>> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|d| {
            d.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("cannot parse {s:?} as a digit list")))
        })
        .collect()
}

fn resolve_field(a: &FieldArgs) -> CliResult<FieldCtx> {
    let (p, n) = match (a.q, a.p) {
        (Some(q), p) => {
            let (qp, qn) = nt::prime_power(q).ok_or(Error::NotPrimePower(q))?;
            if p.is_some_and(|p| p != qp) || a.n.is_some_and(|n| n != qn) {
                return Err(CliError::Usage(format!("--q {q} conflicts with --p/--n")));
            }
            (qp, qn)
        }
        (None, Some(p)) => (p, a.n.unwrap_or(1)),
        (None, None) => return Err(CliError::Usage("give --q or --p".into())),
    };
    match &a.modulus {
        Some(m) => {
            let coeffs = parse_digits(m)?;
            if coeffs.len() != n as usize + 1 {
                return Err(CliError::Usage(format!(
                    "modulus {m:?} must have degree {n} ({} coefficients)",
                    n + 1
                )));
            }
            Ok(FieldCtx::with_modulus(p, &coeffs)?)
        }
        None => Ok(build_field(p, n)?),
    }
}

fn resolve_generator(field: FieldCtx, gamma: &Option<String>) -> CliResult<GeneratorCtx> {
    if !field.supports_families() {
        return Err(Error::UnsupportedField { q: field.q() }.into());
    }
    match gamma {
        None => Ok(GeneratorCtx::canonical(field)?),
        Some(s) => {
            let repr = if s.contains(['[', ',']) {
                ElemRepr::Digits(parse_digits(s)?)
            } else {
                ElemRepr::Scalar(
                    s.trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("cannot parse gamma {s:?}")))?,
                )
            };
            let g = field.parse_repr(&repr)?;
            Ok(GeneratorCtx::new(field, g)?)
        }
    }
}

fn select(a: &SelectArgs, gctx: &GeneratorCtx) -> CliResult<Vec<ConstructionRecord>> {
    if a.all && (a.family.is_some() || a.k.is_some()) {
        return Err(CliError::Usage("--all excludes --family and --k".into()));
    }
    let families: Vec<Family> = a.family.map_or(Family::ALL.to_vec(), |f| vec![f]);
    let ks: Vec<i64> = match a.k {
        Some(k) => vec![k],
        None => (0..gctx.m() as i64).collect(),
    };
    let mut out = Vec::new();
    for &f in &families {
        for &k in &ks {
            out.push(ConstructionRecord::build(gctx, f, k)?);
        }
    }
    Ok(out)
}

fn single(a: &SelectArgs) -> bool {
    a.family.is_some() && a.k.is_some()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn one_or_many<T: Serialize>(items: &[T], single: bool) -> String {
    if single && items.len() == 1 {
        to_json(&items[0])
    } else {
        to_json(&items)
    }
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(to_io)?;
    for r in rows {
        w.write_record(r).map_err(to_io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

type Outcome = CliResult<(String, Vec<String>)>;

fn construct(a: &SelectArgs, fmt: Format) -> Outcome {
    let gctx = resolve_generator(resolve_field(&a.field)?, &a.gamma)?;
    let ctx = gctx.field();
    let recs = select(a, &gctx)?;
    let data = match fmt {
        Format::Json => {
            let docs: Vec<_> = recs.iter().map(|r| r.to_doc(ctx)).collect();
            one_or_many(&docs, single(a))
        }
        Format::Csv => csv_string(
            &["q", "family", "k", "term_count", "polynomial"],
            recs.iter()
                .map(|r| {
                    vec![
                        ctx.q().to_string(),
                        r.family.to_string(),
                        r.k.to_string(),
                        r.term_count().to_string(),
                        r.poly.display(ctx),
                    ]
                })
                .collect(),
        )?,
        Format::Pretty => {
            let mut s = format!("F_{} gamma={}\n", ctx.q(), ctx.format_elem(gctx.gamma()));
            for r in &recs {
                let _ = writeln!(s, "{:>2} k={:<4} {}", r.family, r.k, r.poly.display(ctx));
            }
            s
        }
    };
    Ok((data, Vec::new()))
}

fn verify(a: &SelectArgs, fmt: Format) -> Outcome {
    let gctx = resolve_generator(resolve_field(&a.field)?, &a.gamma)?;
    let ctx = gctx.field();
    let recs = select(a, &gctx)?;
    let verdicts: Vec<_> = recs.iter().map(|r| verify_record(r, &gctx)).collect();
    let failures: Vec<String> = recs
        .iter()
        .zip(&verdicts)
        .filter(|(_, v)| !v.passed)
        .map(|(r, v)| {
            format!(
                "{} check={:?} witness={}",
                r.label(),
                v.failed_check,
                v.witness.as_ref().map_or("none".into(), ToString::to_string)
            )
        })
        .collect();
    let data = match fmt {
        Format::Json => one_or_many(&verdicts, single(a)),
        Format::Csv => csv_string(
            &["q", "family", "k", "term_count", "passed"],
            verdicts
                .iter()
                .map(|v| {
                    vec![
                        ctx.q().to_string(),
                        v.record.family.to_string(),
                        v.record.k.to_string(),
                        v.term_count.to_string(),
                        v.passed.to_string(),
                    ]
                })
                .collect(),
        )?,
        Format::Pretty => {
            let mut s = String::new();
            for v in &verdicts {
                let status = if v.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{:>2} k={:<4} {status} fixed={} cycles={:?}",
                    v.record.family,
                    v.record.k,
                    v.fixed_point_count,
                    v.cycle_type.counts()
                );
            }
            let passed = verdicts.iter().filter(|v| v.passed).count();
            let _ = writeln!(s, "{passed}/{} passed", verdicts.len());
            s
        }
    };
    Ok((data, failures))
}

#[derive(Serialize)]
struct InterpResult {
    family: Family,
    k: u64,
    interpolated: serde_json::Value,
    constructed: serde_json::Value,
    equal: bool,
}

fn interp(a: &SelectArgs, fmt: Format) -> Outcome {
    let gctx = resolve_generator(resolve_field(&a.field)?, &a.gamma)?;
    let ctx = gctx.field();
    let recs = select(a, &gctx)?;
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for r in &recs {
        let map = expected_map(r.family, &gctx, r.k as i64)?;
        let interp = to_sparse(&lagrange(ctx, &map)?);
        let equal = canonical_equal(&interp, &r.poly);
        if !equal {
            failures.push(format!("{} interpolation differs from construction", r.label()));
        }
        results.push((r, interp, equal));
    }
    let data = match fmt {
        Format::Json => {
            let docs: Vec<InterpResult> = results
                .iter()
                .map(|(r, i, eq)| InterpResult {
                    family: r.family,
                    k: r.k,
                    interpolated: terms_json(ctx, i),
                    constructed: terms_json(ctx, &r.poly),
                    equal: *eq,
                })
                .collect();
            one_or_many(&docs, single(a))
        }
        Format::Csv => csv_string(
            &["q", "family", "k", "equal"],
            results
                .iter()
                .map(|(r, _, eq)| {
                    vec![ctx.q().to_string(), r.family.to_string(), r.k.to_string(), eq.to_string()]
                })
                .collect(),
        )?,
        Format::Pretty => {
            let mut s = String::new();
            for (r, i, eq) in &results {
                let mark = if *eq { "==" } else { "!=" };
                let _ = writeln!(s, "{:>2} k={:<4} {} {mark} {}", r.family, r.k, i.display(ctx), r.poly.display(ctx));
            }
            s
        }
    };
    Ok((data, failures))
}

fn survey(a: &SurveyArgs, fmt: Format) -> Outcome {
    let ranged = a.q_min.is_some() || a.q_max.is_some();
    let reports: Vec<FieldReport> = if ranged {
        if a.field.q.is_some() || a.field.p.is_some() || a.gamma.is_some() {
            return Err(CliError::Usage("--q-min/--q-max exclude --q, --p and --gamma".into()));
        }
        let (lo, hi) = (a.q_min.unwrap_or(7), a.q_max.unwrap_or(100));
        if lo > hi {
            return Err(CliError::Usage(format!("empty range {lo}..{hi}")));
        }
        survey_range(lo, hi)?
    } else {
        let gctx = resolve_generator(resolve_field(&a.field)?, &a.gamma)?;
        vec![survey_field(gctx.field(), gctx.gamma())?]
    };
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.all_passed())
        .map(|r| {
            format!(
                "q={}: {}/{} verdicts passed, interpolation mismatches {:?}",
                r.q,
                r.passed_count(),
                r.verdicts.len(),
                r.interpolation_mismatches
            )
        })
        .collect();
    let data = match fmt {
        Format::Json => {
            if ranged {
                to_json(&reports)
            } else {
                to_json(&reports[0])
            }
        }
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv_summary(&reports, &mut buf).map_err(|e| CliError::Io(std::io::Error::other(e)))?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
        Format::Pretty => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(
                    s,
                    "q={:<5} gamma={:<10} passed={}/{} distinct={} zero-coeffs={} sparsity={:?}",
                    r.q,
                    r.gamma.to_string(),
                    r.passed_count(),
                    r.verdicts.len(),
                    r.distinct_permutations,
                    r.zero_coeff_incidents.len(),
                    r.sparsity_histogram
                );
            }
            s
        }
    };
    Ok((data, failures))
}

fn generators(a: &FieldArgs, fmt: Format) -> Outcome {
    let field = resolve_field(a)?;
    let rep = survey_generators(&field)?;
    let failures: Vec<String> = rep
        .per_generator_counts
        .iter()
        .filter(|g| !g.all_verified)
        .map(|g| format!("gamma={} has failing records", g.gamma))
        .collect();
    let data = match fmt {
        Format::Json => to_json(&rep),
        Format::Csv => csv_string(
            &["q", "gamma", "distinct_polynomials", "all_verified"],
            rep.per_generator_counts
                .iter()
                .map(|g| {
                    vec![
                        rep.q.to_string(),
                        g.gamma.to_string(),
                        g.distinct_polynomials.to_string(),
                        g.all_verified.to_string(),
                    ]
                })
                .collect(),
        )?,
        Format::Pretty => {
            let mut s = format!("q={} union={}\n", rep.q, rep.union_count);
            for (g, row) in rep.per_generator_counts.iter().zip(&rep.overlap_matrix) {
                let _ = writeln!(s, "gamma={:<10} count={:<5} overlaps={:?}", g.gamma.to_string(), g.distinct_polynomials, row);
            }
            s
        }
    };
    Ok((data, failures))
}
