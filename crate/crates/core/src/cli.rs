//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a proven bound fails, 2 usage or hypothesis
//! error, 3 malformed input.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{
    dbdg_witness_check, evaluate_bound, ratio_text, structure_witness, BoundKind, BoundReport,
    Rational, WitnessOutcome, WitnessParams,
};
use crate::compression::{
    compress_trace, normalize_pair_cmp1, normalize_pair_tmb, Cmp1Params, CompressionDirection,
    PairReduction,
};
use crate::constructions::ConstructionSpec;
use crate::error::{Error, Result};
use crate::pointset::{
    affine_dim, difference_set, fiber_partition, min_line_cover, parse_auto, restricted_difference,
    sumset, to_csv, to_json, to_text, Direction, PointSet,
};
use crate::search::{
    exhaustive_scan, local_search, ExtremalRecord, Objective, ScanOptions, ScanReport, SearchSpace,
    Severity, DEFAULT_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "diffsets",
    version,
    about = "Sumsets, difference sets and compressions of point sets in Z^d"
)]
struct Cli {
    /// Output format. Point sets default to text, reports to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// A + B (B defaults to A).
    Sumset(PairArgs),
    /// A - B (B defaults to A).
    Diffset(PairArgs),
    /// (A - B) minus the line through the origin along the direction.
    RestrictedDiff {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
    },
    /// Affine dimension.
    Dim { a: String },
    /// Fibers of A along a direction.
    Project {
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
    },
    /// Compress along W-directions in order, or normalize a pair.
    Compress {
        a: String,
        b: Option<String>,
        /// Compression direction; repeat for a sequence.
        #[arg(long, allow_hyphen_values = true)]
        direction: Vec<String>,
        #[arg(long, value_enum)]
        pipeline: Option<Pipeline>,
        /// Simplex scale m for the cmp1 pipeline.
        #[arg(long)]
        scale: Option<i64>,
    },
    /// Evaluate one bound, or every applicable one.
    Verify {
        a: String,
        b: Option<String>,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        kind: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
    },
    /// Named configurations.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Exhaustive or local search for extremal sets in {0..m}^d.
    Search(SearchArgs),
    /// Look for a line direction explaining a small sumset.
    Witness(WitnessArgs),
}

#[derive(Args, Debug)]
struct PairArgs {
    a: String,
    b: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Pipeline {
    Cmp1,
    Tmb,
}

#[derive(Subcommand, Debug)]
enum Construct {
    SimplexLine {
        #[arg(long)]
        d: usize,
        #[arg(long = "N")]
        n: usize,
    },
    SimplexLines {
        #[arg(long)]
        d: usize,
        /// Fiber sizes, e.g. "3 1 2".
        #[arg(long)]
        sizes: String,
    },
    Box {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: i64,
    },
    Random {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    m: i64,
    /// Single cardinality; or give --n-lo and --n-hi.
    #[arg(long, conflicts_with_all = ["n_lo", "n_hi"])]
    n: Option<usize>,
    #[arg(long, requires = "n_hi")]
    n_lo: Option<usize>,
    #[arg(long, requires = "n_lo")]
    n_hi: Option<usize>,
    /// A bound kind, or difference_size.
    #[arg(long)]
    objective: String,
    #[arg(long)]
    symmetry: bool,
    /// Keep sets of any dimension.
    #[arg(long)]
    any_dim: bool,
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Run a local search from this seed instead of a full scan.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1000, requires = "seed")]
    iterations: u64,
    /// Include wall time in the report (makes output vary between runs).
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    a: String,
    b: Option<String>,
    /// Subtracted from |A| + (d + 1/7)|B|; an integer or p/q.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    threshold: String,
    /// Constant of the |B| <= C_d(|pi(A)| + |pi(B)|) alternative.
    #[arg(long)]
    c_d: Option<String>,
    /// Check the two-hyperplane shape A = A1 ∪ A2 ∪ E instead.
    #[arg(long, requires_all = ["a2", "e", "direction", "epsilon"])]
    a1: Option<String>,
    #[arg(long)]
    a2: Option<String>,
    #[arg(long)]
    e: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    #[arg(long)]
    epsilon: Option<usize>,
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(err, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    let mut buf = String::new();
    match dispatch(&cli, &mut buf) {
        Ok(code) => {
            if out.write_all(buf.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. } => EXIT_PARSE,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn read_set(path: &str) -> Result<PointSet> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidParameter(format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}")))?
    };
    parse_auto(&text)
}

fn read_pair(a: &str, b: Option<&String>) -> Result<(PointSet, PointSet)> {
    let a = read_set(a)?;
    let b = match b {
        Some(p) => read_set(p)?,
        None => a.clone(),
    };
    Ok((a, b))
}

fn parse_vector(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidParameter(format!("bad vector entry `{t}` in \"{s}\"")))
        })
        .collect()
}

fn parse_direction(s: &str) -> Result<Direction> {
    Direction::new(&parse_vector(s)?)
}

fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidParameter(format!("bad size `{t}` in \"{s}\"")))
        })
        .collect()
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad rational `{s}`")))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn emit_set(a: &PointSet, fmt: Format, out: &mut String) {
    match fmt {
        Format::Text => out.push_str(&to_text(a)),
        Format::Csv => out.push_str(&to_csv(a)),
        Format::Json => {
            out.push_str(&to_json(a));
            out.push('\n');
        }
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<i32> {
    let set_fmt = cli.format.unwrap_or(Format::Text);
    let report_fmt = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::Sumset(p) => {
            let (a, b) = read_pair(&p.a, p.b.as_ref())?;
            emit_set(&sumset(&a, &b)?, set_fmt, out);
        }
        Command::Diffset(p) => {
            let (a, b) = read_pair(&p.a, p.b.as_ref())?;
            emit_set(&difference_set(&a, &b)?, set_fmt, out);
        }
        Command::RestrictedDiff { pair, direction } => {
            let (a, b) = read_pair(&pair.a, pair.b.as_ref())?;
            let v = parse_direction(direction)?;
            emit_set(&restricted_difference(&a, &b, &v)?, set_fmt, out);
        }
        Command::Dim { a } => {
            let a = read_set(a)?;
            let k = affine_dim(&a)?;
            match set_fmt {
                Format::Json => out.push_str(&json(
                    &serde_json::json!({ "dim": a.dim(), "affine_dim": k }),
                )),
                _ => out.push_str(&format!("{k}\n")),
            }
        }
        Command::Project { a, direction } => {
            let a = read_set(a)?;
            let part = fiber_partition(&a, &parse_direction(direction)?)?;
            match set_fmt {
                Format::Json => out.push_str(&json(&part)),
                Format::Text | Format::Csv => {
                    let sep = if set_fmt == Format::Csv { "," } else { " " };
                    out.push_str(&format!("# {} fibers: key, then size\n", part.len()));
                    for f in &part.fibers {
                        let key: Vec<String> = f.key.iter().map(i64::to_string).collect();
                        out.push_str(&format!("{}{sep}{}\n", key.join(sep), f.members.len()));
                    }
                }
            }
        }
        Command::Compress {
            a,
            b,
            direction,
            pipeline,
            scale,
        } => return compress_cmd(a, b.as_ref(), direction, *pipeline, *scale, cli.format, out),
        Command::Verify {
            a,
            b,
            kind,
            all,
            direction,
        } => {
            let a = read_set(a)?;
            let b = b.as_ref().map(|p| read_set(p)).transpose()?;
            let v = direction.as_deref().map(parse_direction).transpose()?;
            return if *all {
                verify_all(&a, b.as_ref(), v.as_ref(), report_fmt, out)
            } else {
                let kind: BoundKind = kind.as_deref().expect("clap requires --kind").parse()?;
                let r = evaluate_bound(kind, &a, b.as_ref(), v.as_ref())?;
                emit_reports(std::slice::from_ref(&r), &[], report_fmt, out);
                Ok(exit_for(&[r]))
            };
        }
        Command::Construct { what } => {
            let spec = match what {
                Construct::SimplexLine { d, n } => ConstructionSpec::SimplexLine { d: *d, n: *n },
                Construct::SimplexLines { d, sizes } => ConstructionSpec::SimplexLines {
                    d: *d,
                    sizes: parse_sizes(sizes)?,
                },
                Construct::Box { d, m } => ConstructionSpec::Box { d: *d, m: *m },
                Construct::Random { d, n, m, seed } => ConstructionSpec::RandomSubset {
                    d: *d,
                    n: *n,
                    m: *m,
                    seed: *seed,
                },
            };
            emit_set(&spec.build()?, set_fmt, out);
        }
        Command::Search(args) => return search_cmd(args, report_fmt, out),
        Command::Witness(args) => return witness_cmd(args, report_fmt, out),
    }
    Ok(EXIT_OK)
}

fn exit_for(reports: &[BoundReport]) -> i32 {
    if reports.iter().any(BoundReport::is_violation) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

#[derive(Serialize)]
struct Skipped {
    kind: BoundKind,
    reason: String,
}

#[derive(Serialize)]
struct VerifyAll<'a> {
    reports: &'a [BoundReport],
    skipped: &'a [Skipped],
}

/// Every kind whose hypotheses hold. `B` defaults to `A` and the direction to
/// the one covering `A` with the fewest lines.
fn verify_all(
    a: &PointSet,
    b: Option<&PointSet>,
    v: Option<&Direction>,
    fmt: Format,
    out: &mut String,
) -> Result<i32> {
    let b = b.unwrap_or(a);
    let cover = match v {
        Some(_) => None,
        None if a.len() >= 2 => Some(min_line_cover(a)?.0),
        None => None,
    };
    let v = v.or(cover.as_ref());
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for kind in BoundKind::ALL {
        match evaluate_bound(kind, a, Some(b), v) {
            Ok(r) => reports.push(r),
            Err(e @ (Error::Hypothesis { .. } | Error::MissingOperand { .. })) => {
                skipped.push(Skipped {
                    kind,
                    reason: e.to_string(),
                })
            }
            Err(e) => return Err(e),
        }
    }
    emit_reports(&reports, &skipped, fmt, out);
    Ok(exit_for(&reports))
}

fn emit_reports(reports: &[BoundReport], skipped: &[Skipped], fmt: Format, out: &mut String) {
    match fmt {
        Format::Json if skipped.is_empty() && reports.len() == 1 => {
            out.push_str(&json(&reports[0]))
        }
        Format::Json => out.push_str(&json(&VerifyAll { reports, skipped })),
        Format::Csv => {
            out.push_str(BoundReport::CSV_HEADER);
            out.push('\n');
            for r in reports {
                out.push_str(&r.csv_row());
                out.push('\n');
            }
        }
        Format::Text => {
            for r in reports {
                out.push_str(&format!("{r}\n"));
            }
            for s in skipped {
                out.push_str(&format!("{}: skipped ({})\n", s.kind, s.reason));
            }
        }
    }
}

fn compress_cmd(
    a: &str,
    b: Option<&String>,
    directions: &[String],
    pipeline: Option<Pipeline>,
    scale: Option<i64>,
    fmt: Option<Format>,
    out: &mut String,
) -> Result<i32> {
    let Some(pipeline) = pipeline else {
        if b.is_some() {
            return Err(Error::InvalidParameter(
                "a second set is only used with --pipeline".into(),
            ));
        }
        if directions.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one --direction is needed".into(),
            ));
        }
        let a = read_set(a)?;
        let vs = directions
            .iter()
            .map(|s| CompressionDirection::new(&parse_vector(s)?))
            .collect::<Result<Vec<_>>>()?;
        let trace = compress_trace(&a, &vs)?;
        match fmt.unwrap_or(Format::Json) {
            Format::Json => out.push_str(&json(&trace)),
            f => {
                let last = trace.last().expect("nonempty direction list");
                let pts = last
                    .after_set
                    .iter()
                    .map(|c| crate::pointset::Point::new(c))
                    .collect();
                emit_set(&PointSet::new(a.dim(), pts)?, f, out);
            }
        }
        return Ok(EXIT_OK);
    };
    let b = b.ok_or(Error::MissingOperand {
        context: "compress --pipeline".into(),
        operand: "B",
    })?;
    let (a, b) = read_pair(a, Some(b))?;
    let red: PairReduction = match pipeline {
        Pipeline::Cmp1 => {
            let scale =
                scale.ok_or_else(|| Error::InvalidParameter("cmp1 needs --scale".into()))?;
            normalize_pair_cmp1(&a, &b, Cmp1Params { scale })?
        }
        Pipeline::Tmb => {
            let [v] = directions else {
                return Err(Error::InvalidParameter(
                    "tmb needs exactly one --direction".into(),
                ));
            };
            normalize_pair_tmb(&a, &b, &parse_direction(v)?)?
        }
    };
    match fmt.unwrap_or(Format::Json) {
        Format::Json => out.push_str(&json(&red)),
        f => {
            out.push_str("# A'\n");
            emit_set(&red.a, f, out);
            out.push_str("# B'\n");
            emit_set(&red.b, f, out);
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SearchOutput<'a> {
    mode: &'static str,
    space: &'a SearchSpace,
    universe_size: usize,
    enumerated: u64,
    evaluated: u64,
    negative: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<u128>,
    records: &'a [ExtremalRecord],
}

fn search_cmd(args: &SearchArgs, fmt: Format, out: &mut String) -> Result<i32> {
    let (n_lo, n_hi) = match (args.n, args.n_lo, args.n_hi) {
        (Some(n), _, _) => (n, n),
        (None, Some(lo), Some(hi)) => (lo, hi),
        _ => {
            return Err(Error::InvalidParameter(
                "give --n or both --n-lo and --n-hi".into(),
            ))
        }
    };
    let space = SearchSpace {
        d: args.d,
        m: args.m,
        n_lo,
        n_hi,
        require_full_dim: !args.any_dim,
        objective: args.objective.parse::<Objective>()?,
        symmetry: args.symmetry,
        direction: args.direction.as_deref().map(parse_direction).transpose()?,
    };
    let universe_size = usize::try_from(args.m + 1)
        .ok()
        .and_then(|s| s.checked_pow(args.d as u32))
        .unwrap_or(usize::MAX);
    let started = Instant::now();
    let (report, mode) = match args.seed {
        Some(seed) => {
            let rec = local_search(&space, seed, args.iterations)?;
            let report = ScanReport {
                space: space.clone(),
                enumerated: rec.enumerated,
                evaluated: rec.evaluated,
                negative: rec.negative,
                records: vec![rec],
            };
            (report, "local")
        }
        None => {
            let opts = ScanOptions {
                workers: args.workers,
                budget: args.budget,
            };
            (exhaustive_scan(&space, &opts)?, "exhaustive")
        }
    };
    let wall_time_ms = args.timing.then(|| started.elapsed().as_millis());
    match fmt {
        Format::Json => out.push_str(&json(&SearchOutput {
            mode,
            space: &space,
            universe_size,
            enumerated: report.enumerated,
            evaluated: report.evaluated,
            negative: report.negative,
            seed: args.seed,
            iterations: args.seed.map(|_| args.iterations),
            wall_time_ms,
            records: &report.records,
        })),
        Format::Csv | Format::Text => {
            let csv = fmt == Format::Csv;
            if csv {
                out.push_str("size,value,slack,enumerated,evaluated,negative,severity,set\n");
            }
            for r in &report.records {
                let slack = r.slack.as_ref().map(ratio_text).unwrap_or_default();
                let pts: Vec<String> = r
                    .set
                    .iter()
                    .map(|p| {
                        let c: Vec<String> = p.coords().iter().map(i64::to_string).collect();
                        c.join(" ")
                    })
                    .collect();
                let severity = serde_json::to_value(r.severity).expect("plain enum");
                let severity = severity.as_str().unwrap_or_default();
                if csv {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        r.size,
                        r.value,
                        slack,
                        r.enumerated,
                        r.evaluated,
                        r.negative,
                        severity,
                        pts.join(";")
                    ));
                } else {
                    out.push_str(&format!(
                        "n={} value={} slack={} evaluated={} severity={} set={{{}}}\n",
                        r.size,
                        r.value,
                        if slack.is_empty() { "-" } else { &slack },
                        r.evaluated,
                        severity,
                        pts.join("; ")
                    ));
                }
            }
            if let Some(ms) = wall_time_ms {
                out.push_str(&format!("# wall time {ms} ms\n"));
            }
        }
    }
    let violated = report
        .records
        .iter()
        .any(|r| r.severity == Severity::Violation)
        || {
            matches!(space.objective, Objective::Bound(k) if k.is_proven()) && report.negative > 0
        };
    Ok(if violated { EXIT_VIOLATION } else { EXIT_OK })
}

fn witness_cmd(args: &WitnessArgs, fmt: Format, out: &mut String) -> Result<i32> {
    if let Some(a1) = &args.a1 {
        if args.b.is_some() {
            return Err(Error::InvalidParameter(
                "the partition check takes a single set".into(),
            ));
        }
        let a = read_set(&args.a)?;
        let a1 = read_set(a1)?;
        let a2 = read_set(args.a2.as_deref().expect("clap requires --a2"))?;
        let e = read_set(args.e.as_deref().expect("clap requires --e"))?;
        let v = parse_direction(
            args.direction
                .as_deref()
                .expect("clap requires --direction"),
        )?;
        let eps = args.epsilon.expect("clap requires --epsilon");
        let ok = dbdg_witness_check(&a, &a1, &a2, &e, &v, eps)?;
        match fmt {
            Format::Json => out.push_str(&json(&serde_json::json!({ "two_hyperplane_shape": ok }))),
            _ => out.push_str(&format!("{ok}\n")),
        }
        return Ok(EXIT_OK);
    }
    let (a, b) = read_pair(&args.a, args.b.as_ref())?;
    let params = WitnessParams {
        threshold: parse_rational(&args.threshold)?,
        c_d: args.c_d.as_deref().map(parse_rational).transpose()?,
    };
    let outcome = structure_witness(&a, &b, &params)?;
    match fmt {
        Format::Json => out.push_str(&json(&outcome)),
        _ => out.push_str(&match &outcome {
            WitnessOutcome::NotApplicable { sumset_size } => {
                format!("not applicable: |A + B| = {sumset_size} is above the threshold\n")
            }
            WitnessOutcome::Witness {
                direction,
                r_1,
                r_2,
                class,
            } => {
                let v: Vec<String> = direction.iter().map(i64::to_string).collect();
                let class = serde_json::to_value(class).expect("plain enum");
                format!(
                    "witness: direction ({}) r_1={r_1} r_2={r_2} class={}\n",
                    v.join(", "),
                    class.as_str().unwrap_or_default()
                )
            }
            WitnessOutcome::NoWitness => "no witness\n".to_string(),
        }),
    }
    Ok(EXIT_OK)
}
