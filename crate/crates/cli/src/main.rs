//! Command-line front door: generate, solve, verify, cross-check, and
//! benchmark instances from the shell.
//!
//! Exit codes: 0 success, 1 oracle-check mismatch, 2 input or parameter
//! error, 3 audit failure, 4 certification refusal, 5 verification failure.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dcbo_core::*;

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_AUDIT: u8 = 3;
const EXIT_REFUSED: u8 = 4;
const EXIT_VERIFY: u8 = 5;

/// Environment variable overriding the domain enumeration cap.
const ENUM_CAP_VAR: &str = "DCBO_ENUM_CAP";

#[derive(Parser)]
#[command(
    name = "dcbo",
    version,
    about = "Exact Pareto value sets for biobjective discrete convex optimization"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a seeded instance file.
    Gen(GenArgs),
    /// Solve an instance and print its Pareto optimal value set.
    Solve(SolveArgs),
    /// Run the exchange-axiom verifier matching the instance's claim.
    Verify(VerifyArgs),
    /// Solve with both the matching algorithm and the brute-force oracle,
    /// and compare the value sets.
    OracleCheck(OracleCheckArgs),
    /// Solve a corpus directory and emit a CSV of counters and timings.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum KindArg {
    Mnatbb,
    Mbb,
    Mlb,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Mnatbb => Kind::Mnatbb,
            KindArg::Mbb => Kind::Mbb,
            KindArg::Mlb => Kind::Mlb,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum FamilyArg {
    Matroid,
    Separable,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum MatroidArg {
    Uniform,
    Partition,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum SumArg {
    Eq,
    Range,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum SourceArg {
    Bases,
    Independent,
    Window,
}

#[derive(Args)]
struct GenArgs {
    /// Problem kind of the emitted instance.
    #[arg(value_enum)]
    kind: KindArg,
    #[arg(long)]
    seed: u64,
    /// Output path for the instance file.
    #[arg(long)]
    out: PathBuf,
    /// Lattice kinds: which instance family to generate.
    #[arg(long, value_enum, default_value = "matroid")]
    family: FamilyArg,
    /// Ground set size.
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Base rank (matroid family).
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long, value_enum, default_value = "uniform")]
    matroid: MatroidArg,
    #[arg(long, default_value_t = -5)]
    cost_lo: i64,
    #[arg(long, default_value_t = 9)]
    cost_hi: i64,
    /// Probability, in percent, that b(e) = 1.
    #[arg(long, default_value_t = 50)]
    b_density_pct: u8,
    /// Box radius (separable family).
    #[arg(long, default_value_t = 2)]
    radius: i64,
    /// Sum constraint mode (separable family).
    #[arg(long, value_enum, default_value = "eq")]
    sum: SumArg,
    /// Add an extra linear term (separable family).
    #[arg(long)]
    extra_linear: bool,
    /// Number of categories (mlb).
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Family source (mlb).
    #[arg(long, value_enum, default_value = "bases")]
    source: SourceArg,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Skip certification; the run then carries a warning marker.
    #[arg(long)]
    unchecked: bool,
    /// Also run the oracle audits and fail on any mismatch.
    #[arg(long)]
    audit: bool,
    /// Fall back to the unrestricted transition search if the restricted
    /// candidate set of the M-convex walk is unexpectedly empty.
    #[arg(long)]
    fallback_unrestricted: bool,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
}

#[derive(Args)]
struct OracleCheckArgs {
    instance: PathBuf,
    #[arg(long)]
    unchecked: bool,
}

#[derive(Args)]
struct BenchArgs {
    corpus: PathBuf,
    /// Timing repetitions per instance.
    #[arg(long, default_value_t = 1)]
    repeat: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Gen(args) => cmd_gen(&args),
        Cmd::Solve(args) => cmd_solve(&args),
        Cmd::Verify(args) => cmd_verify(&args),
        Cmd::OracleCheck(args) => cmd_oracle_check(&args),
        Cmd::Bench(args) => cmd_bench(&args),
    };
    ExitCode::from(code)
}

/// Writes to stdout, treating a closed pipe (e.g. `| head`) as a normal
/// end of output.
fn emit(text: impl AsRef<str>) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_ref().as_bytes()).is_err() {
        std::process::exit(0);
    }
}

fn emit_line(text: impl AsRef<str>) {
    emit(text);
    emit("\n");
}

fn enum_cap() -> Result<usize, String> {
    match std::env::var(ENUM_CAP_VAR) {
        Ok(text) => text
            .parse::<usize>()
            .map_err(|_| format!("{ENUM_CAP_VAR} must be a positive integer, got {text:?}")),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn solve_options(unchecked: bool, fallback_unrestricted: bool) -> Result<SolveOptions, String> {
    Ok(SolveOptions {
        unchecked,
        fallback_unrestricted,
        enum_cap: enum_cap()?,
        ..Default::default()
    })
}

fn digest(file: &InstanceFile) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(file.canonical_json().as_bytes());
    format!("{:x}", hasher.finalize())
}

fn cmd_gen(args: &GenArgs) -> u8 {
    let kind: Kind = args.kind.into();
    let result = match (kind, args.family) {
        (Kind::Mlb, _) => gen_gmatroid(
            args.seed,
            &GMatroidParams {
                n: args.n,
                m: args.m,
                source: match args.source {
                    SourceArg::Bases => FamilySource::Bases,
                    SourceArg::Independent => FamilySource::IndependentSets,
                    SourceArg::Window => FamilySource::Window,
                },
                cost_lo: args.cost_lo,
                cost_hi: args.cost_hi,
            },
        ),
        (_, FamilyArg::Matroid) => gen_matroid_linear(
            kind,
            args.seed,
            &MatroidLinearParams {
                n: args.n,
                r: args.r,
                matroid: match args.matroid {
                    MatroidArg::Uniform => MatroidKind::Uniform,
                    MatroidArg::Partition => MatroidKind::Partition,
                },
                cost_lo: args.cost_lo,
                cost_hi: args.cost_hi,
                b_density_pct: args.b_density_pct,
            },
        ),
        (_, FamilyArg::Separable) => gen_separable(
            kind,
            args.seed,
            &SeparableParams {
                n: args.n,
                radius: args.radius,
                mode: match args.sum {
                    SumArg::Eq => SumMode::Eq,
                    SumArg::Range => SumMode::Range,
                },
                extra_linear: args.extra_linear,
                b_density_pct: args.b_density_pct,
            },
        ),
    };
    let file = match result {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    if let Err(e) = write_instance(&file, &args.out) {
        eprintln!("error: cannot write {}: {e}", args.out.display());
        return EXIT_INPUT;
    }
    emit_line(format!("wrote {} ({} {})", args.out.display(), file.kind, digest(&file)));
    EXIT_OK
}

enum Solved {
    Lattice { run: MnatbbRun, oracle: Objective, weights: BinaryWeights },
    Mixed { run: MlbRun, oracle: Objective, family: SetFamily, partition: CategoryPartition },
}

fn solve_instance(
    file: &InstanceFile,
    opts: &SolveOptions,
) -> Result<Solved, (u8, String)> {
    let built = file.build().map_err(|e| (EXIT_INPUT, e.to_string()))?;
    let map_err = |e: SolveError| match e {
        SolveError::UnusableClaim(_)
        | SolveError::CertificationFailed(_)
        | SolveError::InvariantViolation(_) => (EXIT_REFUSED, e.to_string()),
        other => (EXIT_INPUT, other.to_string()),
    };
    match built {
        BuiltInstance::Lattice { kind, oracle, weights, .. } => {
            let run = match kind {
                Kind::Mnatbb => solve_mnatbb(&oracle, &weights, opts).map_err(map_err)?,
                Kind::Mbb => solve_mbb(&oracle, &weights, opts).map_err(map_err)?.base,
                Kind::Mlb => unreachable!("lattice build carries a lattice kind"),
            };
            Ok(Solved::Lattice { run, oracle, weights })
        }
        BuiltInstance::Mixed { oracle, family, partition, ground } => {
            let gm = if opts.unchecked {
                GMatroidFamily::new_unchecked(ground, family.clone())
            } else {
                GMatroidFamily::new(ground, family.clone())
                    .map_err(|report| (EXIT_REFUSED, format!("certification failed: {report}")))?
            };
            let run = solve_mlb(&oracle, &gm, &partition, opts).map_err(map_err)?;
            Ok(Solved::Mixed { run, oracle, family, partition })
        }
    }
}

/// Audit clause results as (name, passed, detail) rows; deterministic.
fn lattice_audit(
    run: &MnatbbRun,
    oracle: &Objective,
    weights: &BinaryWeights,
    cap: usize,
) -> Result<Vec<(String, bool, String)>, String> {
    let mut rows = Vec::new();
    let table = level_table(oracle, weights, cap).map_err(|e| e.to_string())?;
    let report = audit_run(run, &table);
    for (name, clause) in report.clauses() {
        rows.push((
            name.to_string(),
            clause.passed(),
            match clause {
                Clause::Pass => String::new(),
                Clause::Fail(msg) => msg.clone(),
            },
        ));
    }

    let values: BTreeSet<ParetoValue2> = run.values.iter().copied().collect();
    let brute = brute_pareto_2d(oracle, weights, cap).map_err(|e| e.to_string())?;
    rows.push((
        "oracle-equivalence".to_string(),
        values == brute,
        if values == brute {
            String::new()
        } else {
            format!("solver {values:?} vs oracle {brute:?}")
        },
    ));

    let full = full_value_set(oracle, weights, cap).map_err(|e| e.to_string())?;
    let support = supportedness_check(&values, &full);
    rows.push((
        "supportedness".to_string(),
        support.passed(),
        match &support.result {
            Clause::Pass => String::new(),
            Clause::Fail(msg) => msg.clone(),
        },
    ));

    rows.push((
        "level-contiguity".to_string(),
        table.is_contiguous(),
        if table.is_contiguous() { String::new() } else { "realized levels have gaps".into() },
    ));
    Ok(rows)
}

fn mixed_audit(
    run: &MlbRun,
    oracle: &Objective,
    family: &SetFamily,
    partition: &CategoryPartition,
) -> Vec<(String, bool, String)> {
    let mut rows = Vec::new();
    let values: BTreeSet<LexValue> = run.values.iter().cloned().collect();
    let brute = brute_pareto_lex(oracle, family, partition);
    rows.push((
        "oracle-equivalence".to_string(),
        values == brute,
        if values == brute {
            String::new()
        } else {
            format!("solver {values:?} vs oracle {brute:?}")
        },
    ));

    let full = full_lex_value_set(oracle, family, partition);
    let undominated =
        run.values.iter().all(|v| !full.iter().any(|w| dominates_mixed(w, v)));
    rows.push((
        "no-filter".to_string(),
        undominated,
        if undominated { String::new() } else { "a recorded value is dominated".into() },
    ));

    let bounded = run.outer_iterations <= family.len() as u64;
    rows.push((
        "outer-loop-bound".to_string(),
        bounded,
        if bounded { String::new() } else { "outer loop exceeded the family size".into() },
    ));
    rows
}

fn cmd_solve(args: &SolveArgs) -> u8 {
    let opts = match solve_options(args.unchecked, args.fallback_unrestricted) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let file = match read_instance(&args.instance) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let solved = match solve_instance(&file, &opts) {
        Ok(s) => s,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };

    let audit_rows = if args.audit {
        let rows = match &solved {
            Solved::Lattice { run, oracle, weights } => {
                match lattice_audit(run, oracle, weights, opts.enum_cap) {
                    Ok(rows) => rows,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return EXIT_INPUT;
                    }
                }
            }
            Solved::Mixed { run, oracle, family, partition } => {
                mixed_audit(run, oracle, family, partition)
            }
        };
        Some(rows)
    } else {
        None
    };

    match args.format {
        FormatArg::Csv => {
            match &solved {
                Solved::Lattice { run, .. } => emit(lattice_csv(run)),
                Solved::Mixed { run, .. } => emit(mixed_csv(run)),
            }
            if let Some(rows) = &audit_rows {
                for (name, passed, detail) in rows {
                    if *passed {
                        eprintln!("audit {name}: PASS");
                    } else {
                        eprintln!("audit {name}: FAIL {detail}");
                    }
                }
            }
        }
        FormatArg::Json => {
            let report = json_report(&file, &solved, audit_rows.as_deref());
            emit_line(serde_json::to_string_pretty(&report).expect("reports serialize"));
        }
    }

    match audit_rows {
        Some(rows) if rows.iter().any(|(_, passed, _)| !passed) => EXIT_AUDIT,
        _ => EXIT_OK,
    }
}

fn lattice_csv(run: &MnatbbRun) -> String {
    let mut out = String::from("g,k\n");
    for v in &run.values {
        out.push_str(&format!("{},{}\n", v.g, v.k));
    }
    out
}

fn mixed_csv(run: &MlbRun) -> String {
    let mut out = String::from("g,eta\n");
    for v in &run.values {
        out.push_str(&format!("{},{}\n", v.g, format_eta(&v.eta)));
    }
    out
}

fn json_report(
    file: &InstanceFile,
    solved: &Solved,
    audit: Option<&[(String, bool, String)]>,
) -> serde_json::Value {
    let audit_value = audit.map(|rows| {
        serde_json::Value::Object(
            rows.iter()
                .map(|(name, passed, detail)| {
                    let entry = if *passed {
                        json!({"result": "pass"})
                    } else {
                        json!({"result": "fail", "detail": detail})
                    };
                    (name.clone(), entry)
                })
                .collect(),
        )
    });
    let mut report = match solved {
        Solved::Lattice { run, .. } => json!({
            "format": "dcbo-run/1",
            "instance": digest(file),
            "kind": file.kind.to_string(),
            "warned_unchecked": run.warned_unchecked,
            "values": run.values.iter().map(|v| json!({"g": v.g, "k": v.k})).collect::<Vec<_>>(),
            "counters": {
                "iterations": run.iterations,
                "oracle_calls": run.oracle_calls(),
                "seed_oracle_calls": run.seed_oracle_calls,
                "loop_oracle_calls": run.loop_oracle_calls,
            },
        }),
        Solved::Mixed { run, .. } => json!({
            "format": "dcbo-run/1",
            "instance": digest(file),
            "kind": file.kind.to_string(),
            "warned_unchecked": run.warned_unchecked,
            "values": run.values.iter().map(|v| json!({"g": v.g, "eta": v.eta})).collect::<Vec<_>>(),
            "counters": {
                "outer_iterations": run.outer_iterations,
                "oracle_calls": run.oracle_calls,
            },
        }),
    };
    if let Some(a) = audit_value {
        report.as_object_mut().expect("report is an object").insert("audit".to_string(), a);
    }
    report
}

fn cmd_verify(args: &VerifyArgs) -> u8 {
    let cap = match enum_cap() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let file = match read_instance(&args.instance) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let built = match file.build() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let reports: Vec<AxiomReport> = match built {
        BuiltInstance::Lattice { oracle, .. } => {
            let report = match oracle.claimed() {
                ConvexClass::M => verify_m(&oracle, cap),
                _ => verify_mnat(&oracle, cap),
            };
            match report {
                Ok(r) => vec![r],
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_INPUT;
                }
            }
        }
        BuiltInstance::Mixed { oracle, family, .. } => {
            let fam_report = verify_gmatroid(&family);
            match verify_mnat(&oracle, cap) {
                Ok(r) => vec![fam_report, r],
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_INPUT;
                }
            }
        }
    };
    let mut all_passed = true;
    for report in &reports {
        emit_line(report.to_string());
        all_passed &= report.passed;
    }
    if all_passed {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}

fn cmd_oracle_check(args: &OracleCheckArgs) -> u8 {
    let opts = match solve_options(args.unchecked, false) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let file = match read_instance(&args.instance) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let solved = match solve_instance(&file, &opts) {
        Ok(s) => s,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };
    match solved {
        Solved::Lattice { run, oracle, weights } => {
            let solver: BTreeSet<ParetoValue2> = run.values.iter().copied().collect();
            let brute = match brute_pareto_2d(&oracle, &weights, opts.enum_cap) {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_INPUT;
                }
            };
            if solver == brute {
                emit_line(format!("MATCH: {} Pareto values", solver.len()));
                EXIT_OK
            } else {
                emit_line(format!("MISMATCH: solver {solver:?} vs oracle {brute:?}"));
                EXIT_MISMATCH
            }
        }
        Solved::Mixed { run, oracle, family, partition } => {
            let solver: BTreeSet<LexValue> = run.values.iter().cloned().collect();
            let brute = brute_pareto_lex(&oracle, &family, &partition);
            if solver == brute {
                emit_line(format!("MATCH: {} Pareto values", solver.len()));
                EXIT_OK
            } else {
                emit_line(format!("MISMATCH: solver {solver:?} vs oracle {brute:?}"));
                EXIT_MISMATCH
            }
        }
    }
}

struct BenchRow {
    digest: String,
    file: String,
    kind: Kind,
    n: usize,
    rank: Option<usize>,
    pareto: usize,
    iterations: u64,
    oracle_calls: u64,
    loop_oracle_calls: Option<u64>,
    times_ms: Vec<f64>,
}

fn cmd_bench(args: &BenchArgs) -> u8 {
    let opts = match solve_options(false, false) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    if args.repeat == 0 {
        eprintln!("error: --repeat must be at least 1");
        return EXIT_INPUT;
    }
    let entries = match std::fs::read_dir(&args.corpus) {
        Ok(rd) => rd,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.corpus.display());
            return EXIT_INPUT;
        }
    };
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();

    let mut rows = Vec::new();
    for path in &paths {
        match bench_one(path, &opts, args.repeat) {
            Ok(row) => rows.push(row),
            Err((_, msg)) => {
                eprintln!("error: {}: {msg}", path.display());
                return EXIT_INPUT;
            }
        }
    }
    rows.sort_by(|a, b| a.digest.cmp(&b.digest));

    emit_line(
        "digest,file,kind,n,rank,pareto,iterations,oracle_calls,loop_oracle_calls,loop_calls_per_r3,ms_min,ms_median,ms_max",
    );
    for row in rows {
        let mut times = row.times_ms.clone();
        times.sort_by(|a, b| a.partial_cmp(b).expect("timings are finite"));
        let median = times[times.len() / 2];
        let rank = row.rank.map_or(String::new(), |r| r.to_string());
        let loop_calls = row.loop_oracle_calls.map_or(String::new(), |c| c.to_string());
        let per_r3 = match (row.rank, row.loop_oracle_calls) {
            (Some(r), Some(calls)) if r > 0 => {
                format!("{:.3}", calls as f64 / (r as f64).powi(3))
            }
            _ => String::new(),
        };
        emit_line(format!(
            "{},{},{},{},{},{},{},{},{},{},{:.3},{:.3},{:.3}",
            row.digest,
            row.file,
            row.kind,
            row.n,
            rank,
            row.pareto,
            row.iterations,
            row.oracle_calls,
            loop_calls,
            per_r3,
            times[0],
            median,
            times[times.len() - 1],
        ));
    }
    EXIT_OK
}

fn bench_one(path: &Path, opts: &SolveOptions, repeat: usize) -> Result<BenchRow, (u8, String)> {
    let file = read_instance(path).map_err(|e| (EXIT_INPUT, e.to_string()))?;
    let mut times_ms = Vec::with_capacity(repeat);
    let mut last = None;
    for _ in 0..repeat {
        let start = Instant::now();
        let solved = solve_instance(&file, opts)?;
        times_ms.push(start.elapsed().as_secs_f64() * 1e3);
        last = Some(solved);
    }
    let solved = last.expect("repeat >= 1");
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    // the rank is meaningful only for 0-1 instances (explicit families)
    let rank_01: Option<usize> = match &file.objective {
        instances::ObjectiveSchema::BaseLinear { bases, .. } => {
            bases.iter().map(|s| s.len()).max()
        }
        _ => None,
    };
    let row = match solved {
        Solved::Lattice { run, .. } => BenchRow {
            digest: digest(&file),
            file: name,
            kind: file.kind,
            n: file.ground.size,
            rank: rank_01,
            pareto: run.values.len(),
            iterations: run.iterations,
            oracle_calls: run.oracle_calls(),
            loop_oracle_calls: Some(run.loop_oracle_calls),
            times_ms,
        },
        Solved::Mixed { run, family, .. } => BenchRow {
            digest: digest(&file),
            file: name,
            kind: file.kind,
            n: file.ground.size,
            rank: Some(family.max_card()),
            pareto: run.values.len(),
            iterations: run.outer_iterations,
            oracle_calls: run.oracle_calls,
            loop_oracle_calls: None,
            times_ms,
        },
    };
    Ok(row)
}
