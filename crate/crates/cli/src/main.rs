use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sqorbit::bounds::{choose_l, envelope_check, orbit_bound_check, run_bound_check, weil_check};
use sqorbit::classify::{
    chebyshev_conjugacy, classify_2_ordinary, classify_ordinary, generate_family, oracle_2_ordinary, oracle_ordinary,
    Family, FamilyParams, Sign, Verdict,
};
use sqorbit::dynamics::{forward_orbit, longest_run, sign_sequence, RunInfo};
use sqorbit::scan::{ratio_table, run_scan, Checks, SampleSpec, ScanConfig, ScanStats, Space};
use sqorbit::{Error, FieldSpec, Poly};

#[derive(Parser)]
#[command(name = "sqorbit", version, about = "Orbits, square runs and exceptional polynomials over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one polynomial.
    Classify(ClassifyArgs),
    /// Scan a polynomial space and write scan.jsonl, scan.csv, summary.json.
    Scan(ScanArgs),
    /// Build a member of family d or e.
    GenFamily(GenFamilyArgs),
    /// Check the character sum bound for one polynomial or a whole space.
    VerifyWeil(VerifyArgs),
    /// Check the orbit, envelope and run inequalities.
    VerifyBounds(VerifyArgs),
    /// Forward orbit and sign sequence of one point.
    Orbit(OrbitArgs),
    /// Ratio table across several fields.
    Ratios(RatiosArgs),
}

#[derive(Args)]
struct Common {
    /// Field, e.g. `7`, `3^2` or `3^2/(2,2,1)`.
    #[arg(long)]
    field: String,
    /// Degree budget for iterates.
    #[arg(long, env = "SQORBIT_BUDGET", default_value_t = 4096)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    common: Common,
    /// Coefficients, constant first.
    #[arg(long)]
    poly: String,
    /// Also run the factoring oracles to this depth.
    #[arg(long)]
    depth: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceKind {
    All,
    Monic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckName {
    Oracle,
    Weil,
    Orbit,
    Envelope,
    Runs,
    Ratios,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long, value_enum, default_value = "monic")]
    space: SpaceKind,
    /// Sample this many polynomials instead of enumerating.
    #[arg(long)]
    sample: Option<usize>,
    /// Sample this many eligible (f, a) pairs for the orbit checks.
    #[arg(long)]
    pair_sample: Option<usize>,
    /// Window lengths, comma separated.
    #[arg(long, value_delimiter = ',')]
    windows: Option<Vec<usize>>,
    #[arg(long, default_value_t = 4)]
    depth: u32,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, required_unless_present = "config")]
    field: Option<String>,
    #[arg(long, required_unless_present = "config")]
    degree: Option<usize>,
    #[arg(long, env = "SQORBIT_BUDGET", default_value_t = 4096)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    space: SpaceArgs,
    /// Checks to run; defaults to weil, orbit, envelope, runs, ratios.
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Option<Vec<CheckName>>,
    /// Run the run-structure checks on exceptional polynomials too.
    #[arg(long)]
    runs_on_exceptional: bool,
    /// Read the whole configuration from a JSON file instead.
    #[arg(long, conflicts_with_all = ["field", "degree"])]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// A single polynomial; otherwise `--degree` selects a space.
    #[arg(long, required_unless_present = "degree", conflicts_with = "degree")]
    poly: Option<String>,
    /// Starting point for the single-polynomial bound checks.
    #[arg(long, default_value = "0")]
    start: String,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, value_enum, default_value = "monic")]
    space: SpaceKind,
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long)]
    pair_sample: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    windows: Option<Vec<usize>>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    D,
    E,
}

#[derive(Args)]
struct GenFamilyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    degree: usize,
    /// The parameter A.
    #[arg(long = "a")]
    a: String,
    /// The parameter B.
    #[arg(long = "b")]
    b: String,
    /// Sign of the square root used for the constant term.
    #[arg(long, default_value = "+", value_parser = ["+", "-"])]
    sign: String,
}

#[derive(Args)]
struct OrbitArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    poly: String,
    #[arg(long, default_value = "0")]
    start: String,
}

#[derive(Args)]
struct RatiosArgs {
    /// Fields, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3^2,5^2,7^2,3^4,11^2,13^2")]
    fields: Vec<String>,
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, env = "SQORBIT_BUDGET", default_value_t = 4096)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(format!("{e:?}: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn parse_field(text: &str) -> Result<FieldSpec, Failure> {
    Ok(FieldSpec::from_str(text)?)
}

fn parse_poly(field: &FieldSpec, text: &str) -> Result<Poly, Failure> {
    Ok(Poly::parse(field, text)?)
}

fn classify(args: ClassifyArgs) -> Outcome {
    let field = parse_field(&args.common.field)?;
    let f = parse_poly(&field, &args.poly)?;
    let report = classify_2_ordinary(&f)?;
    let mut out = report.to_json();
    out["ordinary"] = classify_ordinary(&f)?.to_json(&field);
    if let Some(depth) = args.depth {
        let (budget, seed) = (args.common.budget, args.common.seed);
        let show = |r: sqorbit::Result<_>| match r {
            Ok(v) => sqorbit::classify::OracleVerdict::to_json(&v),
            Err(e) => json!({"error": e.to_string()}),
        };
        out["oracle_2_ordinary"] = show(oracle_2_ordinary(&f, depth, budget, seed));
        out["oracle_ordinary"] = show(oracle_ordinary(&f, depth, budget, seed));
    }
    print(&out);
    Ok(())
}

fn space_of(kind: SpaceKind, sample: Option<usize>, seed: u64) -> Space {
    match (sample, kind) {
        (Some(count), kind) => Space::Sample { count, seed, monic: matches!(kind, SpaceKind::Monic) },
        (None, SpaceKind::All) => Space::All,
        (None, SpaceKind::Monic) => Space::Monic,
    }
}

fn checks_of(names: &[CheckName], runs_on_exceptional: bool) -> Checks {
    let has = |c| names.contains(&c);
    Checks {
        oracle: has(CheckName::Oracle),
        weil: has(CheckName::Weil),
        orbit_bounds: has(CheckName::Orbit),
        envelope: has(CheckName::Envelope),
        run_bounds: has(CheckName::Runs),
        runs_on_exceptional,
        ratios: has(CheckName::Ratios),
    }
}

fn inequality_failures(stats: &ScanStats) -> usize {
    stats.weil_failures.len() + stats.orbit_failures.len() + stats.envelope_failures.len() + stats.run_failures.len()
}

fn execute_scan(config: &ScanConfig, out: Option<PathBuf>) -> Outcome {
    let output = run_scan(config)?;
    let dir = out.unwrap_or_else(|| PathBuf::from("scan-out"));
    output.write_to(&dir)?;
    print(&output.summary);
    match inequality_failures(&output.stats) {
        0 => Ok(()),
        n => Err(Failure::Check(format!("{n} inequality checks failed; see {}", dir.display()))),
    }
}

fn build_config(field: &str, degree: usize, budget: u64, seed: u64, space: &SpaceArgs, checks: Checks) -> ScanConfig {
    let mut c = ScanConfig::new(field, degree);
    c.space = space_of(space.space, space.sample, seed);
    c.checks = checks;
    c.pair_sample = space.pair_sample.map(|count| SampleSpec { count, seed });
    c.windows = space.windows.clone();
    c.depth = space.depth;
    c.budget = budget;
    c.seed = seed;
    c.workers = space.workers;
    c
}

fn scan(args: ScanArgs) -> Outcome {
    let config = if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)?;
        let mut c: ScanConfig =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        c.workers = args.space.workers;
        c
    } else {
        let checks = match &args.checks {
            Some(names) => checks_of(names, args.runs_on_exceptional),
            None => Checks { runs_on_exceptional: args.runs_on_exceptional, ..Checks::default() },
        };
        let field = args.field.as_deref().unwrap_or_default();
        build_config(field, args.degree.unwrap_or_default(), args.budget, args.seed, &args.space, checks)
    };
    execute_scan(&config, args.space.out)
}

fn space_config(args: &VerifyArgs, degree: usize, checks: Checks) -> ScanConfig {
    let space = SpaceArgs {
        space: args.space,
        sample: args.sample,
        pair_sample: args.pair_sample,
        windows: args.windows.clone(),
        depth: 0,
        workers: args.workers,
        out: None,
    };
    let common = &args.common;
    build_config(&common.field, degree, common.budget, common.seed, &space, checks)
}

fn verify_weil(args: VerifyArgs) -> Outcome {
    if let Some(degree) = args.degree {
        let checks = Checks { weil: true, ..no_checks() };
        return execute_scan(&space_config(&args, degree, checks), args.out.clone());
    }
    let field = parse_field(&args.common.field)?;
    let f = parse_poly(&field, args.poly.as_deref().unwrap_or_default())?;
    let check = weil_check(&f);
    print(&check.to_json());
    match check.passes() {
        Some(false) => Err(Failure::Check(format!("character sum bound fails for {f}"))),
        _ => Ok(()),
    }
}

fn no_checks() -> Checks {
    Checks {
        oracle: false,
        weil: false,
        orbit_bounds: false,
        envelope: false,
        run_bounds: false,
        runs_on_exceptional: false,
        ratios: false,
    }
}

fn verify_bounds(args: VerifyArgs) -> Outcome {
    if let Some(degree) = args.degree {
        let checks = Checks { orbit_bounds: true, envelope: true, run_bounds: true, ..no_checks() };
        return execute_scan(&space_config(&args, degree, checks), args.out.clone());
    }
    let field = parse_field(&args.common.field)?;
    let f = parse_poly(&field, args.poly.as_deref().unwrap_or_default())?;
    let a = field.parse_element(&args.start)?;
    let d = f.degree().unwrap_or(0);
    let budget = args.common.budget;
    let windows = args.windows.clone().unwrap_or_else(|| (1..=choose_l(field.q(), d).max(3)).collect());
    let two_ordinary = classify_2_ordinary(&f)?.verdict == Verdict::TwoOrdinary;
    let mut failed = 0;
    let mut orbit_rows = Vec::new();
    for &window in &windows {
        match orbit_bound_check(&f, a, window, budget) {
            Ok(report) => {
                failed += usize::from(!report.pass());
                let mut row = report.to_json();
                if two_ordinary {
                    let mut envelopes = Vec::new();
                    for i in 0..report.sign_period {
                        let ineq = envelope_check(&f, a, i, window, budget)?;
                        failed += usize::from(!ineq.holds());
                        envelopes.push(ineq.to_json());
                    }
                    row["envelope"] = json!(envelopes);
                }
                orbit_rows.push(row);
            }
            Err(Error::NotPurelyPeriodic) => {
                orbit_rows.push(json!({"L": window, "skipped": "sign sequence is not purely periodic"}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let runs = run_bound_check(&f, a, budget)?;
    failed += usize::from(!runs.pass());
    print(&json!({
        "field": field.to_string(),
        "f": f.to_string(),
        "a": field.format(a),
        "two_ordinary": two_ordinary,
        "orbit": orbit_rows,
        "runs": runs.to_json(),
        "pass": failed == 0,
    }));
    match failed {
        0 => Ok(()),
        n => Err(Failure::Check(format!("{n} inequalities failed"))),
    }
}

fn gen_family(args: GenFamilyArgs) -> Outcome {
    let field = parse_field(&args.common.field)?;
    let params = FamilyParams {
        family: match args.family {
            FamilyName::D => Family::D,
            FamilyName::E => Family::E,
        },
        field: field.clone(),
        a: field.parse_element(&args.a)?,
        b: field.parse_element(&args.b)?,
        sign: if args.sign == "-" { Sign::Minus } else { Sign::Plus },
    };
    let f = generate_family(&params, args.degree)?;
    let report = classify_2_ordinary(&f)?;
    let letter = match args.family {
        FamilyName::D => 'd',
        FamilyName::E => 'e',
    };
    let conjugacy = if field.p() >= args.degree as u64 {
        chebyshev_conjugacy(&f)?.to_json(&field)
    } else {
        Value::Null
    };
    print(&json!({
        "field": field.to_string(),
        "poly": f.to_string(),
        "pretty": f.pretty(),
        "classification": report.to_json(),
        "chebyshev": conjugacy,
    }));
    if report.forms().contains(letter) {
        Ok(())
    } else {
        Err(Failure::Check(format!("{f} is not reported as form ({letter})")))
    }
}

fn run_json(r: &RunInfo) -> Value {
    json!({"length": r.length, "start": r.start, "cycle_constant": r.cycle_constant})
}

fn orbit(args: OrbitArgs) -> Outcome {
    let field = parse_field(&args.common.field)?;
    let f = parse_poly(&field, &args.poly)?;
    let a = field.parse_element(&args.start)?;
    print(&json!({
        "field": field.to_string(),
        "f": f.to_string(),
        "orbit": forward_orbit(&f, a).to_json(&field),
        "signs": sign_sequence(&f, a).to_json(),
        "square_run": run_json(&longest_run(&f, a, 1)),
        "nonsquare_run": run_json(&longest_run(&f, a, -1)),
    }));
    Ok(())
}

fn ratios(args: RatiosArgs) -> Outcome {
    let configs: Vec<ScanConfig> = args
        .fields
        .iter()
        .map(|q| {
            let mut c = ScanConfig::new(q, args.degree);
            c.checks = Checks { ratios: true, ..no_checks() };
            c.budget = args.budget;
            c.workers = args.workers;
            c
        })
        .collect();
    let (table, _) = ratio_table(&configs)?;
    if let Some(path) = args.out {
        std::fs::write(path, &table)?;
    }
    print!("{table}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Classify(a) => classify(a),
        Command::Scan(a) => scan(a),
        Command::GenFamily(a) => gen_family(a),
        Command::VerifyWeil(a) => verify_weil(a),
        Command::VerifyBounds(a) => verify_bounds(a),
        Command::Orbit(a) => orbit(a),
        Command::Ratios(a) => ratios(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(2)
        }
    }
}
