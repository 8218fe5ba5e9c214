use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use spancalc::crw::{
    algebra_from_json, algebra_to_json, build_intro_algebras, koszul_intersection, AlgebraJson, IntersectionJson,
};
use spancalc::nerve::{build_path, dump_nerve, nondegenerate_table};
use spancalc::simplex::{build_sigma, build_theta, PosetDump};
use spancalc::suites::{run_suite, SuiteConfig, MAX_BOUND, SUITES};
use spancalc::Error;

mod compose;

/// Inputs given as relative paths are looked up under this directory when set.
const ROOT_VAR: &str = "SPANCALC_ROOT";

#[derive(Parser)]
#[command(name = "spancalc", version, about = "Indexing posets, nerves, spans and local systems, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest level, label size or weight to compute with.
    #[arg(long, global = true)]
    bound: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Exponent for the critical-locus computations.
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Report progress on standard error.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print an indexing poset, the path category, or its nerve.
    Enumerate { kind: EnumKind, level: usize },
    /// Compose spans or local systems read from JSON files (`-` for stdin).
    Compose {
        #[arg(long, value_enum, default_value = "vertical")]
        kind: ComposeKind,
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// Run a property suite and report each property.
    Verify {
        #[arg(value_parser = suite_names())]
        suite: String,
    },
    /// Affine Koszul computations.
    Crw {
        #[command(subcommand)]
        action: CrwAction,
    },
}

#[derive(Subcommand)]
enum CrwAction {
    /// Koszul model of the intersection of two zero loci.
    Intersect { file: PathBuf },
    /// Weightwise cohomology of a presented algebra.
    Cohomology { file: PathBuf },
    /// The two model algebras for `K[x]/(x^n)` and their checks.
    Intro,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Sigma,
    Theta,
    Path,
    Nerve,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ComposeKind {
    Spans,
    Vertical,
    Horizontal,
}

fn suite_names() -> Vec<&'static str> {
    let mut v = SUITES.to_vec();
    v.push("all");
    v
}

enum Failure {
    Input(Error),
    Property(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::SizeMismatch(_) => "size_mismatch",
        Error::InvalidMap(_) => "invalid_map",
        Error::InvalidArrow(_) => "invalid_arrow",
        Error::NotSegal(_) => "not_segal",
        Error::NotACategory(_) => "not_a_category",
        Error::NotAFunctor(_) => "not_a_functor",
        Error::BoundExceeded(_) => "bound_exceeded",
        Error::NotAPullback(_) => "not_a_pullback",
        Error::NotCommutative(_) => "not_commutative",
        Error::SpanMismatch(_) => "span_mismatch",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::NotHomogeneous(_) => "not_homogeneous",
        Error::UnsupportedRelation(_) => "unsupported_relation",
        Error::Parse(_) => "parse",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("{}", json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } }));
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("{}", json!({ "error": { "kind": "io", "message": msg } }));
            ExitCode::from(2)
        }
        Err(Failure::Property(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Enumerate { kind, level } => enumerate(cli, *kind, *level),
        Command::Compose { kind, files } => {
            let inputs = files.iter().map(|f| read_input(f)).collect::<Result<Vec<_>, _>>()?;
            let v = compose::compose(*kind, &inputs)?;
            emit(cli, &pretty(&v))
        }
        Command::Verify { suite } => verify(cli, suite),
        Command::Crw { action } => crw(cli, action),
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(ROOT_VAR) {
        Some(root) if path.is_relative() => Path::new(&root).join(path),
        _ => path.to_path_buf(),
    }
}

fn read_input(path: &Path) -> Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(e.to_string()))?;
        s
    } else {
        let p = resolve(path);
        fs::read_to_string(&p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(Error::Parse(format!("{}: {e}", path.display()))))
}

fn parse_as<T: DeserializeOwned>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Input(Error::Parse(format!("{what}: {e}"))))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn check_level(cli: &Cli, level: usize, cap: usize) -> Result<(), Failure> {
    let limit = cli.bound.map_or(cap, |b| b.min(cap));
    if level > limit {
        return Err(Error::BoundExceeded(format!("level {level} exceeds {limit}")).into());
    }
    Ok(())
}

fn poset_output(cli: &Cli, kind: &str, level: usize, dump: PosetDump) -> Result<(), Failure> {
    if cli.format == Some(Format::Csv) {
        let mut s = String::from("index,object,flag\n");
        for (i, (o, f)) in dump.objects.iter().zip(&dump.flags).enumerate() {
            let enc: Vec<String> = o.iter().map(usize::to_string).collect();
            s.push_str(&format!("{i},{},{}\n", enc.join(" "), u8::from(*f)));
        }
        return emit(cli, &s);
    }
    let flagged = dump.flags.iter().filter(|&&f| f).count();
    let v = json!({
        "kind": kind,
        "level": level,
        "count": dump.objects.len(),
        "flagged": flagged,
        "objects": dump.objects,
        "hasse": dump.edges,
        "flags": dump.flags,
    });
    emit(cli, &pretty(&v))
}

fn enumerate(cli: &Cli, kind: EnumKind, level: usize) -> Result<(), Failure> {
    match kind {
        EnumKind::Sigma => {
            check_level(cli, level, 12)?;
            poset_output(cli, "sigma", level, build_sigma(level).dump())
        }
        EnumKind::Theta => {
            check_level(cli, level, 10)?;
            poset_output(cli, "theta", level, build_theta(level).dump())
        }
        EnumKind::Path => {
            check_level(cli, level, 5)?;
            let p = build_path(level)?;
            let mut rows = Vec::new();
            for i in 0..=level {
                for j in i..=level {
                    rows.push((i, j, p.hom_size(i, j)));
                }
            }
            if cli.format == Some(Format::Csv) {
                let body: String = rows.iter().map(|(i, j, n)| format!("{i},{j},{n}\n")).collect();
                return emit(cli, &format!("source,target,hom_size\n{body}"));
            }
            let homs: Vec<Value> =
                rows.iter().map(|(i, j, n)| json!({ "source": i, "target": j, "size": n })).collect();
            emit(cli, &pretty(&json!({ "kind": "path", "level": level, "homs": homs })))
        }
        EnumKind::Nerve => {
            check_level(cli, level, 5)?;
            let table = nondegenerate_table(level, level)?;
            if cli.format == Some(Format::Csv) {
                let body: String = table.iter().map(|((u, v), n)| format!("{u},{v},{n}\n")).collect();
                return emit(cli, &format!("u,v,count\n{body}"));
            }
            let counts: BTreeMap<String, usize> = table.iter().map(|((u, v), n)| (format!("({u},{v})"), *n)).collect();
            let dump = dump_nerve(level)?;
            let v = json!({ "kind": "nerve", "level": level, "counts": counts, "simplices": dump.simplices });
            emit(cli, &pretty(&v))
        }
    }
}

fn verify(cli: &Cli, suite: &str) -> Result<(), Failure> {
    let cfg = SuiteConfig { seed: cli.seed, bound: cli.bound.unwrap_or(4), n: cli.n };
    if cfg.bound > MAX_BOUND {
        return Err(Error::BoundExceeded(format!("verify bound is at most {MAX_BOUND}")).into());
    }
    let results = run_suite(suite, &cfg)?;
    if cli.verbose {
        for r in &results {
            eprintln!("{}/{}: {} ({} cases)", r.suite, r.property, if r.passed { "pass" } else { "FAIL" }, r.cases);
        }
    }
    let text = if cli.format == Some(Format::Csv) {
        let body: String = results
            .iter()
            .map(|r| format!("{},{},{},{}\n", r.suite, r.property, if r.passed { "pass" } else { "fail" }, r.cases))
            .collect();
        format!("suite,property,result,cases\n{body}")
    } else {
        let passed = results.iter().all(|r| r.passed);
        pretty(
            &json!({ "suite": suite, "seed": cli.seed, "bound": cfg.bound, "passed": passed, "properties": results }),
        )
    };
    emit(cli, &text)?;
    let failed: Vec<String> =
        results.iter().filter(|r| !r.passed).map(|r| format!("{}/{}", r.suite, r.property)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Property(format!("failed: {}", failed.join(", "))))
    }
}

fn crw(cli: &Cli, action: &CrwAction) -> Result<(), Failure> {
    let bound = cli.bound.unwrap_or(8) as u64;
    match action {
        CrwAction::Intersect { file } => {
            let input: IntersectionJson = parse_as(read_input(file)?, "intersection")?;
            let ring = input.ambient()?;
            let (first, second) = input.equations(&ring)?;
            let a = koszul_intersection(&ring, &first, &second)?;
            if cli.format == Some(Format::Csv) {
                return emit(cli, &a.cohomology(bound).to_csv());
            }
            emit(cli, &pretty(&serde_json::to_value(algebra_to_json(&a)).expect("serializable")))
        }
        CrwAction::Cohomology { file } => {
            let input: AlgebraJson = parse_as(read_input(file)?, "algebra")?;
            let a = algebra_from_json(&input)?;
            let table = a.cohomology(bound);
            if cli.format == Some(Format::Json) {
                let rows: Vec<Value> =
                    table.rows.iter().map(|(w, e, o)| json!({ "weight": w, "even_dim": e, "odd_dim": o })).collect();
                return emit(cli, &pretty(&json!({ "d_squared_zero": a.d_squared_zero(), "cohomology": rows })));
            }
            emit(cli, &table.to_csv())
        }
        CrwAction::Intro => {
            let n = cli.n.unwrap_or(2);
            let (_, b, report) = build_intro_algebras(n)?;
            if cli.format == Some(Format::Csv) {
                return emit(cli, &report.b_cohomology.to_csv());
            }
            let v = json!({ "report": report, "b": algebra_to_json(&b) });
            emit(cli, &pretty(&v))
        }
    }
}
