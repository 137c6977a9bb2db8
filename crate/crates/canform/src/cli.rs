//! `canform`: compute canonical forms, run verification suites, export.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad flags, 3 the computation
//! itself failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use canform_core::canonical::{omega_free, omega_pbw, omega_rep, summarize, Atoms, Report};
use canform_core::polyrat::{set_seed, Var, Weight, DEFAULT_SEED};
use canform_core::roots::{Family, LieType, RootSystemData};
use canform_core::treediag::{corpus, verify_corpus, CORPUS};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::suites::{run_suite, Bounds, Suite};
use crate::{json as js, latex};

pub const SEED_ENV: &str = "CANFORM_SEED";

#[derive(Parser, Debug)]
#[command(name = "canform", version, about = "Canonical differential forms and their PBW expansions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the random evaluation cross-checks; CANFORM_SEED takes precedence.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for verification suites.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a canonical form in the free or the PBW basis.
    Compute(FormArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Like `compute`, defaulting to LaTeX.
    Export(FormArgs),
    /// Check the bundled diagram corpus or another corpus file.
    Corpus(CorpusArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Basis {
    Free,
    Pbw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Anchor {
    #[value(name = "0")]
    Origin,
    #[value(name = "z")]
    Z,
}

impl Anchor {
    fn var(self) -> Option<Var> {
        match self {
            Anchor::Origin => None,
            Anchor::Z => Some(Var::Z(1)),
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: canform_core::roots::RootError| e.to_string())
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.parse().map_err(|e: canform_core::polyrat::PolyError| e.to_string())
}

fn parse_type(s: &str) -> Result<LieType, String> {
    s.trim().parse().map_err(|e: canform_core::roots::RootError| e.to_string())
}

#[derive(Args, Debug)]
struct FormArgs {
    #[arg(long = "type", value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    rank: usize,
    /// Content `k_1,...,k_r`.
    #[arg(long, value_parser = parse_weight)]
    weight: Weight,
    #[arg(long, value_enum, default_value = "0")]
    anchor: Anchor,
    #[arg(long, value_enum, default_value = "free")]
    basis: Basis,
    /// Number of points z:1..z:N of the tensor-product form (PBW basis only).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    points: u16,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 3)]
    max_weight: u32,
    /// Comma-separated types such as `A2,B3`.
    #[arg(long, value_parser = parse_type, value_delimiter = ',', default_value = "A1,A2,A3,B2,C2,D3")]
    types: Vec<LieType>,
    /// With --rank, a single type.
    #[arg(long = "type", value_parser = parse_family, requires = "rank")]
    family: Option<Family>,
    #[arg(long)]
    rank: Option<usize>,
    /// Only this content.
    #[arg(long, value_parser = parse_weight)]
    weight: Option<Weight>,
    #[arg(long, value_enum, default_value = "0")]
    anchor: Anchor,
    /// Test fixture: reverse the root order seen by the PBW projection.
    #[arg(long, hide = true)]
    corrupt_order: bool,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// A corpus file; defaults to the bundled one.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Print every entry with its value instead of a report.
    #[arg(long)]
    list: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

/// Outcome of a command that produced output.
struct Output {
    text: String,
    passed: bool,
}

fn seed_from(env: Option<OsString>, flag: Option<u64>) -> Result<u64, Failure> {
    match env {
        Some(v) => v
            .to_str()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Failure::Usage(format!("{SEED_ENV} must be an unsigned integer"))),
        None => Ok(flag.unwrap_or(DEFAULT_SEED)),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn lie_type(family: Family, rank: usize) -> Result<LieType, Failure> {
    LieType::new(family, rank).map_err(|e| Failure::Compute(e.to_string()))
}

fn compute(args: &FormArgs, format: Format) -> Result<Output, Failure> {
    if args.weight.rank() != args.rank {
        return Err(Failure::Usage(format!("--weight {} has {} entries for rank {}", args.weight, args.weight.rank(), args.rank)));
    }
    if args.points > 1 && args.basis == Basis::Free {
        return Err(Failure::Usage("--points needs --basis pbw".into()));
    }
    let ty = lie_type(args.family, args.rank)?;
    let anchor = args.anchor.var();
    let k = &args.weight;
    let text = match args.basis {
        Basis::Free => {
            let form = omega_free(k, anchor);
            match format {
                Format::Json => pretty(&js::canonical_form(&form)),
                Format::Latex => latex::canonical_form(&form),
                Format::Text => form.coeffs().iter().fold(String::new(), |mut s, (j, f)| {
                    let _ = writeln!(s, "{j}: {f}");
                    s
                }),
            }
        }
        Basis::Pbw if args.points > 1 => {
            let data = RootSystemData::build(ty);
            let anchors: Vec<Var> = (1..=args.points as u32).map(Var::Z).collect();
            let rep = omega_rep(&data, &anchors, k).map_err(|e| Failure::Compute(e.to_string()))?;
            match format {
                Format::Json => pretty(&js::rep_form(&data, &rep)),
                Format::Latex => latex::rep_form(&data, &rep),
                Format::Text => rep.coeffs.iter().fold(String::new(), |mut s, (key, f)| {
                    let _ = writeln!(s, "{key:?}: {f}");
                    s
                }),
            }
        }
        Basis::Pbw => {
            let data = RootSystemData::build(ty);
            let e = omega_pbw(&data, k, &Atoms::new(&data, anchor)).map_err(|e| Failure::Compute(e.to_string()))?;
            match format {
                Format::Json => pretty(&js::pbw_expansion(&data, &e)),
                Format::Latex => latex::pbw_expansion(&data, &e),
                Format::Text => e.coeffs.iter().fold(String::new(), |mut s, (p, f)| {
                    let _ = writeln!(s, "{p:?}: {f}");
                    s
                }),
            }
        }
    };
    Ok(Output { text, passed: true })
}

fn reports_output(name: &str, params: Value, reports: &[Report], format: Format) -> Result<Output, Failure> {
    let passed = reports.iter().all(Report::passed);
    let status = if passed { "pass" } else { "fail" };
    let text = match format {
        Format::Json => {
            let cases: usize = reports.iter().map(|r| r.cases).sum();
            let counterexamples: Vec<Value> = reports
                .iter()
                .flat_map(|r| {
                    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    r.counterexamples.iter().map(move |c| {
                        json!({ "check": r.check, "params": params.join(" "), "case": c.case, "expected": c.expected, "got": c.got })
                    })
                })
                .collect();
            pretty(&json!({
                "check": name,
                "params": params,
                "cases": cases,
                "status": status,
                "counterexamples": counterexamples,
                "reports": reports.iter().map(js::report).collect::<Vec<_>>(),
            }))
        }
        Format::Text => {
            let mut s = String::new();
            for (check, (cases, bad)) in summarize(reports) {
                let _ = writeln!(s, "{check}: {cases} cases, {bad} failed");
            }
            for r in reports.iter().filter(|r| !r.passed()) {
                for c in &r.counterexamples {
                    let _ = writeln!(s, "  {} {:?} {}: expected {} got {}", r.check, r.params, c.case, c.expected, c.got);
                }
            }
            let _ = writeln!(s, "{name}: {status}");
            s
        }
        Format::Latex => return Err(Failure::Usage("reports are written as json or text".into())),
    };
    Ok(Output { text, passed })
}

fn verify(args: &VerifyArgs, jobs: usize, seed: u64, format: Format) -> Result<Output, Failure> {
    let types = match (args.family, args.rank) {
        (Some(f), Some(r)) => vec![lie_type(f, r)?],
        (None, Some(r)) => vec![lie_type(Family::A, r)?],
        _ => args.types.clone(),
    };
    if let Some(k) = &args.weight {
        if types.iter().all(|t| t.rank != k.rank()) {
            return Err(Failure::Usage(format!("--weight {k} fits none of the selected ranks")));
        }
    }
    let bounds = Bounds {
        types: types.clone(),
        weight: args.weight.clone(),
        max_weight: args.max_weight,
        anchor: args.anchor.var(),
        corrupt_order: args.corrupt_order,
    };
    let reports = run_suite(args.suite, &bounds, jobs).map_err(|e| Failure::Compute(e.to_string()))?;
    let params = json!({
        "types": types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(","),
        "max_weight": args.weight.as_ref().map_or(args.max_weight, |k| k.total()),
        "weight": args.weight.as_ref().map(|k| k.to_string()),
        "anchor": args.anchor.var().map_or("0".to_string(), |z| z.to_string()),
        "seed": seed,
    });
    reports_output(args.suite.name(), params, &reports, format)
}

fn run_corpus(args: &CorpusArgs, format: Format) -> Result<Output, Failure> {
    let text = match &args.file {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => CORPUS.to_string(),
    };
    if !args.list {
        let report = verify_corpus(&text).map_err(|e| Failure::Compute(e.to_string()))?;
        let params = json!({ "file": args.file.as_ref().map(|p| p.display().to_string()) });
        return reports_output("corpus", params, &[report], format);
    }
    let entries = corpus(&text).map_err(|e| Failure::Compute(e.to_string()))?;
    let mut values = Vec::new();
    for e in &entries {
        let v = canform_core::treediag::diagram_to_ratfun(&e.diagram).map_err(|err| Failure::Compute(err.to_string()))?;
        values.push(v);
    }
    let text = match format {
        Format::Json => pretty(&Value::Array(entries.iter().zip(&values).map(|(e, v)| js::corpus_entry(e, v)).collect())),
        Format::Latex => entries.iter().zip(&values).fold(String::new(), |mut s, (e, v)| {
            let _ = writeln!(s, "% line {}: {}\n{}\n", e.line, e.source, latex::ratfun(v));
            s
        }),
        Format::Text => entries.iter().zip(&values).fold(String::new(), |mut s, (e, v)| {
            let _ = writeln!(s, "{}: {} = {}", e.line, e.source, v);
            s
        }),
    };
    Ok(Output { text, passed: true })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, Failure> {
    let seed = seed_from(std::env::var_os(SEED_ENV), cli.seed)?;
    set_seed(seed);
    let output = match &cli.command {
        Command::Compute(a) => compute(a, cli.format.unwrap_or(Format::Json))?,
        Command::Export(a) => compute(a, cli.format.unwrap_or(Format::Latex))?,
        Command::Verify(a) => verify(a, cli.jobs as usize, seed, cli.format.unwrap_or(Format::Json))?,
        Command::Corpus(a) => run_corpus(a, cli.format.unwrap_or(Format::Text))?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, &output.text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{}", output.text),
    }
    Ok(output.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn environment_seed_wins() {
        assert_eq!(seed_from(Some("7".into()), Some(3)).unwrap(), 7);
        assert_eq!(seed_from(None, Some(3)).unwrap(), 3);
        assert_eq!(seed_from(None, None).unwrap(), DEFAULT_SEED);
        assert!(matches!(seed_from(Some("x".into()), None), Err(Failure::Usage(_))));
    }
}
