use std::io::Read;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use brq::commands::{self, Report, RunOptions};
use brq::io::InputDoc;
use brq::limits::MAX_ORDER_ENV;
use brq::verify::{self, SUITES};
use brq::Error;
use clap::Parser;
use serde_json::{json, Value};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_SIZE: u8 = 3;

/// Exact Brauer-group obstructions for quotients by finite groups.
///
/// Usage: brq <verb> [kind] <input.json> [options]
///
/// Verbs: group-info, h1, h2, b0, brnr <linear|projective|grassmannian|flag|toric>,
/// stack, verify <suite|all>. An input path of "-" reads standard input.
#[derive(Parser, Debug)]
#[command(name = "brq", version)]
struct Cli {
    /// Verb followed by its positional arguments.
    #[arg(required = true, num_args = 1..)]
    args: Vec<String>,

    /// Print the structured JSON report (and JSON errors).
    #[arg(long)]
    json: bool,

    /// Export cocycle representatives.
    #[arg(long)]
    witness: bool,

    /// Include per-subgroup diagnostics in Brauer reports.
    #[arg(long)]
    diagnostics: bool,

    /// Use every bicyclic subgroup instead of one per conjugacy class.
    #[arg(long)]
    all_subgroups: bool,

    /// Grassmannian r (overrides the document).
    #[arg(long)]
    r: Option<usize>,

    /// Flag type, comma separated (overrides the document).
    #[arg(long, value_delimiter = ',')]
    flag_type: Option<Vec<usize>>,

    /// Override every group-order limit (same as BRQ_MAX_ORDER).
    #[arg(long)]
    max_order: Option<usize>,

    /// Worker threads for the parallel parts.
    #[arg(long)]
    threads: Option<usize>,

    /// Add a timestamp to the report; output is no longer reproducible.
    #[arg(long)]
    stamp: bool,

    /// With `verify fixtures`: rewrite the stored reports instead of comparing.
    #[arg(long)]
    bless: bool,
}

struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_size_limit() { EXIT_SIZE } else { EXIT_DOMAIN },
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_DOMAIN,
        kind: "usage".into(),
        message: message.into(),
    }
}

fn read_input(path: &str) -> Result<InputDoc, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure {
            code: EXIT_DOMAIN,
            kind: "io".into(),
            message: format!("{path}: {e}"),
        })?
    };
    Ok(InputDoc::parse(&text)?)
}

fn stamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn emit(cli: &Cli, mut report: Report) {
    if cli.stamp {
        let t = stamp();
        report.json["stamp"] = json!({ "unix_seconds": t });
        report.text.push_str(&format!("stamp: {t}\n"));
    }
    if cli.json {
        print!("{}", report.json_bytes());
    } else {
        print!("{}", report.text);
    }
}

fn run_verify(cli: &Cli, rest: &[String]) -> Result<u8, Failure> {
    let [suite] = rest else {
        return Err(usage(format!("verify takes one suite: {} or all", SUITES.join(", "))));
    };
    if cli.bless {
        if suite != "fixtures" {
            return Err(usage("--bless applies to the fixtures suite only"));
        }
        let n = verify::bless_fixtures(&verify::fixture_dir())?;
        emit(
            cli,
            Report {
                json: json!({ "blessed": n }),
                text: format!("rewrote {n} fixture reports\n"),
            },
        );
        return Ok(0);
    }
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
    let mut reports = Vec::new();
    for name in names {
        reports.push(verify::run_suite(name)?);
    }
    let ok = reports.iter().all(|r| r.all_passed());
    let json = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        Value::Array(reports.iter().map(|r| r.to_json()).collect())
    };
    let text: String = reports.iter().map(|r| r.to_text()).collect();
    emit(cli, Report { json, text });
    Ok(if ok { 0 } else { EXIT_VERIFY_FAILED })
}

fn dispatch(cli: &Cli) -> Result<u8, Failure> {
    let (verb, rest) = cli.args.split_first().expect("clap requires one argument");
    if verb == "verify" {
        return run_verify(cli, rest);
    }
    if !commands::VERBS.contains(&verb.as_str()) {
        return Err(usage(format!(
            "unknown verb {verb:?}; expected one of {}, verify",
            commands::VERBS.join(", ")
        )));
    }
    if cli.bless {
        return Err(usage("--bless applies to verify fixtures only"));
    }
    let (kind, path) = match (verb.as_str(), rest) {
        ("brnr", [kind, path]) => (Some(kind.as_str()), path),
        ("brnr", _) => return Err(usage("usage: brq brnr <kind> <input.json>")),
        (_, [path]) => (None, path),
        _ => return Err(usage(format!("usage: brq {verb} <input.json>"))),
    };
    let opts = RunOptions {
        witness: cli.witness,
        diagnostics: cli.diagnostics,
        all_subgroups: cli.all_subgroups,
        r: cli.r,
        flag_type: cli.flag_type.clone(),
    };
    commands::check_options(verb, kind, &opts)?;
    let doc = read_input(path)?;
    let report = commands::run(verb, kind, &doc, &opts)?;
    emit(cli, report);
    Ok(0)
}

fn report_failure(json_mode: bool, f: &Failure) {
    if json_mode {
        let v = json!({ "error": { "kind": f.kind, "message": f.message, "exit_code": f.code } });
        println!("{}", serde_json::to_string_pretty(&v).expect("values serialize"));
    } else {
        eprintln!("error: {}", f.message);
    }
}

fn main() -> ExitCode {
    let json_mode = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            report_failure(json_mode, &usage(e.to_string().trim().to_string()));
            return ExitCode::from(EXIT_DOMAIN);
        }
    };
    if let Some(n) = cli.max_order {
        std::env::set_var(MAX_ORDER_ENV, n.to_string());
    }
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            report_failure(cli.json, &usage(format!("thread pool: {e}")));
            return ExitCode::from(EXIT_DOMAIN);
        }
    }
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            report_failure(cli.json, &f);
            ExitCode::from(f.code)
        }
    }
}
