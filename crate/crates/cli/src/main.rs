//! `hnn`: verification suite, word evaluation, quotient structure and
//! separation certificates from the command line.

mod config;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use hnn_core::group::GroupError;
use hnn_core::quotients::{
    analyze_nc, analyze_p, analyze_q, eval_in_p, eval_in_q, QuotientError, QuotientReport,
};
use hnn_core::separation::{separate, SeparationError, Verdict};
use hnn_core::word::Word;
use serde::Serialize;
use serde_json::json;

use config::{FileConfig, Output, RunConfig};

/// `println!` that ignores write errors such as a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Debug, Parser)]
#[command(
    name = "hnn",
    version,
    about = "Exact computations in G, H_n and their finite 2-quotients"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// TOML file with default settings; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    max_index: Option<usize>,
    /// Comma-separated quotient sizes N.
    #[arg(long, global = true, value_delimiter = ',')]
    quotients: Option<Vec<usize>>,
    #[arg(long, global = true)]
    m_cap: Option<u32>,
    #[arg(long, global = true)]
    enum_cap: Option<usize>,
    #[arg(long, global = true)]
    json: bool,
    /// Omit the timestamp from JSON reports.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Replace the matrix of c (rows separated by `;`).
    #[arg(long, global = true, hide = true)]
    c_matrix: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full check battery.
    Verify,
    /// Evaluate a word in G, H:n, Q:N or P:n,m.
    Eval {
        word: String,
        #[arg(default_value = "G")]
        target: Target,
    },
    /// Produce a separation certificate for a word in H_n.
    Separate {
        word: String,
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Structure of P_{n,m}, Q_{2^m} and Nc(2^m).
    Quotient {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        m: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    G,
    H(i64),
    Q(usize),
    P(i64, u32),
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid target {s:?}: expected G, H:n, Q:N or P:n,m");
        let (kind, params) = match s.split_once(':') {
            Some((k, p)) => (k.trim(), Some(p.trim())),
            None => (s.trim(), None),
        };
        match (kind, params) {
            ("G", None) => Ok(Target::G),
            ("H", Some(p)) => p.parse().map(Target::H).map_err(|_| bad()),
            ("Q", Some(p)) => p.parse().map(Target::Q).map_err(|_| bad()),
            ("P", Some(p)) => {
                let (n, m) = p.split_once(',').ok_or_else(bad)?;
                Ok(Target::P(
                    n.trim().parse().map_err(|_| bad())?,
                    m.trim().parse().map_err(|_| bad())?,
                ))
            }
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::G => write!(f, "G"),
            Target::H(n) => write!(f, "H:{n}"),
            Target::Q(size) => write!(f, "Q:{size}"),
            Target::P(n, m) => write!(f, "P:{n},{m}"),
        }
    }
}

enum Failure {
    /// Exit 1.
    Check(String),
    /// Exit 2.
    Usage(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        let (code, msg) = match self {
            Failure::Check(m) => (1, m),
            Failure::Usage(m) => (2, m),
        };
        if !msg.is_empty() {
            eprintln!("error: {msg}");
        }
        ExitCode::from(code)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}

fn run(cli: Cli) -> CmdResult {
    let g = cli.global;
    let file = g
        .config
        .as_deref()
        .map(FileConfig::load)
        .transpose()
        .map_err(Failure::Usage)?;
    let flags = FileConfig {
        max_index: g.max_index,
        quotients: g.quotients,
        m_cap: g.m_cap,
        enum_cap: g.enum_cap,
        output: g.json.then_some(Output::Json),
        c_matrix: g.c_matrix,
    };
    let cfg = RunConfig::resolve(file, flags).map_err(Failure::Usage)?;
    match cli.command {
        Command::Verify => cmd_verify(&cfg, !g.no_timestamp),
        Command::Eval { word, target } => cmd_eval(&cfg, &word, target),
        Command::Separate { word, n } => cmd_separate(&cfg, &word, n),
        Command::Quotient { n, m } => cmd_quotient(&cfg, n, m),
    }
}

fn print_json<T: Serialize>(value: &T) {
    out!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn parse_word(s: &str) -> Result<Word, Failure> {
    s.parse().map_err(|e| Failure::Usage(format!("{e}")))
}

fn cmd_verify(cfg: &RunConfig, with_timestamp: bool) -> CmdResult {
    let timestamp = with_timestamp.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let report = verify::run(cfg, timestamp).map_err(Failure::Usage)?;
    match cfg.output {
        Output::Json => print_json(&report),
        Output::Text => {
            for c in &report.checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                out!("{status} {}  {}", c.id, c.anchor);
                if let Some(w) = &c.witness {
                    out!("     witness: {w}");
                }
            }
            let s = &report.summary;
            out!(
                "{} checks, {} passed, {} failed",
                s.total,
                s.passed,
                s.failed
            );
        }
    }
    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.id.as_str())
            .collect();
        Err(Failure::Check(format!(
            "failed checks: {}",
            names.join(", ")
        )))
    }
}

fn cmd_eval(cfg: &RunConfig, word: &str, target: Target) -> CmdResult {
    let w = parse_word(word)?;
    let usage = |e: &dyn std::fmt::Display| Failure::Usage(e.to_string());
    let (text, value) = match target {
        Target::G => {
            let model = verify::model(cfg).map_err(Failure::Usage)?;
            let m = model.eval_in_g(&w).map_err(|e| usage(&e))?;
            (
                m.to_string(),
                json!({ "matrix": m.to_string(), "identity": m.is_identity() }),
            )
        }
        Target::H(n) => {
            let model = verify::model(cfg).map_err(Failure::Usage)?;
            let trivial = model.is_trivial_in_h(&w, n).map_err(|e| usage(&e))?;
            let text = if trivial { "trivial" } else { "nontrivial" };
            (text.to_string(), json!({ "trivial": trivial }))
        }
        Target::Q(size) => {
            let x = eval_in_q(&w, size).map_err(|e| usage(&e))?;
            let value = json!({
                "eps": x.u().eps().to_string(),
                "z": x.u().z().to_string(),
                "d_exp": x.a(),
                "identity": x.is_identity(),
            });
            (x.to_string(), value)
        }
        Target::P(n, m) => {
            let x = eval_in_p(&w, n, m).map_err(|e| usage(&e))?;
            let mut value = serde_json::to_value(x.image()).expect("serializable");
            value["identity"] = json!(x.is_identity());
            (x.to_string(), value)
        }
    };
    match cfg.output {
        Output::Text => out!("{text}"),
        Output::Json => {
            let mut out = json!({ "word": w.to_string(), "target": target.to_string() });
            out["result"] = value;
            print_json(&out);
        }
    }
    Ok(())
}

fn cmd_separate(cfg: &RunConfig, word: &str, n: i64) -> CmdResult {
    let w = parse_word(word)?;
    let cert = separate(&w, n, cfg.m_cap).map_err(|e| match e {
        SeparationError::ZeroN | SeparationError::EvenN(_) | SeparationError::BadM { .. } => {
            Failure::Usage(e.to_string())
        }
        other => Failure::Check(other.to_string()),
    })?;
    print_json(&cert);
    if cert.verdict == Verdict::Inconclusive {
        return Err(Failure::Check(format!(
            "no separating quotient with m <= {}",
            cfg.m_cap
        )));
    }
    Ok(())
}

fn cmd_quotient(cfg: &RunConfig, n: i64, m: u32) -> CmdResult {
    let fail = |e: QuotientError| match e {
        QuotientError::Group(GroupError::CapExceeded { .. }) | QuotientError::Overflow => {
            Failure::Check(e.to_string())
        }
        other => Failure::Usage(other.to_string()),
    };
    let p = analyze_p(n, m, cfg.enum_cap).map_err(fail)?;
    let size = p.size;
    let reports = [
        p,
        analyze_q(size, cfg.enum_cap).map_err(fail)?,
        analyze_nc(size, cfg.enum_cap).map_err(fail)?,
    ];
    match cfg.output {
        Output::Json => print_json(&reports),
        Output::Text => {
            for r in &reports {
                print_report(r);
            }
        }
    }
    Ok(())
}

fn print_report(r: &QuotientReport) {
    let name = match (r.group, r.n, r.m) {
        ("P", Some(n), Some(m)) => format!("P({n}, {m})"),
        (g, _, _) => format!("{g}({})", r.size),
    };
    let s = &r.structure;
    let opt = |x: Option<usize>| x.map_or_else(|| "none".to_string(), |v| v.to_string());
    out!("{name}");
    out!("  order: {}", s.order);
    out!("  exponent: {}", s.exponent);
    out!("  center order: {}", s.center_order);
    out!("  derived series: {:?}", s.derived_series);
    out!("  derived length: {}", opt(s.derived_length));
    out!("  lower central series: {:?}", s.lower_central_series);
    out!("  nilpotency class: {}", opt(s.nilpotency_class));
}
