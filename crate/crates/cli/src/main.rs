//! `killingweb`: classify Killing tensors and find the separable webs of a
//! potential.
//!
//! Exit status: 0 on success, 2 on usage or parse errors, 1 when the input is
//! mathematically unsuitable.

mod render;

use std::collections::HashMap;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use killingweb::canonical::canonical_chart;
use killingweb::classify::{classify_web_with, Tolerances, WebClass};
use killingweb::invariants::{all_invariants_json, kv_invariants};
use killingweb::killing::{KtParams, KvParams};
use killingweb::parser::{parse_binding, parse_potential};
use killingweb::pipeline::{find_separable_webs, CombinationPolicy};
use killingweb::{Error, Result};

pub const SCHEMA: &str = "killing-web/1";

#[derive(Parser, Debug)]
#[command(name = "killingweb", version, about = "Orthogonal separable webs of Killing tensors in Euclidean 3-space")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CliConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Zero threshold for invariants on the floating-point branch.
    #[arg(long, global = true, value_parser = positive)]
    tau_class: Option<f64>,
    /// Relative residual allowed when matching canonical families.
    #[arg(long, global = true, value_parser = positive)]
    tau_canon: Option<f64>,
}

impl CliConfig {
    fn tolerances(&self) -> Tolerances {
        let d = Tolerances::default();
        Tolerances { class: self.tau_class.unwrap_or(d.class), canon: self.tau_canon.unwrap_or(d.canon) }
    }
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Kt,
    Kv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a characteristic Killing tensor given as parameter JSON.
    ClassifyKt {
        /// Parameter JSON file, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
    },
    /// Invariants of a Killing tensor or Killing vector.
    Invariants {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Kt)]
        kind: Kind,
    },
    /// Separable chart of a characteristic Killing tensor of a given web.
    Canonical {
        #[arg(long)]
        input: PathBuf,
        /// Expected web label, e.g. `prolate_spheroidal`.
        #[arg(long)]
        web: String,
    },
    /// Separable webs of the natural Hamiltonian with the given potential.
    Separable {
        /// Potential in x, y, z, e.g. "1/(x-y)^2 + 1/(y-z)^2 + 1/(z-x)^2".
        #[arg(long)]
        potential: String,
        /// Constant binding `name=p/q`; repeatable.
        #[arg(long = "const", value_name = "NAME=P/Q")]
        constants: Vec<String>,
        /// Integer coefficient range for combinations of basis tensors.
        #[arg(long, default_value_t = CombinationPolicy::default().range)]
        combo_range: u32,
        /// Upper limit on the number of combinations examined.
        #[arg(long, default_value_t = CombinationPolicy::default().max_candidates)]
        max_combinations: usize,
        /// Directory receiving one chart JSON per discovered web.
        #[arg(long)]
        emit_charts: Option<PathBuf>,
    },
    /// The eleven webs with their coordinates and invariant signatures.
    Webs,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::usage(format!("cannot read standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        offset: byte_offset(&text, e.line(), e.column()),
        message: format!("invalid JSON in {}: {e}", path.display()),
    })
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum::<usize>() + column.saturating_sub(1)
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".to_string(), json!(SCHEMA));
    }
    v
}

/// JSON document and its text rendering.
struct Output {
    json: Value,
    text: String,
}

fn run(cli: Cli) -> Result<Output> {
    let tol = cli.config.tolerances();
    match cli.command {
        Command::ClassifyKt { input } => {
            let k = KtParams::from_json(&read_json(&input)?)?;
            let report = classify_web_with(&k, &tol)?;
            Ok(Output { text: render::classification(&report), json: report.to_json() })
        }
        Command::Invariants { input, kind } => {
            let v = read_json(&input)?;
            let json = match kind {
                Kind::Kt => all_invariants_json(&KtParams::from_json(&v)?),
                Kind::Kv => json!({ "kv": kv_invariants(&KvParams::from_json(&v)?).to_json() }),
            };
            Ok(Output { text: render::invariants(&json), json })
        }
        Command::Canonical { input, web } => {
            let want: WebClass = web.parse()?;
            let k = KtParams::from_json(&read_json(&input)?)?;
            let (report, chart) = canonical_chart(&k, &tol)?;
            if report.web != want {
                return Err(Error::domain(format!("tensor classifies as {}, not {want}", report.web)));
            }
            Ok(Output { text: render::chart(&chart), json: chart.to_json() })
        }
        Command::Separable { potential, constants, combo_range, max_combinations, emit_charts } => {
            let bindings = constants.iter().map(|s| parse_binding(s)).collect::<Result<HashMap<_, _>>>()?;
            let v = parse_potential(&potential, &bindings)?;
            let policy = CombinationPolicy { range: combo_range, max_candidates: max_combinations };
            let report = find_separable_webs(&v, policy, &tol)?;
            if let Some(dir) = emit_charts {
                std::fs::create_dir_all(&dir)
                    .map_err(|e| Error::usage(format!("cannot create {}: {e}", dir.display())))?;
                for (i, d) in report.ckts.iter().enumerate() {
                    let path = dir.join(format!("chart_{:03}_{}.json", i + 1, d.report.web.label().to_lowercase()));
                    let body = serde_json::to_string_pretty(&with_schema(d.chart.to_json())).expect("serializable");
                    std::fs::write(&path, body + "\n")
                        .map_err(|e| Error::usage(format!("cannot write {}: {e}", path.display())))?;
                }
            }
            Ok(Output { text: render::separability(&report), json: report.to_json() })
        }
        Command::Webs => Ok(Output { text: render::atlas(), json: render::atlas_json() }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = cli.config.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&with_schema(out.json)).expect("serializable"))
                }
                Format::Text => print!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("killingweb: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
