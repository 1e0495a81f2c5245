use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use symorbit::schub::{expand_grothendieck, expand_schubert, kirillov_double_expand};
use symorbit::upsilon::{compute_all, records_to_csv, records_to_json, OrbitRecord};
use symorbit::weakorder::build_graph;
use symorbit::{Pair, Polynomial, Theory};

mod verify;

#[derive(Parser)]
#[command(name = "symorbit", version, about = "Υ polynomials for symmetric orbit closures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairArg {
    O,
    Sp,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Coh,
    K,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Schubert,
    Grothendieck,
    DoubleSchubert,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Target {
    PathIndependence,
    Positivity,
    Stability,
    Localization,
    DemazureFailure,
    Kirillov,
    KToC,
}

#[derive(Subcommand)]
enum Command {
    /// Print Υ (or Υ^K) for every orbit, closed orbit first.
    Upsilon {
        #[arg(long, value_enum)]
        pair: PairArg,
        /// Ambient size of GL.
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value = "coh")]
        theory: TheoryArg,
        #[arg(long, value_enum, default_value = "pretty")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weak-order graph as Graphviz DOT or JSON.
    Hasse {
        #[arg(long, value_enum)]
        pair: PairArg,
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an invariant suite and print a JSON report.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Restrict to one pair (requires --size).
        #[arg(long, value_enum, requires = "size")]
        pair: Option<PairArg>,
        #[arg(long)]
        size: Option<usize>,
        /// Symmetric group size for the Kirillov suite.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand a polynomial in a Schubert-type basis.
    Expand {
        polynomial: String,
        #[arg(long, value_enum, default_value = "schubert")]
        basis: Basis,
        #[arg(long)]
        n: usize,
    },
}

fn make_pair(pair: PairArg, size: usize) -> symorbit::Result<Pair> {
    match pair {
        PairArg::O => Pair::orthogonal(size),
        PairArg::Sp => Pair::symplectic(size),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty_table(pair: Pair, records: &[OrbitRecord]) -> String {
    let width = records
        .iter()
        .map(|r| r.involution.cycle_notation().len())
        .max()
        .unwrap_or(0)
        .max(2);
    let with_k = records.iter().any(|r| r.upsilon_k.is_some());
    let mut out = format!("{pair}\n");
    for r in records {
        let name = r.involution.cycle_notation();
        match &r.upsilon_k {
            Some(k) if with_k => out.push_str(&format!("{name:<width$}  {}  |  {k}\n", r.upsilon)),
            _ => out.push_str(&format!("{name:<width$}  {}\n", r.upsilon)),
        }
    }
    out
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Upsilon {
            pair,
            size,
            theory,
            format,
            out,
        } => {
            let pair = make_pair(pair, size).map_err(|e| e.to_string())?;
            let theory = match theory {
                TheoryArg::Coh => Theory::Cohomology,
                TheoryArg::K => Theory::KTheory,
            };
            let records = compute_all(pair, theory).map_err(|e| e.to_string())?;
            let text = match format {
                TableFormat::Json => json_text(&records_to_json(&records)),
                TableFormat::Csv => records_to_csv(&records),
                TableFormat::Pretty => pretty_table(pair, &records),
            };
            emit(&text, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hasse {
            pair,
            size,
            format,
            out,
        } => {
            let pair = make_pair(pair, size).map_err(|e| e.to_string())?;
            let graph = build_graph(pair);
            let text = match format {
                GraphFormat::Dot => graph.export_dot(),
                GraphFormat::Json => json_text(&graph.to_json()),
            };
            emit(&text, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            target,
            pair,
            size,
            n,
            out,
        } => {
            let only = match (pair, size) {
                (Some(p), Some(s)) => Some(make_pair(p, s).map_err(|e| e.to_string())?),
                _ => None,
            };
            let report = verify::run(target, only, n);
            emit(&json_text(&report.to_json()), out.as_ref())?;
            if let Some(first) = report.first_failure() {
                eprintln!("FAILED: {first}");
                return Ok(ExitCode::FAILURE);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Expand {
            polynomial,
            basis,
            n,
        } => {
            let f = Polynomial::parse(&polynomial).map_err(|e| e.to_string())?;
            let text = match basis {
                Basis::Schubert => expand_schubert(&f, n).map(|e| e.render("S")),
                Basis::Grothendieck => expand_grothendieck(&f, n).map(|e| e.render("G")),
                Basis::DoubleSchubert => kirillov_double_expand(&f, n).map(|e| e.render("S")),
            }
            .map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
