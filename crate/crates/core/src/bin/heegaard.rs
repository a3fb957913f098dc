//! Command-line front end. Reports are deterministic key=value lines sorted
//! by key; exit code 0 means pass, 1 means violations or analysis errors,
//! 2 means usage or parse errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use heegaard_core::complex::export_graph;
use heegaard_core::generate::{generate, GenSpec};
use heegaard_core::model::SplittingModel;
use heegaard_core::parse::{parse_model, serialize};
use heegaard_core::reduction::TenType;
use heegaard_core::report::Report;
use heegaard_core::summaries;

#[derive(Parser)]
#[command(
    name = "heegaard",
    about = "weak reductions of modeled Heegaard splittings and their disk-complex clusters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArg {
    /// Model file in the line-oriented declaration format.
    model: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check the consistency rules R1-R7.
    Validate(ModelArg),
    /// Weak reduction along one pair: thick/thin levels and the four bodies.
    Reduce {
        #[command(flatten)]
        model: ModelArg,
        /// Weak reducing pair, as <v-disk>,<w-disk>.
        #[arg(long)]
        pair: String,
        /// Print the preweak levels, before cleaning.
        #[arg(long)]
        raw: bool,
    },
    /// Ten-type classification of one pair or all pairs.
    Classify {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, conflicts_with = "all")]
        pair: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Equivalent clusters, nonequivalent simplices, and structure checks.
    Clusters {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        synthesize_meridians: bool,
    },
    /// Connected components of the side-crossing subset.
    Components(ModelArg),
    /// Criticality verdict with partition or witness face.
    Criticality {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        synthesize_meridians: bool,
    },
    /// Genus-3 component/cluster table with descriptor grouping.
    Phi {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        synthesize_meridians: bool,
    },
    /// Recompute clusters and thin genera independently and compare.
    OracleCheck {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        synthesize_meridians: bool,
    },
    /// Generate a random valid model.
    Gen {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        disks: usize,
        #[arg(long)]
        seed: u64,
        /// Island center types to draw from (comma separated, e.g. a_i,c).
        #[arg(long, value_delimiter = ',')]
        types: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plain-text node/edge/face export of the disk complex.
    ExportGraph {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((code, text)) => {
            print!("{}", colorize(&text));
            ExitCode::from(code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Color the values of status-like keys when HC_COLOR=1.
fn colorize(text: &str) -> String {
    if std::env::var("HC_COLOR").as_deref() != Ok("1") {
        return text.to_string();
    }
    text.lines()
        .map(|line| match line.split_once('=') {
            Some((k @ ("status" | "result" | "verdict"), v)) => {
                let color = if matches!(v, "valid" | "pass") {
                    32
                } else {
                    31
                };
                format!("{k}=\x1b[{color}m{v}\x1b[0m\n")
            }
            _ => format!("{line}\n"),
        })
        .collect()
}

fn load(path: &PathBuf) -> Result<SplittingModel, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_model(&text).map_err(|e| e.to_string())
}

fn split_pair(pair: &str) -> Result<(String, String), String> {
    pair.split_once(',')
        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
        .ok_or_else(|| format!("--pair wants <id>,<id>, got {pair:?}"))
}

fn parse_type_names(names: &[String]) -> Result<Vec<TenType>, String> {
    names
        .iter()
        .map(|name| {
            let canon = name.trim().to_ascii_uppercase();
            TenType::ALL
                .iter()
                .find(|t| t.to_string() == canon)
                .copied()
                .ok_or_else(|| {
                    format!(
                        "unknown type {name:?}; expect one of A_I, A_II_W, A_II_V, A_III, \
                         B_W_I, B_W_II, B_V_I, B_V_II, C, D"
                    )
                })
        })
        .collect()
}

/// Validate, then run the report builder on the (optionally closed) model.
/// Invalid models short-circuit with the violation report and exit code 1.
fn with_valid_model(
    model: SplittingModel,
    synthesize: bool,
    body: impl FnOnce(&SplittingModel) -> Result<(u8, Report), String>,
) -> Result<(u8, String), String> {
    let (code, report) = summaries::validate_report(&model);
    if code != 0 {
        return Ok((code, report.render()));
    }
    let closed;
    let m = if synthesize {
        closed = model.synthesize_meridians();
        &closed
    } else {
        &model
    };
    let (code, report) = body(m)?;
    Ok((code, report.render()))
}

fn write_or_print(text: String, out: Option<PathBuf>) -> Result<(u8, String), String> {
    match out {
        Some(path) => {
            fs::write(&path, &text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            Ok((0, String::new()))
        }
        None => Ok((0, text)),
    }
}

fn run(cli: Cli) -> Result<(u8, String), String> {
    match cli.command {
        Command::Validate(m) => {
            let (code, report) = summaries::validate_report(&load(&m.model)?);
            Ok((code, report.render()))
        }
        Command::Reduce { model, pair, raw } => {
            let (v, w) = split_pair(&pair)?;
            with_valid_model(load(&model.model)?, false, |m| {
                summaries::reduce_report(m, &v, &w, raw)
            })
        }
        Command::Classify { model, pair, all } => {
            with_valid_model(load(&model.model)?, false, |m| {
                if let Some(pair) = &pair {
                    let (v, w) = split_pair(pair)?;
                    summaries::classify_pair_report(m, &v, &w)
                } else if all {
                    summaries::classify_all_report(m)
                } else {
                    Err("classify wants --pair <v>,<w> or --all".into())
                }
            })
        }
        Command::Clusters {
            model,
            synthesize_meridians,
        } => with_valid_model(load(&model.model)?, synthesize_meridians, |m| {
            summaries::clusters_report(m)
        }),
        Command::Components(m) => {
            with_valid_model(load(&m.model)?, false, summaries::components_report)
        }
        Command::Criticality {
            model,
            synthesize_meridians,
        } => with_valid_model(load(&model.model)?, synthesize_meridians, |m| {
            summaries::criticality_report(m)
        }),
        Command::Phi {
            model,
            synthesize_meridians,
        } => with_valid_model(load(&model.model)?, synthesize_meridians, |m| {
            summaries::phi_report(m)
        }),
        Command::OracleCheck {
            model,
            synthesize_meridians,
        } => with_valid_model(load(&model.model)?, synthesize_meridians, |m| {
            summaries::oracle_report(m)
        }),
        Command::Gen {
            genus,
            disks,
            seed,
            types,
            out,
        } => {
            let mut spec = GenSpec::new(genus, disks, seed);
            if !types.is_empty() {
                spec = spec.with_types(&parse_type_names(&types)?);
            }
            match generate(&spec) {
                Ok(model) => write_or_print(serialize(&model), out),
                Err(e) => {
                    let mut r = Report::new();
                    r.set("error", e);
                    Ok((1, r.render()))
                }
            }
        }
        Command::ExportGraph { model, out } => {
            let m = load(&model.model)?;
            let text = export_graph(&m).map_err(|e| e.to_string())?;
            write_or_print(text, out)
        }
    }
}
