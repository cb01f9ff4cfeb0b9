use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use gblocks_core::group::DEFAULT_ORDER_CAP;
use gblocks_core::pipeline::{default_corpus, load_corpus, run_compute, run_corpus, CheckLevel, Format, RunConfig};

/// p-blocks of the Grothendieck ring of G-equivariant vector bundles on a finite group.
///
/// Exit codes: 0 all checks pass, 1 a check failed, 2 order cap exceeded,
/// 3 bad input, 4 internal inconsistency.
#[derive(Parser, Debug)]
#[command(name = "gblocks", version)]
struct Args {
    /// Group, e.g. `S3`, `D8`, `S3xC2` or `perm: (1,2); (1,2,3)`.
    #[arg(long, required_unless_present = "corpus")]
    group: Option<String>,

    #[arg(long, required_unless_present = "corpus")]
    prime: Option<u64>,

    #[arg(long, value_enum, default_value = "theorem")]
    check: Level,

    #[arg(long, value_enum, default_value = "json")]
    format: OutFormat,

    /// Character table of G in JSON, used instead of computing one.
    #[arg(long)]
    table_in: Option<PathBuf>,

    /// Also recompute the blocks with a second choice of prime ideal.
    #[arg(long)]
    alt_root: bool,

    /// JSON corpus file, or `default` for the built-in corpus.
    #[arg(long, conflicts_with_all = ["group", "prime", "table_in"])]
    corpus: Option<String>,

    /// Include per-stage wall times in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Level {
    Table,
    Blocks,
    Theorem,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

fn order_cap() -> Result<usize, String> {
    match std::env::var("GBLOCKS_ORDER_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| format!("GBLOCKS_ORDER_CAP: not a number: {v}")),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn emit(text: String) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cap = match order_cap() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let check = match args.check {
        Level::Table => CheckLevel::Table,
        Level::Blocks => CheckLevel::Blocks,
        Level::Theorem => CheckLevel::Theorem,
        Level::All => CheckLevel::All,
    };
    let format = match args.format {
        OutFormat::Json => Format::Json,
        OutFormat::Text => Format::Text,
    };
    let mut cfg = RunConfig::new(args.group.clone().unwrap_or_default(), args.prime.unwrap_or(0));
    cfg.check = check;
    cfg.table_in = args.table_in.clone();
    cfg.alt_root = args.alt_root;
    cfg.order_cap = cap;
    cfg.timings = args.timings;

    if let Some(corpus) = &args.corpus {
        let cells = if corpus == "default" {
            default_corpus(&cfg)
        } else {
            match load_corpus(corpus.as_ref(), &cfg) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(e.exit_code() as u8);
                }
            }
        };
        let ledger = run_corpus(&cells);
        emit(match format {
            Format::Json => ledger.to_json() + "\n",
            Format::Text => ledger.to_text(),
        });
        return ExitCode::from(ledger.exit_code() as u8);
    }

    match run_compute(&cfg) {
        Ok(report) => {
            emit(match format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            });
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
