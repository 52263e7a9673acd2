//! `collatz-bits` command-line front end.
//!
//! Exit codes: 0 on success (a run that hits its step cap still succeeds and
//! says "truncated"), 1 on a domain or I/O error, 2 on a usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use collatz_bits::classify::{classify, hard_number};
use collatz_bits::collatz::{odd_chain, sequence, stopping_time, DEFAULT_CAP};
use collatz_bits::compose::{decompose, subtree, tree_path};
use collatz_bits::powersum::{derivation_trace, hard_closed_form};
use collatz_bits::traceio::{
    render_derivation, render_machine_derivation, render_machine_trace, render_points,
    render_scratch, render_subtree, render_table, render_tree_path, RenderConfig, RenderFormat,
};
use collatz_bits::verify::{default_jobs, run_checkpointed, DEFAULT_CHUNK_SIZE, DEFAULT_RANGE_CAP};
use collatz_bits::{BinaryNat, Error, VerifyConfig};

/// Environment variable that supplies the default `--cap`.
const CAP_ENV: &str = "COLLATZ_BITS_CAP";

#[derive(Parser)]
#[command(
    name = "collatz-bits",
    version,
    about = "Collatz iteration on binary strings"
)]
struct Cli {
    /// Read numeric arguments as bit strings (e.g. 1100001) instead of decimal.
    #[arg(long, global = true)]
    binary: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Collatz sequence of n.
    Trace {
        n: String,
        #[arg(long, value_enum, default_value_t = Format::Scratch)]
        format: Format,
        /// Step cap [default: 1048576, or $COLLATZ_BITS_CAP].
        #[arg(long, env = CAP_ENV)]
        cap: Option<u64>,
        /// Leave out the decimal column.
        #[arg(long)]
        no_decimal: bool,
        /// Leave out the binary column.
        #[arg(long)]
        no_binary: bool,
        /// Minimum width of the first column.
        #[arg(long, default_value_t = 0)]
        width: usize,
    },
    /// Print the class of n and its binary form.
    Classify { n: String },
    /// Print the path from 1 to n in the composition tree.
    Path { n: String },
    /// Print the power-of-two derivation of the odd chain of n.
    Decompose {
        n: String,
        #[arg(long, value_enum, default_value_t = DerivationFormat::Human)]
        format: DerivationFormat,
        /// Step cap [default: 1048576, or $COLLATZ_BITS_CAP].
        #[arg(long, env = CAP_ENV)]
        cap: Option<u64>,
    },
    /// Print the number of steps from n to 1.
    StoppingTime {
        n: String,
        /// Step cap [default: 1048576, or $COLLATZ_BITS_CAP].
        #[arg(long, env = CAP_ENV)]
        cap: Option<u64>,
    },
    /// Check the k-th number of the form (4^k - 1)/3.
    Hard { k: u64 },
    /// Print the first levels of the composition tree.
    Tree {
        depth: u32,
        /// Print the nodes as bit strings.
        #[arg(long)]
        bits: bool,
    },
    /// Check every n in [lo, hi) reaches 1.
    Verify {
        lo: String,
        hi: String,
        /// Step cap per input [default: 100000, or $COLLATZ_BITS_CAP].
        #[arg(long, env = CAP_ENV)]
        cap: Option<u64>,
        /// Inputs per work unit.
        #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
        chunk: u64,
        /// Worker threads [default: available processors].
        #[arg(long)]
        jobs: Option<usize>,
        /// Save progress to FILE after every batch.
        #[arg(long, value_name = "FILE")]
        checkpoint: Option<PathBuf>,
        /// Continue from the checkpoint file.
        #[arg(long, requires = "checkpoint")]
        resume: bool,
        /// Stop once the chunk containing this input is done.
        #[arg(long, requires = "checkpoint")]
        until: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Scratch,
    Points,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum DerivationFormat {
    Human,
    Machine,
}

fn parse_nat(s: &str, binary: bool) -> Result<BinaryNat> {
    let parsed = if binary {
        BinaryNat::from_bit_str(s)
    } else {
        BinaryNat::from_decimal(s)
    };
    parsed.with_context(|| format!("invalid input {s:?}"))
}

fn run(cli: Cli) -> Result<String> {
    let binary = cli.binary;
    let out = match cli.command {
        Command::Trace {
            n,
            format,
            cap,
            no_decimal,
            no_binary,
            width,
        } => {
            let n = parse_nat(&n, binary)?;
            let cap = cap.unwrap_or(DEFAULT_CAP);
            let cfg = RenderConfig {
                format: match format {
                    Format::Table => RenderFormat::Table,
                    Format::Scratch => RenderFormat::Scratch,
                    Format::Points => RenderFormat::Points,
                    Format::Machine => RenderFormat::Machine,
                },
                show_decimal: !no_decimal,
                show_binary: !no_binary,
                column_width: width,
            };
            cfg.validate()?;
            match format {
                Format::Table => match odd_chain(&n, cap) {
                    Ok(chain) => render_table(&chain, &cfg)?,
                    Err(Error::Truncated { cap }) => format!("truncated after {cap} steps\n"),
                    Err(e) => return Err(e.into()),
                },
                Format::Scratch => render_scratch(&sequence(&n, cap), &cfg)?,
                Format::Points => {
                    let trace = sequence(&n, cap);
                    let mut out = render_points(&trace);
                    if trace.truncated {
                        out.push_str(&format!("# truncated after {} steps\n", trace.steps()));
                    }
                    out
                }
                Format::Machine => render_machine_trace(&sequence(&n, cap)),
            }
        }
        Command::Classify { n } => {
            let n = parse_nat(&n, binary)?;
            format!("{} {}\n", classify(&n), n.to_bit_string())
        }
        Command::Path { n } => {
            let n = parse_nat(&n, binary)?;
            render_tree_path(&tree_path(&n), &decompose(&n))
        }
        Command::Decompose { n, format, cap } => {
            let n = parse_nat(&n, binary)?;
            match derivation_trace(&n, cap.unwrap_or(DEFAULT_CAP)) {
                Ok(records) => match format {
                    DerivationFormat::Human => render_derivation(&records)?,
                    DerivationFormat::Machine => render_machine_derivation(&records),
                },
                Err(Error::Truncated { cap }) => format!("truncated after {cap} steps\n"),
                Err(e) => return Err(e.into()),
            }
        }
        Command::StoppingTime { n, cap } => {
            let n = parse_nat(&n, binary)?;
            match stopping_time(&n, cap.unwrap_or(DEFAULT_CAP)) {
                Ok(m) => format!("{m}\n"),
                Err(Error::Truncated { .. }) => "truncated\n".to_string(),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Hard { k } => {
            let form = hard_closed_form(k)?;
            let a = hard_number(k)?;
            let expected = 2 * k + 1;
            let trace = sequence(&a, expected);
            let hits_one = trace.entries.len() as u64 == expected + 1
                && trace.entries.last().is_some_and(|e| e.value.is_one());
            let m = stopping_time(&a, DEFAULT_CAP)?;
            let mut out = String::new();
            out.push_str(&format!("a_{k} {} ({:b})₂\n", form.a_k, form.a_k));
            out.push_str(&format!("T(a_{k}) {} = 2^{}\n", form.t_of_a_k, 2 * k));
            out.push_str(&format!(
                "T^{expected}(a_{k}) = 1 {}\n",
                if hits_one { "ok" } else { "FAILED" }
            ));
            out.push_str(&format!("stopping_time {m}\n"));
            out
        }
        Command::Tree { depth, bits } => render_subtree(&subtree(depth)?, bits),
        Command::Verify {
            lo,
            hi,
            cap,
            chunk,
            jobs,
            checkpoint,
            resume,
            until,
        } => {
            let lo = parse_nat(&lo, binary)?;
            let hi = parse_nat(&hi, binary)?;
            let cfg = VerifyConfig {
                step_cap: cap.unwrap_or(DEFAULT_RANGE_CAP),
                chunk_size: chunk,
                jobs: jobs.unwrap_or_else(default_jobs),
            };
            match checkpoint {
                Some(path) => {
                    let cp = run_checkpointed(&lo, &hi, &cfg, &path, resume, until)?;
                    if cp.is_complete() {
                        cp.report().to_string()
                    } else {
                        format!(
                            "stopped next_unprocessed {} checkpoint {}\n",
                            cp.next_unprocessed,
                            path.display()
                        )
                    }
                }
                None => {
                    if resume || until.is_some() {
                        bail!("--resume and --until need --checkpoint");
                    }
                    collatz_bits::verify::verify_range_with(&lo, &hi, &cfg)?.to_string()
                }
            }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
