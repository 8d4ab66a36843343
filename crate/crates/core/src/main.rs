//! Command-line workbench: construct codes, print distance profiles, encode,
//! run the q-ary symmetric channel, decode, benchmark the decoders, and run
//! the verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use clap::{Parser, Subcommand, ValueEnum};
use colcodes::conv::{Construction, ConvolutionalCode, DEFAULT_DISTANCE_BUDGET};
use colcodes::fast_viterbi::{complexity_report, fast_viterbi_decode};
use colcodes::viterbi::{ml_decode_exhaustive, viterbi_decode, DEFAULT_ML_BUDGET};
use colcodes::{acceptance, fileio, ChannelSpec, FieldSpec};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "colcodes",
    version,
    about = "Convolutional codes with optimal column distances: construction, distance oracles, and fast Viterbi decoding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Viterbi,
    Fast,
    Ml,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the three constructions and write its code file.
    Construct {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        construction: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print d_0..d_jmax from the closed form; --oracle re-derives them
    /// exhaustively and fails on any mismatch.
    Distances {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        jmax: usize,
        #[arg(long)]
        oracle: bool,
    },
    /// Encode a message file into a terminated frame of N blocks.
    Encode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        message: PathBuf,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pass frames through the q-ary symmetric channel.
    Channel {
        #[arg(long)]
        code: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Decode received frames; prints the message symbols and the metric.
    Decode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        rx: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
    },
    /// Instrumented decoder comparison, emitted as CSV.
    Bench {
        #[arg(long)]
        code: PathBuf,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run the full verification suite; one line per criterion.
    Verify,
}

fn read_to_string(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_code(path: &Path) -> Result<ConvolutionalCode, String> {
    fileio::read_code(&read_to_string(path)?).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Construct {
            q,
            k,
            delta,
            construction,
            out,
        } => {
            let field = Arc::new(FieldSpec::for_size(q).map_err(|e| e.to_string())?);
            let code = match construction {
                1 => ConvolutionalCode::construct_1(&field, k, delta),
                2 => ConvolutionalCode::construct_2(&field, k, delta),
                3 => ConvolutionalCode::construct_3(&field, k, delta),
                _ => unreachable!("clap range"),
            }
            .map_err(|e| e.to_string())?;
            std::fs::write(&out, fileio::write_code(&code)).map_err(|e| e.to_string())?;
            println!(
                "wrote ({},{},{}) code over GF({}) with n = {} to {}",
                code.n(),
                code.k(),
                code.delta(),
                q,
                code.n(),
                out.display()
            );
            Ok(0)
        }
        Command::Distances { code, jmax, oracle } => {
            let code = load_code(&code)?;
            if code.construction() == Construction::Custom {
                return Err("custom codes have no closed-form distances".into());
            }
            let formula: Vec<u64> = (0..=jmax)
                .map(|j| code.column_distance_closed_form(j))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let rendered: Vec<String> = formula.iter().map(|d| d.to_string()).collect();
            println!("{}", rendered.join(" "));
            if oracle {
                for (j, &expected) in formula.iter().enumerate() {
                    let measured = code
                        .column_distance_exhaustive(j, DEFAULT_DISTANCE_BUDGET)
                        .map_err(|e| e.to_string())?;
                    if measured != expected {
                        eprintln!("mismatch at j={j}: oracle {measured}, formula {expected}");
                        return Ok(1);
                    }
                }
                println!("oracle agrees for j <= {jmax}");
            }
            Ok(0)
        }
        Command::Encode {
            code,
            message,
            big_n,
            out,
        } => {
            let code = load_code(&code)?;
            let msg = fileio::read_message(&read_to_string(&message)?, code.k())
                .map_err(|e| e.to_string())?;
            let frame = code.encode(&msg, big_n).map_err(|e| e.to_string())?;
            std::fs::write(&out, fileio::write_frames(&[frame])).map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Channel {
            code,
            input,
            out,
            epsilon,
            seed,
        } => {
            let code = load_code(&code)?;
            let frames = fileio::read_frames(&read_to_string(&input)?, code.n())
                .map_err(|e| e.to_string())?;
            let channel = ChannelSpec::new(epsilon, seed).map_err(|e| e.to_string())?;
            let mut noisy = Vec::with_capacity(frames.len());
            for (i, frame) in frames.iter().enumerate() {
                let (rx, errors) = channel
                    .transmit(code.field(), frame, i as u64)
                    .map_err(|e| e.to_string())?;
                println!("errors {errors}");
                noisy.push(rx);
            }
            std::fs::write(&out, fileio::write_frames(&noisy)).map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Decode { code, rx, algo } => {
            let code = load_code(&code)?;
            let frames =
                fileio::read_frames(&read_to_string(&rx)?, code.n()).map_err(|e| e.to_string())?;
            for frame in &frames {
                let result = match algo {
                    Algo::Viterbi => viterbi_decode(&code, frame),
                    Algo::Fast => fast_viterbi_decode(&code, frame),
                    Algo::Ml => ml_decode_exhaustive(&code, frame, DEFAULT_ML_BUDGET),
                }
                .map_err(|e| e.to_string())?;
                let symbols: Vec<String> = result.message.iter().map(|s| s.to_string()).collect();
                println!("{}", symbols.join(" "));
                println!("metric {}", result.metric);
            }
            Ok(0)
        }
        Command::Bench {
            code,
            big_n,
            trials,
            epsilon,
            seed,
        } => {
            let code = load_code(&code)?;
            let report = complexity_report(&code, big_n, trials, epsilon, seed)
                .map_err(|e| e.to_string())?;
            println!("algo,t,additions,comparisons,bound");
            for row in &report.rows {
                println!(
                    "{},{},{},{},{:.3}",
                    row.algo, row.t, row.additions, row.comparisons, row.bound
                );
            }
            eprintln!(
                "totals: fast {} adds (bound {:.0}), viterbi {} adds (reference {:.0}), ratio {:.2}",
                report.fast_additions,
                report.fast_bound,
                report.classical_additions,
                report.classical_reference,
                report.addition_ratio()
            );
            Ok(0)
        }
        Command::Verify => {
            let outcomes = acceptance::run_all(true);
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed == 0 {
                println!("all {} criteria passed", outcomes.len());
                Ok(0)
            } else {
                println!("{failed} of {} criteria failed", outcomes.len());
                Ok(1)
            }
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when downstream consumers of the CSV close the pipe.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
