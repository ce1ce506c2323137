use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use docsynth::{cmd_preview, dir_stats, load_assets, parse_config, run_batch, validate_output_dir, Overrides};

const EXIT_CONFIG: u8 = 1;
const EXIT_GENERATION: u8 = 2;
const EXIT_INVALID: u8 = 3;

#[derive(Parser)]
#[command(name = "docsynth", version, about = "Synthetic document image generator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a batch of pages with labels and COCO files.
    Generate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        count: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render one page plus box overlays at each annotation level.
    Preview {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        index: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an output directory; exits 3 if anything is wrong.
    Validate {
        #[arg(long)]
        dir: PathBuf,
    },
    /// Print category and level counts of an output directory.
    Stats {
        #[arg(long)]
        dir: PathBuf,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Generate {
            config,
            count,
            seed,
            workers,
            out,
        } => {
            let overrides = Overrides {
                count,
                seed,
                workers,
                output_dir: out,
            };
            let cfg = match parse_config(config.as_deref(), &overrides) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_CONFIG, e),
            };
            let assets = match load_assets(&cfg) {
                Ok(a) => a,
                Err(e) => return fail(EXIT_GENERATION, e),
            };
            for s in &assets.fonts.skipped {
                eprintln!("warning: skipped font {}: {}", s.path.display(), s.reason);
            }
            match run_batch(&cfg, &assets) {
                Ok(stats) => {
                    println!("{}", stats.summary());
                    println!("output: {}", cfg.paths.output_dir.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(EXIT_GENERATION, e),
            }
        }
        Command::Preview { config, index, out } => {
            let overrides = Overrides {
                output_dir: out,
                ..Default::default()
            };
            let cfg = match parse_config(config.as_deref(), &overrides) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_CONFIG, e),
            };
            let report = match load_assets(&cfg).and_then(|a| cmd_preview(&cfg, &a, index)) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_GENERATION, e),
            };
            println!("page: {}", report.page.display());
            for (level, path, n) in &report.overlays {
                println!("{level}: {n} boxes -> {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Command::Validate { dir } => match validate_output_dir(&dir) {
            Ok(report) => {
                for p in &report.problems {
                    println!("{p}");
                }
                println!(
                    "{} pages, {} problem(s)",
                    report.pages,
                    report.problems.len()
                );
                if report.is_valid() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(EXIT_INVALID)
                }
            }
            Err(e) => fail(EXIT_INVALID, e),
        },
        Command::Stats { dir } => match dir_stats(&dir) {
            Ok(s) => {
                let text = serde_json::to_string_pretty(&s).expect("stats serialize");
                // a closed pipe (e.g. `| head`) is not an error
                let _ = writeln!(std::io::stdout(), "{text}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(EXIT_GENERATION, e),
        },
    }
}
