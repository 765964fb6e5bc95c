use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lazy_kron_bench::config::{Cli, Command, RunConfig, OUT_DIR_ENV};
use lazy_kron_bench::output::emit;
use lazy_kron_bench::{counts, hinted, timing, verify, BenchError, EXIT_CHECK_FAILED, EXIT_OK};

fn run(cfg: &RunConfig) -> Result<u8, BenchError> {
    let env_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    let path = cfg.output_path(env_dir.as_deref());
    match cfg.command {
        Command::Verify => {
            let outcome = verify::run(cfg)?;
            println!("{}", outcome.summary());
            Ok(outcome.exit_code())
        }
        Command::Counts => {
            let rows = counts::run(cfg)?;
            emit(&rows, cfg.format, path.as_deref())?;
            let failed = rows.iter().filter(|r| !r.ok).count();
            if failed > 0 {
                eprintln!(
                    "counts: {failed} of {} rows deviate from their formulas",
                    rows.len()
                );
                return Ok(EXIT_CHECK_FAILED);
            }
            Ok(EXIT_OK)
        }
        Command::Bench => {
            let rows = timing::run(cfg)?;
            emit(&rows, cfg.format, path.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::HintedMv => {
            let rows = hinted::run(cfg)?;
            emit(&rows, cfg.format, path.as_deref())?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.into_config().and_then(|cfg| run(&cfg)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("lazykron: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code)
}
