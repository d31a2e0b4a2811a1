use std::process::ExitCode;

use fconv_cli::{parse_args, run, CliError};

fn main() -> ExitCode {
    let cfg = match parse_args(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(CliError::Clap(e)) => e.exit(),
        Err(e) => {
            eprintln!("fconv: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match run(&cfg) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("fconv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
