// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use eqrank_cli::{run, RunConfig};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(&config, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eqrank: {e}");
            if e.exit_code() == 2 {
                eprintln!(
                    "eqrank: rerun with --component largest to analyse the largest component"
                );
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
