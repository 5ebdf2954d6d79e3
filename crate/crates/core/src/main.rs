use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mauto::cli::{execute, Cli, ERROR_EXIT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Keep usage errors apart from the report codes 0, 1, 2.
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            let _ = std::io::stdout().flush();
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR_EXIT as u8)
        }
    }
}
