//! `kunum` command-line interface.
//!
//! Exit status: 0 success, 2 usage error, 3 domain error, 4 internal
//! assertion failure. Errors are printed to stderr as one JSON object.

mod cli;
mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use commands::Failure;

fn fail(code: u8, kind: &str, message: &str) -> ExitCode {
    let line = json!({ "error": kind, "message": message, "exit": code });
    eprintln!("{line}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let args = match cli::Cli::try_parse() {
        Ok(a) => a,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => return fail(2, "usage", e.to_string().trim()),
    };
    match commands::run(args.command, args.format) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => fail(2, "usage", &msg),
        Err(Failure::Domain(e)) if e.is_internal() => fail(4, e.kind(), &e.to_string()),
        Err(Failure::Domain(e)) => fail(3, e.kind(), &e.to_string()),
    }
}
