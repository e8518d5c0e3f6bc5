mod args;
mod commands;
mod error;
mod report;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

use crate::args::Cli;
use crate::error::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => exit_with_usage(err),
    };
    let result = commands::dispatch(&cli.command).and_then(|report| report.emit(commands::output_of(&cli.command)));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            let name = commands::name_of(&cli.command);
            let mut command = Cli::command();
            let mut sub = command
                .find_subcommand_mut(name)
                .expect("every command is registered")
                .clone()
                .bin_name(format!("expknap {name}"));
            sub.error(ErrorKind::ValueValidation, msg).exit()
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Clap omits the usage line for value errors; add it so every usage error
/// shows how to call the command.
fn exit_with_usage(err: clap::Error) -> ! {
    if !err.use_stderr() || err.render().to_string().contains("Usage:") {
        err.exit();
    }
    let mut root = Cli::command();
    let name = std::env::args().skip(1).find(|a| root.find_subcommand(a).is_some());
    let usage = match name {
        Some(name) => root
            .find_subcommand_mut(&name)
            .expect("subcommand exists")
            .clone()
            .bin_name(format!("expknap {name}"))
            .render_usage(),
        None => root.render_usage(),
    };
    eprint!("{}", err.render());
    eprintln!("\n{usage}");
    std::process::exit(2)
}
