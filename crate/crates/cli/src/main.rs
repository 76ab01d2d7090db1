mod args;
mod bench;
mod report;
mod run;
mod source;

use std::process::ExitCode;

use anyhow::Result;
use clap::error::ErrorKind;
use clap::Parser;
use local_derand::Error;

use args::{Cli, Command};
use source::Usage;

const EXIT_CLAIM: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_BUDGET: u8 = 4;

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Budget { .. }) => EXIT_BUDGET,
        Some(Error::Parse { .. } | Error::UnknownNode(_) | Error::Domain(_)) => EXIT_USAGE,
        Some(_) => EXIT_CLAIM,
        None => 1,
    }
}

fn write_report(r: &report::Report, out: Option<&std::path::Path>) -> Result<u8> {
    let mut bytes = serde_json::to_vec_pretty(r)?;
    bytes.push(b'\n');
    report::emit(out, &bytes)?;
    Ok(if r.passed() { 0 } else { EXIT_CLAIM })
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Generate { gen, seed, out } => {
            let (g, _) = source::generate(&gen, seed)?;
            report::emit(out.as_deref(), g.to_edge_list().as_bytes())?;
            Ok(0)
        }
        Command::Run(args) => write_report(&run::run(&args)?, args.out.as_deref()),
        Command::Bench(args) => {
            let csv = bench::bench(&args)?;
            report::emit(args.out.as_deref(), csv.as_bytes())?;
            Ok(0)
        }
        Command::Oracle(args) => write_report(&run::oracle(&args)?, args.out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
