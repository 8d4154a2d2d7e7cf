//! `nic`: runs the compactified Helmholtz experiments and writes CSV tables
//! plus a `summary.json` into the output directory.

mod config;
mod error;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use config::{Experiment, Options, RunConfig};
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "nic", version, allow_negative_numbers = true, about = "Helmholtz problems on unbounded domains by null infinity compactification")]
struct Cli {
    #[command(subcommand)]
    experiment: Experiment,

    /// JSON file with defaults for any flag; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(flatten)]
    options: Options,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let options = cli.options.merged_with_file(cli.config.as_deref())?;
    let config = RunConfig::resolve(cli.experiment, options)?;
    let summary = run::execute(&config)?;
    let failed: Vec<&String> = summary["checks"]
        .as_object()
        .map(|c| c.iter().filter(|(_, v)| v.as_bool() == Some(false)).map(|(k, _)| k).collect())
        .unwrap_or_default();
    let outputs = config.out.display();
    if failed.is_empty() {
        println!("{:?}: all checks passed, outputs in {outputs}", cli.experiment);
    } else {
        println!("{:?}: failed checks {failed:?}, outputs in {outputs}", cli.experiment);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = e.print();
                return ExitCode::from(2);
            }
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("error[validation]: {line}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let reason = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {reason}", e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
