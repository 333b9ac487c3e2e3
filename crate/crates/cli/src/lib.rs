//! Command-line front end: argument grammar, table output and the
//! verification suite.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod repro;
pub mod verify;

use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::{CliError, CliResult, ExitStatus};
use crate::output::Sink;
use crate::verify::Subjects;

/// Runs one invocation and returns its exit status.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &Subjects::default(), stdout, stderr)
}

/// [`run`] with the library functions used by `verify` supplied by the caller.
pub fn run_with<I, S>(argv: I, subjects: &Subjects, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    ExitStatus::Success
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    ExitStatus::Usage
                }
            };
            return status as i32;
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, &echo, subjects, stdout) {
        Ok(()) => ExitStatus::Success as i32,
        // A reader such as `head` closing the pipe early is not an error.
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitStatus::Success as i32,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.status() as i32
        }
    }
}

fn execute(cli: &Cli, echo: &[String], subjects: &Subjects, stdout: &mut dyn Write) -> CliResult<()> {
    let sink = cli.output.clone().map_or(Sink::Stdout, Sink::File);
    let outcome = match &cli.command {
        Command::State(cmd) => commands::state(cmd, echo)?,
        Command::Teleport(cmd) => commands::teleport(cmd, echo)?,
        Command::Repro { figure } => {
            fs::create_dir_all(&cli.out_dir)?;
            for artifact in repro::reproduce(*figure, echo)? {
                let path = cli.out_dir.join(&artifact.file_name);
                artifact.document.save(&path)?;
                writeln!(stdout, "{}", path.display())?;
            }
            return Ok(());
        }
        Command::Verify { tier } => {
            let report = verify::run(*tier, subjects);
            let text = serde_json::to_string_pretty(&report)? + "\n";
            match &cli.output {
                Some(path) => fs::write(path, text)?,
                None => stdout.write_all(text.as_bytes())?,
            }
            return match report.failed {
                0 => Ok(()),
                n => Err(CliError::VerifyFailed(n)),
            };
        }
    };
    sink.emit(&outcome.document, stdout)?;
    outcome.deferred.map_or(Ok(()), Err)
}
