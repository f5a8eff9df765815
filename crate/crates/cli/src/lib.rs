//! Text format, workspace and command layer of the `hocat` tool.

pub mod emit;
pub mod parse;
pub mod run;
pub mod workspace;

pub use run::{load, run, Cli, Report};
pub use workspace::{CliError, Settings, Workspace};

/// Parses arguments, loads the workspace and runs the command; returns the
/// output and the exit code.
pub fn main_with(cli: &Cli) -> (String, i32) {
    let name = cli.command_name();
    let report = match load(cli) {
        Ok(mut ws) => run(cli, &mut ws),
        Err(e) => run::error_report(&e),
    };
    (report.render(&name, cli.json), report.exit)
}
