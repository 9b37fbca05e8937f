//! The `atam` command line: exact runs, simulation checks, table emission,
//! supertile lattice runs and SVG rendering.
//!
//! Exit codes are 0 for pass, 1 for a failed check, 2 for usage or parse
//! errors and 3 for exceeded budgets.

pub mod cli;
pub mod commands;
pub mod error;
pub mod render;

pub use cli::{Cli, Command, RunConfig};
pub use commands::{parse_dump, Status};
pub use error::CliError;
pub use render::{assembly_cells, lattice_cells, render_lattice, render_svg, Cell, CellState, Style};

use commands::{cmd_check_sim, cmd_iu_run, cmd_iu_tables, cmd_render, cmd_run};

/// Colors verdicts when `ATAM_COLOR` is `always`, `on` or `1`.
fn paint(text: &str, ok: bool) -> String {
    let on = std::env::var("ATAM_COLOR").is_ok_and(|v| matches!(v.as_str(), "always" | "on" | "1"));
    match (on, ok) {
        (false, _) => text.to_string(),
        (true, true) => format!("\x1b[32m{text}\x1b[0m"),
        (true, false) => format!("\x1b[31m{text}\x1b[0m"),
    }
}

pub fn execute(cli: &Cli) -> Result<Status, CliError> {
    match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::CheckSim(a) => {
            let (status, report) = cmd_check_sim(a)?;
            print!("{report}");
            let verdict = if status == Status::Pass { "pass" } else { "FAIL" };
            println!("verdict {}", paint(verdict, status == Status::Pass));
            Ok(status)
        }
        Command::IuTables(a) => cmd_iu_tables(a),
        Command::IuRun(a) => cmd_iu_run(a),
        Command::Render(a) => cmd_render(a),
    }
}
