use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use slideocam_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe (e.g. `| head`) only truncates the summary
            let _ = write!(stdout, "{}", outcome.summary).and_then(|_| {
                outcome
                    .written
                    .iter()
                    .try_for_each(|path| writeln!(stdout, "wrote {}", path.display()))
            });
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("slideocam {}: {err}", cli.command.name());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
