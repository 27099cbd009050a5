use std::io::{IsTerminal, Write};
use std::process::ExitCode;

use clap::Parser;
use slcgerm_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = stdout.write_all(outcome.json.as_bytes());
    let _ = stdout.flush();
    if cli.verbose {
        let stderr = std::io::stderr();
        let color = stderr.is_terminal() && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
        let line = match (color, outcome.exit_code) {
            (true, 0) => format!("\x1b[32m{}\x1b[0m", outcome.summary),
            (true, _) => format!("\x1b[31m{}\x1b[0m", outcome.summary),
            (false, _) => outcome.summary.clone(),
        };
        let _ = writeln!(stderr.lock(), "{line}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
