use anyhow::Context;
use clap::Parser;
use opuc_cli::{execute, Cli};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    let report = execute(cli)?;
    let text = report.render(cli.common.format)?;
    match &cli.common.out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    if report.exceeds(cli.common.tol) {
        eprintln!(
            "residual {:e} exceeds tolerance {:e}",
            report.max_residual().unwrap_or(f64::NAN),
            cli.common.tol
        );
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::from(0))
}
