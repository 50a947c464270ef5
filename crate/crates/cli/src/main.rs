use std::path::PathBuf;
use std::process::ExitCode;

use casimir_cli::{parse_config, run_experiment, Experiment, OutputFormat, RunError};
use clap::Parser;

/// Exact experiments on central operators of evaluation modules.
#[derive(Debug, Parser)]
#[command(name = "casimir-lab", version)]
struct Cli {
    #[arg(value_enum)]
    experiment: Experiment,
    /// Experiment configuration (`key = value` lines).
    #[arg(long)]
    config: PathBuf,
    /// Overrides the `format` key of the config; defaults to json.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: &Cli) -> Result<i32, RunError> {
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|e| RunError::Usage(format!("cannot read {}: {e}", cli.config.display())))?;
    let cfg = parse_config(&text)?;
    let report = run_experiment(cli.experiment, &cfg)?;
    let format = cli.format.or(cfg.format).unwrap_or(OutputFormat::Json);
    let rendered = report.render(format);
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| RunError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("casimir-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
