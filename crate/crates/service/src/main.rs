use std::process::ExitCode;

use clap::Parser;
use healthlens_service::cli::{resolve_config, run, serve, Cli, Command};

fn main() -> ExitCode {
    tracing_subscriber::fmt().with_env_filter(tracing_subscriber::EnvFilter::from_default_env()).with_writer(std::io::stderr).init();
    let cli = Cli::parse();
    let result = resolve_config(&cli, std::env::vars()).and_then(|config| match cli.command {
        Command::Serve { .. } => tokio::runtime::Runtime::new()?.block_on(serve(config)),
        _ => run(&cli, &config, &mut std::io::stdout().lock()),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
