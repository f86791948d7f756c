use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cshom_cli::commands::{load_workspace, run};
use cshom_cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_workspace(&cli).and_then(|ws| run(&cli, &ws));
    let mut out = std::io::stdout().lock();
    match result {
        Ok(o) => {
            let body = if cli.json { o.json.to_string() } else { o.text };
            let _ = writeln!(out, "{body}");
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::json!({ "schema_version": "1", "error": format!("{e:#}") })
                );
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
