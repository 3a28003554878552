use std::io::Write;

use clap::Parser;
use crepanto::{guards_env, render, run, Cli};

fn main() {
    let cli = Cli::parse();
    let guards = match guards_env::from_env() {
        Ok(g) => g,
        Err(m) => {
            eprintln!("usage error: {m}");
            std::process::exit(2);
        }
    };
    match run(&cli, &guards) {
        Ok(report) => {
            let text = if cli.json {
                render::json(&report) + "\n"
            } else {
                render::plain(&report)
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}
