use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dercheck::{exit, parse_instance, render, run, Command, Format, Options, Routes};
use dercheck_core::Window;

/// Verify derived intersection, fixed-locus and orbifold Hochschild identities
/// on linear instances with exact arithmetic.
#[derive(Debug, Parser)]
#[command(name = "dercheck", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Instance file (TOML).
    instance: PathBuf,
    /// Internal-degree window; defaults to the instance's, else [-n-2, 6].
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    window: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value_t = Routes::All)]
    routes: Routes,
    /// Skip the brute-force oracle comparisons.
    #[arg(long)]
    no_oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = match execute(&args) {
        Ok(true) => exit::PASS,
        Ok(false) => exit::MISMATCH,
        Err(message) => {
            eprintln!("error: {message}");
            exit::INVALID
        }
    };
    ExitCode::from(code as u8)
}

fn execute(args: &Args) -> Result<bool, String> {
    let window = match args.window.as_deref() {
        Some(&[lo, hi]) => Some(Window::new(lo, hi).map_err(|e| e.to_string())?),
        _ => None,
    };
    let instance = parse_instance(&args.instance).map_err(|e| e.to_string())?;
    let options = Options { window, routes: args.routes, oracle: !args.no_oracle };
    let report = run(&instance, args.command, options).map_err(|e| e.to_string())?;
    let text = render(&report, args.format);
    match &args.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(report.passed())
}
