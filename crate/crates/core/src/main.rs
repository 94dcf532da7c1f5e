use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use conjstab::io::{run_text, Command, ErrorCode, IoError, Options};
use conjstab::linalg::Field;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
}

/// Classify matrix tuples under simultaneous conjugation.
#[derive(Parser, Debug)]
#[command(name = "conjstab", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Input JSON file; standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Weight bound for sampled cocharacters.
    #[arg(long, default_value_t = 2)]
    bound: i64,
    /// Seed for the randomized orbit-membership fallback.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Working field; inferred from the scalars when omitted.
    #[arg(long)]
    field: Option<Field>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn read_input(cli: &Cli) -> Result<String, IoError> {
    if cli.command == Command::Corpus {
        return Ok(String::new());
    }
    let mut text = String::new();
    let res = match &cli.input {
        Some(path) => std::fs::read_to_string(path).map(|t| text = t),
        None => std::io::stdin().read_to_string(&mut text).map(|_| ()),
    };
    res.map_err(|e| IoError::new(ErrorCode::MalformedJson, format!("cannot read input: {e}")))?;
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    let options = Options { bound: cli.bound, seed: cli.seed, field: cli.field };
    let (code, out) = match read_input(&cli) {
        Ok(text) => run_text(cli.command, &text, options),
        Err(e) => (e.code.exit_code(), e.to_json()),
    };
    print!("{out}");
    ExitCode::from(code as u8)
}
