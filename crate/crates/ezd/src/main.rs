use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ezd::{execute, Command, JobError, Options, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "ezd", version, about = "Eisenbud operators over rings with exact zero divisors")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Job file (JSON)
    #[arg(long, global = true)]
    input: Option<String>,
    /// Degree cap for resolutions [default: 8]
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Seed for choices of representatives [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Comma-separated task ids to run
    #[arg(long, global = true, value_delimiter = ',')]
    tasks: Option<Vec<String>>,
}

#[derive(Subcommand, Clone, Copy)]
enum Sub {
    /// Exact pair, short-ring and Conca checks on the ring
    CheckEzd,
    /// Full construction and every identity for each task
    Verify,
    /// Poincaré and Hilbert series with the coefficientwise inequalities
    Series,
    /// Tor dimensions over Q and over R
    Tor,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Machine,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd = match cli.command {
        Sub::CheckEzd => Command::CheckEzd,
        Sub::Verify => Command::Verify,
        Sub::Series => Command::Series,
        Sub::Tor => Command::Tor,
    };
    let Some(path) = cli.input else {
        eprintln!("error: --input FILE is required");
        return ExitCode::from(EXIT_INPUT as u8);
    };
    let opts = Options { cap: cli.cap, seed: cli.seed, tasks: cli.tasks };
    let result = std::fs::read_to_string(&path)
        .map_err(|source| JobError::Io { path: path.clone(), source })
        .and_then(|text| execute(cmd, &text, &opts));
    match result {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Machine => print!("{}", report.to_machine()),
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            if cli.format == Format::Machine {
                let v = serde_json::json!({ "status": "input-error", "exit_code": EXIT_INPUT, "error": e.to_string() });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            eprintln!("error: {}", e);
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
