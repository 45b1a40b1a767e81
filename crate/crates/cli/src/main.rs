use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tbb_cli::{parse_sections, solve_text, CliError, Format, RunRequest};
use tbb_core::{ChoiceFunction, Field};

#[derive(Parser)]
#[command(name = "tbb", version, about = "Border bases of Laurent polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a border basis for the system in FILE (one polynomial per line, `-` for stdin).
    Solve {
        /// `q` or `fp:<prime>`
        #[arg(long, default_value = "q")]
        field: String,
        /// `macaulay` or `lexmax`
        #[arg(long, default_value = "macaulay")]
        choice: String,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Comma-separated: basis, quotient, matrices, syzygies, trace
        #[arg(long, default_value = "basis")]
        emit: String,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Include every linear system solved along the way.
        #[arg(long)]
        dump_matrices: bool,
        /// Cross-check against the doubled-variable reference at this degree.
        #[arg(long, hide = true)]
        oracle: Option<u32>,
        file: PathBuf,
    },
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Ok(s)
}

fn main() -> ExitCode {
    let Command::Solve { field, choice, max_degree, emit, format, dump_matrices, oracle, file } = Cli::parse().command;
    let outcome = (|| {
        let req = RunRequest {
            field: field.parse::<Field>()?,
            choice: choice.parse::<ChoiceFunction>().map_err(CliError::Usage)?,
            max_degree,
            sections: parse_sections(&emit)?,
            format: match format {
                FormatArg::Text => Format::Text,
                FormatArg::Json => Format::Json,
            },
            dump_matrices,
            oracle,
        };
        let text = read_input(&file)?;
        let report = solve_text(&text, &req)?;
        print!("{}", report.render(req.format));
        Ok::<i32, CliError>(report.exit_code)
    })();
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("tbb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
