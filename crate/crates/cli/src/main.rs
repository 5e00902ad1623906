use std::path::PathBuf;
use std::process::ExitCode;

use bohrnet_cli::{run_check, run_explain, run_ks, CheckOptions, CliError, KsOptions, Outcome};
use clap::{Args, Parser, Subcommand};

/// Exact checks of locality and descent for finite-dimensional nets of
/// observables. Every flag can also be set through a `BOHR_` environment
/// variable.
#[derive(Parser)]
#[command(name = "bohrnet", version)]
struct Cli {
    /// Worker threads for the parallel checkers (0 = all cores)
    #[arg(long, global = true, env = "BOHR_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct NetFlags {
    /// Disable the trivial context span{I} in every context poset
    #[arg(long, env = "BOHR_NO_TRIVIAL_CONTEXT")]
    no_trivial_context: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every axiom checker and the descent theorem on a net spec
    Check {
        spec: PathBuf,
        #[arg(long, env = "BOHR_COVER_CAP")]
        cover_cap: Option<usize>,
        #[command(flatten)]
        net: NetFlags,
        /// Write the JSON report here
        #[arg(long, env = "BOHR_JSON_OUT")]
        json_out: Option<PathBuf>,
    },
    /// Count global sections of a projection family's spectral presheaf
    Ks {
        dataset: PathBuf,
        #[arg(long, env = "BOHR_SECTION_CAP")]
        section_cap: Option<u64>,
        #[arg(long, env = "BOHR_JSON_OUT")]
        json_out: Option<PathBuf>,
    },
    /// Print the posets and the f, L and adjunction tables for one cover
    Explain {
        spec: PathBuf,
        /// Two slice opens separated by ';', e.g. "0-1;2" or "0,2;1"
        cover: String,
        #[command(flatten)]
        net: NetFlags,
    },
}

fn emit(outcome: Outcome, json_out: Option<PathBuf>) -> Result<i32, CliError> {
    print!("{}", outcome.summary);
    if let Some(path) = json_out {
        let mut text = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
        text.push('\n');
        std::fs::write(&path, text)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    }
    Ok(outcome.exit_code)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Check { spec, cover_cap, net, json_out } => {
            let opts = CheckOptions { cover_cap, no_trivial_context: net.no_trivial_context };
            emit(run_check(&spec, &opts)?, json_out)
        }
        Command::Ks { dataset, section_cap, json_out } => emit(run_ks(&dataset, &KsOptions { section_cap })?, json_out),
        Command::Explain { spec, cover, net } => {
            let opts = CheckOptions { cover_cap: None, no_trivial_context: net.no_trivial_context };
            print!("{}", run_explain(&spec, &cover, &opts)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global().expect("thread pool is built once");
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
