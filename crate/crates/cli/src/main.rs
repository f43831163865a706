use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use isospec_lag::{run_file, CliError, Format, Kind, Overrides};

/// Runs one isospectral-dynamics scenario and writes its trajectory and invariant report.
#[derive(Debug, Parser)]
#[command(name = "isospec-lag", version)]
struct Args {
    /// heisenberg | lvn | sb2c | bloch | verify
    kind: String,

    /// Scenario document (JSON).
    #[arg(long)]
    config: PathBuf,

    /// Output directory; overrides the config.
    #[arg(long)]
    out: Option<PathBuf>,

    /// csv | json
    #[arg(long)]
    format: Option<String>,

    #[arg(long)]
    seed: Option<u64>,

    /// Tolerance override, repeatable.
    #[arg(long = "tolerance", value_name = "K=V")]
    tolerances: Vec<String>,
}

fn execute(args: Args) -> Result<i32, CliError> {
    let kind: Kind = args.kind.parse()?;
    let format = args.format.as_deref().map(str::parse::<Format>).transpose()?;
    let overrides = Overrides { out: args.out, format, seed: args.seed, tolerances: args.tolerances };
    let out = run_file(kind, &args.config, &overrides)?;
    print!("{}", out.report.summary());
    if let Some(s) = &out.report.singularity {
        println!("SINGULARITY {} t_lower={} t_upper={}", s.kind, s.t_lower, s.t_upper);
    }
    log::info!("report written to {}", out.report_path.display());
    Ok(out.exit_code())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("ISOSPEC_LOG", "warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            // --help and --version are not errors
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
