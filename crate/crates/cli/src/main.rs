//! Command-line front end: run registry experiments, list them, or run the
//! full acceptance suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 numeric failure (an acceptance
//! bound was violated in verify-all), 3 I/O error. Reports are byte-stable
//! across runs for identical parameters; wall time goes to stderr only.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use h2affine::experiments::{
    acceptance, list_experiments, parse_config, run_experiment, write_report, ConfigOverrides,
    ExperimentSpec, ReportFormat,
};
use h2affine::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERIC: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "h2affine",
    version,
    about = "Numerical workbench for the composition operator with affine symbol on the Hardy space",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one registry experiment and emit its report.
    Run {
        /// Experiment name (see `list`).
        name: String,
        /// Symbol parameter in (0, 1).
        #[arg(long)]
        a: Option<f64>,
        /// Truncation degree.
        #[arg(long = "N")]
        degree: Option<usize>,
        /// Orbit length / trial budget.
        #[arg(long)]
        m: Option<usize>,
        /// Rank / comparison tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Random seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv (default) or json.
        #[arg(long)]
        format: Option<String>,
        /// Flat key=value config file; command-line flags win.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print the experiment registry.
    List,
    /// Run the acceptance suite and write every experiment report.
    VerifyAll {
        /// Shrink trial budgets (tolerances stay pinned).
        #[arg(long)]
        quick: bool,
        /// Directory for the reports.
        #[arg(long, default_value = "reports")]
        out: PathBuf,
        /// csv (default) or json for the experiment reports.
        #[arg(long)]
        format: Option<String>,
        /// Flat key=value config file; command-line flags win.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version are not usage errors
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::List => {
            for info in list_experiments() {
                println!("{:<24} {:<16} {}", info.name, info.anchor, info.description);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Run { name, a, degree, m, tol, seed, out, format, config } => {
            let started = Instant::now();
            let file_config = load_config(config.as_deref())?;
            let cli_set = ConfigOverrides {
                a,
                degree,
                m,
                tol,
                seed,
                out: out.clone(),
                format: format.as_deref().map(str::parse).transpose()?,
            };
            let mut spec = ExperimentSpec::defaults(&name)?;
            file_config.apply_defaults_to(&mut spec, &cli_set);
            apply_cli(&mut spec, &cli_set);
            spec.validate()?;

            let report = run_experiment(&spec)?;
            let chosen_format = cli_set.format.or(file_config.format).unwrap_or(ReportFormat::Csv);
            let destination = cli_set.out.or(file_config.out);
            match &destination {
                Some(path) => {
                    write_report(&report, chosen_format, path)?;
                    eprintln!("wrote {} rows to {}", report.rows.len(), path.display());
                }
                None => {
                    let payload = match chosen_format {
                        ReportFormat::Csv => report.to_csv(),
                        ReportFormat::Json => report.to_json(),
                    };
                    print!("{payload}");
                }
            }
            eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyAll { quick, out, format, config } => {
            let started = Instant::now();
            let file_config = load_config(config.as_deref())?;
            let chosen_format = format
                .as_deref()
                .map(str::parse)
                .transpose()?
                .or(file_config.format)
                .unwrap_or(ReportFormat::Csv);

            std::fs::create_dir_all(&out).map_err(|source| Error::Io { path: out.clone(), source })?;

            let results = acceptance::run_all(quick);
            let mut summary = String::new();
            for result in &results {
                println!("{}", result.summary_line());
                summary.push_str(&result.summary_line());
                summary.push('\n');
                for detail in &result.details {
                    println!("        {detail}");
                    summary.push_str("        ");
                    summary.push_str(detail);
                    summary.push('\n');
                }
            }
            let summary_path = out.join("acceptance_summary.txt");
            std::fs::write(&summary_path, &summary)
                .map_err(|source| Error::Io { path: summary_path.clone(), source })?;

            for info in list_experiments() {
                let mut spec = ExperimentSpec::defaults(info.name)?;
                if quick {
                    spec.m = spec.m.min(10);
                }
                let report = run_experiment(&spec)?;
                let extension = match chosen_format {
                    ReportFormat::Csv => "csv",
                    ReportFormat::Json => "json",
                };
                let path = out.join(format!("{}.{extension}", info.name));
                write_report(&report, chosen_format, &path)?;
            }
            eprintln!("reports in {}", out.display());
            eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());

            if results.iter().all(|r| r.passed) {
                println!("acceptance: all {} criteria passed", results.len());
                Ok(ExitCode::SUCCESS)
            } else {
                let failed: Vec<String> =
                    results.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
                println!("acceptance: criteria {{{}}} FAILED", failed.join(", "));
                Ok(ExitCode::from(EXIT_NUMERIC))
            }
        }
    }
}

fn load_config(path: Option<&std::path::Path>) -> Result<ConfigOverrides, Error> {
    match path {
        None => Ok(ConfigOverrides::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
            parse_config(&text)
        }
    }
}

fn apply_cli(spec: &mut ExperimentSpec, cli: &ConfigOverrides) {
    if let Some(a) = cli.a {
        spec.a = a;
    }
    if let Some(degree) = cli.degree {
        spec.degree = degree;
    }
    if let Some(m) = cli.m {
        spec.m = m;
    }
    if let Some(tol) = cli.tol {
        spec.tol = tol;
    }
    if let Some(seed) = cli.seed {
        spec.seed = seed;
    }
}
