use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use skeinfill::report::{report_csv, write_scan_csv};
use skeinfill::selftest::{run_all, Faults};
use skeinfill::{fill, scan, slopes_in_ranges, Error, ExteriorPresentation, FillOptions, Slope};

#[derive(Parser)]
#[command(name = "skeinfill", version, about = "Skein modules of Dehn fillings over localized Laurent rings")]
struct Cli {
    /// More log output (-v, -vv).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct RadiusArgs {
    /// First harvesting radius.
    #[arg(long, default_value_t = 1)]
    radius: i64,
    /// Last harvesting radius tried if the factors have not stabilized.
    #[arg(long, default_value_t = 6)]
    max_radius: i64,
    /// Harvest only translated annihilators and surgery relations (gives an upper bound).
    #[arg(long)]
    no_slides: bool,
}

impl RadiusArgs {
    fn options(&self) -> FillOptions {
        FillOptions {
            initial_radius: self.radius,
            max_radius: self.max_radius,
            slides: !self.no_slides,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the module structure of one filling.
    Fill {
        #[arg(long)]
        input: PathBuf,
        /// Filling slope `p/q`.
        #[arg(long)]
        slope: String,
        #[command(flatten)]
        radii: RadiusArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tabulate fillings over inclusive ranges of `p` and `q`.
    Scan {
        #[arg(long)]
        input: PathBuf,
        /// `a..b`, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        p_range: String,
        /// `c..d`, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        q_range: String,
        #[command(flatten)]
        radii: RadiusArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run the verification suites.
    Selftest {
        /// Print the suite results as JSON.
        #[arg(long)]
        json: bool,
    },
}

const EXIT_INTERNAL: u8 = 1;
const EXIT_INADMISSIBLE: u8 = 2;
const EXIT_INVALID: u8 = 3;

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::InadmissibleSlope { .. }) => EXIT_INADMISSIBLE,
        Some(Error::Internal(_)) | None => EXIT_INTERNAL,
        Some(_) => EXIT_INVALID,
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::Parse(format!("range must look like a..b, got {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn load(path: &Path) -> Result<ExteriorPresentation, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    ExteriorPresentation::from_json_str(&text)
}

fn output(out: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Fill {
            input,
            slope,
            radii,
            out,
            format,
        } => {
            let pres = load(&input)?;
            let slope: Slope = slope.parse()?;
            let report = fill(&pres, slope, radii.options())?;
            let text = match format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report_csv(&report)?,
            };
            let mut w = output(&out)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
            Ok(true)
        }
        Command::Scan {
            input,
            p_range,
            q_range,
            radii,
            out,
            format,
        } => {
            let pres = load(&input)?;
            let slopes = slopes_in_ranges(parse_range(&p_range)?, parse_range(&q_range)?);
            let rows = scan(&pres, &slopes, radii.options())?;
            let mut w = output(&out)?;
            match format {
                Format::Csv => write_scan_csv(&rows, &mut w)?,
                Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&rows)?)?,
            }
            w.flush()?;
            Ok(true)
        }
        Command::Selftest { json } => {
            let results = run_all(Faults::default());
            if json {
                println!("{}", serde_json::to_string_pretty(&results)?);
            } else {
                for r in &results {
                    let verdict = if r.passed() { "PASS" } else { "FAIL" };
                    println!("{verdict} {:<16} {:>5} cases {:>7} ms", r.name, r.cases, r.millis);
                    if let Some(f) = &r.first_failure {
                        println!("     first failure: {f}");
                    }
                }
            }
            Ok(results.iter().all(|r| r.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_INTERNAL),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
