use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use premetric::chains::integrate;
use premetric::polyform::{exterior_derivative, wedge_form};
use premetric::rational::format_rational;
use premetric::scenario::{
    emit, emit_batch, expand_report, form_to_json, parse_chain, parse_fields, parse_form, parse_json, parse_scenario,
    run_batch, run_with_seed, ErrorCode, Format, Kind, ScenarioError, ScenarioFile,
};

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "premetric", version, about = "Exact exterior calculus, Stokes checks and p-form electrodynamics")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Replace the seed of every scenario.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exterior derivative of a form.
    D { form: PathBuf },
    /// Wedge product of two forms.
    Wedge { a: PathBuf, b: PathBuf },
    /// Integral of a form over a chain.
    Integrate { form: PathBuf, chain: PathBuf },
    /// Run scenario files; directories contribute their `*.json` files in name order.
    Verify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Electrodynamics helpers.
    Em {
        #[command(subcommand)]
        command: EmCommand,
    },
}

#[derive(Subcommand)]
enum EmCommand {
    /// Expand Maxwell's equations for a classical field record.
    Expand { fields: PathBuf },
    /// Run a pform-em scenario.
    Pform { scenario: PathBuf },
}

fn read(path: &Path) -> Result<String, ScenarioError> {
    std::fs::read_to_string(path)
        .map_err(|e| ScenarioError::new(ErrorCode::Io, path.display().to_string(), e.to_string()))
}

fn with_file(path: &Path, mut e: ScenarioError) -> ScenarioError {
    e.message = format!("{}: {}", path.display(), e.message);
    e
}

fn load<T>(path: &Path, parse: impl Fn(&serde_json::Value) -> Result<T, ScenarioError>) -> Result<T, ScenarioError> {
    let text = read(path)?;
    parse_json(&text).and_then(|v| parse(&v)).map_err(|e| with_file(path, e))
}

fn load_scenario(path: &Path) -> Result<ScenarioFile, ScenarioError> {
    parse_scenario(&read(path)?).map_err(|e| with_file(path, e))
}

fn scenario_paths(paths: &[PathBuf]) -> Result<Vec<PathBuf>, ScenarioError> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let entries = std::fs::read_dir(p)
                .map_err(|e| ScenarioError::new(ErrorCode::Io, p.display().to_string(), e.to_string()))?;
            let mut files: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.is_file() && f.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn print_value(value: &serde_json::Value, text: String, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => println!("{text}"),
    }
}

fn execute(cli: &Cli) -> Result<u8, ScenarioError> {
    let format: Format = cli.format.into();
    match &cli.command {
        Command::D { form } => {
            let d = exterior_derivative(&load(form, parse_form)?);
            print_value(&form_to_json(&d), d.to_string(), format);
            Ok(0)
        }
        Command::Wedge { a, b } => {
            let (a, b) = (load(a, parse_form)?, load(b, parse_form)?);
            let w = wedge_form(&a, &b)
                .map_err(|e| ScenarioError::new(ErrorCode::DimensionMismatch, "", e.to_string()))?;
            print_value(&form_to_json(&w), w.to_string(), format);
            Ok(0)
        }
        Command::Integrate { form, chain } => {
            let (f, c) = (load(form, parse_form)?, load(chain, parse_chain)?);
            let value = integrate(&f, &c).map_err(|e| {
                let code = match e {
                    premetric::Error::DimensionMismatch { .. } => ErrorCode::DimensionMismatch,
                    _ => ErrorCode::DegreeMismatch,
                };
                ScenarioError::new(code, "", e.to_string())
            })?;
            let value = format_rational(&value);
            print_value(&json!({ "integral": value }), value.clone(), format);
            Ok(0)
        }
        Command::Verify { paths } => {
            let scenarios = scenario_paths(paths)?.iter().map(|p| load_scenario(p)).collect::<Result<Vec<_>, _>>()?;
            let reports = run_batch(&scenarios, cli.seed);
            print!("{}", emit_batch(&reports, format));
            Ok(if reports.iter().all(|r| r.passed()) { 0 } else { EXIT_FAIL })
        }
        Command::Em { command: EmCommand::Expand { fields } } => {
            let record = load(fields, parse_fields)?;
            let id = fields.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let report = expand_report(&id, record);
            print!("{}", emit(&report, format));
            Ok(if report.passed() { 0 } else { EXIT_FAIL })
        }
        Command::Em { command: EmCommand::Pform { scenario } } => {
            let s = load_scenario(scenario)?;
            if s.kind() != Kind::PFormEm {
                return Err(ScenarioError::new(
                    ErrorCode::UnknownKind,
                    "kind",
                    format!("{}: expected a pform-em scenario, found {}", scenario.display(), s.kind().as_str()),
                ));
            }
            let report = run_with_seed(&s, cli.seed);
            print!("{}", emit(&report, format));
            Ok(if report.passed() { 0 } else { EXIT_FAIL })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            match cli.format {
                OutputFormat::Json => eprintln!("{}", serde_json::to_string(&json!({ "error": e })).expect("serializable")),
                OutputFormat::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(EXIT_INVALID)
        }
    }
}
