//! Command-line front end.
//!
//! Reports go to standard output as JSON (compact by default, indented with
//! `--output pretty`); human diagnostics go to standard error. Exit codes:
//! 0 when the checked property holds (or the command simply succeeded),
//! 1 when a checked property is violated or a measurement hit a
//! zero-probability branch, 2 on input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use desargues_core::boolean::{
    self, antecedent, antecedent_circuit, consequent, consequent_circuit, derive, subset_labels,
    BooleanConfig,
};
use desargues_core::desargues::{
    desargues_check, generate_desarguesian, generate_generic, ConfigReportDoc,
    DesarguesConfigFile, GenerateError,
};
use desargues_core::lattice::ProjectorReport;
use desargues_core::measure::{
    protocol_projectors, run_experiment_pair, ExperimentError, ExperimentPairDoc, MeasureError,
    StateFile,
};
use desargues_core::worked_example;
use desargues_core::{tolerances, GroundSet};

#[derive(Parser)]
#[command(
    name = "desargues",
    version,
    about = "Desargues configurations in Boolean algebra and in subspace lattices"
)]
struct Cli {
    /// Report format on standard output.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Json)]
    output: OutputMode,

    /// Print the table of tolerance constants and exit.
    #[arg(long, global = true)]
    tolerances: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Check the one-way implication on a Boolean configuration file.
    BooleanCheck { config: PathBuf },
    /// Exhaustively verify the implication over a ground set of size n (n <= 4).
    BooleanScan {
        n: usize,
        /// Number of worker threads for the enumeration.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Check concurrency, collinearity and the absorption identities on a
    /// configuration file.
    DesarguesCheck { config: PathBuf },
    /// Write a deterministic generated configuration to a file.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run both two-stage measurement experiments on a configuration and a
    /// state.
    Experiment {
        config: PathBuf,
        state: PathBuf,
    },
    /// Re-run the bundled worked example and diff every derived quantity
    /// against its reference value.
    PaperExample,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Kind {
    Desarguesian,
    Generic,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn violated(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

fn render<T: Serialize>(mode: OutputMode, value: &T) -> String {
    match mode {
        OutputMode::Json => serde_json::to_string(value).expect("report is serializable"),
        OutputMode::Pretty => {
            serde_json::to_string_pretty(value).expect("report is serializable")
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{} {} is malformed: {e}", what, path.display())))
}

#[derive(Serialize)]
struct ErrorReport {
    error: String,
}

#[derive(Serialize)]
struct TolerancesReport {
    tolerances: Vec<tolerances::ToleranceEntry>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = cli.output;

    if cli.tolerances {
        println!(
            "{}",
            render(
                mode,
                &TolerancesReport {
                    tolerances: tolerances::table(),
                },
            )
        );
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: expected a subcommand or --tolerances (see --help)");
        println!(
            "{}",
            render(
                mode,
                &ErrorReport {
                    error: "missing subcommand".to_string(),
                },
            )
        );
        return ExitCode::from(2);
    };

    match dispatch(command, mode) {
        Ok((code, report)) => {
            println!("{report}");
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            println!(
                "{}",
                render(
                    mode,
                    &ErrorReport {
                        error: failure.message,
                    },
                )
            );
            ExitCode::from(failure.code)
        }
    }
}

fn dispatch(command: Command, mode: OutputMode) -> Result<(u8, String), Failure> {
    match command {
        Command::BooleanCheck { config } => cmd_boolean_check(&config, mode),
        Command::BooleanScan { n, parallel } => cmd_boolean_scan(n, parallel, mode),
        Command::DesarguesCheck { config } => cmd_desargues_check(&config, mode),
        Command::Generate {
            kind,
            seed,
            dim,
            out,
        } => cmd_generate(kind, seed, dim, &out, mode),
        Command::Experiment { config, state } => cmd_experiment(&config, &state, mode),
        Command::PaperExample => cmd_paper_example(mode),
    }
}

#[derive(Serialize)]
struct BooleanCheckReport {
    ground: Vec<String>,
    #[serde(rename = "C1")]
    c1: Vec<String>,
    #[serde(rename = "C2")]
    c2: Vec<String>,
    #[serde(rename = "C3")]
    c3: Vec<String>,
    #[serde(rename = "frakB1")]
    frak_b1: Vec<String>,
    #[serde(rename = "frakB2")]
    frak_b2: Vec<String>,
    #[serde(rename = "frakB3")]
    frak_b3: Vec<String>,
    antecedent: bool,
    consequent: bool,
    /// `antecedent ⟹ consequent`; false would falsify the implication.
    implication_ok: bool,
    antecedent_circuit_output: Vec<String>,
    consequent_circuit_output: Vec<String>,
    antecedent_circuit_is_c3: bool,
    consequent_circuit_is_frak_b3: bool,
}

fn cmd_boolean_check(path: &Path, mode: OutputMode) -> Result<(u8, String), Failure> {
    let config: BooleanConfig = read_json(path, "configuration")?;
    let (input, labels) = config
        .to_input()
        .map_err(|e| Failure::input(e.to_string()))?;
    let d = derive(&input);
    let ante = antecedent(&d);
    let cons = consequent(&d);
    let circuit1 = antecedent_circuit(&input);
    let circuit2 = consequent_circuit(&input);
    let report = BooleanCheckReport {
        ground: labels.clone(),
        c1: subset_labels(&d.c(0), &labels),
        c2: subset_labels(&d.c(1), &labels),
        c3: subset_labels(&d.c(2), &labels),
        frak_b1: subset_labels(&d.frak_b(0), &labels),
        frak_b2: subset_labels(&d.frak_b(1), &labels),
        frak_b3: subset_labels(&d.frak_b(2), &labels),
        antecedent: ante,
        consequent: cons,
        implication_ok: !ante || cons,
        antecedent_circuit_output: subset_labels(&circuit1, &labels),
        consequent_circuit_output: subset_labels(&circuit2, &labels),
        antecedent_circuit_is_c3: circuit1 == d.c(2),
        consequent_circuit_is_frak_b3: circuit2 == d.frak_b(2),
    };
    let code = if report.implication_ok { 0 } else { 1 };
    Ok((code, render(mode, &report)))
}

fn cmd_boolean_scan(n: usize, parallel: usize, mode: OutputMode) -> Result<(u8, String), Failure> {
    let ground = GroundSet::new(n).map_err(|e| Failure::input(e.to_string()))?;
    let report = boolean::exhaustive_scan_parallel(ground, parallel.max(1))
        .map_err(|e| Failure::input(e.to_string()))?;
    let code = if report.violations == 0 { 0 } else { 1 };
    if code == 1 {
        eprintln!(
            "error: {} implication violations found; the implementation is broken",
            report.violations
        );
    }
    Ok((code, render(mode, &report)))
}

fn cmd_desargues_check(path: &Path, mode: OutputMode) -> Result<(u8, String), Failure> {
    let file: DesarguesConfigFile = read_json(path, "configuration")?;
    let config = file.to_config().map_err(|e| Failure::input(e.to_string()))?;
    let report = desargues_check(&config).map_err(|e| Failure::input(e.to_string()))?;
    let code = if report.equivalence_ok { 0 } else { 1 };
    Ok((code, render(mode, &ConfigReportDoc::new(&report))))
}

#[derive(Serialize)]
struct GenerateReport {
    kind: String,
    seed: u64,
    dim: usize,
    path: String,
    config: DesarguesConfigFile,
}

fn cmd_generate(
    kind: Kind,
    seed: u64,
    dim: usize,
    out: &Path,
    mode: OutputMode,
) -> Result<(u8, String), Failure> {
    let config = match kind {
        Kind::Desarguesian => generate_desarguesian(seed, dim),
        Kind::Generic => generate_generic(seed, dim),
    }
    .map_err(|e| match e {
        GenerateError::DimensionTooSmall { .. } => Failure::input(e.to_string()),
        GenerateError::AttemptsExhausted { .. } => Failure::input(e.to_string()),
    })?;
    let file = DesarguesConfigFile::from_config(&config);
    let text = serde_json::to_string_pretty(&file).expect("config is serializable");
    fs::write(out, format!("{text}\n"))
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", out.display())))?;
    let report = GenerateReport {
        kind: match kind {
            Kind::Desarguesian => "desarguesian".to_string(),
            Kind::Generic => "generic".to_string(),
        },
        seed,
        dim,
        path: out.display().to_string(),
        config: file,
    };
    Ok((0, render(mode, &report)))
}

fn cmd_experiment(
    config_path: &Path,
    state_path: &Path,
    mode: OutputMode,
) -> Result<(u8, String), Failure> {
    let file: DesarguesConfigFile = read_json(config_path, "configuration")?;
    let config = file.to_config().map_err(|e| Failure::input(e.to_string()))?;
    let state_file: StateFile = read_json(state_path, "state")?;
    let state = state_file
        .to_state()
        .map_err(|e| Failure::input(e.to_string()))?;
    if state.dim() != config.ambient_dim() {
        return Err(Failure::input(format!(
            "state dimension {} does not match configuration dimension {}",
            state.dim(),
            config.ambient_dim()
        )));
    }
    let pair = run_experiment_pair(&config, &state).map_err(|e| match e {
        ExperimentError::Measure(MeasureError::ZeroProbability { .. }) => {
            Failure::violated(e.to_string())
        }
        other => Failure::input(other.to_string()),
    })?;
    Ok((0, render(mode, &ExperimentPairDoc::new(&pair))))
}

#[derive(Serialize)]
struct LabeledProjector {
    label: String,
    #[serde(flatten)]
    report: ProjectorReport,
}

#[derive(Serialize)]
struct PaperExampleReport {
    checks: Vec<worked_example::Check>,
    all_pass: bool,
    /// The four protocol projectors, exact entries plus the four-decimal
    /// rendering.
    projectors: Vec<LabeledProjector>,
}

fn cmd_paper_example(mode: OutputMode) -> Result<(u8, String), Failure> {
    let checks = worked_example::run_reference_checks();
    let all_pass = checks.iter().all(|c| c.pass);
    let projectors = protocol_projectors(&worked_example::config())
        .expect("the bundled example is non-degenerate")
        .into_iter()
        .map(|(label, p)| LabeledProjector {
            label: label.to_string(),
            report: ProjectorReport::new(&p),
        })
        .collect();
    for check in &checks {
        eprintln!(
            "{} {} ({})",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
    }
    let report = PaperExampleReport {
        checks,
        all_pass,
        projectors,
    };
    Ok((u8::from(!all_pass), render(mode, &report)))
}
