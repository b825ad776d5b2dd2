//! Command-line front end: locate facilities, analyze mechanisms, verify the
//! characterizations by grid search, and print compatibility tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation
//! error.

mod examples;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use fairloc::files;
use fairloc::model::{cost, utility, Preset};
use fairloc::verify::{
    analyze, compatibility_matrix, cross_validate, CrossMismatch, CrossValidation, GridSpec,
    PropertyReport, WitnessRecord, MATRIX_COLUMNS, MATRIX_ROWS,
};
use fairloc::{Mechanism, OwaWeights, Profile, Property};

use output::{emit, num, table};

#[derive(Parser)]
#[command(
    name = "fairloc",
    version,
    about = "Facility location mechanisms on the unit interval: outcomes, incentive and fairness analysis, grid verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a mechanism on a profile; prints the outcome and per-agent costs
    Locate(LocateArgs),
    /// Decide every property of a mechanism, with witnesses for failures
    Analyze(AnalyzeArgs),
    /// Cross-validate the analytic predicates against grid sweeps
    Verify(VerifyArgs),
    /// Print the incentive-by-fairness compatibility matrix
    Table(TableArgs),
    /// Replay a built-in worked example with all intermediate quantities
    Example(ExampleArgs),
}

#[derive(Args)]
struct MechanismSource {
    /// Preset mechanism: median, center, standard_average, olympic_average,
    /// order_statistic(J), uniform_phantom
    #[arg(long, value_name = "NAME", group = "mechanism")]
    preset: Option<String>,
    /// Agent count (required with --preset)
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    /// OWA weight file: {"n": N, "weights": [...]}
    #[arg(long, value_name = "FILE", group = "mechanism")]
    weights: Option<PathBuf>,
    /// Phantom parameter file: {"n": N, "betas": [...]}
    #[arg(long, value_name = "FILE", group = "mechanism")]
    betas: Option<PathBuf>,
}

impl MechanismSource {
    fn build(&self) -> Result<Mechanism, CliError> {
        if let Some(name) = &self.preset {
            let preset: Preset = name.parse()?;
            let n = self.n.ok_or_else(|| {
                CliError::Usage("--preset requires --n to set the agent count".to_string())
            })?;
            return Ok(Mechanism::preset(preset, n)?);
        }
        if let Some(path) = &self.weights {
            return Ok(Mechanism::from_owa(files::load_weights(path)?));
        }
        if let Some(path) = &self.betas {
            return Ok(Mechanism::from_agmvs(files::load_betas(path)?));
        }
        Err(CliError::Usage(
            "one of --preset, --weights or --betas is required".to_string(),
        ))
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this path instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mechanism").required(true)))]
struct LocateArgs {
    #[command(flatten)]
    mechanism: MechanismSource,
    /// Profile file: {"locations": [...]}
    #[arg(long, value_name = "FILE")]
    profile: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mechanism").required(true)))]
struct AnalyzeArgs {
    #[command(flatten)]
    mechanism: MechanismSource,
    /// Location and misreport grid step denominator
    #[arg(long = "grid-k", value_name = "K", default_value_t = 10)]
    grid_k: u32,
    /// Cap on mechanism evaluations per sweep
    #[arg(long, value_name = "B", default_value_t = GridSpec::DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Agent count
    #[arg(long, value_name = "N", default_value_t = 3)]
    n: usize,
    /// Location and misreport grid step denominator
    #[arg(long = "grid-k", value_name = "K", default_value_t = 10)]
    grid_k: u32,
    /// Weight simplex step denominator
    #[arg(long = "grid-m", value_name = "M", default_value_t = 4)]
    grid_m: u32,
    /// Cap on mechanism evaluations per sweep
    #[arg(long, value_name = "B", default_value_t = GridSpec::DEFAULT_BUDGET)]
    budget: u64,
    /// Test fixture: inject a synthetic mismatch to exercise the failure path
    #[arg(long, hide = true)]
    inject_mismatch: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Agent count (at least 3)
    #[arg(long, value_name = "N")]
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ExampleArgs {
    /// Which worked example to replay
    #[arg(value_enum)]
    name: ExampleName,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    /// Five agents; a deviation that wins on average but not in the worst case
    Example1,
    /// A profitable deviation against the center mechanism
    Fig2,
    /// Worst-case outcomes for truth and misreport with a fractional bottom weight
    Fig3,
    /// One agent against four: median, center and standard average compared
    Fig5,
}

enum CliError {
    Usage(String),
    Verification(String),
}

impl From<fairloc::Error> for CliError {
    fn from(err: fairloc::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification(message)) => {
            eprintln!("verification failed: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Locate(args) => cmd_locate(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
        Command::Example(args) => cmd_example(args),
    }
}

fn reject_csv(format: Format, what: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(format!("{what} has no CSV form")));
    }
    Ok(())
}

// ---- locate -----------------------------------------------------------

#[derive(serde::Serialize)]
struct LocateOutput {
    mechanism: Mechanism,
    outcome: f64,
    agents: Vec<AgentOutcome>,
}

#[derive(serde::Serialize)]
struct AgentOutcome {
    agent: usize,
    location: f64,
    cost: f64,
    utility: f64,
}

fn cmd_locate(args: LocateArgs) -> Result<(), CliError> {
    reject_csv(args.output.format, "locate output")?;
    let mech = args.mechanism.build()?;
    let profile: Profile = files::load_profile(&args.profile)?;
    let outcome = mech.locate(&profile)?;
    let report = LocateOutput {
        outcome: outcome.value(),
        agents: profile
            .locations()
            .iter()
            .enumerate()
            .map(|(i, &peak)| AgentOutcome {
                agent: i + 1,
                location: peak.value(),
                cost: cost(peak, outcome),
                utility: utility(peak, outcome),
            })
            .collect(),
        mechanism: mech,
    };
    let rendered = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        _ => {
            let mut rows = vec![vec![
                "agent".to_string(),
                "location".to_string(),
                "cost".to_string(),
                "utility".to_string(),
            ]];
            rows.extend(report.agents.iter().map(|a| {
                vec![
                    a.agent.to_string(),
                    num(a.location),
                    num(a.cost),
                    num(a.utility),
                ]
            }));
            format!(
                "mechanism: {} ({}, n = {})\noutcome: {}\n{}",
                report.mechanism.label().unwrap_or("custom"),
                report.mechanism.family(),
                report.mechanism.n(),
                num(report.outcome),
                table(&rows),
            )
        }
    };
    emit(&args.output.out, &rendered)?;
    Ok(())
}

// ---- analyze ----------------------------------------------------------

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    reject_csv(args.output.format, "analyze output")?;
    let mech = args.mechanism.build()?;
    let spec = GridSpec::new(mech.n(), args.grid_k, 2)?.with_budget(args.budget);
    let report = analyze(&mech, &spec)?;
    let rendered = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        _ => render_report_text(&report),
    };
    emit(&args.output.out, &rendered)?;
    Ok(())
}

fn describe_witness(witness: &WitnessRecord) -> String {
    match witness {
        WitnessRecord::Manipulation(w) => format!(
            "agent {} reports {} instead of {}, outcome {} -> {}, gain {}",
            w.agent,
            num(w.misreport.value()),
            num(w.truth.value()),
            num(w.truthful_outcome.value()),
            num(w.manipulated_outcome.value()),
            num(w.gain),
        ),
        WitnessRecord::Fairness(v) => {
            let locations = v
                .profile
                .locations()
                .iter()
                .map(|l| num(l.value()))
                .collect::<Vec<_>>()
                .join(", ");
            match &v.verdict.witness {
                Some(w) => format!(
                    "profile ({locations}) -> {}, coalition {{{}}}, slack {}",
                    num(v.outcome.value()),
                    w.coalition
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                    num(w.slack),
                ),
                None => format!("profile ({locations}) -> {}", num(v.outcome.value())),
            }
        }
    }
}

fn render_report_text(report: &PropertyReport) -> String {
    let mut rows = vec![vec![
        "property".to_string(),
        "analytic".to_string(),
        "grid".to_string(),
        "witness".to_string(),
    ]];
    for record in &report.records {
        rows.push(vec![
            record.property.to_string(),
            match record.analytic {
                Some(true) => "pass".to_string(),
                Some(false) => "fail".to_string(),
                None => "-".to_string(),
            },
            if record.empirical { "pass" } else { "fail" }.to_string(),
            record
                .witness
                .as_ref()
                .map(describe_witness)
                .unwrap_or_else(|| "-".to_string()),
        ]);
    }
    format!(
        "mechanism: {} ({}, n = {})\ngrid: location step 1/{}\n\n{}",
        report.mechanism.label().unwrap_or("custom"),
        report.mechanism.family(),
        report.mechanism.n(),
        report.grid.k(),
        table(&rows),
    )
}

// ---- verify -----------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    reject_csv(args.output.format, "verify output")?;
    let spec = GridSpec::new(args.n, args.grid_k, args.grid_m)?.with_budget(args.budget);
    let mut report = cross_validate(&spec)?;
    if args.inject_mismatch {
        report.mismatches.push(CrossMismatch {
            weights: OwaWeights::standard_average(args.n)?,
            property: Property::Sp,
            analytic: true,
            empirical: false,
            witness: None,
        });
    }
    let rendered = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        _ => render_verify_text(&report),
    };
    emit(&args.output.out, &rendered)?;
    if report.is_clean() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} analytic/empirical mismatch(es) at n = {}, k = {}, m = {}",
            report.mismatches.len(),
            args.n,
            args.grid_k,
            args.grid_m,
        )))
    }
}

fn render_verify_text(report: &CrossValidation) -> String {
    let mut out = format!(
        "cross-validation: n = {}, location step 1/{}, weight step 1/{}\n\
         weight vectors: {}, comparisons: {}, mismatches: {}\n",
        report.grid.n(),
        report.grid.k(),
        report.grid.m(),
        report.weight_vectors,
        report.comparisons,
        report.mismatches.len(),
    );
    for mismatch in &report.mismatches {
        out.push_str(&format!(
            "  {}: analytic {} vs grid {} at weights ({})\n",
            mismatch.property,
            mismatch.analytic,
            mismatch.empirical,
            mismatch
                .weights
                .weights()
                .iter()
                .map(|&v| num(v))
                .collect::<Vec<_>>()
                .join(", "),
        ));
    }
    out.push_str(if report.is_clean() {
        "result: PASS\n"
    } else {
        "result: FAIL\n"
    });
    out
}

// ---- table ------------------------------------------------------------

fn cmd_table(args: TableArgs) -> Result<(), CliError> {
    let matrix = compatibility_matrix(args.n)?;
    let rendered = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&matrix)? + "\n",
        Format::Csv => matrix.to_csv(),
        Format::Text => {
            let mut rows = vec![std::iter::once(String::new())
                .chain(MATRIX_COLUMNS.iter().map(|c| c.to_string()))
                .collect::<Vec<_>>()];
            for row in MATRIX_ROWS {
                let mut cells = vec![row.to_string()];
                for col in MATRIX_COLUMNS {
                    let cell = matrix.cell(row, col).expect("matrix is complete");
                    cells.push(if cell.compatible { "\u{2713}" } else { "\u{2717}" }.to_string());
                }
                rows.push(cells);
            }
            let mut out = format!(
                "compatibility of incentive and fairness properties, n = {}\n\n{}",
                matrix.n,
                table(&rows),
            );
            out.push_str("\nwitnesses:\n");
            for cell in &matrix.cells {
                if let Some(w) = &cell.witness {
                    out.push_str(&format!(
                        "  {} + {}: weights ({})\n",
                        cell.incentive,
                        cell.fairness,
                        w.weights()
                            .iter()
                            .map(|&v| num(v))
                            .collect::<Vec<_>>()
                            .join(", "),
                    ));
                }
            }
            out.push_str(&format!(
                "incompatible cells confirmed by searching the weight simplex at step 1/{}\n",
                matrix.simplex_m,
            ));
            out
        }
    };
    emit(&args.output.out, &rendered)?;
    Ok(())
}

// ---- example ----------------------------------------------------------

fn cmd_example(args: ExampleArgs) -> Result<(), CliError> {
    reject_csv(args.output.format, "example output")?;
    let json = args.output.format == Format::Json;
    let rendered = match args.name {
        ExampleName::Example1 => {
            let example = examples::five_agent_walkthrough();
            if json {
                serde_json::to_string_pretty(&example)? + "\n"
            } else {
                examples::five_agent_walkthrough_text(&example)
            }
        }
        ExampleName::Fig2 => {
            let example = examples::sp_violation_example();
            if json {
                serde_json::to_string_pretty(&example)? + "\n"
            } else {
                examples::sp_violation_text(&example)
            }
        }
        ExampleName::Fig3 => {
            let example = examples::worst_case_example();
            if json {
                serde_json::to_string_pretty(&example)? + "\n"
            } else {
                examples::worst_case_text(&example)
            }
        }
        ExampleName::Fig5 => {
            let example = examples::split_profile_example();
            if json {
                serde_json::to_string_pretty(&example)? + "\n"
            } else {
                examples::split_profile_text(&example)
            }
        }
    };
    emit(&args.output.out, &rendered)?;
    Ok(())
}
