//! `polyarith`: JSON reports for the computations in `polyarith-core`.
//!
//! Exit codes: 0 success, 1 malformed input, 2 a mathematical precondition
//! failed, 3 internal consistency failure.

mod commands;
mod input;
mod pretty;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::input::{CliError, Inputs};

#[derive(Debug, Parser)]
#[command(name = "polyarith", version, about = "Exact computations for polycyclic groups and nilpotent Lie algebras")]
struct Cli {
    #[command(flatten)]
    output: OutputFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputFlags {
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Add a Unix timestamp to the report (makes output time-dependent).
    #[arg(long, global = true)]
    timestamps: bool,
    /// Print only the command-specific results.
    #[arg(long, global = true)]
    results_only: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fundamental solution of a² − d·b² = 1.
    Pell { d: String },
    /// Group spec of Γ(ε) = (𝒪 × ℤ) ⋊ D∞ for the Pell unit of d.
    GammaEpsilon { d: String },
    /// ℤ-basis of the derivation lattice of a group spec.
    Derivations { spec: String },
    /// First cohomology of a group spec.
    H1 { spec: String },
    /// Matrix of d ↦ g∗d on the derivation lattice.
    DerAction {
        spec: String,
        /// Word such as "A^2 t" (whitespace-separated, exponents optional).
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Unimodular matrices commuting with the action, entries bounded.
    EquivariantUnits {
        spec: String,
        #[arg(long, default_value_t = 10)]
        bound: u64,
    },
    /// Multiplicative Jordan–Chevalley decomposition of a rational matrix.
    Jordan { matrix: String },
    /// Necessary-condition test for ℤⁿ ⋊ ⟨A⟩ to be arithmetic.
    ArithCheck { matrix: String },
    /// Full report for Γ(ε) and its Inn_A action on derivations.
    Teob {
        d: String,
        /// Seed for the sampled action-compatibility check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random group elements in that check.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Betti numbers, optionally with an automorphism or torus action.
    LieCohomology {
        algebra: String,
        /// Matrix of an automorphism (columns are images of basis vectors).
        #[arg(long)]
        automorphism: Option<String>,
        /// JSON array of commuting semisimple automorphisms.
        #[arg(long)]
        invariants: Option<String>,
    },
    /// The subcomplex of Koszul cochains fixed by a family of automorphisms.
    KoszulInvariants { algebra: String, family: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli) {
        Ok((inputs, results)) => {
            print!("{}", render(&cli.output, &argv, &inputs, results));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            println!("{}", serde_json::to_string(&json!({ "error": e.to_json() })).expect("serializable"));
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(Inputs, Value), CliError> {
    let mut inputs = Inputs::default();
    let results = match &cli.command {
        Command::Pell { d } => commands::pell(inputs.integer("d", d)?)?,
        Command::GammaEpsilon { d } => commands::gamma_epsilon(inputs.integer("d", d)?)?,
        Command::Derivations { spec } => commands::derivations(&inputs.group_spec(spec)?)?,
        Command::H1 { spec } => commands::h1(&inputs.group_spec(spec)?)?,
        Command::DerAction { spec, element } => {
            let spec = inputs.group_spec(spec)?;
            commands::der_action(&spec, inputs.text("element", element))?
        }
        Command::EquivariantUnits { spec, bound } => {
            let spec = inputs.group_spec(spec)?;
            inputs.text("bound", &bound.to_string());
            commands::equivariant_units(&spec, *bound)?
        }
        Command::Jordan { matrix } => commands::jordan(&inputs.rational_matrix(matrix)?)?,
        Command::ArithCheck { matrix } => commands::arith_check(&inputs.integer_matrix(matrix)?)?,
        Command::Teob { d, seed, samples } => {
            let d = inputs.integer("d", d)?;
            inputs.text("seed", &seed.to_string());
            inputs.text("samples", &samples.to_string());
            commands::teob(d, *seed, *samples)?
        }
        Command::LieCohomology { algebra, automorphism, invariants } => {
            let cap = input::dimension_cap()?;
            let algebra = inputs.lie_algebra(algebra)?;
            let automorphism = automorphism.as_deref().map(|p| inputs.rational_matrix(p)).transpose()?;
            let family = invariants.as_deref().map(|p| inputs.matrix_list(p)).transpose()?;
            commands::lie_cohomology(&algebra, cap, automorphism, family)?
        }
        Command::KoszulInvariants { algebra, family } => {
            let cap = input::dimension_cap()?;
            let algebra = inputs.lie_algebra(algebra)?;
            let family = inputs.matrix_list(family)?;
            commands::koszul_invariants(&algebra, cap, family)?
        }
    };
    Ok((inputs, results))
}

fn render(flags: &OutputFlags, argv: &[String], inputs: &Inputs, results: Value) -> String {
    let document = if flags.results_only {
        results
    } else {
        let mut report = Map::new();
        report.insert("command".into(), json!(argv.iter().filter(|a| !is_output_flag(a)).collect::<Vec<_>>()));
        report.insert("inputs_digest".into(), json!(inputs.digest()));
        report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        if flags.timestamps {
            let secs = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or_default();
            report.insert("timestamp".into(), json!(secs));
        }
        report.insert("results".into(), results);
        Value::Object(report)
    };
    if flags.pretty {
        pretty::render(&document)
    } else {
        let mut text = serde_json::to_string(&document).expect("serializable");
        text.push('\n');
        text
    }
}

/// Output flags do not change the computation, so they are left out of the
/// command echo.
fn is_output_flag(arg: &str) -> bool {
    matches!(arg, "--pretty" | "--timestamps" | "--results-only")
}
