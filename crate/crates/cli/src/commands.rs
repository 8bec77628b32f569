//! Subcommand implementations and exit-code policy.
//!
//! Exit 0 when every requested check passes, 1 when a check fails, and 2
//! for input errors (malformed documents, unknown flags, missing files).

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use jlbk_core::dynamics::{flow_trajectory, time_grid};
use jlbk_core::representation::cyclic_point;
use jlbk_core::uniqueness::{find_iso, rebase, verify_iso_representation, RebaseRecipe};
use jlbk_core::{build_kahler, KahlerStructure, MatrixAlgebra, StateFunctional};

use crate::checks::{run_checks, CheckContext};
use crate::elements::load_element;
use crate::error::CliError;
use crate::report::{Dimensions, Environment, VerificationReport};
use crate::spec::{complex_matrix_to_rows, parse_spec, ProblemSpec};

#[derive(Parser)]
#[command(
    name = "jlbk",
    version,
    about = "Build and verify Kähler representations of states over JLB matrix algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the quotient structure and dump m, G, W, Jm, ν, and the lifts
    Build {
        /// Problem-spec JSON file
        #[arg(long)]
        spec: PathBuf,
        /// Override the relative rank cutoff from the spec
        #[arg(long)]
        rank_cutoff: Option<f64>,
        /// Write the dump here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full verification suite and emit a JSON report
    Verify {
        #[arg(long)]
        spec: PathBuf,
        /// Override the generic check tolerance from the spec
        #[arg(long)]
        tol: Option<f64>,
        /// Override the seed from the spec
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        rank_cutoff: Option<f64>,
        /// Run a single named check unit
        #[arg(long)]
        only: Option<String>,
        /// Omit the timestamp so reports are byte-identical across runs
        #[arg(long)]
        no_timestamp: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Flow the cyclic point and write expectation trajectories as CSV
    Flow {
        #[arg(long)]
        spec: PathBuf,
        /// Hermitian generator (element JSON file)
        #[arg(long)]
        hamiltonian: PathBuf,
        /// Hermitian observable (element JSON file); repeatable
        #[arg(long = "observable", required = true)]
        observables: Vec<PathBuf>,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long)]
        t1: f64,
        /// Number of steps; the grid has steps+1 points
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebase the structure and verify the connecting isomorphism
    Compare {
        #[arg(long)]
        spec: PathBuf,
        /// permute | orthogonal-mix | reorder-eigenbasis
        #[arg(long, default_value = "orthogonal-mix")]
        rebase: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses argv and dispatches; never panics on user input.
pub fn run_command(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    2
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Build {
            spec,
            rank_cutoff,
            out,
        } => cmd_build(&spec, rank_cutoff, out.as_deref()),
        Command::Verify {
            spec,
            tol,
            seed,
            rank_cutoff,
            only,
            no_timestamp,
            out,
        } => cmd_verify(
            &spec,
            tol,
            seed,
            rank_cutoff,
            only.as_deref(),
            no_timestamp,
            out.as_deref(),
        ),
        Command::Flow {
            spec,
            hamiltonian,
            observables,
            t0,
            t1,
            steps,
            out,
        } => cmd_flow(
            &spec,
            &hamiltonian,
            &observables,
            t0,
            t1,
            steps,
            out.as_deref(),
        ),
        Command::Compare {
            spec,
            rebase,
            seed,
            out,
        } => cmd_compare(&spec, &rebase, seed, out.as_deref()),
    };
    match outcome {
        Ok(all_pass) => {
            if all_pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn load_problem(
    path: &Path,
    rank_cutoff: Option<f64>,
) -> Result<
    (
        ProblemSpec,
        Arc<MatrixAlgebra>,
        StateFunctional,
        KahlerStructure,
    ),
    CliError,
> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut spec = parse_spec(&text)?;
    if let Some(rc) = rank_cutoff {
        spec.tolerances.rank_cutoff = rc;
        spec.validate()?;
    }
    let (algebra, state) = spec.build()?;
    let kahler = build_kahler(&state, spec.tolerances.rank_cutoff)?;
    Ok((spec, algebra, state, kahler))
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct LiftDump {
    first: Vec<Vec<Vec<[f64; 2]>>>,
    second: Vec<Vec<Vec<[f64; 2]>>>,
}

#[derive(Serialize)]
struct KahlerDump {
    m: usize,
    real_dim: usize,
    #[serde(rename = "G")]
    g: Vec<Vec<f64>>,
    #[serde(rename = "W")]
    w: Vec<Vec<f64>>,
    #[serde(rename = "Jm")]
    jm: Vec<Vec<f64>>,
    nu: Vec<f64>,
    lifts: Vec<LiftDump>,
}

fn real_matrix_rows(m: &nalgebra::DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn cmd_build(spec: &Path, rank_cutoff: Option<f64>, out: Option<&Path>) -> Result<bool, CliError> {
    let (_, _, _, kahler) = load_problem(spec, rank_cutoff)?;
    let nu = cyclic_point(&kahler);
    let dump = KahlerDump {
        m: kahler.complex_dim(),
        real_dim: kahler.real_dim(),
        g: real_matrix_rows(kahler.metric()),
        w: real_matrix_rows(kahler.symplectic()),
        jm: real_matrix_rows(kahler.complex_structure()),
        nu: nu.coords().iter().cloned().collect(),
        lifts: kahler
            .lifts()
            .iter()
            .map(|pair| LiftDump {
                first: pair
                    .first()
                    .blocks()
                    .iter()
                    .map(complex_matrix_to_rows)
                    .collect(),
                second: pair
                    .second()
                    .blocks()
                    .iter()
                    .map(complex_matrix_to_rows)
                    .collect(),
            })
            .collect(),
    };
    write_output(out, &serde_json::to_string_pretty(&dump)?)?;
    Ok(true)
}

fn cmd_verify(
    spec_path: &Path,
    tol: Option<f64>,
    seed: Option<u64>,
    rank_cutoff: Option<f64>,
    only: Option<&str>,
    no_timestamp: bool,
    out: Option<&Path>,
) -> Result<bool, CliError> {
    let (spec, algebra, state, kahler) = load_problem(spec_path, rank_cutoff)?;
    let ctx = CheckContext {
        state: &state,
        kahler: &kahler,
        check_tol: tol.unwrap_or(spec.tolerances.check_tol),
        rank_cutoff: rank_cutoff.unwrap_or(spec.tolerances.rank_cutoff),
        seed: seed.unwrap_or(spec.seed),
    };
    let rows = run_checks(&ctx, only)?;
    let environment = Environment {
        seed: ctx.seed,
        tolerances: crate::spec::Tolerances {
            rank_cutoff: ctx.rank_cutoff,
            check_tol: ctx.check_tol,
        },
        dimensions: Dimensions {
            m: kahler.complex_dim(),
            real_dim: kahler.real_dim(),
            herm_dim: algebra.herm_dim(),
        },
        timestamp_unix_secs: if no_timestamp {
            None
        } else {
            Some(
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            )
        },
    };
    let report = VerificationReport::new(rows, environment);
    write_output(out, &report.to_json())?;
    Ok(report.all_pass())
}

fn cmd_flow(
    spec_path: &Path,
    hamiltonian: &Path,
    observables: &[PathBuf],
    t0: f64,
    t1: f64,
    steps: usize,
    out: Option<&Path>,
) -> Result<bool, CliError> {
    if steps == 0 {
        return Err(CliError::Input("steps must be positive".into()));
    }
    if !(t0.is_finite() && t1.is_finite()) {
        return Err(CliError::Input("time bounds must be finite".into()));
    }
    let (_, algebra, _, kahler) = load_problem(spec_path, None)?;
    let (_, generator) = load_element(hamiltonian, &algebra)?;
    let mut labeled = Vec::new();
    for path in observables {
        let (label, element) = load_element(path, &algebra)?;
        if labeled.iter().any(|(l, _)| l == &label) {
            return Err(CliError::Input(format!(
                "duplicate observable label '{label}'"
            )));
        }
        labeled.push((label, element));
    }
    let times = time_grid(t0, t1, steps);
    let nu = cyclic_point(&kahler);
    let result = flow_trajectory(&kahler, &generator, &nu, &times, &labeled)?;
    let mut csv = String::from("t");
    for (label, _) in &labeled {
        csv.push(',');
        csv.push_str(label);
    }
    csv.push('\n');
    for (i, t) in result.times.iter().enumerate() {
        csv.push_str(&format!("{t}"));
        for (label, _) in &labeled {
            csv.push_str(&format!(",{}", result.observables[label][i]));
        }
        csv.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    Ok(true)
}

#[derive(Serialize)]
struct CompareReport {
    recipe: String,
    seed: u64,
    residuals: CompareResiduals,
    threshold: f64,
    pass: bool,
}

#[derive(Serialize)]
struct CompareResiduals {
    isometry: f64,
    symplectomorphism: f64,
    j_intertwine: f64,
    nu_match: f64,
    solve: f64,
    f_transport: f64,
}

fn cmd_compare(
    spec_path: &Path,
    recipe_name: &str,
    seed: Option<u64>,
    out: Option<&Path>,
) -> Result<bool, CliError> {
    let recipe: RebaseRecipe = recipe_name.parse()?;
    let (spec, _, _, kahler) = load_problem(spec_path, None)?;
    let seed = seed.unwrap_or(spec.seed);
    let other = rebase(&kahler, recipe, seed)?;
    let iso = find_iso(&kahler, &other)?;
    let res = iso.residuals(&kahler, &other)?;
    let transport = verify_iso_representation(&iso, &kahler, &other, 100, seed)?;
    let threshold = 1e-8;
    let pass = res.worst() < threshold && transport < threshold;
    let report = CompareReport {
        recipe: recipe_name.to_string(),
        seed,
        residuals: CompareResiduals {
            isometry: res.isometry,
            symplectomorphism: res.symplectomorphism,
            j_intertwine: res.j_intertwine,
            nu_match: res.nu_match,
            solve: res.solve,
            f_transport: transport,
        },
        threshold,
        pass,
    };
    write_output(out, &serde_json::to_string_pretty(&report)?)?;
    Ok(pass)
}
