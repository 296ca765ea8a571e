//! `sli-ring` — build certified bases, solve linear equations in the
//! correlated fuzzy-number ring, and cross-check the results.
//!
//! Output is deterministic: floats are serialized with 17 significant
//! digits, and the randomized checks in `verify` draw from a ChaCha8
//! stream seeded by `SLI_RING_SEED` (default 0).
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage, 3 parse or
//! validation error, 4 independence certification failure, 5 basis or
//! coordinate-length mismatch, 6 non-invertible element, 7 I/O error.

mod eval;

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use sli_ring::json::{
    cut_table_csv, fmt_f64, from_json_str, level_rows, to_json_string, BasisSpec, FuzzyNumberRepr,
    LevelRow, ProblemFile, SolutionFile,
};
use sli_ring::{
    apply_linear, extend_fuzzy, levelwise_system, BoxFunction, Error, ExtensionMode, FuzzyNumber,
    LevelGrid, LinearEquation, SVector, SliBasis, Solution, Trapezoid, DEFAULT_LEVELS,
    RESIDUAL_TOL,
};

#[derive(Parser)]
#[command(
    name = "sli-ring",
    version,
    about = "Arithmetic and linear equations in a basis-correlated fuzzy-number ring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Number of α-levels for sampled grids (default 101)
    #[arg(long, global = true)]
    levels: Option<usize>,

    /// Relative independence-certificate threshold (default 1e-8)
    #[arg(long, global = true)]
    threshold: Option<f64>,

    /// Output format where a cut table makes sense (solve, eval)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the primary output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a basis from a spec file, certify it, and write it out
    Basis {
        /// `{"generator": [a,b,c,d], "n": k}` or `{"elements": [...]}`
        spec: PathBuf,
    },
    /// Solve A ⊙ X + B = C from a problem file
    Solve {
        /// `{"basis": ..., "equation": {"A": ..., "B": ..., "C": ...}}`
        problem: PathBuf,
    },
    /// Solve a problem and re-check it: certificate, randomized ring
    /// identities, re-substitution, and the levelwise interval system
    Verify {
        problem: PathBuf,
        /// Check this solution file's coordinates instead of the
        /// freshly solved ones
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Distance between two fuzzy-number files (sup over levels of the
    /// larger endpoint deviation)
    Dist { first: PathBuf, second: PathBuf },
    /// Evaluate a prefix-expression file over a basis
    Eval {
        /// A number, `{"coords": [...]}`, or `[op, ...]` with ops
        /// add, sub, smul, cross, inv, div
        expression: PathBuf,
        /// Basis spec file the coordinates refer to
        #[arg(long)]
        basis: PathBuf,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let opts = Options {
        levels: cli.levels,
        threshold: cli.threshold,
        format: cli.format,
        out: cli.out,
    };
    match cli.command {
        Command::Basis { spec } => cmd_basis(&opts, &spec),
        Command::Solve { problem } => cmd_solve(&opts, &problem),
        Command::Verify { problem, solution } => cmd_verify(&opts, &problem, solution.as_deref()),
        Command::Dist { first, second } => cmd_dist(&opts, &first, &second),
        Command::Eval { expression, basis } => cmd_eval(&opts, &expression, &basis),
    }
}

struct Options {
    levels: Option<usize>,
    threshold: Option<f64>,
    format: Format,
    out: Option<PathBuf>,
}

// ---------------------------------------------------------------- errors

enum CliError {
    Lib(Error),
    Io { path: PathBuf, source: io::Error },
    Seed(String),
    ChecksFailed { failed: usize, total: usize },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::ChecksFailed { .. } => 1,
            CliError::Seed(_) => 3,
            CliError::Lib(err) => match err {
                Error::BasisTooSmall(_)
                | Error::EmptyBasis
                | Error::LeadingElementNotOne { .. }
                | Error::SymmetricGenerator { .. }
                | Error::SliRejected { .. } => 4,
                Error::BasisMismatch | Error::CoordLength { .. } => 5,
                Error::NoInverse { .. } => 6,
                _ => 3,
            },
            CliError::Io { .. } => 7,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(err) => write!(f, "{err}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Seed(text) => {
                write!(f, "SLI_RING_SEED must be an unsigned integer, got {text:?}")
            }
            CliError::ChecksFailed { failed, total } => {
                write!(f, "{failed} of {total} checks failed")
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Lib(err)
    }
}

// ------------------------------------------------------------- plumbing

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    Ok(from_json_str(&read(path)?)?)
}

/// Write the primary output: to `--out` when given, stdout otherwise.
/// `text` carries its own trailing newline so both sinks get the same
/// bytes.
fn emit(opts: &Options, text: &str) -> Result<(), CliError> {
    match &opts.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn grid(opts: &Options) -> Result<LevelGrid, CliError> {
    Ok(LevelGrid::uniform(opts.levels.unwrap_or(DEFAULT_LEVELS))?)
}

// ------------------------------------------------------------- commands

fn cmd_basis(opts: &Options, spec_path: &Path) -> Result<(), CliError> {
    let spec: BasisSpec = parse(spec_path)?;
    let basis = spec.build(opts.levels, opts.threshold)?;
    let cert = basis.certificate();
    eprintln!(
        "certificate: sigma_min={} threshold={} accepted",
        fmt_f64(cert.smallest_singular_value),
        fmt_f64(cert.absolute_threshold),
    );
    let mut text = to_json_string(&BasisSpec::describe(&basis))?;
    text.push('\n');
    emit(opts, &text)
}

fn cmd_solve(opts: &Options, problem_path: &Path) -> Result<(), CliError> {
    let problem: ProblemFile = parse(problem_path)?;
    let (_, equation) = problem.build(opts.levels, opts.threshold)?;
    let solution = equation.solve();
    let text = match opts.format {
        Format::Json => {
            let mut text = to_json_string(&SolutionFile::from_solution(&solution))?;
            text.push('\n');
            text
        }
        Format::Csv => match &solution {
            Solution::Unique { value, .. } => cut_table_csv(&value.realize()),
            Solution::Family { representative, .. } => cut_table_csv(&representative.realize()),
            // nothing to tabulate: header only
            Solution::Inconsistent { .. } => String::from("alpha,lower,upper\n"),
        },
    };
    emit(opts, &text)
}

fn cmd_dist(opts: &Options, first: &Path, second: &Path) -> Result<(), CliError> {
    let grid = grid(opts)?;
    let a: FuzzyNumberRepr = parse(first)?;
    let b: FuzzyNumberRepr = parse(second)?;
    let d = a.to_fuzzy(&grid)?.hausdorff(&b.to_fuzzy(&grid)?);
    emit(opts, &format!("{d:.11e}\n"))
}

/// JSON result of `eval`: coordinates, core, and the realized α-cut
/// table.
#[derive(Serialize)]
struct EvalOutput {
    coords: Vec<f64>,
    core: f64,
    levels: Vec<LevelRow>,
}

fn cmd_eval(opts: &Options, expr_path: &Path, basis_path: &Path) -> Result<(), CliError> {
    let spec: BasisSpec = parse(basis_path)?;
    let basis = Arc::new(spec.build(opts.levels, opts.threshold)?);
    let expr: Value = from_json_str(&read(expr_path)?).map_err(CliError::Lib)?;
    let value = eval::eval(&expr, &basis)?;
    let text = match opts.format {
        Format::Json => {
            let output = EvalOutput {
                coords: value.coords().to_vec(),
                core: value.core_value(),
                levels: level_rows(&value.realize()),
            };
            let mut text = to_json_string(&output)?;
            text.push('\n');
            text
        }
        Format::Csv => cut_table_csv(&value.realize()),
    };
    emit(opts, &text)
}

// --------------------------------------------------------------- verify

struct Check {
    name: &'static str,
    status: Status,
    detail: String,
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

impl Check {
    /// Pass iff `measured ≤ tol`.
    fn gate(name: &'static str, measured: f64, tol: f64, detail: String) -> Check {
        let status = if measured <= tol {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name,
            status,
            detail,
        }
    }

    fn outcome(name: &'static str, ok: bool, detail: String) -> Check {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check {
            name,
            status,
            detail,
        }
    }

    fn skip(name: &'static str, detail: &str) -> Check {
        Check {
            name,
            status: Status::Skip,
            detail: detail.to_string(),
        }
    }

    fn label(&self) -> &'static str {
        match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        }
    }
}

const ORACLE_SAMPLES: usize = 50;
const INVERSE_SAMPLES: usize = 200;

fn cmd_verify(
    opts: &Options,
    problem_path: &Path,
    solution_path: Option<&Path>,
) -> Result<(), CliError> {
    let problem: ProblemFile = parse(problem_path)?;
    let (basis, equation) = problem.build(opts.levels, opts.threshold)?;
    let mut rng = ChaCha8Rng::seed_from_u64(read_seed()?);
    let mut checks = Vec::new();

    let cert = basis.certificate();
    checks.push(Check::outcome(
        "certificate",
        cert.accepted(),
        format!(
            "sigma_min={} threshold={}",
            fmt_f64(cert.smallest_singular_value),
            fmt_f64(cert.absolute_threshold)
        ),
    ));

    let gap = product_oracle_gap(&mut rng, basis.grid(), ORACLE_SAMPLES)?;
    checks.push(Check::gate(
        "product-oracle",
        gap,
        RESIDUAL_TOL,
        format!("max_gap={} samples={ORACLE_SAMPLES}", fmt_f64(gap)),
    ));

    let gap = inverse_law_gap(&mut rng, &basis, INVERSE_SAMPLES)?;
    checks.push(Check::gate(
        "inverse-law",
        gap,
        RESIDUAL_TOL,
        format!("max_gap={} samples={INVERSE_SAMPLES}", fmt_f64(gap)),
    ));

    let solution = equation.solve();
    let detail = format!(
        "kind={} residual={}",
        solution.kind(),
        fmt_f64(solution.residual())
    );
    // the inconsistent kind is a legitimate answer, not a failed check
    checks.push(match solution {
        Solution::Inconsistent { .. } => Check::outcome("solve", true, detail),
        _ => Check::gate("solve", solution.residual(), RESIDUAL_TOL, detail),
    });

    // the coordinates under test: the provided solution file's, if
    // any, otherwise the freshly solved ones
    let mut subject = match &solution {
        Solution::Unique { value, .. } => Some(value.clone()),
        Solution::Family { representative, .. } => Some(representative.clone()),
        Solution::Inconsistent { .. } => None,
    };
    if let Some(path) = solution_path {
        let provided: SolutionFile = parse(path)?;
        checks.push(Check::outcome(
            "solution-file",
            provided.kind == solution.kind(),
            format!("kind={} expected={}", provided.kind, solution.kind()),
        ));
        subject = match provided.coords {
            Some(coords) => Some(SVector::new(Arc::clone(&basis), coords)?),
            None => None,
        };
    }

    match subject {
        Some(x) => {
            checks.push(substitution_check(&equation, &x)?);
            let reduced = equation.c().sub_psi(equation.b())?;
            let report = levelwise_system(equation.a(), &x, &reduced, basis.grid())?;
            checks.push(Check::gate(
                "levelwise",
                report.max_deviation,
                RESIDUAL_TOL,
                format!(
                    "max_deviation={} levels={}",
                    fmt_f64(report.max_deviation),
                    report.levels.len()
                ),
            ));
        }
        None => {
            checks.push(Check::skip("substitution", "no coordinates to substitute"));
            checks.push(Check::skip("levelwise", "no coordinates to substitute"));
        }
    }

    for check in &checks {
        println!("{:<14} {:<4} {}", check.name, check.label(), check.detail);
    }
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    let skipped = checks.iter().filter(|c| c.status == Status::Skip).count();
    println!(
        "verification: {} ({} passed, {failed} failed, {skipped} skipped)",
        if failed == 0 { "PASS" } else { "FAIL" },
        checks.len() - failed - skipped,
    );
    if failed > 0 {
        Err(CliError::ChecksFailed {
            failed,
            total: checks.len(),
        })
    } else {
        Ok(())
    }
}

fn substitution_check(equation: &LinearEquation, x: &SVector) -> Result<Check, CliError> {
    let produced = apply_linear(equation.a(), equation.b(), x)?;
    let gap = produced
        .coords()
        .iter()
        .zip(equation.c().coords())
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max);
    Ok(Check::gate(
        "substitution",
        gap,
        RESIDUAL_TOL,
        format!("max_gap={}", fmt_f64(gap)),
    ))
}

fn read_seed() -> Result<u64, CliError> {
    match std::env::var("SLI_RING_SEED") {
        Ok(text) => text.trim().parse().map_err(|_| CliError::Seed(text)),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(std::env::VarError::NotUnicode(_)) => Err(CliError::Seed("<non-unicode>".into())),
    }
}

fn random_singleton(rng: &mut ChaCha8Rng, grid: &LevelGrid) -> FuzzyNumber {
    let mut v = [0.0f64; 3];
    v.iter_mut().for_each(|x| *x = rng.gen_range(-10.0..10.0));
    v.sort_by(f64::total_cmp);
    Trapezoid::new(v[0], v[1], v[1], v[2])
        .expect("sorted knots")
        .sample(grid)
}

fn random_trapezoid(rng: &mut ChaCha8Rng, grid: &LevelGrid) -> FuzzyNumber {
    let mut v = [0.0f64; 4];
    v.iter_mut().for_each(|x| *x = rng.gen_range(-10.0..10.0));
    v.sort_by(f64::total_cmp);
    Trapezoid::new(v[0], v[1], v[2], v[3])
        .expect("sorted knots")
        .sample(grid)
}

/// Largest gap between the classical composite `cross(A, X) + B` and
/// the corner extension of its linearization, over random triples.
fn product_oracle_gap(
    rng: &mut ChaCha8Rng,
    grid: &LevelGrid,
    samples: usize,
) -> Result<f64, Error> {
    let mut max_gap = 0.0f64;
    for _ in 0..samples {
        let a = random_singleton(rng, grid);
        let x = random_singleton(rng, grid);
        let b = random_trapezoid(rng, grid);
        let abar = a.singleton_core()?;
        let xbar = x.singleton_core()?;
        let linearized =
            BoxFunction::new(3, move |v| abar * v[0] + xbar * v[1] - abar * xbar + v[2]);
        let extended = extend_fuzzy(
            &linearized,
            &[x.clone(), a.clone(), b.clone()],
            ExtensionMode::Vertex,
        )?;
        let classical = a.cross_product(&x)?.minkowski_add(&b);
        max_gap = max_gap.max(extended.hausdorff(&classical));
    }
    Ok(max_gap)
}

/// Largest coordinate deviation of `C ⊙ C⁻¹` from the unit, over
/// random elements with core bounded away from zero.
fn inverse_law_gap(
    rng: &mut ChaCha8Rng,
    basis: &Arc<SliBasis>,
    samples: usize,
) -> Result<f64, Error> {
    let mut max_gap = 0.0f64;
    let mut done = 0;
    while done < samples {
        let coords = (0..basis.len())
            .map(|_| rng.gen_range(-10.0..10.0))
            .collect();
        let c = SVector::new(Arc::clone(basis), coords)?;
        if c.core_value().abs() < 0.1 {
            continue;
        }
        let product = c.cross_psi(&c.inv_psi()?)?;
        let gap = product
            .coords()
            .iter()
            .enumerate()
            .map(|(i, q)| (q - if i == 0 { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max);
        max_gap = max_gap.max(gap);
        done += 1;
    }
    Ok(max_gap)
}
