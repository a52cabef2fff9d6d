//! Command-line surface for the triangle families and the identity
//! verification engine. Three subcommands: `table` prints one triangle,
//! `verify` runs a relation-checking campaign, `matrix` checks the
//! matrix-form identities and the 4 x 4 fixture matrices.
//!
//! Exit codes: 0 success, 1 a verification ran and found failures,
//! 2 usage or parse errors, 3 domain errors (such as a zero modulus
//! where the mathematics forbids it). All output is deterministic;
//! randomness flows from an explicit `--seed`.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rwhitney::error::Error;
use rwhitney::families::{lookup_family, TableParams};
use rwhitney::identities::{verify_relation, RelationId, Sampler, VerificationReport};
use rwhitney::matrixrep::{
    check_fixture_matrices, check_matrix_identity, Discrepancy, MatrixIdentity,
};
use rwhitney::numeric::parse_rational;
use rwhitney::polynomial::ParameterVector;
use rwhitney::{AlphaSpec, Rational};

#[derive(Parser)]
#[command(
    name = "rwhitney",
    version,
    about = "Exact generalized r-Whitney and Stirling-type triangles, with identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one triangle family as CSV or JSON
    Table(TableArgs),
    /// Check catalog identities on random rational parameters
    Verify(VerifyArgs),
    /// Check the matrix-form identities or the 4 x 4 fixture matrices
    Matrix(MatrixArgs),
}

#[derive(Args)]
struct TableArgs {
    /// Family: w1, w2, comtet_s1, comtet_s2, multi_s1, multi_s2, p1, q1,
    /// q2, classical_w1, classical_w2
    #[arg(long)]
    kind: String,
    /// Modulus (exact rational, e.g. 2 or -3/4)
    #[arg(long, default_value = "1", value_parser = rational_value, allow_hyphen_values = true)]
    m: Rational,
    /// Shift (exact rational)
    #[arg(long, default_value = "0", value_parser = rational_value, allow_hyphen_values = true)]
    r: Rational,
    /// Parameter vector: zero | arange | const:C | pow:P | binom:P |
    /// list:A,B,... | qbracket:Q:SPEC
    #[arg(long, default_value = "arange", value_parser = alpha_value)]
    alpha: AlphaSpec,
    /// Largest row index
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    /// Order for the p1 family
    #[arg(long)]
    p: Option<u32>,
    /// Base for the q1 and q2 families
    #[arg(long, value_parser = rational_value, allow_hyphen_values = true)]
    q: Option<Rational>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Also write the output to this file, same bytes as standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// A relation name from the catalog, or "all"
    #[arg(long, default_value = "all")]
    relation: String,
    /// Largest row index checked per sample
    #[arg(long, default_value_t = 8)]
    nmax: usize,
    /// Number of random parameter samples per relation
    #[arg(long, default_value_t = 50)]
    trials: u32,
    /// Seed for the parameter sampler
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the output to this file, same bytes as standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MatrixArgs {
    /// eq24 | eq25 | eq26 | fixtures
    #[arg(long)]
    identity: String,
    /// Modulus, used only together with --alpha
    #[arg(long, default_value = "1", value_parser = rational_value, allow_hyphen_values = true)]
    m: Rational,
    /// Shift, used only together with --alpha
    #[arg(long, default_value = "0", value_parser = rational_value, allow_hyphen_values = true)]
    r: Rational,
    /// Check at this explicit parameter vector instead of sampling
    #[arg(long, value_parser = alpha_value)]
    alpha: Option<AlphaSpec>,
    /// Matrix size (the fixtures are always 4 x 4)
    #[arg(long, default_value_t = 4)]
    size: usize,
    /// Seed for the parameter sampler (sampling mode only)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled parameter sets (ignored with --alpha)
    #[arg(long, default_value_t = 100)]
    trials: u32,
    /// Also write the output to this file, same bytes as standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn rational_value(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn alpha_value(s: &str) -> Result<AlphaSpec, String> {
    s.parse::<AlphaSpec>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Table(args) => run_table(&args),
        Command::Verify(args) => run_verify(&args),
        Command::Matrix(args) => run_matrix(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(if err.is_domain() { 3 } else { 2 })
        }
    }
}

/// Prints `text` and mirrors it to `--out` when given.
fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    if let Some(path) = out {
        fs::write(path, text)
            .map_err(|e| Error::Validation(format!("cannot write {}: {e}", path.display())))?;
    }
    print!("{text}");
    Ok(())
}

fn run_table(args: &TableArgs) -> Result<ExitCode, Error> {
    let family = lookup_family(&args.kind)?;
    let params = TableParams {
        m: args.m.clone(),
        r: args.r.clone(),
        alpha: args.alpha.clone(),
        nmax: args.nmax,
        p: args.p,
        q: args.q.clone(),
    };
    let triangle = family.build(&params)?;
    let text = match args.format {
        Format::Csv => triangle.to_csv(),
        Format::Json => format!("{}\n", triangle.to_json()),
    };
    emit(&text, &args.out)?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: &VerifyArgs) -> Result<ExitCode, Error> {
    let reports: Vec<VerificationReport> = if args.relation == "all" {
        RelationId::ALL
            .iter()
            .map(|&id| verify_relation(id, args.nmax, args.trials, args.seed))
            .collect()
    } else {
        let id: RelationId = args.relation.parse()?;
        vec![verify_relation(id, args.nmax, args.trials, args.seed)]
    };
    let all_verified = reports.iter().all(VerificationReport::verified);
    let value = if args.relation == "all" {
        serde_json::Value::Array(reports.iter().map(VerificationReport::to_json).collect())
    } else {
        reports[0].to_json()
    };
    emit(&format!("{value}\n"), &args.out)?;
    Ok(if all_verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// `None` selects the fixture comparison instead of a product identity.
fn parse_identity(text: &str) -> Result<Option<MatrixIdentity>, Error> {
    if text == "fixtures" {
        return Ok(None);
    }
    MatrixIdentity::ALL
        .iter()
        .copied()
        .find(|id| id.tag() == text)
        .map(Some)
        .ok_or_else(|| Error::UnknownIdentity(text.to_string()))
}

fn discrepancy_json(family: Option<&str>, d: &Discrepancy) -> serde_json::Value {
    json!({
        "family": family,
        "n": d.n,
        "k": d.k,
        "lhs": d.lhs.to_string(),
        "rhs": d.rhs.to_string(),
    })
}

fn matrix_check(
    identity: Option<MatrixIdentity>,
    m: &Rational,
    r: &Rational,
    alpha: &ParameterVector,
    size: usize,
) -> Result<Vec<serde_json::Value>, Error> {
    match identity {
        Some(id) => Ok(check_matrix_identity(id, m, r, alpha, size)?
            .iter()
            .map(|d| discrepancy_json(None, d))
            .collect()),
        None => Ok(check_fixture_matrices(m, r, alpha)?
            .iter()
            .map(|(family, d)| discrepancy_json(Some(family.tag()), d))
            .collect()),
    }
}

fn check_json(
    m: &Rational,
    r: &Rational,
    alpha: &[Rational],
    discrepancies: Vec<serde_json::Value>,
) -> serde_json::Value {
    json!({
        "params": {
            "m": m.to_string(),
            "r": r.to_string(),
            "alpha": alpha.iter().map(Rational::to_string).collect::<Vec<_>>(),
        },
        "discrepancies": discrepancies,
    })
}

fn run_matrix(args: &MatrixArgs) -> Result<ExitCode, Error> {
    let identity = parse_identity(&args.identity)?;
    let size = if identity.is_some() { args.size } else { 4 };
    if size == 0 {
        return Err(Error::Validation("size must be at least 1".to_string()));
    }
    let mut checks = Vec::new();
    let trials;
    if let Some(spec) = &args.alpha {
        trials = 1;
        let alpha = spec.materialize(size - 1)?;
        let discrepancies = matrix_check(identity, &args.m, &args.r, &alpha, size)?;
        checks.push(check_json(&args.m, &args.r, alpha.values(), discrepancies));
    } else {
        trials = args.trials;
        let mut sampler = Sampler::new(args.seed);
        for _ in 0..trials {
            // The product identities need a nonzero modulus; the fixtures
            // hold for any modulus, so sample the full range there.
            let m = if identity.is_some() {
                sampler.nonzero_rational()
            } else {
                sampler.rational()
            };
            let r = sampler.rational();
            let values: Vec<Rational> = (0..size - 1).map(|_| sampler.rational()).collect();
            let alpha = ParameterVector::new(values.clone());
            let discrepancies = matrix_check(identity, &m, &r, &alpha, size)?;
            checks.push(check_json(&m, &r, &values, discrepancies));
        }
    }
    let verified = checks
        .iter()
        .all(|c| c["discrepancies"].as_array().is_some_and(Vec::is_empty));
    let explicit = args.alpha.is_some();
    let value = json!({
        "identity": args.identity,
        "mode": if explicit { "explicit" } else { "sampled" },
        "m": explicit.then(|| args.m.to_string()),
        "r": explicit.then(|| args.r.to_string()),
        "alpha": args.alpha.as_ref().map(AlphaSpec::to_string),
        "size": size,
        "seed": args.seed,
        "trials": trials,
        "verified": verified,
        "checks": checks,
    });
    emit(&format!("{value}\n"), &args.out)?;
    Ok(if verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
