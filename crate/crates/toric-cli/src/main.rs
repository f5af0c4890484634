//! `toric`: exact lattice-cone computations from the command line.
//!
//! One subcommand per library operation: Hilbert bases, singularity
//! classification, resolution construction, subdivision checks, the
//! exhaustive resolution searches with completeness certificates, and
//! the verification drivers for the built-in cone families.
//!
//! Exit codes: 0 success, 2 invalid input, 3 budget exhausted
//! (inconclusive search), 4 internal invariant failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use toric_core::classify::{classify, recognize_family_4d, terminal_form_3d};
use toric_core::cone::Cone;
use toric_core::families::{
    determinant_identities, family_cone, forced_chain, hyperplane_obstruction, ChainReport,
    FamilyParams, ObstructionReport,
};
use toric_core::fan::Fan;
use toric_core::format::{bigint_to_i64, vector_to_i64, ConeData, FanData};
use toric_core::hilbert::essential_divisors;
use toric_core::search::{
    canonical_subdivision, enumerate_hilbert_basis_resolutions, find_moderate_resolutions,
    is_moderate, minimal_terminal_models_3d, resolve, Budget, SearchOutcome,
};
use toric_core::{LatticeVector, RationalCovector, ToricError};

const EXIT_INVALID_INPUT: u8 = 2;
const EXIT_BUDGET_EXHAUSTED: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "toric", version, about = "Exact lattice cones, Hilbert bases and resolution search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Suppress the elapsed-time field (byte-identical reruns).
    #[arg(long, global = true)]
    no_timing: bool,
    /// Node limit for searches.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget_nodes: u64,
    /// Wall-clock limit for searches, in seconds.
    #[arg(long, global = true, default_value_t = 300)]
    budget_seconds: u64,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert basis and essential-divisor split of a cone.
    Hilbert {
        #[arg(long)]
        input: PathBuf,
    },
    /// Singularity flags of a cone, plus the recognized normal forms.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// A smooth subdivision of the cone.
    Resolve {
        #[arg(long)]
        input: PathBuf,
    },
    /// Is the fan a subdivision of the cone?
    CheckSubdivision {
        /// Fan file.
        #[arg(long)]
        input: PathBuf,
        /// Reference cone file.
        #[arg(long)]
        cone: PathBuf,
    },
    /// Is the fan a moderate resolution of the cone?
    CheckModerate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cone: PathBuf,
    },
    /// Do all fan rays lie on the Gorenstein hyperplane of the cone?
    CheckCrepant {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cone: PathBuf,
    },
    /// Exhaustive resolution searches with completeness certificates.
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// The canonical subdivision (fan over the bounded hull faces).
    CanonicalModel {
        #[arg(long)]
        input: PathBuf,
    },
    /// All minimal terminal Q-factorial models of a rank-3 cone.
    MinimalModels {
        #[arg(long)]
        input: PathBuf,
    },
    /// Verification drivers for the built-in cone families.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Re-run a built-in end-to-end computation.
    Reproduce {
        #[command(subcommand)]
        kind: ReproduceKind,
    },
}

#[derive(Subcommand)]
enum SearchKind {
    /// All Hilbert basis resolutions of the cone.
    Hbr {
        #[arg(long)]
        input: PathBuf,
    },
    /// All moderate resolutions of the cone.
    Moderate {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum VerifyKind {
    /// Obstruction certificate for the axis family.
    Thm33 {
        /// Comma-separated coefficients, e.g. `--a 1,1,3`.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        a: Vec<i64>,
    },
    /// The six determinant identities of the rank-4 family, all (l, l').
    LemmaDet {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        r: i64,
    },
    /// The forced-chain non-existence certificate of the rank-4 family.
    ForcedChain {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        r: i64,
    },
}

#[derive(Subcommand)]
enum ReproduceKind {
    /// Hilbert basis and resolution search for the (a, r) = (1, 3) cone.
    A1r3,
}

#[derive(Serialize)]
struct Report {
    command: String,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INVALID_INPUT,
            message: message.into(),
        }
    }
}

impl From<ToricError> for Failure {
    fn from(e: ToricError) -> Failure {
        let code = match &e {
            ToricError::Internal(_) | ToricError::CheckFailed(_) => EXIT_INTERNAL,
            _ => EXIT_INVALID_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let common = cli.common.clone();
    match run(cli.command, &common) {
        Ok((name, result, outcome_meta)) => {
            let (complete, nodes) = outcome_meta;
            let report = Report {
                command: name,
                result,
                complete,
                nodes,
                elapsed_ms: if common.no_timing {
                    None
                } else {
                    Some(start.elapsed().as_millis())
                },
            };
            if let Err(e) = emit(&report, &common) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_INTERNAL);
            }
            if complete == Some(false) {
                ExitCode::from(EXIT_BUDGET_EXHAUSTED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn emit(report: &Report, common: &CommonArgs) -> std::io::Result<()> {
    let rendered = match common.format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        Format::Text => render_text(report),
    };
    match &common.output {
        Some(path) => std::fs::write(path, rendered + "\n"),
        None => {
            println!("{rendered}");
            Ok(())
        }
    }
}

fn render_text(report: &Report) -> String {
    let mut out = format!("command: {}\n", report.command);
    if let Some(c) = report.complete {
        out.push_str(&format!("complete: {c}\n"));
    }
    if let Some(n) = report.nodes {
        out.push_str(&format!("nodes: {n}\n"));
    }
    if let Some(ms) = report.elapsed_ms {
        out.push_str(&format!("elapsed_ms: {ms}\n"));
    }
    out.push_str("result:\n");
    out.push_str(&serde_json::to_string_pretty(&report.result).expect("result serializes"));
    out
}

type RunOutput = (String, Value, (Option<bool>, Option<u64>));

fn run(command: Command, common: &CommonArgs) -> Result<RunOutput, Failure> {
    let budget = Budget::new(common.budget_nodes, common.budget_seconds);
    match command {
        Command::Hilbert { input } => {
            let cone = load_cone(&input)?;
            let (basis, exceptional) = essential_divisors(&cone)?;
            let result = json!({
                "basis": vectors_json(basis.elements())?,
                "ray_generators": (0..basis.len())
                    .map(|i| basis.is_ray_generator(i))
                    .collect::<Vec<_>>(),
                "exceptional": vectors_json(&exceptional)?,
            });
            Ok(("hilbert".into(), result, (None, None)))
        }
        Command::Classify { input } => {
            let cone = load_cone(&input)?;
            let report = classify(&cone)?;
            let terminal_pq = if cone.rank() == 3
                && cone.is_simplicial()
                && report.terminal == Some(true)
            {
                terminal_form_3d(&cone)?.map(|(p, q)| {
                    json!({"p": p.to_string(), "q": q.to_string()})
                })
            } else {
                None
            };
            let family_4d = recognize_family_4d(&cone).map(|(a, r)| json!({"a": a, "r": r}));
            let result = json!({
                "smooth": report.smooth,
                "simplicial": report.simplicial,
                "q_gorenstein_index": report
                    .q_gorenstein_index
                    .as_ref()
                    .map(bigint_to_i64)
                    .transpose()?,
                "gorenstein": report.gorenstein,
                "terminal": report.terminal,
                "canonical": report.canonical,
                "terminal_form_3d": terminal_pq,
                "family_4d": family_4d,
            });
            Ok(("classify".into(), result, (None, None)))
        }
        Command::Resolve { input } => {
            let cone = load_cone(&input)?;
            let fan = resolve(&cone)?;
            let result = json!({
                "fan": fan_json(&fan)?,
                "smooth": fan.is_smooth(),
            });
            Ok(("resolve".into(), result, (None, None)))
        }
        Command::CheckSubdivision { input, cone } => {
            let fan = load_fan(&input)?;
            let reference = load_cone(&cone)?;
            let result = json!({
                "valid_fan": fan.validate(),
                "subdivision": fan.is_subdivision_of(&reference),
            });
            Ok(("check-subdivision".into(), result, (None, None)))
        }
        Command::CheckModerate { input, cone } => {
            let fan = load_fan(&input)?;
            let reference = load_cone(&cone)?;
            let moderate = is_moderate(&fan, &reference)?;
            let result = json!({"moderate": moderate});
            Ok(("check-moderate".into(), result, (None, None)))
        }
        Command::CheckCrepant { input, cone } => {
            let fan = load_fan(&input)?;
            let reference = load_cone(&cone)?;
            let crepant = fan.is_crepant(&reference)?;
            let result = json!({"crepant": crepant});
            Ok(("check-crepant".into(), result, (None, None)))
        }
        Command::Search { kind } => {
            let (name, outcome) = match kind {
                SearchKind::Hbr { input } => {
                    let cone = load_cone(&input)?;
                    ("search hbr", enumerate_hilbert_basis_resolutions(&cone, &budget)?)
                }
                SearchKind::Moderate { input } => {
                    let cone = load_cone(&input)?;
                    ("search moderate", find_moderate_resolutions(&cone, &budget)?)
                }
            };
            let result = search_json(&outcome)?;
            Ok((
                name.into(),
                result,
                (Some(outcome.complete), Some(outcome.nodes_explored)),
            ))
        }
        Command::CanonicalModel { input } => {
            let cone = load_cone(&input)?;
            let fan = canonical_subdivision(&cone)?;
            let result = json!({
                "fan": fan_json(&fan)?,
                "trivial": fan.is_trivial_for(&cone),
            });
            Ok(("canonical-model".into(), result, (None, None)))
        }
        Command::MinimalModels { input } => {
            let cone = load_cone(&input)?;
            let models = minimal_terminal_models_3d(&cone)?;
            let result = json!({
                "count": models.len(),
                "fans": models
                    .iter()
                    .map(fan_json)
                    .collect::<Result<Vec<_>, _>>()?,
            });
            Ok(("minimal-models".into(), result, (None, None)))
        }
        Command::Verify { kind } => match kind {
            VerifyKind::Thm33 { a } => {
                let params = FamilyParams::Axis { coeffs: a };
                let report = hyperplane_obstruction(&params)?;
                let result = obstruction_json(&params, &report)?;
                Ok(("verify thm33".into(), result, (None, None)))
            }
            VerifyKind::LemmaDet { a, r } => {
                let mut all_hold = true;
                let mut pairs = 0u64;
                for l in 1..r {
                    for lp in 1..r {
                        pairs += 1;
                        if !determinant_identities(a, r, l, lp)? {
                            all_hold = false;
                        }
                    }
                }
                if !all_hold {
                    return Err(Failure {
                        code: EXIT_INTERNAL,
                        message: "determinant identities failed".into(),
                    });
                }
                let result = json!({
                    "a": a,
                    "r": r,
                    "pairs_checked": pairs,
                    "all_hold": all_hold,
                });
                Ok(("verify lemma-det".into(), result, (None, None)))
            }
            VerifyKind::ForcedChain { a, r } => {
                let report = forced_chain(a, r)?;
                let result = chain_json(&report)?;
                Ok(("verify forced-chain".into(), result, (None, None)))
            }
        },
        Command::Reproduce { kind } => match kind {
            ReproduceKind::A1r3 => {
                let params = FamilyParams::Gorenstein4d { a: 1, r: 3 };
                let cone = family_cone(&params)?;
                let (basis, _) = essential_divisors(&cone)?;
                let outcome = enumerate_hilbert_basis_resolutions(&cone, &budget)?;
                let expected = expected_a1r3_fan()?;
                let found = outcome.fans.contains(&expected);
                let result = json!({
                    "cone": cone_json(&cone)?,
                    "basis": vectors_json(basis.elements())?,
                    "resolutions": outcome.fans.len(),
                    "expected_fan_found": found,
                    "fans": outcome
                        .fans
                        .iter()
                        .map(fan_json)
                        .collect::<Result<Vec<_>, _>>()?,
                });
                if outcome.complete && !found {
                    return Err(Failure {
                        code: EXIT_INTERNAL,
                        message: "known resolution missing from a complete search".into(),
                    });
                }
                Ok((
                    "reproduce a1r3".into(),
                    result,
                    (Some(outcome.complete), Some(outcome.nodes_explored)),
                ))
            }
        },
    }
}

/// The smooth subdivision of the (a, r) = (1, 3) cone produced by the
/// standard computer-algebra resolution, in canonical form.
fn expected_a1r3_fan() -> Result<Fan, Failure> {
    let rays: Vec<LatticeVector> = [
        [1i64, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [1, 1, 2, 3],
        [1, 1, 1, 1],
        [1, 1, 2, 2],
    ]
    .iter()
    .map(|r| LatticeVector::from_i64(r))
    .collect();
    let cells = vec![
        vec![0, 1, 2, 4],
        vec![0, 1, 3, 4],
        vec![0, 2, 3, 5],
        vec![0, 2, 4, 5],
        vec![0, 3, 4, 5],
        vec![1, 2, 3, 5],
        vec![1, 2, 4, 5],
        vec![1, 3, 4, 5],
    ];
    Ok(Fan::new(4, rays, cells)?)
}

fn load_cone(path: &Path) -> Result<Cone, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
    let data: ConeData = serde_json::from_str(&text)
        .map_err(|e| Failure::invalid(format!("invalid cone file {}: {e}", path.display())))?;
    Ok(data.to_cone()?)
}

fn load_fan(path: &Path) -> Result<Fan, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
    let data: FanData = serde_json::from_str(&text)
        .map_err(|e| Failure::invalid(format!("invalid fan file {}: {e}", path.display())))?;
    Ok(data.to_fan()?)
}

fn vectors_json(vs: &[LatticeVector]) -> Result<Value, Failure> {
    let rows: Vec<Vec<i64>> = vs
        .iter()
        .map(vector_to_i64)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!(rows))
}

fn cone_json(c: &Cone) -> Result<Value, Failure> {
    Ok(serde_json::to_value(ConeData::from_cone(c)?).expect("cone serializes"))
}

fn fan_json(f: &Fan) -> Result<Value, Failure> {
    Ok(serde_json::to_value(FanData::from_fan(f)?).expect("fan serializes"))
}

fn search_json(outcome: &SearchOutcome) -> Result<Value, Failure> {
    Ok(json!({
        "count": outcome.fans.len(),
        "fans": outcome
            .fans
            .iter()
            .map(fan_json)
            .collect::<Result<Vec<_>, _>>()?,
    }))
}

fn covector_json(c: &RationalCovector) -> Value {
    json!(c.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn obstruction_json(
    params: &FamilyParams,
    report: &ObstructionReport,
) -> Result<Value, Failure> {
    let coeffs = match params {
        FamilyParams::Axis { coeffs } => coeffs.clone(),
        _ => Vec::new(),
    };
    Ok(json!({
        "coefficients": coeffs,
        "forced_cell": cone_json(&report.forced_cell)?,
        "hyperplane": covector_json(&report.hyperplane),
        "missed_ray": vector_to_i64(&report.missed_ray)?,
        "value": report.value.to_string(),
        "obstructed": report.is_obstructed(),
    }))
}

fn chain_json(report: &ChainReport) -> Result<Value, Failure> {
    let cells = |steps: &[toric_core::families::ChainStep]| -> Result<Value, Failure> {
        let out: Vec<Vec<Vec<i64>>> = steps
            .iter()
            .map(|s| {
                s.cell
                    .iter()
                    .map(vector_to_i64)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(json!(out))
    };
    Ok(json!({
        "a": report.a,
        "r": report.r,
        "b": report.b,
        "l_sequence": report.l_sequence,
        "chain_through_e1_e4": cells(&report.chain_through_e1_e4)?,
        "chain_through_e2_e3": cells(&report.chain_through_e2_e3)?,
        "clash_cone_a": report
            .clash_cone_a
            .iter()
            .map(vector_to_i64)
            .collect::<Result<Vec<_>, _>>()?,
        "clash_cone_b": report
            .clash_cone_b
            .iter()
            .map(vector_to_i64)
            .collect::<Result<Vec<_>, _>>()?,
        "clash_ray": vector_to_i64(&report.clash_ray)?,
        "holds": true,
    }))
}
