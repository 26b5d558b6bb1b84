//! The `mcgfix` command line: JSON in, JSON out.
//!
//! Exit codes: 0 on success, 1 on domain errors (a JSON error object is
//! printed on standard output) and 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::classify::classify_symplectic_detailed;
use crate::analysis::{
    circumcenter, displacement, helly_check_euclidean, helly_check_tree, translation_length_estimate, Budget, Isometry, Polytope,
    Subtree,
};
use crate::engine::{derive_with_hypothesis, verify_json, Hypothesis};
use crate::error::{AnalysisError, EngineError, GeometryError, SurfaceError};
use crate::model::{MetricTree, ModelPoint, SpaceDescriptor, SymplecticMatrix};
use crate::surface::{
    check_copies_witness, check_relations, disjoint_copies_witness, enveloping_subsurface, neighborhood, twist_matrix,
    verify_prop52, LickorishSystem, SubsurfaceType,
};

/// Environment variable holding the default `--seed`.
pub const SEED_ENV: &str = "MCGFIX_SEED";

#[derive(Debug, Parser)]
#[command(name = "mcgfix", version, about = "Fixed points of mapping class group actions on CAT(0) model spaces")]
struct Cli {
    /// Seed for randomised searches.
    #[arg(long, global = true, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct JsonInput {
    /// JSON input file.
    #[arg(required_unless_present = "json")]
    input: Option<PathBuf>,
    /// Inline JSON input.
    #[arg(long, conflicts_with = "input")]
    json: Option<String>,
}

#[derive(Debug, Args)]
struct GenusArg {
    #[arg(long)]
    genus: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HypothesisArg {
    Semisimple,
    NoNonNeutralParabolics,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify an integer symplectic matrix acting on the Siegel space.
    Classify(JsonInput),
    /// Distance between two points, and optionally a point on the geodesic.
    Distance(JsonInput),
    /// Center and radius of the minimal enclosing ball of a finite set.
    Circumcenter(JsonInput),
    /// Estimate the translation length of an isometry.
    TranslationLength(JsonInput),
    /// The Lickorish curves and their ribbon data.
    Lickorish(GenusArg),
    /// Regular neighborhood of a set of Lickorish curves.
    Neighborhood {
        #[arg(long)]
        genus: usize,
        /// Comma separated labels such as `a1,b1,c1`.
        #[arg(long)]
        curves: String,
    },
    /// Check the envelope bound on every connected subset of curves.
    #[command(name = "verify-prop52")]
    VerifyProp52(GenusArg),
    /// Disjoint copies of a subsurface type with connected complements.
    WitnessCopies {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        type_genus: usize,
        #[arg(long)]
        boundary: usize,
        #[arg(long, allow_negative_numbers = true)]
        count: i64,
    },
    /// Action of a Dehn twist on first homology.
    TwistMatrix {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        curve: String,
    },
    /// Commutation and braid relations among the twist matrices.
    CheckRelations(GenusArg),
    /// Derive a fixed-point certificate for genus `g` and dimension `d`.
    Derive {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value = "no-non-neutral-parabolics")]
        hypothesis: HypothesisArg,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a certificate file.
    Verify { path: PathBuf },
    /// Helly check for subtrees of a metric tree.
    HellyTree(JsonInput),
    /// Helly check for convex polytopes in Euclidean space.
    HellyEuclid(JsonInput),
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl CliError {
    fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Input(_) => "invalid_input",
            CliError::Io(_) => "io",
            CliError::Geometry(_) => "geometry",
            CliError::Analysis(_) => "analysis",
            CliError::Surface(_) => "surface",
            CliError::Engine(EngineError::Derivation(_)) => "derivation",
            CliError::Engine(_) => "engine",
        };
        let mut err = json!({ "kind": kind, "message": self.to_string() });
        if let CliError::Engine(EngineError::Derivation(f)) = self {
            err["details"] = serde_json::to_value(f).unwrap_or(Value::Null);
        }
        json!({ "error": err })
    }
}

fn read_input<T: DeserializeOwned>(input: &JsonInput) -> Result<T, CliError> {
    let text = match (&input.json, &input.input) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => read_file(p)?,
        (None, None) => return Err(CliError::Input("no input given".into())),
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed input: {e}")))
}

fn read_file(p: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
}

/// Rounds every non-integer number to 12 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => {
            if let Some(f) = n.as_f64() {
                let r: f64 = format!("{f:.11e}").parse().unwrap_or(f);
                if let Some(m) = serde_json::Number::from_f64(r) {
                    *n = m;
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("output types serialize")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixInput {
    entries: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DistanceInput {
    space: SpaceDescriptor,
    p: ModelPoint,
    q: ModelPoint,
    #[serde(default)]
    t: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CircumcenterInput {
    space: SpaceDescriptor,
    points: Vec<ModelPoint>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TranslationInput {
    space: SpaceDescriptor,
    isometry: Isometry,
    #[serde(default)]
    budget: Option<Budget>,
    #[serde(default)]
    point: Option<ModelPoint>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HellyTreeInput {
    tree: MetricTree,
    subtrees: Vec<Subtree>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HellyEuclidInput {
    dim: usize,
    polytopes: Vec<Polytope>,
}

/// Outcome of a command: JSON to print and the exit code.
struct Output {
    value: Value,
    code: i32,
}

impl From<Value> for Output {
    fn from(value: Value) -> Self {
        Output { value, code: 0 }
    }
}

fn execute(cli: Cli) -> Result<Output, CliError> {
    Ok(match cli.command {
        Command::Classify(input) => {
            let m: MatrixInput = read_input(&input)?;
            let m = SymplecticMatrix::from_rows(&m.entries)?;
            to_value(&classify_symplectic_detailed(&m)).into()
        }
        Command::Distance(input) => {
            let x: DistanceInput = read_input(&input)?;
            let d = x.space.distance(&x.p, &x.q)?;
            let mut out = json!({ "distance": d });
            if let Some(t) = x.t {
                out["point"] = to_value(&x.space.geodesic_point(&x.p, &x.q, t)?);
            }
            out.into()
        }
        Command::Circumcenter(input) => {
            let x: CircumcenterInput = read_input(&input)?;
            to_value(&circumcenter(&x.space, &x.points)?).into()
        }
        Command::TranslationLength(input) => {
            let x: TranslationInput = read_input(&input)?;
            let budget = x.budget.unwrap_or(Budget { seed: cli.seed, ..Budget::default() });
            let est = translation_length_estimate(&x.space, &x.isometry, &budget)?;
            let mut out = to_value(&est);
            if let Some(p) = &x.point {
                out["displacement"] = json!(displacement(&x.space, &x.isometry, p)?);
            }
            out.into()
        }
        Command::Lickorish(GenusArg { genus }) => to_value(&LickorishSystem::new(genus)?.summary()).into(),
        Command::Neighborhood { genus, curves } => {
            let sys = LickorishSystem::new(genus)?;
            let s = sys.parse_set(&curves)?;
            let mut out = to_value(&neighborhood(&sys, s)?);
            let connected = sys.is_connected_subset(s)?;
            out["connected"] = json!(connected);
            if connected {
                let env = enveloping_subsurface(&sys, s)?;
                out["envelope"] = to_value(env.best());
                out["envelope_candidates"] = to_value(&env.candidates);
            }
            out.into()
        }
        Command::VerifyProp52(GenusArg { genus }) => to_value(&verify_prop52(genus)?).into(),
        Command::WitnessCopies { genus, type_genus, boundary, count } => {
            let sys = LickorishSystem::new(genus)?;
            if count <= 0 {
                return Err(SurfaceError::NonPositiveCount.into());
            }
            let w = disjoint_copies_witness(&sys, SubsurfaceType::new(type_genus, boundary), count as usize)?;
            let mut out = to_value(&w);
            out["block_labels"] = to_value(&w.blocks.iter().map(|&b| sys.labels_of(b)).collect::<Vec<_>>());
            out["verified"] = json!(check_copies_witness(&sys, &w).is_ok());
            out.into()
        }
        Command::TwistMatrix { genus, curve } => {
            let sys = LickorishSystem::new(genus)?;
            let c = sys.parse_curve(&curve)?;
            let m = twist_matrix(&sys, c);
            json!({
                "curve": sys.label(c),
                "homology": sys.homology(c),
                "entries": m.rows(),
                "classification": to_value(&classify_symplectic_detailed(&m)),
            })
            .into()
        }
        Command::CheckRelations(GenusArg { genus }) => {
            let report = check_relations(&LickorishSystem::new(genus)?);
            let code = if report.all_hold { 0 } else { 1 };
            Output { value: to_value(&report), code }
        }
        Command::Derive { genus, dim, hypothesis, out } => {
            let hypothesis = match hypothesis {
                HypothesisArg::Semisimple => Hypothesis::Semisimple,
                HypothesisArg::NoNonNeutralParabolics => Hypothesis::NoNonNeutralParabolics,
            };
            let cert = derive_with_hypothesis(genus, dim, hypothesis)?;
            match out {
                Some(path) => {
                    let text = serde_json::to_string(&cert).expect("certificate serializes");
                    std::fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    json!({
                        "out": path.display().to_string(),
                        "context": to_value(&cert.context),
                        "facts": cert.facts.len(),
                        "conclusion": to_value(&cert.conclusion),
                    })
                    .into()
                }
                None => to_value(&cert).into(),
            }
        }
        Command::Verify { path } => {
            let report = verify_json(&read_file(&path)?);
            let code = if report.valid { 0 } else { 1 };
            Output { value: to_value(&report), code }
        }
        Command::HellyTree(input) => {
            let x: HellyTreeInput = read_input(&input)?;
            to_value(&helly_check_tree(&x.tree, &x.subtrees)?).into()
        }
        Command::HellyEuclid(input) => {
            let x: HellyEuclidInput = read_input(&input)?;
            to_value(&helly_check_euclidean(x.dim, &x.polytopes)?).into()
        }
    })
}

fn emit(out: &mut dyn Write, mut v: Value) {
    round_floats(&mut v);
    let text = serde_json::to_string_pretty(&v).expect("json value serializes");
    let _ = writeln!(out, "{text}");
}

/// Runs the command line on `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    match execute(cli) {
        Ok(o) => {
            emit(out, o.value);
            o.code
        }
        Err(e) => {
            emit(out, e.to_json());
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
