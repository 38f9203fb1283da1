//! `johnson` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

pub mod sweep;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use johnson_core::eigen::parse_rational;
use johnson_core::{
    counterexample_sphere, criterion, difference, eberlein, eigenvalue, f0, induce, lift, lift_at,
    multiplicity, radial, BasisRoute, CriterionReport, Error, JohnsonParams, Oracle, Reason,
    ReconstructionResult, SphereSpec, Verdict, Vertex, VertexFunction,
};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::sweep::Depth;

#[derive(Debug, Parser)]
#[command(
    name = "johnson",
    version,
    about = "Exact eigenfunctions of Johnson graphs"
)]
pub struct Cli {
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Route {
    Nullspace,
    Tableau,
}

impl From<Route> for BasisRoute {
    fn from(r: Route) -> Self {
        match r {
            Route::Nullspace => BasisRoute::Nullspace,
            Route::Tableau => BasisRoute::Tableau,
        }
    }
}

#[derive(Debug, Args)]
pub struct Instance {
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub w: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// E_k(i, w, n).
    Eberlein {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        i: i64,
        #[arg(long)]
        w: i64,
        #[arg(long)]
        n: i64,
    },
    /// λ_i(n, w) = (w − i)(n − w − i) − i.
    Eigenvalue {
        #[arg(long)]
        i: i64,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        w: i64,
    },
    /// C(n, i) − C(n, i − 1).
    Multiplicity {
        #[arg(long)]
        i: i64,
        #[arg(long)]
        n: i64,
    },
    /// Sphere reconstruction criterion with every F1/F2 evaluation.
    Criterion {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force uniqueness on a sphere (or ball) around a center.
    Oracle {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        ball: bool,
        /// Bitstring; defaults to 1^w 0^(n−w).
        #[arg(long)]
        center: Option<String>,
        #[arg(long, value_enum, default_value = "nullspace")]
        route: Route,
        /// Save a nonzero eigenfunction vanishing on the set, if one exists.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Build an eigenfunction and print it as JSON.
    #[command(subcommand)]
    Construct(Construct),
    /// Recover an eigenfunction from its values on a sphere (or ball).
    Reconstruct {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        ball: bool,
        #[arg(long)]
        center: String,
        /// JSON object mapping bitstrings to rationals ("p/q").
        #[arg(long)]
        values: PathBuf,
        #[arg(long, value_enum, default_value = "nullspace")]
        route: Route,
    },
    /// Criterion against oracle on every instance with n <= n-max inside
    /// the sufficiency bound, plus the invariant checks; writes the verdict CSV.
    Verify {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "tableau")]
        route: Route,
    },
    /// Criterion/oracle CSV for fixed w and i over ranges of r and n.
    Table {
        #[arg(long)]
        w: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        r_min: usize,
        #[arg(long)]
        r_max: usize,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "tableau")]
        route: Route,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Radial λ_i-eigenfunction, 1 at the center.
    Radial {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        center: Option<String>,
    },
    /// f0: ±1 on words with one 1 in each pair (j, j + i).
    F0 {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        n: usize,
    },
    /// Extend to J(n + 2, w + 1); new coordinates at the end unless given.
    Lift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, requires = "p2")]
        p1: Option<usize>,
        #[arg(long, requires = "p1")]
        p2: Option<usize>,
    },
    /// f(y, 1, 0) − f(y, 0, 1) over coordinates j1 < j2.
    Difference {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        j1: usize,
        #[arg(long)]
        j2: usize,
    },
    /// Inducing operator to weight target-w.
    Induce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        target_w: usize,
    },
    /// Nonzero eigenfunction vanishing on S_r(1^w 0^(n−w)) when the
    /// criterion fails.
    Counterexample {
        #[command(flatten)]
        inst: Instance,
    },
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) | Error::IllPosed(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn emit(output: &Option<PathBuf>, text: &str) -> Outcome {
    match output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text)
        .map_err(|e| Failure::Verification(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_function(path: &Path) -> std::result::Result<VertexFunction, Failure> {
    Ok(VertexFunction::from_json(&read_file(path)?)?)
}

fn center_or_default(
    params: JohnsonParams,
    center: &Option<String>,
) -> std::result::Result<Vertex, Failure> {
    match center {
        None => Ok(params.canonical_center()),
        Some(s) => {
            let v: Vertex = s.parse()?;
            if !params.contains(&v) {
                return Err(Failure::Usage(format!(
                    "center {s} is not a vertex of {params}"
                )));
            }
            Ok(v)
        }
    }
}

fn jobs_or_default(jobs: Option<usize>) -> usize {
    jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn reason_text(reason: &Reason) -> String {
    match reason {
        Reason::RadiusBelowIndex => "radius below index (i > r)".into(),
        Reason::RadiusAboveCoindex => "radius above w - i".into(),
        Reason::Vanishing { k1, k2, which } => format!("failing {which} at ({k1},{k2})"),
    }
}

fn value_text(v: &Option<BigRational>) -> String {
    v.as_ref()
        .map_or_else(|| "undefined".into(), ToString::to_string)
}

fn criterion_text(rep: &CriterionReport) -> String {
    let mut out = String::new();
    match &rep.verdict {
        Verdict::Reconstructible => out.push_str("Reconstructible"),
        Verdict::NotReconstructible(reason) => {
            out.push_str(&format!("NotReconstructible, {}", reason_text(reason)))
        }
    }
    if rep.is_advisory() {
        out.push_str(" (advisory: n below max(w+r+i, 2w, w+2r+2))");
    }
    out.push('\n');
    for e in &rep.evaluations {
        out.push_str(&format!(
            "{}({},{}) = {}\n",
            e.which,
            e.k1,
            e.k2,
            value_text(&e.value)
        ));
    }
    out
}

fn criterion_json(rep: &CriterionReport) -> Value {
    let reason = match &rep.verdict {
        Verdict::Reconstructible => Value::Null,
        Verdict::NotReconstructible(Reason::RadiusBelowIndex) => {
            json!({"kind": "radius_below_index"})
        }
        Verdict::NotReconstructible(Reason::RadiusAboveCoindex) => {
            json!({"kind": "radius_above_coindex"})
        }
        Verdict::NotReconstructible(Reason::Vanishing { k1, k2, which }) => {
            json!({"kind": "vanishing", "k1": k1, "k2": k2, "which": which.to_string()})
        }
    };
    let evaluations: Vec<Value> = rep
        .evaluations
        .iter()
        .map(|e| {
            json!({
                "k1": e.k1,
                "k2": e.k2,
                "which": e.which.to_string(),
                "value": e.value.as_ref().map(ToString::to_string),
            })
        })
        .collect();
    json!({
        "n": rep.params.n(),
        "w": rep.params.w(),
        "i": rep.i,
        "r": rep.r,
        "verdict": rep.label(),
        "radius_window_ok": rep.radius_window_ok,
        "hypothesis_ok": rep.hypothesis_ok,
        "reason": reason,
        "evaluations": evaluations,
    })
}

fn function_value(f: &VertexFunction) -> Value {
    serde_json::from_str(&f.to_json()).expect("own json parses")
}

fn parse_values(text: &str) -> std::result::Result<BTreeMap<Vertex, BigRational>, Failure> {
    let raw: BTreeMap<String, Value> =
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("values file: {e}")))?;
    raw.into_iter()
        .map(|(k, v)| {
            let x: Vertex = k.parse()?;
            let q = match v {
                Value::String(s) => parse_rational(&s)?,
                Value::Number(n) if n.is_i64() => parse_rational(&n.to_string())?,
                other => {
                    return Err(Failure::Usage(format!(
                        "value for {k} is not a rational: {other}"
                    )))
                }
            };
            Ok((x, q))
        })
        .collect()
}

fn construct(cmd: Construct) -> std::result::Result<VertexFunction, Failure> {
    Ok(match cmd {
        Construct::Radial { i, w, n, center } => {
            let p = JohnsonParams::new(n, w)?;
            radial(p, &center_or_default(p, &center)?, i)?
        }
        Construct::F0 { i, w, n } => f0(JohnsonParams::new(n, w)?, i)?,
        Construct::Lift { input, p1, p2 } => {
            let f = read_function(&input)?;
            match (p1, p2) {
                (Some(a), Some(b)) => lift_at(&f, a, b)?,
                _ => lift(&f)?,
            }
        }
        Construct::Difference { input, j1, j2 } => difference(&read_function(&input)?, j1, j2)?,
        Construct::Induce { input, target_w } => induce(&read_function(&input)?, target_w)?,
        Construct::Counterexample { inst } => {
            counterexample_sphere(inst.i, inst.r, JohnsonParams::new(inst.n, inst.w)?)?
        }
    })
}

fn sweep(
    output: &Option<PathBuf>,
    grid: &[(JohnsonParams, usize, usize)],
    depth: Depth,
    jobs: Option<usize>,
    route: Route,
) -> Outcome {
    let oracle = Oracle::new(route.into());
    let results = sweep::run_grid(&oracle, grid, depth, jobs_or_default(jobs))?;
    let problems: Vec<&String> = results.iter().flat_map(|r| &r.problems).collect();
    emit(
        output,
        &sweep::to_csv(results.iter().map(|r| r.row.clone())),
    )?;
    for p in &problems {
        eprintln!("{p}");
    }
    eprintln!("{} instances, {} problems", results.len(), problems.len());
    if problems.is_empty() || depth == Depth::Table {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} invariant failures",
            problems.len()
        )))
    }
}

pub fn execute(cli: Cli) -> Outcome {
    let out = &cli.output;
    match cli.command {
        Command::Eberlein { k, i, w, n } => emit(out, &format!("{}\n", eberlein(k, i, w, n)?)),
        Command::Eigenvalue { i, n, w } => emit(out, &format!("{}\n", eigenvalue(i, n, w)?)),
        Command::Multiplicity { i, n } => emit(out, &format!("{}\n", multiplicity(i, n)?)),
        Command::Criterion { inst, json } => {
            let rep = criterion(inst.i, inst.r, JohnsonParams::new(inst.n, inst.w)?)?;
            if json {
                emit(out, &format!("{}\n", criterion_json(&rep)))
            } else {
                emit(out, &criterion_text(&rep))
            }
        }
        Command::Oracle {
            inst,
            ball,
            center,
            route,
            witness,
        } => {
            let p = JohnsonParams::new(inst.n, inst.w)?;
            let x = center_or_default(p, &center)?;
            let oracle = Oracle::new(route.into());
            let verdict = if ball {
                oracle.ball(inst.i, inst.r, p, &x)?
            } else {
                oracle.sphere(inst.i, inst.r, p, &x)?
            };
            if let (Some(path), Some(f)) = (&witness, &verdict.witness) {
                write_file(path, &f.to_json())?;
            }
            emit(
                out,
                if verdict.unique {
                    "unique\n"
                } else {
                    "not_unique\n"
                },
            )
        }
        Command::Construct(cmd) => emit(out, &construct(cmd)?.to_json()),
        Command::Reconstruct {
            inst,
            ball,
            center,
            values,
            route,
        } => {
            let p = JohnsonParams::new(inst.n, inst.w)?;
            let spec = SphereSpec::new(center_or_default(p, &Some(center))?, inst.r);
            let given = parse_values(&read_file(&values)?)?;
            let oracle = Oracle::new(route.into());
            let result = if ball {
                oracle.reconstruct_from_ball(inst.i, &spec, &given)?
            } else {
                oracle.reconstruct_from_sphere(inst.i, &spec, &given)?
            };
            let doc = match result {
                ReconstructionResult::Unique(f) => {
                    json!({"result": "unique", "function": function_value(&f)})
                }
                ReconstructionResult::NotUnique {
                    particular,
                    witness,
                } => json!({
                    "result": "not_unique",
                    "particular": function_value(&particular),
                    "witness": function_value(&witness),
                }),
                ReconstructionResult::Inconsistent => json!({"result": "inconsistent"}),
            };
            emit(out, &format!("{doc}\n"))
        }
        Command::Verify { n_max, jobs, route } => {
            let grid = sweep::verify_grid(n_max)?;
            sweep(out, &grid, Depth::Verify, jobs, route)
        }
        Command::Table {
            w,
            i,
            r_min,
            r_max,
            n_min,
            n_max,
            jobs,
            route,
        } => {
            if r_min > r_max || n_min > n_max {
                return Err(Failure::Usage("empty range".into()));
            }
            let grid = sweep::table_grid(w, i, (r_min, r_max), (n_min, n_max))?;
            sweep(out, &grid, Depth::Table, jobs, route)
        }
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}
