//! Grid sweeps comparing the sphere criterion with the brute-force oracle.

use johnson_core::eigen::vanishes_on;
use johnson_core::{
    counterexample_sphere, criterion, hypothesis_holds, is_eigenfunction, multiplicity, sphere,
    Error, ExactInt, JohnsonParams, Oracle, Reason, Result, SphereSpec, Verdict, Vertex,
};
use rayon::prelude::*;
use serde::Serialize;

/// One line of the verdict CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictRow {
    pub n: usize,
    pub w: usize,
    pub i: usize,
    pub r: usize,
    pub criterion_verdict: String,
    pub oracle_verdict: String,
    /// Empty when the criterion is ill-posed.
    pub agreement: Option<bool>,
    pub failing_k1: Option<usize>,
    pub failing_k2: Option<usize>,
    #[serde(rename = "which_F")]
    pub which_f: Option<String>,
}

/// A row plus every invariant violation found while producing it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub row: VerdictRow,
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    /// Criterion and oracle at the canonical center only.
    Table,
    /// Also center independence, eigenspace dimension and counterexamples.
    Verify,
}

/// `(params, i, r)` triples with `n <= n_max` inside the sufficiency bound,
/// sorted by `(n, w, i, r)`.
pub fn verify_grid(n_max: usize) -> Result<Vec<(JohnsonParams, usize, usize)>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for w in 0..=n / 2 {
            let p = JohnsonParams::new(n, w)?;
            for i in 0..=w {
                for r in 0..=w {
                    if hypothesis_holds(i, r, p) {
                        out.push((p, i, r));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Valid `(params, i, r)` triples in the given ranges; `n < 2w` and `r > w`
/// are skipped.
pub fn table_grid(
    w: usize,
    i: usize,
    r_range: (usize, usize),
    n_range: (usize, usize),
) -> Result<Vec<(JohnsonParams, usize, usize)>> {
    let mut out = Vec::new();
    if i > w {
        return Ok(out);
    }
    for n in n_range.0.max(2 * w)..=n_range.1 {
        let p = JohnsonParams::new(n, w)?;
        for r in r_range.0..=r_range.1.min(w) {
            out.push((p, i, r));
        }
    }
    Ok(out)
}

fn label(unique: bool) -> &'static str {
    if unique {
        "reconstructible"
    } else {
        "not_reconstructible"
    }
}

fn centers(p: JohnsonParams) -> Result<Vec<Vertex>> {
    let count = p.vertex_count();
    let mut idx = vec![0, count / 2, count - 1];
    idx.dedup();
    idx.into_iter().map(|k| p.unrank(k)).collect()
}

pub fn evaluate(
    oracle: &Oracle,
    p: JohnsonParams,
    i: usize,
    r: usize,
    depth: Depth,
) -> Result<Instance> {
    let x0 = p.canonical_center();
    let verdict = oracle.sphere(i, r, p, &x0)?;
    let mut problems = Vec::new();
    let tag = format!("(n,w,i,r)=({},{},{i},{r})", p.n(), p.w());
    let report = match criterion(i, r, p) {
        Err(Error::IllPosed(msg)) => {
            if hypothesis_holds(i, r, p) {
                problems.push(format!("{tag}: {msg}"));
            }
            return Ok(Instance {
                row: VerdictRow {
                    n: p.n(),
                    w: p.w(),
                    i,
                    r,
                    criterion_verdict: "ill_posed".into(),
                    oracle_verdict: label(verdict.unique).to_string(),
                    agreement: None,
                    failing_k1: None,
                    failing_k2: None,
                    which_f: None,
                },
                problems,
            });
        }
        other => other?,
    };
    let agreement = report.verdict.is_reconstructible() == verdict.unique;
    if !agreement && !report.is_advisory() {
        problems.push(format!(
            "{tag}: criterion {} but oracle {}",
            report.label(),
            label(verdict.unique)
        ));
    }
    if depth == Depth::Verify {
        let basis = oracle.basis(p, i)?;
        let expected = multiplicity(i as i64, p.n() as i64)?;
        if ExactInt::from(basis.dim()) != expected {
            problems.push(format!(
                "{tag}: eigenspace dimension {} != {expected}",
                basis.dim()
            ));
        }
        for c in centers(p)?.into_iter().skip(1) {
            if oracle.sphere(i, r, p, &c)?.unique != verdict.unique {
                problems.push(format!("{tag}: oracle verdict changes at center {c}"));
            }
        }
        if !report.verdict.is_reconstructible() {
            let s = sphere(&SphereSpec::new(x0, r))?;
            match counterexample_sphere(i, r, p) {
                Ok(f) if !f.is_zero() && is_eigenfunction(&f, i) && vanishes_on(&f, &s) => {}
                Ok(_) => problems.push(format!("{tag}: counterexample failed its check")),
                Err(e) => problems.push(format!("{tag}: no counterexample: {e}")),
            }
        }
    }
    let (k1, k2, which) = match report.verdict {
        Verdict::NotReconstructible(Reason::Vanishing { k1, k2, which }) => {
            (Some(k1), Some(k2), Some(which.to_string()))
        }
        _ => (None, None, None),
    };
    Ok(Instance {
        row: VerdictRow {
            n: p.n(),
            w: p.w(),
            i,
            r,
            criterion_verdict: report.label().to_string(),
            oracle_verdict: label(verdict.unique).to_string(),
            agreement: Some(agreement),
            failing_k1: k1,
            failing_k2: k2,
            which_f: which,
        },
        problems,
    })
}

/// Evaluates every instance on a pool of `jobs` threads. The result keeps
/// the order of `grid`.
pub fn run_grid(
    oracle: &Oracle,
    grid: &[(JohnsonParams, usize, usize)],
    depth: Depth,
    jobs: usize,
) -> Result<Vec<Instance>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        grid.par_iter()
            .map(|&(p, i, r)| evaluate(oracle, p, i, r, depth))
            .collect()
    })
}

/// CSV text with a header line, rows in the given order.
pub fn to_csv(rows: impl IntoIterator<Item = VerdictRow>) -> String {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let mut any = false;
    for row in rows {
        wtr.serialize(row).expect("in-memory csv");
        any = true;
    }
    if !any {
        wtr.write_record([
            "n",
            "w",
            "i",
            "r",
            "criterion_verdict",
            "oracle_verdict",
            "agreement",
            "failing_k1",
            "failing_k2",
            "which_F",
        ])
        .expect("in-memory csv");
    }
    String::from_utf8(wtr.into_inner().expect("flush")).expect("utf8 csv")
}
