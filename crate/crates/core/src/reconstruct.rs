//! Reconstruction of eigenfunctions from their values on a sphere or a ball.
//!
//! Two independent routes answer the same question. [`criterion`] decides
//! sphere reconstructability from closed-form `F1`/`F2` evaluations, while
//! [`Oracle`] restricts an exact eigenspace basis to the set and inspects the
//! kernel of the restriction. [`counterexample_sphere`] turns a negative
//! verdict into an explicit eigenfunction vanishing on the sphere.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;

use crate::combinatorics::{binom_ext, eberlein_ext};
use crate::eigen::{
    is_eigenfunction, lift_at, paired_function, vanishes_on, BasisCache, BasisRoute,
    EigenspaceBasis, VertexFunction,
};
use crate::error::{Error, Result};
use crate::graph::{ball, sphere, JohnsonParams, SphereSpec, Vertex};
use crate::linalg::{nullspace, solve, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WhichF {
    F1,
    F2,
}

impl fmt::Display for WhichF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WhichF::F1 => "F1",
            WhichF::F2 => "F2",
        })
    }
}

/// `F1(k1, k2, i, r, w, n)`, defined for `k1 <= k2`:
///
/// `Σ_{s=0}^{k2−k1} C(r−k1, s) C(n−w−k2−r, k2−k1−s) E_{r−k1−s}(i−k1−k2, w−2k1, n−2k1−2k2)
///  / (C(w−2k1, r−k1−s) C(n−w−2k2, r−k1−s))`.
pub fn f1(k1: i64, k2: i64, i: i64, r: i64, w: i64, n: i64) -> Result<BigRational> {
    if k1 < 0 || k1 > k2 {
        return Err(Error::InvalidArgument(format!(
            "F1 needs 0 <= k1 <= k2, got k1={k1}, k2={k2}"
        )));
    }
    let (ei, ew, en) = (i - k1 - k2, w - 2 * k1, n - 2 * (k1 + k2));
    let mut acc = BigRational::zero();
    for s in 0..=k2 - k1 {
        let dist = r - k1 - s;
        let den = binom_ext(w - 2 * k1, dist) * binom_ext(n - w - 2 * k2, dist);
        if den.is_zero() {
            return Err(ill_posed(WhichF::F1, k1, k2, i, r, w, n, s));
        }
        let num = binom_ext(r - k1, s)
            * binom_ext(n - w - k2 - r, k2 - k1 - s)
            * eberlein_ext(dist, ei, ew, en);
        acc += BigRational::new(num, den);
    }
    Ok(acc)
}

/// `F2(k1, k2, i, r, w, n)`, defined for `k1 >= k2`:
///
/// `Σ_{s=0}^{k1−k2} C(w−r−k1, s) C(r−k2, k1−k2−s) E_{r−k1+s}(i−k1−k2, w−2k1, n−2k1−2k2)
///  / (C(w−2k1, r−k1+s) C(n−w−2k2, r−k1+s))`.
pub fn f2(k1: i64, k2: i64, i: i64, r: i64, w: i64, n: i64) -> Result<BigRational> {
    if k2 < 0 || k2 > k1 {
        return Err(Error::InvalidArgument(format!(
            "F2 needs 0 <= k2 <= k1, got k1={k1}, k2={k2}"
        )));
    }
    let (ei, ew, en) = (i - k1 - k2, w - 2 * k1, n - 2 * (k1 + k2));
    let mut acc = BigRational::zero();
    for s in 0..=k1 - k2 {
        let dist = r - k1 + s;
        let den = binom_ext(w - 2 * k1, dist) * binom_ext(n - w - 2 * k2, dist);
        if den.is_zero() {
            return Err(ill_posed(WhichF::F2, k1, k2, i, r, w, n, s));
        }
        let num = binom_ext(w - r - k1, s)
            * binom_ext(r - k2, k1 - k2 - s)
            * eberlein_ext(dist, ei, ew, en);
        acc += BigRational::new(num, den);
    }
    Ok(acc)
}

#[allow(clippy::too_many_arguments)]
fn ill_posed(which: WhichF, k1: i64, k2: i64, i: i64, r: i64, w: i64, n: i64, s: i64) -> Error {
    Error::IllPosed(format!(
        "{which}(k1={k1}, k2={k2}, i={i}, r={r}, w={w}, n={n}) has a zero denominator binomial at s={s}"
    ))
}

/// A single `F1`/`F2` evaluation. `value` is `None` when a denominator vanished.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub k1: usize,
    pub k2: usize,
    pub which: WhichF,
    pub value: Option<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    /// `i > r`.
    RadiusBelowIndex,
    /// `r > w − i`.
    RadiusAboveCoindex,
    /// Some `F1`/`F2` evaluation is zero.
    Vanishing { k1: usize, k2: usize, which: WhichF },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Reconstructible,
    NotReconstructible(Reason),
}

impl Verdict {
    pub fn is_reconstructible(&self) -> bool {
        matches!(self, Verdict::Reconstructible)
    }
}

/// Full record of a criterion evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub params: JohnsonParams,
    pub i: usize,
    pub r: usize,
    /// `i <= r <= w − i`.
    pub radius_window_ok: bool,
    /// `n >= max(w + r + i, 2w, w + 2r + 2)`.
    pub hypothesis_ok: bool,
    pub evaluations: Vec<Evaluation>,
    pub verdict: Verdict,
}

impl CriterionReport {
    /// Outside the `n` bound the verdict is computed but carries no guarantee.
    pub fn is_advisory(&self) -> bool {
        !self.hypothesis_ok
    }

    /// Short machine-readable verdict label.
    pub fn label(&self) -> &'static str {
        match (self.verdict.is_reconstructible(), self.is_advisory()) {
            (true, false) => "reconstructible",
            (false, false) => "not_reconstructible",
            (true, true) => "advisory_reconstructible",
            (false, true) => "advisory_not_reconstructible",
        }
    }
}

/// Whether `n >= max(w + r + i, 2w, w + 2r + 2)`.
pub fn hypothesis_holds(i: usize, r: usize, params: JohnsonParams) -> bool {
    let (n, w) = (params.n(), params.w());
    n >= (w + r + i).max(2 * w).max(w + 2 * r + 2)
}

/// `(k1, k2, which)` triples checked by the criterion, in evaluation order:
/// for each `t = k1 + k2 < i`, `F1` for `k1 <= ⌊t/2⌋` then `F2` for `k1 >= ⌈t/2⌉`.
pub fn evaluation_plan(i: usize) -> Vec<(usize, usize, WhichF)> {
    let mut plan = Vec::new();
    for t in 0..i {
        for k1 in 0..=t / 2 {
            plan.push((k1, t - k1, WhichF::F1));
        }
        for k1 in t.div_ceil(2)..=t {
            plan.push((k1, t - k1, WhichF::F2));
        }
    }
    plan
}

/// Sphere reconstructability of `λ_i`-eigenfunctions of `J(n, w)` from `S_r`.
///
/// When the radius window holds, an ill-posed evaluation aborts with
/// [`Error::IllPosed`]; otherwise ill-posed evaluations are recorded as `None`.
pub fn criterion(i: usize, r: usize, params: JohnsonParams) -> Result<CriterionReport> {
    let (n, w) = (params.n(), params.w());
    if i > w || r > w {
        return Err(Error::InvalidArgument(format!(
            "criterion needs i <= w and r <= w, got i={i}, r={r} on {params}"
        )));
    }
    let radius_window_ok = i <= r && r + i <= w;
    let mut evaluations = Vec::new();
    for (k1, k2, which) in evaluation_plan(i) {
        let args = (k1 as i64, k2 as i64, i as i64, r as i64, w as i64, n as i64);
        let value = match which {
            WhichF::F1 => f1(args.0, args.1, args.2, args.3, args.4, args.5),
            WhichF::F2 => f2(args.0, args.1, args.2, args.3, args.4, args.5),
        };
        let value = match value {
            Ok(v) => Some(v),
            Err(e @ Error::IllPosed(_)) if radius_window_ok => return Err(e),
            Err(Error::IllPosed(_)) => None,
            Err(e) => return Err(e),
        };
        evaluations.push(Evaluation {
            k1,
            k2,
            which,
            value,
        });
    }
    let verdict = if i > r {
        Verdict::NotReconstructible(Reason::RadiusBelowIndex)
    } else if r + i > w {
        Verdict::NotReconstructible(Reason::RadiusAboveCoindex)
    } else if let Some(e) = evaluations
        .iter()
        .find(|e| e.value.as_ref().is_some_and(Zero::is_zero))
    {
        Verdict::NotReconstructible(Reason::Vanishing {
            k1: e.k1,
            k2: e.k2,
            which: e.which,
        })
    } else {
        Verdict::Reconstructible
    };
    Ok(CriterionReport {
        params,
        i,
        r,
        radius_window_ok,
        hypothesis_ok: hypothesis_holds(i, r, params),
        evaluations,
        verdict,
    })
}

/// Brute-force answer: is the zero function the only eigenspace element
/// vanishing on the set?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub unique: bool,
    /// A nonzero eigenfunction vanishing on the set, when one exists.
    pub witness: Option<VertexFunction>,
}

/// Decides uniqueness for an explicit vertex set.
pub fn oracle_on_set(basis: &EigenspaceBasis, set: &[Vertex]) -> Result<OracleVerdict> {
    let restriction = basis.restriction_matrix(set)?;
    // coefficient vectors c with Σ c_k b_k = 0 on the set
    let kernel = nullspace(&restriction.transpose());
    match kernel.first() {
        None => Ok(OracleVerdict {
            unique: true,
            witness: None,
        }),
        Some(c) => Ok(OracleVerdict {
            unique: false,
            witness: Some(basis.combine(c)?),
        }),
    }
}

/// Outcome of reconstructing an eigenfunction from partial values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReconstructionResult {
    Unique(VertexFunction),
    /// The data is consistent but does not determine the function:
    /// `particular + t · witness` matches for every `t`.
    NotUnique {
        particular: VertexFunction,
        witness: VertexFunction,
    },
    /// No eigenfunction with this index takes the given values.
    Inconsistent,
}

/// Brute-force oracle and reconstruction solver over a shared basis cache.
pub struct Oracle {
    cache: BasisCache,
}

impl Oracle {
    pub fn new(route: BasisRoute) -> Self {
        Self {
            cache: BasisCache::new(route),
        }
    }

    pub fn cache(&self) -> &BasisCache {
        &self.cache
    }

    pub fn basis(
        &self,
        params: JohnsonParams,
        i: usize,
    ) -> Result<std::sync::Arc<EigenspaceBasis>> {
        self.cache.get(params, i)
    }

    pub fn sphere(
        &self,
        i: usize,
        r: usize,
        params: JohnsonParams,
        center: &Vertex,
    ) -> Result<OracleVerdict> {
        params.check_vertex(center)?;
        let set = sphere(&SphereSpec::new(*center, r))?;
        oracle_on_set(&*self.basis(params, i)?, &set)
    }

    pub fn ball(
        &self,
        i: usize,
        r: usize,
        params: JohnsonParams,
        center: &Vertex,
    ) -> Result<OracleVerdict> {
        params.check_vertex(center)?;
        let set = ball(&SphereSpec::new(*center, r));
        oracle_on_set(&*self.basis(params, i)?, &set)
    }

    pub fn reconstruct_from_ball(
        &self,
        i: usize,
        spec: &SphereSpec,
        given: &BTreeMap<Vertex, BigRational>,
    ) -> Result<ReconstructionResult> {
        let set = ball(spec);
        self.reconstruct_on(i, spec, &set, given)
    }

    pub fn reconstruct_from_sphere(
        &self,
        i: usize,
        spec: &SphereSpec,
        given: &BTreeMap<Vertex, BigRational>,
    ) -> Result<ReconstructionResult> {
        let set = sphere(spec)?;
        self.reconstruct_on(i, spec, &set, given)
    }

    fn reconstruct_on(
        &self,
        i: usize,
        spec: &SphereSpec,
        set: &[Vertex],
        given: &BTreeMap<Vertex, BigRational>,
    ) -> Result<ReconstructionResult> {
        let center = spec.center;
        let params = JohnsonParams::new(center.len(), center.weight())?;
        check_coverage(set, given)?;
        let basis = self.basis(params, i)?;
        let rhs: Vec<BigRational> = set.iter().map(|x| given[x].clone()).collect();
        let system = basis.restriction_matrix(set)?.transpose();
        Ok(match solve(&system, &rhs)? {
            Solution::Unique(c) => ReconstructionResult::Unique(basis.combine(&c)?),
            Solution::Underdetermined { particular, kernel } => ReconstructionResult::NotUnique {
                particular: basis.combine(&particular)?,
                witness: basis.combine(&kernel[0])?,
            },
            Solution::Inconsistent => ReconstructionResult::Inconsistent,
        })
    }
}

fn check_coverage(set: &[Vertex], given: &BTreeMap<Vertex, BigRational>) -> Result<()> {
    if let Some(missing) = set.iter().find(|x| !given.contains_key(x)) {
        return Err(Error::Coverage(format!(
            "no value given for vertex {missing}"
        )));
    }
    if given.len() != set.len() {
        let extra = given
            .keys()
            .find(|x| set.binary_search(x).is_err())
            .expect("extra key exists");
        return Err(Error::Coverage(format!(
            "vertex {extra} lies outside the target set"
        )));
    }
    Ok(())
}

/// A nonzero `λ_i`-eigenfunction of `J(n, w)` vanishing on `S_r(x_0)` for the
/// canonical center `x_0 = 1^w 0^{n−w}`.
///
/// The construction follows the failing condition of the criterion:
/// * `i > r`: a pair-difference product with `r + 1` pairs outside the
///   support of `x_0`, which vanishes on the whole ball `B_r(x_0)`;
/// * `r > w − i`: a pair-difference product with `w − r + 1` pairs inside
///   the support of `x_0`;
/// * a zero `F1`/`F2` at `(k1, k2)`: a radial function on the reduced graph,
///   induced to weight `w − k1 − k2` and lifted back through `k1` pairs
///   inside and `k2` pairs outside the support.
///
/// The result is always checked (nonzero, eigen-equation, zero on the
/// sphere) before it is returned.
pub fn counterexample_sphere(i: usize, r: usize, params: JohnsonParams) -> Result<VertexFunction> {
    let report = criterion(i, r, params)?;
    let reason = match report.verdict {
        Verdict::Reconstructible => return Err(Error::Reconstructible),
        Verdict::NotReconstructible(reason) => reason,
    };
    let f = match reason {
        Reason::RadiusBelowIndex => outside_pairs(i, r, params)?,
        Reason::RadiusAboveCoindex => inside_pairs(i, r, params)?,
        Reason::Vanishing { k1, k2, .. } => lifted_radial(i, k1, k2, params)?,
    };
    let x0 = params.canonical_center();
    let on_sphere = sphere(&SphereSpec::new(x0, r))?;
    if f.is_zero() || !is_eigenfunction(&f, i) || !vanishes_on(&f, &on_sphere) {
        return Err(Error::Consistency(format!(
            "counterexample for i={i}, r={r} on {params} ({reason:?}) failed its check"
        )));
    }
    Ok(f)
}

/// `i` disjoint pairs: `first` pairs drawn from `primary` coordinates, the rest
/// from whatever coordinates remain.
fn pairs_from(
    i: usize,
    first: usize,
    primary: &[usize],
    params: JohnsonParams,
) -> Result<Vec<(usize, usize)>> {
    if 2 * first > primary.len() || 2 * i > params.n() {
        return Err(Error::InvalidArgument(format!(
            "cannot place {first} of {i} pairs in {} coordinates on {params}",
            primary.len()
        )));
    }
    let mut pairs: Vec<(usize, usize)> = primary[..2 * first]
        .chunks(2)
        .map(|c| (c[0], c[1]))
        .collect();
    let rest: Vec<usize> = (1..=params.n())
        .filter(|c| !primary[..2 * first].contains(c))
        .collect();
    pairs.extend(rest[..2 * (i - first)].chunks(2).map(|c| (c[0], c[1])));
    Ok(pairs)
}

fn outside_pairs(i: usize, r: usize, params: JohnsonParams) -> Result<VertexFunction> {
    let outside: Vec<usize> = (params.w() + 1..=params.n()).collect();
    paired_function(params, &pairs_from(i, r + 1, &outside, params)?)
}

fn inside_pairs(i: usize, r: usize, params: JohnsonParams) -> Result<VertexFunction> {
    let w = params.w();
    if 2 * (w - r + 1) > w {
        return Err(Error::Consistency(format!(
            "r={r} > w-i but {} pairs do not fit inside a support of size {w}; \
             no vanishing pair placement exists for i={i} on {params}",
            w - r + 1
        )));
    }
    let inside: Vec<usize> = (1..=w).collect();
    paired_function(params, &pairs_from(i, params.w() - r + 1, &inside, params)?)
}

fn lifted_radial(i: usize, k1: usize, k2: usize, params: JohnsonParams) -> Result<VertexFunction> {
    let (n, w) = (params.n(), params.w());
    let reduced_n = n - 2 * (k1 + k2);
    let radial_w = w - 2 * k1;
    let index = i - k1 - k2;
    let inner = JohnsonParams::new(reduced_n, w - k1 - k2)?;
    let core = induced_radial(inner, radial_w, index)?;
    // New coordinate pairs, in final positions: (j, k1 + j) and (w + j, w + k2 + j).
    let pairs: Vec<(usize, usize)> = (1..=k1)
        .map(|j| (j, k1 + j))
        .chain((1..=k2).map(|j| (w + j, w + k2 + j)))
        .collect();
    let mut f = core;
    for (step, &(a, b)) in pairs.iter().enumerate() {
        let pending: Vec<usize> = pairs[step + 1..]
            .iter()
            .flat_map(|&(x, y)| [x, y])
            .collect();
        let shift = |p: usize| p - pending.iter().filter(|&&q| q < p).count();
        f = lift_at(&f, shift(a), shift(b))?;
    }
    Ok(f)
}

/// `I^{m,t}(h)` on `J(n', t)` for the radial `λ_index`-eigenfunction `h` of
/// `J(n', m)` centred at `1^m 0^{n'−m}`. `m` may exceed `n'/2`, so `h` is
/// never materialized; its value depends only on the distance to the centre.
fn induced_radial(target: JohnsonParams, m: usize, index: usize) -> Result<VertexFunction> {
    let (n, t) = (target.n(), target.w());
    if m > n || index > m.min(n - m) {
        return Err(Error::InvalidArgument(format!(
            "radial index {index} infeasible on J({n},{m})"
        )));
    }
    let (ni, mi, ii) = (n as i64, m as i64, index as i64);
    let profile: Vec<Option<BigRational>> = (0..=mi)
        .map(|d| {
            let den = binom_ext(mi, d) * binom_ext(ni - mi, d);
            (!den.is_zero()).then(|| BigRational::new(eberlein_ext(d, ii, mi, ni), den))
        })
        .collect();
    let center_mask: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let value = |mask: u64| -> BigRational {
        let d = m - (mask & center_mask).count_ones() as usize;
        profile[d].clone().expect("distance realized by a vertex")
    };
    Ok(VertexFunction::from_fn(target, |y| {
        let mut acc = BigRational::zero();
        if m >= t {
            let zeros: Vec<usize> = (0..n).filter(|&c| y.mask() >> c & 1 == 0).collect();
            for add in zeros.into_iter().combinations(m - t) {
                acc += value(add.iter().fold(y.mask(), |a, &c| a | 1 << c));
            }
        } else {
            let ones: Vec<usize> = (0..n).filter(|&c| y.mask() >> c & 1 == 1).collect();
            for keep in ones.into_iter().combinations(m) {
                acc += value(keep.iter().fold(0u64, |a, &c| a | 1 << c));
            }
        }
        acc
    }))
}
