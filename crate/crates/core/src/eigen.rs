//! Vertex functions on `J(n, w)`, eigenspace bases and the operators that
//! move eigenfunctions between Johnson graphs.
//!
//! Eigen-indices follow the enumeration `λ_0 > λ_1 > … > λ_w`. Each operator
//! has a known effect on the index:
//!
//! | operator | graph | index |
//! |---|---|---|
//! | [`difference`] | `J(n, w) → J(n − 2, w − 1)` | `i → i − 1` |
//! | [`lift`] | `J(n, w) → J(n + 2, w + 1)` | `i → i + 1` |
//! | [`induce`] | `J(n, j) → J(n, w)` | `i → i` |
//!
//! The all-zero function counts as a member of every eigenspace.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom_ext, eberlein_ext, eigenvalue_ext, factorial, multiplicity};
use crate::error::{Error, Result};
use crate::graph::{neighbors, unchecked_distance, JohnsonParams, SphereSpec, Vertex};
use crate::linalg::{nullspace, rank, RationalMatrix};

/// Exact rational values on every vertex of `J(n, w)`, indexed by colex rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFunction {
    params: JohnsonParams,
    values: Vec<BigRational>,
}

impl VertexFunction {
    pub fn new(params: JohnsonParams, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != params.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{params} has {} vertices, got {} values",
                params.vertex_count(),
                values.len()
            )));
        }
        Ok(Self { params, values })
    }

    pub fn zero(params: JohnsonParams) -> Self {
        Self::constant(params, BigRational::zero())
    }

    pub fn constant(params: JohnsonParams, c: BigRational) -> Self {
        Self {
            params,
            values: vec![c; params.vertex_count()],
        }
    }

    /// Evaluates `rule` at every vertex.
    pub fn from_fn(params: JohnsonParams, mut rule: impl FnMut(&Vertex) -> BigRational) -> Self {
        Self {
            params,
            values: params.vertices().map(|x| rule(&x)).collect(),
        }
    }

    pub fn params(&self) -> JohnsonParams {
        self.params
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigRational> {
        self.values
    }

    pub fn at(&self, x: &Vertex) -> &BigRational {
        debug_assert!(self.params.contains(x));
        &self.values[x.rank()]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Number of vertices with a nonzero value.
    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            params: self.params,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, other: &Self, c: &BigRational) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            params: self.params,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b * c)
                .collect(),
        })
    }

    pub fn restrict(&self, set: &[Vertex]) -> Result<Vec<BigRational>> {
        set.iter()
            .map(|x| {
                self.params.check_vertex(x)?;
                Ok(self.at(x).clone())
            })
            .collect()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamMismatch(format!(
                "functions live on {} and {}",
                self.params, other.params
            )));
        }
        Ok(())
    }

    /// Serializes to `{"n":…,"w":…,"values":["p/q",…]}` with a trailing newline.
    pub fn to_json(&self) -> String {
        let doc = VertexFunctionDoc {
            n: self.params.n(),
            w: self.params.w(),
            values: self.values.iter().map(ToString::to_string).collect(),
        };
        let mut s = serde_json::to_string(&doc).expect("plain struct serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: VertexFunctionDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let params = JohnsonParams::new(doc.n, doc.w)?;
        let values = doc
            .values
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, values)
    }
}

#[derive(Serialize, Deserialize)]
struct VertexFunctionDoc {
    n: usize,
    w: usize,
    values: Vec<String>,
}

/// Parses `"p"` or `"p/q"`; the result is reduced to lowest terms.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(
            s.parse::<BigInt>().map_err(|_| bad())?,
        )),
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Position `i` in the eigenvalue enumeration of a fixed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EigenIndex(usize);

impl EigenIndex {
    pub fn new(i: usize, params: JohnsonParams) -> Result<Self> {
        if i > params.w() {
            return Err(Error::InvalidArgument(format!(
                "eigen-index {i} exceeds w={} of {params}",
                params.w()
            )));
        }
        Ok(Self(i))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// `λ_i` as a rational.
pub fn eigenvalue_of(params: JohnsonParams, i: usize) -> BigRational {
    BigRational::from_integer(eigenvalue_ext(
        i as i64,
        params.n() as i64,
        params.w() as i64,
    ))
}

/// `A f`: the sum of `f` over the neighbours of each vertex.
pub fn apply_adjacency(f: &VertexFunction) -> Vec<BigRational> {
    f.params
        .vertices()
        .map(|x| {
            neighbors(&x)
                .iter()
                .map(|y| f.at(y))
                .filter(|v| !v.is_zero())
                .fold(BigRational::zero(), |acc, v| acc + v)
        })
        .collect()
}

/// Whether `λ_i f(x) = Σ_{y ~ x} f(y)` at every vertex. Indices above `w` have
/// no eigenvalue; only the zero function passes for them.
pub fn is_eigenfunction(f: &VertexFunction, i: usize) -> bool {
    if i > f.params.w() {
        return f.is_zero();
    }
    let lambda = eigenvalue_of(f.params, i);
    apply_adjacency(f)
        .iter()
        .zip(&f.values)
        .all(|(af, v)| *af == &lambda * v)
}

/// Which construction produced an eigenspace basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisRoute {
    /// Kernel of `A − λ_i I` by exact elimination.
    Nullspace,
    /// Products of pair differences indexed by standard Young tableaux of
    /// shape `(n − i, i)`, certified by the eigen-equation and an exact rank check.
    Tableau,
}

/// A basis of the `λ_i`-eigenspace of `J(n, w)`.
#[derive(Debug, Clone)]
pub struct EigenspaceBasis {
    pub params: JohnsonParams,
    pub index: EigenIndex,
    pub route: BasisRoute,
    pub basis: Vec<VertexFunction>,
}

impl EigenspaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ_k coeffs[k] · basis[k]`.
    pub fn combine(&self, coeffs: &[BigRational]) -> Result<VertexFunction> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} elements, got {} coefficients",
                self.basis.len(),
                coeffs.len()
            )));
        }
        let mut acc = VertexFunction::zero(self.params);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add_scaled(b, c)?;
            }
        }
        Ok(acc)
    }

    /// Matrix whose row `k` is basis element `k` restricted to `set`.
    pub fn restriction_matrix(&self, set: &[Vertex]) -> Result<RationalMatrix> {
        if self.basis.is_empty() {
            return Ok(RationalMatrix::zeros(0, set.len()));
        }
        RationalMatrix::from_rows(
            self.basis
                .iter()
                .map(|b| b.restrict(set))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

fn expected_dim(params: JohnsonParams, i: usize) -> usize {
    multiplicity(i as i64, params.n() as i64)
        .expect("index within range")
        .to_usize()
        .expect("multiplicity fits usize")
}

/// Basis of the `λ_i`-eigenspace as the exact kernel of `A − λ_i I`.
///
/// Fails with [`Error::Consistency`] if the kernel dimension differs from
/// `C(n, i) − C(n, i − 1)`.
pub fn eigenspace_basis(params: JohnsonParams, i: usize) -> Result<EigenspaceBasis> {
    let index = EigenIndex::new(i, params)?;
    let size = params.vertex_count();
    let lambda = eigenvalue_of(params, i);
    let mut m = RationalMatrix::zeros(size, size);
    for x in params.vertices() {
        let r = x.rank();
        m[(r, r)] = -lambda.clone();
        for y in neighbors(&x) {
            m[(r, y.rank())] = BigRational::one();
        }
    }
    let kernel = nullspace(&m);
    let want = expected_dim(params, i);
    if kernel.len() != want {
        return Err(Error::Consistency(format!(
            "nullity of A - λ_{i} I on {params} is {}, multiplicity formula gives {want}",
            kernel.len()
        )));
    }
    Ok(EigenspaceBasis {
        params,
        index,
        route: BasisRoute::Nullspace,
        basis: kernel
            .into_iter()
            .map(|v| VertexFunction::new(params, v))
            .collect::<Result<_>>()?,
    })
}

/// Basis of the `λ_i`-eigenspace built from pair-difference products.
///
/// For each standard Young tableau of shape `(n − i, i)` with columns
/// `(t_j, b_j)`, the function `x ↦ Π_j (x_{b_j} − x_{t_j})` lies in the
/// eigenspace. Every element is checked against the eigen-equation and the
/// family is checked to have full rank `C(n, i) − C(n, i − 1)`.
pub fn tableau_basis(params: JohnsonParams, i: usize) -> Result<EigenspaceBasis> {
    let index = EigenIndex::new(i, params)?;
    let n = params.n();
    let mut basis = Vec::new();
    for bottoms in (1..=n).combinations(i) {
        if bottoms.iter().enumerate().any(|(j, &b)| b < 2 * (j + 1)) {
            continue;
        }
        let tops: Vec<usize> = (1..=n).filter(|c| !bottoms.contains(c)).take(i).collect();
        let pairs: Vec<(usize, usize)> = tops.into_iter().zip(bottoms).collect();
        let f = paired_function(params, &pairs)?;
        if !is_eigenfunction(&f, i) {
            return Err(Error::Consistency(format!(
                "tableau function {pairs:?} is not a λ_{i}-eigenfunction of {params}"
            )));
        }
        basis.push(f);
    }
    let want = expected_dim(params, i);
    let rows: Vec<Vec<BigRational>> = basis.iter().map(|f| f.values.clone()).collect();
    let got = if rows.is_empty() {
        0
    } else {
        rank(&RationalMatrix::from_rows(rows)?)
    };
    if basis.len() != want || got != want {
        return Err(Error::Consistency(format!(
            "tableau family on {params}, i={i}: {} functions of rank {got}, expected {want}",
            basis.len()
        )));
    }
    Ok(EigenspaceBasis {
        params,
        index,
        route: BasisRoute::Tableau,
        basis,
    })
}

type BasisSlot = Arc<OnceLock<Result<Arc<EigenspaceBasis>>>>;

/// Eigenspace bases keyed by `(n, w, i)`, each built once on first use.
/// Concurrent callers asking for the same key wait for a single build.
pub struct BasisCache {
    route: BasisRoute,
    slots: Mutex<HashMap<(usize, usize, usize), BasisSlot>>,
}

impl BasisCache {
    pub fn new(route: BasisRoute) -> Self {
        Self {
            route,
            slots: Mutex::new(HashMap::new()),
        }
    }

    pub fn route(&self) -> BasisRoute {
        self.route
    }

    pub fn get(&self, params: JohnsonParams, i: usize) -> Result<Arc<EigenspaceBasis>> {
        let slot = {
            let mut slots = self.slots.lock().expect("basis cache lock");
            Arc::clone(slots.entry((params.n(), params.w(), i)).or_default())
        };
        slot.get_or_init(|| {
            match self.route {
                BasisRoute::Nullspace => eigenspace_basis(params, i),
                BasisRoute::Tableau => tableau_basis(params, i),
            }
            .map(Arc::new)
        })
        .clone()
    }
}

/// Radial `λ_i`-eigenfunction around `center`, equal to 1 at the center:
/// `f(x) = E_d(i, w, n) / (C(w, d) C(n − w, d))` with `d = d(x, center)`.
pub fn radial(params: JohnsonParams, center: &Vertex, i: usize) -> Result<VertexFunction> {
    params.check_vertex(center)?;
    EigenIndex::new(i, params)?;
    let (n, w) = (params.n() as i64, params.w() as i64);
    let profile: Vec<BigRational> = (0..=w)
        .map(|d| {
            BigRational::new(
                eberlein_ext(d, i as i64, w, n),
                binom_ext(w, d) * binom_ext(n - w, d),
            )
        })
        .collect();
    Ok(VertexFunction::from_fn(params, |x| {
        profile[unchecked_distance(x, center)].clone()
    }))
}

/// `x ↦ Π_j (x_{plus_j} − x_{minus_j})` for disjoint coordinate pairs
/// `(minus_j, plus_j)`. Nonzero exactly on words with one 1 in every pair.
pub fn paired_function(params: JohnsonParams, pairs: &[(usize, usize)]) -> Result<VertexFunction> {
    let n = params.n();
    let mut used = 0u64;
    for &(a, b) in pairs {
        for c in [a, b] {
            if c == 0 || c > n || used >> (c - 1) & 1 == 1 {
                return Err(Error::InvalidArgument(format!(
                    "pairs {pairs:?} are not disjoint coordinates of 1..={n}"
                )));
            }
            used |= 1 << (c - 1);
        }
    }
    Ok(VertexFunction::from_fn(params, |x| {
        let mut sign = 1i64;
        for &(minus, plus) in pairs {
            match (x.bit(minus), x.bit(plus)) {
                (false, true) => {}
                (true, false) => sign = -sign,
                _ => return BigRational::zero(),
            }
        }
        BigRational::from_integer(sign.into())
    }))
}

/// `f_0^{i,w,n}`: `(−1)^{x_1+…+x_i}` on words with `x_j + x_{j+i} = 1` for
/// `j = 1..i`, zero elsewhere.
pub fn f0(params: JohnsonParams, i: usize) -> Result<VertexFunction> {
    if i > params.w() || 2 * i > params.n() {
        return Err(Error::InvalidArgument(format!(
            "f0 with i={i} is infeasible on {params}"
        )));
    }
    let pairs: Vec<_> = (1..=i).map(|j| (j, j + i)).collect();
    paired_function(params, &pairs)
}

fn insert_bit(mask: u64, pos0: usize, bit: bool) -> u64 {
    let low = mask & ((1u64 << pos0) - 1);
    let high = (mask >> pos0) << (pos0 + 1);
    low | high | (u64::from(bit) << pos0)
}

fn remove_bit(mask: u64, pos0: usize) -> u64 {
    let low = mask & ((1u64 << pos0) - 1);
    low | ((mask >> (pos0 + 1)) << pos0)
}

/// `f_{j1,j2}(y) = f(y with 1 at j1, 0 at j2) − f(y with 0 at j1, 1 at j2)`
/// on `J(n − 2, w − 1)`. The remaining coordinates keep their relative order.
pub fn difference(f: &VertexFunction, j1: usize, j2: usize) -> Result<VertexFunction> {
    let (n, w) = (f.params.n(), f.params.w());
    if !(1 <= j1 && j1 < j2 && j2 <= n) {
        return Err(Error::InvalidArgument(format!(
            "difference needs 1 <= j1 < j2 <= {n}, got ({j1}, {j2})"
        )));
    }
    if w == 0 {
        return Err(Error::InvalidArgument(
            "difference is undefined on J(n, 0)".into(),
        ));
    }
    let out = JohnsonParams::new(n - 2, w - 1)?;
    Ok(VertexFunction::from_fn(out, |y| {
        let with = |b1: bool, b2: bool| {
            let m = insert_bit(insert_bit(y.mask(), j1 - 1, b1), j2 - 1, b2);
            f.at(&Vertex::from_mask(n, m)).clone()
        };
        with(true, false) - with(false, true)
    }))
}

/// Extension to `J(n + 2, w + 1)` with the new coordinates
/// appended at positions `n + 1` and `n + 2`.
pub fn lift(f: &VertexFunction) -> Result<VertexFunction> {
    let n = f.params.n();
    lift_at(f, n + 1, n + 2)
}

/// Extension to `J(n + 2, w + 1)` with new coordinates at output positions
/// `p1 < p2`: `+f` where `(x_{p1}, x_{p2}) = (1, 0)`, `−f` where `(0, 1)`,
/// zero otherwise.
pub fn lift_at(f: &VertexFunction, p1: usize, p2: usize) -> Result<VertexFunction> {
    let (n, w) = (f.params.n(), f.params.w());
    if !(1 <= p1 && p1 < p2 && p2 <= n + 2) {
        return Err(Error::InvalidArgument(format!(
            "lift positions must satisfy 1 <= p1 < p2 <= {}, got ({p1}, {p2})",
            n + 2
        )));
    }
    let out = JohnsonParams::new(n + 2, w + 1)?;
    Ok(VertexFunction::from_fn(out, |x| {
        let inner = || {
            let m = remove_bit(remove_bit(x.mask(), p2 - 1), p1 - 1);
            f.at(&Vertex::from_mask(n, m)).clone()
        };
        match (x.bit(p1), x.bit(p2)) {
            (true, false) => inner(),
            (false, true) => -inner(),
            _ => BigRational::zero(),
        }
    }))
}

/// Inducing operator `I^{j,w}`: maps a function on `J(n, j)` to `J(n, w)` by
/// summing over weight-`j` words whose support is contained in (`j ≤ w`) or
/// contains (`j ≥ w`) the support of each target vertex.
pub fn induce(f: &VertexFunction, target_w: usize) -> Result<VertexFunction> {
    let n = f.params.n();
    let j = f.params.w();
    let out = JohnsonParams::new(n, target_w)?;
    Ok(VertexFunction::from_fn(out, |x| {
        let mut acc = BigRational::zero();
        if j <= target_w {
            for sub in x.support().into_iter().combinations(j) {
                let m = sub.iter().fold(0u64, |m, &c| m | 1 << (c - 1));
                acc += f.at(&Vertex::from_mask(n, m));
            }
        } else {
            let zeros: Vec<usize> = (1..=n).filter(|&c| !x.bit(c)).collect();
            for add in zeros.into_iter().combinations(j - target_w) {
                let m = add.iter().fold(x.mask(), |m, &c| m | 1 << (c - 1));
                acc += f.at(&Vertex::from_mask(n, m));
            }
        }
        acc
    }))
}

/// Chain of one-step inducing operators from weight `j` to `target_w`.
/// Equals `|w − j|! · I^{j,w}(f)`.
pub fn induce_stepwise(f: &VertexFunction, target_w: usize) -> Result<VertexFunction> {
    let mut cur = f.clone();
    while cur.params.w() != target_w {
        let next = if cur.params.w() < target_w {
            cur.params.w() + 1
        } else {
            cur.params.w() - 1
        };
        cur = induce(&cur, next)?;
    }
    Ok(cur)
}

/// `|w − j|!` as a rational, the factor relating [`induce`] and [`induce_stepwise`].
pub fn step_factor(j: usize, w: usize) -> BigRational {
    BigRational::from_integer(factorial(j.abs_diff(w) as u64))
}

/// Nonzero scalar `α` with `α f = I^{w',w}(I^{w,w'}(f))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProportionalityWitness {
    pub alpha: BigRational,
}

pub fn proportionality_alpha(
    f: &VertexFunction,
    i: usize,
    w_prime: usize,
) -> Result<ProportionalityWitness> {
    let params = f.params;
    if i > params.w() || i > w_prime || 2 * w_prime > params.n() {
        return Err(Error::InvalidArgument(format!(
            "need i <= w, i <= w' and n >= 2w'; got i={i}, w'={w_prime} on {params}"
        )));
    }
    let Some(anchor) = f.values.iter().position(|v| !v.is_zero()) else {
        return Err(Error::ZeroInput);
    };
    if !is_eigenfunction(f, i) {
        return Err(Error::InvalidArgument(format!(
            "input is not a λ_{i}-eigenfunction of {params}"
        )));
    }
    let round_trip = induce(&induce(f, w_prime)?, params.w())?;
    let alpha = &round_trip.values[anchor] / &f.values[anchor];
    if alpha.is_zero() {
        return Err(Error::NotProportional(format!(
            "round trip through weight {w_prime} annihilates the function"
        )));
    }
    if let Some(bad) = (0..f.values.len()).find(|&k| round_trip.values[k] != &alpha * &f.values[k])
    {
        return Err(Error::NotProportional(format!(
            "ratio {alpha} at rank {anchor} but value {} vs {} at rank {bad}",
            round_trip.values[bad], f.values[bad]
        )));
    }
    Ok(ProportionalityWitness { alpha })
}

/// Checks `Σ_{d(x,y)=k} f(y) = f(x) · E_k(i, w, n)` exactly.
pub fn sphere_sum_check(f: &VertexFunction, i: usize, x: &Vertex, k: usize) -> Result<bool> {
    let params = f.params;
    params.check_vertex(x)?;
    EigenIndex::new(i, params)?;
    let (n, w) = (params.n() as i64, params.w() as i64);
    let e = BigRational::from_integer(eberlein_ext(k as i64, i as i64, w, n));
    let lhs = if k > params.w() {
        BigRational::zero()
    } else {
        crate::graph::sphere(&SphereSpec::new(*x, k))?
            .iter()
            .fold(BigRational::zero(), |acc, y| acc + f.at(y))
    };
    Ok(lhs == f.at(x) * e)
}

/// Whether `f` vanishes on every vertex of `set`.
pub fn vanishes_on(f: &VertexFunction, set: &[Vertex]) -> bool {
    set.iter().all(|x| f.at(x).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{ball, sphere};

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn p(n: usize, w: usize) -> JohnsonParams {
        JohnsonParams::new(n, w).unwrap()
    }

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn eigen_equation_examples() {
        let params = p(6, 3);
        for i in 0..=3 {
            assert!(is_eigenfunction(&VertexFunction::zero(params), i));
        }
        let one = VertexFunction::constant(params, q(1));
        assert!(is_eigenfunction(&one, 0));
        assert!(!is_eigenfunction(&one, 1));
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(eigenspace_basis(p(6, 3), 0).unwrap().dim(), 1);
        assert_eq!(eigenspace_basis(p(6, 3), 1).unwrap().dim(), 5);
        assert_eq!(eigenspace_basis(p(9, 3), 3).unwrap().dim(), 48);
        assert!(eigenspace_basis(p(6, 3), 4).is_err());
    }

    #[test]
    fn tableau_basis_spans_the_same_space() {
        for n in 0..=8 {
            for w in 0..=n / 2 {
                for i in 0..=w {
                    let a = eigenspace_basis(p(n, w), i).unwrap();
                    let b = tableau_basis(p(n, w), i).unwrap();
                    assert_eq!(a.dim(), b.dim());
                    let rows: Vec<_> = a
                        .basis
                        .iter()
                        .chain(&b.basis)
                        .map(|f| f.values.clone())
                        .collect();
                    if !rows.is_empty() {
                        assert_eq!(rank(&RationalMatrix::from_rows(rows).unwrap()), a.dim());
                    }
                }
            }
        }
    }

    #[test]
    fn radial_examples() {
        let params = p(6, 3);
        let x0 = params.canonical_center();
        let r0 = radial(params, &x0, 0).unwrap();
        assert_eq!(r0, VertexFunction::constant(params, q(1)));

        let params = p(9, 3);
        let x0 = params.canonical_center();
        let r1 = radial(params, &x0, 1).unwrap();
        assert!(vanishes_on(&r1, &sphere(&SphereSpec::new(x0, 2)).unwrap()));
        assert_eq!(r1.at(&x0), &q(1));

        let params = p(8, 3);
        for x in params.vertices().step_by(7) {
            for i in 0..=3 {
                assert!(is_eigenfunction(&radial(params, &x, i).unwrap(), i));
            }
        }
    }

    #[test]
    fn f0_examples() {
        assert_eq!(
            f0(p(6, 3), 0).unwrap(),
            VertexFunction::constant(p(6, 3), q(1))
        );
        let f = f0(p(4, 2), 2).unwrap();
        let expect = [
            ("1100", 1),
            ("0011", 1),
            ("1001", -1),
            ("0110", -1),
            ("1010", 0),
            ("0101", 0),
        ];
        for (s, val) in expect {
            assert_eq!(f.at(&v(s)), &q(val), "at {s}");
        }
        assert!(is_eigenfunction(&f, 2));
        for params in [p(8, 3), p(8, 4)] {
            for i in 0..=params.w() {
                let f = f0(params, i).unwrap();
                assert!(is_eigenfunction(&f, i));
                assert_eq!(
                    f.support_size(),
                    (1 << i)
                        * crate::combinatorics::binom_u64(params.n() - 2 * i, params.w() - i)
                            as usize
                );
            }
        }
        assert!(f0(p(6, 2), 3).is_err());
    }

    #[test]
    fn difference_examples() {
        let one = VertexFunction::constant(p(6, 3), q(1));
        assert!(difference(&one, 2, 5).unwrap().is_zero());
        let d = difference(&f0(p(6, 3), 1).unwrap(), 1, 2).unwrap();
        assert_eq!(d, VertexFunction::constant(p(4, 2), q(-2)));
        assert!(difference(&one, 3, 3).is_err());
        assert!(difference(&one, 1, 7).is_err());
        assert!(difference(&VertexFunction::constant(p(4, 0), q(1)), 1, 2).is_err());
    }

    #[test]
    fn difference_keeps_relative_order() {
        // f(x) = x_4 on J(6,3); deleting coordinates 1 and 2 sends coordinate 4 to 2.
        let f = VertexFunction::from_fn(p(6, 3), |x| q(x.bit(4) as i64));
        let d = difference(&f, 1, 2).unwrap();
        for y in p(4, 2).vertices() {
            assert_eq!(d.at(&y), &q(0), "{y}");
        }
        let d = difference(&f, 4, 6).unwrap();
        for y in p(4, 2).vertices() {
            assert_eq!(d.at(&y), &q(1));
        }
    }

    #[test]
    fn lift_examples() {
        let g = lift(&VertexFunction::constant(p(4, 2), q(1))).unwrap();
        assert_eq!(g.params(), p(6, 3));
        assert!(is_eigenfunction(&g, 1));
        assert!(g.values().iter().all(|x| [q(-1), q(0), q(1)].contains(x)));
        assert!(lift(&VertexFunction::zero(p(4, 2))).unwrap().is_zero());
        for f in &eigenspace_basis(p(4, 2), 1).unwrap().basis {
            let back = difference(&lift(f).unwrap(), 5, 6).unwrap();
            assert_eq!(back, f.scale(&q(2)));
            let back = difference(&lift_at(f, 2, 5).unwrap(), 2, 5).unwrap();
            assert_eq!(back, f.scale(&q(2)));
        }
    }

    #[test]
    fn induce_examples() {
        let one = VertexFunction::constant(p(6, 1), q(1));
        assert_eq!(
            induce(&one, 3).unwrap(),
            VertexFunction::constant(p(6, 3), q(3))
        );
        let f = f0(p(4, 2), 2).unwrap();
        assert!(induce(&f, 1).unwrap().is_zero());
        // going up: each weight-1 word lies in 5 supersets of weight 2 in J(6,·)
        let one = VertexFunction::constant(p(6, 3), q(1));
        assert_eq!(
            induce(&one, 2).unwrap(),
            VertexFunction::constant(p(6, 2), q(4))
        );
        assert!(induce(&one, 4).is_err());
    }

    #[test]
    fn stepwise_inducing_matches_factorial() {
        let basis = eigenspace_basis(p(8, 2), 2).unwrap();
        for f in &basis.basis {
            let direct = induce(f, 4).unwrap().scale(&step_factor(2, 4));
            assert_eq!(direct, induce_stepwise(f, 4).unwrap());
        }
    }

    #[test]
    fn proportionality_examples() {
        let params = p(6, 3);
        let x0 = params.canonical_center();
        let f = radial(params, &x0, 1).unwrap();
        let a = proportionality_alpha(&f, 1, 3).unwrap();
        assert_eq!(a.alpha, q(1));
        let f = f0(params, 1).unwrap();
        let a = proportionality_alpha(&f, 1, 2).unwrap();
        assert!(!a.alpha.is_zero());
        assert_eq!(
            proportionality_alpha(&VertexFunction::zero(params), 1, 2),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn sphere_sums_on_small_graph() {
        let params = p(7, 3);
        for i in 0..=3 {
            for f in &eigenspace_basis(params, i).unwrap().basis {
                for x in params.vertices().step_by(5) {
                    for k in 0..=4 {
                        assert!(sphere_sum_check(f, i, &x, k).unwrap());
                    }
                }
            }
        }
        let one = VertexFunction::constant(params, q(1));
        assert!(!sphere_sum_check(&one, 1, &params.canonical_center(), 1).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let f = radial(p(5, 2), &v("11000"), 1).unwrap();
        let text = f.to_json();
        assert!(text.starts_with("{\"n\":5,\"w\":2,\"values\":[\"1\","));
        assert_eq!(VertexFunction::from_json(&text).unwrap(), f);
        assert!(VertexFunction::from_json("{\"n\":5,\"w\":2,\"values\":[\"1\"]}").is_err());
        assert!(VertexFunction::from_json("{\"n\":5,\"w\":2,\"values\":[\"1/0\"]}").is_err());
        assert_eq!(
            parse_rational("4/-6").unwrap(),
            BigRational::new((-2).into(), 3.into())
        );
    }

    #[test]
    fn ball_helper_is_consistent() {
        let params = p(6, 3);
        let f = f0(params, 2).unwrap();
        let x = v("001011");
        let b = ball(&SphereSpec::new(x, 0));
        assert_eq!(vanishes_on(&f, &b), f.at(&x).is_zero());
    }
}
