//! Vertices and metric structure of the Johnson graph `J(n, w)`.
//!
//! A vertex is a length-`n` binary word with exactly `w` ones, stored as a
//! bitmask where coordinate `c` (1-based, leftmost) is bit `c - 1`. Vertices
//! are densely indexed by the colexicographic rank of their support, which
//! coincides with the numeric order of the bitmask.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::combinatorics::binom_u64;
use crate::error::{Error, Result};

/// Largest supported word length.
pub const MAX_N: usize = 64;

/// The pair `(n, w)` fixing a Johnson graph, with `n >= 2w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JohnsonParams {
    n: usize,
    w: usize,
}

impl JohnsonParams {
    pub fn new(n: usize, w: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::InvalidArgument(format!(
                "n={n} exceeds the supported maximum {MAX_N}"
            )));
        }
        if 2 * w > n {
            return Err(Error::InvalidArgument(format!(
                "Johnson graph J({n},{w}) requires n >= 2w"
            )));
        }
        Ok(Self { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn w(&self) -> usize {
        self.w
    }

    /// Number of vertices, `C(n, w)`.
    pub fn vertex_count(&self) -> usize {
        binom_u64(self.n, self.w) as usize
    }

    /// Vertex degree `w(n − w)`.
    pub fn degree(&self) -> usize {
        self.w * (self.n - self.w)
    }

    /// All vertices in rank order.
    pub fn vertices(&self) -> Vertices {
        Vertices {
            n: self.n,
            next: if self.w == 0 {
                Some(0)
            } else {
                Some(low_mask(self.w))
            },
        }
    }

    /// The vertex with ones in the first `w` coordinates.
    pub fn canonical_center(&self) -> Vertex {
        Vertex::from_mask(self.n, low_mask(self.w))
    }

    pub fn unrank(&self, idx: usize) -> Result<Vertex> {
        if idx >= self.vertex_count() {
            return Err(Error::InvalidArgument(format!(
                "rank {idx} out of range for J({},{}) with {} vertices",
                self.n,
                self.w,
                self.vertex_count()
            )));
        }
        let mut rest = idx as u64;
        let mut bits = 0u64;
        let mut bound = self.n;
        for j in (1..=self.w).rev() {
            // largest p < bound with C(p, j) <= rest
            let mut p = bound - 1;
            while binom_u64(p, j) > rest {
                p -= 1;
            }
            rest -= binom_u64(p, j);
            bits |= 1 << p;
            bound = p;
        }
        Ok(Vertex::from_mask(self.n, bits))
    }

    /// Whether `v` is a vertex of this graph.
    pub fn contains(&self, v: &Vertex) -> bool {
        v.n == self.n && v.weight() == self.w
    }

    pub(crate) fn check_vertex(&self, v: &Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::ParamMismatch(format!(
                "vertex {v} (length {}, weight {}) is not in J({},{})",
                v.n,
                v.weight(),
                self.n,
                self.w
            )))
        }
    }
}

impl fmt::Display for JohnsonParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J({},{})", self.n, self.w)
    }
}

fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Iterator over fixed-weight words in increasing mask order (Gosper's hack).
pub struct Vertices {
    n: usize,
    next: Option<u64>,
}

impl Iterator for Vertices {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let cur = self.next?;
        if self.n < 64 && cur >> self.n != 0 {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            match cur.checked_add(c) {
                Some(r) if r != 0 => Some((((r ^ cur) >> 2) / c) | r),
                _ => None,
            }
        };
        Some(Vertex::from_mask(self.n, cur))
    }
}

/// A binary word of length `n`. Its weight decides which Johnson graph it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    n: usize,
    bits: u64,
}

impl Vertex {
    pub(crate) fn from_mask(n: usize, bits: u64) -> Self {
        debug_assert!(n == 64 || bits >> n == 0);
        Self { n, bits }
    }

    /// Builds a word of length `n` with ones at the given 1-based coordinates.
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::InvalidArgument(format!("word length {n} too large")));
        }
        let mut bits = 0u64;
        for &c in support {
            if c == 0 || c > n {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {c} outside 1..={n}"
                )));
            }
            if bits & (1 << (c - 1)) != 0 {
                return Err(Error::InvalidArgument(format!("duplicate coordinate {c}")));
            }
            bits |= 1 << (c - 1);
        }
        Ok(Self { n, bits })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn mask(&self) -> u64 {
        self.bits
    }

    /// Value of 1-based coordinate `c`.
    pub fn bit(&self, c: usize) -> bool {
        debug_assert!(c >= 1 && c <= self.n);
        self.bits >> (c - 1) & 1 == 1
    }

    /// Sorted 1-based coordinates holding a one.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|&c| self.bit(c)).collect()
    }

    /// Colexicographic rank of the support: `Σ_j C(c_j − 1, j)`.
    pub fn rank(&self) -> usize {
        let mut acc = 0u64;
        let mut bits = self.bits;
        let mut j = 1;
        while bits != 0 {
            let p = bits.trailing_zeros() as usize;
            acc += binom_u64(p, j);
            bits &= bits - 1;
            j += 1;
        }
        acc as usize
    }

    /// Whether the support of `self` is contained in the support of `other`.
    pub fn is_subset_of(&self, other: &Vertex) -> bool {
        self.bits & !other.bits == 0
    }

    pub(crate) fn with_mask(&self, bits: u64) -> Self {
        Self { n: self.n, bits }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 1..=self.n {
            f.write_str(if self.bit(c) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.len();
        if n > MAX_N {
            return Err(Error::Parse(format!("bitstring longer than {MAX_N}")));
        }
        let mut bits = 0u64;
        for (idx, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << idx,
                other => {
                    return Err(Error::Parse(format!(
                        "invalid character {other:?} in bitstring {s:?}"
                    )))
                }
            }
        }
        Ok(Self { n, bits })
    }
}

/// Half the Hamming weight of `x + y`. Both vertices must belong to the same graph.
pub fn distance(x: &Vertex, y: &Vertex) -> Result<usize> {
    if x.n != y.n || x.weight() != y.weight() {
        return Err(Error::ParamMismatch(format!(
            "distance between {x} and {y}: lengths or weights differ"
        )));
    }
    Ok(unchecked_distance(x, y))
}

pub(crate) fn unchecked_distance(x: &Vertex, y: &Vertex) -> usize {
    (x.bits ^ y.bits).count_ones() as usize / 2
}

/// All vertices at distance 1 from `x`: swap one 1 with one 0.
pub fn neighbors(x: &Vertex) -> Vec<Vertex> {
    let ones = x.support();
    let zeros: Vec<usize> = (1..=x.n).filter(|&c| !x.bit(c)).collect();
    let mut out = Vec::with_capacity(ones.len() * zeros.len());
    for &a in &ones {
        for &b in &zeros {
            out.push(x.with_mask(x.bits ^ (1 << (a - 1)) ^ (1 << (b - 1))));
        }
    }
    out
}

/// Center and radius of a sphere or ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereSpec {
    pub center: Vertex,
    pub radius: usize,
}

impl SphereSpec {
    pub fn new(center: Vertex, radius: usize) -> Self {
        Self { center, radius }
    }
}

/// Size of a distance-`r` sphere, `C(w, r) C(n − w, r)`.
pub fn sphere_size(params: JohnsonParams, r: usize) -> usize {
    (binom_u64(params.w, r) * binom_u64(params.n - params.w, r)) as usize
}

/// Members of `S_r(center)` in rank order.
pub fn sphere(spec: &SphereSpec) -> Result<Vec<Vertex>> {
    let x = spec.center;
    let w = x.weight();
    if spec.radius > w {
        return Err(Error::InvalidArgument(format!(
            "sphere radius {} exceeds w={w}; such a sphere is empty by definition",
            spec.radius
        )));
    }
    let ones = x.support();
    let zeros: Vec<usize> = (1..=x.n).filter(|&c| !x.bit(c)).collect();
    let mut out = Vec::new();
    for drop in ones.iter().combinations(spec.radius) {
        let base = drop.iter().fold(x.bits, |m, &&c| m ^ (1 << (c - 1)));
        for add in zeros.iter().combinations(spec.radius) {
            let m = add.iter().fold(base, |m, &&c| m | (1 << (c - 1)));
            out.push(x.with_mask(m));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Members of `B_r(center)` in rank order. Radii above `w` give the whole graph.
pub fn ball(spec: &SphereSpec) -> Vec<Vertex> {
    let w = spec.center.weight();
    let mut out = Vec::new();
    for r in 0..=spec.radius.min(w) {
        out.extend(sphere(&SphereSpec::new(spec.center, r)).expect("radius within range"));
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(JohnsonParams::new(5, 3).is_err());
        assert!(JohnsonParams::new(65, 1).is_err());
        let p = JohnsonParams::new(6, 3).unwrap();
        assert_eq!(p.vertex_count(), 20);
        assert_eq!(p.degree(), 9);
        assert_eq!(JohnsonParams::new(0, 0).unwrap().vertex_count(), 1);
    }

    #[test]
    fn rank_examples() {
        let p = JohnsonParams::new(4, 2).unwrap();
        assert_eq!(Vertex::from_support(4, &[1, 2]).unwrap().rank(), 0);
        assert_eq!(Vertex::from_support(4, &[3, 4]).unwrap().rank(), 5);
        assert_eq!(p.unrank(5).unwrap(), v("0011"));
        assert!(p.unrank(6).is_err());
    }

    #[test]
    fn enumeration_is_rank_order() {
        for n in 0..=10 {
            for w in 0..=n / 2 {
                let p = JohnsonParams::new(n, w).unwrap();
                let all: Vec<_> = p.vertices().collect();
                assert_eq!(all.len(), p.vertex_count());
                for (idx, x) in all.iter().enumerate() {
                    assert_eq!(x.weight(), w);
                    assert_eq!(x.rank(), idx);
                    assert_eq!(p.unrank(idx).unwrap(), *x);
                }
            }
        }
    }

    #[test]
    fn bitstring_round_trip() {
        let x = v("110100");
        assert_eq!(x.to_string(), "110100");
        assert_eq!(x.support(), vec![1, 2, 4]);
        assert!("1102".parse::<Vertex>().is_err());
    }

    #[test]
    fn distance_examples() {
        let x = v("111000");
        assert_eq!(distance(&x, &x).unwrap(), 0);
        assert_eq!(distance(&x, &v("110100")).unwrap(), 1);
        assert_eq!(distance(&x, &v("000111")).unwrap(), 3);
        assert!(distance(&x, &v("110000")).is_err());
        assert!(distance(&x, &v("1110000")).is_err());
    }

    #[test]
    fn neighbor_examples() {
        let p = JohnsonParams::new(6, 3).unwrap();
        for x in p.vertices() {
            let nb = neighbors(&x);
            assert_eq!(nb.len(), 9);
            for y in p.vertices() {
                assert_eq!(nb.contains(&y), distance(&x, &y).unwrap() == 1);
            }
        }
        assert_eq!(neighbors(&v("10")), vec![v("01")]);
    }

    #[test]
    fn metric_axioms_exhaustive() {
        for n in 0..=8 {
            for w in 0..=n / 2 {
                let p = JohnsonParams::new(n, w).unwrap();
                let all: Vec<_> = p.vertices().collect();
                for x in &all {
                    for y in &all {
                        let dxy = distance(x, y).unwrap();
                        assert_eq!(dxy == 0, x == y);
                        assert_eq!(dxy, distance(y, x).unwrap());
                        for z in &all {
                            assert!(distance(x, z).unwrap() <= dxy + distance(y, z).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn distance_is_shortest_path() {
        let p = JohnsonParams::new(7, 3).unwrap();
        let x0 = p.canonical_center();
        let mut dist = vec![usize::MAX; p.vertex_count()];
        dist[x0.rank()] = 0;
        let mut queue = std::collections::VecDeque::from([x0]);
        while let Some(x) = queue.pop_front() {
            for y in neighbors(&x) {
                if dist[y.rank()] == usize::MAX {
                    dist[y.rank()] = dist[x.rank()] + 1;
                    queue.push_back(y);
                }
            }
        }
        for y in p.vertices() {
            assert_eq!(dist[y.rank()], distance(&x0, &y).unwrap());
        }
    }

    #[test]
    fn sphere_and_ball_sizes() {
        let p = JohnsonParams::new(6, 3).unwrap();
        let x0 = p.canonical_center();
        assert_eq!(sphere(&SphereSpec::new(x0, 1)).unwrap().len(), 9);
        assert_eq!(sphere(&SphereSpec::new(x0, 0)).unwrap(), vec![x0]);
        assert!(sphere(&SphereSpec::new(x0, 4)).is_err());
        let p8 = JohnsonParams::new(8, 3).unwrap();
        assert_eq!(ball(&SphereSpec::new(p8.canonical_center(), 1)).len(), 16);
        assert_eq!(ball(&SphereSpec::new(p8.canonical_center(), 9)).len(), 56);
    }

    #[test]
    fn spheres_partition_the_graph() {
        for n in 0..=9 {
            for w in 0..=n / 2 {
                let p = JohnsonParams::new(n, w).unwrap();
                for x in p.vertices().step_by(3) {
                    let mut total = 0;
                    for r in 0..=w {
                        let s = sphere(&SphereSpec::new(x, r)).unwrap();
                        assert_eq!(s.len(), sphere_size(p, r));
                        assert!(s.iter().all(|y| distance(&x, y).unwrap() == r));
                        total += s.len();
                    }
                    assert_eq!(total, p.vertex_count());
                }
            }
        }
    }
}
