//! Dense exact rational linear algebra.
//!
//! Elimination is fraction-free Gauss-Jordan with the first nonzero entry of
//! each column as pivot, so bases come out identical on every run.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for k in 0..size {
            m[(k, k)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let nrows = rows.len();
        Ok(Self {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from integer entries.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;

    fn index(&self, (r, c): (usize, usize)) -> &BigRational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigRational {
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row-echelon form and the pivot column of each nonzero row.
///
/// Rows are cleared to integers and eliminated fraction-free, dividing every
/// updated row by the gcd of its entries; pivot rows are normalized to a
/// leading 1 only at the end.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|r| integer_row(m.row(r))).collect();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        if next_row == rows {
            break;
        }
        let Some(p) = (next_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(next_row, p);
        let (head, tail) = a.split_at_mut(next_row);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
        let support: Vec<usize> = (col..cols).filter(|&c| !pivot_row[c].is_zero()).collect();
        let pivot = pivot_row[col].clone();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            // row <- (pivot / g) * row - (row[col] / g) * pivot_row
            let g = pivot.gcd(&row[col]);
            let mul_row = &pivot / &g;
            let mul_pivot = &row[col] / &g;
            if !mul_row.is_one() {
                for x in row.iter_mut().filter(|x| !x.is_zero()) {
                    *x *= &mul_row;
                }
            }
            for &c in &support {
                row[c] -= &mul_pivot * &pivot_row[c];
            }
            normalize_content(row);
        }
        pivots.push(col);
        next_row += 1;
    }
    let mut out = RationalMatrix::zeros(rows, cols);
    for (r, row) in a.iter().enumerate() {
        let lead = pivots.get(r).map(|&p| row[p].clone());
        for (c, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            out[(r, c)] = match &lead {
                Some(l) => BigRational::new(x.clone(), l.clone()),
                None => BigRational::from_integer(x.clone()),
            };
        }
    }
    (out, pivots)
}

fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

fn normalize_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter().filter(|x| !x.is_zero()) {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut().filter(|x| !x.is_zero()) {
        *x /= &g;
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).1.len()
}

/// Kernel basis read off the reduced form: one vector per free column, with
/// a 1 in that column.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<BigRational>> {
    let (reduced, pivots) = rref(m);
    kernel_from_rref(&reduced, &pivots)
}

fn kernel_from_rref(reduced: &RationalMatrix, pivots: &[usize]) -> Vec<Vec<BigRational>> {
    let cols = reduced.cols;
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[(r, free)].clone();
            }
            v
        })
        .collect()
}

/// Outcome of solving `m · x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    Underdetermined {
        particular: Vec<BigRational>,
        kernel: Vec<Vec<BigRational>>,
    },
    Inconsistent,
}

pub fn solve(m: &RationalMatrix, b: &[BigRational]) -> Result<Solution> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    let mut augmented = RationalMatrix::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            augmented[(r, c)] = m[(r, c)].clone();
        }
        augmented[(r, m.cols)] = b[r].clone();
    }
    let (reduced, pivots) = rref(&augmented);
    if pivots.last() == Some(&m.cols) {
        return Ok(Solution::Inconsistent);
    }
    let mut particular = vec![BigRational::zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = reduced[(r, m.cols)].clone();
    }
    if pivots.len() == m.cols {
        return Ok(Solution::Unique(particular));
    }
    // Drop the augmented column before reading off the kernel.
    let mut coeff = RationalMatrix::zeros(reduced.rows, m.cols);
    for r in 0..reduced.rows {
        for c in 0..m.cols {
            coeff[(r, c)] = reduced[(r, c)].clone();
        }
    }
    Ok(Solution::Underdetermined {
        particular,
        kernel: kernel_from_rref(&coeff, &pivots),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn rref_examples() {
        let id = RationalMatrix::identity(3);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));
        let z = RationalMatrix::zeros(2, 3);
        assert_eq!(rref(&z), (z.clone(), vec![]));
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(rank(&m), 1);
        let (r, _) = rref(&m);
        assert_eq!(r.row(0), &[q(1), q(2)]);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&RationalMatrix::identity(4)).is_empty());
        let m = RationalMatrix::from_i64_rows(&[&[1, -1]]).unwrap();
        assert_eq!(nullspace(&m), vec![vec![q(1), q(1)]]);
        assert_eq!(nullspace(&RationalMatrix::zeros(0, 2)).len(), 2);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-1), BigRational::new(1.into(), 2.into())];
        assert_eq!(
            solve(&RationalMatrix::identity(3), &b).unwrap(),
            Solution::Unique(b.clone())
        );
        let m = RationalMatrix::from_i64_rows(&[&[1, -1]]).unwrap();
        assert!(matches!(
            solve(&m, &[q(0)]).unwrap(),
            Solution::Underdetermined { ref kernel, .. } if kernel.len() == 1
        ));
        let m = RationalMatrix::from_i64_rows(&[&[1], &[1]]).unwrap();
        assert_eq!(solve(&m, &[q(0), q(1)]).unwrap(), Solution::Inconsistent);
        assert!(solve(&m, &[q(0)]).is_err());
    }

    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |vals| {
                let rows: Vec<Vec<BigRational>> = vals
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&x| q(x)).collect())
                    .collect();
                RationalMatrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(m in small_matrix()) {
            let kernel = nullspace(&m);
            prop_assert_eq!(rank(&m) + kernel.len(), m.cols());
            for v in &kernel {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn solutions_satisfy_the_system(m in small_matrix(), seed in proptest::collection::vec(-4i64..=4, 6)) {
            let x: Vec<BigRational> = (0..m.cols()).map(|k| q(seed[k])).collect();
            let b = m.mul_vec(&x).unwrap();
            match solve(&m, &b).unwrap() {
                Solution::Unique(y) => prop_assert_eq!(y, x),
                Solution::Underdetermined { particular, kernel } => {
                    prop_assert_eq!(m.mul_vec(&particular).unwrap(), b);
                    prop_assert_eq!(kernel.len(), m.cols() - rank(&m));
                }
                Solution::Inconsistent => prop_assert!(false, "consistent system reported inconsistent"),
            }
        }
    }
}
