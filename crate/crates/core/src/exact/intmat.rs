use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{MatrixQ, Rational};
use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows
                .iter()
                .flat_map(|row| row.iter().map(|&v| BigInt::from(v)))
                .collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix from a rational one; `None` if any entry is fractional.
    pub fn try_from_rational(m: &MatrixQ) -> Option<Self> {
        let data = m
            .entries()
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(IntMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }

    pub fn to_rational(&self) -> MatrixQ {
        MatrixQ::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .map(|v| Rational::from_integer(v.clone()))
                .collect(),
        )
        .expect("shape preserved")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("integer matrix product".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        Ok(out)
    }

    pub fn det(&self) -> Result<BigInt> {
        Ok(self.to_rational().det()?.to_integer())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += f · row[source]
    fn add_row(&mut self, target: usize, source: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = f * &self[(source, j)];
            self[(target, j)] += v;
        }
    }

    /// col[target] += f · col[source]
    fn add_col(&mut self, target: usize, source: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = f * &self[(i, source)];
            self[(i, target)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
            .into_iter()
            .map(|r| {
                r.iter()
                    .map(|v| i64::try_from(v).expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let row: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `left · m · right = diag(diagonal)` with `d_1 | d_2 | …` and unimodular `left`, `right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Index of the column lattice in ℤ^rows, `None` when it is not of full rank.
    pub fn lattice_index(&self) -> Option<BigInt> {
        if self.diagonal.len() < self.left.rows() || self.diagonal.iter().any(Zero::is_zero) {
            return None;
        }
        Some(self.diagonal.iter().product())
    }
}

/// Smith normal form by repeated gcd pivoting. Matrices here are tiny, so no
/// attempt is made to control coefficient growth beyond choosing small pivots.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[(i, j)].is_zero())
            .min_by(|&p, &q| a[p].abs().cmp(&a[q].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &-&q);
                left.add_row(i, t, &-&q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &-&q);
                right.add_col(j, t, &-&q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t into the pivot
                let best_row = (t..rows)
                    .filter(|&i| !a[(i, t)].is_zero())
                    .min_by(|&p, &q| a[(p, t)].abs().cmp(&a[(q, t)].abs()));
                let best_col = (t..cols)
                    .filter(|&j| !a[(t, j)].is_zero())
                    .min_by(|&p, &q| a[(t, p)].abs().cmp(&a[(t, q)].abs()));
                match (best_row, best_col) {
                    (Some(i), Some(j)) if a[(i, t)].abs() <= a[(t, j)].abs() => {
                        a.swap_rows(t, i);
                        left.swap_rows(t, i);
                    }
                    (_, Some(j)) => {
                        a.swap_cols(t, j);
                        right.swap_cols(t, j);
                    }
                    (Some(i), None) => {
                        a.swap_rows(t, i);
                        left.swap_rows(t, i);
                    }
                    (None, None) => unreachable!("pivot is nonzero"),
                }
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&a[(i, j)] % &a[(t, t)]).is_zero()));
            match offending {
                Some(i) => {
                    a.add_row(t, i, &BigInt::one());
                    left.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    let diagonal = (0..n).map(|i| a[(i, i)].clone()).collect();
    SmithForm {
        diagonal,
        left,
        right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_i64(s: &SmithForm) -> Vec<i64> {
        s.diagonal
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    fn check(m: &IntMatrix, s: &SmithForm) {
        let prod = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        assert!(prod.is_diagonal());
        for (i, d) in s.diagonal.iter().enumerate() {
            assert_eq!(&prod[(i, i)], d);
        }
        assert_eq!(s.left.det().unwrap().abs(), BigInt::one());
        assert_eq!(s.right.det().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn small_examples() {
        let id = IntMatrix::identity(3);
        let s = smith_normal_form(&id);
        assert_eq!(diag_i64(&s), vec![1, 1, 1]);
        check(&id, &s);

        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(diag_i64(&s), vec![1, 6]);
        check(&m, &s);

        let m = IntMatrix::from_i64_rows(&[&[2, 4], &[0, 2]]);
        let s = smith_normal_form(&m);
        assert_eq!(diag_i64(&s), vec![2, 2]);
        check(&m, &s);
        assert_eq!(s.lattice_index().unwrap(), BigInt::from(4));
    }

    #[test]
    fn rectangular_and_zero() {
        let m = IntMatrix::from_i64_rows(&[&[0, 0, 0], &[0, 0, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(diag_i64(&s), vec![0, 0]);
        assert!(s.lattice_index().is_none());
        let m = IntMatrix::from_i64_rows(&[&[4, 6, 8], &[6, 9, 12]]);
        let s = smith_normal_form(&m);
        check(&m, &s);
        assert_eq!(diag_i64(&s), vec![1, 0]);
    }
}
