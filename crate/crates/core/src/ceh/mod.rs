//! Chevalley–Eilenberg cochains with trivial coefficients.
//!
//! A k-cochain is a vector over the exterior monomials `e^{i1}∧…∧e^{ik}` (`i1 < … < ik`),
//! stored as bitmasks and ordered lexicographically by their index tuples.

mod ring;
mod symplectic;

pub use ring::{Class, CohomologyRing};
pub use symplectic::{
    family_lefschetz, hard_lefschetz, symplectic_check, t2_cp3_check, DegreeCheck,
    FamilyLefschetzReport, LefschetzReport, RingCheckReport, SpecializationEntry, SymplecticReport,
    TwoForm,
};

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{mat_rank, MatrixQ, Rational};
use crate::liealg::LieAlgebra;

/// Monomials of degree `k` in `n` letters, lex order of index tuples.
pub fn monomials(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// Sign of `a ∧ b` relative to the sorted monomial `a | b`; zero if they overlap.
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

#[derive(Clone, Debug)]
pub struct CochainComplex {
    algebra: LieAlgebra,
    bases: Vec<Vec<u32>>,
    positions: Vec<HashMap<u32, usize>>,
    d: Vec<MatrixQ>,
}

impl CochainComplex {
    pub fn new(l: &LieAlgebra) -> Result<Self> {
        let n = l.dim();
        if n > 24 {
            return Err(Error::InvalidParameter(format!(
                "dimension {n} too large for the exterior algebra"
            )));
        }
        let bases: Vec<Vec<u32>> = (0..=n).map(|k| monomials(n, k)).collect();
        let positions = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, &m)| (m, i)).collect())
            .collect();
        let mut cx = CochainComplex {
            algebra: l.clone(),
            bases,
            positions,
            d: Vec::new(),
        };
        cx.d = (0..=n).map(|k| cx.build_d(k)).collect();
        Ok(cx)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn basis(&self, k: usize) -> &[u32] {
        &self.bases[k]
    }

    pub fn position(&self, mask: u32) -> usize {
        self.positions[mask.count_ones() as usize][&mask]
    }

    /// `d e^k = −Σ_{i<j} c_ij^k e^i∧e^j`, as (mask, coefficient) pairs.
    fn d_generator(&self, k: usize) -> Vec<(u32, Rational)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = &self.algebra.bracket_basis(i, j)[k];
                if !c.is_zero() {
                    out.push(((1u32 << i) | (1u32 << j), -c));
                }
            }
        }
        out
    }

    fn build_d(&self, k: usize) -> MatrixQ {
        let n = self.dim();
        let rows = if k < n { self.bases[k + 1].len() } else { 0 };
        let mut m = MatrixQ::zeros(rows, self.bases[k].len());
        if k >= n {
            return m;
        }
        let gens: Vec<Vec<(u32, Rational)>> = (0..n).map(|g| self.d_generator(g)).collect();
        for (col, &mono) in self.bases[k].iter().enumerate() {
            let idx = indices(mono);
            for (s, &i) in idx.iter().enumerate() {
                let before: u32 = idx[..s].iter().map(|&t| 1u32 << t).sum();
                let after: u32 = idx[s + 1..].iter().map(|&t| 1u32 << t).sum();
                let sign_s = if s % 2 == 0 { 1 } else { -1 };
                for (pq, c) in &gens[i] {
                    let s1 = wedge_sign(before, *pq);
                    if s1 == 0 {
                        continue;
                    }
                    let s2 = wedge_sign(before | pq, after);
                    if s2 == 0 {
                        continue;
                    }
                    let target = before | pq | after;
                    let row = self.positions[k + 1][&target];
                    let sign = Rational::from_integer((sign_s * s1 * s2).into());
                    let v = &m[(row, col)] + c * sign;
                    m[(row, col)] = v;
                }
            }
        }
        m
    }

    /// Matrix of `d: Λ^k → Λ^{k+1}`.
    pub fn differential(&self, k: usize) -> Result<&MatrixQ> {
        self.d.get(k).ok_or(Error::DegreeOutOfRange {
            degree: k,
            max: self.dim(),
        })
    }

    pub fn apply_d(&self, k: usize, v: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self.differential(k)?.mul_vec(v))
    }

    pub fn betti(&self) -> Vec<usize> {
        let n = self.dim();
        let ranks: Vec<usize> = self
            .d
            .iter()
            .map(|m| if m.rows() == 0 { 0 } else { mat_rank(m) })
            .collect();
        (0..=n)
            .map(|k| {
                let dim_k = self.bases[k].len();
                let prev = if k == 0 { 0 } else { ranks[k - 1] };
                dim_k - ranks[k] - prev
            })
            .collect()
    }

    /// Wedge product of a p-cochain and a q-cochain.
    pub fn wedge(
        &self,
        p: usize,
        a: &[Rational],
        q: usize,
        b: &[Rational],
    ) -> Result<Vec<Rational>> {
        if p + q > self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: p + q,
                max: self.dim(),
            });
        }
        let mut out = vec![Rational::zero(); self.bases[p + q].len()];
        for (x, &ma) in a.iter().zip(&self.bases[p]) {
            if x.is_zero() {
                continue;
            }
            for (y, &mb) in b.iter().zip(&self.bases[q]) {
                if y.is_zero() {
                    continue;
                }
                let s = wedge_sign(ma, mb);
                if s == 0 {
                    continue;
                }
                let pos = self.positions[p + q][&(ma | mb)];
                let t = x * y;
                if s > 0 {
                    out[pos] += t;
                } else {
                    out[pos] -= t;
                }
            }
        }
        Ok(out)
    }

    /// The cochain dual to a single monomial given by basis indices (in any order, with sign).
    pub fn monomial_cochain(&self, idx: &[usize]) -> Result<Vec<Rational>> {
        let k = idx.len();
        if k > self.dim() || idx.iter().any(|&i| i >= self.dim()) {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                max: self.dim(),
            });
        }
        let mut acc = 0u32;
        let mut sign = 1;
        for &i in idx {
            let s = wedge_sign(acc, 1 << i);
            if s == 0 {
                return Ok(vec![Rational::zero(); self.bases[k].len()]);
            }
            sign *= s;
            acc |= 1 << i;
        }
        let mut v = vec![Rational::zero(); self.bases[k].len()];
        v[self.positions[k][&acc]] = Rational::from_integer(sign.into());
        Ok(v)
    }
}

/// Matrix of `d: Λ^k → Λ^{k+1}` for `l`.
pub fn ce_differential(l: &LieAlgebra, k: usize) -> Result<MatrixQ> {
    if k > l.dim() {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            max: l.dim(),
        });
    }
    Ok(CochainComplex::new(l)?.differential(k)?.clone())
}

pub fn betti(l: &LieAlgebra) -> Result<Vec<usize>> {
    Ok(CochainComplex::new(l)?.betti())
}
