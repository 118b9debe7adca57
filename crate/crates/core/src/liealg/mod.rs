//! Lie algebras over ℚ given by structure constants.

mod constructors;
mod subspace;
mod text;

pub use constructors::{
    abelian, direct_sum, example2, example3, free2step, g65, heisenberg3, kodaira_thurston,
    modified_family, n3_plus_n3,
};
pub use subspace::Subspace;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{sturm_count, MatrixQ, Rational};

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    c: Vec<Vec<Vec<Rational>>>,
}

/// Outcome of [`LieAlgebra::validate`]; the first failing pair or triple in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub antisymmetry: Option<(String, String)>,
    pub jacobi: Option<(String, String, String)>,
}

/// Eigenvalues of a diagonal `ad A`, one per basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSystem {
    pub derivation: usize,
    #[serde(with = "crate::exact::serde_rational::vec")]
    pub weights: Vec<Rational>,
}

impl WeightSystem {
    /// Weight of `[e_i, e_j]` equals `w_i + w_j` whenever the bracket is nonzero.
    pub fn is_additive(&self, l: &LieAlgebra) -> bool {
        let n = l.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                l.c[i][j].iter().enumerate().all(|(k, x)| {
                    x.is_zero() || self.weights[k] == &self.weights[i] + &self.weights[j]
                })
            })
        })
    }
}

impl LieAlgebra {
    /// Abelian algebra on the given labels; fill in with [`LieAlgebra::set_bracket`].
    pub fn new(labels: &[&str]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        for (i, a) in labels.iter().enumerate() {
            if a.is_empty() || labels[..i].contains(a) {
                return Err(Error::InvalidParameter(format!(
                    "bad or repeated basis label `{a}`"
                )));
            }
        }
        let n = labels.len();
        Ok(LieAlgebra {
            labels,
            c: vec![vec![vec![Rational::zero(); n]; n]; n],
        })
    }

    /// Raw table, not checked for antisymmetry or Jacobi.
    pub fn from_table(labels: &[&str], c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let mut l = Self::new(labels)?;
        let n = l.dim();
        if c.len() != n
            || c.iter()
                .any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return Err(Error::DimensionMismatch(format!(
                "structure constants must be {n}×{n}×{n}"
            )));
        }
        l.c = c;
        Ok(l)
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = −v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vec<Rational>) {
        assert_eq!(v.len(), self.dim());
        self.c[j][i] = v.iter().map(|x| -x).collect();
        self.c[i][j] = v;
    }

    /// Sets a bracket from labels, e.g. `set("X1", "X2", &[(-1, "Z3")])`.
    pub fn set(&mut self, a: &str, b: &str, terms: &[(Rational, &str)]) -> Result<()> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        let mut v = vec![Rational::zero(); self.dim()];
        for (c, lab) in terms {
            v[self.index(lab)?] += c;
        }
        self.set_bracket(i, j, v);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVariable(label.to_string()))
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.c
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.c[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::from_integer(1.into());
        v
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(&self.c[i][j]) {
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad u`, acting on column vectors.
    pub fn ad(&self, u: &[Rational]) -> MatrixQ {
        let cols: Vec<Vec<Rational>> = (0..self.dim())
            .map(|j| self.bracket(u, &self.basis_vector(j)))
            .collect();
        MatrixQ::from_columns(self.dim(), &cols)
    }

    pub fn ad_basis(&self, i: usize) -> MatrixQ {
        self.ad(&self.basis_vector(i))
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut report = ValidationReport {
            ok: true,
            antisymmetry: None,
            jacobi: None,
        };
        'anti: for i in 0..n {
            for j in i..n {
                let bad = self.c[i][j]
                    .iter()
                    .zip(&self.c[j][i])
                    .any(|(a, b)| a != &-b);
                if bad {
                    report.antisymmetry = Some((self.labels[i].clone(), self.labels[j].clone()));
                    break 'anti;
                }
            }
        }
        'jac: for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (
                        self.basis_vector(i),
                        self.basis_vector(j),
                        self.basis_vector(k),
                    );
                    let a = self.bracket(&ei, &self.c[j][k]);
                    let b = self.bracket(&ej, &self.c[k][i]);
                    let c = self.bracket(&ek, &self.c[i][j]);
                    if a.iter()
                        .zip(&b)
                        .zip(&c)
                        .any(|((x, y), z)| !(x + y + z).is_zero())
                    {
                        report.jacobi = Some((
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                        break 'jac;
                    }
                }
            }
        }
        report.ok = report.antisymmetry.is_none() && report.jacobi.is_none();
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().ok
    }

    /// Span of `[a, b]` for `a` in `s`, `b` in `t`.
    pub fn bracket_spaces(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for a in s.basis() {
            for b in t.basis() {
                vecs.push(self.bracket(a, b));
            }
        }
        Subspace::span(self.dim(), vecs)
    }

    pub fn derived_subalgebra(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_spaces(&full, &full)
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // stack ad(e_i) for all i; the center is the joint kernel
        let mut rows = Vec::new();
        for i in 0..n {
            rows.extend(self.ad_basis(i).to_rows());
        }
        if rows.is_empty() {
            return Subspace::zero(0);
        }
        let m = MatrixQ::from_rows(rows).expect("rectangular");
        Subspace::span(n, m.kernel())
    }

    /// `L ⊇ [L,L] ⊇ [L,[L,L]] ⊇ …`, ending at the first repeated term.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut out = vec![full.clone()];
        loop {
            let next = self.bracket_spaces(&full, out.last().unwrap());
            if &next == out.last().unwrap() {
                return out;
            }
            out.push(next);
        }
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = vec![Subspace::full(self.dim())];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_spaces(last, last);
            if &next == last {
                return out;
            }
            out.push(next);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    /// Nilpotency class, `None` if not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        s.last().unwrap().is_zero().then(|| s.len() - 1)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    /// Solvable, and every `ad e_i` has only real eigenvalues.
    pub fn is_completely_solvable(&self) -> bool {
        self.is_solvable() && (0..self.dim()).all(|i| has_real_spectrum(&self.ad_basis(i)))
    }

    fn check_square(&self, m: &MatrixQ) -> bool {
        m.rows() == self.dim() && m.cols() == self.dim()
    }

    pub fn is_derivation(&self, m: &MatrixQ) -> bool {
        if !self.check_square(m) {
            return false;
        }
        let n = self.dim();
        let img: Vec<Vec<Rational>> = (0..n).map(|j| m.column(j)).collect();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let lhs = m.mul_vec(&self.c[i][j]);
                let a = self.bracket(&img[i], &self.basis_vector(j));
                let b = self.bracket(&self.basis_vector(i), &img[j]);
                lhs.iter()
                    .zip(a.iter().zip(&b))
                    .all(|(l, (x, y))| *l == x + y)
            })
        })
    }

    pub fn is_automorphism(&self, m: &MatrixQ) -> bool {
        if !self.check_square(m) || m.rank() != self.dim() {
            return false;
        }
        let n = self.dim();
        let img: Vec<Vec<Rational>> = (0..n).map(|j| m.column(j)).collect();
        (0..n)
            .all(|i| (i + 1..n).all(|j| m.mul_vec(&self.c[i][j]) == self.bracket(&img[i], &img[j])))
    }

    pub fn subalgebra_generated(&self, vectors: &[Vec<Rational>]) -> Subspace {
        let mut s = Subspace::span(self.dim(), vectors.iter().cloned());
        loop {
            let next = s.sum(&self.bracket_spaces(&s, &s));
            if next == s {
                return s;
            }
            s = next;
        }
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_spaces(s, s))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_spaces(&Subspace::full(self.dim()), s))
    }

    /// Weights of the basis under `ad e_a`, when that map is diagonal in the basis.
    pub fn weights(&self, a: usize) -> Option<WeightSystem> {
        let m = self.ad_basis(a);
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if i != j && !m[(i, j)].is_zero() {
                    return None;
                }
            }
        }
        Some(WeightSystem {
            derivation: a,
            weights: (0..n).map(|i| m[(i, i)].clone()).collect(),
        })
    }

    /// The subalgebra spanned by the listed basis vectors, in that order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        let labels: Vec<&str> = indices.iter().map(|&i| self.labels[i].as_str()).collect();
        let mut l = Self::new(&labels)?;
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                let v = &self.c[i][j];
                if v.iter()
                    .enumerate()
                    .any(|(k, x)| !x.is_zero() && !indices.contains(&k))
                {
                    return Err(Error::InvalidParameter(format!(
                        "[{}, {}] leaves the span",
                        self.labels[i], self.labels[j]
                    )));
                }
                l.c[a][b] = indices.iter().map(|&k| v[k].clone()).collect();
            }
        }
        Ok(l)
    }

    /// Same constants under new labels.
    pub fn relabeled(&self, labels: &[&str]) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch("label count".into()));
        }
        let mut l = Self::new(labels)?;
        l.c = self.c.clone();
        Ok(l)
    }

    /// Structure constants in the basis given by the columns of `m` (new basis vectors in old coordinates).
    pub fn change_basis(&self, m: &MatrixQ, labels: &[&str]) -> Result<Self> {
        let inv = m
            .inverse()
            .ok_or_else(|| Error::InvalidParameter("change of basis is singular".into()))?;
        let n = self.dim();
        let mut l = Self::new(labels)?;
        if l.dim() != n {
            return Err(Error::DimensionMismatch("label count".into()));
        }
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| m.column(j)).collect();
        for i in 0..n {
            for j in 0..n {
                l.c[i][j] = inv.mul_vec(&self.bracket(&cols[i], &cols[j]));
            }
        }
        Ok(l)
    }

    /// Same table up to a permutation of the basis: `perm[i]` is the index in `other` matching `e_i`.
    pub fn same_table_under(&self, other: &LieAlgebra, perm: &[usize]) -> bool {
        let n = self.dim();
        if other.dim() != n || perm.len() != n {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.c[i][j][k] == other.c[perm[i]][perm[j]][perm[k]]))
        })
    }

    pub fn to_text(&self) -> String {
        text::write(self)
    }

    pub fn from_text(s: &str) -> Result<Self> {
        text::read(s)
    }
}

/// All eigenvalues real: the squarefree part of the characteristic polynomial has as many
/// real roots as its degree.
pub fn has_real_spectrum(m: &MatrixQ) -> bool {
    let p = m.charpoly().expect("square").squarefree_part();
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return true;
    }
    let b = p.cauchy_bound() + Rational::from_integer(1.into());
    sturm_count(&p, &-b.clone(), &b) == d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn rotation_algebra_not_completely_solvable() {
        let mut l = LieAlgebra::new(&["A", "X", "Y"]).unwrap();
        l.set("A", "X", &[(int(1), "Y")]).unwrap();
        l.set("A", "Y", &[(int(-1), "X")]).unwrap();
        assert!(l.is_valid());
        assert!(l.is_solvable());
        assert!(!l.is_completely_solvable());
    }

    #[test]
    fn jacobi_failure_reported() {
        let mut l = example2();
        l.set("A", "Z1", &[(int(2), "Z1")]).unwrap();
        let r = l.validate();
        assert!(!r.ok);
        assert_eq!(r.jacobi, Some(("A".into(), "X2".into(), "X3".into())));
        let mut l = abelian(2);
        l.c[0][1][0] = int(1);
        assert_eq!(l.validate().antisymmetry, Some(("E1".into(), "E2".into())));
    }
}
