use serde::{Deserialize, Serialize};

use crate::exact::{MatrixQ, Rational};

/// Linear subspace of ℚⁿ held as a reduced row-echelon basis, so equal
/// subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    #[serde(with = "rows_serde")]
    basis: Vec<Vec<Rational>>,
}

mod rows_serde {
    use crate::exact::{serde_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row(#[serde(with = "serde_rational::vec")] Vec<Rational>);

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| Row(r.clone()))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Ok(Vec::<Row>::deserialize(d)?
            .into_iter()
            .map(|r| r.0)
            .collect())
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, MatrixQ::identity(ambient).to_rows())
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let rows: Vec<Vec<Rational>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let m = MatrixQ::from_rows(rows).expect("vectors of equal length");
        let (r, pivots) = m.rref();
        Subspace {
            ambient,
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Subspace::span(self.ambient, rows).dim() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // solve Σ a_i u_i = Σ b_j w_j
        let mut cols: Vec<Vec<Rational>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let m = MatrixQ::from_columns(self.ambient, &cols);
        let vecs = m.kernel().into_iter().map(|k| {
            let mut v = vec![Rational::default(); self.ambient];
            for (a, u) in k.iter().zip(&self.basis) {
                for (x, y) in v.iter_mut().zip(u) {
                    *x += a * y;
                }
            }
            v
        });
        Subspace::span(self.ambient, vecs)
    }

    /// Coordinates of `v` in the stored basis, if it lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if self.is_zero() {
            return v.iter().all(|x| *x == Rational::default()).then(Vec::new);
        }
        MatrixQ::from_columns(self.ambient, &self.basis).solve(v)
    }
}
