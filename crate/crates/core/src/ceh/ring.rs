use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::CochainComplex;
use crate::error::{Error, Result};
use crate::exact::{MatrixQ, Rational};
use crate::liealg::{LieAlgebra, Subspace};

/// A cohomology class given by coordinates in the stored representatives of its degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Class {
    pub degree: usize,
    #[serde(with = "crate::exact::serde_rational::vec")]
    pub coords: Vec<Rational>,
}

impl Class {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Class) -> Class {
        assert_eq!(self.degree, other.degree);
        Class {
            degree: self.degree,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Class {
        Class {
            degree: self.degree,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

#[derive(Clone, Debug)]
struct Degree {
    reps: Vec<Vec<Rational>>,
    boundaries: Subspace,
    /// Columns: representatives, then a basis of the boundaries.
    frame: Option<MatrixQ>,
}

/// Cohomology of a cochain complex with chosen cocycle representatives per degree.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    complex: CochainComplex,
    degrees: Vec<Degree>,
}

impl CohomologyRing {
    pub fn new(l: &LieAlgebra) -> Result<Self> {
        Ok(Self::from_complex(CochainComplex::new(l)?))
    }

    pub fn from_complex(complex: CochainComplex) -> Self {
        let n = complex.dim();
        let mut degrees = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let size = complex.basis(k).len();
            let d = complex.differential(k).expect("in range");
            let cocycles: Vec<Vec<Rational>> = if d.rows() == 0 {
                MatrixQ::identity(size).to_rows()
            } else {
                d.kernel()
            };
            let boundaries = if k == 0 {
                Subspace::zero(size)
            } else {
                let prev = complex.differential(k - 1).expect("in range");
                Subspace::span(size, (0..prev.cols()).map(|j| prev.column(j)))
            };
            let mut span = boundaries.clone();
            let mut reps = Vec::new();
            for z in cocycles {
                if !span.contains(&z) {
                    span = span.sum(&Subspace::span(size, [z.clone()]));
                    reps.push(z);
                }
            }
            let mut cols = reps.clone();
            cols.extend(boundaries.basis().iter().cloned());
            let frame = (!cols.is_empty()).then(|| MatrixQ::from_columns(size, &cols));
            degrees.push(Degree {
                reps,
                boundaries,
                frame,
            });
        }
        CohomologyRing { complex, degrees }
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.reps.len()).collect()
    }

    pub fn representatives(&self, k: usize) -> &[Vec<Rational>] {
        &self.degrees[k].reps
    }

    pub fn boundaries(&self, k: usize) -> &Subspace {
        &self.degrees[k].boundaries
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        if k > self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                max: self.dim(),
            });
        }
        Ok(())
    }

    pub fn unit(&self) -> Class {
        self.class_of(0, &[Rational::from_integer(1.into())])
            .expect("constants are cocycles")
    }

    pub fn zero_class(&self, k: usize) -> Class {
        Class {
            degree: k,
            coords: vec![Rational::zero(); self.degrees[k].reps.len()],
        }
    }

    /// The i-th basis class of degree k.
    pub fn basis_class(&self, k: usize, i: usize) -> Class {
        let mut c = self.zero_class(k);
        c.coords[i] = Rational::from_integer(1.into());
        c
    }

    /// Class of a cocycle; errors if `v` is not closed.
    pub fn class_of(&self, k: usize, v: &[Rational]) -> Result<Class> {
        self.check_degree(k)?;
        if v.len() != self.complex.basis(k).len() {
            return Err(Error::DimensionMismatch(format!(
                "a {k}-cochain has {} coordinates, got {}",
                self.complex.basis(k).len(),
                v.len()
            )));
        }
        if self.complex.apply_d(k, v)?.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotClosed);
        }
        let deg = &self.degrees[k];
        let b = deg.reps.len();
        let coords = match &deg.frame {
            None => Vec::new(),
            Some(f) => f.solve(v).expect("cocycles lie in reps + boundaries")[..b].to_vec(),
        };
        Ok(Class { degree: k, coords })
    }

    pub fn representative(&self, c: &Class) -> Vec<Rational> {
        let size = self.complex.basis(c.degree).len();
        let mut v = vec![Rational::zero(); size];
        for (a, r) in c.coords.iter().zip(&self.degrees[c.degree].reps) {
            if a.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(r) {
                *x += a * y;
            }
        }
        v
    }

    pub fn cup(&self, a: &Class, b: &Class) -> Result<Class> {
        let (p, q) = (a.degree, b.degree);
        self.check_degree(p + q)?;
        let w = self
            .complex
            .wedge(p, &self.representative(a), q, &self.representative(b))?;
        self.class_of(p + q, &w)
    }

    pub fn power(&self, a: &Class, k: usize) -> Result<Class> {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.cup(&acc, a)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::liealg::{abelian, heisenberg3};

    #[test]
    fn torus_ring() {
        let r = CohomologyRing::new(&abelian(2)).unwrap();
        assert_eq!(r.betti(), vec![1, 2, 1]);
        let (a, b) = (r.basis_class(1, 0), r.basis_class(1, 1));
        let ab = r.cup(&a, &b).unwrap();
        let ba = r.cup(&b, &a).unwrap();
        assert!(!ab.is_zero());
        assert_eq!(ab, ba.scale(&int(-1)));
        assert_eq!(r.cup(&r.unit(), &a).unwrap(), a);
        assert!(r.cup(&ab, &a).is_err());
    }

    #[test]
    fn non_cocycle_rejected() {
        let r = CohomologyRing::new(&heisenberg3()).unwrap();
        assert_eq!(
            r.class_of(1, &[int(0), int(0), int(1)]),
            Err(Error::NotClosed)
        );
        // X^Y is exact
        assert!(r.class_of(2, &[int(1), int(0), int(0)]).unwrap().is_zero());
    }
}
