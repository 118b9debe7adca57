//! Lattices in the modified family from integer cubics `x³ − p x² + q x − 1`.

mod certificate;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{isolate_roots, to_f64, IntMatrix, Rational, RootInterval, UniPoly};

pub use certificate::{
    build_lattice, closure_entries, verify_certificate, ClosureEntry, LambdaBasis,
    LatticeCertificate, VerifiedLattice,
};

const MAX_COEFF: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubicSpec {
    pub p: i64,
    pub q: i64,
}

impl CubicSpec {
    /// `x³ − p x² + q x − 1`.
    pub fn polynomial(&self) -> UniPoly {
        UniPoly::from_i64(&[-1, self.q, -self.p, 1])
    }

    /// Characteristic polynomial of the induced action on `Λ²`: `x³ − q x² + p x − 1`.
    pub fn dual_polynomial(&self) -> UniPoly {
        UniPoly::from_i64(&[-1, self.p, -self.q, 1])
    }
}

fn reject(p: i64, q: i64, reason: impl Into<String>) -> Error {
    Error::InvalidCubic {
        p,
        q,
        reason: reason.into(),
    }
}

/// Accepts the cubic when it has three distinct real roots, none equal to 1, all positive.
pub fn validate_cubic(p: i64, q: i64) -> Result<CubicSpec> {
    if p.abs() > MAX_COEFF || q.abs() > MAX_COEFF {
        return Err(reject(
            p,
            q,
            format!("coefficients are limited to {MAX_COEFF} in absolute value"),
        ));
    }
    let spec = CubicSpec { p, q };
    let f = spec.polynomial();
    if f.squarefree_part().degree() != Some(3) {
        return Err(reject(p, q, "repeated root"));
    }
    let iso = isolate_roots(&f, &Rational::new(1.into(), 1024.into()));
    let n = iso.intervals.len();
    if n != 3 {
        return Err(reject(
            p,
            q,
            format!("only {n} real root{}", if n == 1 { "" } else { "s" }),
        ));
    }
    if p == q {
        return Err(reject(p, q, "x = 1 is a root"));
    }
    if iso.positive().len() != 3 {
        return Err(reject(p, q, "not all roots are positive"));
    }
    Ok(spec)
}

/// Companion matrix with characteristic polynomial `x³ − p x² + q x − 1`.
pub fn companion(p: i64, q: i64) -> Result<IntMatrix> {
    validate_cubic(p, q)?;
    Ok(companion_unchecked(p, q))
}

pub(crate) fn companion_unchecked(p: i64, q: i64) -> IntMatrix {
    IntMatrix::from_i64_rows(&[&[0, 0, 1], &[1, 0, -q], &[0, 1, p]])
}

/// Pairs `(i, j)` indexing the wedge basis `e₂∧e₃, e₁∧e₃, e₁∧e₂`.
pub const WEDGE_PAIRS: [(usize, usize); 3] = [(1, 2), (0, 2), (0, 1)];

/// Induced action on `Λ²` in the basis `e₂∧e₃, e₁∧e₃, e₁∧e₂`; entries are 2×2 minors.
pub fn compound2(c: &IntMatrix) -> Result<IntMatrix> {
    if c.rows() != 3 || c.cols() != 3 {
        return Err(Error::NotSquare {
            rows: c.rows(),
            cols: c.cols(),
        });
    }
    let mut out = IntMatrix::zeros(3, 3);
    for (r, &(k, l)) in WEDGE_PAIRS.iter().enumerate() {
        for (s, &(i, j)) in WEDGE_PAIRS.iter().enumerate() {
            out[(r, s)] = &c[(k, i)] * &c[(l, j)] - &c[(l, i)] * &c[(k, j)];
        }
    }
    Ok(out)
}

/// Exact facts about `λ_i = ln x_i` plus floating enclosures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaData {
    pub roots: Vec<RootInterval>,
    /// `[lo, hi]` enclosures of `ln x_i`, widened outward; not certified.
    pub enclosures: Vec<[f64; 2]>,
    /// Product of roots is 1, so the λ sum to zero.
    pub sum_zero: bool,
    pub nonzero: bool,
    pub distinct: bool,
    /// No relation `a λ₁ + b λ₂ = 0` with `0 < max(|a|, |b|) ≤ 12` at tolerance 1e-12. Advisory only.
    pub independence_advisory: bool,
}

pub(crate) fn root_intervals(spec: &CubicSpec) -> Vec<RootInterval> {
    let width = Rational::new(BigInt::one(), BigInt::from(10u64).pow(18));
    isolate_roots(&spec.polynomial(), &width).intervals
}

fn widen(x: f64, dir: f64) -> f64 {
    x + dir * (x.abs() * 4.0 * f64::EPSILON + f64::MIN_POSITIVE)
}

pub fn weights_from_cubic(spec: &CubicSpec) -> Result<LambdaData> {
    let spec = validate_cubic(spec.p, spec.q)?;
    let roots = root_intervals(&spec);
    let enclosures: Vec<[f64; 2]> = roots
        .iter()
        .map(|iv| {
            [
                widen(to_f64(&iv.lo).ln(), -1.0),
                widen(to_f64(&iv.hi).ln(), 1.0),
            ]
        })
        .collect();
    let f = spec.polynomial();
    let mid = |e: &[f64; 2]| 0.5 * (e[0] + e[1]);
    let (l1, l2) = (mid(&enclosures[0]), mid(&enclosures[1]));
    let independence_advisory = (-12i32..=12)
        .flat_map(|a| (-12i32..=12).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0))
        .all(|(a, b)| (f64::from(a) * l1 + f64::from(b) * l2).abs() > 1e-12);
    Ok(LambdaData {
        sum_zero: f.coeff(0) == -Rational::one() && f.leading().is_one(),
        nonzero: !f.eval(&Rational::one()).is_zero(),
        distinct: f.squarefree_part().degree() == Some(3),
        roots,
        enclosures,
        independence_advisory,
    })
}

pub(crate) fn int_to_i64(x: &BigInt) -> i64 {
    x.to_i64()
        .unwrap_or(if x.is_negative() { i64::MIN } else { i64::MAX })
}
