use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{
    companion_unchecked, compound2, int_to_i64, root_intervals, validate_cubic, CubicSpec,
};
use crate::error::{Error, Result};
use crate::exact::{
    rational_roots, smith_normal_form, sturm_count, IntMatrix, MatrixQ, Rational, RootInterval,
};
use crate::liealg::{free2step, LieAlgebra};

const LABELS: [&str; 6] = ["X1", "X2", "X3", "W23", "W13", "W12"];

/// Generators of the log-lattice in the wedge basis of the free 2-step algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaBasis {
    pub labels: Vec<String>,
    /// Coordinates of each generator in `X1, X2, X3, W23, W13, W12`.
    #[serde(with = "rational_rows")]
    pub basis: Vec<Vec<Rational>>,
    /// Factor applied to the wedge part of the basis.
    #[serde(with = "crate::exact::serde_rational")]
    pub center_scale: Rational,
    /// `W = M · Z` relating the wedge basis to `Z1, Z2, Z3` with `[X2,X3] = 2Z1, [X1,X3] = Z2, [X1,X2] = −Z3`.
    pub wedge_to_family: IntMatrix,
}

mod rational_rows {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exact::{parse_rational, to_exact_string, Rational};

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = v
            .iter()
            .map(|r| r.iter().map(to_exact_string).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|x| parse_rational(x).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Product and commutator of two lattice elements, in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureEntry {
    pub left: String,
    pub right: String,
    #[serde(with = "crate::exact::serde_rational::vec")]
    pub product: Vec<Rational>,
    #[serde(with = "crate::exact::serde_rational::vec")]
    pub commutator: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeCertificate {
    pub cubic: CubicSpec,
    pub roots: Vec<RootInterval>,
    #[serde(rename = "C")]
    pub c: IntMatrix,
    #[serde(rename = "C2")]
    pub c2: IntMatrix,
    pub lambda_basis: LambdaBasis,
    pub closure: Vec<ClosureEntry>,
    /// `diag(C, C2)` acting on exponential coordinates.
    pub gamma_action: IntMatrix,
    /// Index of the span of commutators of generators in the center lattice.
    pub prop1_index: u64,
    /// `|det(C − I)|`: index of the commutators with the generator of ℤ in the abelianization.
    pub abelian_index: u64,
    pub group: String,
}

/// What verification recomputed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedLattice {
    pub checks: Vec<String>,
    pub prop1_index: u64,
    pub abelian_index: u64,
}

fn algebra() -> LieAlgebra {
    free2step(3).expect("three generators")
}

fn standard_basis(scale: &Rational) -> Vec<Vec<Rational>> {
    (0..6)
        .map(|i| {
            let mut v = vec![Rational::zero(); 6];
            v[i] = if i < 3 {
                Rational::one()
            } else {
                scale.clone()
            };
            v
        })
        .collect()
}

fn basis_matrix(basis: &[Vec<Rational>]) -> MatrixQ {
    MatrixQ::from_columns(6, basis)
}

fn elements(basis: &LambdaBasis) -> Vec<(String, Vec<Rational>)> {
    let mut out: Vec<(String, Vec<Rational>)> = basis
        .labels
        .iter()
        .cloned()
        .zip(basis.basis.iter().cloned())
        .collect();
    for (l, v) in out.clone() {
        out.push((format!("{l}^-1"), v.iter().map(|x| -x).collect()));
    }
    out
}

/// 2-step Baker–Campbell–Hausdorff: `u · v = u + v + ½[u, v]`.
fn bch(l: &LieAlgebra, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let half = Rational::new(1.into(), 2.into());
    let b = l.bracket(u, v);
    u.iter()
        .zip(v)
        .zip(&b)
        .map(|((x, y), z)| x + y + &half * z)
        .collect()
}

/// Products and commutators of all pairs of generators and inverses, in lattice coordinates.
pub fn closure_entries(basis: &LambdaBasis) -> Result<Vec<ClosureEntry>> {
    let l = algebra();
    let inv = basis_matrix(&basis.basis)
        .inverse()
        .ok_or_else(|| Error::CertificateFailed("lambda_basis".into()))?;
    let els = elements(basis);
    let mut out = Vec::with_capacity(els.len() * els.len());
    for (ln, u) in &els {
        for (rn, v) in &els {
            out.push(ClosureEntry {
                left: ln.clone(),
                right: rn.clone(),
                product: inv.mul_vec(&bch(&l, u, v)),
                // a b a⁻¹ b⁻¹ = exp([u, v]) in two steps
                commutator: inv.mul_vec(&l.bracket(u, v)),
            });
        }
    }
    Ok(out)
}

fn gamma_matrix(c: &IntMatrix, c2: &IntMatrix) -> IntMatrix {
    let mut g = IntMatrix::zeros(6, 6);
    for i in 0..3 {
        for j in 0..3 {
            g[(i, j)] = c[(i, j)].clone();
            g[(i + 3, j + 3)] = c2[(i, j)].clone();
        }
    }
    g
}

/// Index of the span of generator commutators inside the center lattice, via Smith form.
fn prop1_index(basis: &LambdaBasis) -> Result<Option<BigInt>> {
    let l = algebra();
    let inv = basis_matrix(&basis.basis)
        .inverse()
        .ok_or_else(|| Error::CertificateFailed("lambda_basis".into()))?;
    let mut cols = Vec::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            let c = inv.mul_vec(&l.bracket(&basis.basis[i], &basis.basis[j]));
            if c[..3].iter().any(|x| !x.is_zero()) || c.iter().any(|x| !x.is_integer()) {
                return Ok(None);
            }
            cols.push(c[3..].iter().map(|x| x.to_integer()).collect::<Vec<_>>());
        }
    }
    let rows: Vec<Vec<BigInt>> = (0..3)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    Ok(smith_normal_form(&IntMatrix::from_rows(rows)?).lattice_index())
}

fn abelian_index(c: &IntMatrix) -> Result<BigInt> {
    let mut m = c.clone();
    for i in 0..3 {
        m[(i, i)] -= BigInt::one();
    }
    Ok(m.det()?.abs())
}

fn to_u64(x: &BigInt) -> u64 {
    u64::try_from(int_to_i64(x)).unwrap_or(0)
}

/// Builds `Γ = ℤ × (ℤ ⋉_γ exp Λ)` for a valid cubic and checks it before returning.
pub fn build_lattice(p: i64, q: i64) -> Result<LatticeCertificate> {
    let cubic = validate_cubic(p, q)?;
    let c = companion_unchecked(p, q);
    let c2 = compound2(&c)?;
    let half = Rational::new(1.into(), 2.into());
    let lambda_basis = LambdaBasis {
        labels: LABELS
            .iter()
            .map(|s| {
                if s.starts_with('W') {
                    format!("{s}/2")
                } else {
                    s.to_string()
                }
            })
            .collect(),
        basis: standard_basis(&half),
        center_scale: half,
        wedge_to_family: IntMatrix::from_i64_rows(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
    };
    let closure = closure_entries(&lambda_basis)?;
    let prop1 =
        prop1_index(&lambda_basis)?.ok_or_else(|| Error::CertificateFailed("prop1".into()))?;
    let cert = LatticeCertificate {
        cubic,
        roots: root_intervals(&cubic),
        gamma_action: gamma_matrix(&c, &c2),
        abelian_index: to_u64(&abelian_index(&c)?),
        c,
        c2,
        lambda_basis,
        closure,
        prop1_index: to_u64(&prop1),
        group: "Z x (Z ⋉_gamma exp(Lambda))".into(),
    };
    verify_certificate(&cert)?;
    Ok(cert)
}

fn fail(name: &str) -> Error {
    Error::CertificateFailed(name.into())
}

fn ensure(ok: bool, name: &str, checks: &mut Vec<String>) -> Result<()> {
    if ok {
        checks.push(name.into());
        Ok(())
    } else {
        Err(fail(name))
    }
}

/// Re-runs every check from the certificate data; the error names the first failing check.
pub fn verify_certificate(cert: &LatticeCertificate) -> Result<VerifiedLattice> {
    let mut checks = Vec::new();
    let CubicSpec { p, q } = cert.cubic;
    ensure(validate_cubic(p, q).is_ok(), "cubic", &mut checks)?;

    let f = cert.cubic.polynomial();
    let roots_ok = cert.roots.len() == 3
        && cert.roots.iter().all(|iv| {
            iv.lo.is_positive()
                && iv.lo < iv.hi
                && sturm_count(&f, &iv.lo, &iv.hi) == 1
                && !f.eval(&iv.hi).is_zero()
        })
        && cert.roots.windows(2).all(|w| w[0].hi <= w[1].lo)
        && rational_roots(&f).is_empty();
    ensure(roots_ok, "roots", &mut checks)?;

    let square3 = |m: &IntMatrix| m.rows() == 3 && m.cols() == 3;
    let charpoly_ok = square3(&cert.c)
        && square3(&cert.c2)
        && cert.c.det().is_ok_and(|d| d.is_one())
        && cert.c2.det().is_ok_and(|d| d.is_one())
        && cert.c.to_rational().charpoly().is_ok_and(|cp| cp == f)
        && cert
            .c2
            .to_rational()
            .charpoly()
            .is_ok_and(|cp| cp == cert.cubic.dual_polynomial());
    ensure(charpoly_ok, "charpoly", &mut checks)?;
    ensure(
        compound2(&cert.c).is_ok_and(|m| m == cert.c2),
        "compound",
        &mut checks,
    )?;

    let lb = &cert.lambda_basis;
    let basis_ok = lb.labels.len() == 6
        && lb.basis.len() == 6
        && lb.basis.iter().all(|v| v.len() == 6)
        && basis_matrix(&lb.basis).rank() == 6
        && lb.basis == standard_basis(&lb.center_scale)
        && lb.wedge_to_family == IntMatrix::from_i64_rows(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
    ensure(basis_ok, "lambda_basis", &mut checks)?;

    let recomputed = closure_entries(lb)?;
    let closure_ok = recomputed == cert.closure
        && recomputed.iter().all(|e| {
            e.product
                .iter()
                .chain(&e.commutator)
                .all(Rational::is_integer)
        });
    ensure(closure_ok, "closure", &mut checks)?;

    let g = &cert.gamma_action;
    let gq = g.to_rational();
    let b = basis_matrix(&lb.basis);
    let in_lambda = b
        .inverse()
        .and_then(|bi| bi.mul(&gq).ok()?.mul(&b).ok())
        .and_then(|m| IntMatrix::try_from_rational(&m));
    let gamma_ok = *g == gamma_matrix(&cert.c, &cert.c2)
        && in_lambda.is_some_and(|m| m.det().is_ok_and(|d| d.abs().is_one()))
        && algebra().is_automorphism(&gq)
        && {
            // γ(a · b) = γa · γb on every pair of generators and inverses
            let l = algebra();
            let els = elements(lb);
            els.iter().all(|(_, u)| {
                els.iter().all(|(_, v)| {
                    gq.mul_vec(&bch(&l, u, v)) == bch(&l, &gq.mul_vec(u), &gq.mul_vec(v))
                })
            })
        };
    ensure(gamma_ok, "gamma_action", &mut checks)?;

    let prop1 = prop1_index(lb)?;
    let prop1_ok = prop1
        .as_ref()
        .is_some_and(|i| i.is_positive() && to_u64(i) == cert.prop1_index);
    ensure(prop1_ok, "prop1", &mut checks)?;
    let ab = abelian_index(&cert.c)?;
    ensure(
        !ab.is_zero() && to_u64(&ab) == cert.abelian_index,
        "abelian_index",
        &mut checks,
    )?;

    Ok(VerifiedLattice {
        checks,
        prop1_index: cert.prop1_index,
        abelian_index: cert.abelian_index,
    })
}

impl LatticeCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }
}
