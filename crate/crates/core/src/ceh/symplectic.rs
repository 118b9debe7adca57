use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{CochainComplex, CohomologyRing};
use crate::error::{Error, Result};
use crate::exact::{mat_rank, parse_rational, to_display_string, MatrixQ, Rational};
use crate::liealg::{modified_family, LieAlgebra};

/// A 2-cochain `Σ c_ij e^i∧e^j` with `i < j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoForm {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl TwoForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: Rational) {
        if i == j || c.is_zero() {
            return;
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `Σ a^b` over label pairs, unit coefficients.
    pub fn from_pairs(l: &LieAlgebra, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut w = TwoForm::new();
        for (a, b) in pairs {
            w.add_term(l.index(a)?, l.index(b)?, Rational::one());
        }
        Ok(w)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_cochain(&self, cx: &CochainComplex) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); cx.basis(2).len()];
        for (&(i, j), c) in &self.terms {
            v[cx.position((1 << i) | (1 << j))] += c;
        }
        v
    }

    pub fn render(&self, l: &LieAlgebra) -> String {
        let mut s = String::new();
        for (&(i, j), c) in &self.terms {
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&to_display_string(&mag));
                s.push('*');
            }
            s.push_str(&format!("{}^{}", l.labels()[i], l.labels()[j]));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// Parses `omega = A^B + X1^Z1 - 1/2*X2^Z2`; the `name =` prefix is optional.
    pub fn parse(src: &str, l: &LieAlgebra) -> Result<Self> {
        let body_start = match src.find('=') {
            Some(p) => {
                let name = src[..p].trim();
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(Error::parse(1, 1, "expected `name = ...`"));
                }
                p + 1
            }
            None => 0,
        };
        let col = |byte: usize| src[..byte].chars().count() + 1;
        let mut w = TwoForm::new();
        let body = &src[body_start..];
        // split on top-level + and -
        let mut pieces: Vec<(bool, usize, usize)> = Vec::new();
        let mut sign = true;
        let mut start = 0;
        for (k, ch) in body.char_indices() {
            if ch == '+' || ch == '-' {
                if body[start..k].trim().is_empty() {
                    if ch == '-' {
                        sign = !sign;
                    }
                } else {
                    pieces.push((sign, start, k));
                    sign = ch == '+';
                }
                start = k + 1;
            }
        }
        pieces.push((sign, start, body.len()));
        for (positive, a, b) in pieces {
            let raw = &body[a..b];
            let term = raw.trim();
            let at = body_start + a + (raw.len() - raw.trim_start().len());
            if term.is_empty() {
                return Err(Error::parse(1, col(at), "expected a term like `A^B`"));
            }
            let (coef, wedge, wedge_at) = match term.rfind('*') {
                Some(p) => {
                    let c = parse_rational(term[..p].trim()).map_err(|_| {
                        Error::parse(
                            1,
                            col(at),
                            format!("bad coefficient `{}`", term[..p].trim()),
                        )
                    })?;
                    let rest = &term[p + 1..];
                    (
                        c,
                        rest.trim(),
                        at + p + 1 + (rest.len() - rest.trim_start().len()),
                    )
                }
                None => (Rational::one(), term, at),
            };
            let (x, y) = wedge.split_once('^').ok_or_else(|| {
                Error::parse(1, col(wedge_at), format!("expected `L^M`, got `{wedge}`"))
            })?;
            let lookup = |name: &str, off: usize| {
                l.index(name.trim()).map_err(|_| {
                    Error::parse(1, col(off), format!("unknown label `{}`", name.trim()))
                })
            };
            let i = lookup(x, wedge_at)?;
            let y_off = wedge_at + x.len() + 1 + (y.len() - y.trim_start().len());
            let j = lookup(y, y_off)?;
            if i == j {
                return Err(Error::parse(1, col(wedge_at), format!("`{wedge}` is zero")));
            }
            w.add_term(i, j, if positive { coef } else { -coef });
        }
        Ok(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticReport {
    pub closed: bool,
    pub nondegenerate: bool,
}

impl SymplecticReport {
    pub fn is_symplectic(&self) -> bool {
        self.closed && self.nondegenerate
    }
}

fn check_even(l: &LieAlgebra) -> Result<()> {
    if l.dim() % 2 == 1 {
        return Err(Error::OddDimension(l.dim()));
    }
    Ok(())
}

fn symplectic_in(cx: &CochainComplex, w: &[Rational]) -> Result<SymplecticReport> {
    let closed = cx.apply_d(2, w)?.iter().all(Zero::is_zero);
    let n = cx.dim() / 2;
    let mut top = vec![Rational::one()];
    for k in 0..n {
        top = cx.wedge(2 * k, &top, 2, w)?;
    }
    Ok(SymplecticReport {
        closed,
        nondegenerate: top.iter().any(|x| !x.is_zero()),
    })
}

pub fn symplectic_check(l: &LieAlgebra, omega: &TwoForm) -> Result<SymplecticReport> {
    check_even(l)?;
    let cx = CochainComplex::new(l)?;
    symplectic_in(&cx, &omega.to_cochain(&cx))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzMap {
    /// Power of `[ω]`; the map goes from degree `n − k` to `n + k`.
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub holds: bool,
    pub failing_degree: Option<usize>,
    pub betti: Vec<usize>,
    pub maps: Vec<LefschetzMap>,
}

fn lefschetz_in(ring: &CohomologyRing, w: &[Rational]) -> Result<LefschetzReport> {
    let omega = ring.class_of(2, w)?;
    let n = ring.dim() / 2;
    let betti = ring.betti();
    let mut maps = Vec::new();
    let mut failing = None;
    for k in 1..=n {
        let wk = ring.power(&omega, k)?;
        let (src, tgt) = (n - k, n + k);
        let cols: Vec<Vec<Rational>> = (0..betti[src])
            .map(|i| ring.cup(&ring.basis_class(src, i), &wk).map(|c| c.coords))
            .collect::<Result<_>>()?;
        let rank = if cols.is_empty() || betti[tgt] == 0 {
            0
        } else {
            mat_rank(&MatrixQ::from_columns(betti[tgt], &cols))
        };
        let ok = rank == betti[src] && rank == betti[tgt];
        if !ok && failing.is_none() {
            failing = Some(k);
        }
        maps.push(LefschetzMap {
            k,
            source_dim: betti[src],
            target_dim: betti[tgt],
            rank,
        });
    }
    Ok(LefschetzReport {
        holds: failing.is_none(),
        failing_degree: failing,
        betti,
        maps,
    })
}

/// `c ↦ c ∪ [ω]^k` from `H^{n−k}` to `H^{n+k}` for `k = 1..n`, `n = dim/2`.
pub fn hard_lefschetz(l: &LieAlgebra, omega: &TwoForm) -> Result<LefschetzReport> {
    check_even(l)?;
    let ring = CohomologyRing::new(l)?;
    lefschetz_in(&ring, &omega.to_cochain(ring.complex()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializationEntry {
    #[serde(with = "crate::exact::serde_rational")]
    pub lambda1: Rational,
    #[serde(with = "crate::exact::serde_rational")]
    pub lambda2: Rational,
    #[serde(with = "crate::exact::serde_rational")]
    pub lambda3: Rational,
    pub matches_generic_pattern: bool,
    pub symplectic: SymplecticReport,
    pub lefschetz: LefschetzReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyLefschetzReport {
    /// Subsets of the six nilpotent weights (bitmask over X1, X2, X3, Z1, Z2, Z3) whose sum vanishes identically.
    pub generic_zero_subsets: Vec<u32>,
    pub entries: Vec<SpecializationEntry>,
    pub consistent: bool,
}

/// Weights of X1, X2, X3, Z1, Z2, Z3 as coefficient pairs on (λ1, λ2), using λ3 = −λ1 − λ2.
const FAMILY_FORMS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)];

fn zero_subsets(values: &[Rational]) -> Vec<u32> {
    (1u32..1 << values.len())
        .filter(|&mask| {
            values
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(Rational::zero(), |acc, (_, v)| acc + v)
                .is_zero()
        })
        .collect()
}

/// Hard Lefschetz for the modified family with `ω = A^B + X1^Z1 + X2^Z2 + X3^Z3` at rational
/// specializations, alongside the subset-sum vanishing pattern of the nilpotent weights.
pub fn family_lefschetz(specializations: &[(Rational, Rational)]) -> Result<FamilyLefschetzReport> {
    let generic: Vec<u32> = (1u32..64)
        .filter(|&mask| {
            let (a, b) = FAMILY_FORMS
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold((0, 0), |acc, (_, f)| (acc.0 + f.0, acc.1 + f.1));
            a == 0 && b == 0
        })
        .collect();
    let mut entries = Vec::new();
    for (l1, l2) in specializations {
        let l = modified_family(l1.clone(), l2.clone())?;
        let w = l.weights(0).expect("diagonal ad A");
        let pattern = zero_subsets(&w.weights[2..8]);
        let omega =
            TwoForm::from_pairs(&l, &[("A", "B"), ("X1", "Z1"), ("X2", "Z2"), ("X3", "Z3")])?;
        let ring = CohomologyRing::new(&l)?;
        let cochain = omega.to_cochain(ring.complex());
        let symplectic = symplectic_in(ring.complex(), &cochain)?;
        let lefschetz = lefschetz_in(&ring, &cochain)?;
        entries.push(SpecializationEntry {
            lambda1: l1.clone(),
            lambda2: l2.clone(),
            lambda3: -(l1 + l2),
            matches_generic_pattern: pattern == generic,
            symplectic,
            lefschetz,
        });
    }
    let consistent = entries.iter().all(|e| e.matches_generic_pattern)
        && entries
            .windows(2)
            .all(|w| w[0].lefschetz == w[1].lefschetz && w[0].symplectic == w[1].symplectic);
    Ok(FamilyLefschetzReport {
        generic_zero_subsets: generic,
        entries,
        consistent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub degree: usize,
    pub betti: usize,
    pub monomials: Vec<String>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingCheckReport {
    pub degrees: Vec<DegreeCheck>,
    pub h_fourth_power_zero: bool,
    pub holds: bool,
}

/// Tests whether `t1 = [e^a]`, `t2 = [e^b]` and `h = [ω] − t1 t2` satisfy the relations of
/// `H*(T² × CP³)`: the monomials `t1^i t2^j h^c` (`i, j ≤ 1`, `c ≤ 3`) form a basis in every
/// degree and `h^4 = 0`.
pub fn t2_cp3_check(l: &LieAlgebra, omega: &TwoForm, a: &str, b: &str) -> Result<RingCheckReport> {
    if l.dim() != 8 {
        return Err(Error::InvalidParameter(format!(
            "expected an 8-dimensional algebra, got {}",
            l.dim()
        )));
    }
    let ring = CohomologyRing::new(l)?;
    let cx = ring.complex();
    let t1 = ring.class_of(1, &cx.monomial_cochain(&[l.index(a)?])?)?;
    let t2 = ring.class_of(1, &cx.monomial_cochain(&[l.index(b)?])?)?;
    let w = ring.class_of(2, &omega.to_cochain(cx))?;
    let h = w.add(&ring.cup(&t1, &t2)?.scale(&-Rational::one()));
    let betti = ring.betti();
    let mut by_degree: BTreeMap<usize, (Vec<String>, Vec<Vec<Rational>>)> = BTreeMap::new();
    for i in 0..2usize {
        for j in 0..2usize {
            for c in 0..4usize {
                let mut cls = ring.power(&h, c)?;
                if j == 1 {
                    cls = ring.cup(&t2, &cls)?;
                }
                if i == 1 {
                    cls = ring.cup(&t1, &cls)?;
                }
                let mut name: Vec<String> = Vec::new();
                if i == 1 {
                    name.push("t1".into());
                }
                if j == 1 {
                    name.push("t2".into());
                }
                match c {
                    0 => {}
                    1 => name.push("h".into()),
                    _ => name.push(format!("h^{c}")),
                }
                let label = if name.is_empty() {
                    "1".to_string()
                } else {
                    name.join("*")
                };
                let e = by_degree.entry(cls.degree).or_default();
                e.0.push(label);
                e.1.push(cls.coords);
            }
        }
    }
    let mut degrees = Vec::new();
    let mut holds = true;
    for k in 0..=8 {
        let (monomials, cols) = by_degree.remove(&k).unwrap_or_default();
        let rank = if cols.is_empty() || betti[k] == 0 {
            0
        } else {
            mat_rank(&MatrixQ::from_columns(betti[k], &cols))
        };
        holds &= rank == monomials.len() && rank == betti[k];
        degrees.push(DegreeCheck {
            degree: k,
            betti: betti[k],
            monomials,
            rank,
        });
    }
    let h4_zero = ring.power(&h, 4)?.is_zero();
    Ok(RingCheckReport {
        degrees,
        h_fourth_power_zero: h4_zero,
        holds: holds && h4_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::liealg::{abelian, example2};

    #[test]
    fn parse_and_render() {
        let l = example2();
        let w = TwoForm::parse("omega = A^B + X1^Z1 + X2^Z2 + X3^Z3", &l).unwrap();
        assert_eq!(w.render(&l), "A^B + X1^Z1 + X2^Z2 + X3^Z3");
        let v = TwoForm::parse("-1/2*B^A - X1^Z1", &l).unwrap();
        assert_eq!(v.render(&l), "1/2*A^B - X1^Z1");
        let err = TwoForm::parse("omega = A^B + X1^Q", &l).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                column: 18,
                message: "unknown label `Q`".into()
            }
        );
        assert!(TwoForm::parse("A^A", &l).is_err());
        assert!(TwoForm::parse("A", &l).is_err());
        assert!(TwoForm::parse("x*A^B", &l).is_err());
    }

    #[test]
    fn odd_dimension_rejected() {
        let w = TwoForm::new();
        assert_eq!(
            symplectic_check(&abelian(3), &w),
            Err(Error::OddDimension(3))
        );
        let mut w = TwoForm::new();
        w.add_term(1, 0, int(2));
        assert_eq!(w.terms().next(), Some((&(0, 1), &int(-2))));
    }
}
