//! Non-existence arguments for lattices, as case trees whose every leaf
//! carries polynomial constraints that can be re-checked from the JSON alone.

mod engine;
mod example2;
mod example3;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::liealg::WeightSystem;
use crate::multipoly::MultiPoly;

pub use example2::{example2_obstruction, example2_obstruction_with, example2_system};
pub use example3::{
    example3_obstruction, example3_q0_obstruction, example3_qpos_obstruction,
    pairing_bracket_check, PAIRINGS,
};
pub use verify::verify_report;

/// Multiset of Laurent exponents; `a` stands for `z^a` with `z > 0` formal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharMultiset {
    exponents: Vec<i64>,
}

impl CharMultiset {
    pub fn new(mut exponents: Vec<i64>) -> Self {
        exponents.sort_unstable();
        CharMultiset { exponents }
    }

    pub fn from_weights(weights: &[Rational]) -> Result<Self> {
        let mut out = Vec::with_capacity(weights.len());
        for w in weights {
            if !w.is_integer() {
                return Err(Error::InvalidParameter(format!(
                    "weight {w} is not an integer"
                )));
            }
            let v: i64 = w
                .to_integer()
                .try_into()
                .map_err(|_| Error::InvalidParameter(format!("weight {w} out of range")))?;
            out.push(v);
        }
        Ok(Self::new(out))
    }

    /// Sorted exponents.
    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn distinct(&self) -> Vec<i64> {
        let mut d = self.exponents.clone();
        d.dedup();
        d
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::new(self.exponents.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for CharMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|&a| power_of_z(a)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub(crate) fn power_of_z(a: i64) -> String {
    match a {
        0 => "1".into(),
        1 => "z".into(),
        -1 => "1/z".into(),
        a if a > 0 => format!("z^{a}"),
        a => format!("1/z^{}", -a),
    }
}

/// Exponent multiset of `exp(t·w)` for an integer weight system.
pub fn char_multiset(w: &WeightSystem) -> Result<CharMultiset> {
    CharMultiset::from_weights(&w.weights)
}

/// The diagonal pattern `{β, β, α, α, αβ, αβ}`; each slot is `(power of β, power of α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutPattern {
    pub slots: [(i64, i64); 6],
}

impl Default for AutPattern {
    fn default() -> Self {
        AutPattern {
            slots: [(1, 0), (1, 0), (0, 1), (0, 1), (1, 1), (1, 1)],
        }
    }
}

impl AutPattern {
    /// Exponents obtained from `β = z^beta`, `α = z^alpha`.
    pub fn instantiate(&self, beta: i64, alpha: i64) -> CharMultiset {
        CharMultiset::new(
            self.slots
                .iter()
                .map(|&(b, a)| b * beta + a * alpha)
                .collect(),
        )
    }

    /// Every `(beta, alpha)` drawn from the distinct entries of `target`, in order.
    pub fn assignments(&self, target: &CharMultiset) -> Vec<(i64, i64)> {
        let d = target.distinct();
        d.iter()
            .flat_map(|&b| d.iter().map(move |&a| (b, a)))
            .collect()
    }

    /// Assignments whose instantiation equals `target` as a formal multiset.
    pub fn matches(&self, target: &CharMultiset) -> Vec<(i64, i64)> {
        self.assignments(target)
            .into_iter()
            .filter(|&(b, a)| &self.instantiate(b, a) == target)
            .collect()
    }
}

/// `Σ z^{a_i} = param`, multiplied through by `z^{-min a}` when that is negative.
/// The result lives over the variables `[z, param]`.
pub fn trace_condition(exponents: &[i64], param: &str) -> Result<MultiPoly> {
    trace_condition_in(exponents, param, &["z", param])
}

pub(crate) fn trace_condition_in(
    exponents: &[i64],
    param: &str,
    vars: &[&str],
) -> Result<MultiPoly> {
    let Some(&min) = exponents.iter().min() else {
        return Err(Error::InvalidParameter("empty exponent set".into()));
    };
    let shift = (-min).max(0);
    let z = vars
        .iter()
        .position(|v| *v == "z")
        .ok_or_else(|| Error::UnknownVariable("z".into()))?;
    let p = vars
        .iter()
        .position(|v| *v == param)
        .ok_or_else(|| Error::UnknownVariable(param.into()))?;
    let mut terms = Vec::new();
    for &a in exponents {
        let mut e = vec![0u32; vars.len()];
        e[z] = (a + shift) as u32;
        terms.push((e, Rational::one()));
    }
    let mut e = vec![0u32; vars.len()];
    e[z] = shift as u32;
    e[p] = 1;
    terms.push((e, -Rational::one()));
    MultiPoly::from_terms(vars, terms)
}

/// For `z = a/b > 0` in lowest terms with `a/b + b/a = n`, decides `z = 1`.
///
/// `a² + b² = nab` gives `a | b²` and `b | a²`; coprimality then leaves `a = b = 1`.
pub fn rational_plus_inverse_integer_forces_one(z: &Rational, n: &BigInt) -> Result<bool> {
    if !z.is_positive() {
        return Err(Error::InvalidParameter(format!("z = {z} must be positive")));
    }
    if z + z.recip() != Rational::from_integer(n.clone()) {
        return Err(Error::Precondition(format!("{z} + 1/({z}) is not {n}")));
    }
    let (a, b) = (z.numer(), z.denom());
    debug_assert!(a.gcd(b).is_one());
    let a_divides = (b * b).is_multiple_of(a);
    let b_divides = (a * a).is_multiple_of(b);
    if !(a_divides && b_divides) {
        return Err(Error::Precondition("divisibility fails".into()));
    }
    // a | b² with gcd(a, b) = 1 leaves a = 1, likewise b = 1.
    Ok(a.is_one() && b.is_one())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub id: String,
    pub anchor: String,
    pub statement: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    ForcesZOne,
    StructurallyImpossible,
    ReducesToSubcase,
    Unresolved,
}

impl Resolution {
    pub fn is_contradiction(self) -> bool {
        matches!(
            self,
            Resolution::ForcesZOne | Resolution::StructurallyImpossible
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Obstructed,
    Inconclusive,
}

/// The reasoning step attached to a case. Polynomials are strings over the report's variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    /// Children cover the alternatives named by `reason`.
    Split { reason: String },
    /// Ideal generators of degree one in `var`. First child: some coefficient is nonzero;
    /// second child: the constraints plus every coefficient.
    LinearSplit { var: String, linear: Vec<String> },
    /// `var` is rational; `monic` is monic in `var` with constant term ±1 over ℤ.
    RationalRootOfMonic {
        var: String,
        linear: Vec<String>,
        monic: String,
    },
    /// `var` is rational and `var + 1/var` is the integer trace in `center`.
    RationalPlusInverse {
        var: String,
        linear: Vec<String>,
        center: String,
    },
    /// Integer roots of a polynomial in `param` alone that lies in the ideal.
    ParameterRoots {
        param: String,
        poly: String,
        roots: Vec<i64>,
    },
    /// Positive real common roots of the constraints, all univariate in `var`.
    PositiveRoots {
        var: String,
        gcd: String,
        roots: Vec<String>,
    },
    /// A nonzero constant among the constraints.
    Inconsistent { poly: String },
    /// `(beta, alpha)` ranges over all pairs of distinct target exponents.
    PatternSplit {
        target: Vec<i64>,
        candidates: Vec<i64>,
    },
    ExponentMismatch {
        beta: i64,
        alpha: i64,
        pattern: Vec<i64>,
        target: Vec<i64>,
    },
    ExponentMatch {
        beta: i64,
        alpha: i64,
        pattern: Vec<i64>,
    },
    /// Eigenline pairing of the abelianization; exponents before division by `scale`.
    Pairing {
        first: Vec<i64>,
        second: Vec<i64>,
        scale: i64,
    },
    BracketCompatibility {
        first: Vec<String>,
        second: Vec<String>,
        dims: [usize; 2],
        ideals: [bool; 2],
        heisenberg: [bool; 2],
        direct: bool,
    },
    /// No further argument available.
    Open { reason: String },
}

impl Check {
    /// For a bracket check: whether the pairing survives it.
    pub fn bracket_passes(&self) -> Option<bool> {
        match self {
            Check::BracketCompatibility {
                dims,
                ideals,
                heisenberg,
                direct,
                ..
            } => Some(
                *dims == [3, 3]
                    && ideals[0]
                    && ideals[1]
                    && heisenberg[0]
                    && heisenberg[1]
                    && *direct,
            ),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCheck {
    pub name: String,
    pub passed: bool,
    pub check: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    pub constraints: Vec<String>,
    pub resolution: Resolution,
    pub check: Check,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub killed_by: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub side_checks: Vec<SideCheck>,
    #[serde(default)]
    pub children: Vec<Case>,
}

impl Case {
    pub(crate) fn new(
        name: impl Into<String>,
        constraints: Vec<String>,
        resolution: Resolution,
        check: Check,
    ) -> Self {
        Case {
            name: name.into(),
            constraints,
            resolution,
            check,
            killed_by: None,
            side_checks: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn leaves(&self) -> Vec<&Case> {
        if self.children.is_empty() {
            vec![self]
        } else {
            self.children.iter().flat_map(Case::leaves).collect()
        }
    }

    /// Every leaf is a contradiction and no inner node is unresolved.
    pub fn is_closed(&self) -> bool {
        if self.resolution == Resolution::Unresolved {
            return false;
        }
        if self.children.is_empty() {
            self.resolution.is_contradiction()
        } else {
            self.children.iter().all(Case::is_closed)
        }
    }

    pub fn find(&self, name: &str) -> Option<&Case> {
        if self.name == name {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(name))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub example: String,
    pub variables: Vec<String>,
    pub assumptions: Vec<Assumption>,
    pub cases: Vec<Case>,
    pub conclusion: Conclusion,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
}

impl ObstructionReport {
    pub fn is_obstructed(&self) -> bool {
        self.conclusion == Conclusion::Obstructed
    }

    pub fn find(&self, name: &str) -> Option<&Case> {
        self.cases.iter().find_map(|c| c.find(name))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }

    pub(crate) fn conclude(cases: &[Case]) -> Conclusion {
        if !cases.is_empty() && cases.iter().all(Case::is_closed) {
            Conclusion::Obstructed
        } else {
            Conclusion::Inconclusive
        }
    }

    /// Indented plain-text rendering of the case tree.
    pub fn render_text(&self) -> String {
        let mut out = format!("example {}: {:?}\n", self.example, self.conclusion).to_lowercase();
        for a in &self.assumptions {
            out.push_str(&format!("  assume [{}] {}\n", a.anchor, a.statement));
        }
        for c in &self.cases {
            render_case(c, 1, &mut out);
        }
        for (k, v) in &self.values {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        out
    }
}

fn render_case(c: &Case, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let res = serde_json::to_value(c.resolution).expect("serializes");
    out.push_str(&format!(
        "{pad}- {} -> {}",
        c.name,
        res.as_str().unwrap_or_default()
    ));
    if let Some(k) = &c.killed_by {
        out.push_str(&format!(" (killed by {k})"));
    }
    out.push('\n');
    for s in &c.constraints {
        out.push_str(&format!("{pad}    {s} = 0\n"));
    }
    for s in &c.side_checks {
        out.push_str(&format!(
            "{pad}    {}: {}\n",
            s.name,
            if s.passed { "passes" } else { "fails" }
        ));
    }
    for ch in &c.children {
        render_case(ch, depth + 1, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use num_traits::Zero;

    #[test]
    fn trace_conditions() {
        let p = trace_condition(&[1, -1], "n").unwrap();
        assert_eq!(p.to_string(), "z^2 - z*n + 1");
        let f = trace_condition(&[3, -1, -2], "m").unwrap();
        assert_eq!(
            f,
            MultiPoly::parse("z^5 - m*z^2 + z + 1", &["z", "m"]).unwrap()
        );
        let g = trace_condition(&[1, 2, -3], "n").unwrap();
        assert_eq!(
            g,
            MultiPoly::parse("z^5 + z^4 - n*z^3 + 1", &["z", "n"]).unwrap()
        );
        assert!(trace_condition(&[], "n").is_err());
    }

    #[test]
    fn lemma() {
        assert!(rational_plus_inverse_integer_forces_one(&int(1), &BigInt::from(2)).unwrap());
        assert!(matches!(
            rational_plus_inverse_integer_forces_one(&int(2), &BigInt::from(2)),
            Err(Error::Precondition(_))
        ));
        assert!(rational_plus_inverse_integer_forces_one(&rat(-1, 2), &BigInt::from(2)).is_err());
        assert!(
            rational_plus_inverse_integer_forces_one(&Rational::zero(), &BigInt::from(2)).is_err()
        );
    }

    #[test]
    fn pattern_matcher() {
        let p = AutPattern::default();
        let own = p.instantiate(1, -1);
        assert!(p.matches(&own).contains(&(1, -1)));
        let synth = CharMultiset::new(vec![1, 1, 2, 2, 3, 3]);
        assert!(p.matches(&synth).contains(&(1, 2)));
        let q = CharMultiset::new(vec![1, 1, -1, -1, 2, -2]);
        assert_eq!(p.assignments(&q).len(), 16);
        assert!(p.matches(&q).is_empty());
    }
}
