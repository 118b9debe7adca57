//! Exact multivariate polynomials over ℚ with dense exponent vectors,
//! Buchberger's algorithm, elimination and Sylvester resultants.

mod groebner;
mod parse;
mod resultant;

pub use groebner::{buchberger, eliminate, normal_form, GroebnerBasis};
pub use parse::parse_polys;
pub use resultant::resultant;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{to_display_string, Rational, UniPoly};

pub type Exponent = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grevlex,
}

/// A monomial order: a kind plus a variable precedence, `precedence[0]`
/// being the index of the greatest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Grevlex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = precedence.clone();
        seen.sort_unstable();
        if seen != (0..precedence.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidParameter(format!(
                "precedence {precedence:?} is not a permutation"
            )));
        }
        Ok(MonomialOrder { kind, precedence })
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.precedence {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                if da != db {
                    return da.cmp(&db);
                }
                for &v in self.precedence.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Polynomial over ℚ in a fixed, ordered list of variables.
///
/// Terms are keyed by exponent vectors of length `vars.len()`; zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn zero_owned(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, Rational::one());
        Ok(p)
    }

    pub fn from_terms(
        vars: &[&str],
        terms: impl IntoIterator<Item = (Exponent, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::DimensionMismatch(format!(
                    "exponent {e:?} for {} variables",
                    vars.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Embeds a univariate polynomial as a polynomial in `var`.
    pub fn from_unipoly(vars: &[&str], var: &str, p: &UniPoly) -> Result<Self> {
        let idx = Self::zero(vars).var_index(var)?;
        let mut out = Self::zero(vars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[idx] = k as u32;
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&v| self.degree_in(v) > 0)
            .collect()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "polynomials over different variable lists"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_owned(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero_owned(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(&self.var_refs(), Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub(crate) fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    /// Substitutes `value` for variable `var` (the variable list is unchanged).
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Self {
        self.check_compatible(value);
        let mut out = Self::zero_owned(self.vars.clone());
        let maxdeg = self.degree_in(var);
        let powers: Vec<MultiPoly> = std::iter::successors(
            Some(Self::constant(&self.var_refs(), Rational::one())),
            |p| Some(p.mul(value)),
        )
        .take(maxdeg as usize + 1)
        .collect();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[var];
            rest[var] = 0;
            let mono = MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(rest, c.clone())]),
            };
            out = out.add(&mono.mul(&powers[k as usize]));
        }
        out
    }

    pub fn substitute_value(&self, var: usize, value: &Rational) -> Self {
        self.substitute(var, &Self::constant(&self.var_refs(), value.clone()))
    }

    /// Coefficients with respect to `var`, lowest degree first.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero_owned(self.vars.clone()); deg + 1];
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[var] as usize;
            rest[var] = 0;
            out[k].add_term(rest, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Univariate view when no variable other than `var` occurs.
    pub fn to_unipoly(&self, var: usize) -> Option<UniPoly> {
        if self.support().iter().any(|&v| v != var) {
            return None;
        }
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e[var] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mono = e.iter().zip(point).fold(Rational::one(), |m, (&k, x)| {
                m * num_traits::pow(x.clone(), k as usize)
            });
            acc + c * mono
        })
    }

    /// Re-expresses the polynomial over a superset (or permutation) of its variables.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] = k;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Leading exponent and coefficient under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Integer-cleared primitive form with positive leading coefficient under `order`;
    /// used for display and for comparing polynomials up to a scalar.
    pub fn primitive(&self, order: &MonomialOrder) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den = crate::exact::common_denominator(self.terms.values());
        let scaled = self.scale(&Rational::from_integer(den));
        let g = scaled
            .terms
            .values()
            .fold(num_bigint::BigInt::zero(), |acc, c| {
                num_integer::Integer::gcd(&acc, c.numer())
            });
        let mut out = scaled.scale(&Rational::from_integer(g).recip());
        if out
            .leading_term(order)
            .is_some_and(|(_, c)| c.is_negative())
        {
            out = out.neg();
        }
        out
    }

    /// Terms in decreasing order under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Exponent, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| order.cmp(b.0, a.0));
        t
    }

    pub fn render(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.sorted_terms(order) {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{k}", self.vars[i])
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&to_display_string(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&to_display_string(&mag));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Parses with a fixed variable list; unknown identifiers are an error.
    pub fn parse(s: &str, vars: &[&str]) -> Result<Self> {
        parse::parse_with_vars(s, vars)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&MonomialOrder::lex(self.vars.len())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn orders_compare() {
        let lex = MonomialOrder::lex(3);
        assert_eq!(lex.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
        let grevlex = MonomialOrder::grevlex(3);
        assert_eq!(grevlex.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Less);
        // x*z < y^2 in grevlex
        assert_eq!(grevlex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        let rev = MonomialOrder::with_precedence(OrderKind::Lex, vec![2, 1, 0]).unwrap();
        assert_eq!(rev.cmp(&[1, 0, 0], &[0, 0, 1]), Ordering::Less);
        assert!(MonomialOrder::with_precedence(OrderKind::Lex, vec![0, 0]).is_err());
    }

    #[test]
    fn arithmetic_substitution() {
        let v = ["x", "y"];
        let x = MultiPoly::var(&v, "x").unwrap();
        let y = MultiPoly::var(&v, "y").unwrap();
        let p = x.pow(2).sub(&y); // x^2 - y
        let q = p.substitute(1, &x.pow(2));
        assert!(q.is_zero());
        assert_eq!(p.eval(&[int(3), int(4)]), int(5));
        let coeffs = p.coefficients_in(0);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[0], y.neg());
        assert_eq!(p.to_string(), "x^2 - y");
        assert!(p.to_unipoly(0).is_none());
        assert_eq!(
            x.pow(3).to_unipoly(0).unwrap(),
            UniPoly::from_i64(&[0, 0, 0, 1])
        );
    }
}
