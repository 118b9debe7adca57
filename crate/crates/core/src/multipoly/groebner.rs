use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{Exponent, MonomialOrder, MultiPoly, OrderKind};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Terms sorted by decreasing monomial.
type Terms = Vec<(Exponent, Rational)>;

fn to_terms(p: &MultiPoly, order: &MonomialOrder) -> Terms {
    p.sorted_terms(order)
        .into_iter()
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect()
}

fn from_terms(vars: &[String], t: Terms) -> MultiPoly {
    let mut out = MultiPoly::zero_owned(vars.to_vec());
    for (e, c) in t {
        out.add_term(e, c);
    }
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(b: &[u32], a: &[u32]) -> Exponent {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// `p - c * x^shift * g`, all term lists sorted decreasingly.
fn sub_scaled(
    p: &[(Exponent, Rational)],
    c: &Rational,
    shift: &[u32],
    g: &Terms,
    order: &MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(e, k)| {
        let e2: Exponent = e.iter().zip(shift).map(|(a, b)| a + b).collect();
        (e2, -(k * c))
    });
    let mut next = gi.next();
    while i < p.len() || next.is_some() {
        match (p.get(i), &next) {
            (Some(a), Some(b)) => match order.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(next.take().unwrap());
                    next = gi.next();
                }
                Ordering::Equal => {
                    let s = &a.1 + &b.1;
                    if !s.is_zero() {
                        out.push((a.0.clone(), s));
                    }
                    i += 1;
                    next = gi.next();
                }
            },
            (Some(a), None) => {
                out.push(a.clone());
                i += 1;
            }
            (None, Some(_)) => {
                out.push(next.take().unwrap());
                next = gi.next();
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Full reduction of `p` by monic divisors.
fn reduce_terms(mut p: Terms, divisors: &[&Terms], order: &MonomialOrder) -> Terms {
    let mut rem: Terms = Vec::new();
    while !p.is_empty() {
        let (lead, lc) = p[0].clone();
        let hit = divisors.iter().find(|g| divides(&g[0].0, &lead));
        match hit {
            Some(g) => {
                let shift = quotient(&lead, &g[0].0);
                let c = &lc / &g[0].1;
                p = sub_scaled(&p, &c, &shift, g, order);
            }
            None => {
                rem.push((lead, lc));
                p.remove(0);
            }
        }
    }
    rem
}

fn make_monic(mut t: Terms) -> Terms {
    if let Some(lc) = t.first().map(|x| x.1.clone()) {
        if !lc.is_one() {
            let inv = lc.recip();
            for term in &mut t {
                term.1 = &term.1 * &inv;
            }
        }
    }
    t
}

fn check_vars(polys: &[&MultiPoly], order: &MonomialOrder) -> Result<Vec<String>> {
    let vars = polys
        .first()
        .map(|p| p.vars().to_vec())
        .ok_or_else(|| Error::InvalidParameter("empty generator list".into()))?;
    for p in polys {
        if p.vars() != vars.as_slice() {
            return Err(Error::DimensionMismatch(format!(
                "variable lists differ: {:?} vs {:?}",
                vars,
                p.vars()
            )));
        }
    }
    if order.nvars() != vars.len() {
        return Err(Error::DimensionMismatch(format!(
            "order has {} variables, polynomials have {}",
            order.nvars(),
            vars.len()
        )));
    }
    Ok(vars)
}

/// Remainder of multivariate division of `f` by `basis`.
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> MultiPoly {
    let divisors: Vec<Terms> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| make_monic(to_terms(g, order)))
        .collect();
    let refs: Vec<&Terms> = divisors.iter().collect();
    from_terms(f.vars(), reduce_terms(to_terms(f, order), &refs, order))
}

/// Reduced Gröbner basis with monic generators sorted by decreasing lead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub vars: Vec<String>,
    #[serde(with = "poly_strings")]
    pub generators: Vec<MultiPoly>,
}

mod poly_strings {
    use super::MultiPoly;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[MultiPoly], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        normal_form(f, &self.generators, &self.order)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.reduce(f).is_zero()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.is_constant() && !g.is_zero())
    }

    /// Generators not involving any of the listed variables.
    pub fn restricted_to(&self, drop: &[usize]) -> Vec<MultiPoly> {
        self.generators
            .iter()
            .filter(|g| drop.iter().all(|&v| g.degree_in(v) == 0))
            .cloned()
            .collect()
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exponent,
    sugar: u32,
}

struct State<'a> {
    order: &'a MonomialOrder,
    polys: Vec<Terms>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl State<'_> {
    fn lead(&self, k: usize) -> &Exponent {
        &self.polys[k][0].0
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let l = lcm(self.lead(i), self.lead(j));
        let d = degree(&l);
        let sugar = (self.sugar[i] + d - degree(self.lead(i)))
            .max(self.sugar[j] + d - degree(self.lead(j)));
        Pair {
            i,
            j,
            lcm: l,
            sugar,
        }
    }

    /// Gebauer–Möller update after appending a new monic element.
    fn insert(&mut self, t: Terms, sugar: u32) {
        let h = self.polys.len();
        self.polys.push(t);
        self.sugar.push(sugar);
        let lh = self.lead(h).clone();

        let mut fresh: Vec<Pair> = self.active.iter().map(|&g| self.pair(g, h)).collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = fresh.pop() {
            let lg = self.lead(p.i);
            let dominated = fresh
                .iter()
                .chain(kept.iter())
                .any(|q| divides(&q.lcm, &p.lcm));
            if coprime(lg, &lh) || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !coprime(self.lead(p.i), &lh));

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(divides(&lh, &p.lcm)
                && lcm(&polys[p.i][0].0, &lh) != p.lcm
                && lcm(&polys[p.j][0].0, &lh) != p.lcm)
        });
        self.pairs.extend(kept);
        self.active.retain(|&g| !divides(&lh, &polys[g][0].0));
        self.active.push(h);
    }

    fn reduce(&self, t: Terms) -> Terms {
        let divisors: Vec<&Terms> = self.active.iter().map(|&k| &self.polys[k]).collect();
        reduce_terms(t, &divisors, self.order)
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let (idx, _) = self.pairs.iter().enumerate().min_by(|a, b| {
            a.1.sugar
                .cmp(&b.1.sugar)
                .then_with(|| order.cmp(&a.1.lcm, &b.1.lcm))
                .then((a.1.i, a.1.j).cmp(&(b.1.i, b.1.j)))
        })?;
        Some(self.pairs.swap_remove(idx))
    }
}

/// Buchberger's algorithm with the coprime-lead and chain criteria (Gebauer–Möller form)
/// and sugar-guided pair selection.
pub fn buchberger(gens: &[MultiPoly], order: &MonomialOrder) -> Result<GroebnerBasis> {
    let refs: Vec<&MultiPoly> = gens.iter().collect();
    let vars = check_vars(&refs, order)?;
    let mut st = State {
        order,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };

    let mut inputs: Vec<(Terms, u32)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (make_monic(to_terms(g, order)), g.total_degree()))
        .collect();
    inputs.sort_by(|a, b| order.cmp(&a.0[0].0, &b.0[0].0));
    for (t, sugar) in inputs {
        let red = st.reduce(t);
        if !red.is_empty() {
            st.insert(make_monic(red), sugar);
        }
    }

    while let Some(pair) = st.next_pair() {
        let (gi, gj) = (&st.polys[pair.i], &st.polys[pair.j]);
        let si = quotient(&pair.lcm, &gi[0].0);
        let sj = quotient(&pair.lcm, &gj[0].0);
        let left = sub_scaled(&[], &-Rational::one(), &si, gi, order);
        let s = sub_scaled(&left, &Rational::one(), &sj, gj, order);
        let red = st.reduce(s);
        if !red.is_empty() {
            st.insert(make_monic(red), pair.sugar);
        }
    }

    let basis: Vec<Terms> = st.active.iter().map(|&k| st.polys[k].clone()).collect();
    Ok(GroebnerBasis {
        order: order.clone(),
        generators: finish(basis, order, &vars),
        vars,
    })
}

fn finish(basis: Vec<Terms>, order: &MonomialOrder, vars: &[String]) -> Vec<MultiPoly> {
    let mut minimal: Vec<Terms> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(l, h)| l != k && divides(&h[0].0, &g[0].0) && (h[0].0 != g[0].0 || l < k));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Terms> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, t)| t)
            .collect();
        let mut t = minimal[k].clone();
        let head = t.remove(0);
        let mut tail = reduce_terms(t, &others, order);
        tail.insert(0, head);
        reduced.push(make_monic(tail));
    }
    reduced.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    reduced.into_iter().map(|t| from_terms(vars, t)).collect()
}

/// Elimination ideal generators after dropping the named variables.
/// Uses lex with the dropped variables greatest, the rest in their given order.
pub fn eliminate(gens: &[MultiPoly], drop: &[&str]) -> Result<Vec<MultiPoly>> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty generator list".into()))?;
    let dropped: Vec<usize> = drop
        .iter()
        .map(|d| first.var_index(d))
        .collect::<Result<_>>()?;
    if dropped.len() >= first.vars().len() {
        return Err(Error::InvalidParameter("cannot drop every variable".into()));
    }
    let mut precedence = dropped.clone();
    precedence.extend((0..first.vars().len()).filter(|v| !dropped.contains(v)));
    let order = MonomialOrder::with_precedence(OrderKind::Lex, precedence)?;
    let gb = buchberger(gens, &order)?;
    Ok(gb.restricted_to(&dropped))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, v: &[&str]) -> MultiPoly {
        MultiPoly::parse(s, v).unwrap()
    }

    #[test]
    fn small_bases() {
        let v = ["x", "y"];
        let lex = MonomialOrder::lex(2);
        let gb = buchberger(&[p("x - 1", &v)], &lex).unwrap();
        assert_eq!(gb.generators, vec![p("x - 1", &v)]);
        let gb = buchberger(&[p("x^2 - y", &v), p("x*y - 1", &v)], &lex).unwrap();
        assert!(gb.generators.contains(&p("y^3 - 1", &v)));
        assert!(gb.generators.contains(&p("x - y^2", &v)));
        assert_eq!(gb.len(), 2);
        assert!(normal_form(&p("x^2", &v), &[p("x^2 - y", &v), p("y", &v)], &lex).is_zero());
        assert!(normal_form(&p("x^2 - y", &v), &[p("x^2 - y", &v)], &lex).is_zero());
        let unit = buchberger(&[p("x", &v), p("x - 1", &v)], &lex).unwrap();
        assert!(unit.is_unit());
    }

    #[test]
    fn elimination() {
        let v = ["x", "m"];
        assert!(eliminate(&[p("x - m", &v)], &["x"]).unwrap().is_empty());
        let v = ["x", "m", "n"];
        let e = eliminate(&[p("x^2 - m", &v), p("x - n", &v)], &["x"]).unwrap();
        assert_eq!(e, vec![p("m - n^2", &v)]);
        assert!(eliminate(&[p("x - m", &v)], &["x", "m", "n"]).is_err());
    }
}
