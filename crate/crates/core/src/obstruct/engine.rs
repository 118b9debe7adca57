//! Case-tree builders shared by the examples: splitting on generators linear
//! in `z`, descending through integer parameters, and positive-root leaves.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Case, Check, Resolution};
use crate::error::Result;
use crate::exact::{rational_roots, sturm_count, Rational, UniPoly};
use crate::multipoly::{buchberger, MonomialOrder, MultiPoly};

/// Variable list for a report; `z` is always first and greatest under lex.
#[derive(Clone, Debug)]
pub(crate) struct Ctx {
    pub vars: Vec<String>,
}

pub(crate) enum Lemma {
    Monic(MultiPoly),
    Center(MultiPoly),
}

impl Ctx {
    pub fn new(vars: &[&str]) -> Self {
        Ctx {
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::lex(self.vars.len())
    }

    pub fn canon(&self, p: &MultiPoly) -> String {
        p.primitive(&self.order()).to_string()
    }

    pub fn parse(&self, s: &str) -> Result<MultiPoly> {
        MultiPoly::parse(s, &self.refs())
    }

    /// Drops zeros, takes primitive forms and removes duplicates, keeping order.
    pub fn normalize(&self, cs: &[MultiPoly]) -> Vec<MultiPoly> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for p in cs.iter().filter(|p| !p.is_zero()) {
            let q = p.primitive(&self.order());
            let s = q.to_string();
            if !seen.contains(&s) {
                seen.push(s);
                out.push(q);
            }
        }
        out
    }

    pub fn strings(&self, cs: &[MultiPoly]) -> Vec<String> {
        cs.iter().map(|p| self.canon(p)).collect()
    }

    pub fn linear_generators(&self, cs: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
        let gb = buchberger(cs, &self.order())?;
        Ok(gb
            .generators()
            .iter()
            .filter(|g| g.degree_in(0) == 1)
            .map(|g| g.primitive(&self.order()))
            .collect())
    }

    /// Integer-cleared coefficient of `z` in a linear generator.
    pub fn z_coefficient(&self, p: &MultiPoly) -> MultiPoly {
        p.coefficients_in(0)[1].primitive(&self.order())
    }

    pub fn active_params(&self, cs: &[MultiPoly]) -> Vec<usize> {
        (1..self.vars.len())
            .filter(|&v| cs.iter().any(|p| p.degree_in(v) > 0))
            .collect()
    }

    /// A polynomial in `param` alone: from the constraints if one is there, else from their lex basis.
    pub fn univariate_in(&self, cs: &[MultiPoly], param: usize) -> Result<Option<MultiPoly>> {
        let pick = |ps: &[MultiPoly]| {
            ps.iter()
                .filter(|p| p.support() == [param])
                .min_by_key(|p| p.degree_in(param))
                .map(|p| p.primitive(&self.order()))
        };
        if let Some(p) = pick(cs) {
            return Ok(Some(p));
        }
        let gb = buchberger(cs, &self.order())?;
        Ok(pick(gb.generators()))
    }

    pub fn substitute(&self, cs: &[MultiPoly], param: usize, value: i64) -> Vec<MultiPoly> {
        let r = Rational::from_integer(value.into());
        self.normalize(
            &cs.iter()
                .map(|p| p.substitute_value(param, &r))
                .collect::<Vec<_>>(),
        )
    }
}

pub(crate) fn integer_roots(p: &MultiPoly, param: usize) -> Vec<i64> {
    let u = p.to_unipoly(param).expect("univariate");
    rational_roots(&u)
        .into_iter()
        .filter(|r| r.is_integer())
        .filter_map(|r| i64::try_from(r.to_integer()).ok())
        .collect()
}

/// Gcd of univariate constraints in `z`, or `None` when there are none.
pub(crate) fn z_gcd(cs: &[MultiPoly]) -> Option<UniPoly> {
    let mut g: Option<UniPoly> = None;
    for p in cs {
        let u = p.to_unipoly(0)?;
        g = Some(match g {
            None => u,
            Some(h) => h.gcd(&u),
        });
    }
    g.map(|g| if g.is_zero() { g } else { g.monic() })
}

/// Positive real roots of `g` if they are contained in `{1}`; `None` otherwise.
pub(crate) fn positive_roots_within_one(g: &UniPoly) -> Option<Vec<String>> {
    if g.is_zero() {
        return None;
    }
    let bound = g.cauchy_bound() + Rational::one();
    let count = sturm_count(g, &Rational::zero(), &bound);
    let at_one = g.eval(&Rational::one()).is_zero();
    match (count, at_one) {
        (0, false) => Some(Vec::new()),
        (1, true) => Some(vec!["1".into()]),
        _ => None,
    }
}

pub(crate) fn open(
    name: impl Into<String>,
    constraints: Vec<String>,
    reason: impl Into<String>,
) -> Case {
    Case::new(
        name,
        constraints,
        Resolution::Unresolved,
        Check::Open {
            reason: reason.into(),
        },
    )
}

/// Splits on the lex basis generators linear in `z`; `None` when there are none.
pub(crate) fn linear_split(
    ctx: &Ctx,
    name: &str,
    cs: &[MultiPoly],
    lemma: &Lemma,
) -> Result<Option<Case>> {
    let cs = ctx.normalize(cs);
    let linear = ctx.linear_generators(&cs)?;
    if linear.is_empty() {
        return Ok(None);
    }
    let lin: Vec<String> = ctx.strings(&linear);
    let var = ctx.vars[0].clone();
    let check = match lemma {
        Lemma::Monic(f) => Check::RationalRootOfMonic {
            var: var.clone(),
            linear: lin.clone(),
            monic: ctx.canon(f),
        },
        Lemma::Center(c) => Check::RationalPlusInverse {
            var: var.clone(),
            linear: lin.clone(),
            center: ctx.canon(c),
        },
    };
    let rational = Case::new(
        format!("some coefficient of {var} is nonzero"),
        ctx.strings(&cs),
        Resolution::ForcesZOne,
        check,
    );
    let mut vanish = cs.clone();
    vanish.extend(linear.iter().map(|p| ctx.z_coefficient(p)));
    let rest = descend(
        ctx,
        &format!("every coefficient of {var} vanishes"),
        &vanish,
    )?;
    let mut node = Case::new(
        name,
        ctx.strings(&cs),
        Resolution::ReducesToSubcase,
        Check::LinearSplit { var, linear: lin },
    );
    node.children = vec![rational, rest];
    Ok(Some(node))
}

/// Eliminates integer parameters one at a time (smallest under lex first)
/// until only `z` is left.
pub(crate) fn descend(ctx: &Ctx, name: &str, cs: &[MultiPoly]) -> Result<Case> {
    let cs = ctx.normalize(cs);
    let strings = ctx.strings(&cs);
    if let Some(c) = cs.iter().find(|p| p.is_constant()) {
        return Ok(Case::new(
            name,
            strings,
            Resolution::StructurallyImpossible,
            Check::Inconsistent { poly: ctx.canon(c) },
        ));
    }
    let active = ctx.active_params(&cs);
    let Some(&param) = active.last() else {
        return Ok(positive_roots_case(ctx, name, &cs));
    };
    let pname = ctx.vars[param].clone();
    let Some(u) = ctx.univariate_in(&cs, param)? else {
        return Ok(open(
            name,
            strings,
            format!("no polynomial in {pname} alone"),
        ));
    };
    let roots = integer_roots(&u, param);
    let mut children = Vec::new();
    for &r in &roots {
        let sub = ctx.substitute(&cs, param, r);
        children.push(descend(ctx, &format!("{pname} = {r}"), &sub)?);
    }
    let resolution = if roots.is_empty() {
        Resolution::StructurallyImpossible
    } else {
        Resolution::ReducesToSubcase
    };
    let mut node = Case::new(
        name,
        strings,
        resolution,
        Check::ParameterRoots {
            param: pname,
            poly: ctx.canon(&u),
            roots,
        },
    );
    node.children = children;
    Ok(node)
}

pub(crate) fn positive_roots_case(ctx: &Ctx, name: &str, cs: &[MultiPoly]) -> Case {
    let strings = ctx.strings(cs);
    let Some(g) = z_gcd(cs) else {
        return open(name, strings, "constraints are not univariate");
    };
    if cs.is_empty() {
        return open(name, strings, "no constraints");
    }
    match positive_roots_within_one(&g) {
        Some(roots) => {
            let resolution = if roots.is_empty() {
                Resolution::StructurallyImpossible
            } else {
                Resolution::ForcesZOne
            };
            let gp =
                MultiPoly::from_unipoly(&ctx.refs(), &ctx.vars[0], &g).expect("z is a variable");
            Case::new(
                name,
                strings,
                resolution,
                Check::PositiveRoots {
                    var: ctx.vars[0].clone(),
                    gcd: ctx.canon(&gp),
                    roots,
                },
            )
        }
        None => open(name, strings, "a positive root other than 1 exists"),
    }
}

/// Parameter values along the first path that ends in `z = 1`.
pub(crate) fn values_to_one(
    case: &Case,
    path: &mut Vec<(String, String)>,
) -> Option<BTreeMap<String, String>> {
    if let Check::PositiveRoots { var, roots, .. } = &case.check {
        if roots.len() == 1 {
            let mut out: BTreeMap<String, String> = path.iter().cloned().collect();
            out.insert(var.clone(), roots[0].clone());
            return Some(out);
        }
    }
    for ch in &case.children {
        let pushed = match ch.name.split_once(" = ") {
            Some((k, v)) if v.parse::<i64>().is_ok() => {
                path.push((k.to_string(), v.to_string()));
                true
            }
            _ => false,
        };
        let found = values_to_one(ch, path);
        if pushed {
            path.pop();
        }
        if found.is_some() {
            return found;
        }
    }
    None
}
