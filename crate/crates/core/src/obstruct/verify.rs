//! Re-checks a report from its serialized content: every polynomial is
//! re-parsed and every claim recomputed.

use super::engine::{integer_roots, positive_roots_within_one, z_gcd, Ctx};
use super::example3::{
    coincidence_exponents, coincidence_poly, pairing_bracket_check, trace_constraints, Nilradical,
};
use super::{
    trace_condition_in, AutPattern, Case, CharMultiset, Check, ObstructionReport, Resolution,
};
use crate::error::{Error, Result};
use crate::multipoly::{buchberger, MultiPoly};
use num_traits::One;

fn fail(path: &str, msg: impl AsRef<str>) -> Error {
    Error::CertificateFailed(format!("{path}: {}", msg.as_ref()))
}

/// Recomputes every check in the report; the first failure is returned.
pub fn verify_report(report: &ObstructionReport) -> Result<()> {
    if report.variables.first().map(String::as_str) != Some("z") {
        return Err(fail("variables", "z must come first"));
    }
    let ctx = Ctx {
        vars: report.variables.clone(),
    };
    match report.example.as_str() {
        "2" => verify_example2(&ctx, report)?,
        "3" => verify_example3(report)?,
        _ => {}
    }
    for (i, c) in report.cases.iter().enumerate() {
        verify_case(&ctx, c, &format!("cases[{i}]"))?;
    }
    if report.conclusion != ObstructionReport::conclude(&report.cases) {
        return Err(fail("conclusion", "does not follow from the case tree"));
    }
    Ok(())
}

fn verify_example2(ctx: &Ctx, report: &ObstructionReport) -> Result<()> {
    let (f, g) = super::example2_system()?;
    let expected =
        ctx.strings(&ctx.normalize(&[f.with_vars(&ctx.refs())?, g.with_vars(&ctx.refs())?]));
    match report.cases.as_slice() {
        [root] if root.constraints == expected => Ok(()),
        _ => Err(fail(
            "cases[0]",
            "root constraints are not the trace conditions",
        )),
    }
}

fn verify_example3(report: &ObstructionReport) -> Result<()> {
    let nil = Nilradical::get()?;
    let target = nil.multiset()?;
    let mut center = nil.center_exponents();
    center.sort_unstable();
    if center != [-1, 1] {
        return Err(fail("example", "center exponents are not ±1"));
    }
    let mut exps: Vec<i64> = nil.eigenlines().into_iter().map(|(e, _)| e).collect();
    exps.sort_unstable();
    let mut scales = Vec::new();
    for (i, c) in report.cases.iter().enumerate() {
        walk(c, &mut |node| {
            if let Check::PatternSplit { target: t, .. } = &node.check {
                if t.as_slice() != target.exponents() {
                    return Err(fail(
                        &format!("cases[{i}]"),
                        "pattern target is not the characteristic multiset",
                    ));
                }
            }
            let pairs: Vec<_> = node
                .children
                .iter()
                .filter_map(|ch| match &ch.check {
                    Check::Pairing {
                        first,
                        second,
                        scale,
                    } => Some((first.clone(), second.clone(), *scale)),
                    _ => None,
                })
                .collect();
            if pairs.is_empty() {
                return Ok(());
            }
            let scale = pairs[0].2;
            let mut got: Vec<_> = pairs
                .iter()
                .map(|(a, b, s)| {
                    if *s != scale {
                        return Err(fail(&node.name, "mixed scales"));
                    }
                    Ok(unordered_pair(a, b))
                })
                .collect::<Result<_>>()?;
            got.sort();
            let mut want: Vec<_> = (1..exps.len())
                .map(|j| {
                    let first = vec![exps[0] * scale, exps[j] * scale];
                    let second: Vec<i64> = (1..exps.len())
                        .filter(|&k| k != j)
                        .map(|k| exps[k] * scale)
                        .collect();
                    unordered_pair(&first, &second)
                })
                .collect();
            want.sort();
            if got != want {
                return Err(fail(&node.name, "pairings are not exhaustive"));
            }
            scales.push(scale);
            Ok(())
        })?;
    }
    if !scales.is_empty() && !(scales.contains(&1) && scales.contains(&2)) {
        return Err(fail(
            "example",
            "pairings must cover the automorphism and its square",
        ));
    }
    Ok(())
}

fn unordered_pair(a: &[i64], b: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn walk(c: &Case, f: &mut dyn FnMut(&Case) -> Result<()>) -> Result<()> {
    f(c)?;
    for ch in &c.children {
        walk(ch, f)?;
    }
    Ok(())
}

fn parse_all(ctx: &Ctx, ss: &[String], path: &str) -> Result<Vec<MultiPoly>> {
    ss.iter()
        .map(|s| {
            let p = ctx
                .parse(s)
                .map_err(|e| fail(path, format!("`{s}`: {e}")))?;
            if &ctx.canon(&p) != s {
                return Err(fail(path, format!("`{s}` is not in normal form")));
            }
            Ok(p)
        })
        .collect()
}

fn in_ideal(ctx: &Ctx, p: &MultiPoly, cs: &[MultiPoly]) -> Result<bool> {
    let s = ctx.canon(p);
    if cs.iter().any(|c| ctx.canon(c) == s) {
        return Ok(true);
    }
    Ok(buchberger(cs, &ctx.order())?.contains(p))
}

fn check_linear(
    ctx: &Ctx,
    linear: &[String],
    cs: &[MultiPoly],
    path: &str,
) -> Result<Vec<MultiPoly>> {
    let ps = parse_all(ctx, linear, path)?;
    if ps.is_empty() {
        return Err(fail(path, "no linear generators"));
    }
    for (p, s) in ps.iter().zip(linear) {
        if p.degree_in(0) != 1 {
            return Err(fail(path, format!("`{s}` is not linear in z")));
        }
        if !in_ideal(ctx, p, cs)? {
            return Err(fail(path, format!("`{s}` is not in the ideal")));
        }
    }
    Ok(ps)
}

fn expect_resolution(c: &Case, want: Resolution, path: &str) -> Result<()> {
    if c.resolution != want {
        return Err(fail(
            path,
            format!("resolution {:?} should be {want:?}", c.resolution),
        ));
    }
    Ok(())
}

fn expect_leaf(c: &Case, path: &str) -> Result<()> {
    if !c.children.is_empty() {
        return Err(fail(path, "unexpected children"));
    }
    Ok(())
}

fn verify_case(ctx: &Ctx, c: &Case, path: &str) -> Result<()> {
    let cs = parse_all(ctx, &c.constraints, path)?;
    match &c.check {
        Check::Split { .. } => {
            if c.children.is_empty() {
                return Err(fail(path, "split without cases"));
            }
            expect_resolution(c, Resolution::ReducesToSubcase, path)?;
        }
        Check::LinearSplit { var, linear } => {
            if var != &ctx.vars[0] {
                return Err(fail(path, "split variable must be z"));
            }
            let ps = check_linear(ctx, linear, &cs, path)?;
            let [first, second] = c.children.as_slice() else {
                return Err(fail(path, "linear split needs exactly two cases"));
            };
            match &first.check {
                Check::RationalRootOfMonic { linear: l, .. }
                | Check::RationalPlusInverse { linear: l, .. }
                    if l == linear && first.constraints == c.constraints => {}
                _ => return Err(fail(path, "first case must use the same linear generators")),
            }
            let mut vanish = cs.clone();
            vanish.extend(ps.iter().map(|p| ctx.z_coefficient(p)));
            if second.constraints != ctx.strings(&ctx.normalize(&vanish)) {
                return Err(fail(path, "second case must add every coefficient of z"));
            }
            expect_resolution(c, Resolution::ReducesToSubcase, path)?;
        }
        Check::RationalRootOfMonic { linear, monic, .. } => {
            check_linear(ctx, linear, &cs, path)?;
            let f = ctx.parse(monic).map_err(|e| fail(path, e.to_string()))?;
            if !in_ideal(ctx, &f, &cs)? {
                return Err(fail(path, "monic polynomial is not in the ideal"));
            }
            if !f.terms().all(|(_, c)| c.is_integer()) {
                return Err(fail(path, "monic polynomial has non-integer coefficients"));
            }
            let co = f.coefficients_in(0);
            let unit = |p: &MultiPoly| {
                p.is_constant()
                    && p.terms()
                        .all(|(_, c)| c.numer().magnitude() == &1u32.into())
            };
            let lead_one = co
                .last()
                .is_some_and(|p| p.is_constant() && p.terms().all(|(_, c)| c.is_one()));
            if co.len() < 2 || !lead_one || !unit(&co[0]) {
                return Err(fail(path, "not monic in z with unit constant term"));
            }
            expect_resolution(c, Resolution::ForcesZOne, path)?;
            expect_leaf(c, path)?;
        }
        Check::RationalPlusInverse { linear, center, .. } => {
            check_linear(ctx, linear, &cs, path)?;
            let ok = ctx.vars[1..].iter().any(|v| {
                trace_condition_in(&[1, -1], v, &ctx.refs()).is_ok_and(|p| &ctx.canon(&p) == center)
            });
            if !ok {
                return Err(fail(path, "center condition is not z + 1/z = integer"));
            }
            expect_resolution(c, Resolution::ForcesZOne, path)?;
            expect_leaf(c, path)?;
        }
        Check::ParameterRoots { param, poly, roots } => {
            let v = ctx.vars.iter().position(|x| x == param).filter(|&v| v > 0);
            let Some(v) = v else {
                return Err(fail(path, format!("`{param}` is not a parameter")));
            };
            let u = ctx.parse(poly).map_err(|e| fail(path, e.to_string()))?;
            if u.support() != [v] {
                return Err(fail(
                    path,
                    format!("`{poly}` is not a polynomial in {param} alone"),
                ));
            }
            if !in_ideal(ctx, &u, &cs)? {
                return Err(fail(path, format!("`{poly}` is not in the ideal")));
            }
            if &integer_roots(&u, v) != roots {
                return Err(fail(path, "integer roots differ"));
            }
            if c.children.len() != roots.len() {
                return Err(fail(path, "one case per root expected"));
            }
            for (ch, &r) in c.children.iter().zip(roots) {
                if ch.constraints != ctx.strings(&ctx.substitute(&cs, v, r)) {
                    return Err(fail(
                        path,
                        format!("case {param} = {r} has wrong constraints"),
                    ));
                }
            }
            let want = if roots.is_empty() {
                Resolution::StructurallyImpossible
            } else {
                Resolution::ReducesToSubcase
            };
            expect_resolution(c, want, path)?;
        }
        Check::PositiveRoots { gcd, roots, .. } => {
            expect_leaf(c, path)?;
            if cs.is_empty() {
                return Err(fail(path, "no constraints"));
            }
            let g = z_gcd(&cs).ok_or_else(|| fail(path, "constraints are not univariate in z"))?;
            let gp = MultiPoly::from_unipoly(&ctx.refs(), &ctx.vars[0], &g)?;
            if &ctx.canon(&gp) != gcd {
                return Err(fail(path, "gcd differs"));
            }
            if positive_roots_within_one(&g).as_ref() != Some(roots) {
                return Err(fail(path, "positive roots differ"));
            }
            let want = if roots.is_empty() {
                Resolution::StructurallyImpossible
            } else {
                Resolution::ForcesZOne
            };
            expect_resolution(c, want, path)?;
        }
        Check::Inconsistent { poly } => {
            expect_leaf(c, path)?;
            let p = ctx.parse(poly).map_err(|e| fail(path, e.to_string()))?;
            if !c.constraints.contains(poly) || !p.is_constant() || p.is_zero() {
                return Err(fail(path, "not a nonzero constant constraint"));
            }
            expect_resolution(c, Resolution::StructurallyImpossible, path)?;
        }
        Check::PatternSplit { target, candidates } => {
            let t = CharMultiset::new(target.clone());
            if t.exponents() != target.as_slice() || &t.distinct() != candidates {
                return Err(fail(
                    path,
                    "candidates are not the distinct target exponents",
                ));
            }
            let want = AutPattern::default().assignments(&t);
            if c.children.len() != want.len() {
                return Err(fail(path, "assignments are not exhaustive"));
            }
            for (ch, &(b, a)) in c.children.iter().zip(&want) {
                match &ch.check {
                    Check::ExponentMismatch {
                        beta,
                        alpha,
                        target: tt,
                        ..
                    } if (*beta, *alpha) == (b, a) && tt == target => {}
                    Check::ExponentMatch { beta, alpha, .. } if (*beta, *alpha) == (b, a) => {}
                    _ => return Err(fail(path, format!("assignment ({b}, {a}) missing"))),
                }
            }
            expect_resolution(c, Resolution::ReducesToSubcase, path)?;
        }
        Check::ExponentMismatch {
            beta,
            alpha,
            pattern,
            target,
        } => {
            let inst = AutPattern::default().instantiate(*beta, *alpha);
            if inst.exponents() != pattern.as_slice() {
                return Err(fail(path, "pattern exponents differ"));
            }
            if pattern == target {
                return Err(fail(path, "pattern matches the target"));
            }
            let ds = coincidence_exponents(pattern, target);
            if c.children.len() != ds.len() {
                return Err(fail(
                    path,
                    "one coincidence case per exponent difference expected",
                ));
            }
            for (ch, &d) in c.children.iter().zip(&ds) {
                if ch.constraints != vec![ctx.canon(&coincidence_poly(ctx, d)?)] {
                    return Err(fail(
                        path,
                        format!("coincidence z^{d} = 1 has wrong constraints"),
                    ));
                }
            }
            expect_resolution(c, Resolution::StructurallyImpossible, path)?;
        }
        Check::ExponentMatch {
            beta,
            alpha,
            pattern,
        } => {
            if AutPattern::default().instantiate(*beta, *alpha).exponents() != pattern.as_slice() {
                return Err(fail(path, "pattern exponents differ"));
            }
            expect_resolution(c, Resolution::Unresolved, path)?;
        }
        Check::Pairing {
            first,
            second,
            scale,
        } => verify_pairing(ctx, c, first, second, *scale, path)?,
        Check::BracketCompatibility { .. } => {
            let want = if c.check.bracket_passes() == Some(true) {
                Resolution::Unresolved
            } else {
                Resolution::StructurallyImpossible
            };
            expect_resolution(c, want, path)?;
            expect_leaf(c, path)?;
        }
        Check::Open { .. } => expect_resolution(c, Resolution::Unresolved, path)?,
    }
    for (i, ch) in c.children.iter().enumerate() {
        verify_case(ctx, ch, &format!("{path}/{i}"))?;
    }
    Ok(())
}

fn verify_pairing(
    ctx: &Ctx,
    c: &Case,
    first: &[i64],
    second: &[i64],
    scale: i64,
    path: &str,
) -> Result<()> {
    if scale < 1 || first.iter().chain(second).any(|a| a % scale != 0) {
        return Err(fail(path, "exponents are not multiples of the scale"));
    }
    let norm = |v: &[i64]| v.iter().map(|a| a / scale).collect::<Vec<_>>();
    let bracket = pairing_bracket_check(&norm(first), &norm(second))?;
    let passes = bracket.bracket_passes() == Some(true);
    for s in &c.side_checks {
        if s.name == "bracket" && (s.check != bracket || s.passed != passes) {
            return Err(fail(path, "bracket side check differs"));
        }
    }
    match (c.killed_by.as_deref(), c.children.as_slice()) {
        (Some("trace"), [t]) => {
            let want = ctx.strings(&ctx.normalize(&trace_constraints(first, second, scale)?));
            if t.constraints != want || !matches!(t.check, Check::LinearSplit { .. }) {
                return Err(fail(path, "trace case does not match the pairing"));
            }
            if !t.is_closed() {
                return Err(fail(path, "trace case is not closed"));
            }
        }
        (Some("bracket"), [b]) => {
            if b.check != bracket || passes {
                return Err(fail(path, "bracket case differs"));
            }
        }
        (None, []) => expect_resolution(c, Resolution::Unresolved, path)?,
        _ => return Err(fail(path, "killing check is inconsistent")),
    }
    if c.killed_by.is_some() {
        expect_resolution(c, Resolution::ReducesToSubcase, path)?;
    }
    Ok(())
}
