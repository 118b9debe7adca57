use std::collections::BTreeMap;

use super::engine::{linear_split, open, positive_roots_case, Ctx, Lemma};
use super::{
    char_multiset, power_of_z, trace_condition_in, Assumption, AutPattern, Case, CharMultiset,
    Check, ObstructionReport, Resolution, SideCheck,
};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::liealg::{example3, LieAlgebra, Subspace, WeightSystem};
use crate::multipoly::MultiPoly;

pub(crate) const VARS: [&str; 4] = ["z", "k", "l", "n"];

/// The three splittings of the abelianization exponents `{1, -1, 2, -2}` into two pairs.
pub const PAIRINGS: [([i64; 2], [i64; 2]); 3] =
    [([1, -1], [2, -2]), ([1, 2], [-1, -2]), ([1, -2], [-1, 2])];

pub(crate) struct Nilradical {
    pub algebra: LieAlgebra,
    pub weights: Vec<Rational>,
}

impl Nilradical {
    pub fn get() -> Result<Self> {
        let l = example3();
        let a = l.index("A")?;
        let w = l
            .weights(a)
            .ok_or_else(|| Error::Precondition("ad A is not diagonal".into()))?;
        let idx: Vec<usize> = (2..l.dim()).collect();
        Ok(Nilradical {
            algebra: l.restrict(&idx)?,
            weights: w.weights[2..].to_vec(),
        })
    }

    pub fn multiset(&self) -> Result<CharMultiset> {
        char_multiset(&WeightSystem {
            derivation: 0,
            weights: self.weights.clone(),
        })
    }

    /// Basis vectors outside the derived algebra, with their exponents.
    pub fn eigenlines(&self) -> Vec<(i64, usize)> {
        let d = self.algebra.derived_subalgebra();
        let n = self.algebra.dim();
        (0..n)
            .filter(|&i| !d.contains(&self.algebra.basis_vector(i)))
            .map(|i| (weight_int(&self.weights[i]), i))
            .collect()
    }

    pub fn center_exponents(&self) -> Vec<i64> {
        let d = self.algebra.derived_subalgebra();
        (0..self.algebra.dim())
            .filter(|&i| d.contains(&self.algebra.basis_vector(i)))
            .map(|i| weight_int(&self.weights[i]))
            .collect()
    }

    fn label_of(&self, exponent: i64) -> Result<usize> {
        self.eigenlines()
            .into_iter()
            .find(|&(e, _)| e == exponent)
            .map(|(_, i)| i)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("no eigenline with exponent {exponent}"))
            })
    }
}

fn weight_int(w: &Rational) -> i64 {
    i64::try_from(w.to_integer()).unwrap_or(i64::MAX)
}

pub(crate) fn assumptions(q0: bool) -> Vec<Assumption> {
    let a = |id: &str, anchor: &str, statement: &str| Assumption {
        id: id.into(),
        anchor: anchor.into(),
        statement: statement.into(),
    };
    let mut out = vec![
        a(
            "nilradical-lattice",
            "nilradical-lattice",
            "Γ ∩ N is a lattice in the nilradical N ≅ n3 ⊕ n3",
        ),
        a(
            "semisimple-part",
            "jordan-decomposition",
            "eigenvalues and traces of the lattice automorphism are those of its semisimple part C",
        ),
        a(
            "z-not-one",
            "generator-exponent",
            "z = exp(t0) with t0 ≠ 0, so z > 0 and z ≠ 1",
        ),
    ];
    if q0 {
        out.push(a(
            "integral-traces",
            "invariant-decomposition",
            "an invariant rational summand has integer trace; the center gives z + 1/z = n",
        ));
        out.push(a(
            "factor-swap",
            "gamma-squared",
            "an automorphism swapping the two factors has a square preserving both",
        ));
    } else {
        out.push(a(
            "rational-form-pattern",
            "automorphisms-g65",
            "for q > 0 the semisimple rational automorphisms have eigenvalues β, β, α, α, αβ, αβ",
        ));
    }
    out
}

fn z_power_set(exps: &[i64]) -> String {
    let parts: Vec<String> = exps.iter().map(|&a| power_of_z(a)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn qpos_case() -> Result<Case> {
    let ctx = Ctx::new(&VARS);
    let nil = Nilradical::get()?;
    let target = nil.multiset()?;
    let pattern = AutPattern::default();
    let mut children = Vec::new();
    for (beta, alpha) in pattern.assignments(&target) {
        let inst = pattern.instantiate(beta, alpha);
        let name = format!("beta = {}, alpha = {}", power_of_z(beta), power_of_z(alpha));
        if inst == target {
            children.push(Case::new(
                name,
                Vec::new(),
                Resolution::Unresolved,
                Check::ExponentMatch {
                    beta,
                    alpha,
                    pattern: inst.exponents().to_vec(),
                },
            ));
            continue;
        }
        let mut node = Case::new(
            name,
            Vec::new(),
            Resolution::StructurallyImpossible,
            Check::ExponentMismatch {
                beta,
                alpha,
                pattern: inst.exponents().to_vec(),
                target: target.exponents().to_vec(),
            },
        );
        for d in coincidence_exponents(inst.exponents(), target.exponents()) {
            let p = coincidence_poly(&ctx, d)?;
            node.children.push(positive_roots_case(
                &ctx,
                &format!("coincidence {} = 1", power_of_z(d)),
                &[p],
            ));
        }
        children.push(node);
    }
    let mut root = Case::new(
        "q > 0",
        Vec::new(),
        Resolution::ReducesToSubcase,
        Check::PatternSplit {
            target: target.exponents().to_vec(),
            candidates: target.distinct(),
        },
    );
    root.children = children;
    Ok(root)
}

/// Every `|p - t| > 0`: some `z^d = 1` must hold for two distinct formal multisets to agree at `z`.
pub(crate) fn coincidence_exponents(pattern: &[i64], target: &[i64]) -> Vec<i64> {
    let mut d: Vec<i64> = pattern
        .iter()
        .flat_map(|p| target.iter().map(move |t| (p - t).abs()))
        .filter(|&d| d > 0)
        .collect();
    d.sort_unstable();
    d.dedup();
    d
}

pub(crate) fn coincidence_poly(ctx: &Ctx, d: i64) -> Result<MultiPoly> {
    let n = ctx.vars.len();
    let mut e = vec![0u32; n];
    e[0] = d as u32;
    MultiPoly::from_terms(
        &ctx.refs(),
        [
            (e, Rational::from_integer(1.into())),
            (vec![0; n], Rational::from_integer((-1).into())),
        ],
    )
}

/// Bracket test for a pairing of eigenline exponents (already divided by the scale).
pub fn pairing_bracket_check(first: &[i64], second: &[i64]) -> Result<Check> {
    let nil = Nilradical::get()?;
    let l = &nil.algebra;
    let gen = |exps: &[i64]| -> Result<(Vec<String>, Subspace)> {
        let mut labels = Vec::new();
        let mut vecs = Vec::new();
        for &e in exps {
            let i = nil.label_of(e)?;
            labels.push(l.labels()[i].clone());
            vecs.push(l.basis_vector(i));
        }
        Ok((labels, l.subalgebra_generated(&vecs)))
    };
    let (l1, s1) = gen(first)?;
    let (l2, s2) = gen(second)?;
    let heis = |s: &Subspace| s.dim() == 3 && l.bracket_spaces(s, s).dim() == 1;
    Ok(Check::BracketCompatibility {
        first: l1,
        second: l2,
        dims: [s1.dim(), s2.dim()],
        ideals: [l.is_ideal(&s1), l.is_ideal(&s2)],
        heisenberg: [heis(&s1), heis(&s2)],
        direct: s1.intersection(&s2).is_zero() && s1.sum(&s2).dim() == l.dim(),
    })
}

pub(crate) fn trace_constraints(
    first: &[i64],
    second: &[i64],
    scale: i64,
) -> Result<[MultiPoly; 2]> {
    let norm = |v: &[i64]| v.iter().map(|a| a / scale).collect::<Vec<_>>();
    Ok([
        trace_condition_in(&norm(first), "k", &VARS)?,
        trace_condition_in(&norm(second), "l", &VARS)?,
    ])
}

pub(crate) fn center_constraint() -> Result<MultiPoly> {
    trace_condition_in(&[1, -1], "n", &VARS)
}

fn pairing_case(first: [i64; 2], second: [i64; 2], scale: i64) -> Result<Case> {
    let ctx = Ctx::new(&VARS);
    let f: Vec<i64> = first.iter().map(|a| a * scale).collect();
    let s: Vec<i64> = second.iter().map(|a| a * scale).collect();
    let name = format!("pairing {} | {}", z_power_set(&f), z_power_set(&s));
    let bracket = pairing_bracket_check(&first, &second)?;
    let bracket_passes = bracket.bracket_passes().unwrap_or(false);
    let tc = trace_constraints(&f, &s, scale)?;
    let trace = linear_split(
        &ctx,
        "trace integrality",
        &tc,
        &Lemma::Center(center_constraint()?),
    )?;
    let mut node = Case::new(
        name,
        Vec::new(),
        Resolution::ReducesToSubcase,
        Check::Pairing {
            first: f,
            second: s,
            scale,
        },
    );
    match trace {
        Some(t) if t.is_closed() => {
            node.killed_by = Some("trace".into());
            node.side_checks.push(SideCheck {
                name: "bracket".into(),
                passed: bracket_passes,
                check: bracket,
            });
            node.children.push(t);
        }
        _ if !bracket_passes => {
            node.killed_by = Some("bracket".into());
            node.children.push(Case::new(
                "bracket compatibility",
                Vec::new(),
                Resolution::StructurallyImpossible,
                bracket,
            ));
        }
        _ => {
            node.resolution = Resolution::Unresolved;
            node.side_checks.push(SideCheck {
                name: "bracket".into(),
                passed: true,
                check: bracket,
            });
        }
    }
    Ok(node)
}

fn pairing_split(name: &str, scale: i64) -> Result<Case> {
    let mut node = Case::new(
        name,
        Vec::new(),
        Resolution::ReducesToSubcase,
        Check::Split {
            reason: "the abelianization splits into two invariant planes in one of three ways"
                .into(),
        },
    );
    for (a, b) in PAIRINGS {
        node.children.push(pairing_case(a, b, scale)?);
    }
    Ok(node)
}

fn q0_case() -> Result<Case> {
    let mut root = Case::new(
        "q = 0",
        Vec::new(),
        Resolution::ReducesToSubcase,
        Check::Split {
            reason: "the automorphism preserves both Heisenberg factors or swaps them".into(),
        },
    );
    root.children.push(pairing_split("factors preserved", 1)?);
    root.children
        .push(pairing_split("factors swapped: square preserves them", 2)?);
    Ok(root)
}

fn report(cases: Vec<Case>, q0: bool, qpos: bool) -> ObstructionReport {
    let conclusion = ObstructionReport::conclude(&cases);
    let mut values = BTreeMap::new();
    for c in &cases {
        collect_values(c, &mut values);
    }
    let mut assumptions = assumptions(q0);
    if q0 && qpos {
        assumptions.extend(
            self::assumptions(false)
                .into_iter()
                .filter(|a| a.id == "rational-form-pattern"),
        );
    }
    ObstructionReport {
        example: "3".into(),
        variables: VARS.iter().map(|s| s.to_string()).collect(),
        assumptions,
        cases,
        conclusion,
        values,
    }
}

fn collect_values(c: &Case, values: &mut BTreeMap<String, String>) {
    match &c.check {
        Check::PatternSplit { .. } => {
            let matches = c
                .children
                .iter()
                .filter(|ch| matches!(ch.check, Check::ExponentMatch { .. }))
                .count();
            values.insert("assignments".into(), c.children.len().to_string());
            values.insert("matching_assignments".into(), matches.to_string());
        }
        Check::Pairing { scale, .. } => {
            let prefix = if *scale == 1 { "" } else { "square_" };
            let key = format!(
                "{prefix}killed_by_{}",
                c.killed_by.as_deref().unwrap_or("none")
            );
            let n = values
                .get(&key)
                .and_then(|v| v.parse::<usize>().ok())
                .unwrap_or(0)
                + 1;
            values.insert(key, n.to_string());
            let passes = c
                .side_checks
                .iter()
                .any(|s| s.name == "bracket" && s.passed);
            if passes && *scale == 1 {
                values.insert(
                    "bracket_compatible_pairing".into(),
                    c.name.trim_start_matches("pairing ").into(),
                );
            }
        }
        _ => {}
    }
    for ch in &c.children {
        collect_values(ch, values);
    }
}

fn failed(name: &str, e: Error) -> Case {
    open(name, Vec::new(), e.to_string())
}

pub fn example3_qpos_obstruction() -> ObstructionReport {
    report(
        vec![qpos_case().unwrap_or_else(|e| failed("q > 0", e))],
        false,
        true,
    )
}

pub fn example3_q0_obstruction() -> ObstructionReport {
    report(
        vec![q0_case().unwrap_or_else(|e| failed("q = 0", e))],
        true,
        false,
    )
}

/// Both rational forms: `q > 0` and `q = 0`.
pub fn example3_obstruction() -> ObstructionReport {
    report(
        vec![
            qpos_case().unwrap_or_else(|e| failed("q > 0", e)),
            q0_case().unwrap_or_else(|e| failed("q = 0", e)),
        ],
        true,
        true,
    )
}
