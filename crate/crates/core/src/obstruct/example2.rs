use super::engine::{descend, linear_split, open, values_to_one, Ctx, Lemma};
use super::{char_multiset, trace_condition_in, Assumption, ObstructionReport};
use crate::error::{Error, Result};
use crate::liealg::example2;
use crate::multipoly::MultiPoly;

pub(crate) const VARS: [&str; 3] = ["z", "m", "n"];

pub(crate) fn assumptions() -> Vec<Assumption> {
    let a = |id: &str, anchor: &str, statement: &str| Assumption {
        id: id.into(),
        anchor: anchor.into(),
        statement: statement.into(),
    };
    vec![
        a(
            "semidirect-reduction",
            "reduction-to-modified-group",
            "a lattice in R gives a lattice Z ⋉ (Γ ∩ N) in the modified group",
        ),
        a(
            "nilradical-lattice",
            "nilradical-lattice",
            "Γ ∩ N is a lattice in the nilradical N",
        ),
        a(
            "semisimple-part",
            "jordan-decomposition",
            "eigenvalues and traces of the generator are those of its semisimple part C",
        ),
        a(
            "integral-traces",
            "rational-structure",
            "the generator preserves rational structures on V and Λ²V, so its traces m and n are integers",
        ),
        a(
            "z-not-one",
            "generator-exponent",
            "z = exp(t0) with t0 ≠ 0, so z > 0 and z ≠ 1",
        ),
    ]
}

/// `(f, g)` over `[z, m, n]`: trace conditions of the generator on `V` and `Λ²V`,
/// with exponents read off the weights of `A`.
pub fn example2_system() -> Result<(MultiPoly, MultiPoly)> {
    let l = example2();
    let a = l.index("A")?;
    let w = l
        .weights(a)
        .ok_or_else(|| Error::Precondition("ad A is not diagonal".into()))?;
    let v = char_multiset(&crate::liealg::WeightSystem {
        derivation: a,
        weights: w.weights[2..5].to_vec(),
    })?;
    let v2 = char_multiset(&crate::liealg::WeightSystem {
        derivation: a,
        weights: w.weights[5..8].to_vec(),
    })?;
    let f = trace_condition_in(v.exponents(), "m", &VARS)?;
    let g = trace_condition_in(v2.exponents(), "n", &VARS)?;
    Ok((f, g))
}

pub fn example2_obstruction() -> ObstructionReport {
    match example2_system() {
        Ok((f, g)) => {
            let mut r = example2_obstruction_with(&f, &g);
            r.example = "2".into();
            r
        }
        Err(e) => ObstructionReport {
            example: "2".into(),
            variables: VARS.iter().map(|s| s.to_string()).collect(),
            assumptions: assumptions(),
            cases: vec![open("trace system", Vec::new(), e.to_string())],
            conclusion: super::Conclusion::Inconclusive,
            values: Default::default(),
        },
    }
}

/// Runs the pipeline on an arbitrary pair over `[z, m, n]`; `f` plays the role of the
/// monic trace condition with unit constant term.
pub fn example2_obstruction_with(f: &MultiPoly, g: &MultiPoly) -> ObstructionReport {
    let ctx = Ctx::new(&VARS);
    let build = || -> Result<_> {
        let f = f.with_vars(&VARS)?;
        let g = g.with_vars(&VARS)?;
        let cs = [f.clone(), g];
        Ok(
            match linear_split(&ctx, "trace system", &cs, &Lemma::Monic(f))? {
                Some(c) => c,
                None => descend(&ctx, "trace system", &cs)?,
            },
        )
    };
    let root = build().unwrap_or_else(|e| open("trace system", Vec::new(), e.to_string()));
    let cases = vec![root];
    let conclusion = ObstructionReport::conclude(&cases);
    let values = values_to_one(&cases[0], &mut Vec::new()).unwrap_or_default();
    ObstructionReport {
        example: "custom".into(),
        variables: ctx.vars.clone(),
        assumptions: assumptions(),
        cases,
        conclusion,
        values,
    }
}
