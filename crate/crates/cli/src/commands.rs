use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use solvlat_core::ceh::{hard_lefschetz as lefschetz, symplectic_check, CohomologyRing, TwoForm};
use solvlat_core::exact::{isolate_roots, parse_rational, MatrixQ};
use solvlat_core::lattice::{build_lattice as build, verify_certificate, LatticeCertificate};
use solvlat_core::liealg::free2step;
use solvlat_core::multipoly::{buchberger, MonomialOrder};
use solvlat_core::obstruct::{
    example2_obstruction, example2_system, example3_obstruction, verify_report, ObstructionReport,
};
use solvlat_core::registry::{default_omega, list_examples as examples, lookup};
use solvlat_core::{Error, LieAlgebra, Rational};

use crate::{render, Order, Output, Verdict};

const RANDOM_WORDS: usize = 256;
const MAX_WORD: usize = 8;

fn load(target: &str) -> Result<LieAlgebra> {
    match lookup(target) {
        Err(Error::UnknownAlgebra(_)) if Path::new(target).is_file() => {
            let src =
                std::fs::read_to_string(target).with_context(|| format!("cannot read {target}"))?;
            LieAlgebra::from_text(&src).with_context(|| target.to_string())
        }
        r => Ok(r?),
    }
}

fn header(target: &str, l: &LieAlgebra) -> String {
    format!("algebra: {target} (dim {})\n", l.dim())
}

fn verdict(yes: bool) -> Verdict {
    if yes {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

pub fn validate(target: &str) -> Result<Output> {
    let l = load(target)?;
    let r = l.validate();
    let mut text = header(target, &l);
    text.push_str(&format!("valid: {}\n", r.ok));
    if let Some((a, b)) = &r.antisymmetry {
        text.push_str(&format!("antisymmetry fails: [{a}, {b}]\n"));
    }
    if let Some((a, b, c)) = &r.jacobi {
        text.push_str(&format!("jacobi fails: ({a}, {b}, {c})\n"));
    }
    let mut json = json!({
        "algebra": target,
        "dim": l.dim(),
        "valid": r.ok,
        "antisymmetry": r.antisymmetry,
        "jacobi": r.jacobi,
    });
    if r.ok {
        let class = l.nilpotency_class();
        let (solv, csolv) = (l.is_solvable(), l.is_completely_solvable());
        text.push_str(&format!(
            "nilpotent: {}\nnilpotency_class: {}\nsolvable: {solv}\ncompletely_solvable: {csolv}\n",
            class.is_some(),
            class.map_or("-".into(), |c| c.to_string())
        ));
        json["nilpotent"] = json!(class.is_some());
        json["nilpotency_class"] = json!(class);
        json["solvable"] = json!(solv);
        json["completely_solvable"] = json!(csolv);
    }
    Ok(Output {
        text,
        json,
        verdict: verdict(r.ok),
    })
}

fn valid(target: &str) -> Result<LieAlgebra> {
    let l = load(target)?;
    if !l.is_valid() {
        bail!("{target} is not a Lie algebra; run `solvlat validate {target}`");
    }
    Ok(l)
}

pub fn betti(target: &str) -> Result<Output> {
    let l = valid(target)?;
    let b = solvlat_core::ceh::betti(&l)?;
    let euler: i64 = b
        .iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum();
    Ok(Output {
        text: format!(
            "{}betti: {}\neuler: {euler}\n",
            header(target, &l),
            render::list(&b)
        ),
        json: json!({ "algebra": target, "dim": l.dim(), "betti": b, "euler": euler }),
        verdict: Verdict::Yes,
    })
}

pub fn cohomology(target: &str) -> Result<Output> {
    let l = valid(target)?;
    let ring = CohomologyRing::new(&l)?;
    let b = ring.betti();
    let mut text = format!("{}betti: {}\n", header(target, &l), render::list(&b));
    let mut degrees = Vec::new();
    for k in 0..=l.dim() {
        let reps: Vec<String> = ring
            .representatives(k)
            .iter()
            .map(|v| render::cochain(v, ring.complex().basis(k), l.labels()))
            .collect();
        text.push_str(&format!("H^{k} (dim {}):\n", b[k]));
        for r in &reps {
            text.push_str(&format!("  {r}\n"));
        }
        degrees.push(json!({ "degree": k, "dim": b[k], "representatives": reps }));
    }
    Ok(Output {
        text,
        json: json!({ "algebra": target, "dim": l.dim(), "betti": b, "degrees": degrees }),
        verdict: Verdict::Yes,
    })
}

fn omega_for(target: &str, l: &LieAlgebra, omega: Option<&str>) -> Result<(String, TwoForm)> {
    let src = match omega {
        Some(s) => s.to_string(),
        None => default_omega(target)
            .ok_or_else(|| anyhow!("no default two-form for {target}; pass --omega"))?,
    };
    let w = TwoForm::parse(&src, l).with_context(|| format!("--omega {src:?}"))?;
    Ok((w.render(l), w))
}

pub fn symplectic(target: &str, omega: Option<&str>) -> Result<Output> {
    let l = valid(target)?;
    let (shown, w) = omega_for(target, &l, omega)?;
    let r = symplectic_check(&l, &w)?;
    Ok(Output {
        text: format!(
            "{}omega: {shown}\nclosed: {}\nnondegenerate: {}\nsymplectic: {}\n",
            header(target, &l),
            r.closed,
            r.nondegenerate,
            r.is_symplectic()
        ),
        json: json!({
            "algebra": target,
            "omega": shown,
            "closed": r.closed,
            "nondegenerate": r.nondegenerate,
            "symplectic": r.is_symplectic(),
        }),
        verdict: verdict(r.is_symplectic()),
    })
}

pub fn hard_lefschetz(target: &str, omega: Option<&str>) -> Result<Output> {
    let l = valid(target)?;
    let (shown, w) = omega_for(target, &l, omega)?;
    let s = symplectic_check(&l, &w)?;
    if !s.is_symplectic() {
        bail!(
            "{shown} is not symplectic on {target} (closed: {}, nondegenerate: {})",
            s.closed,
            s.nondegenerate
        );
    }
    let r = lefschetz(&l, &w)?;
    let n = l.dim() / 2;
    let mut text = format!(
        "{}omega: {shown}\nbetti: {}\n",
        header(target, &l),
        render::list(&r.betti)
    );
    for m in &r.maps {
        let ok = m.rank == m.source_dim && m.rank == m.target_dim;
        text.push_str(&format!(
            "k={}: H^{} -> H^{} rank {} (dims {}, {}) {}\n",
            m.k,
            n - m.k,
            n + m.k,
            m.rank,
            m.source_dim,
            m.target_dim,
            if ok { "iso" } else { "fails" }
        ));
    }
    text.push_str(&format!(
        "holds: {}\nfailing_degree: {}\n",
        r.holds,
        r.failing_degree.map_or("-".into(), |k| k.to_string())
    ));
    let mut json = serde_json::to_value(&r)?;
    json["algebra"] = json!(target);
    json["omega"] = json!(shown);
    Ok(Output {
        text,
        json,
        verdict: verdict(r.holds),
    })
}

fn root_basis(order: Order) -> Result<Vec<String>> {
    let (f, g) = example2_system()?;
    let n = f.vars().len();
    let mo = match order {
        Order::Lex => MonomialOrder::lex(n),
        Order::Grevlex => MonomialOrder::grevlex(n),
    };
    Ok(buchberger(&[f, g], &mo)?
        .generators()
        .iter()
        .map(|g| g.render(&mo))
        .collect())
}

pub fn obstruct(target: &str, order: Option<Order>) -> Result<Output> {
    let mut report = match target.trim() {
        "example2" => example2_obstruction(),
        "example3" => example3_obstruction(),
        _ => {
            load(target)?;
            bail!("no obstruction analysis for {target}; available: example2, example3");
        }
    };
    if let Some(order) = order {
        if report.example != "2" {
            bail!("--order applies to example2 only");
        }
        let name = format!("{order:?}").to_lowercase();
        report.values.insert("root_basis_order".into(), name);
        report
            .values
            .insert("root_basis".into(), root_basis(order)?.join("; "));
    }
    Ok(obstruction_output(&report))
}

fn obstruction_output(report: &ObstructionReport) -> Output {
    Output {
        text: report.render_text(),
        json: serde_json::from_str(&report.to_json()).expect("report json"),
        verdict: verdict(report.is_obstructed()),
    }
}

fn lattice_text(cert: &LatticeCertificate) -> String {
    let mut text = format!("cubic: {}\n", cert.cubic.polynomial().render("x"));
    for iv in &cert.roots {
        text.push_str(&format!("root: {}\n", iv.display(12)));
    }
    text.push_str(&format!(
        "C: {}\nC2: {}\nlambda: {}\nclosure: {} products and commutators\nprop1_index: {}\nabelian_index: {}\ngroup: {}\n",
        render::matrix(&cert.c),
        render::matrix(&cert.c2),
        cert.lambda_basis.labels.join(" "),
        cert.closure.len(),
        cert.prop1_index,
        cert.abelian_index,
        cert.group
    ));
    text
}

pub fn build_lattice(p: i64, q: i64, width: Option<&str>) -> Result<Output> {
    let mut cert = build(p, q)?;
    if let Some(w) = width {
        let w = parse_rational(w).with_context(|| format!("--width {w}"))?;
        if w <= Rational::from_integer(0.into()) {
            bail!("--width must be positive");
        }
        cert.roots = isolate_roots(&cert.cubic.polynomial(), &w).intervals;
        verify_certificate(&cert)?;
    }
    Ok(Output {
        text: lattice_text(&cert),
        json: serde_json::from_str(&cert.to_json())?,
        verdict: Verdict::Yes,
    })
}

/// Products of random words in the generators and their inverses stay in the lattice.
fn random_products(cert: &LatticeCertificate, seed: u64) -> Result<(), String> {
    let l = free2step(3).map_err(|e| e.to_string())?;
    let basis = &cert.lambda_basis.basis;
    let inv = MatrixQ::from_columns(6, basis)
        .inverse()
        .ok_or("lambda basis is singular")?;
    let mut gens: Vec<Vec<Rational>> = basis.clone();
    gens.extend(
        basis
            .iter()
            .map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()),
    );
    let half = Rational::new(1.into(), 2.into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for word in 0..RANDOM_WORDS {
        let len = rng.gen_range(2..=MAX_WORD);
        let mut u = gens[rng.gen_range(0..gens.len())].clone();
        for step in 1..len {
            let v = &gens[rng.gen_range(0..gens.len())];
            let b = l.bracket(&u, v);
            u = u
                .iter()
                .zip(v)
                .zip(&b)
                .map(|((x, y), z)| x + y + &half * z)
                .collect();
            if !inv.mul_vec(&u).iter().all(Rational::is_integer) {
                return Err(format!(
                    "word {word} leaves the lattice after {} letters",
                    step + 1
                ));
            }
        }
    }
    Ok(())
}

pub fn verify(file: &Path, seed: u64) -> Result<Output> {
    let src =
        std::fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let doc: Value =
        serde_json::from_str(&src).with_context(|| format!("{} is not JSON", file.display()))?;
    if doc.get("cubic").is_some() {
        let cert =
            LatticeCertificate::from_json(&src).with_context(|| format!("{}", file.display()))?;
        let (checks, mut error) = match verify_certificate(&cert) {
            Ok(v) => (v.checks, None),
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        let products = random_products(&cert, seed);
        if let (None, Err(e)) = (&error, &products) {
            error = Some(format!("random products: {e}"));
        }
        let ok = error.is_none();
        let mut text = format!("kind: lattice\nok: {ok}\n");
        if !checks.is_empty() {
            text.push_str(&format!("checks: {}\n", checks.join(" ")));
        }
        text.push_str(&format!(
            "random_products: {RANDOM_WORDS} words (seed {seed}) {}\n",
            if products.is_ok() { "ok" } else { "fail" }
        ));
        if let Some(e) = &error {
            text.push_str(&format!("error: {e}\n"));
        }
        let json = json!({
            "kind": "lattice",
            "ok": ok,
            "checks": checks,
            "random_products": { "words": RANDOM_WORDS, "seed": seed, "ok": products.is_ok() },
            "error": error,
        });
        return Ok(Output {
            text,
            json,
            verdict: verdict(ok),
        });
    }
    if doc.get("cases").is_some() {
        let report =
            ObstructionReport::from_json(&src).with_context(|| format!("{}", file.display()))?;
        let error = verify_report(&report).err().map(|e| e.to_string());
        let ok = error.is_none();
        let conclusion = format!("{:?}", report.conclusion).to_lowercase();
        let mut text = format!(
            "kind: obstruction\nexample: {}\nconclusion: {conclusion}\nok: {ok}\n",
            report.example
        );
        if let Some(e) = &error {
            text.push_str(&format!("error: {e}\n"));
        }
        return Ok(Output {
            text,
            json: json!({
                "kind": "obstruction",
                "example": report.example,
                "conclusion": conclusion,
                "ok": ok,
                "error": error,
            }),
            verdict: verdict(ok),
        });
    }
    bail!(
        "{} is neither a lattice certificate nor an obstruction report",
        file.display()
    )
}

pub fn list_examples() -> Output {
    let list = examples();
    Output {
        text: list.iter().map(|e| e.line() + "\n").collect(),
        json: json!({ "examples": list }),
        verdict: Verdict::Yes,
    }
}
