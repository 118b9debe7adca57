//! Named algebras, addressed as `name`, `name(args)` or `name:args`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rational};
use crate::liealg::{
    abelian, example2, example3, free2step, g65, heisenberg3, kodaira_thurston, modified_family,
    n3_plus_n3, LieAlgebra,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleInfo {
    pub name: &'static str,
    pub signature: &'static str,
    pub dim: &'static str,
    pub description: &'static str,
}

impl ExampleInfo {
    pub fn line(&self) -> String {
        format!(
            "{} (dim {}): {}",
            self.signature, self.dim, self.description
        )
    }
}

const EXAMPLES: [ExampleInfo; 9] = [
    ExampleInfo {
        name: "example2",
        signature: "example2",
        dim: "8",
        description: "free 2-step nilpotent on three generators extended by A, B; weights (-1, -2, 3)",
    },
    ExampleInfo {
        name: "example3",
        signature: "example3",
        dim: "8",
        description: "n3 + n3 extended by A, B; A acts with weights (1, -2, -1, -1, 2, 1)",
    },
    ExampleInfo {
        name: "modified",
        signature: "modified(l1,l2)",
        dim: "8",
        description: "family with weights (l1, l2, -l1-l2) on the free 2-step part; example2 is modified(-1,-2)",
    },
    ExampleInfo {
        name: "g65",
        signature: "g65(q)",
        dim: "6",
        description: "rational forms of n3 + n3; q >= 0 squarefree, g65(0) splits as n3 + n3",
    },
    ExampleInfo {
        name: "n3+n3",
        signature: "n3+n3",
        dim: "6",
        description: "direct sum of two Heisenberg algebras",
    },
    ExampleInfo {
        name: "heisenberg3",
        signature: "heisenberg3",
        dim: "3",
        description: "Heisenberg algebra [X, Y] = Z",
    },
    ExampleInfo {
        name: "free2step",
        signature: "free2step(k)",
        dim: "k(k+1)/2",
        description: "free 2-step nilpotent algebra on k >= 2 generators",
    },
    ExampleInfo {
        name: "kodaira-thurston",
        signature: "kodaira-thurston",
        dim: "4",
        description: "n3 + R; symplectic but not hard Lefschetz",
    },
    ExampleInfo {
        name: "abelian",
        signature: "abelian(n)",
        dim: "n",
        description: "abelian algebra R^n",
    },
];

/// Registry entries in a fixed order.
pub fn list_examples() -> Vec<ExampleInfo> {
    EXAMPLES.to_vec()
}

fn split(spec: &str) -> Result<(&str, Vec<&str>)> {
    let spec = spec.trim();
    if let Some(open) = spec.find('(') {
        let inner = spec[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::UnknownAlgebra(spec.into()))?;
        let args = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        return Ok((spec[..open].trim(), args));
    }
    if let Some((name, rest)) = spec.split_once(':') {
        return Ok((
            name.trim(),
            rest.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect(),
        ));
    }
    Ok((spec, Vec::new()))
}

fn arity(name: &str, args: &[&str], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{name} takes {n} argument{}, got {}",
            if n == 1 { "" } else { "s" },
            args.len()
        )));
    }
    Ok(())
}

fn int_arg(name: &str, s: &str) -> Result<u64> {
    s.parse().map_err(|_| {
        Error::InvalidParameter(format!("{name}: `{s}` is not a non-negative integer"))
    })
}

fn rational_arg(s: &str) -> Result<Rational> {
    parse_rational(&s.replace('\u{2212}', "-"))
}

/// Builds a registered algebra from `name`, `name(args)` or `name:args`.
pub fn lookup(spec: &str) -> Result<LieAlgebra> {
    let (name, args) = split(spec)?;
    match name {
        "example2" => arity(name, &args, 0).map(|_| example2()),
        "example3" => arity(name, &args, 0).map(|_| example3()),
        "modified" => {
            arity(name, &args, 2)?;
            modified_family(rational_arg(args[0])?, rational_arg(args[1])?)
        }
        "g65" => {
            arity(name, &args, 1)?;
            g65(int_arg(name, args[0])?)
        }
        "n3+n3" => arity(name, &args, 0).map(|_| n3_plus_n3()),
        "heisenberg3" => arity(name, &args, 0).map(|_| heisenberg3()),
        "free2step" => {
            arity(name, &args, 1)?;
            free2step(int_arg(name, args[0])? as usize)
        }
        "kodaira-thurston" => arity(name, &args, 0).map(|_| kodaira_thurston()),
        "abelian" => {
            arity(name, &args, 1)?;
            let n = int_arg(name, args[0])? as usize;
            if n == 0 {
                return Err(Error::InvalidParameter("abelian needs n >= 1".into()));
            }
            Ok(abelian(n))
        }
        _ => Err(Error::UnknownAlgebra(spec.trim().into())),
    }
}

/// The standard symplectic form of a registered algebra, when it has one.
pub fn default_omega(spec: &str) -> Option<String> {
    let (name, args) = split(spec).ok()?;
    match name {
        "example2" | "modified" => Some("A^B + X1^Z1 + X2^Z2 + X3^Z3".into()),
        "kodaira-thurston" => Some("X^W + Y^Z".into()),
        "abelian" => {
            let n: usize = args.first()?.parse().ok()?;
            (n.is_multiple_of(2) && n > 0).then(|| {
                (0..n / 2)
                    .map(|i| format!("E{}^E{}", 2 * i + 1, 2 * i + 2))
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
        }
        _ => None,
    }
}
