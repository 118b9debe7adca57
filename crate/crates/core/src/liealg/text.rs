//! Text format:
//!
//! ```text
//! dim 3
//! basis X Y Z
//! [X, Y] = Z
//! ```
//!
//! Bracket lines take `c*L` terms with rational `c`; omitted brackets are zero; `#` starts a comment.

use num_traits::{One, Zero};

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, to_display_string, Rational};

pub(super) fn write(l: &LieAlgebra) -> String {
    let mut out = format!("dim {}\nbasis {}\n", l.dim(), l.labels().join(" "));
    for i in 0..l.dim() {
        for j in i + 1..l.dim() {
            let v = l.bracket_basis(i, j);
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            out.push_str(&format!(
                "[{}, {}] = {}\n",
                l.labels()[i],
                l.labels()[j],
                render(v, l.labels())
            ));
        }
    }
    out
}

pub(crate) fn render(v: &[Rational], labels: &[String]) -> String {
    let mut s = String::new();
    for (c, lab) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
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
        s.push_str(lab);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

pub(super) fn read(src: &str) -> Result<LieAlgebra> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty());

    let (ln, dim_line) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty input"))?;
    let dim: usize = match dim_line.trim().strip_prefix("dim") {
        Some(rest) => rest
            .trim()
            .parse()
            .map_err(|_| Error::parse(ln, col_of(dim_line, rest.trim()), "expected a dimension"))?,
        None => {
            return Err(Error::parse(
                ln,
                col_of(dim_line, dim_line.trim()),
                "expected `dim N`",
            ))
        }
    };

    let (ln, basis_line) = lines
        .next()
        .ok_or_else(|| Error::parse(ln + 1, 1, "expected `basis ...`"))?;
    let labels: Vec<&str> = match basis_line.trim().strip_prefix("basis") {
        Some(rest) => rest.split_whitespace().collect(),
        None => {
            return Err(Error::parse(
                ln,
                col_of(basis_line, basis_line.trim()),
                "expected `basis ...`",
            ))
        }
    };
    if labels.len() != dim {
        return Err(Error::parse(
            ln,
            1,
            format!("basis lists {} labels but dim is {dim}", labels.len()),
        ));
    }
    for (k, lab) in labels.iter().enumerate() {
        if !is_ident(lab) || labels[..k].contains(lab) {
            return Err(Error::parse(
                ln,
                col_of(basis_line, lab),
                format!("bad or repeated label `{lab}`"),
            ));
        }
    }
    let mut l = LieAlgebra::new(&labels)?;
    let mut seen = vec![vec![false; dim]; dim];

    for (ln, line) in lines {
        let (i, j, v) = parse_bracket(line, ln, &l)?;
        if seen[i][j] {
            return Err(Error::parse(
                ln,
                1,
                format!("bracket [{}, {}] given twice", labels[i], labels[j]),
            ));
        }
        if i == j && v.iter().any(|x| !x.is_zero()) {
            return Err(Error::parse(ln, 1, "[L, L] must be zero"));
        }
        seen[i][j] = true;
        seen[j][i] = true;
        l.set_bracket(i, j, v);
    }
    Ok(l)
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// 1-based column of `part` inside `line` (both slices of the same string).
fn col_of(line: &str, part: &str) -> usize {
    let off = (part.as_ptr() as usize).saturating_sub(line.as_ptr() as usize);
    line[..off.min(line.len())].chars().count() + 1
}

fn parse_bracket(line: &str, ln: usize, l: &LieAlgebra) -> Result<(usize, usize, Vec<Rational>)> {
    let t = line.trim_start();
    let open = t
        .strip_prefix('[')
        .ok_or_else(|| Error::parse(ln, col_of(line, t), "expected `[`"))?;
    let close = open
        .find(']')
        .ok_or_else(|| Error::parse(ln, col_of(line, open), "expected `]`"))?;
    let inside = &open[..close];
    let mut parts = inside.split(',');
    let (a, b) = match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => (a, b),
        _ => {
            return Err(Error::parse(
                ln,
                col_of(line, inside),
                "expected two labels separated by `,`",
            ))
        }
    };
    let lookup = |s: &str| {
        let name = s.trim();
        l.index(name).map_err(|_| {
            Error::parse(
                ln,
                col_of(line, if name.is_empty() { s } else { name }),
                format!("unknown label `{name}`"),
            )
        })
    };
    let (i, j) = (lookup(a)?, lookup(b)?);
    let rest = &open[close + 1..];
    let rhs = rest
        .trim_start()
        .strip_prefix('=')
        .ok_or_else(|| Error::parse(ln, col_of(line, rest.trim_start()), "expected `=`"))?;
    let v = parse_combination(rhs, line, ln, l)?;
    Ok((i, j, v))
}

fn parse_combination(rhs: &str, line: &str, ln: usize, l: &LieAlgebra) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); l.dim()];
    let body = rhs.trim();
    if body.is_empty() {
        return Err(Error::parse(
            ln,
            col_of(line, rhs) + rhs.len(),
            "expected a linear combination",
        ));
    }
    if body == "0" {
        return Ok(v);
    }
    // split into signed terms
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut sign = true;
    let bytes = body.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        let ch = bytes[k] as char;
        if (ch == '+' || ch == '-') && !body[start..k].trim().is_empty() {
            terms.push((sign, &body[start..k]));
            sign = ch == '+';
            start = k + 1;
        } else if (ch == '+' || ch == '-') && body[start..k].trim().is_empty() {
            if ch == '-' {
                sign = !sign;
            }
            start = k + 1;
        }
        k += 1;
    }
    terms.push((sign, &body[start..]));
    for (positive, term) in terms {
        let term_t = term.trim();
        if term_t.is_empty() {
            return Err(Error::parse(ln, col_of(line, term), "empty term"));
        }
        let (coef, label) = match term_t.rfind('*') {
            Some(p) => {
                let c = term_t[..p]
                    .trim()
                    .trim_start_matches('(')
                    .trim_end_matches(')');
                let c = parse_rational(c).map_err(|_| {
                    Error::parse(ln, col_of(line, term_t), format!("bad coefficient `{c}`"))
                })?;
                (c, term_t[p + 1..].trim())
            }
            None => (Rational::one(), term_t),
        };
        let idx = l.index(label).map_err(|_| {
            Error::parse(ln, col_of(line, label), format!("unknown label `{label}`"))
        })?;
        v[idx] += if positive { coef } else { -coef };
    }
    Ok(v)
}
