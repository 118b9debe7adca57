use std::collections::HashMap;

use super::MultiPoly;
use crate::error::{Error, Result};

/// Sylvester resultant of `f` and `g` with respect to variable `var`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<MultiPoly> {
    if f.vars() != g.vars() {
        return Err(Error::DimensionMismatch("variable lists differ".into()));
    }
    if var >= f.vars().len() {
        return Err(Error::InvalidParameter(format!(
            "no variable with index {var}"
        )));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidParameter(
            "resultant of a zero polynomial".into(),
        ));
    }
    let m = f.degree_in(var) as usize;
    let n = g.degree_in(var) as usize;
    if m == 0 && n == 0 {
        return Err(Error::InvalidParameter(
            "both polynomials have degree 0 in the variable".into(),
        ));
    }
    let size = m + n;
    if size > 24 {
        return Err(Error::InvalidParameter(format!(
            "Sylvester matrix of size {size} too large"
        )));
    }
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let zero = MultiPoly::zero_owned(f.vars().to_vec());
    let mut rows: Vec<Vec<MultiPoly>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for k in 0..=m {
            row[i + k] = fc[m - k].clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for k in 0..=n {
            row[i + k] = gc[n - k].clone();
        }
        rows.push(row);
    }
    Ok(det_by_subsets(&rows, &zero))
}

/// Division-free determinant: expand row by row, memoising on the set of used columns.
fn det_by_subsets(rows: &[Vec<MultiPoly>], zero: &MultiPoly) -> MultiPoly {
    let size = rows.len();
    let mut layer: HashMap<u32, MultiPoly> = HashMap::new();
    let mut one = zero.clone();
    one.add_term(vec![0; zero.vars().len()], crate::exact::int(1));
    layer.insert(0, one);
    for row in rows {
        let mut next: HashMap<u32, MultiPoly> = HashMap::new();
        for (mask, acc) in &layer {
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let above = (mask >> (c + 1)).count_ones();
                let mut term = acc.mul(entry);
                if above % 2 == 1 {
                    term = term.neg();
                }
                let slot = next.entry(mask | (1 << c)).or_insert_with(|| zero.clone());
                *slot = slot.add(&term);
            }
        }
        next.retain(|_, v| !v.is_zero());
        layer = next;
    }
    layer
        .remove(&((1u32 << size) - 1))
        .unwrap_or_else(|| zero.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn small_resultants() {
        let v = ["x", "a", "b"];
        let p = |s: &str| MultiPoly::parse(s, &v).unwrap();
        let r = resultant(&p("x - a"), &p("x - b"), 0).unwrap();
        assert!(r == p("a - b") || r == p("b - a"));
        let r = resultant(&p("x^2 - a"), &p("x - 1"), 0).unwrap();
        assert!(r == p("1 - a") || r == p("a - 1"));
        assert!(resultant(&p("a"), &p("b"), 0).is_err());
        let r = resultant(&p("x^2 + 1"), &p("x^2 - 1"), 0).unwrap();
        assert_eq!(r.eval(&[int(0), int(0), int(0)]), int(4));
    }
}
