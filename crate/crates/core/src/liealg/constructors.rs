use num_traits::Zero;

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::exact::{int, Rational};

fn set(l: &mut LieAlgebra, a: &str, b: &str, terms: &[(Rational, &str)]) {
    l.set(a, b, terms).expect("known labels");
}

pub fn abelian(n: usize) -> LieAlgebra {
    let labels: Vec<String> = (1..=n).map(|i| format!("E{i}")).collect();
    LieAlgebra::new(&labels.iter().map(String::as_str).collect::<Vec<_>>())
        .expect("distinct labels")
}

pub fn heisenberg3() -> LieAlgebra {
    let mut l = LieAlgebra::new(&["X", "Y", "Z"]).unwrap();
    set(&mut l, "X", "Y", &[(int(1), "Z")]);
    l
}

/// Two commuting copies of the Heisenberg algebra, basis X1, Y1, Z1, X2, Y2, Z2.
pub fn n3_plus_n3() -> LieAlgebra {
    let mut l = LieAlgebra::new(&["X1", "Y1", "Z1", "X2", "Y2", "Z2"]).unwrap();
    set(&mut l, "X1", "Y1", &[(int(1), "Z1")]);
    set(&mut l, "X2", "Y2", &[(int(1), "Z2")]);
    l
}

/// Heisenberg algebra plus a central line, basis X, Y, Z, W.
pub fn kodaira_thurston() -> LieAlgebra {
    let mut l = LieAlgebra::new(&["X", "Y", "Z", "W"]).unwrap();
    set(&mut l, "X", "Y", &[(int(1), "Z")]);
    l
}

/// Free 2-step nilpotent algebra on `k ≥ 2` generators X1..Xk.
/// The central vectors `Wij = [Xi, Xj]` (i < j) are ordered by decreasing j, then decreasing i,
/// so for k = 3 the basis is X1, X2, X3, W23, W13, W12.
pub fn free2step(k: usize) -> Result<LieAlgebra> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "free2step needs at least 2 generators, got {k}"
        )));
    }
    let mut pairs = Vec::new();
    for j in (1..=k).rev() {
        for i in (1..j).rev() {
            pairs.push((i, j));
        }
    }
    let sep = if k > 9 { "_" } else { "" };
    let mut labels: Vec<String> = (1..=k).map(|i| format!("X{i}")).collect();
    labels.extend(pairs.iter().map(|(i, j)| format!("W{i}{sep}{j}")));
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut l = LieAlgebra::new(&refs)?;
    for (p, (i, j)) in pairs.iter().enumerate() {
        let mut v = vec![Rational::zero(); l.dim()];
        v[k + p] = int(1);
        l.set_bracket(i - 1, j - 1, v);
    }
    Ok(l)
}

pub fn example2() -> LieAlgebra {
    modified_family(int(-1), int(-2)).expect("nonzero weights")
}

/// The family over A, B, X1..X3, Z1..Z3 with ad A weights λ1, λ2, λ3 = −λ1−λ2 on the X's
/// and the pairwise sums on the Z's.
pub fn modified_family(l1: Rational, l2: Rational) -> Result<LieAlgebra> {
    let l3 = -(&l1 + &l2);
    if l1.is_zero() || l2.is_zero() || l3.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "weights must be nonzero: λ1 = {l1}, λ2 = {l2}, λ3 = {l3}"
        )));
    }
    let mut l = LieAlgebra::new(&["A", "B", "X1", "X2", "X3", "Z1", "Z2", "Z3"]).unwrap();
    set(&mut l, "X2", "X3", &[(int(2), "Z1")]);
    set(&mut l, "X1", "X3", &[(int(1), "Z2")]);
    set(&mut l, "X1", "X2", &[(int(-1), "Z3")]);
    set(&mut l, "A", "X1", &[(l1.clone(), "X1")]);
    set(&mut l, "A", "X2", &[(l2.clone(), "X2")]);
    set(&mut l, "A", "X3", &[(l3.clone(), "X3")]);
    set(&mut l, "A", "Z1", &[(&l2 + &l3, "Z1")]);
    set(&mut l, "A", "Z2", &[(&l1 + &l3, "Z2")]);
    set(&mut l, "A", "Z3", &[(&l1 + &l2, "Z3")]);
    Ok(l)
}

pub fn example3() -> LieAlgebra {
    let mut l = LieAlgebra::new(&["A", "B", "X1", "Y1", "Z1", "X2", "Y2", "Z2"]).unwrap();
    set(&mut l, "X1", "Y1", &[(int(1), "Z1")]);
    set(&mut l, "X2", "Y2", &[(int(1), "Z2")]);
    set(&mut l, "A", "X1", &[(int(1), "X1")]);
    set(&mut l, "A", "X2", &[(int(-1), "X2")]);
    set(&mut l, "A", "Y1", &[(int(-2), "Y1")]);
    set(&mut l, "A", "Y2", &[(int(2), "Y2")]);
    set(&mut l, "A", "Z1", &[(int(-1), "Z1")]);
    set(&mut l, "A", "Z2", &[(int(1), "Z2")]);
    l
}

pub(crate) fn is_squarefree(q: u64) -> bool {
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The rational forms of n3 ⊕ n3 on X1..X6 with center span(X5, X6).
/// For q > 0 (squarefree): [X1,X3] = X5, [X2,X4] = X5, [X1,X4] = X6, [X2,X3] = q X6.
/// For q = 0 the split form [X1,X3] = X5, [X2,X4] = X6.
pub fn g65(q: u64) -> Result<LieAlgebra> {
    if !is_squarefree(q) {
        return Err(Error::InvalidParameter(format!(
            "q = {q} is not squarefree"
        )));
    }
    let mut l = LieAlgebra::new(&["X1", "X2", "X3", "X4", "X5", "X6"]).unwrap();
    if q == 0 {
        set(&mut l, "X1", "X3", &[(int(1), "X5")]);
        set(&mut l, "X2", "X4", &[(int(1), "X6")]);
    } else {
        set(&mut l, "X1", "X3", &[(int(1), "X5")]);
        set(&mut l, "X2", "X4", &[(int(1), "X5")]);
        set(&mut l, "X1", "X4", &[(int(1), "X6")]);
        set(
            &mut l,
            "X2",
            "X3",
            &[(Rational::from_integer(q.into()), "X6")],
        );
    }
    Ok(l)
}

/// Direct sum with labels of `a` followed by those of `b`; clashing labels get a `'` suffix on the `b` side.
pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let mut labels: Vec<String> = a.labels().to_vec();
    for lab in b.labels() {
        let mut name = lab.clone();
        while labels.contains(&name) {
            name.push('\'');
        }
        labels.push(name);
    }
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut l = LieAlgebra::new(&refs).expect("distinct labels");
    let (n, m) = (a.dim(), b.dim());
    for i in 0..n {
        for j in 0..n {
            let mut v = a.bracket_basis(i, j).to_vec();
            v.resize(n + m, Rational::zero());
            l.c[i][j] = v;
        }
    }
    for i in 0..m {
        for j in 0..m {
            let mut v = vec![Rational::zero(); n];
            v.extend(b.bracket_basis(i, j).iter().cloned());
            l.c[n + i][n + j] = v;
        }
    }
    l
}
