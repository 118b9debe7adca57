use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{to_decimal, Rational, UniPoly};

fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations(seq: &[UniPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in seq.iter().map(|q| q.sign_at(x)).filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
///
/// The squarefree part is taken first, so multiple roots count once.
pub fn sturm_count(p: &UniPoly, lo: &Rational, hi: &Rational) -> usize {
    if p.is_zero() || lo >= hi {
        return 0;
    }
    let sf = p.squarefree_part();
    if sf.degree() == Some(0) {
        return 0;
    }
    let seq = sturm_sequence(&sf);
    variations(&seq, lo) - variations(&seq, hi)
}

/// Isolating interval for one real root. `lo == hi` marks an exact rational root;
/// otherwise the root lies in the open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "crate::exact::serde_rational")]
    pub lo: Rational,
    #[serde(with = "crate::exact::serde_rational")]
    pub hi: Rational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }

    pub fn display(&self, digits: usize) -> String {
        if self.is_exact() {
            to_decimal(&self.lo, digits)
        } else {
            format!(
                "[{}, {}]",
                to_decimal(&self.lo, digits),
                to_decimal(&self.hi, digits)
            )
        }
    }
}

/// One isolating interval per distinct real root, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootIsolation {
    pub polynomial: UniPoly,
    pub intervals: Vec<RootInterval>,
}

impl RootIsolation {
    /// Narrows every non-exact interval to width at most `width`.
    pub fn refine(&mut self, width: &Rational) {
        let sf = self.polynomial.squarefree_part();
        for iv in &mut self.intervals {
            refine_interval(&sf, iv, width);
        }
    }

    /// Multiplicity of each isolated root in the original polynomial.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.intervals
            .iter()
            .map(|iv| {
                let mut mult = 1;
                let mut q = self.polynomial.gcd(&self.polynomial.derivative());
                while q.degree().unwrap_or(0) > 0 && root_in(&q, iv) {
                    mult += 1;
                    q = q.gcd(&q.derivative());
                }
                mult
            })
            .collect()
    }

    /// Roots strictly greater than zero.
    pub fn positive(&self) -> Vec<RootInterval> {
        self.intervals
            .iter()
            .filter(|iv| iv.lo.is_positive() || (iv.lo.is_zero() && !iv.is_exact()))
            .cloned()
            .collect()
    }
}

fn root_in(q: &UniPoly, iv: &RootInterval) -> bool {
    if iv.is_exact() {
        q.eval(&iv.lo).is_zero()
    } else {
        sturm_count(q, &iv.lo, &iv.hi) > 0 && !q.eval(&iv.hi).is_zero()
    }
}

fn refine_interval(sf: &UniPoly, iv: &mut RootInterval, width: &Rational) {
    while !iv.is_exact() && (&iv.width() > width || sf.eval(&iv.lo).is_zero()) {
        if sf.eval(&iv.hi).is_zero() {
            iv.lo = iv.hi.clone();
            break;
        }
        let mid = iv.midpoint();
        if sturm_count(sf, &iv.lo, &mid) == 1 {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    if !iv.is_exact() && sf.eval(&iv.hi).is_zero() {
        iv.lo = iv.hi.clone();
    }
}

/// Isolates every distinct real root of `p` by Sturm sequences and bisection,
/// refining each interval to width at most `width`. Rational endpoints only.
pub fn isolate_roots(p: &UniPoly, width: &Rational) -> RootIsolation {
    let mut intervals = Vec::new();
    if p.degree().unwrap_or(0) > 0 {
        let sf = p.squarefree_part();
        let bound = sf.cauchy_bound();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            match sturm_count(&sf, &lo, &hi) {
                0 => {}
                1 => {
                    let mut iv = RootInterval { lo, hi };
                    refine_interval(&sf, &mut iv, width);
                    intervals.push(iv);
                }
                _ => {
                    let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    }
    RootIsolation {
        polynomial: p.clone(),
        intervals,
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All rational roots, by testing `±a/b` with `a | c_0` and `b | c_n`
/// on the primitive integer form. Each reported root evaluates to exactly zero.
pub fn rational_roots(p: &UniPoly) -> Vec<Rational> {
    if p.is_zero() {
        return Vec::new();
    }
    let ints = p.to_primitive_integer();
    let shift = ints.iter().take_while(|c| c.is_zero()).count();
    let mut roots = BTreeSet::new();
    if shift > 0 {
        roots.insert(Rational::zero());
    }
    let core = &ints[shift..];
    if core.len() > 1 {
        let reduced = UniPoly::new(
            core.iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        );
        let lead = core.last().expect("nonempty");
        for a in divisors(&core[0]) {
            for b in divisors(lead) {
                if !a.gcd(&b).is_one() {
                    continue;
                }
                for cand in [
                    Rational::new(a.clone(), b.clone()),
                    -Rational::new(a.clone(), b.clone()),
                ] {
                    if reduced.eval(&cand).is_zero() {
                        roots.insert(cand);
                    }
                }
            }
        }
    }
    roots.into_iter().collect()
}
