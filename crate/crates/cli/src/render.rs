use num_traits::{One, Zero};
use solvlat_core::ceh::indices;
use solvlat_core::exact::{to_display_string, IntMatrix};
use solvlat_core::Rational;

/// `2*X^Y - Z^W` over the degree-`k` monomial basis given as bit masks.
pub fn cochain(v: &[Rational], masks: &[u32], labels: &[String]) -> String {
    let mut s = String::new();
    for (c, &m) in v.iter().zip(masks) {
        if c.is_zero() {
            continue;
        }
        let mono = if m == 0 {
            "1".to_string()
        } else {
            indices(m)
                .iter()
                .map(|&i| labels[i].as_str())
                .collect::<Vec<_>>()
                .join("^")
        };
        let neg = c < &Rational::zero();
        let mag = if neg { -c } else { c.clone() };
        s.push_str(match (s.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        if mag.is_one() {
            s.push_str(&mono);
        } else if m == 0 {
            s.push_str(&to_display_string(&mag));
        } else {
            s.push_str(&format!("{}*{mono}", to_display_string(&mag)));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn matrix(m: &IntMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
