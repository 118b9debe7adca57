use proptest::prelude::*;
use solvlat_core::exact::{int, rational_roots, Rational};
use solvlat_core::multipoly::{
    buchberger, eliminate, normal_form, resultant, MonomialOrder, MultiPoly,
};

const VARS: [&str; 3] = ["x", "m", "n"];

const REFERENCE_BASIS: [&str; 5] = [
    "-7*m^2 + m^3 - m^4 - m^5 - 13*m*n - m^2*n + 5*m^3*n - 3*m^4*n - 7*n^2 - m*n^2 + 10*m^2*n^2 + n^3 + 5*m*n^3 + m^3*n^3 - n^4 - 3*m*n^4 - n^5",
    "-28*m + 4*m^2-4*m^3-4*m^4 - 20*n - 16*m*n + 29*m^2*n - 8*m^3*n - m^4*n - 8*n^2 + 8*m*n^2 + 17*m^2*n^2-m^3*n^2-5*m*n^3+12*m^2*n^3+2*m^3*n^3+ m^4*n^3-10*n^4- 12*m*n^4 -2*m^2*n^4+3*m^3*n^4-6*n^5-12*m*n^5+ m^2*n^5-6*n^6-m^2*n^6+2*n^7+m*n^7+12*n*x+8*n^2*x+ 23*n^3*x + 9*n^4*x + 12*n^5*x+n^7*x-n^8*x",
    "-52*m+6*m^2+4*m^3-6*m^4-20*n-68*m*n+63*m^2*n - 14*m^3*n-m^4*n-52*n^2+26*m*n^2+24*m^2*n^2+3*m^3*n^2+3*m^4*n^2+16*n^3- 13*m*n^3 - 4*m^2*n^3 + 9*m^3*n^3- 18*n^4-39*m*n^4+4*m^2*n^4-20*n^5-m*n^5-3*m^2*n^5 +6*n^6+ 3*m*n^6+40*m*x+68*n*x+18*n^2*x+33*n^3*x+ 22*n^4*x+2*n^5*x+4*n^6*x-3*n^7*x",
    "-20-26*m-7*m^2-8*m^3-3*m^4-20*n+36*m*n+9*m^2*n-7*m^3*n+2*m^4*n+24*n^2+33*m*n^2-18*m^2*n^2+4*m^3*n^2- m^4*n^2 + 18*n^3- 14*m*n^3+ 8*m^2*n^3 - 3*m^3*n^3-14*n^4+8*m*n^4-3*m^2*n^4+10*n^5+2*m*n^5+m^2*n^5-2*n^6- m*n^6-20*x+4*n*x-31*n^2*x+9*n^3*x-14*n^4*x+6*n^5*x-3*n^6*x+n^7*x-20*x^2-10*n*x^2-10*n^2*x^2",
    "40 - 52*m+6*m^2+4*m^3-6*m^4-20*n-68*m*n+63*m^2*n-14*m^3*n-m^4*n-52*n^2+26*m*n^2+24*m^2*n^2 + 3*m^3*n^2 + 3*m^4*n^2 + 16*n^3 - 13*m*n^3 - 4*m^2*n^3+ 9*m^3*n^3 - 18*n^4 - 39*m*n^4 + 4*m^2*n^4 - 20*n^5 - m*n^5 - 3*m^2*n^5 + 6*n^6 + 3*m*n^6 + 68*n*x + 18*n^2*x + 33*n^3*x + 22*n^4*x + 2*n^5*x + 4*n^6*x - 3*n^7*x + 40*n*x^2-40*x^3",
];

fn p(s: &str) -> MultiPoly {
    MultiPoly::parse(s, &VARS).unwrap()
}

fn system() -> Vec<MultiPoly> {
    vec![p("x^5 - m*x^2 + x + 1"), p("x^5 + x^4 - n*x^3 + 1")]
}

#[test]
fn quintic_system_basis_shape() {
    let gb = buchberger(&system(), &MonomialOrder::lex(3)).unwrap();
    let xdeg: Vec<u32> = gb.generators().iter().map(|g| g.degree_in(0)).collect();
    assert_eq!(xdeg, vec![3, 2, 1, 1, 0]);
    for g in &system() {
        assert!(gb.contains(g));
    }
    // both linear generators lose their x-term at (m, n) = (3, 3);
    // exactly one x-coefficient is free of m, with rational roots n in {0, 3}
    let linear: Vec<&MultiPoly> = gb
        .generators()
        .iter()
        .filter(|g| g.degree_in(0) == 1)
        .collect();
    let mut m_free = 0;
    for g in linear {
        let c = &g.coefficients_in(0)[1];
        assert_eq!(c.eval(&[int(0), int(3), int(3)]), int(0));
        if c.degree_in(1) == 0 {
            m_free += 1;
            let u = c.to_unipoly(2).unwrap();
            assert_eq!(rational_roots(&u), vec![int(0), int(3)]);
        }
    }
    assert_eq!(m_free, 1);
}

#[test]
fn reference_polynomials_are_members() {
    let gb = buchberger(&system(), &MonomialOrder::lex(3)).unwrap();
    for s in REFERENCE_BASIS {
        assert!(gb.contains(&p(s)), "{s}");
    }
}

#[test]
fn elimination_and_resultant_agree() {
    let elim = eliminate(&system(), &["x"]).unwrap();
    assert_eq!(elim.len(), 1);
    let point = [int(0), int(3), int(3)];
    assert_eq!(elim[0].eval(&point), int(0));
    let r = resultant(&system()[0], &system()[1], 0).unwrap();
    assert_eq!(r.eval(&point), int(0));
    let lex = MonomialOrder::lex(3);
    assert!(normal_form(&r, &elim, &lex).is_zero());
}

#[test]
fn basis_is_idempotent_and_input_order_free() {
    let lex = MonomialOrder::lex(3);
    let gb = buchberger(&system(), &lex).unwrap();
    let again = buchberger(gb.generators(), &lex).unwrap();
    assert_eq!(gb, again);
    let mut rev = system();
    rev.reverse();
    assert_eq!(buchberger(&rev, &lex).unwrap(), gb);
}

fn small_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -3i64..4), 1..4).prop_map(|terms| {
        let v = ["x", "y", "z"];
        MultiPoly::from_terms(
            &v,
            terms
                .into_iter()
                .map(|((a, b, c), k)| (vec![a, b, c], Rational::from_integer(k.into()))),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn ideal_membership_matches_construction(
        g1 in small_poly(), g2 in small_poly(), h1 in small_poly(), h2 in small_poly(),
        grevlex in any::<bool>(),
    ) {
        prop_assume!(!g1.is_zero() && !g2.is_zero());
        let order = if grevlex { MonomialOrder::grevlex(3) } else { MonomialOrder::lex(3) };
        let gb = buchberger(&[g1.clone(), g2.clone()], &order).unwrap();
        let f = g1.mul(&h1).add(&g2.mul(&h2));
        prop_assert!(gb.contains(&f));
        let again = buchberger(gb.generators(), &order).unwrap();
        prop_assert_eq!(&again, &gb);
        let swapped = buchberger(&[g2.clone(), g1.clone()], &order).unwrap();
        prop_assert_eq!(&swapped, &gb);
        // remainder never divisible by a basis lead
        let r = normal_form(&h1, gb.generators(), &order);
        for (e, _) in r.terms() {
            for g in gb.generators() {
                let (lead, _) = g.leading_term(&order).unwrap();
                prop_assert!(!lead.iter().zip(e).all(|(a, b)| a <= b));
            }
        }
    }
}
