use proptest::prelude::*;

use linkage_core::algebra::{
    parse_poly, Field, HilbertSeries, LaurentPoly, Monomial, TermOrder, Vector,
};
use linkage_core::ring::Ring;
use linkage_core::{Config, Engine, Module};

fn vars() -> Vec<String> {
    ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
}

fn s3() -> Ring {
    Ring::polynomial(Field::Rationals, &["x", "y", "z"]).unwrap()
}

fn poly_from(terms: &[([u32; 3], i64)]) -> Vector {
    let top = TermOrder::top();
    terms.iter().fold(Vector::zero(), |acc, (e, c)| {
        let t = Vector::term(
            Monomial::from_exponents(e),
            0,
            Field::Rationals.from_i64(*c),
        );
        acc.add(&t, &top)
    })
}

fn any_terms() -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    prop::collection::vec(([0u32..4, 0u32..4, 0u32..4], -9i64..10), 0..6)
}

/// 1 to 3 monomials of positive degree.
fn monomial_ideal() -> impl Strategy<Value = Vec<[u32; 3]>> {
    prop::collection::vec([0u32..3, 0u32..3, 0u32..3], 1..4)
        .prop_map(|v| {
            v.into_iter()
                .filter(|e| e.iter().sum::<u32>() > 0)
                .collect::<Vec<_>>()
        })
        .prop_filter("nonempty", |v| !v.is_empty())
}

fn cyclic(ring: &Ring, gens: &[[u32; 3]]) -> Module {
    let g: Vec<Vector> = gens.iter().map(|e| poly_from(&[(*e, 1)])).collect();
    Module::cyclic(ring, &g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn polynomials_print_and_parse_back(terms in any_terms()) {
        let p = poly_from(&terms);
        let text = p.format_poly(&vars());
        let q = parse_poly(Field::Rationals, &vars(), &text).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn reduction_is_idempotent_and_kills_the_ideal(terms in any_terms(), mult in any_terms()) {
        let s = s3();
        let r = s.quotient(&[s.poly("x*y - z^2").unwrap(), s.poly("x^2").unwrap()]).unwrap();
        let f = poly_from(&terms);
        let nf = r.reduce(&f);
        prop_assert_eq!(r.reduce(&nf), nf);
        let top = TermOrder::top();
        let in_ideal = r.poly("x*y - z^2").unwrap().mul_poly(&poly_from(&mult), &top);
        prop_assert!(r.reduce(&in_ideal).is_zero());
    }

    #[test]
    fn betti_numbers_give_the_hilbert_series(gens in monomial_ideal()) {
        let s = s3();
        let m = cyclic(&s, &gens);
        let e = Engine::new(Config::default());
        let res = e.resolution(&m, 4).unwrap();
        prop_assert!(res.complete);
        let numerator = res.betti().iter().fold(LaurentPoly::zero(), |acc, &(i, j, b)| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            acc.add(&LaurentPoly::monomial(j, sign * b as i64))
        });
        let from_betti = HilbertSeries { numerator, n: 3 };
        prop_assert_eq!(from_betti.reduced(), m.hilbert_series().unwrap().reduced());
    }

    #[test]
    fn direct_sums_add_and_twists_shift_down(a in monomial_ideal(), b in monomial_ideal(), d in -2i32..3) {
        let s = s3();
        let (ma, mb) = (cyclic(&s, &a), cyclic(&s, &b));
        let sum = ma.direct_sum(&mb).unwrap();
        let h = ma.hilbert_series().unwrap().add(&mb.hilbert_series().unwrap());
        prop_assert_eq!(sum.hilbert_series().unwrap().reduced(), h.reduced());
        let shifted = ma.twist(d).hilbert_series().unwrap();
        prop_assert_eq!(shifted.reduced(), ma.hilbert_series().unwrap().shift(-d).reduced());
    }

    #[test]
    fn minimal_presentation_is_the_same_module(a in monomial_ideal(), b in monomial_ideal()) {
        let s = s3();
        let m = cyclic(&s, &a).direct_sum(&cyclic(&s, &b)).unwrap();
        let min = m.minimal().unwrap();
        prop_assert_eq!(min.hilbert_series().unwrap(), m.hilbert_series().unwrap());
        prop_assert!(min.ngens() <= m.ngens());
        prop_assert_eq!(min.minimal().unwrap().key().unwrap(), min.key().unwrap());
    }
}
