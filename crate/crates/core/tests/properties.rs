use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dtl_sl2::dtl::{check_bridge, check_word_brackets, evaluate_expr, parse_expr, random_expr, random_word, DtlAction, DtlParams};
use dtl_sl2::lasagna::{genfrcomp_closed_form, gradings, iterate_f, VBasisElement};
use dtl_sl2::rep::{check_string_identity, TruncatedModule};
use dtl_sl2::ring::{qint, Grading, Monomial, Poly, Rational};
use dtl_sl2::sl2core::{Sl2, Sl2ActionSpec};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn e_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0i32..4, 0i32..3), rational()), 0..=6)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|((a, b), c)| (Monomial::e(a, b), c))))
}

fn laurent_monomial() -> impl Strategy<Value = Monomial> {
    (0i32..3, 0i32..3, 0i32..4, -3i32..4).prop_map(|(a, b, m, i)| Monomial([a, b, m, i]))
}

fn laurent_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((laurent_monomial(), rational()), 0..=6).prop_map(Poly::from_terms)
}

fn params() -> impl Strategy<Value = DtlParams> {
    (rational(), rational()).prop_map(|(a, b)| DtlParams::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(x in laurent_poly(), y in laurent_poly(), z in laurent_poly()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn homogeneous_products(a in 0i32..4, b in 0i32..3, c in 0i32..4, d in 0i32..3, p in rational(), q in rational()) {
        let x = &Poly::term(Monomial::e(a, b), p.clone()) + &Poly::term(Monomial::e(a + 2 * b, 0), p);
        let y = Poly::term(Monomial::e(c, d), q);
        if let (Some(dx), Some(dy)) = (x.homogeneous_degree(Grading::CANONICAL), y.homogeneous_degree(Grading::CANONICAL)) {
            let xy = &x * &y;
            prop_assert!(xy.is_zero() || xy.homogeneous_degree(Grading::CANONICAL) == Some(dx + dy));
        }
    }

    #[test]
    fn qint_products_commute(m in -8i64..=8, n in -8i64..=8) {
        prop_assert_eq!(&qint(m) * &qint(n), &qint(n) * &qint(m));
        prop_assert_eq!(qint(-m), -&qint(m));
    }

    #[test]
    fn brackets_on_lasagna_elements(x in laurent_poly()) {
        let spec = Sl2ActionSpec::lasagna();
        prop_assert!(spec.check_bracket(&[x]).unwrap().passed());
    }

    #[test]
    fn h_is_diagonal(m in laurent_monomial()) {
        let spec = Sl2ActionSpec::lasagna();
        let w = spec.weight_of(&m).unwrap();
        let x = Poly::monomial(m);
        prop_assert_eq!(spec.apply(Sl2::H, &x).unwrap(), x.scale(&Rational::from_int(w)));
        prop_assert_eq!(w, m.exp(dtl_sl2::ring::Gen::A1) as i64 - m.exp(dtl_sl2::ring::Gen::A0) as i64 - m.degree(Grading([2, 4, 0, 0])));
    }

    #[test]
    fn e_is_locally_nilpotent(x in e_poly()) {
        let spec = Sl2ActionSpec::base_ring();
        let d = x.max_abs_degree(Grading::CANONICAL);
        prop_assert!(spec.iterate(Sl2::E, &x, (d / 2 + 1) as usize).unwrap().is_zero());
    }

    #[test]
    fn lasagna_gradings_shift(m in laurent_monomial()) {
        let spec = Sl2ActionSpec::lasagna();
        let g0 = gradings(&m).unwrap();
        for (g, dq, dw) in [(Sl2::E, -2, 2), (Sl2::F, 2, -2), (Sl2::H, 0, 0)] {
            for (t, _) in spec.apply(g, &Poly::monomial(m)).unwrap().terms() {
                let g1 = gradings(t).unwrap();
                prop_assert_eq!(g1.homology, g0.homology);
                prop_assert_eq!(g1.quantum, g0.quantum + dq);
                prop_assert_eq!(g1.weight, g0.weight + dw);
            }
        }
    }

    #[test]
    fn v_expansion_is_triangular(j in 0u32..3, m in 0u32..4, n in 0u32..4) {
        let x = VBasisElement::new(j, m, n);
        let p = x.expand();
        let lead = Monomial([0, 0, m as i32, n as i32]);
        let base = VBasisElement::new(0, m, n).expand();
        prop_assert_eq!(base.coeff(&lead), Rational::one());
        let max_a0 = p.terms().iter().map(|(t, _)| t.exp(dtl_sl2::ring::Gen::A0)).max().unwrap();
        prop_assert_eq!(max_a0, n as i32);
    }

    #[test]
    fn closed_form_matches_iteration(j in 0u32..=3, m in 0u32..=3, n in 0u32..=3, r in 1u32..=6) {
        let x = VBasisElement::new(j, m, n).expand();
        prop_assert_eq!(genfrcomp_closed_form(j, m, n, r), iterate_f(&x, r as usize).unwrap());
    }

    #[test]
    fn twisted_module_brackets(top in -6i64..=6) {
        let m = TruncatedModule::twisted("t", Rational::new(-top, 2), top, 10);
        prop_assert!(m.bracket_failures().unwrap().is_empty());
        prop_assert!(check_string_identity(&m, &Poly::one(), top, 6).unwrap());
    }

    #[test]
    fn word_brackets_at_random_params(seed in any::<u64>(), p in params()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let words: Vec<_> = (0..3).map(|_| random_word(&mut rng, 3, 3)).collect();
        prop_assert!(check_word_brackets(&DtlAction::new(p), &words).unwrap().passed());
        prop_assert!(check_bridge(&words).unwrap().passed());
    }

    #[test]
    fn parser_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 4);
        let back = parse_expr(&e.to_string()).unwrap();
        prop_assert_eq!(evaluate_expr(&back).unwrap(), evaluate_expr(&e).unwrap());
    }
}
