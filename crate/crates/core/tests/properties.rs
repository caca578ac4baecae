//! Property tests for the exact-arithmetic substrate and the moment engine.

use levy_martingale::cumulant::CumulantSpec;
use levy_martingale::moments::MomentTable;
use levy_martingale::rational::{binomial_r, Rational};
use levy_martingale::MultiPoly;
use proptest::prelude::*;

const VARS: [&str; 2] = ["t", "x"];

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(((0u32..4, 0u32..4), rational_strategy()), 0..6).prop_map(|terms| {
        let mut p = MultiPoly::zero(&VARS);
        for ((et, ex), c) in terms {
            p.add_term(vec![et, ex], c);
        }
        p
    })
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(
        a in poly_strategy(), b in poly_strategy(), c in poly_strategy()
    ) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(
        a in poly_strategy(), b in poly_strategy(), c in poly_strategy()
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn subtraction_cancels(a in poly_strategy()) {
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_rule(a in poly_strategy(), b in poly_strategy()) {
        for var in ["t", "x"] {
            let lhs = (&a * &b).derivative(var).unwrap();
            let rhs = &(&a.derivative(var).unwrap() * &b) + &(&a * &b.derivative(var).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivative_then_eval_matches_formal_coefficients(
        p in poly_strategy(), a in rational_strategy(), b in rational_strategy()
    ) {
        // d/dt term by term from the raw coefficient map, evaluated at (a, b),
        // versus eval(derivative(p)).
        let mut expect = Rational::zero();
        for (exps, coef) in p.terms() {
            let (et, ex) = (exps[0], exps[1]);
            if et == 0 {
                continue;
            }
            let term = coef
                * &(&Rational::from_int(et as i64)
                    * &(&a.pow(et as i32 - 1).unwrap() * &b.pow(ex as i32).unwrap()));
            expect += &term;
        }
        let got = p
            .derivative("t")
            .unwrap()
            .eval_all(&[("t", a), ("x", b)])
            .unwrap();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(
        p in poly_strategy(), q in poly_strategy(),
        a in rational_strategy(), b in rational_strategy()
    ) {
        let bind = [("t", a), ("x", b)];
        let lhs = (&p * &q).eval_all(&bind).unwrap();
        let rhs = &p.eval_all(&bind).unwrap() * &q.eval_all(&bind).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn spec_strategy() -> impl Strategy<Value = CumulantSpec> {
    (
        proptest::collection::vec((-5i64..=5, 1i64..=4), 6),
        1i64..=4,
    )
        .prop_map(|(raw, c2_den)| {
            let mut c: Vec<Rational> = raw
                .into_iter()
                .map(|(n, d)| Rational::new(n, d).unwrap())
                .collect();
            c[1] = Rational::new(1, c2_den).unwrap();
            CumulantSpec::new(c).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moment_semigroup_property(
        spec in spec_strategy(),
        an in -6i64..=6, ad in 1i64..=4,
        bn in -6i64..=6, bd in 1i64..=4
    ) {
        let table = MomentTable::new(&spec, 6).unwrap();
        let a = Rational::new(an, ad).unwrap();
        let b = Rational::new(bn, bd).unwrap();
        let ab = &a + &b;
        for n in 0..=6 {
            let lhs = table.m_at(n, &ab).unwrap();
            let mut rhs = Rational::zero();
            for j in 0..=n {
                rhs += &(&(&binomial_r(n, j) * &table.m_at(j, &a).unwrap())
                    * &table.m_at(n - j, &b).unwrap());
            }
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn martingale_expectation_vanishes_for_random_specs(spec in spec_strategy()) {
        let family = levy_martingale::martingale::MartingaleFamily::new(&spec, 6).unwrap();
        for n in 1..=6 {
            prop_assert!(family.expectation_poly(n).unwrap().is_zero());
        }
    }
}
