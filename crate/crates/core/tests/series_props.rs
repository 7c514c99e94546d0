use halfint::{CycNumber, QSeries, SubstSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const PREC: i64 = 24;

fn coeff() -> impl Strategy<Value = CycNumber> {
    prop_oneof![
        (-6i64..=6).prop_map(|n| CycNumber::from_int(1, n)),
        ((-6i64..=6), (0i64..4)).prop_map(|(n, e)| CycNumber::root_of_unity(4, e).scale_int(n)),
        ((-6i64..=6), (1i64..=3)).prop_map(|(n, d)| {
            CycNumber::from_rational(3, &BigRational::new(BigInt::from(n), BigInt::from(d)))
        }),
    ]
}

fn sparse(prec: i64) -> impl Strategy<Value = QSeries> {
    prop::collection::vec((0..prec, coeff()), 0..8)
        .prop_map(move |terms| QSeries::from_terms(1, prec, 1, terms))
}

fn unit_series(prec: i64) -> impl Strategy<Value = QSeries> {
    (sparse(prec), 1i64..=4).prop_map(move |(s, c)| {
        let lead = QSeries::from_terms(1, prec, 1, [(0, CycNumber::from_int(1, c))]);
        lead.add(&s.sub(&QSeries::from_terms(1, prec, 1, [(0, s.coeff(0))])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(f in sparse(PREC), g in sparse(PREC), h in sparse(PREC)) {
        prop_assert!(f.mul(&g).mul(&h).overlap_eq(&f.mul(&g.mul(&h))));
        prop_assert!(f.mul(&g.add(&h)).overlap_eq(&f.mul(&g).add(&f.mul(&h))));
        prop_assert!(f.mul(&g).overlap_eq(&g.mul(&f)));
        prop_assert!(f.add(&g).sub(&g).overlap_eq(&f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn subst_composes(f in sparse(PREC), r1 in 1u64..4, s1 in 0i64..6, r2 in 1u64..4, s2 in 0i64..6) {
        let two_steps = f.subst(SubstSpec::new(r1, s1)).subst(SubstSpec::new(r2, s2));
        let one_step = f.subst(SubstSpec::new(r1 * r2, r2 as i64 * s1 + s2));
        prop_assert!(two_steps.identical(&one_step) || two_steps.overlap_eq(&one_step));
        prop_assert_eq!(two_steps.denom(), one_step.denom());
    }

    #[test]
    fn subst_is_multiplicative(f in sparse(PREC), g in sparse(PREC), r in 1u64..4, s in 0i64..6) {
        let spec = SubstSpec::new(r, s);
        prop_assert!(f.mul(&g).subst(spec).overlap_eq(&f.subst(spec).mul(&g.subst(spec))));
    }

    #[test]
    fn inverse_is_inverse(f in unit_series(PREC)) {
        let g = f.inv(PREC).unwrap();
        prop_assert_eq!(g.prec(), PREC);
        prop_assert!(f.mul(&g).overlap_eq(&QSeries::one(PREC)));
    }

    #[test]
    fn extraction_composes(f in sparse(60), a in 1u64..5, b in 1u64..5) {
        let lhs = f.extract_arithmetic(a * b).unwrap();
        let rhs = f.extract_arithmetic(a).unwrap().extract_arithmetic(b).unwrap();
        prop_assert!(lhs.identical(&rhs));
    }

    #[test]
    fn json_round_trip(f in sparse(PREC), r in 1u64..4, s in 0i64..6) {
        let g = f.subst(SubstSpec::new(r, s));
        let text = serde_json::to_string(&g).unwrap();
        let back: QSeries = serde_json::from_str(&text).unwrap();
        prop_assert!(back.identical(&g));
    }

    // Nothing at or beyond the precision of an input may influence an output.
    #[test]
    fn precision_is_honest(f in unit_series(PREC), g in sparse(PREC), junk in sparse(12)) {
        let beyond = junk.terms().map(|(m, c)| (m + PREC, c.clone()));
        let f2 = QSeries::from_terms(1, PREC + 12, 1, f.terms().map(|(m, c)| (m, c.clone())).chain(beyond));
        prop_assert!(f2.truncate(PREC).overlap_eq(&f) && f2.truncate(PREC).prec() == PREC);
        prop_assert!(f.mul(&g).overlap_eq(&f2.mul(&g)));
        prop_assert!(f.inv(PREC).unwrap().overlap_eq(&f2.inv(PREC + 12).unwrap()));
        prop_assert!(f.extract_arithmetic(3).unwrap().overlap_eq(&f2.extract_arithmetic(3).unwrap()));
        prop_assert!(f.subst(SubstSpec::new(2, 1)).overlap_eq(&f2.subst(SubstSpec::new(2, 1))));
        prop_assert!(f.legendre_twist(5).unwrap().overlap_eq(&f2.legendre_twist(5).unwrap()));
    }
}

#[test]
fn mul_precision_uses_valuations() {
    let f = QSeries::from_terms(1, 10, 1, [(3, CycNumber::one(1))]);
    let g = QSeries::from_terms(1, 7, 1, [(1, CycNumber::one(1))]);
    assert_eq!(f.mul(&g).prec(), 10);
}
