use halfint::cuspgeom::{
    canonical_key, cusp_count, enumerate_cusps, gamma1_equivalent, index_gamma1, maps_to_half,
    sigma_divisor, Cusp,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn widths_sum_to_index() {
    let c4: u64 = enumerate_cusps(4).unwrap().iter().map(|c| c.width).sum();
    assert_eq!(c4, 6);
    for m in (8..=200).step_by(4) {
        let total: u64 = enumerate_cusps(m).unwrap().iter().map(|c| c.width).sum();
        assert_eq!(total, index_gamma1(m), "M = {m}");
    }
}

#[test]
fn cusp_count_formula() {
    for m in 5..=120 {
        assert_eq!(enumerate_cusps(m).unwrap().len() as u64, cusp_count(m), "M = {m}");
    }
}

#[test]
fn half_test_agrees_with_level_four_orbits() {
    for m in (4..=200).step_by(4) {
        for c in enumerate_cusps(m).unwrap() {
            let orbit = gamma1_equivalent(4, (c.a, c.c), (1, 2));
            assert_eq!(maps_to_half(&c).unwrap(), orbit, "M = {m}, cusp {c}");
        }
    }
}

fn level_image(c: &Cusp, n: u64) -> (u64, u64) {
    canonical_key(n, c.a, c.c)
}

// π*Σ_{N,k} = Σ_{M,k}: fiber sums of level-M coefficients equal deg·(base coefficient).
#[test]
fn pullback_compatibility() {
    for (n, m) in [(4u64, 20u64), (4, 68), (20, 40), (20, 60), (12, 36), (8, 56)] {
        for k in [1i64, 3] {
            let low = sigma_divisor(n, k).unwrap();
            let high = sigma_divisor(m, k).unwrap();
            let deg = BigRational::from_integer(BigInt::from(
                if n == 4 { index_gamma1(m) / 6 } else { index_gamma1(m) / index_gamma1(n) },
            ));
            for (base, coeff) in &low.coefficients {
                let fiber: BigRational = high
                    .coefficients
                    .iter()
                    .filter(|(c, _)| level_image(c, n) == base.key())
                    .map(|(_, r)| r.clone())
                    .sum();
                assert_eq!(fiber, &deg * coeff, "({n}, {m}) k={k} cusp {base}");
            }
            // nothing upstairs over a cusp not over 1/2
            for c in high.coefficients.keys() {
                assert!(low.coefficients.keys().any(|b| b.key() == level_image(c, n)));
            }
        }
    }
}

proptest! {
    #[test]
    fn sigma_linear_in_k(n in 1u64..40, j in 0i64..6) {
        let k = 2 * j + 1;
        let one = sigma_divisor(4 * n, 1).unwrap();
        let kk = sigma_divisor(4 * n, k).unwrap();
        let factor = BigRational::from_integer(BigInt::from(k));
        prop_assert_eq!(one.coefficients.len(), kk.coefficients.len());
        for (c, r) in &one.coefficients {
            prop_assert_eq!(&kk.coefficients[c], &(r * &factor));
        }
    }

    #[test]
    fn canonical_key_is_orbit_invariant(m in 5u64..60, a in -30i64..30, c in -30i64..30, j in -5i64..5, neg in any::<bool>()) {
        prop_assume!(halfint::arith::gcd(a, c) == 1);
        let s = if neg { -1 } else { 1 };
        let (a2, c2) = (s * (a + j * c), s * c);
        prop_assert_eq!(canonical_key(m, a, c), canonical_key(m, a2, c2));
    }
}
