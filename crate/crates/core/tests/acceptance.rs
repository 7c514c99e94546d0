//! Acceptance criteria, one test each. Every test writes a single
//! `PASS`/`FAIL` line to stderr (uncaptured) before asserting.

use std::io::Write;
use std::time::Instant;

use halfint::cli::{
    oracle_inputs, verify_degrees, verify_gauss, verify_oracle, verify_transform, ORACLE_TUPLES,
};
use halfint::cuspgeom::{base_change_holds, counterexample_scan};
use halfint::heckeops::{
    check_unit_integrality, raw_from_adjusted, t_l2_closed, u_l_closed, u_l_geometric, u_p2,
    HeckeContext,
};
use halfint::thetaforms::{theta_series, AdjustedExpansion};
use halfint::{CycNumber, QSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(n: u32, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "{tag} criterion {n}: {detail}");
}

#[test]
fn criterion_01_counterexample_levels() {
    let t = Instant::now();
    let k1 = counterexample_scan(1, 400).unwrap();
    let k3 = counterexample_scan(3, 400).unwrap();
    let below1 = (1..5).all(|n| base_change_holds(4 * n, 1).unwrap());
    let below3 = (1..17).all(|n| base_change_holds(4 * n, 3).unwrap());
    let secs = t.elapsed().as_secs_f64();
    let pass = k1 == Some(20) && k3 == Some(68) && below1 && below3 && secs < 60.0;
    line(
        1,
        pass,
        &format!("first failures k=1 {k1:?}, k=3 {k3:?}; lower levels hold {below1}/{below3}; {secs:.2}s"),
    );
    assert!(pass);
}

#[test]
fn criterion_02_base_change_k_at_least_5() {
    let mut bad = Vec::new();
    for k in [5, 7, 9] {
        for n in 1..=100u64 {
            if !base_change_holds(4 * n, k).unwrap() {
                bad.push((4 * n, k));
            }
        }
    }
    line(2, bad.is_empty(), &format!("failures at (4N, k): {bad:?}"));
    assert!(bad.is_empty());
}

#[test]
fn criterion_03_hecke_oracle() {
    let t = Instant::now();
    let r = verify_oracle(60).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let pass = r.ok() && r.passed == 3 * ORACLE_TUPLES.len() && secs < 120.0;
    line(
        3,
        pass,
        &format!("{} of {} comparisons exact at 60 q-powers; {secs:.2}s", r.passed, r.cases.len()),
    );
    assert!(pass);
}

#[test]
fn criterion_04_theta_eigenform() {
    let ctx = HeckeContext::trivial(4, 1).unwrap();
    let mut bad = Vec::new();
    for l in [3u64, 5, 7] {
        let a = AdjustedExpansion::new(theta_series(100 * (l * l) as i64), 1).unwrap();
        let b = t_l2_closed(&a, &ctx, l).unwrap();
        let factor = BigRational::new(BigInt::from(l + 1), BigInt::from(l));
        let expect = theta_series(100).scale_rational(&factor);
        if !(b.series.prec() == 100 && b.series.overlap_eq(&expect)) {
            bad.push(l);
        }
    }
    line(4, bad.is_empty(), &format!("T_l2 theta = (1+1/l) theta to q^100; failing l: {bad:?}"));
    assert!(bad.is_empty());
}

#[test]
fn criterion_05_gauss_identities() {
    let r = verify_gauss(97).unwrap();
    line(
        5,
        r.ok(),
        &format!("{} checks over odd primes <= 97, {} failed", r.cases.len(), r.failed),
    );
    assert!(r.ok());
}

#[test]
fn criterion_06_u_l_effect() {
    let prec = 60;
    let mut unequal = Vec::new();
    let mut relation_holds = true;
    let g = halfint::gauss_sum(3, &CycNumber::root_of_unity(3, 1)).unwrap();
    for k in [1i64, 3] {
        let ctx = HeckeContext::trivial(12, k).unwrap();
        let zeta = CycNumber::root_of_unity(12, 1);
        for (name, series) in oracle_inputs(3 * prec, 12).unwrap() {
            let a = AdjustedExpansion::new(series, k).unwrap();
            let raw = raw_from_adjusted(&a, 3 * prec).unwrap();
            let geo = u_l_geometric(&raw, &ctx, 3, &zeta, prec).unwrap();
            let closed = u_l_closed(&a, &ctx, 3, &zeta).unwrap();
            if !geo.series.overlap_eq(&closed.series) {
                unequal.push(format!("k={k} A={name}"));
            }
            let scaled = geo.series.scale(&g.pow(k + 1).unwrap());
            relation_holds &= scaled.overlap_eq(&closed.series);
        }
    }
    let ctx = HeckeContext::trivial(12, 1).unwrap();
    let a = AdjustedExpansion::new(theta_series(90).mul(&QSeries::from_integers(90, &[1, 3, 0, 2])), 1)
        .unwrap();
    let expect = a.series.extract_arithmetic(9).unwrap().scale(&CycNumber::from_int(1, -3));
    let squared_ok = [1, 5, 7, 11].iter().all(|&t| {
        let z = CycNumber::root_of_unity(12, t);
        let once = u_l_closed(&a, &ctx, 3, &z).unwrap();
        let twice = u_l_closed(&once, &ctx, 3, &z).unwrap();
        twice.series.overlap_eq(&expect)
    });
    let pass = unequal.is_empty() && squared_ok;
    line(
        6,
        pass,
        &format!(
            "closed vs subgroup sum unequal for {unequal:?}; subgroup sum times g^(k+1) equals closed: {relation_holds}; squared scalar -3 for all primitive roots: {squared_ok}"
        ),
    );
    assert!(pass);
}

fn random_rational_series(rng: &mut ChaCha8Rng, prec: i64, p: i64) -> QSeries {
    let terms = (0..12).map(|_| {
        let m = rng.gen_range(0..prec);
        let num = rng.gen_range(-50i64..=50);
        let den = p.pow(rng.gen_range(0..3));
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        (m, CycNumber::from_rational(1, &r))
    });
    QSeries::from_terms(1, prec, 1, terms)
}

#[test]
fn criterion_07_u_p2() {
    let mut fixed = true;
    for p in [3u64, 5] {
        let a = AdjustedExpansion::new(theta_series(100 * (p * p) as i64), 1).unwrap();
        let b = u_p2(&a, p).unwrap();
        fixed &= b.series.prec() == 100 && b.series.overlap_eq(&theta_series(100));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut monotone = true;
    for i in 0..20 {
        let p = if i % 2 == 0 { 3 } else { 5 };
        let s = random_rational_series(&mut rng, 400, p as i64);
        let a = AdjustedExpansion::new(s.clone(), 1).unwrap();
        let out = u_p2(&a, p).unwrap();
        let (vin, vout) = (s.min_coord_valuation(p), out.series.min_coord_valuation(p));
        monotone &= match (vin, vout) {
            (_, None) => true,
            (Some(x), Some(y)) => y >= x,
            (None, Some(_)) => false,
        };
    }
    let pass = fixed && monotone;
    line(7, pass, &format!("U_p2 theta = theta for p=3,5: {fixed}; valuation monotone on 20 series: {monotone}"));
    assert!(pass);
}

#[test]
fn criterion_08_unit_integrality() {
    let mut detail = Vec::new();
    let mut pass = true;
    for p in [5u64, 7] {
        let r = check_unit_integrality(p, 200).unwrap();
        pass &= r.passes && r.unmultiplied_min == Some(-1);
        let mins: Vec<_> = r.cusps.iter().map(|c| c.min_valuation).collect();
        detail.push(format!("p={p} minima {mins:?} unmultiplied {:?}", r.unmultiplied_min));
    }
    line(8, pass, &detail.join("; "));
    assert!(pass);
}

#[test]
fn criterion_09_degree_identities() {
    let r = verify_degrees(200).unwrap();
    line(
        9,
        r.ok(),
        &format!("{} levels 4N <= 200 checked, {} failed", r.cases.len(), r.failed),
    );
    assert!(r.ok());
}

#[test]
fn criterion_10_transformation_law() {
    let t = Instant::now();
    let r = verify_transform(400).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let pass = r.ok() && secs < 5.0;
    let worst = r.cases.last().map(|c| c.actual.clone()).unwrap_or_default();
    line(10, pass, &format!("relative error {worst}; {secs:.2}s"));
    assert!(pass);
}
