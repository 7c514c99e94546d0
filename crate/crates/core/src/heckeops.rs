//! Hecke operators on adjusted q-expansions.
//!
//! Each operator comes in a closed coefficient form and, where the
//! construction is a sum over subgroups of the Tate curve, a geometric form
//! that performs that sum on substituted series. The geometric forms take the
//! raw expansion `A / θ^k` and re-adjust at the end.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, is_odd_prime, is_prime, prime_factors};
use crate::cyclonum::{gauss_sum, jacobi_symbol, CycNumber};
use crate::error::{Error, Result};
use crate::qlaurent::{QSeries, SubstSpec};
use crate::thetaforms::{
    check_weight, theta_series, theta_unit, AdjustedExpansion, ThetaUnitVariant,
};

/// Dirichlet character modulo `4N` with root-of-unity values.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    modulus: u64,
    values: BTreeMap<u64, CycNumber>,
}

impl Character {
    pub fn trivial(modulus: u64) -> Result<Self> {
        Self::from_fn(modulus, |_| CycNumber::one(1))
    }

    pub fn from_fn<F: Fn(u64) -> CycNumber>(modulus: u64, f: F) -> Result<Self> {
        let values = (0..modulus)
            .filter(|a| gcd(*a as i64, modulus as i64) == 1)
            .map(|a| (a, f(a)))
            .collect();
        Self::from_values(modulus, values)
    }

    /// Checks the full multiplication table and that every value is a root of unity.
    pub fn from_values(modulus: u64, values: BTreeMap<u64, CycNumber>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidLevel(0));
        }
        let units: Vec<u64> = (0..modulus)
            .filter(|a| gcd(*a as i64, modulus as i64) == 1)
            .collect();
        if values.keys().copied().ne(units.iter().copied()) {
            return Err(Error::InvalidArgument(
                "character values must be given exactly on the units".into(),
            ));
        }
        for v in values.values() {
            if !v.is_root_of_unity() {
                return Err(Error::InvalidArgument(format!("{v} is not a root of unity")));
            }
        }
        for a in &units {
            for b in &units {
                let ab = (a * b) % modulus;
                if &values[a] * &values[b] != values[&ab] {
                    return Err(Error::InvalidArgument(format!(
                        "character is not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Character { modulus, values })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `χ(a)`, zero off the units.
    pub fn value(&self, a: i64) -> CycNumber {
        let r = a.rem_euclid(self.modulus as i64) as u64;
        self.values
            .get(&r)
            .cloned()
            .unwrap_or_else(|| CycNumber::zero(1))
    }
}

/// Level `4N`, odd weight `k`, and nebentypus for the operators.
#[derive(Clone, Debug)]
pub struct HeckeContext {
    level: u64,
    k: i64,
    chi: Character,
}

impl HeckeContext {
    pub fn new(level: u64, k: i64, chi: Character) -> Result<Self> {
        if level == 0 || level % 4 != 0 {
            return Err(Error::InvalidLevel(level));
        }
        check_weight(k)?;
        if chi.modulus() != level {
            return Err(Error::InvalidArgument(format!(
                "character modulus {} does not match level {level}",
                chi.modulus()
            )));
        }
        Ok(HeckeContext { level, k, chi })
    }

    pub fn trivial(level: u64, k: i64) -> Result<Self> {
        Self::new(level, k, Character::trivial(level)?)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    fn check_weight_of(&self, a: &AdjustedExpansion) -> Result<()> {
        if a.k != self.k {
            return Err(Error::WeightMismatch {
                expected: self.k,
                got: a.k,
            });
        }
        Ok(())
    }

    fn check_coprime_prime(&self, l: u64) -> Result<()> {
        if !is_odd_prime(l as i64) {
            return Err(Error::NotOddPrime(l as i64));
        }
        if self.level % l == 0 {
            return Err(Error::RamifiedPrime {
                p: l,
                conductor: self.level,
            });
        }
        Ok(())
    }

    fn check_dividing_prime(&self, l: u64) -> Result<()> {
        if !is_odd_prime(l as i64) {
            return Err(Error::NotOddPrime(l as i64));
        }
        if (self.level / 4) % l != 0 {
            return Err(Error::InvalidArgument(format!(
                "{l} does not divide N = {}",
                self.level / 4
            )));
        }
        Ok(())
    }

    /// `ζ^{4N/l}` for a primitive `4N`-th root of unity `ζ`.
    fn zeta_power(&self, zeta: &CycNumber, l: u64) -> Result<CycNumber> {
        let n = self.level as i64;
        if !zeta.pow(n)?.is_one() {
            return Err(Error::NotRootOfUnity(self.level));
        }
        for p in prime_factors(self.level) {
            if zeta.pow(n / p as i64)?.is_one() {
                return Err(Error::InvalidArgument(format!(
                    "{zeta} is not a primitive {n}-th root of unity"
                )));
            }
        }
        zeta.pow(n / l as i64)
    }
}

fn rational_power(l: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(l));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Raw expansion `A / θ^k` known below `q^prec`.
pub fn raw_from_adjusted(a: &AdjustedExpansion, prec: i64) -> Result<QSeries> {
    let theta_k = theta_series(prec).pow(a.k)?;
    Ok(a.series.truncate(prec).mul(&theta_k.inv(prec)?))
}

/// `b_n = a_{l²n} + χ(l)(−1/l)^{(k−1)/2} l^{(k−1)/2−1} (n/l) a_n + χ(l²) l^{k−2} a_{n/l²}`.
pub fn t_l2_closed(a: &AdjustedExpansion, ctx: &HeckeContext, l: u64) -> Result<AdjustedExpansion> {
    ctx.check_weight_of(a)?;
    ctx.check_coprime_prime(l)?;
    let f = a.series.to_integer_grid()?;
    let l2 = l * l;
    let k = ctx.k;
    let first = f.extract_arithmetic(l2)?;
    let prec = first.prec();
    let sign = jacobi_symbol(-1, l as i64)?.pow(((k - 1) / 2) as u32) as i64;
    let c1 = ctx
        .chi
        .value(l as i64)
        .scale_rational(&rational_power(l, (k - 1) / 2 - 1))
        .scale_int(sign);
    let c2 = ctx
        .chi
        .value(l2 as i64)
        .scale_rational(&rational_power(l, k - 2));
    let middle = f.legendre_twist(l as i64)?.truncate(prec).scale(&c1);
    let last = f.scale_exponents(l2).truncate(prec).scale(&c2);
    Ok(AdjustedExpansion {
        series: first.add(&middle).add(&last),
        k,
    })
}

/// `T_{l²}` as `(1/l²)` times the sum over the order-`l²` subgroups of
/// `Tate(q)` meeting `⟨ζ_{4N}⟩` trivially: `⟨ζ_{l²}⟩`, `⟨ζ_{l²}^i q_{l²}⟩`
/// and `⟨ζ_{l²}^j q_l⟩`. Needs `raw` known below `q^{prec·l²}`.
pub fn t_l2_geometric(
    raw: &QSeries,
    ctx: &HeckeContext,
    l: u64,
    prec: i64,
) -> Result<AdjustedExpansion> {
    ctx.check_coprime_prime(l)?;
    let raw = raw.to_integer_grid()?;
    let k = ctx.k;
    let l2 = l * l;
    let chi_l = ctx.chi.value(l as i64);
    let chi_l2 = ctx.chi.value(l2 as i64);
    let theta_k = theta_series(prec).pow(k)?;
    let theta_mk = theta_k.inv(prec)?;

    // ⟨ζ_{l²}⟩: quotient is Tate(q^{l²}) with level structure ζ^{l²}
    let unit = theta_unit(ThetaUnitVariant::SubgroupZeta { l }, prec)?;
    let term1 = raw
        .truncate(prec.div_euclid(l2 as i64) + 1)
        .scale_exponents(l2)
        .truncate(prec)
        .mul(&unit.pow(k)?)
        .scale(&chi_l2);

    // ⟨ζ_{l²}^i q_{l²}⟩: substitution is a ring map, so the twisted
    // product equals the twist of the product
    let big = prec * l2 as i64;
    let product = raw
        .truncate(big)
        .mul(&theta_series(big).pow(k)?)
        .truncate(big);
    let twisted = (0..l2 as i64)
        .into_par_iter()
        .map(|i| product.subst(SubstSpec::new(l2, i)))
        .reduce_with(|a, b| a.add(&b))
        .expect("l² > 0");
    let term2 = twisted.normalized().to_integer_grid()?.mul(&theta_mk);

    // ⟨ζ_{l²}^j q_l⟩: quotient is Tate(ζ_l^j q) with level structure ζ^l
    let base = raw.truncate(prec);
    let term3 = (1..l as i64)
        .into_par_iter()
        .map(|j| -> Result<QSeries> {
            let unit = theta_unit(ThetaUnitVariant::SubgroupZetaQ { l, j }, prec)?;
            Ok(base.subst(SubstSpec::twist(j, l)).mul(&unit.pow(k)?))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .reduce(|a, b| a.add(&b))
        .expect("l > 1")
        .scale(&chi_l);

    let inv_l2 = BigRational::new(BigInt::one(), BigInt::from(l2));
    let series = term1
        .add(&term2)
        .add(&term3)
        .scale_rational(&inv_l2)
        .mul(&theta_k)
        .truncate(prec);
    Ok(AdjustedExpansion { series, k })
}

/// `Σ a_n qⁿ ↦ g_l(ζ^{4N/l}) Σ a_{ln} qⁿ` for the chosen primitive `ζ`.
pub fn u_l_closed(
    a: &AdjustedExpansion,
    ctx: &HeckeContext,
    l: u64,
    zeta: &CycNumber,
) -> Result<AdjustedExpansion> {
    ctx.check_weight_of(a)?;
    ctx.check_dividing_prime(l)?;
    let g = gauss_sum(l as i64, &ctx.zeta_power(zeta, l)?)?;
    Ok(AdjustedExpansion {
        series: a.series.extract_arithmetic(l)?.scale(&g),
        k: a.k,
    })
}

/// `U_l` as `(1/l) Σ_{i<l} F(Tate(ζ_l^i q_l)) · Θ(Tate(ζ_l^i q_l))^{−k}`,
/// where `Θ = g_l(ζ^{4N/l}) θ(q) / θ(ζ_l^i q_l)` on each quotient.
/// Needs `raw` known below `q^{prec·l}`.
pub fn u_l_geometric(
    raw: &QSeries,
    ctx: &HeckeContext,
    l: u64,
    zeta: &CycNumber,
    prec: i64,
) -> Result<AdjustedExpansion> {
    ctx.check_dividing_prime(l)?;
    let raw = raw.to_integer_grid()?;
    let k = ctx.k;
    let g = gauss_sum(l as i64, &ctx.zeta_power(zeta, l)?)?;
    let big = prec * l as i64;
    let theta = theta_series(big);
    let g_theta = theta.scale(&g);
    let raw = raw.truncate(big);
    let sum = (0..l as i64)
        .into_par_iter()
        .map(|i| -> Result<QSeries> {
            let spec = SubstSpec::new(l, i);
            let unit = g_theta.mul(&theta.subst(spec).inv(big)?);
            Ok(raw.subst(spec).mul(&unit.pow(-k)?))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .reduce(|a, b| a.add(&b))
        .expect("l > 0");
    let inv_l = BigRational::new(BigInt::one(), BigInt::from(l));
    let series = sum
        .scale_rational(&inv_l)
        .normalized()
        .to_integer_grid()?
        .mul(&theta_series(prec).pow(k)?)
        .truncate(prec);
    Ok(AdjustedExpansion { series, k })
}

/// `Σ a_n qⁿ ↦ Σ a_{p²n} qⁿ`.
pub fn u_p2(a: &AdjustedExpansion, p: u64) -> Result<AdjustedExpansion> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(AdjustedExpansion {
        series: a.series.extract_arithmetic(p * p)?,
        k: a.k,
    })
}

/// Minimum p-adic valuation of the power-basis coordinates; `None` for zero.
pub fn coeff_valuation(x: &CycNumber, p: u64) -> Result<Option<i64>> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if x.conductor() % p == 0 {
        return Err(Error::RamifiedPrime {
            p,
            conductor: x.conductor(),
        });
    }
    Ok(x.coord_valuation(p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspValuation {
    pub cusp: String,
    pub min_valuation: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    pub p: u64,
    pub prec: i64,
    pub cusps: Vec<CuspValuation>,
    /// `Θ_{p²}⁻¹` without the factor `p` at `⟨ζ_{p²}⟩`.
    pub unmultiplied_min: Option<i64>,
    pub passes: bool,
}

/// Valuations of `p·Θ_{p²}⁻¹` at the cusps `⟨ζ_{p²}⟩`, `⟨ζ_{p²} q_p⟩`,
/// `⟨q_{p²}⟩`, each computed to `prec` terms on its own exponent grid.
pub fn check_unit_integrality(p: u64, prec: i64) -> Result<IntegralityReport> {
    if !is_odd_prime(p as i64) {
        return Err(Error::NotOddPrime(p as i64));
    }
    let p2 = (p * p) as i64;
    let pc = CycNumber::from_int(1, p as i64);
    let variants = [
        ("<zeta_p2>", ThetaUnitVariant::SubgroupZeta { l: p }, prec),
        ("<zeta_p2*q_p>", ThetaUnitVariant::SubgroupZetaQ { l: p, j: 1 }, prec),
        (
            "<q_p2>",
            ThetaUnitVariant::GenericM { m: p * p, t: 0 },
            (prec + p2 - 1) / p2,
        ),
    ];
    let mut cusps = Vec::new();
    let mut unmultiplied_min = None;
    for (name, v, int_prec) in variants {
        let unit = theta_unit(v, int_prec)?;
        let inv = unit.inv(unit.prec())?.truncate(prec);
        if matches!(v, ThetaUnitVariant::SubgroupZeta { .. }) {
            unmultiplied_min = inv.min_coord_valuation(p);
        }
        cusps.push(CuspValuation {
            cusp: name.to_string(),
            min_valuation: inv.scale(&pc).min_coord_valuation(p),
        });
    }
    let passes = cusps.iter().all(|c| c.min_valuation.is_none_or(|v| v >= 0));
    Ok(IntegralityReport {
        p,
        prec,
        cusps,
        unmultiplied_min,
        passes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thetaforms::adjust_expansion;
    use crate::thetaforms::FourTorsionClass;

    fn int(n: i64) -> CycNumber {
        CycNumber::from_int(1, n)
    }

    fn adj(s: QSeries, k: i64) -> AdjustedExpansion {
        AdjustedExpansion::new(s, k).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn character_checks() {
        let t = Character::trivial(12).unwrap();
        assert_eq!(t.value(5), int(1));
        assert!(t.value(3).is_zero());
        // the character mod 4 sending 3 to -1
        let chi4 = Character::from_fn(4, |a| int(if a == 1 { 1 } else { -1 })).unwrap();
        assert_eq!(chi4.value(-1), int(-1));
        let bad = Character::from_fn(5, |a| int(if a == 1 { 1 } else { -1 }));
        assert!(bad.is_err());
        let not_root = Character::from_fn(4, |a| int(if a == 1 { 1 } else { 2 }));
        assert!(not_root.is_err());
    }

    #[test]
    fn t_l2_theta_eigenvalue() {
        let ctx = HeckeContext::trivial(4, 1).unwrap();
        for l in [3u64, 5] {
            let a = adj(theta_series(100 * (l * l) as i64), 1);
            let b = t_l2_closed(&a, &ctx, l).unwrap();
            let expect = theta_series(100).scale_rational(&rat(l as i64 + 1, l as i64));
            assert_eq!(b.series.prec(), 100);
            assert!(b.series.overlap_eq(&expect));
        }
        let b = t_l2_closed(&adj(theta_series(90), 1), &ctx, 3).unwrap();
        assert_eq!(b.series.coeff(0).as_rational().unwrap(), rat(4, 3));
        assert_eq!(b.series.coeff(1).as_rational().unwrap(), rat(8, 3));
        assert_eq!(b.series.coeff(9).as_rational().unwrap(), rat(8, 3));
        assert!(b.series.coeff(2).is_zero());
    }

    #[test]
    fn t_l2_rejections() {
        let ctx = HeckeContext::trivial(12, 1).unwrap();
        let a = adj(theta_series(90), 1);
        assert!(matches!(
            t_l2_closed(&a, &ctx, 3),
            Err(Error::RamifiedPrime { .. })
        ));
        let ctx3 = HeckeContext::trivial(4, 3).unwrap();
        assert!(matches!(
            t_l2_closed(&a, &ctx3, 5),
            Err(Error::WeightMismatch { .. })
        ));
        let zero = adj(QSeries::zero(1, 90, 1), 1);
        assert!(t_l2_closed(&zero, &HeckeContext::trivial(4, 1).unwrap(), 3)
            .unwrap()
            .series
            .is_zero());
    }

    #[test]
    fn t_l2_geometric_matches_closed() {
        let prec = 20;
        for (level, k, l) in [(4u64, 1i64, 3u64), (4, 3, 3), (20, 1, 3)] {
            let ctx = HeckeContext::trivial(level, k).unwrap();
            let big = prec * (l * l) as i64;
            let a = adj(theta_series(big).pow(k).unwrap(), k);
            let raw = raw_from_adjusted(&a, big).unwrap();
            let geo = t_l2_geometric(&raw, &ctx, l, prec).unwrap();
            let closed = t_l2_closed(&a, &ctx, l).unwrap();
            assert!(geo.series.overlap_eq(&closed.series), "{level} {k} {l}");
            assert_eq!(geo.series.prec(), prec);
        }
        let ctx = HeckeContext::trivial(4, 1).unwrap();
        let zero = t_l2_geometric(&QSeries::zero(1, 200, 1), &ctx, 3, 20).unwrap();
        assert!(zero.series.is_zero());
    }

    #[test]
    fn t_l2_geometric_with_character() {
        // the character mod 4 with χ(3) = -1, so χ(l) = -1 for l = 3
        let chi = Character::from_fn(4, |a| int(if a == 1 { 1 } else { -1 })).unwrap();
        let ctx = HeckeContext::new(4, 1, chi).unwrap();
        let a = adj(theta_series(180), 1);
        let raw = raw_from_adjusted(&a, 180).unwrap();
        let geo = t_l2_geometric(&raw, &ctx, 3, 20).unwrap();
        let closed = t_l2_closed(&a, &ctx, 3).unwrap();
        assert!(geo.series.overlap_eq(&closed.series));
    }

    #[test]
    fn u_l_examples() {
        let ctx = HeckeContext::trivial(12, 1).unwrap();
        let z12 = CycNumber::root_of_unity(12, 1);
        let g = gauss_sum(3, &CycNumber::root_of_unity(3, 1)).unwrap();
        let ones = adj(QSeries::from_integers(60, &[1; 60]), 1);
        let u = u_l_closed(&ones, &ctx, 3, &z12).unwrap();
        assert!(u
            .series
            .overlap_eq(&QSeries::from_integers(20, &[1; 20]).scale(&g)));
        let no3 = adj(QSeries::from_terms(1, 30, 1, [(1, int(1)), (2, int(5))]), 1);
        assert!(u_l_closed(&no3, &ctx, 3, &z12).unwrap().series.is_zero());
        assert!(u_l_closed(&ones, &ctx, 5, &z12).is_err());
        // ζ₁₂³ = ζ₄ is not primitive
        assert!(u_l_closed(&ones, &ctx, 3, &CycNumber::root_of_unity(12, 3)).is_err());
    }

    #[test]
    fn u_l_squared_scalar() {
        let ctx = HeckeContext::trivial(12, 1).unwrap();
        let a = adj(theta_series(90), 1);
        let expect = a.series.extract_arithmetic(9).unwrap().scale(&int(-3));
        for t in [1, 5, 7, 11] {
            let z = CycNumber::root_of_unity(12, t);
            let once = u_l_closed(&a, &ctx, 3, &z).unwrap();
            let twice = u_l_closed(&once, &ctx, 3, &z).unwrap();
            assert!(twice.series.overlap_eq(&expect), "t = {t}");
        }
    }

    #[test]
    fn u_l_geometric_relation() {
        // the subgroup sum carries g^{-k}; the closed form carries g
        let prec = 30;
        for k in [1i64, 3] {
            let ctx = HeckeContext::trivial(12, k).unwrap();
            let z = CycNumber::root_of_unity(12, 1);
            let a = adj(theta_series(3 * prec).pow(k).unwrap(), k);
            let raw = raw_from_adjusted(&a, 3 * prec).unwrap();
            let geo = u_l_geometric(&raw, &ctx, 3, &z, prec).unwrap();
            let closed = u_l_closed(&a, &ctx, 3, &z).unwrap();
            let g = gauss_sum(3, &CycNumber::root_of_unity(3, 1)).unwrap();
            let factor = g.pow(k + 1).unwrap();
            assert!(geo.series.scale(&factor).overlap_eq(&closed.series), "k = {k}");
            assert_eq!(factor, int(-3).pow((k + 1) / 2).unwrap());
        }
    }

    #[test]
    fn u_p2_examples() {
        let a = adj(theta_series(900), 1);
        assert!(u_p2(&a, 3).unwrap().series.overlap_eq(&theta_series(100)));
        let ones = adj(QSeries::from_integers(90, &[1; 90]), 1);
        assert!(u_p2(&ones, 3).unwrap().series.overlap_eq(&QSeries::from_integers(10, &[1; 10])));
        let off = adj(QSeries::from_terms(1, 90, 1, [(1, int(1)), (10, int(1))]), 1);
        assert!(u_p2(&off, 3).unwrap().series.is_zero());
    }

    #[test]
    fn valuation_examples() {
        let fifth = CycNumber::from_rational(1, &rat(1, 5));
        assert_eq!(coeff_valuation(&fifth, 5).unwrap(), Some(-1));
        let x = &CycNumber::root_of_unity(3, 1) + &int(3);
        assert_eq!(coeff_valuation(&x, 5).unwrap(), Some(0));
        let y = CycNumber::root_of_unity(12, 1).scale_int(5);
        assert_eq!(coeff_valuation(&y, 5).unwrap(), Some(1));
        assert!(coeff_valuation(&CycNumber::root_of_unity(5, 1), 5).is_err());
        assert_eq!(coeff_valuation(&int(0), 5).unwrap(), None);
    }

    #[test]
    fn integrality_small() {
        let r = check_unit_integrality(3, 40).unwrap();
        assert!(r.passes, "{r:?}");
        assert_eq!(r.unmultiplied_min, Some(-1));
    }

    #[test]
    fn adjusted_raw_round_trip() {
        let a = adj(theta_series(30).pow(3).unwrap(), 3);
        let raw = raw_from_adjusted(&a, 30).unwrap();
        assert!(raw.overlap_eq(&QSeries::one(30)));
        let back = adjust_expansion(&raw, FourTorsionClass::Z4, 3).unwrap();
        assert!(back.series.overlap_eq(&a.series));
    }
}
