//! Cusps of `Γ₁(M)`, the divisor `Σ_{4N,k}` and the degree inequality
//! deciding base change.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisors, euler_phi, gcd, prime_factors};
use crate::error::{Error, Result};
use crate::thetaforms::check_weight;

/// A cusp `a/c` of `Γ₁(M)`, stored by its canonical residue pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cusp {
    pub level: u64,
    /// Coprime lift of the representative; `∞` is `1/0`.
    pub a: i64,
    pub c: i64,
    pub width: u64,
    pub dgcd: u64,
}

impl Cusp {
    /// Canonical residue pair `(c mod M, a mod gcd(c, M))`.
    pub fn key(&self) -> (u64, u64) {
        canonical_key(self.level, self.a, self.c)
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c == 0 {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.a, self.c)
        }
    }
}

/// Canonical representative of the orbit of `(a, c)` under
/// `(a, c) ~ ±(a + jc, c) (mod M)`.
pub fn canonical_key(m: u64, a: i64, c: i64) -> (u64, u64) {
    let mi = m as i64;
    let cm = c.rem_euclid(mi);
    let d = gcd(cm, mi);
    let k1 = (cm as u64, a.rem_euclid(d) as u64);
    let k2 = ((-c).rem_euclid(mi) as u64, (-a).rem_euclid(d) as u64);
    k1.min(k2)
}

/// Direct orbit test: `(a', c') ≡ ±(a + jc, c) (mod M)` for some `j`.
pub fn gamma1_equivalent(m: u64, (a, c): (i64, i64), (a2, c2): (i64, i64)) -> bool {
    let mi = m as i64;
    let r = |x: i64| x.rem_euclid(mi);
    (0..mi).any(|j| {
        let (x, y) = (r(a + j * c), r(c));
        (r(a2) == x && r(c2) == y) || (r(-a2) == x && r(-c2) == y)
    })
}

fn lift(m: u64, c: u64, a: u64) -> (i64, i64) {
    let (mi, d) = (m as i64, gcd(c as i64, m as i64));
    if c == 0 {
        if a as i64 == 1 % mi {
            return (1, 0);
        }
        return (a as i64, mi);
    }
    let c = c as i64;
    let mut a = a as i64;
    while gcd(a, c) != 1 {
        a += d;
    }
    (a, c)
}

fn width(m: u64, c: u64) -> u64 {
    if m == 4 {
        match c % 4 {
            0 => 1,
            2 => 1,
            _ => 4,
        }
    } else {
        m / gcd(c as i64, m as i64) as u64
    }
}

/// Every cusp of `Γ₁(M)` exactly once, ordered by canonical key.
pub fn enumerate_cusps(m: u64) -> Result<Vec<Cusp>> {
    if m < 4 {
        return Err(Error::InvalidLevel(m));
    }
    let mut out = Vec::new();
    for c in 0..m {
        let d = gcd(c as i64, m as i64) as u64;
        for a in 0..d {
            if gcd(a as i64, d as i64) != 1 {
                continue;
            }
            if canonical_key(m, a as i64, c as i64) != (c, a) {
                continue;
            }
            let (la, lc) = lift(m, c, a);
            out.push(Cusp {
                level: m,
                a: la,
                c: lc,
                width: width(m, c),
                dgcd: d,
            });
        }
    }
    Ok(out)
}

/// Image of a level-`4N` cusp on `X₁(4)`: 0 for `∞`, 1 for `0`, 2 for `1/2`.
pub fn level4_image(c: &Cusp) -> Result<usize> {
    if c.level % 4 != 0 {
        return Err(Error::InvalidLevel(c.level));
    }
    Ok(match c.c.rem_euclid(4) {
        0 => 0,
        2 => 2,
        _ => 1,
    })
}

/// Whether the cusp lies over `1/2 ∈ X₁(4)`.
pub fn maps_to_half(c: &Cusp) -> Result<bool> {
    Ok(level4_image(c)? == 2)
}

/// Formal ℚ-combination of the cusps of `Γ₁(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QDivisor {
    pub level: u64,
    #[serde(serialize_with = "serialize_coeffs")]
    pub coefficients: BTreeMap<Cusp, BigRational>,
}

fn serialize_coeffs<S: serde::Serializer>(
    m: &BTreeMap<Cusp, BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for (c, r) in m {
        seq.serialize_element(&(c.to_string(), c.width, r.to_string()))?;
    }
    seq.end()
}

impl QDivisor {
    pub fn degree(&self) -> BigRational {
        self.coefficients.values().fold(BigRational::zero(), |a, b| a + b)
    }
}

fn check_level(four_n: u64) -> Result<()> {
    if four_n == 0 || four_n % 4 != 0 {
        Err(Error::InvalidLevel(four_n))
    } else {
        Ok(())
    }
}

fn sigma_any_weight(four_n: u64, k: i64) -> Result<QDivisor> {
    check_level(four_n)?;
    let mut coefficients = BTreeMap::new();
    for c in enumerate_cusps(four_n)? {
        if maps_to_half(&c)? {
            let r = BigRational::new(BigInt::from(k * c.width as i64), BigInt::from(4));
            coefficients.insert(c, r);
        }
    }
    Ok(QDivisor {
        level: four_n,
        coefficients,
    })
}

/// `Σ_{4N,k} = Σ_{c over 1/2} (k w_c / 4)·c`.
pub fn sigma_divisor(four_n: u64, k: i64) -> Result<QDivisor> {
    check_weight(k)?;
    sigma_any_weight(four_n, k)
}

/// Degree of the floor of a ℚ-divisor.
pub fn floor_degree(d: &QDivisor) -> i64 {
    d.coefficients
        .values()
        .map(|r| r.floor().to_integer().to_i64().expect("small coefficient"))
        .sum()
}

/// `μ̄(M) = [PSL₂(ℤ) : ±Γ₁(M)]` for `M ≥ 3`; 6 at `M = 4`.
pub fn index_gamma1(m: u64) -> u64 {
    let primes = prime_factors(m);
    let mut num = m * m;
    let mut den = 2u64;
    for p in primes {
        num = num / (p * p) * (p * p - 1);
        let g = num.gcd(&den);
        num /= g;
        den /= g;
    }
    num / den
}

/// `½ Σ_{d|M} φ(d) φ(M/d)`.
pub fn cusp_count(m: u64) -> u64 {
    divisors(m)
        .into_iter()
        .map(|d| euler_phi(d) * euler_phi(m / d))
        .sum::<u64>()
        / 2
}

/// Genus of `X₁(M)`, `M ≥ 4`.
pub fn genus_gamma1(m: u64) -> Result<i64> {
    if m < 4 {
        return Err(Error::InvalidLevel(m));
    }
    if m == 4 {
        return Ok(0);
    }
    // 12g = 12 + μ̄ − 6ε∞
    let twelve_g = 12 + index_gamma1(m) as i64 - 6 * cusp_count(m) as i64;
    debug_assert_eq!(twelve_g % 12, 0);
    Ok(twelve_g / 12)
}

/// `deg ⌊Σ_{4N,k}⌋ > 2g − 2`.
pub fn base_change_holds(four_n: u64, k: i64) -> Result<bool> {
    let floor = floor_degree(&sigma_divisor(four_n, k)?);
    Ok(floor > 2 * genus_gamma1(four_n)? - 2)
}

/// Least `4N ≤ max_level` where the inequality fails.
pub fn counterexample_scan(k: i64, max_level: u64) -> Result<Option<u64>> {
    check_weight(k)?;
    let levels: Vec<u64> = (1..=max_level / 4).map(|n| 4 * n).collect();
    let fails = levels
        .par_iter()
        .map(|&m| base_change_holds(m, k).map(|ok| (!ok).then_some(m)))
        .collect::<Result<Vec<_>>>()?;
    Ok(fails.into_iter().flatten().min())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub level: u64,
    pub genus: i64,
    pub cusps: u64,
    pub index: u64,
    /// `deg Σ_{4N,4}`.
    pub sigma4_degree: i64,
    pub total_width: u64,
    /// Ramification-weighted fiber sizes over `∞`, `0`, `1/2` of `X₁(4)`.
    pub fiber_degrees: [u64; 3],
    pub canonical_identity: bool,
    pub width_identity: bool,
    pub count_identity: bool,
    pub fiber_identity: bool,
}

impl DegreeReport {
    pub fn passes(&self) -> bool {
        self.canonical_identity && self.width_identity && self.count_identity && self.fiber_identity
    }
}

const LEVEL4_WIDTHS: [u64; 3] = [1, 4, 1];

/// Degree bookkeeping for `X₁(4N) → X₁(4)`.
pub fn degree_identities(four_n: u64) -> Result<DegreeReport> {
    check_level(four_n)?;
    let cusps = enumerate_cusps(four_n)?;
    let genus = genus_gamma1(four_n)?;
    let index = if four_n == 4 { 6 } else { index_gamma1(four_n) };
    let sigma4 = sigma_any_weight(four_n, 4)?.degree();
    let sigma4_degree = sigma4.to_integer().to_i64().expect("integral degree");
    let mut fiber_widths = [0u64; 3];
    for c in &cusps {
        fiber_widths[level4_image(c)?] += c.width;
    }
    let mut fiber_degrees = [0u64; 3];
    for i in 0..3 {
        fiber_degrees[i] = fiber_widths[i] / LEVEL4_WIDTHS[i];
    }
    let total_width: u64 = cusps.iter().map(|c| c.width).sum();
    let n_cusps = cusps.len() as u64;
    let degree = index / 6;
    Ok(DegreeReport {
        level: four_n,
        genus,
        cusps: n_cusps,
        index,
        sigma4_degree,
        total_width,
        fiber_degrees,
        canonical_identity: sigma4.is_integer() && sigma4_degree == 2 * genus - 2 + n_cusps as i64,
        width_identity: total_width == index,
        count_identity: four_n == 4 && n_cusps == 3 || n_cusps == cusp_count(four_n),
        fiber_identity: index % 6 == 0
            && (0..3).all(|i| {
                fiber_widths[i] % LEVEL4_WIDTHS[i] == 0 && fiber_degrees[i] == degree
            }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn level_four() {
        let cs = enumerate_cusps(4).unwrap();
        assert_eq!(cs.len(), 3);
        let shown: Vec<_> = cs.iter().map(|c| (c.to_string(), c.width)).collect();
        assert_eq!(
            shown,
            vec![("inf".into(), 1), ("0/1".into(), 4), ("1/2".into(), 1)]
        );
        assert_eq!(genus_gamma1(4).unwrap(), 0);
        assert!(enumerate_cusps(3).is_err());
    }

    #[test]
    fn cusp_counts() {
        assert_eq!(enumerate_cusps(20).unwrap().len(), 20);
        assert_eq!(enumerate_cusps(8).unwrap().len(), 6);
        assert_eq!(cusp_count(20), 20);
    }

    #[test]
    fn canonical_keys_match_orbits() {
        for m in [5u64, 8, 12, 20, 36] {
            let cs = enumerate_cusps(m).unwrap();
            for (i, x) in cs.iter().enumerate() {
                assert_eq!(gcd(x.a, x.c), 1);
                for y in &cs[i + 1..] {
                    assert!(!gamma1_equivalent(m, (x.a, x.c), (y.a, y.c)));
                }
            }
            for a in -5i64..5 {
                for c in 0..m as i64 {
                    if gcd(a, c) != 1 {
                        continue;
                    }
                    let key = canonical_key(m, a, c);
                    let hit: Vec<_> = cs.iter().filter(|x| x.key() == key).collect();
                    assert_eq!(hit.len(), 1);
                    assert!(gamma1_equivalent(m, (a, c), (hit[0].a, hit[0].c)));
                }
            }
        }
    }

    #[test]
    fn half_examples() {
        let cs = enumerate_cusps(4).unwrap();
        assert!(maps_to_half(&cs[2]).unwrap());
        assert!(!maps_to_half(&cs[0]).unwrap());
        let n = enumerate_cusps(20)
            .unwrap()
            .iter()
            .filter(|c| maps_to_half(c).unwrap())
            .count();
        assert_eq!(n, 4);
        let odd = enumerate_cusps(5).unwrap();
        assert!(maps_to_half(&odd[0]).is_err());
    }

    #[test]
    fn sigma_examples() {
        let s = sigma_divisor(4, 1).unwrap();
        assert_eq!(s.coefficients.values().cloned().collect::<Vec<_>>(), vec![rat(1, 4)]);
        assert_eq!(floor_degree(&s), 0);
        let s20 = sigma_divisor(20, 1).unwrap();
        let mut cs: Vec<_> = s20.coefficients.values().cloned().collect();
        cs.sort();
        assert_eq!(cs, vec![rat(1, 2), rat(1, 2), rat(5, 2), rat(5, 2)]);
        assert_eq!(floor_degree(&s20), 4);
        assert_eq!(floor_degree(&sigma_divisor(68, 3).unwrap()), 208);
        let s9 = sigma_divisor(4, 9).unwrap();
        assert_eq!(s9.degree(), rat(9, 4));
        assert!(sigma_divisor(4, 2).is_err());
        assert!(sigma_divisor(6, 1).is_err());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_gamma1(20).unwrap(), 3);
        assert_eq!(genus_gamma1(68).unwrap(), 105);
        assert_eq!(index_gamma1(20), 144);
        assert_eq!(index_gamma1(68), 1728);
    }

    #[test]
    fn base_change_examples() {
        assert!(!base_change_holds(20, 1).unwrap());
        assert!(!base_change_holds(68, 3).unwrap());
        assert!(base_change_holds(4, 1).unwrap());
        assert_eq!(counterexample_scan(1, 100).unwrap(), Some(20));
        assert_eq!(counterexample_scan(5, 100).unwrap(), None);
    }

    #[test]
    fn degree_examples() {
        let r4 = degree_identities(4).unwrap();
        assert_eq!(r4.sigma4_degree, 1);
        assert!(r4.passes(), "{r4:?}");
        let r20 = degree_identities(20).unwrap();
        assert_eq!(r20.sigma4_degree, 24);
        assert_eq!(r20.fiber_degrees, [24, 24, 24]);
        assert!(r20.passes(), "{r20:?}");
    }
}
