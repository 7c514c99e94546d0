//! Exact arithmetic in cyclotomic fields `Q(ζ_L)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(L)-1}` as an
//! integer numerator vector over a single positive denominator. The power
//! basis is an integral basis of `Z[ζ_L]`, so coordinate-wise p-adic
//! valuations detect p-integrality exactly.
//!
//! Binary operations on numbers of different conductors embed both
//! operands into the lcm first, using `ζ_M = ζ_L^{L/M}` for `M | L`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{euler_phi, gcd, gcd_u, is_odd_prime, lcm_u, modp};
use crate::error::{Error, Result};

/// Precomputed data for one conductor.
struct FieldTable {
    phi: usize,
    /// `powers[e]` is ζ^e in the power basis, as sparse (index, coeff) pairs.
    powers: Vec<Vec<(usize, i64)>>,
}

fn table(conductor: u64) -> Arc<FieldTable> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&conductor) {
        return t.clone();
    }
    let cyclo = cyclotomic_polynomial(conductor);
    let phi = cyclo.len() - 1;
    let l = conductor as usize;
    let mut powers = Vec::with_capacity(l);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..l {
        powers.push(
            cur.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (i, *c))
                .collect(),
        );
        // multiply by x and reduce with the monic Φ_L
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (i, c) in cur.iter_mut().enumerate() {
                *c -= top * cyclo[i];
            }
        }
    }
    let t = Arc::new(FieldTable { phi, powers });
    cache.lock().unwrap().insert(conductor, t.clone());
    t
}

/// The L-th cyclotomic polynomial Φ_L as integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(l: u64) -> Vec<i64> {
    assert!(l >= 1, "cyclotomic polynomial needs L >= 1");
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&l) {
        return p.clone();
    }
    // x^L - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i64; l as usize + 1];
    poly[0] = -1;
    poly[l as usize] = 1;
    for d in crate::arith::divisors(l) {
        if d == l {
            continue;
        }
        poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
    }
    debug_assert_eq!(poly.len() as u64 - 1, euler_phi(l));
    cache.lock().unwrap().insert(l, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = num.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0), "non-exact cyclotomic division");
    quot
}

/// An element of the cyclotomic field `Q(ζ_L)`.
#[derive(Clone, Debug)]
pub struct CycNumber {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Quadratic Gauss sums are ordinary cyclotomic numbers.
pub type GaussSum = CycNumber;

impl CycNumber {
    pub fn zero(conductor: u64) -> Self {
        assert!(conductor >= 1);
        let phi = table(conductor).phi;
        CycNumber {
            conductor,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_int(conductor, 1)
    }

    pub fn from_int(conductor: u64, n: i64) -> Self {
        Self::from_bigint(conductor, BigInt::from(n))
    }

    pub fn from_bigint(conductor: u64, n: BigInt) -> Self {
        let mut z = Self::zero(conductor);
        z.num[0] = n;
        z
    }

    pub fn from_rational(conductor: u64, r: &BigRational) -> Self {
        let mut z = Self::zero(conductor);
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        z.normalize();
        z
    }

    /// `ζ_order^exp`, living in conductor `order`.
    pub fn root_of_unity(order: u64, exp: i64) -> Self {
        assert!(order >= 1);
        let t = table(order);
        let e = modp(exp, order as i64) as usize;
        let mut z = Self::zero(order);
        for &(i, c) in &t.powers[e] {
            z.num[i] = BigInt::from(c);
        }
        z
    }

    /// Build from power-basis coordinates; `coords.len()` must equal φ(L).
    pub fn from_coords(conductor: u64, coords: &[BigRational]) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        let phi = table(conductor).phi;
        if coords.len() != phi {
            return Err(Error::InvalidArgument(format!(
                "conductor {conductor} needs {phi} coordinates, got {}",
                coords.len()
            )));
        }
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut z = CycNumber { conductor, num, den };
        z.normalize();
        Ok(z)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, when it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for n in &mut self.num {
                *n = -&*n;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for n in &mut self.num {
                *n = &*n / &g;
            }
            self.den = &self.den / &g;
        }
    }

    /// Re-express in `Q(ζ_M)`; requires `L | M`.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if target == 0 || target % self.conductor != 0 {
            return Err(Error::InvalidArgument(format!(
                "cannot embed conductor {} into {}",
                self.conductor, target
            )));
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let t = table(target);
        let mut out = vec![BigInt::zero(); t.phi];
        for (i, n) in self.num.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            for &(j, c) in &t.powers[(i * step) % target as usize] {
                out[j] += n * c;
            }
        }
        Ok(CycNumber {
            conductor: target,
            num: out,
            den: self.den.clone(),
        })
    }

    fn embed_unchecked(&self, target: u64) -> Self {
        self.embed(target).expect("conductor divides lcm")
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let l = lcm_u(a.conductor, b.conductor);
        (a.embed_unchecked(l), b.embed_unchecked(l))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = Self::aligned(self, other);
            return a.add_impl(&b, negate);
        }
        let sign = |n: &BigInt| if negate { -n } else { n.clone() };
        let mut out = if self.den == other.den {
            CycNumber {
                conductor: self.conductor,
                num: self
                    .num
                    .iter()
                    .zip(&other.num)
                    .map(|(a, b)| a + sign(b))
                    .collect(),
                den: self.den.clone(),
            }
        } else {
            let den = self.den.lcm(&other.den);
            let fa = &den / &self.den;
            let fb = &den / &other.den;
            CycNumber {
                conductor: self.conductor,
                num: self
                    .num
                    .iter()
                    .zip(&other.num)
                    .map(|(a, b)| a * &fa + sign(b) * &fb)
                    .collect(),
                den,
            }
        };
        out.normalize();
        out
    }

    /// Product of two numerator vectors of the same conductor, reduced mod Φ_L.
    fn mul_num(conductor: u64, a: &[BigInt], b: &[BigInt], out: &mut [BigInt]) {
        let t = table(conductor);
        let phi = t.phi;
        let l = conductor as usize;
        let nz_b: Vec<(usize, &BigInt)> = b
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .collect();
        if nz_b.is_empty() {
            return;
        }
        let mut buf: Vec<BigInt> = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &nz_b {
                buf[i + j] += x * y;
            }
        }
        for (e, c) in buf.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < phi {
                out[e] += c;
            } else {
                for &(j, k) in &t.powers[e % l] {
                    out[j] += &c * k;
                }
            }
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = Self::aligned(self, other);
            return a.mul_ref(&b);
        }
        let mut num = vec![BigInt::zero(); self.num.len()];
        Self::mul_num(self.conductor, &self.num, &other.num, &mut num);
        let mut out = CycNumber {
            conductor: self.conductor,
            num,
            den: &self.den * &other.den,
        };
        out.normalize();
        out
    }

    /// `self += a * b`, all three sharing one conductor.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        if a.conductor != self.conductor || b.conductor != self.conductor {
            let p = a.mul_ref(b);
            *self = &*self + &p;
            return;
        }
        if self.den.is_one() && a.den.is_one() && b.den.is_one() {
            let mut num = std::mem::take(&mut self.num);
            Self::mul_num(self.conductor, &a.num, &b.num, &mut num);
            self.num = num;
        } else {
            let p = a.mul_ref(b);
            *self = self.add_impl(&p, false);
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        let mut out = CycNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|n| n * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        out.normalize();
        out
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale_rational(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Multiplicative inverse via the product of the non-trivial Galois conjugates.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let l = self.conductor;
        let mut conj = CycNumber::one(l);
        for t in 2..l.max(2) {
            if gcd_u(t, l) == 1 {
                conj = conj.mul_ref(&self.galois_apply(t as i64)?);
            }
        }
        let norm = self
            .mul_ref(&conj)
            .as_rational()
            .expect("field norm is rational");
        Ok(conj.scale_rational(&norm.recip()))
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Integer power; negative exponents go through [`CycNumber::inv`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNumber::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(acc)
    }

    /// The automorphism ζ_L ↦ ζ_L^t.
    pub fn galois_apply(&self, t: i64) -> Result<Self> {
        let l = self.conductor;
        if gcd(t, l as i64) != 1 {
            return Err(Error::NotCoprime { t, conductor: l });
        }
        let tab = table(l);
        let tm = modp(t, l as i64) as usize;
        let mut num = vec![BigInt::zero(); tab.phi];
        for (i, n) in self.num.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            for &(j, c) in &tab.powers[(i * tm) % l as usize] {
                num[j] += n * c;
            }
        }
        Ok(CycNumber {
            conductor: l,
            num,
            den: self.den.clone(),
        })
    }

    /// True when some power of the value equals 1.
    pub fn is_root_of_unity(&self) -> bool {
        let order = lcm_u(2, self.conductor) as i64;
        !self.is_zero() && self.pow(order).map(|p| p.is_one()).unwrap_or(false)
    }

    /// Minimum p-adic valuation over power-basis coordinates; `None` for zero.
    pub fn coord_valuation(&self, p: u64) -> Option<i64> {
        let p = BigInt::from(p);
        let v = |n: &BigInt| {
            let mut n = n.clone();
            let mut k = 0i64;
            while !n.is_zero() && (&n % &p).is_zero() {
                n /= &p;
                k += 1;
            }
            k
        };
        let min_num = self.num.iter().filter(|n| !n.is_zero()).map(v).min()?;
        Some(min_num - v(&self.den))
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = Self::aligned(self, other);
            a == b
        }
    }
}

impl Eq for CycNumber {}

impl std::ops::Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        self.add_impl(rhs, false)
    }
}

impl std::ops::Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self.add_impl(rhs, true)
    }
}

impl std::ops::Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        self.mul_ref(rhs)
    }
}

impl std::ops::Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

impl std::ops::Add for CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: CycNumber) -> CycNumber {
        &self + &rhs
    }
}

impl std::ops::Sub for CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: CycNumber) -> CycNumber {
        &self - &rhs
    }
}

impl std::ops::Mul for CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: CycNumber) -> CycNumber {
        &self * &rhs
    }
}

impl std::ops::Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        write!(f, "(")?;
        for (i, n) in self.num.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let c = BigRational::new(n.clone(), self.den.clone());
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z{}", self.conductor)?,
                (1, false) => write!(f, "{mag}*z{}", self.conductor)?,
                (_, true) => write!(f, "z{}^{i}", self.conductor)?,
                (_, false) => write!(f, "{mag}*z{}^{i}", self.conductor)?,
            }
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    conductor: u64,
    coords: Vec<String>,
}

pub(crate) fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational '{s}'")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycJson {
            conductor: self.conductor,
            coords: self.coords().iter().map(rational_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CycJson::deserialize(d)?;
        let coords = j
            .coords
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        CycNumber::from_coords(j.conductor, &coords).map_err(serde::de::Error::custom)
    }
}

/// Jacobi symbol `(c/d)` for odd `d`, extended to negative `d` by
/// `(c/d) = (c/|d|)`, with an extra sign when both `c` and `d` are negative.
/// `(0/±1) = 1`.
pub fn jacobi_symbol(c: i64, d: i64) -> Result<i32> {
    if d % 2 == 0 {
        return Err(Error::EvenModulus(d));
    }
    let base = jacobi_positive(c, d.unsigned_abs());
    Ok(if c < 0 && d < 0 { -base } else { base })
}

fn jacobi_positive(c: i64, n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    let mut a = modp(c, n as i64) as u64;
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// `ε_d`: 1 when d ≡ 1 (mod 4), ζ₄ when d ≡ 3 (mod 4).
pub fn epsilon_d(d: i64) -> Result<CycNumber> {
    if d % 2 == 0 {
        return Err(Error::EvenModulus(d));
    }
    Ok(if modp(d, 4) == 1 {
        CycNumber::one(4)
    } else {
        CycNumber::root_of_unity(4, 1)
    })
}

/// Quadratic Gauss sum `Σ_{a=1}^{l-1} (a/l) z^a` for an l-th root of unity `z`.
pub fn gauss_sum(l: i64, z: &CycNumber) -> Result<GaussSum> {
    if !is_odd_prime(l) {
        return Err(Error::NotOddPrime(l));
    }
    if !z.pow(l)?.is_one() {
        return Err(Error::NotRootOfUnity(l as u64));
    }
    let mut acc = CycNumber::zero(z.conductor());
    let mut power = z.clone();
    for a in 1..l {
        match jacobi_symbol(a, l)? {
            1 => acc = &acc + &power,
            -1 => acc = &acc - &power,
            _ => {}
        }
        power = power.mul_ref(z);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(order: u64, e: i64) -> CycNumber {
        CycNumber::root_of_unity(order, e)
    }

    /// Euler's criterion for an odd prime p.
    fn legendre_euler(a: i64, p: i64) -> i32 {
        let a = modp(a, p);
        if a == 0 {
            return 0;
        }
        let mut r = 1i64;
        for _ in 0..(p - 1) / 2 {
            r = r * a % p;
        }
        if r == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(25).len(), 21);
    }

    #[test]
    fn field_examples() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycNumber::from_int(4, -1));
        let a = &CycNumber::one(3) + &z(3, 1);
        assert!((&a * &a.inv().unwrap()).is_one());
        let d = &z(3, 1) - &z(3, 2);
        assert_eq!(&d * &d, CycNumber::from_int(3, -3));
        assert_eq!(CycNumber::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_conductors() {
        // ζ₄ · ζ₃ = ζ₁₂^{3+4}
        assert_eq!(&z(4, 1) * &z(3, 1), z(12, 7));
        assert_eq!(z(3, 1), z(12, 4));
        assert_ne!(z(3, 1), z(12, 8));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(z(4, 1).galois_apply(3).unwrap(), -&z(4, 1));
        let g = gauss_sum(3, &z(3, 1)).unwrap();
        assert_eq!(g.galois_apply(2).unwrap(), -&g);
        let a = &z(12, 5) + &CycNumber::from_int(12, 7);
        assert_eq!(a.galois_apply(1).unwrap(), a);
        assert!(matches!(a.galois_apply(2), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_symbol(2, 15).unwrap(), 1);
        assert_eq!(legendre_euler(2, 3) * legendre_euler(2, 5), 1);
        assert_eq!(jacobi_symbol(1, 1).unwrap(), 1);
        assert_eq!(jacobi_symbol(2, 3).unwrap(), -1);
        assert_eq!(jacobi_symbol(0, 1).unwrap(), 1);
        assert_eq!(jacobi_symbol(0, -1).unwrap(), 1);
        assert_eq!(jacobi_symbol(0, 3).unwrap(), 0);
        assert_eq!(jacobi_symbol(3, 4), Err(Error::EvenModulus(4)));
        // negative modulus conventions
        assert_eq!(jacobi_symbol(2, -3).unwrap(), -1);
        assert_eq!(jacobi_symbol(-1, -3).unwrap(), 1);
        assert_eq!(jacobi_symbol(-1, 3).unwrap(), -1);
    }

    #[test]
    fn jacobi_matches_euler_for_primes() {
        for p in crate::arith::odd_primes_up_to(97) {
            for a in -60..60 {
                assert_eq!(jacobi_symbol(a, p as i64).unwrap(), legendre_euler(a, p as i64));
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        assert!(epsilon_d(1).unwrap().is_one());
        assert_eq!(epsilon_d(3).unwrap(), z(4, 1));
        assert!(epsilon_d(-3).unwrap().is_one());
        assert!(epsilon_d(2).is_err());
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_sum(3, &z(3, 1)).unwrap(), &z(3, 1) - &z(3, 2));
        assert!(gauss_sum(3, &CycNumber::one(3)).unwrap().is_zero());
        let g5 = gauss_sum(5, &z(5, 1)).unwrap();
        assert_eq!(&g5 * &g5, CycNumber::from_int(5, 5));
        assert!(matches!(gauss_sum(3, &z(4, 1)), Err(Error::NotRootOfUnity(3))));
        assert!(matches!(gauss_sum(9, &z(9, 1)), Err(Error::NotOddPrime(9))));
    }

    #[test]
    fn inverse_in_larger_fields() {
        let a = &(&z(25, 3) + &CycNumber::from_int(25, 2)) - &z(25, 17).scale_int(5);
        assert!((&a * &a.inv().unwrap()).is_one());
        let r = BigRational::new(BigInt::from(3), BigInt::from(7));
        let b = CycNumber::from_rational(49, &r);
        assert_eq!(b.inv().unwrap(), CycNumber::from_rational(49, &r.recip()));
    }

    #[test]
    fn valuations() {
        let fifth = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert_eq!(CycNumber::from_rational(1, &fifth).coord_valuation(5), Some(-1));
        assert_eq!((&z(3, 1) + &CycNumber::from_int(3, 3)).coord_valuation(5), Some(0));
        assert_eq!(z(12, 1).scale_int(5).coord_valuation(5), Some(1));
        assert_eq!(CycNumber::zero(7).coord_valuation(5), None);
    }

    #[test]
    fn json_shape() {
        let a = &z(12, 1).scale_rational(&BigRational::new(3.into(), 2.into()))
            + &CycNumber::from_int(12, -1);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"conductor":12,"coords":["-1","3/2","0","0"]}"#);
        let back: CycNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<CycNumber>(r#"{"conductor":12,"coords":["1"]}"#).is_err());
    }
}
