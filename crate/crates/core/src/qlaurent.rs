//! Sparse Laurent series in `q^{1/D}` with cyclotomic coefficients.
//!
//! A [`QSeries`] stores integer numerators `m` for exponents `m/D` and a
//! precision `P` on the same grid: every coefficient with `m < P` is known,
//! nothing at or beyond `P` is. Operations never claim coefficients their
//! inputs cannot determine.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{is_odd_prime, lcm_u};
use crate::cyclonum::{jacobi_symbol, CycNumber};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QSeries {
    denom: u64,
    prec: i64,
    conductor: u64,
    terms: BTreeMap<i64, CycNumber>,
}

/// Substitution `q^{m/D} ↦ ζ_T^{s·m} q^{m/(rD)}`.
///
/// `order` is the twist root order `T`; `None` means the new grid `rD`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubstSpec {
    pub scale: u64,
    pub twist: i64,
    pub order: Option<u64>,
}

impl SubstSpec {
    pub fn new(scale: u64, twist: i64) -> Self {
        SubstSpec {
            scale,
            twist,
            order: None,
        }
    }

    /// Pure twist `q^{m/D} ↦ ζ_order^{s·m} q^{m/D}`.
    pub fn twist(twist: i64, order: u64) -> Self {
        SubstSpec {
            scale: 1,
            twist,
            order: Some(order),
        }
    }
}

impl QSeries {
    /// The zero series known below `prec`.
    pub fn zero(denom: u64, prec: i64, conductor: u64) -> Self {
        assert!(denom >= 1 && conductor >= 1);
        QSeries {
            denom,
            prec,
            conductor,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(prec: i64) -> Self {
        Self::from_terms(1, prec, 1, [(0, CycNumber::one(1))])
    }

    /// Build from `(numerator, coefficient)` pairs; zero coefficients and
    /// keys at or beyond `prec` are dropped, and the conductor grows to
    /// cover every coefficient.
    pub fn from_terms<I>(denom: u64, prec: i64, conductor: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, CycNumber)>,
    {
        let terms: Vec<(i64, CycNumber)> = terms.into_iter().collect();
        let conductor = terms
            .iter()
            .fold(conductor, |acc, (_, c)| lcm_u(acc, c.conductor()));
        let mut out = Self::zero(denom, prec, conductor);
        for (m, c) in terms {
            if m >= prec || c.is_zero() {
                continue;
            }
            let c = c.embed(conductor).expect("conductor is an lcm");
            match out.terms.get_mut(&m) {
                Some(existing) => {
                    let sum = &*existing + &c;
                    if sum.is_zero() {
                        out.terms.remove(&m);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    out.terms.insert(m, c);
                }
            }
        }
        out
    }

    /// Integer-exponent series with integer coefficients `coeffs[n]` at `q^n`.
    pub fn from_integers(prec: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            1,
            prec,
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| (n as i64, CycNumber::from_int(1, c))),
        )
    }

    pub fn monomial(denom: u64, m: i64, coeff: CycNumber, prec: i64) -> Self {
        let l = coeff.conductor();
        Self::from_terms(denom, prec, l, [(m, coeff)])
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycNumber)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least stored numerator, if any.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    fn valuation_or_prec(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    /// Coefficient at numerator `m` on this series' grid.
    pub fn coeff(&self, m: i64) -> CycNumber {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(|| CycNumber::zero(self.conductor))
    }

    /// Coefficient at the rational exponent `e`.
    pub fn coefficient_at(&self, e: &BigRational) -> Result<CycNumber> {
        let scaled = e * BigRational::from_integer(BigInt::from(self.denom));
        let prec = BigRational::from_integer(BigInt::from(self.prec));
        if scaled >= prec {
            return Err(Error::BeyondPrecision {
                exponent: e.to_string(),
                prec: BigRational::new(BigInt::from(self.prec), BigInt::from(self.denom))
                    .to_string(),
            });
        }
        if !scaled.is_integer() {
            return Ok(CycNumber::zero(self.conductor));
        }
        let m: i64 = scaled
            .to_integer()
            .try_into()
            .map_err(|_| Error::InvalidArgument("exponent out of range".into()))?;
        Ok(self.coeff(m))
    }

    /// Precision expressed as a rational exponent `P/D`.
    pub fn prec_exponent(&self) -> BigRational {
        BigRational::new(BigInt::from(self.prec), BigInt::from(self.denom))
    }

    /// Lower the precision to `prec` (numerator units), dropping terms.
    pub fn truncate(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        QSeries {
            denom: self.denom,
            prec,
            conductor: self.conductor,
            terms: self.terms.range(..prec).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Re-express on the finer grid `new_denom` (a multiple of the current one).
    pub fn with_denom(&self, new_denom: u64) -> Result<Self> {
        if new_denom % self.denom != 0 {
            return Err(Error::InvalidArgument(format!(
                "grid {} does not refine grid {}",
                new_denom, self.denom
            )));
        }
        let f = (new_denom / self.denom) as i64;
        Ok(QSeries {
            denom: new_denom,
            prec: self.prec * f,
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, c)| (m * f, c.clone())).collect(),
        })
    }

    /// Re-express coefficients in conductor `target` (a multiple of the current one).
    pub fn with_conductor(&self, target: u64) -> Result<Self> {
        if target == self.conductor {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((*m, c.embed(target)?)))
            .collect::<Result<_>>()?;
        Ok(QSeries {
            denom: self.denom,
            prec: self.prec,
            conductor: target,
            terms,
        })
    }

    /// Coarsest grid carrying the same information.
    pub fn normalized(&self) -> Self {
        let mut g = self.denom as i64;
        for m in self.terms.keys() {
            g = g.gcd(m);
            if g == 1 {
                return self.clone();
            }
        }
        if g <= 1 {
            return self.clone();
        }
        QSeries {
            denom: self.denom / g as u64,
            prec: ceil_div(self.prec, g),
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, c)| (m / g, c.clone())).collect(),
        }
    }

    /// Same series on the integer grid `D = 1`; fails on fractional support.
    pub fn to_integer_grid(&self) -> Result<Self> {
        if self.denom == 1 {
            return Ok(self.clone());
        }
        let d = self.denom as i64;
        if self.terms.keys().any(|m| m % d != 0) {
            return Err(Error::FractionalSupport);
        }
        Ok(QSeries {
            denom: 1,
            prec: ceil_div(self.prec, d),
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, c)| (m / d, c.clone())).collect(),
        })
    }

    fn align(a: &Self, b: &Self) -> (Self, Self) {
        let d = lcm_u(a.denom, b.denom);
        let l = lcm_u(a.conductor, b.conductor);
        let fix = |s: &Self| {
            s.with_denom(d)
                .and_then(|s| s.with_conductor(l))
                .expect("lcm refines both")
        };
        (fix(a), fix(b))
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let (mut a, b) = Self::align(self, other);
        let prec = a.prec.min(b.prec);
        a.terms.retain(|m, _| *m < prec);
        a.prec = prec;
        for (m, c) in b.terms.range(..prec) {
            let c = if negate { -c } else { c.clone() };
            match a.terms.get_mut(m) {
                Some(existing) => {
                    let sum = &*existing + &c;
                    if sum.is_zero() {
                        a.terms.remove(m);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    a.terms.insert(*m, c);
                }
            }
        }
        a
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        QSeries {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        let l = lcm_u(self.conductor, c.conductor());
        let c = c.embed(l).expect("lcm");
        let base = self.with_conductor(l).expect("lcm");
        QSeries {
            terms: base
                .terms
                .iter()
                .map(|(m, x)| (*m, x * &c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
            ..base
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        QSeries {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, x.scale_rational(r)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
            ..self.clone()
        }
    }

    /// Cauchy product with precision `min(P_f + v_g, P_g + v_f)`.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::align(self, other);
        let (va, vb) = (a.valuation_or_prec(), b.valuation_or_prec());
        let prec = (a.prec + vb).min(b.prec + va);
        let l = a.conductor;
        let mut out = Self::zero(a.denom, prec, l);
        if a.is_zero() || b.is_zero() || va + vb >= prec {
            return out;
        }
        let (dense, sparse) = if a.terms.len() >= b.terms.len() {
            (&a, &b)
        } else {
            (&b, &a)
        };
        let vd = dense.valuation_or_prec();
        let mut index: Vec<Option<&CycNumber>> = vec![None; (prec - vd).max(0) as usize];
        for (m, c) in dense.terms.range(..prec) {
            index[(m - vd) as usize] = Some(c);
        }
        let sparse_terms: Vec<(i64, &CycNumber)> = sparse.terms().collect();
        let lo = va + vb;
        let coeffs: Vec<(i64, CycNumber)> = (lo..prec)
            .into_par_iter()
            .filter_map(|k| {
                let mut acc = CycNumber::zero(l);
                for &(ks, cs) in &sparse_terms {
                    let kd = k - ks;
                    if kd < vd {
                        break;
                    }
                    if let Some(Some(cd)) = index.get((kd - vd) as usize) {
                        acc.add_product(cd, cs);
                    }
                }
                (!acc.is_zero()).then_some((k, acc))
            })
            .collect();
        out.terms = coeffs.into_iter().collect();
        out
    }

    /// Multiplicative inverse known below `min(target_prec, P - 2v)`.
    pub fn inv(&self, target_prec: i64) -> Result<Self> {
        let v = self.valuation().ok_or(Error::NotInvertible)?;
        let lead = self.terms[&v].clone();
        let lead_inv = lead.inv().map_err(|_| Error::NotInvertible)?;
        let prec = target_prec.min(self.prec - 2 * v);
        let rel = prec + v;
        let l = self.conductor;
        let mut out = Self::zero(self.denom, prec, l);
        if rel <= 0 {
            return Ok(out);
        }
        // h = f / (lead q^v) = 1 + Σ_{k>0} h_k q^k
        let h: Vec<(usize, CycNumber)> = self
            .terms
            .range(v + 1..v + rel)
            .map(|(m, c)| ((m - v) as usize, c * &lead_inv))
            .collect();
        let rel = rel as usize;
        let mut e: Vec<CycNumber> = Vec::with_capacity(rel);
        e.push(CycNumber::one(l));
        for n in 1..rel {
            let mut acc = CycNumber::zero(l);
            for (k, hk) in &h {
                if *k > n {
                    break;
                }
                if !e[n - k].is_zero() {
                    acc.add_product(hk, &e[n - k]);
                }
            }
            e.push(-&acc);
        }
        for (n, c) in e.into_iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(n as i64 - v, &c * &lead_inv);
            }
        }
        Ok(out)
    }

    /// Integer power; negative powers invert at the series' own precision.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 {
            self.inv(self.prec)?
        } else {
            self.clone()
        };
        let mut acc: Option<Self> = None;
        for _ in 0..k.unsigned_abs() {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.mul(&base),
            });
        }
        Ok(acc.unwrap_or_else(|| {
            Self::from_terms(1, i64::MAX / 4, 1, [(0, CycNumber::one(1))])
        }))
    }

    /// Root-of-unity twist plus exponent division, see [`SubstSpec`].
    pub fn subst(&self, spec: SubstSpec) -> Self {
        assert!(spec.scale >= 1, "substitution scale must be positive");
        let new_denom = self.denom * spec.scale;
        let order = spec.order.unwrap_or(new_denom);
        if spec.twist.rem_euclid(order as i64) == 0 {
            return QSeries {
                denom: new_denom,
                ..self.clone()
            };
        }
        let l = lcm_u(self.conductor, order);
        let base = self.with_conductor(l).expect("lcm");
        let terms = base
            .terms
            .iter()
            .map(|(m, c)| {
                let e = (spec.twist as i128 * *m as i128).rem_euclid(order as i128) as i64;
                (*m, c * &CycNumber::root_of_unity(order, e))
            })
            .collect();
        QSeries {
            denom: new_denom,
            prec: self.prec,
            conductor: l,
            terms,
        }
    }

    /// `q ↦ q^r`.
    pub fn scale_exponents(&self, r: u64) -> Self {
        assert!(r >= 1);
        let r = r as i64;
        QSeries {
            denom: self.denom,
            prec: self.prec.saturating_mul(r),
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, c)| (m * r, c.clone())).collect(),
        }
    }

    /// `Σ a_n q^n ↦ Σ a_{ln} q^n` on integer support; precision `floor(P/l)`.
    pub fn extract_arithmetic(&self, l: u64) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidArgument("extraction step must be positive".into()));
        }
        let f = self.to_integer_grid()?;
        let l = l as i64;
        let prec = f.prec.div_euclid(l);
        Ok(QSeries {
            denom: 1,
            prec,
            conductor: f.conductor,
            terms: f
                .terms
                .iter()
                .filter(|(m, _)| *m % l == 0 && *m / l < prec)
                .map(|(m, c)| (m / l, c.clone()))
                .collect(),
        })
    }

    /// `a_n ↦ (n/l) a_n` on integer support.
    pub fn legendre_twist(&self, l: i64) -> Result<Self> {
        if !is_odd_prime(l) {
            return Err(Error::NotOddPrime(l));
        }
        let f = self.to_integer_grid()?;
        let mut terms = BTreeMap::new();
        for (m, c) in &f.terms {
            match jacobi_symbol(*m, l)? {
                1 => {
                    terms.insert(*m, c.clone());
                }
                -1 => {
                    terms.insert(*m, -c);
                }
                _ => {}
            }
        }
        Ok(QSeries { terms, ..f })
    }

    /// Overlap equality: common grid, coefficients agree below `min(P₁, P₂)`.
    pub fn overlap_eq(&self, other: &Self) -> bool {
        let (a, b) = Self::align(self, other);
        let prec = a.prec.min(b.prec);
        let lhs: Vec<_> = a.terms.range(..prec).collect();
        let rhs: Vec<_> = b.terms.range(..prec).collect();
        lhs == rhs
    }

    /// Strict equality including grid, precision and conductor.
    pub fn identical(&self, other: &Self) -> bool {
        self.denom == other.denom
            && self.prec == other.prec
            && self.conductor == other.conductor
            && self.terms == other.terms
    }

    /// Minimum coordinate-wise p-adic valuation over all coefficients.
    pub fn min_coord_valuation(&self, p: u64) -> Option<i64> {
        self.terms.values().filter_map(|c| c.coord_valuation(p)).min()
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.overlap_eq(other)
    }
}

fn format_coeff(c: &CycNumber) -> (bool, String) {
    match c.as_rational() {
        Some(r) => {
            let neg = r.is_negative();
            let mag = if neg { -r } else { r };
            if mag.is_one() {
                (neg, String::new())
            } else {
                (neg, mag.to_string())
            }
        }
        None => (false, c.to_string()),
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.denom as i64;
        let exp = |m: i64| -> String {
            let g = m.gcd(&d);
            let (n, dd) = (m / g, d / g);
            if dd == 1 {
                if n == 1 {
                    "q".to_string()
                } else {
                    format!("q^{n}")
                }
            } else {
                format!("q^({n}/{dd})")
            }
        };
        let mut first = true;
        for (m, c) in &self.terms {
            let (neg, body) = format_coeff(c);
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => "-",
                (false, false) => "+",
            };
            first = false;
            let text = match (*m == 0, body.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => body,
                (false, true) => exp(*m),
                (false, false) => format!("{body}{}", exp(*m)),
            };
            write!(f, "{sep}{text}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "+O({})", exp(self.prec).replace("q^0", "1"))
    }
}

#[derive(Serialize, Deserialize)]
struct QSeriesJson {
    denom: u64,
    prec: i64,
    conductor: u64,
    terms: Vec<(i64, CycNumber)>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QSeriesJson {
            denom: self.denom,
            prec: self.prec,
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, c)| (*m, c.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = QSeriesJson::deserialize(d)?;
        if j.denom == 0 || j.conductor == 0 {
            return Err(serde::de::Error::custom("denom and conductor must be positive"));
        }
        for (_, c) in &j.terms {
            if j.conductor % c.conductor() != 0 {
                return Err(serde::de::Error::custom(format!(
                    "coefficient conductor {} does not divide series conductor {}",
                    c.conductor(),
                    j.conductor
                )));
            }
        }
        if j.terms.iter().any(|(m, _)| *m >= j.prec) {
            return Err(serde::de::Error::custom("term at or beyond precision"));
        }
        Ok(QSeries::from_terms(j.denom, j.prec, j.conductor, j.terms))
    }
}
