//! Theta series, its expansions at the 4-torsion cusps, the modular units
//! `Θ_m`, weight adjustment, and a numeric check of the theta multiplier.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_odd_prime, mod_inverse};
use crate::cyclonum::{gauss_sum, jacobi_symbol, CycNumber};
use crate::error::{Error, Result};
use crate::qlaurent::{QSeries, SubstSpec};

/// Isomorphism class of `(Tate(q), P)` with `P` of order 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FourTorsionClass {
    /// `P = ζ₄`, the cusp at infinity.
    Z4,
    /// `P = ζ₄ q₂`, lying over `1/2`.
    Z4Q2,
    /// `P = ζ₄^k q₄`; only `k ∈ {0, 1, 3}` are accepted.
    Z4kQ4(u8),
}

impl FourTorsionClass {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "inf" => Ok(Self::Z4),
            "half" => Ok(Self::Z4Q2),
            _ => {
                let k = s
                    .strip_prefix("zero-")
                    .and_then(|k| k.parse::<u8>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown 4-torsion class '{s}'")))?;
                Self::z4k_q4(k)
            }
        }
    }

    pub fn z4k_q4(k: u8) -> Result<Self> {
        match k {
            0 | 1 | 3 => Ok(Self::Z4kQ4(k)),
            2 => Err(Error::InvalidArgument(
                "the class ζ₄²q₄ has an undefined prefactor 1/(1+ζ₄²)".into(),
            )),
            _ => Err(Error::InvalidArgument(format!("k must be 0, 1 or 3, got {k}"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Z4 => "inf".into(),
            Self::Z4Q2 => "half".into(),
            Self::Z4kQ4(k) => format!("zero-{k}"),
        }
    }
}

/// The expansions of `Θ_m` tabulated for the cusps used by the Hecke operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaUnitVariant {
    /// Point with `4P = ζ_m^t q_m`, `mP = ζ₄`.
    GenericM { m: u64, t: i64 },
    /// `(Tate(q), ζ₄, ⟨ζ_{l²}⟩)`.
    SubgroupZeta { l: u64 },
    /// `(Tate(q), ζ₄, ⟨ζ_{l²}^j q_l⟩)`.
    SubgroupZetaQ { l: u64, j: i64 },
    /// `4P = ζ_l^t`, `lP = ζ₄`.
    PrimeLevel { l: u64, t: i64 },
}

impl ThetaUnitVariant {
    fn validate(&self) -> Result<()> {
        let prime = |l: u64| {
            if is_odd_prime(l as i64) {
                Ok(())
            } else {
                Err(Error::NotOddPrime(l as i64))
            }
        };
        match *self {
            Self::GenericM { m, .. } => {
                if m == 0 || m % 2 == 0 {
                    return Err(Error::EvenModulus(m as i64));
                }
                Ok(())
            }
            Self::SubgroupZeta { l } => prime(l),
            Self::SubgroupZetaQ { l, j: t } | Self::PrimeLevel { l, t } => {
                prime(l)?;
                if gcd(t, l as i64) != 1 {
                    return Err(Error::NotCoprime { t, conductor: l });
                }
                Ok(())
            }
        }
    }
}

/// A q-expansion together with the odd weight `k` used to adjust it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdjustedExpansion {
    pub series: QSeries,
    pub k: i64,
}

impl AdjustedExpansion {
    pub fn new(series: QSeries, k: i64) -> Result<Self> {
        check_weight(k)?;
        Ok(AdjustedExpansion { series, k })
    }
}

impl AsRef<QSeries> for AdjustedExpansion {
    fn as_ref(&self) -> &QSeries {
        &self.series
    }
}

impl AsRef<QSeries> for QSeries {
    fn as_ref(&self) -> &QSeries {
        self
    }
}

pub(crate) fn check_weight(k: i64) -> Result<()> {
    if k <= 0 || k % 2 == 0 {
        Err(Error::InvalidWeight(k))
    } else {
        Ok(())
    }
}

/// `Σ_{n∈ℤ} q^{n²}` known below `q^prec`.
pub fn theta_series(prec: i64) -> QSeries {
    let prec = prec.max(1);
    let terms = (0..)
        .take_while(|n: &i64| n * n < prec)
        .map(|n| (n * n, CycNumber::from_int(1, if n == 0 { 1 } else { 2 })));
    QSeries::from_terms(1, prec, 1, terms)
}

/// Expansion of θ at the cusp attached to `c`, known below `q^prec`.
pub fn theta_at_4torsion(c: FourTorsionClass, prec: i64) -> Result<QSeries> {
    match c {
        FourTorsionClass::Z4 => Ok(theta_series(prec)),
        FourTorsionClass::Z4Q2 => {
            let bound = 4 * prec;
            let terms = (0..)
                .map(|n: i64| (2 * n + 1) * (2 * n + 1))
                .take_while(|m| *m < bound)
                .map(|m| (m, CycNumber::from_int(1, 2)));
            Ok(QSeries::from_terms(4, bound, 1, terms))
        }
        FourTorsionClass::Z4kQ4(k) => {
            let k = FourTorsionClass::z4k_q4(k).map(|_| k as i64)?;
            let bound = 4 * prec;
            let terms = (0..).take_while(|n: &i64| n * n < bound).map(|n| {
                let mult = if n == 0 { 1 } else { 2 };
                let z = CycNumber::root_of_unity(4, (k * n * n).rem_euclid(4));
                (n * n, z.scale_int(mult))
            });
            let raw = QSeries::from_terms(4, bound, 4, terms);
            let pref = (CycNumber::one(4) + CycNumber::root_of_unity(4, k)).inv()?;
            Ok(raw.scale(&pref))
        }
    }
}

/// q-expansion of the modular unit `Θ` for `v`, known below `q^prec`.
pub fn theta_unit(v: ThetaUnitVariant, prec: i64) -> Result<QSeries> {
    v.validate()?;
    let theta_inv = theta_series(prec).inv(prec)?;
    match v {
        ThetaUnitVariant::GenericM { m, t } => {
            let num = theta_series(prec * m as i64).subst(SubstSpec::new(m, t));
            Ok(num.mul(&theta_inv))
        }
        ThetaUnitVariant::SubgroupZeta { l } => {
            let num = theta_series(prec.div_euclid((l * l) as i64) + 1)
                .scale_exponents(l * l)
                .truncate(prec);
            Ok(num.mul(&theta_inv).scale(&CycNumber::from_int(1, l as i64)))
        }
        ThetaUnitVariant::SubgroupZetaQ { l, j } => {
            let l2 = l * l;
            let sign = jacobi_symbol(-1, l as i64)? as i64;
            let g = gauss_sum(l as i64, &CycNumber::root_of_unity(l2, j * l as i64))?;
            let num = theta_series(prec).subst(SubstSpec::twist(j * l as i64, l2));
            Ok(num.mul(&theta_inv).scale(&g.scale_int(sign)))
        }
        ThetaUnitVariant::PrimeLevel { l, t } => {
            let g = gauss_sum(l as i64, &CycNumber::root_of_unity(l, t))?;
            let num = theta_series(prec.div_euclid(l as i64) + 1)
                .scale_exponents(l)
                .truncate(prec);
            Ok(num.mul(&theta_inv).scale(&g))
        }
    }
}

/// `raw · θ_P^k` for the cusp class `c`.
pub fn adjust_expansion(raw: &QSeries, c: FourTorsionClass, k: i64) -> Result<AdjustedExpansion> {
    check_weight(k)?;
    let d = raw.denom() as i64;
    let above = raw.prec().div_euclid(d) + 1;
    let below = raw.valuation().map_or(0, |v| (-v).max(0).div_euclid(d) + 1);
    let theta = theta_at_4torsion(c, above + below)?;
    let series = raw.mul(&theta.pow(k)?);
    Ok(AdjustedExpansion { series, k })
}

/// Maximal pole order `e` (in `q_{4N}` units) allowed at a cusp.
pub fn pole_bound(n: u64, k: i64, over_half: bool) -> i64 {
    if over_half {
        n as i64 * k
    } else {
        0
    }
}

/// No stored exponent is negative.
pub fn is_holomorphic_expansion<S: AsRef<QSeries>>(s: &S) -> bool {
    s.as_ref().valuation().is_none_or(|v| v >= 0)
}

fn theta_numeric(tau: Complex64, n_terms: u32) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    for n in 1..=n_terms as i64 {
        let e = Complex64::new(0.0, 2.0 * PI * (n * n) as f64) * tau;
        sum += e.exp() * 2.0;
    }
    sum
}

/// Square root with argument in `[−π/2, π/2)`.
fn sqrt_branch(z: Complex64) -> Complex64 {
    let mut arg = z.arg();
    if arg >= PI {
        arg = -PI;
    }
    Complex64::from_polar(z.norm().sqrt(), arg / 2.0)
}

/// Relative defect of `θ(γτ) = ε_d⁻¹ (c/d) (cτ+d)^{1/2} θ(τ)` for `γ ∈ Γ₀(4)`,
/// using `n_terms` terms on each side of the theta sum.
pub fn verify_transformation_law(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    tau: Complex64,
    n_terms: u32,
) -> Result<f64> {
    if a as i128 * d as i128 - b as i128 * c as i128 != 1 {
        return Err(Error::InvalidArgument("determinant must be 1".into()));
    }
    if c % 4 != 0 {
        return Err(Error::InvalidArgument("lower-left entry must be divisible by 4".into()));
    }
    if tau.im <= 0.0 {
        return Err(Error::InvalidArgument("tau must lie in the upper half plane".into()));
    }
    let denom = tau * c as f64 + d as f64;
    let gtau = (tau * a as f64 + b as f64) / denom;
    let lhs = theta_numeric(gtau, n_terms);
    let base = theta_numeric(tau, n_terms);
    let eps_inv = if d.rem_euclid(4) == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, -1.0)
    };
    let symbol = jacobi_symbol(c, d)? as f64;
    let rhs = eps_inv * symbol * sqrt_branch(denom) * base;
    Ok((lhs - rhs).norm() / base.norm())
}

/// Random element of `Γ₀(4)` with `c ≠ 0` and entries bounded by `bound`.
pub fn random_gamma0_4<R: Rng>(rng: &mut R, bound: i64) -> [i64; 4] {
    assert!(bound >= 4);
    loop {
        let c = 4 * rng.gen_range(1..=bound / 4) * if rng.gen() { 1 } else { -1 };
        let d = rng.gen_range(-bound..=bound);
        if d % 2 == 0 || gcd(c, d) != 1 {
            continue;
        }
        let m = c.abs();
        let mut a = mod_inverse(d, m).expect("coprime");
        if a > m / 2 {
            a -= m;
        }
        let b = (a * d - 1) / c;
        if a.abs() <= bound && b.abs() <= bound {
            return [a, b, c, d];
        }
    }
}
