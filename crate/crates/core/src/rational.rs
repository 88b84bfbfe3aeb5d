//! Exact rational arithmetic helpers.
//!
//! Every weight, threshold and theorem bound in this crate is an exact
//! rational. Quantities with fractional exponents (η^(1/3), d^(-d/2)) are
//! carried as [`RealPower`] and compared against rationals by integer
//! cross-multiplication, never through floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_u64_ratio(numer: u64, denom: u64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `x^e` for any integer `e`; negative exponents take the reciprocal.
pub fn pow_int(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a ratio of scaled integers for huge operands.
        let n = x.numer().to_f64().unwrap_or(f64::MAX);
        let d = x.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Smallest dyadic rational with denominator `2^bits` that is `>= x`.
pub fn dyadic_upper_bound(x: f64, bits: u32) -> Rational {
    assert!(x.is_finite(), "cannot bound a non-finite value");
    let scale = BigInt::one() << bits;
    let exact = Rational::from_float(x).expect("finite float");
    let scaled = exact * Rational::from_integer(scale.clone());
    Rational::new(scaled.ceil().to_integer(), scale)
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.125`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = Rational::from_integer(whole.abs()) + Rational::new(frac, denom);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format(x))
}

pub fn serialize_opt<S: Serializer>(
    x: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&format(x)),
        None => s.serialize_str("inf"),
    }
}

fn lcm_big(a: &BigUint, b: &BigUint) -> BigUint {
    a.lcm(b)
}

/// Scales a list of non-negative rationals to integers over a common
/// denominator. Returns `None` when the result would not fit in `u64`.
pub fn common_denominator(values: &[Rational]) -> Option<(Vec<u64>, u64)> {
    let mut denom = BigUint::one();
    for v in values {
        if v.is_negative() {
            return None;
        }
        denom = lcm_big(&denom, v.denom().magnitude());
    }
    let denom_u64 = denom.to_u64()?;
    let d = BigInt::from(denom);
    let mut out = Vec::with_capacity(values.len());
    for v in values {
        let scaled = v.numer() * &d / v.denom();
        out.push(scaled.to_u64()?);
    }
    Some((out, denom_u64))
}

/// A positive real number `coeff * base^(num/den)`.
///
/// `base` and `coeff` are positive rationals, `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPower {
    coeff: Rational,
    base: Rational,
    num: i64,
    den: u32,
}

impl RealPower {
    pub fn new(coeff: Rational, base: Rational, num: i64, den: u32) -> Self {
        assert!(coeff.is_positive() && base.is_positive() && den > 0);
        let g = (num.unsigned_abs()).gcd(&(den as u64)).max(1);
        Self { coeff, base, num: num / g as i64, den: den / g as u32 }
    }

    /// `base^(num/den)`.
    pub fn power(base: Rational, num: i64, den: u32) -> Self {
        Self::new(Rational::one(), base, num, den)
    }

    pub fn from_rational(x: Rational) -> Self {
        Self::new(x, Rational::one(), 0, 1)
    }

    /// Exact value when the exponent is integral.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.den == 1).then(|| &self.coeff * pow_int(&self.base, self.num))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(&self.coeff * factor, self.base.clone(), self.num, self.den)
    }

    /// Compares `self` with the rational `x`.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        if !x.is_positive() {
            return Ordering::Greater;
        }
        // coeff * base^(num/den) <=> x  iff  base^num <=> (x / coeff)^den
        let lhs = pow_int(&self.base, self.num);
        let rhs = pow_int(&(x / &self.coeff), self.den as i64);
        lhs.cmp(&rhs)
    }

    /// `x <= self`, exactly.
    pub fn ge_rational(&self, x: &Rational) -> bool {
        self.cmp_rational(x) != Ordering::Less
    }

    /// `self <= x`, exactly.
    pub fn le_rational(&self, x: &Rational) -> bool {
        self.cmp_rational(x) != Ordering::Greater
    }

    /// Rational enclosure `lo <= self <= hi` with `hi - lo <= 2^-bits * max(1, self)`.
    pub fn enclose(&self, bits: u32) -> (Rational, Rational) {
        if let Some(exact) = self.as_rational() {
            return (exact.clone(), exact);
        }
        // Bisect y = base^(num/den): y^den = base^num.
        let target = pow_int(&self.base, self.num);
        let mut lo = Rational::zero();
        let mut hi = if target > Rational::one() { target.clone() } else { Rational::one() };
        let steps = bits + hi.to_integer().bits() as u32 + 2;
        let two = int(2);
        for _ in 0..steps {
            let mid = (&lo + &hi) / &two;
            if pow_int(&mid, self.den as i64) <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (&lo * &self.coeff, &hi * &self.coeff)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coeff) * to_f64(&self.base).powf(self.num as f64 / self.den as f64)
    }
}

impl fmt::Display for RealPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.as_rational() {
            return write!(f, "{}", format(&x));
        }
        if !self.coeff.is_one() {
            write!(f, "{}*", format(&self.coeff))?;
        }
        write!(f, "({})^({}/{})", format(&self.base), self.num, self.den)
    }
}

impl Serialize for RealPower {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Smallest rational `r` with denominator a power of two such that
/// `r^den >= x^num`, i.e. an upper bound on `x^(num/den)`, found by
/// bisection to `bits` of precision.
pub fn root_upper_bound(x: &Rational, num: i64, den: u32, bits: u32) -> Rational {
    RealPower::power(x.clone(), num, den).enclose(bits).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3/12").unwrap(), ratio(1, 4));
        assert_eq!(parse("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse("7").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
    }

    #[test]
    fn cube_root_comparison_is_exact() {
        let t = RealPower::power(ratio(1, 8), 1, 3);
        assert_eq!(t.cmp_rational(&ratio(1, 2)), Ordering::Equal);
        assert!(t.le_rational(&ratio(1, 2)));
        assert!(!t.le_rational(&ratio(49, 100)));
        let (lo, hi) = RealPower::power(ratio(1, 2), 1, 3).enclose(40);
        assert!(lo <= hi);
        assert!(pow_int(&lo, 3) <= ratio(1, 2) && pow_int(&hi, 3) >= ratio(1, 2));
        assert!(to_f64(&(hi - lo)) < 1e-11);
    }

    #[test]
    fn negative_half_exponent() {
        // 1 / (2 * 3^(3/2)) vs 1/10.4 and 1/10.3
        let eps = RealPower::new(ratio(1, 2), int(3), -3, 2);
        assert!(eps.le_rational(&ratio(10, 103)));
        assert!(eps.ge_rational(&ratio(10, 104)));
    }

    #[test]
    fn dyadic_bound_is_above() {
        let b = dyadic_upper_bound(1.0 / 3.0, 40);
        assert!(b >= ratio(1, 3));
        assert!(to_f64(&b) - 1.0 / 3.0 < 1e-11);
    }

    #[test]
    fn common_denominators() {
        let (ints, d) = common_denominator(&[ratio(1, 6), ratio(1, 4), ratio(7, 12)]).unwrap();
        assert_eq!(d, 12);
        assert_eq!(ints, vec![2, 3, 7]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(10, 0), 1);
    }
}
