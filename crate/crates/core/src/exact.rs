//! Exact arithmetic: arbitrary-precision rationals, double factorials, and
//! rational multiples of pi.
//!
//! Everything here is symbolic; pi is only materialized at output boundaries
//! (decimal rendering), so results that are equal as closed forms compare
//! equal bit for bit.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fixed::{pi_scaled, pow10, ratio_to_f64};

/// An exact fraction in canonical form: positive denominator, gcd 1,
/// zero represented as 0/1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Canonical-form rational equal to n/d. Errors on d = 0.
    pub fn new(n: i64, d: i64) -> Result<Self> {
        Self::from_bigints(BigInt::from(n), BigInt::from(d))
    }

    /// Canonical-form rational from big integers. Errors on a zero denominator.
    pub fn from_bigints(n: BigInt, d: BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(n, d)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Checked division; errors when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn pow(&self, k: u32) -> Self {
        Rational(self.0.pow(k as i32))
    }

    /// Nearest f64, robust to numerators and denominators of any size.
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for Rational {
    /// Canonical text form: "p/q", with "/q" omitted when q = 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
    };
}

rational_binop!(Add, add, +);
rational_binop!(Sub, sub, -);
rational_binop!(Mul, mul, *);

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Canonical-form rational equal to n/d; errors when d = 0.
pub fn rat_normalize(n: i64, d: i64) -> Result<Rational> {
    Rational::new(n, d)
}

/// n!! with the empty-product conventions (-1)!! = 0!! = 1.
/// Errors for n < -1.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::Domain(format!(
            "double factorial undefined for n = {n} < -1"
        )));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    Ok(acc)
}

/// An exact value q * pi for rational q. Equality is exact equality of the
/// coefficient; pi is never rounded until rendering.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PiValue {
    coeff: Rational,
}

impl PiValue {
    pub fn new(coeff: Rational) -> Self {
        PiValue { coeff }
    }

    pub fn zero() -> Self {
        PiValue {
            coeff: Rational::zero(),
        }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Floating approximation coeff * pi.
    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64() * std::f64::consts::PI
    }

    /// Decimal rendering with `digits` digits after the point, rounded to
    /// nearest (half away from zero). pi is taken with ten guard digits so
    /// the printed digits are exact. `digits` must lie in 1..=1000.
    pub fn to_decimal(&self, digits: u32) -> Result<String> {
        if !(1..=1000).contains(&digits) {
            return Err(Error::Domain(format!(
                "digits = {digits} out of range 1..=1000"
            )));
        }
        const GUARD: u32 = 10;
        let pi = pi_scaled(digits + GUARD);
        let magnitude: BigInt = self.coeff.numer().abs() * pi / self.coeff.denom();
        // round half up at the guard boundary
        let rounded: BigInt = (magnitude + BigInt::from(5) * pow10(GUARD - 1)) / pow10(GUARD);
        let scale = pow10(digits);
        let int_part = &rounded / &scale;
        let frac_part = &rounded % &scale;
        let sign = if self.coeff.is_negative() && !rounded.is_zero() {
            "-"
        } else {
            ""
        };
        Ok(format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = digits as usize
        ))
    }
}

impl fmt::Display for PiValue {
    /// Canonical text form: "p/q * pi", or "0" for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{} * pi", self.coeff)
        }
    }
}

impl fmt::Debug for PiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for PiValue {
    type Output = PiValue;
    fn add(self, rhs: PiValue) -> PiValue {
        PiValue {
            coeff: self.coeff + rhs.coeff,
        }
    }
}

impl Mul<Rational> for PiValue {
    type Output = PiValue;
    fn mul(self, rhs: Rational) -> PiValue {
        PiValue {
            coeff: self.coeff * rhs,
        }
    }
}

/// Decimal rendering of a pi multiple; see [`PiValue::to_decimal`].
pub fn pi_value_to_decimal(v: &PiValue, digits: u32) -> Result<String> {
    v.to_decimal(digits)
}
