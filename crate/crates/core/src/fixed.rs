//! Fixed-point big-integer arithmetic used internally for high-precision
//! evaluation: decimal rendering of pi multiples and the lattice-sum oracle,
//! where the agreement bounds sit far below f64 resolution.
//!
//! Values are `BigInt`s scaled by `10^prec`. Multiplication and division
//! truncate toward zero, so each operation carries at most one unit of
//! absolute error at the working precision.

use num::bigint::Sign;
use num::{BigInt, BigUint, Zero};

use crate::exact::Rational;

/// Scale context: numbers are integers times `10^-prec`.
pub(crate) struct Fixed {
    scale: BigInt,
}

impl Fixed {
    pub(crate) fn new(prec: u32) -> Self {
        Fixed {
            scale: BigInt::from(10u32).pow(prec),
        }
    }

    pub(crate) fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Exact conversion of a finite f64 (a dyadic rational) into fixed point,
    /// truncated to the working precision.
    pub(crate) fn from_f64(&self, x: f64) -> BigInt {
        let r = num::BigRational::from_float(x).expect("finite float");
        r.numer() * &self.scale / r.denom()
    }

    pub(crate) fn from_rational(&self, r: &Rational) -> BigInt {
        r.numer() * &self.scale / r.denom()
    }

    pub(crate) fn to_f64(&self, v: &BigInt) -> f64 {
        ratio_to_f64(v, &self.scale)
    }

    pub(crate) fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b / &self.scale
    }

    /// 1/a in fixed point.
    pub(crate) fn recip(&self, a: &BigInt) -> BigInt {
        &self.scale * &self.scale / a
    }

    pub(crate) fn powi(&self, a: &BigInt, k: u32) -> BigInt {
        let mut result = self.scale.clone(); // 1.0
        let mut base = a.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// sin(x) by Taylor series. Converges quickly for |x| <= pi, the only
    /// range this module needs.
    pub(crate) fn sin(&self, x: &BigInt) -> BigInt {
        let x2 = self.mul(x, x);
        let mut term = x.clone();
        let mut sum = x.clone();
        let mut k: u64 = 1;
        while !term.is_zero() {
            term = -(&term * &x2) / &self.scale / BigInt::from((2 * k) * (2 * k + 1));
            sum += &term;
            k += 1;
        }
        sum
    }
}

/// pi scaled by 10^prec, truncated. Machin's formula
/// pi = 16 atan(1/5) - 4 atan(1/239) with ten guard digits.
pub(crate) fn pi_scaled(prec: u32) -> BigInt {
    const GUARD: u32 = 10;
    let scale = BigInt::from(10u32).pow(prec + GUARD);
    let v = BigInt::from(16) * atan_inv_scaled(5, &scale)
        - BigInt::from(4) * atan_inv_scaled(239, &scale);
    v / BigInt::from(10u32).pow(GUARD)
}

/// atan(1/x) * scale for integer x >= 2, truncated.
fn atan_inv_scaled(x: u32, scale: &BigInt) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut term = scale / BigInt::from(x);
    let mut sum = term.clone();
    let mut k: u64 = 1;
    while !term.is_zero() {
        term /= &x2;
        let contrib = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= contrib;
        } else {
            sum += contrib;
        }
        k += 1;
    }
    sum
}

/// Round num/den to the nearest f64, robust to operands far beyond the
/// f64 exponent range. Keeps ~63 bits of quotient then scales by a power
/// of two, so the result is within one ulp of the true value.
pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let sign = if num.sign() == Sign::Minus { -1.0 } else { 1.0 };
    let n = num.magnitude();
    let d = den.magnitude();
    let shift: i64 = 63 - (n.bits() as i64 - d.bits() as i64);
    let q: BigUint = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    let mut out = 0.0f64;
    // q fits in at most 65 bits; fold limbs from the top.
    for digit in q.to_u64_digits().iter().rev() {
        out = out * 2f64.powi(64) + *digit as f64;
    }
    sign * out * 2f64.powi(-(shift as i32))
}

/// Integer 10^k.
pub(crate) fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;

    #[test]
    fn pi_matches_f64_constant() {
        let ctx = Fixed::new(50);
        let pi = pi_scaled(50);
        assert_eq!(ctx.to_f64(&pi), std::f64::consts::PI);
    }

    #[test]
    fn pi_digits_50() {
        // 3.14159265358979323846264338327950288419716939937510
        let pi = pi_scaled(50);
        assert_eq!(
            pi.to_string(),
            "314159265358979323846264338327950288419716939937510"
        );
    }

    #[test]
    fn sin_of_half_pi_is_one() {
        let ctx = Fixed::new(50);
        let pi = pi_scaled(50);
        let s = ctx.sin(&(pi / BigInt::from(2)));
        // sin(pi/2) = 1 to within truncation noise
        let diff = (&s - ctx.scale()).abs();
        assert!(diff < BigInt::from(1000u32), "diff = {diff}");
    }

    #[test]
    fn sin_matches_f64_at_two() {
        let ctx = Fixed::new(50);
        let x = ctx.from_f64(2.0);
        assert_eq!(ctx.to_f64(&ctx.sin(&x)), 2.0f64.sin());
    }

    #[test]
    fn roundtrip_f64() {
        let ctx = Fixed::new(50);
        for &x in &[0.5, 1.0 / 3.0, 2.0, 3.0999999, 1e-9, 12345.6789] {
            assert_eq!(ctx.to_f64(&ctx.from_f64(x)), x);
        }
    }

    #[test]
    fn recip_and_pow() {
        let ctx = Fixed::new(50);
        let three = ctx.from_f64(3.0);
        assert_eq!(ctx.to_f64(&ctx.recip(&three)), 1.0 / 3.0);
        let v = ctx.powi(&three, 7);
        assert_eq!(ctx.to_f64(&v), 3.0f64.powi(7));
    }
}
