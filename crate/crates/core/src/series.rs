//! Truncated evaluators for the classical partial-fraction series of csc and
//! for the infinite-product factorization of 1 - sin(x)/sin(a).
//!
//! These are convergence validators, not production evaluators: each returns
//! its partial sum together with a tail bound, and the tests drive them
//! against the closed forms they converge to.

use crate::error::{Error, Result};

/// A truncated series or product value with its remainder information.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationReport {
    pub value: f64,
    pub terms_used: u64,
    /// Absolute bound (or estimate, for the product) on the omitted tail.
    pub tail_bound: f64,
}

const POLE_GUARD: f64 = 1e-9;

fn check_not_near_pole(alpha: f64) -> Result<()> {
    let nearest = (alpha / std::f64::consts::PI).round() * std::f64::consts::PI;
    if !alpha.is_finite() || (alpha - nearest).abs() <= POLE_GUARD {
        return Err(Error::Pole(alpha));
    }
    Ok(())
}

/// Partial sum of 1/sin(a) = 1/a + sum_m (-1)^m (1/(a - m pi) + 1/(a + m pi))
/// through m = M. The grouped terms alternate with decreasing magnitude, so
/// the first omitted group bounds the tail.
pub fn csc_partial_fraction(alpha: f64, terms: u64) -> Result<TruncationReport> {
    check_not_near_pole(alpha)?;
    if terms == 0 {
        return Err(Error::Domain("terms must be >= 1".into()));
    }
    let pi = std::f64::consts::PI;
    let mut value = 1.0 / alpha;
    let mut sign = -1.0;
    for m in 1..=terms {
        let mp = m as f64 * pi;
        value += sign * (1.0 / (alpha - mp) + 1.0 / (alpha + mp));
        sign = -sign;
    }
    let next = (terms + 1) as f64 * pi;
    let tail_bound = (2.0 * alpha / (alpha * alpha - next * next)).abs();
    Ok(TruncationReport {
        value,
        terms_used: terms,
        tail_bound,
    })
}

/// Partial sum of the four-term regrouping of the same series:
/// 1/sin(a) = 1/a + sum_m [ 1/((2m-1)pi - a) - 1/((2m-1)pi + a)
///                        + 1/(2m pi + a)    - 1/(2m pi - a) ].
/// Group m covers the alternating groups 2m-1 and 2m, so the alternating
/// remainder after 2M grouped terms bounds the tail.
pub fn csc_four_term_series(alpha: f64, terms: u64) -> Result<TruncationReport> {
    check_not_near_pole(alpha)?;
    if terms == 0 {
        return Err(Error::Domain("terms must be >= 1".into()));
    }
    let pi = std::f64::consts::PI;
    let mut value = 1.0 / alpha;
    for m in 1..=terms {
        let odd = (2 * m - 1) as f64 * pi;
        let even = (2 * m) as f64 * pi;
        value += 1.0 / (odd - alpha) - 1.0 / (odd + alpha) + 1.0 / (even + alpha)
            - 1.0 / (even - alpha);
    }
    let next = (2 * terms + 1) as f64 * pi;
    let tail_bound = (2.0 * alpha / (alpha * alpha - next * next)).abs();
    Ok(TruncationReport {
        value,
        terms_used: terms,
        tail_bound,
    })
}

/// Truncated product form of f(x) = 1 - sin(x)/sin(a):
///
/// ```text
/// (1 - x/a) * prod_m (1 - x/((2m-1)pi - a)) (1 + x/((2m-1)pi + a))
///                    (1 - x/(2m pi + a))    (1 + x/(2m pi - a))
/// ```
///
/// The tail bound is an estimate only (the product has no alternating-series
/// remainder): the deviation of the last retained factor group from 1 decays
/// like 1/m^2, so the omitted logarithmic tail is about M times that
/// deviation.
pub fn sine_deficiency_product(x: f64, alpha: f64, terms: u64) -> Result<TruncationReport> {
    if terms == 0 {
        return Err(Error::Domain("terms must be >= 1".into()));
    }
    let pi = std::f64::consts::PI;
    if !alpha.is_finite() || alpha.abs() <= POLE_GUARD || (pi - alpha).abs() <= POLE_GUARD {
        return Err(Error::Pole(alpha));
    }
    let mut value = 1.0 - x / alpha;
    let mut last_group = 1.0;
    for m in 1..=terms {
        let odd = (2 * m - 1) as f64 * pi;
        let even = (2 * m) as f64 * pi;
        let group = (1.0 - x / (odd - alpha))
            * (1.0 + x / (odd + alpha))
            * (1.0 - x / (even + alpha))
            * (1.0 + x / (even - alpha));
        value *= group;
        last_group = group;
    }
    // last deviation ~ c/M^2, omitted log-tail ~ c/M; the 1.25 cushion
    // absorbs the second-order terms the 1/m^2 model drops
    let tail_bound = 1.25 * (value * (terms as f64) * (1.0 - last_group)).abs();
    Ok(TruncationReport {
        value,
        terms_used: terms,
        tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    const ALPHAS: [f64; 5] = [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, FRAC_PI_2, 2.0];

    #[test]
    fn partial_fraction_examples() {
        let r = csc_partial_fraction(FRAC_PI_2, 10_000).unwrap();
        assert!((r.value - 1.0).abs() <= r.tail_bound);
        let r = csc_partial_fraction(FRAC_PI_4, 10_000).unwrap();
        assert!((r.value - 2.0f64.sqrt()).abs() <= r.tail_bound);
        let r = csc_partial_fraction(FRAC_PI_3, 10_000).unwrap();
        assert!((r.value - 2.0 / 3.0f64.sqrt()).abs() <= r.tail_bound);
    }

    #[test]
    fn four_term_examples() {
        let r = csc_four_term_series(FRAC_PI_2, 10_000).unwrap();
        assert!((r.value - 1.0).abs() <= r.tail_bound);
        let r = csc_four_term_series(FRAC_PI_4, 10_000).unwrap();
        assert!((r.value - 2.0f64.sqrt()).abs() <= r.tail_bound);
        let r = csc_four_term_series(2.0, 10_000).unwrap();
        assert!((r.value - 1.0 / 2.0f64.sin()).abs() <= r.tail_bound);
    }

    #[test]
    fn tail_bound_decreases_with_terms() {
        for &alpha in &ALPHAS {
            let mut last = f64::INFINITY;
            for terms in [100u64, 1_000, 10_000] {
                let r = csc_partial_fraction(alpha, terms).unwrap();
                assert!((r.value - 1.0 / alpha.sin()).abs() <= r.tail_bound);
                assert!(r.tail_bound < last);
                last = r.tail_bound;
            }
        }
    }

    #[test]
    fn regrouping_equivalence() {
        for &alpha in &ALPHAS {
            let a = csc_partial_fraction(alpha, 10_000).unwrap();
            let b = csc_four_term_series(alpha, 10_000).unwrap();
            assert!(
                (a.value - b.value).abs() <= a.tail_bound + b.tail_bound,
                "alpha = {alpha}"
            );
        }
    }

    #[test]
    fn product_exact_points() {
        // x = alpha kills the leading factor
        let r = sine_deficiency_product(FRAC_PI_3, FRAC_PI_3, 17).unwrap();
        assert_eq!(r.value, 0.0);
        // x = 0 leaves every factor at 1
        let r = sine_deficiency_product(0.0, FRAC_PI_3, 17).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.tail_bound, 0.0);
    }

    #[test]
    fn product_converges_to_sine_deficiency() {
        let r = sine_deficiency_product(FRAC_PI_6, FRAC_PI_2, 10_000).unwrap();
        let expected = 1.0 - (FRAC_PI_6).sin() / (FRAC_PI_2).sin();
        assert!((r.value - expected).abs() <= r.tail_bound, "{r:?}");
        assert!((r.value - 0.5).abs() < 1e-3);
    }

    #[test]
    fn product_vs_function_grid() {
        for &x in &[0.0, FRAC_PI_6, 1.0] {
            for &alpha in &[FRAC_PI_3, FRAC_PI_2] {
                let r = sine_deficiency_product(x, alpha, 10_000).unwrap();
                let expected = 1.0 - x.sin() / alpha.sin();
                assert!(
                    (r.value - expected).abs() <= r.tail_bound,
                    "x = {x}, alpha = {alpha}: {} vs {expected} (bound {:e})",
                    r.value,
                    r.tail_bound
                );
            }
        }
    }

    #[test]
    fn measured_product_convergence() {
        // the bound is heuristic; the measured error must shrink with M
        let expected = 1.0 - 1.0f64.sin() / FRAC_PI_3.sin();
        let mut last = f64::INFINITY;
        for terms in [100u64, 1_000, 10_000] {
            let r = sine_deficiency_product(1.0, FRAC_PI_3, terms).unwrap();
            let err = (r.value - expected).abs();
            assert!(err < last, "terms = {terms}: {err} !< {last}");
            last = err;
        }
    }

    #[test]
    fn pole_rejection() {
        assert!(matches!(
            csc_partial_fraction(PI, 100),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            csc_partial_fraction(3.0 * PI + 1e-12, 100),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            csc_four_term_series(0.0, 100),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            sine_deficiency_product(1.0, PI, 100),
            Err(Error::Pole(_))
        ));
    }
}
