//! The central transform: rewrite int_0^inf (sin x / x)^(2n) f(x) dx as a
//! finite combination of int_0^{pi/2} sin(t)^(2j) f(t) dt, using the
//! cosecant-power expansion, and evaluate it — exactly through Wallis
//! integrals when f is a polynomial in sin^2 x, numerically otherwise.
//!
//! The odd family int_0^inf sin(x)^(2n+1)/x f(x) dx folds sin^(2n) into the
//! weight, which keeps both symmetries, and reduces in one step to
//! int_0^{pi/2} sin(t)^(2n) f(t) dt.

use crate::csc;
use crate::error::{Error, Result};
use crate::exact::{double_factorial, PiValue, Rational};
use crate::expr::{check_symmetry_default, FnExpr};
use crate::quad::{adaptive_quad, check_tol, NumericResult};

/// One reduced term: weight * int_0^{pi/2} sin(t)^(2j) f(t) dt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedTerm {
    pub j: u32,
    pub weight: Rational,
}

/// The full reduction of the order-n even integral, terms in ascending j.
/// The j = 0 term always carries weight 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedForm {
    n: u32,
    terms: Vec<ReducedTerm>,
}

impl ReducedForm {
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &[ReducedTerm] {
        &self.terms
    }
}

/// Wallis integral int_0^{pi/2} sin(t)^(2j) dt = (2j-1)!!/(2j)!! * pi/2.
pub fn wallis_integral(j: u32) -> PiValue {
    let odd = double_factorial(2 * j as i64 - 1).expect("2j-1 >= -1");
    let even = double_factorial(2 * j as i64).expect("2j >= 0");
    let half = Rational::new(1, 2).expect("nonzero");
    PiValue::new(Rational::from_bigints(odd, even).expect("(2j)!! > 0") * half)
}

/// Reduction of the order-n even integral: terms (j = n-k, weight = c[n,k])
/// for k = n..1, from the cosecant-power expansion.
pub fn reduce_even(n: u32) -> Result<ReducedForm> {
    let expansion = csc::expand(n)?;
    let terms = (1..=n)
        .rev()
        .map(|k| ReducedTerm {
            j: n - k,
            weight: expansion.coeff(k).clone(),
        })
        .collect();
    Ok(ReducedForm { n, terms })
}

/// Exact value of int_0^inf (sin x / x)^(2n) f(x) dx for
/// f = sum_j poly[j] (sin^2 x)^j: every piece is a Wallis integral, so the
/// result is a rational multiple of pi.
pub fn integrate_even_exact(n: u32, poly: &[Rational]) -> Result<PiValue> {
    let reduced = reduce_even(n)?;
    let mut total = PiValue::zero();
    for term in reduced.terms() {
        for (jp, a) in poly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let w = wallis_integral(term.j + jp as u32);
            total = total + w * (&term.weight * a);
        }
    }
    Ok(total)
}

fn require_symmetry(f: &FnExpr) -> Result<()> {
    let report = check_symmetry_default(f)?;
    if !report.ok() {
        return Err(Error::Symmetry(format!(
            "f must satisfy f(x + pi) = f(x) and f(pi - x) = f(x); max violation {:e} \
             (periodic ok: {}, reflection ok: {})",
            report.max_violation, report.periodic_ok, report.reflection_ok
        )));
    }
    Ok(())
}

/// Numeric path for general symmetric f: one adaptive quadrature per reduced
/// term, with the tolerance split equally across the n terms and scaled by
/// each term's weight so the combined estimate meets `tol`. Rejects f that
/// fails the sampled symmetry check; see the `_unchecked` variant to
/// override.
pub fn integrate_even_numeric(n: u32, f: &FnExpr, tol: f64) -> Result<NumericResult> {
    require_symmetry(f)?;
    integrate_even_numeric_unchecked(n, f, tol)
}

/// [`integrate_even_numeric`] without the symmetry gate.
pub fn integrate_even_numeric_unchecked(n: u32, f: &FnExpr, tol: f64) -> Result<NumericResult> {
    check_tol(tol)?;
    let reduced = reduce_even(n)?;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut value = 0.0f64;
    let mut error = 0.0f64;
    let mut evaluations = 0u64;
    for term in reduced.terms() {
        let w = term.weight.to_f64();
        let exponent = 2 * term.j as i32;
        let term_tol = (tol / (n as f64 * w.abs())).max(1e-15);
        let r = adaptive_quad(
            |t: f64| Ok(t.sin().powi(exponent) * f.eval(t)?),
            0.0,
            half_pi,
            term_tol,
        )?;
        value += w * r.value;
        error += w.abs() * r.error_estimate;
        evaluations += r.evaluations;
    }
    Ok(NumericResult {
        value,
        error_estimate: error,
        evaluations,
        certified: false,
    })
}

/// Exact value of int_0^inf sin(x)^(2n+1)/x * f(x) dx for a sin^2-polynomial
/// weight: int_0^{pi/2} sin(t)^(2n) f(t) dt through Wallis integrals.
/// For f = 1 this is the classical (2n-1)!!/(2n)!! * pi/2.
pub fn integrate_odd_exact(n: u32, poly: &[Rational]) -> PiValue {
    let mut total = PiValue::zero();
    for (jp, a) in poly.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        total = total + wallis_integral(n + jp as u32) * a.clone();
    }
    total
}

/// Numeric odd-family path: adaptive quadrature of sin(t)^(2n) f(t) over
/// [0, pi/2]. Rejects f failing the symmetry check.
pub fn integrate_odd_numeric(n: u32, f: &FnExpr, tol: f64) -> Result<NumericResult> {
    require_symmetry(f)?;
    integrate_odd_numeric_unchecked(n, f, tol)
}

/// [`integrate_odd_numeric`] without the symmetry gate.
pub fn integrate_odd_numeric_unchecked(n: u32, f: &FnExpr, tol: f64) -> Result<NumericResult> {
    check_tol(tol)?;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let exponent = 2 * n as i32;
    adaptive_quad(
        |t: f64| Ok(t.sin().powi(exponent) * f.eval(t)?),
        0.0,
        half_pi,
        tol,
    )
}
