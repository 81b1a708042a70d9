//! Exact and certified-numeric evaluation of generalized Dirichlet integrals
//!
//! ```text
//! I_n(f) = int_0^inf (sin x / x)^(2n) f(x) dx        (even family)
//! J_n(f) = int_0^inf sin(x)^(2n+1) / x * f(x) dx     (odd family)
//! ```
//!
//! for weight functions with the period/reflection symmetries
//! f(x + pi) = f(x) and f(pi - x) = f(x). For such f both families reduce to
//! finite combinations of int_0^{pi/2} sin(t)^(2j) f(t) dt: the even case via
//! the cosecant-power expansion of the lattice sum (module [`csc`]), the odd
//! case by absorbing sin^(2n) into the weight. When f is a polynomial in
//! sin^2 x the result is an exact rational multiple of pi ([`exact::PiValue`]);
//! otherwise adaptive quadrature produces a floating value with an error
//! estimate (module [`quad`]).
//!
//! The classical entry points of the family, used throughout the tests:
//!
//! ```text
//! n = 1, f = 1:  pi/2        n = 2, f = 1:  pi/3
//! n = 3, f = 1:  11 pi/40    n = 4, f = 1:  151 pi/630
//! n = 5, f = 1:  15619 pi/72576
//! ```
//!
//! Oracles for cross-validation live alongside the fast paths: truncated
//! lattice sums ([`csc::lattice_sum_truncated`]), direct quadrature of the
//! oscillatory integral over many periods ([`quad::direct_oscillatory`]), and
//! a paired-half-period evaluator for the conditionally convergent
//! sin(x)/x form ([`quad::dirichlet_conditional`]).

pub mod csc;
pub mod error;
pub mod exact;
pub mod expr;
mod fixed;
pub mod quad;
pub mod reduce;
pub mod series;

pub use error::{Error, Result};
pub use exact::{double_factorial, pi_value_to_decimal, rat_normalize, PiValue, Rational};
pub use expr::{check_symmetry, check_symmetry_default, parse, FnExpr, SymmetryReport};
pub use quad::{dirichlet_conditional, direct_oscillatory, finite_quad, NumericResult};
pub use reduce::{
    integrate_even_exact, integrate_even_numeric, integrate_odd_exact, integrate_odd_numeric,
    reduce_even, wallis_integral, ReducedForm, ReducedTerm,
};
