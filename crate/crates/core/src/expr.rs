//! Weight-function expressions: parsing, evaluation, symmetry checking, and
//! detection of polynomials in sin^2 x (the gate to the exact path).
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' uint]
//! atom   := number | 'x' | 'pi'
//!         | ('sin' | 'cos' | 'abs') '(' expr ')'
//!         | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`. Exponents are
//! nonnegative integer literals. Number literals are decimal ("2", "0.25")
//! and are stored exactly; fractions like "2/3" come out as division nodes
//! with the same value.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Parsed weight-function expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FnExpr {
    Number(Rational),
    Pi,
    Var,
    Neg(Box<FnExpr>),
    Sin(Box<FnExpr>),
    Cos(Box<FnExpr>),
    Abs(Box<FnExpr>),
    Add(Box<FnExpr>, Box<FnExpr>),
    Sub(Box<FnExpr>, Box<FnExpr>),
    Mul(Box<FnExpr>, Box<FnExpr>),
    Div(Box<FnExpr>, Box<FnExpr>),
    Pow(Box<FnExpr>, u32),
}

/// Result of sampling the period/reflection symmetries of a weight function.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    /// max |f(x + pi) - f(x)| stayed within tolerance
    pub periodic_ok: bool,
    /// max |f(pi - x) - f(x)| stayed within tolerance
    pub reflection_ok: bool,
    /// largest violation seen across both checks
    pub max_violation: f64,
    pub samples: u32,
}

impl SymmetryReport {
    pub fn ok(&self) -> bool {
        self.periodic_ok && self.reflection_ok
    }
}

// ---------------------------------------------------------------------------
// lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num { value: Rational, has_dot: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Spanned { tok: Tok::Plus, pos: i });
                i += 1;
            }
            '-' => {
                out.push(Spanned { tok: Tok::Minus, pos: i });
                i += 1;
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, pos: i });
                i += 1;
            }
            '/' => {
                out.push(Spanned { tok: Tok::Slash, pos: i });
                i += 1;
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, pos: i });
                i += 1;
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, pos: i });
                i += 1;
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, pos: i });
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                let mut has_dot = false;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    if bytes[i] == b'.' {
                        if has_dot {
                            return Err(Error::Syntax {
                                position: i,
                                message: "unexpected second '.' in number".into(),
                            });
                        }
                        has_dot = true;
                    }
                    i += 1;
                }
                let lit = &text[start..i];
                let value = parse_decimal(lit).ok_or_else(|| Error::Syntax {
                    position: start,
                    message: format!("invalid number literal '{lit}'"),
                })?;
                out.push(Spanned {
                    tok: Tok::Num { value, has_dot },
                    pos: start,
                });
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(text[start..i].to_string()),
                    pos: start,
                });
            }
            _ => {
                return Err(Error::Syntax {
                    position: i,
                    message: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(out)
}

/// Exact rational value of a decimal literal ("0.25" -> 1/4).
fn parse_decimal(lit: &str) -> Option<Rational> {
    let (int_part, frac_part) = match lit.split_once('.') {
        Some((a, b)) => (a, b),
        None => (lit, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits: String = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let numer: num::BigInt = digits.parse().ok()?;
    let denom = num::BigInt::from(10u32).pow(frac_part.len() as u32);
    Rational::from_bigints(numer, denom).ok()
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    toks: &'a [Spanned],
    cursor: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cursor).map(|s| &s.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.cursor).map_or(self.end, |s| s.pos)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.cursor).map(|s| &s.tok);
        self.cursor += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.cursor += 1;
            Ok(())
        } else {
            Err(Error::Syntax {
                position: self.pos(),
                message: format!("expected {what}"),
            })
        }
    }

    fn expr(&mut self) -> Result<FnExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.cursor += 1;
                    lhs = FnExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.cursor += 1;
                    lhs = FnExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<FnExpr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.cursor += 1;
                    lhs = FnExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.cursor += 1;
                    lhs = FnExpr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<FnExpr> {
        if self.peek() == Some(&Tok::Minus) {
            self.cursor += 1;
            Ok(FnExpr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<FnExpr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.cursor += 1;
            let pos = self.pos();
            match self.bump().cloned() {
                Some(Tok::Num { value, has_dot }) => {
                    if has_dot || !value.is_integer() {
                        return Err(Error::Syntax {
                            position: pos,
                            message: "exponent must be a nonnegative integer".into(),
                        });
                    }
                    let k = num::ToPrimitive::to_u32(value.numer()).ok_or(Error::Syntax {
                        position: pos,
                        message: "exponent too large".into(),
                    })?;
                    Ok(FnExpr::Pow(Box::new(base), k))
                }
                Some(Tok::Minus) => Err(Error::Syntax {
                    position: pos,
                    message: "exponent must be nonnegative".into(),
                }),
                _ => Err(Error::Syntax {
                    position: pos,
                    message: "expected integer exponent after '^'".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<FnExpr> {
        let pos = self.pos();
        match self.bump().cloned() {
            Some(Tok::Num { value, .. }) => Ok(FnExpr::Number(value)),
            Some(Tok::Ident(name)) => match name.as_str() {
                "x" => Ok(FnExpr::Var),
                "pi" => Ok(FnExpr::Pi),
                "sin" | "cos" | "abs" => {
                    self.expect(Tok::LParen, "'(' after function name")?;
                    let arg = Box::new(self.expr()?);
                    self.expect(Tok::RParen, "')'")?;
                    Ok(match name.as_str() {
                        "sin" => FnExpr::Sin(arg),
                        "cos" => FnExpr::Cos(arg),
                        _ => FnExpr::Abs(arg),
                    })
                }
                _ => Err(Error::Syntax {
                    position: pos,
                    message: format!("unknown identifier '{name}'"),
                }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(other) => Err(Error::Syntax {
                position: pos,
                message: format!("unexpected token {other:?}"),
            }),
            None => Err(Error::Syntax {
                position: pos,
                message: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parse an expression. Printing the result and reparsing yields a
/// structurally identical tree.
pub fn parse(text: &str) -> Result<FnExpr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        cursor: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.cursor != toks.len() {
        return Err(Error::Syntax {
            position: p.pos(),
            message: "unexpected trailing input".into(),
        });
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// printing
// ---------------------------------------------------------------------------

// binding strength: Add/Sub 1, Mul/Div 2, Neg 3, Pow 4, atoms 5
fn prec(e: &FnExpr) -> u8 {
    match e {
        FnExpr::Add(..) | FnExpr::Sub(..) => 1,
        FnExpr::Mul(..) | FnExpr::Div(..) => 2,
        FnExpr::Neg(_) => 3,
        FnExpr::Pow(..) => 4,
        FnExpr::Number(r) if r.is_negative() => 3,
        _ => 5,
    }
}

fn fmt_prec(e: &FnExpr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let wrap = prec(e) < min;
    if wrap {
        write!(f, "(")?;
    }
    match e {
        FnExpr::Number(r) => {
            if r.is_integer() {
                write!(f, "{}", r.numer())?;
            } else {
                // parser-produced literals have 2^a 5^b denominators and a
                // finite decimal form; anything else falls back to p/q
                match decimal_form(r) {
                    Some(s) => write!(f, "{s}")?,
                    None => write!(f, "{r}")?,
                }
            }
        }
        FnExpr::Pi => write!(f, "pi")?,
        FnExpr::Var => write!(f, "x")?,
        FnExpr::Neg(inner) => {
            write!(f, "-")?;
            fmt_prec(inner, 3, f)?;
        }
        FnExpr::Sin(a) => {
            write!(f, "sin(")?;
            fmt_prec(a, 0, f)?;
            write!(f, ")")?;
        }
        FnExpr::Cos(a) => {
            write!(f, "cos(")?;
            fmt_prec(a, 0, f)?;
            write!(f, ")")?;
        }
        FnExpr::Abs(a) => {
            write!(f, "abs(")?;
            fmt_prec(a, 0, f)?;
            write!(f, ")")?;
        }
        FnExpr::Add(a, b) => {
            fmt_prec(a, 1, f)?;
            write!(f, " + ")?;
            fmt_prec(b, 2, f)?;
        }
        FnExpr::Sub(a, b) => {
            fmt_prec(a, 1, f)?;
            write!(f, " - ")?;
            fmt_prec(b, 2, f)?;
        }
        FnExpr::Mul(a, b) => {
            fmt_prec(a, 2, f)?;
            write!(f, " * ")?;
            fmt_prec(b, 3, f)?;
        }
        FnExpr::Div(a, b) => {
            fmt_prec(a, 2, f)?;
            write!(f, " / ")?;
            fmt_prec(b, 3, f)?;
        }
        FnExpr::Pow(base, k) => {
            fmt_prec(base, 5, f)?;
            write!(f, "^{k}")?;
        }
    }
    if wrap {
        write!(f, ")")?;
    }
    Ok(())
}

/// Finite decimal rendering for rationals with denominator 2^a 5^b.
fn decimal_form(r: &Rational) -> Option<String> {
    use num::{BigInt, One, Signed, Zero};
    let mut d = r.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scale = BigInt::from(10u32).pow(places);
    let scaled = (r.numer() * &scale / r.denom()).abs();
    let int_part = &scaled / &scale;
    let frac = (&scaled % &scale).to_string();
    let sign = if r.is_negative() { "-" } else { "" };
    Some(format!(
        "{sign}{int_part}.{frac:0>width$}",
        width = places as usize
    ))
}

impl fmt::Display for FnExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 0, f)
    }
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

impl FnExpr {
    /// Recursive evaluation at a point. A division whose denominator falls
    /// below 1e-15 in magnitude reports the evaluation point.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            FnExpr::Number(r) => Ok(r.to_f64()),
            FnExpr::Pi => Ok(std::f64::consts::PI),
            FnExpr::Var => Ok(x),
            FnExpr::Neg(a) => Ok(-a.eval(x)?),
            FnExpr::Sin(a) => Ok(a.eval(x)?.sin()),
            FnExpr::Cos(a) => Ok(a.eval(x)?.cos()),
            FnExpr::Abs(a) => Ok(a.eval(x)?.abs()),
            FnExpr::Add(a, b) => Ok(a.eval(x)? + b.eval(x)?),
            FnExpr::Sub(a, b) => Ok(a.eval(x)? - b.eval(x)?),
            FnExpr::Mul(a, b) => Ok(a.eval(x)? * b.eval(x)?),
            FnExpr::Div(a, b) => {
                let den = b.eval(x)?;
                if den.abs() < 1e-15 {
                    return Err(Error::DivisionByZero(x));
                }
                Ok(a.eval(x)? / den)
            }
            FnExpr::Pow(base, k) => {
                let b = base.eval(x)?;
                if *k <= i32::MAX as u32 {
                    Ok(b.powi(*k as i32))
                } else {
                    Ok(b.powf(*k as f64))
                }
            }
        }
    }

    /// True if the expression mentions the variable x.
    pub fn contains_var(&self) -> bool {
        match self {
            FnExpr::Var => true,
            FnExpr::Number(_) | FnExpr::Pi => false,
            FnExpr::Neg(a) | FnExpr::Sin(a) | FnExpr::Cos(a) | FnExpr::Abs(a) => a.contains_var(),
            FnExpr::Add(a, b) | FnExpr::Sub(a, b) | FnExpr::Mul(a, b) | FnExpr::Div(a, b) => {
                a.contains_var() || b.contains_var()
            }
            FnExpr::Pow(a, _) => a.contains_var(),
        }
    }

    /// If the function rewrites to sum_j a_j (sin^2 x)^j with rational
    /// coefficients, return [a_0, .., a_d]. The rewriter is structural and
    /// conservative: cos^2 x becomes 1 - sin^2 x, sums/products/integer
    /// powers combine, division is allowed by nonzero constants only, and
    /// abs of an even power is dropped. Absence is a value, not an error.
    pub fn as_sin_squared_polynomial(&self) -> Option<Vec<Rational>> {
        let poly = self.sin2_poly()?;
        Some(trim(poly))
    }

    fn sin2_poly(&self) -> Option<Vec<Rational>> {
        match self {
            FnExpr::Number(r) => Some(vec![r.clone()]),
            FnExpr::Pi | FnExpr::Var | FnExpr::Sin(_) | FnExpr::Cos(_) => None,
            FnExpr::Neg(a) => Some(poly_neg(a.sin2_poly()?)),
            FnExpr::Abs(a) => match a.as_ref() {
                FnExpr::Number(r) => Some(vec![r.abs()]),
                FnExpr::Pow(_, k) if k % 2 == 0 => a.sin2_poly(),
                _ => None,
            },
            FnExpr::Add(a, b) => Some(poly_add(&a.sin2_poly()?, &b.sin2_poly()?)),
            FnExpr::Sub(a, b) => Some(poly_add(&a.sin2_poly()?, &poly_neg(b.sin2_poly()?))),
            FnExpr::Mul(a, b) => Some(poly_mul(&a.sin2_poly()?, &b.sin2_poly()?)),
            FnExpr::Div(a, b) => {
                let den = trim(b.sin2_poly()?);
                if den.len() != 1 || den[0].is_zero() {
                    return None;
                }
                let num = a.sin2_poly()?;
                num.iter().map(|c| c.checked_div(&den[0]).ok()).collect()
            }
            FnExpr::Pow(base, k) => match base.as_ref() {
                FnExpr::Sin(arg) if arg.as_ref() == &FnExpr::Var => {
                    if k % 2 == 0 {
                        Some(monomial(k / 2))
                    } else {
                        None
                    }
                }
                FnExpr::Cos(arg) if arg.as_ref() == &FnExpr::Var => {
                    if k % 2 == 0 {
                        // cos^2 = 1 - sin^2
                        Some(poly_pow(&[Rational::one(), -Rational::one()], k / 2))
                    } else {
                        None
                    }
                }
                _ => Some(poly_pow(&base.sin2_poly()?, *k)),
            },
        }
    }
}

fn monomial(degree: u32) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); degree as usize + 1];
    v[degree as usize] = Rational::one();
    v
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

fn poly_neg(p: Vec<Rational>) -> Vec<Rational> {
    p.into_iter().map(|c| -c).collect()
}

fn poly_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    out
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(ca * cb);
        }
    }
    out
}

fn poly_pow(base: &[Rational], k: u32) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for _ in 0..k {
        out = poly_mul(&out, base);
    }
    out
}

// ---------------------------------------------------------------------------
// symmetry checking
// ---------------------------------------------------------------------------

/// Default sample count for [`check_symmetry`].
pub const SYMMETRY_SAMPLES: u32 = 256;
/// Default violation tolerance for [`check_symmetry`].
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Sample |f(x + pi) - f(x)| and |f(pi - x) - f(x)| on the midpoint grid
/// x_i = (i + 1/2) pi / samples over [0, pi). Requires samples >= 8.
pub fn check_symmetry(f: &FnExpr, samples: u32, tol: f64) -> Result<SymmetryReport> {
    if samples < 8 {
        return Err(Error::Domain(format!(
            "symmetry check needs at least 8 samples, got {samples}"
        )));
    }
    let pi = std::f64::consts::PI;
    let mut periodic_max = 0.0f64;
    let mut reflect_max = 0.0f64;
    for i in 0..samples {
        let x = (i as f64 + 0.5) * pi / samples as f64;
        let base = f.eval(x)?;
        periodic_max = periodic_max.max((f.eval(x + pi)? - base).abs());
        reflect_max = reflect_max.max((f.eval(pi - x)? - base).abs());
    }
    Ok(SymmetryReport {
        periodic_ok: periodic_max <= tol,
        reflection_ok: reflect_max <= tol,
        max_violation: periodic_max.max(reflect_max),
        samples,
    })
}

/// [`check_symmetry`] with the default grid (256 samples, tol 1e-9).
pub fn check_symmetry_default(f: &FnExpr) -> Result<SymmetryReport> {
    check_symmetry(f, SYMMETRY_SAMPLES, SYMMETRY_TOL)
}
