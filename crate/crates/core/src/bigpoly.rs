//! Dense univariate polynomials over arbitrary-precision integers.
//!
//! A [`Polynomial`] stores its coefficients by exponent: index `i` holds the
//! coefficient of `q^i`. The vector is always canonical (no trailing zeros),
//! so the zero polynomial is the empty vector and structural equality is
//! polynomial equality.
//!
//! Products are schoolbook. Every product checks its result degree against a
//! process-wide cap ([`degree_cap`], default 2^20, overridable through the
//! `QGAUSS_DEGREE_CAP` environment variable) so that an accidental huge
//! construction fails immediately instead of exhausting memory.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 1 << 20;
pub const DEGREE_CAP_ENV: &str = "QGAUSS_DEGREE_CAP";

/// The degree cap in force for this process.
///
/// Read once from `QGAUSS_DEGREE_CAP`; unparsable or zero values fall back
/// to [`DEFAULT_DEGREE_CAP`].
pub fn degree_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(DEGREE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_DEGREE_CAP)
    })
}

pub(crate) fn check_degree(degree: usize) -> Result<()> {
    let cap = degree_cap();
    if degree > cap {
        Err(Error::DegreeCapExceeded { degree, cap })
    } else {
        Ok(())
    }
}

/// Polynomial degree with a distinguished value for the zero polynomial.
///
/// `NegInfinity` orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

/// Quotient and remainder of a division by a monic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivRemResult {
    pub quotient: Polynomial,
    pub remainder: Polynomial,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * q^exponent`.
    pub fn monomial(c: impl Into<BigInt>, exponent: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exponent + 1];
        coeffs[exponent] = c;
        Polynomial { coeffs }
    }

    /// Builds a polynomial from coefficients in ascending exponent order,
    /// stripping trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^exponent`, zero past the degree.
    pub fn coeff(&self, exponent: usize) -> BigInt {
        self.coeffs.get(exponent).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            len => Degree::Finite(len - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Product under the process degree cap.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_mul_with_cap(other, degree_cap())
    }

    /// Schoolbook product, rejected up front if the result degree would
    /// exceed `cap`.
    pub fn checked_mul_with_cap(&self, other: &Polynomial, cap: usize) -> Result<Polynomial> {
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero());
        }
        let degree = self.coeffs.len() + other.coeffs.len() - 2;
        if degree > cap {
            return Err(Error::DegreeCapExceeded { degree, cap });
        }
        // Iterate the sparser operand in the outer loop.
        let (outer, inner) = if self.term_count() <= other.term_count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![BigInt::zero(); degree + 1];
        for (i, a) in outer.terms() {
            if a.is_one() {
                for (j, b) in inner.coeffs.iter().enumerate() {
                    out[i + j] += b;
                }
            } else if (-a).is_one() {
                for (j, b) in inner.coeffs.iter().enumerate() {
                    out[i + j] -= b;
                }
            } else {
                for (j, b) in inner.terms() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Polynomial::from_coeffs(out))
    }

    /// Multiplies by the geometric sum `1 + q^step + ... + q^((terms-1)*step)`.
    ///
    /// Equal to `checked_mul` against that sum, but linear in the size of
    /// the result: `r[i] = p[i] + r[i - step] - p[i - terms*step]`.
    pub fn mul_geometric(&self, terms: usize, step: usize) -> Result<Polynomial> {
        if terms == 0 {
            return Err(Error::ZeroArgument { name: "terms" });
        }
        if step == 0 {
            return Err(Error::ZeroArgument { name: "step" });
        }
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        let shift = (terms - 1)
            .checked_mul(step)
            .ok_or(Error::DegreeCapExceeded { degree: usize::MAX, cap: degree_cap() })?;
        let degree = self.coeffs.len() - 1 + shift;
        check_degree(degree)?;
        let span = terms * step;
        let mut out: Vec<BigInt> = Vec::with_capacity(degree + 1);
        for i in 0..=degree {
            let mut r = self.coeffs.get(i).cloned().unwrap_or_default();
            if i >= step {
                r += &out[i - step];
            }
            if i >= span {
                if let Some(c) = self.coeffs.get(i - span) {
                    r -= c;
                }
            }
            out.push(r);
        }
        Ok(Polynomial::from_coeffs(out))
    }

    /// Division with remainder by a monic divisor.
    ///
    /// Returns `(quotient, remainder)` with `dividend = divisor*quotient +
    /// remainder` and `deg remainder < deg divisor`. Integer coefficients are
    /// preserved because the divisor's leading coefficient is 1.
    pub fn divrem_monic(&self, divisor: &Polynomial) -> Result<DivRemResult> {
        let dd = match divisor.degree() {
            Degree::NegInfinity => return Err(Error::ZeroDivisor),
            Degree::Finite(d) => d,
        };
        if !divisor.is_monic() {
            return Err(Error::NonMonicDivisor(divisor.coeffs[dd].to_string()));
        }
        if self.coeffs.len() <= dd {
            return Ok(DivRemResult { quotient: Polynomial::zero(), remainder: self.clone() });
        }
        // Lower divisor terms, pre-classified to avoid multiplications by +-1.
        let lower: Vec<(usize, &BigInt)> = divisor.terms().filter(|&(k, _)| k < dd).collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut rem[i]);
            let base = i - dd;
            for &(k, dk) in &lower {
                if dk.is_one() {
                    rem[base + k] -= &c;
                } else if (-dk).is_one() {
                    rem[base + k] += &c;
                } else {
                    rem[base + k] -= &c * dk;
                }
            }
            quot[base] = c;
        }
        rem.truncate(dd);
        Ok(DivRemResult {
            quotient: Polynomial::from_coeffs(quot),
            remainder: Polynomial::from_coeffs(rem),
        })
    }

    /// The substitution `q -> q^k`.
    pub fn inflate(&self, k: usize) -> Result<Polynomial> {
        if k == 0 {
            return Err(Error::ZeroInflation);
        }
        if k == 1 || self.coeffs.len() <= 1 {
            return Ok(self.clone());
        }
        let degree = (self.coeffs.len() - 1)
            .checked_mul(k)
            .ok_or(Error::DegreeCapExceeded { degree: usize::MAX, cap: degree_cap() })?;
        check_degree(degree)?;
        let mut out = vec![BigInt::zero(); degree + 1];
        for (i, c) in self.terms() {
            out[i * k] = c.clone();
        }
        Ok(Polynomial::from_coeffs(out))
    }

    /// Horner evaluation at an integer.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Renders at most `max_terms` terms, followed by a total-term marker
    /// when the polynomial is longer.
    pub fn display_truncated(&self, max_terms: usize) -> String {
        let total = self.term_count();
        if total <= max_terms {
            return self.to_string();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms().take(max_terms).enumerate() {
            write_term(&mut s, idx == 0, e, c);
        }
        s.push_str(&format!(" + ... ({total} terms)"));
        s
    }
}

fn write_term(out: &mut String, first: bool, exponent: usize, c: &BigInt) {
    let negative = c.is_negative();
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let mag = c.abs();
    match exponent {
        0 => out.push_str(&mag.to_string()),
        _ => {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push('q');
            if exponent > 1 {
                out.push('^');
                out.push_str(&exponent.to_string());
            }
        }
    }
}

/// Ascending exponents: `1 + q^2`, `-1 + 2*q`, `1 - q`. Zero renders as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms().enumerate() {
            write_term(&mut s, idx == 0, e, c);
        }
        f.write_str(&s)
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let fail = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty input"));
        }

        // Split into signed terms; a sign directly after another sign is
        // folded into the term (`1 + -q` is accepted).
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut body = String::new();
        let mut expecting_term = true;
        for ch in compact.chars() {
            match ch {
                '+' | '-' if !body.is_empty() => {
                    terms.push((negative, std::mem::take(&mut body)));
                    negative = ch == '-';
                    expecting_term = true;
                }
                '+' | '-' if expecting_term => {
                    if ch == '-' {
                        negative = !negative;
                    }
                }
                _ => {
                    body.push(ch);
                    expecting_term = false;
                }
            }
        }
        if body.is_empty() {
            return Err(fail("dangling sign"));
        }
        terms.push((negative, body));

        let mut coeffs: Vec<BigInt> = Vec::new();
        for (negative, body) in terms {
            let (coeff, exponent) = parse_term(&body).map_err(|r| fail(&r))?;
            check_degree(exponent).map_err(|_| fail("exponent above the degree cap"))?;
            if coeffs.len() <= exponent {
                coeffs.resize(exponent + 1, BigInt::zero());
            }
            if negative {
                coeffs[exponent] -= coeff;
            } else {
                coeffs[exponent] += coeff;
            }
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

fn parse_term(body: &str) -> std::result::Result<(BigInt, usize), String> {
    let (coeff_part, var_part) = match body.find('q') {
        None => return body.parse::<BigInt>().map(|c| (c, 0)).map_err(|e| e.to_string()),
        Some(0) => ("", body),
        Some(pos) => {
            let head = &body[..pos];
            let head = head.strip_suffix('*').ok_or_else(|| format!("expected `*` before q in {body:?}"))?;
            (head, &body[pos..])
        }
    };
    let coeff = if coeff_part.is_empty() {
        BigInt::one()
    } else {
        coeff_part.parse::<BigInt>().map_err(|e| format!("bad coefficient {coeff_part:?}: {e}"))?
    };
    let rest = &var_part[1..];
    let exponent = if rest.is_empty() {
        1
    } else {
        let digits = rest.strip_prefix('^').ok_or_else(|| format!("unexpected {rest:?} after q"))?;
        digits.parse::<usize>().map_err(|e| format!("bad exponent {digits:?}: {e}"))?
    };
    Ok((coeff, exponent))
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        Polynomial::from_coeffs(out)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// # Panics
///
/// Panics if the product degree exceeds [`degree_cap`]; use
/// [`Polynomial::checked_mul`] to handle that case.
impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        match self.checked_mul(rhs) {
            Ok(p) => p,
            Err(e) => panic!("{e}"),
        }
    }
}

macro_rules! forward_owned {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(mut self) -> Polynomial {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let z = Polynomial::from_i64s(&[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.coeffs().len(), 0);
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert_eq!(Polynomial::from_i64s(&[1, 2, 0]).degree(), Degree::Finite(1));
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("1 + q") + &Polynomial::zero(), p("1 + q"));
        assert_eq!(&p("1 + q") + &p("-1 - q"), Polynomial::zero());
        assert_eq!(&p("1 + q") + &p("1 + q^2"), Polynomial::from_i64s(&[2, 1, 1]));
    }

    #[test]
    fn mul_examples() {
        let x = p("3 - 2*q + q^5");
        assert_eq!(&x * &Polynomial::one(), x);
        assert_eq!(&p("1 + q") * &p("1 + q^2"), Polynomial::from_i64s(&[1, 1, 1, 1]));
        assert_eq!(&p("1 - q") * &p("1 + q + q^2"), Polynomial::from_i64s(&[1, 0, 0, -1]));
    }

    #[test]
    fn mul_respects_cap() {
        let a = Polynomial::monomial(1, 10);
        assert_eq!(
            a.checked_mul_with_cap(&a, 19),
            Err(Error::DegreeCapExceeded { degree: 20, cap: 19 })
        );
        assert!(a.checked_mul_with_cap(&a, 20).is_ok());
    }

    #[test]
    fn mul_geometric_matches_schoolbook() {
        let x = p("2 - q + 5*q^3");
        for terms in 1..5 {
            for step in 1..4 {
                let g = Polynomial::from_coeffs(
                    (0..=(terms - 1) * step)
                        .map(|i| if i % step == 0 { BigInt::one() } else { BigInt::zero() })
                        .collect(),
                );
                assert_eq!(x.mul_geometric(terms, step).unwrap(), &x * &g);
            }
        }
        assert!(x.mul_geometric(0, 1).is_err());
        assert!(x.mul_geometric(1, 0).is_err());
    }

    #[test]
    fn divrem_examples() {
        let r = p("q + q^3").divrem_monic(&p("1 + q^2")).unwrap();
        assert_eq!(r.quotient, p("q"));
        assert!(r.remainder.is_zero());

        let x = p("7 - q^4 + 3*q^9");
        let r = x.divrem_monic(&Polynomial::one()).unwrap();
        assert_eq!(r.quotient, x);
        assert!(r.remainder.is_zero());

        let r = p("q^3").divrem_monic(&p("1 + q + q^2")).unwrap();
        assert_eq!(r.quotient, p("-1 + q"));
        assert_eq!(r.remainder, Polynomial::one());
    }

    #[test]
    fn divrem_rejects_bad_divisors() {
        let x = p("1 + q");
        assert_eq!(x.divrem_monic(&Polynomial::zero()), Err(Error::ZeroDivisor));
        assert!(matches!(x.divrem_monic(&p("1 + 2*q")), Err(Error::NonMonicDivisor(_))));
        assert!(matches!(x.divrem_monic(&p("-q")), Err(Error::NonMonicDivisor(_))));
    }

    #[test]
    fn divrem_small_dividend() {
        let r = p("5 + q").divrem_monic(&p("1 + q^2")).unwrap();
        assert!(r.quotient.is_zero());
        assert_eq!(r.remainder, p("5 + q"));
    }

    #[test]
    fn inflate_examples() {
        let x = p("1 - 4*q + q^2");
        assert_eq!(x.inflate(1).unwrap(), x);
        assert_eq!(p("1 + q").inflate(2).unwrap(), p("1 + q^2"));
        assert_eq!(p("1 + q + q^2").inflate(3).unwrap(), p("1 + q^3 + q^6"));
        assert_eq!(x.inflate(0), Err(Error::ZeroInflation));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Polynomial::zero().eval_int(&BigInt::from(17)), BigInt::zero());
        assert_eq!(p("1 + q + q^2 + q^3").eval_int(&BigInt::one()), BigInt::from(4));
        assert_eq!(p("q + q^3").eval_int(&BigInt::from(-1)), BigInt::from(-2));
    }

    #[test]
    fn render_format() {
        assert_eq!(Polynomial::from_i64s(&[1, 0, 1]).to_string(), "1 + q^2");
        assert_eq!(Polynomial::from_i64s(&[-1, 2]).to_string(), "-1 + 2*q");
        assert_eq!(Polynomial::from_i64s(&[0, -1, 0, -3]).to_string(), "-q - 3*q^3");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_i64s(&[0, 1]).to_string(), "q");
    }

    #[test]
    fn parse_variants() {
        assert_eq!(p("1 + -q"), p("1 - q"));
        assert_eq!(p("-q^2 + q^2"), Polynomial::zero());
        assert_eq!(p("2*q + 3*q"), p("5*q"));
        assert_eq!(p("  -12  "), Polynomial::constant(-12));
        for bad in ["", "1 +", "2q", "q^", "q^x", "1 + r"] {
            assert!(bad.parse::<Polynomial>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn truncated_rendering() {
        let x = Polynomial::from_i64s(&[1; 50]);
        let s = x.display_truncated(40);
        assert!(s.ends_with("+ ... (50 terms)"), "{s}");
        assert!(s.contains("q^39"));
        assert!(!s.contains("q^40"));
        assert_eq!(p("1 + q").display_truncated(40), "1 + q");
    }
}
