//! q-integers, q-Pochhammer symbols and the Möbius-weighted Pochhammer sum
//!
//! ```text
//! F(q) = sum_{d | n} mu(d) * (q^{ad}; q^{ad})_{n/d} / (q^d; q^d)_{n/d}
//! ```
//!
//! Each quotient is assembled as the product of q-integers
//! `prod_{j=1}^{n/d} [a]_{q^{jd}}`, so `F` is built without any rational
//! function arithmetic. The Pochhammer quotient form is kept only as a
//! cross-check (see the tests).

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::bigpoly::{check_degree, Polynomial};
use crate::error::{positive, Error, Result};
use crate::numth;

fn to_usize(v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Precondition(format!("{v} does not fit in usize")))
}

fn exponent_product(a: usize, b: usize) -> Result<usize> {
    let e = a.checked_mul(b).ok_or(Error::DegreeCapExceeded {
        degree: usize::MAX,
        cap: crate::bigpoly::degree_cap(),
    })?;
    check_degree(e)?;
    Ok(e)
}

/// `[n]_{q^k} = 1 + q^k + q^{2k} + ... + q^{(n-1)k}`.
pub fn q_integer(n: u64, k: u64) -> Result<Polynomial> {
    let n = to_usize(positive(n, "n")?)?;
    let k = to_usize(positive(k, "k")?)?;
    let degree = exponent_product(n - 1, k)?;
    let mut coeffs = vec![BigInt::zero(); degree + 1];
    for i in 0..n {
        coeffs[i * k] = BigInt::one();
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

/// `(q^{x_exp}; q^{step_exp})_n = prod_{i=0}^{n-1} (1 - q^{x_exp + i*step_exp})`,
/// with the empty product 1 when `n = 0`.
pub fn q_pochhammer(x_exp: u64, step_exp: u64, n: u64) -> Result<Polynomial> {
    let step = to_usize(positive(step_exp, "step_exp")?)?;
    let x = to_usize(x_exp)?;
    let mut acc = Polynomial::one();
    for i in 0..to_usize(n)? {
        let e = exponent_product(i, step)?
            .checked_add(x)
            .ok_or(Error::Precondition("exponent overflow".into()))?;
        let factor = &Polynomial::one() - &Polynomial::monomial(1, e);
        acc = acc.checked_mul(&factor)?;
    }
    Ok(acc)
}

/// `(q^{ad}; q^{ad})_{n/d} / (q^d; q^d)_{n/d}`, computed as
/// `prod_{j=1}^{n/d} [a]_{q^{jd}}`.
pub fn pochhammer_quotient(n: u64, a: u64, d: u64) -> Result<Polynomial> {
    positive(n, "n")?;
    positive(a, "a")?;
    positive(d, "d")?;
    if n % d != 0 {
        return Err(Error::Precondition(format!("{d} does not divide {n}")));
    }
    let a = to_usize(a)?;
    let d = to_usize(d)?;
    let mut acc = Polynomial::one();
    if a == 1 {
        return Ok(acc);
    }
    for j in 1..=to_usize(n)? / d {
        acc = acc.mul_geometric(a, exponent_product(j, d)?)?;
    }
    Ok(acc)
}

/// The sum `F(q)` for the pair `(n, a)`.
pub fn gauss_q_polynomial(n: u64, a: u64) -> Result<Polynomial> {
    positive(n, "n")?;
    positive(a, "a")?;
    if a == 1 {
        // Every quotient is 1, leaving sum_{d|n} mu(d).
        return Ok(if n == 1 { Polynomial::one() } else { Polynomial::zero() });
    }
    let mut acc = Polynomial::zero();
    for d in numth::divisors(n)? {
        let term = pochhammer_quotient(n, a, d)?;
        acc = match numth::mobius(d)? {
            1 => &acc + &term,
            -1 => &acc - &term,
            _ => continue,
        };
    }
    Ok(acc)
}

/// The classical sum `sum_{d|n} mu(d) a^{n/d}`.
pub fn gauss_classical_sum(n: u64, a: u64) -> Result<BigInt> {
    positive(n, "n")?;
    positive(a, "a")?;
    let base = BigInt::from(a);
    let mut total = BigInt::zero();
    for d in numth::divisors(n)? {
        let power: BigInt = Pow::pow(&base, n / d);
        match numth::mobius(d)? {
            1 => total += power,
            -1 => total -= power,
            _ => {}
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn q_integer_examples() {
        for k in 1..5 {
            assert_eq!(q_integer(1, k).unwrap(), Polynomial::one());
        }
        assert_eq!(q_integer(4, 1).unwrap(), p("1 + q + q^2 + q^3"));
        assert_eq!(q_integer(3, 2).unwrap(), p("1 + q^2 + q^4"));
        assert!(q_integer(0, 1).is_err());
        assert!(q_integer(1, 0).is_err());
    }

    #[test]
    fn q_integer_shape_and_inflation() {
        for n in 1..=20 {
            for k in 1..=6 {
                let x = q_integer(n, k).unwrap();
                assert_eq!(x.term_count() as u64, n);
                assert!(x.terms().all(|(_, c)| c.is_one()));
                assert!(x.is_monic());
                assert_eq!(x, q_integer(n, 1).unwrap().inflate(k as usize).unwrap());
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(q_pochhammer(3, 2, 0).unwrap(), Polynomial::one());
        assert_eq!(q_pochhammer(0, 7, 0).unwrap(), Polynomial::one());
        assert_eq!(q_pochhammer(1, 1, 2).unwrap(), p("1 - q - q^2 + q^3"));
        assert_eq!(q_pochhammer(2, 2, 1).unwrap(), p("1 - q^2"));
        assert!(q_pochhammer(1, 0, 3).is_err());
    }

    #[test]
    fn quotient_examples() {
        for n in 1..=8 {
            for d in numth::divisors(n).unwrap() {
                assert_eq!(pochhammer_quotient(n, 1, d).unwrap(), Polynomial::one());
            }
        }
        assert_eq!(pochhammer_quotient(2, 2, 1).unwrap(), p("1 + q + q^2 + q^3"));
        assert_eq!(pochhammer_quotient(2, 2, 2).unwrap(), p("1 + q^2"));
        assert!(pochhammer_quotient(6, 2, 4).is_err());
    }

    #[test]
    fn quotient_times_denominator_is_numerator() {
        for n in 1..=24u64 {
            for a in 1..=12u64 {
                for d in numth::divisors(n).unwrap() {
                    let quotient = pochhammer_quotient(n, a, d).unwrap();
                    let den = q_pochhammer(d, d, n / d).unwrap();
                    let num = q_pochhammer(a * d, a * d, n / d).unwrap();
                    assert_eq!(&quotient * &den, num, "n={n} a={a} d={d}");
                }
            }
        }
    }

    #[test]
    fn gauss_polynomial_examples() {
        for a in 1..=6 {
            assert_eq!(gauss_q_polynomial(1, a).unwrap(), q_integer(a, 1).unwrap());
        }
        assert_eq!(gauss_q_polynomial(2, 2).unwrap(), p("q + q^3"));
        assert_eq!(
            gauss_q_polynomial(3, 2).unwrap(),
            p("q + q^2 + q^3 + q^4 + q^5 + q^6")
        );
        for n in 2..10 {
            assert!(gauss_q_polynomial(n, 1).unwrap().is_zero());
        }
    }

    #[test]
    fn classical_sum_examples() {
        assert_eq!(gauss_classical_sum(1, 9).unwrap(), BigInt::from(9));
        assert_eq!(gauss_classical_sum(4, 2).unwrap(), BigInt::from(12));
        assert_eq!(gauss_classical_sum(6, 2).unwrap(), BigInt::from(54));
    }

    #[test]
    fn evaluation_at_one_is_classical_sum() {
        for n in 1..=20u64 {
            for a in 1..=10u64 {
                let f = gauss_q_polynomial(n, a).unwrap();
                assert_eq!(
                    f.eval_int(&BigInt::one()),
                    gauss_classical_sum(n, a).unwrap(),
                    "n={n} a={a}"
                );
            }
        }
    }
}
