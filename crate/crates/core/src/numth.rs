//! Divisors, gcd, the Möbius function and Euler's totient.
//!
//! Inputs here stay small (well under 10^6), so factorization is plain trial
//! division.

use crate::error::{positive, Error, Result};

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationTable {
    pub value: u64,
    /// `(prime, exponent)` pairs, primes strictly ascending, exponents >= 1.
    pub prime_powers: Vec<(u64, u32)>,
}

impl FactorizationTable {
    pub fn is_squarefree(&self) -> bool {
        self.prime_powers.iter().all(|&(_, e)| e == 1)
    }
}

pub fn factorize(n: u64) -> Result<FactorizationTable> {
    positive(n, "n")?;
    let mut rest = n;
    let mut prime_powers = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            prime_powers.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        prime_powers.push((rest, 1));
    }
    Ok(FactorizationTable { value: n, prime_powers })
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).is_ok_and(|f| f.prime_powers == [(n, 1)])
}

/// All divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    positive(n, "n")?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

pub fn mobius(n: u64) -> Result<i8> {
    let f = factorize(n)?;
    if !f.is_squarefree() {
        return Ok(0);
    }
    Ok(if f.prime_powers.len() % 2 == 0 { 1 } else { -1 })
}

/// Greatest common divisor; `(0, 0)` is rejected since every integer divides it.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::Precondition("gcd(0, 0) is undefined".into()));
    }
    Ok(gcd_unchecked(a, b))
}

pub(crate) fn gcd_unchecked(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.prime_powers
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1)))
}

/// Number of `j` in `1..=m` with `m | j*t`, found by walking every `j`.
///
/// This deliberately does not shortcut to `gcd(m, t)`: it exists to check
/// that identity.
pub fn lemma1_count(m: u64, t: u64) -> Result<u64> {
    positive(m, "m")?;
    positive(t, "t")?;
    let t_mod = t % m;
    Ok((1..=m).filter(|&j| (j % m) * t_mod % m == 0).count() as u64)
}
