//! Cyclotomic polynomials and exact arithmetic in `Z[zeta_m] = Z[q]/(Phi_m)`.
//!
//! Elements are stored in the power basis as residues of degree below
//! `phi(m)`. Evaluating a polynomial at `zeta_m^s` first folds exponents
//! modulo `m` (since `zeta_m^m = 1`) and then reduces modulo `Phi_m`, so the
//! result is exact and canonical: two evaluations are equal as algebraic
//! integers iff their residues are equal.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::bigpoly::Polynomial;
use crate::error::{positive, Error, Result};
use crate::numth;

type PhiCache = RwLock<HashMap<u64, Arc<Polynomial>>>;

fn phi_cache() -> &'static PhiCache {
    static CACHE: OnceLock<PhiCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `q^d - 1`
fn q_power_minus_one(d: usize) -> Polynomial {
    &Polynomial::monomial(1, d) - &Polynomial::one()
}

fn build_cyclotomic(m: u64) -> Result<Polynomial> {
    let mut numerator = Polynomial::one();
    let mut denominator = Polynomial::one();
    for d in numth::divisors(m)? {
        let factor = q_power_minus_one(d as usize);
        match numth::mobius(m / d)? {
            1 => numerator = numerator.checked_mul(&factor)?,
            -1 => denominator = denominator.checked_mul(&factor)?,
            _ => {}
        }
    }
    let division = numerator.divrem_monic(&denominator)?;
    if !division.remainder.is_zero() {
        return Err(Error::Internal(format!(
            "Möbius quotient for Phi_{m} left remainder {}",
            division.remainder.display_truncated(10)
        )));
    }
    Ok(division.quotient)
}

fn cyclotomic_shared(m: u64) -> Result<Arc<Polynomial>> {
    positive(m, "m")?;
    if let Some(phi) = phi_cache().read().expect("cyclotomic cache poisoned").get(&m) {
        return Ok(Arc::clone(phi));
    }
    // Built outside the lock; a racing thread may build the same value.
    let phi = Arc::new(build_cyclotomic(m)?);
    let mut cache = phi_cache().write().expect("cyclotomic cache poisoned");
    Ok(Arc::clone(cache.entry(m).or_insert(phi)))
}

/// The `m`-th cyclotomic polynomial, by Möbius inversion of
/// `q^m - 1 = prod_{d|m} Phi_d`. Cached per process.
pub fn cyclotomic_poly(m: u64) -> Result<Polynomial> {
    cyclotomic_shared(m).map(|phi| (*phi).clone())
}

/// An element of `Z[zeta_m]`, as a residue modulo `Phi_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElem {
    order: u64,
    residue: Polynomial,
}

impl CycloElem {
    pub fn zero(m: u64) -> Result<Self> {
        positive(m, "m")?;
        Ok(CycloElem { order: m, residue: Polynomial::zero() })
    }

    pub fn one(m: u64) -> Result<Self> {
        Self::from_integer(BigInt::one(), m)
    }

    pub fn from_integer(c: impl Into<BigInt>, m: u64) -> Result<Self> {
        positive(m, "m")?;
        // Phi_1 = q - 1 has degree 1, so constants are already reduced for every m.
        Ok(CycloElem { order: m, residue: Polynomial::constant(c) })
    }

    /// `zeta_m^s`
    pub fn root_power(m: u64, s: i64) -> Result<Self> {
        eval_at_root(&Polynomial::monomial(1, 1), m, s)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn residue(&self) -> &Polynomial {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    fn check_order(&self, other: &CycloElem) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &CycloElem) -> Result<CycloElem> {
        self.check_order(other)?;
        Ok(CycloElem { order: self.order, residue: &self.residue + &other.residue })
    }

    pub fn checked_mul(&self, other: &CycloElem) -> Result<CycloElem> {
        self.check_order(other)?;
        let product = self.residue.checked_mul(&other.residue)?;
        Ok(CycloElem { order: self.order, residue: reduce(product, self.order)? })
    }

    /// The element as an ordinary integer, if it lies in `Z`.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        match self.residue.coeffs() {
            [] => Some(BigInt::zero()),
            [c] => Some(c.clone()),
            _ => None,
        }
    }
}

fn reduce(p: Polynomial, m: u64) -> Result<Polynomial> {
    let phi = cyclotomic_shared(m)?;
    if p.degree() < phi.degree() {
        return Ok(p);
    }
    Ok(p.divrem_monic(&phi)?.remainder)
}

/// `p(zeta_m^s)`, computed exactly. Any integer `s` is accepted and taken
/// modulo `m`.
pub fn eval_at_root(p: &Polynomial, m: u64, s: i64) -> Result<CycloElem> {
    positive(m, "m")?;
    let m128 = m as u128;
    let s_mod = s.rem_euclid(m as i64) as u128;
    let mut folded = vec![BigInt::zero(); m as usize];
    for (e, c) in p.terms() {
        let idx = (e as u128 % m128) * s_mod % m128;
        folded[idx as usize] += c;
    }
    let residue = reduce(Polynomial::from_coeffs(folded), m)?;
    Ok(CycloElem { order: m, residue })
}

pub fn cyclo_add(x: &CycloElem, y: &CycloElem) -> Result<CycloElem> {
    x.checked_add(y)
}

pub fn cyclo_mul(x: &CycloElem, y: &CycloElem) -> Result<CycloElem> {
    x.checked_mul(y)
}

pub fn as_rational_integer(x: &CycloElem) -> Option<BigInt> {
    x.as_rational_integer()
}

/// `(m/g)^g` with `g = gcd(m, t)`.
pub fn lemma2_closed_form(m: u64, t: u64) -> Result<BigInt> {
    positive(m, "m")?;
    positive(t, "t")?;
    let g = numth::gcd_unchecked(m, t);
    Ok(Pow::pow(BigInt::from(m / g), g))
}

/// `prod_{1<=j<=m, m does not divide jt} (1 - zeta_m^{jt})`, multiplied out in
/// `Z[zeta_m]` and checked to be the integer `(m/g)^g` with `g = gcd(m, t)`.
///
/// Fails with [`Error::VerificationFailure`] if the product is irrational or
/// differs from the closed form.
pub fn lemma2_product(m: u64, t: u64) -> Result<BigInt> {
    positive(m, "m")?;
    positive(t, "t")?;
    let mut acc = CycloElem::one(m)?;
    let t_mod = t % m;
    for j in 1..=m {
        let e = (j % m) * t_mod % m;
        if e == 0 {
            continue;
        }
        let factor = eval_at_root(&(&Polynomial::one() - &Polynomial::monomial(1, e as usize)), m, 1)?;
        acc = acc.checked_mul(&factor)?;
    }
    let value = acc.as_rational_integer().ok_or_else(|| {
        Error::VerificationFailure(format!(
            "product for m={m}, t={t} is not rational: {}",
            acc.residue.display_truncated(40)
        ))
    })?;
    let expected = lemma2_closed_form(m, t)?;
    if value != expected {
        return Err(Error::VerificationFailure(format!(
            "product for m={m}, t={t} is {value}, expected {expected}"
        )));
    }
    Ok(value)
}

/// Operator forms panic on mismatched orders.
impl Add for &CycloElem {
    type Output = CycloElem;

    fn add(self, rhs: &CycloElem) -> CycloElem {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &CycloElem {
    type Output = CycloElem;

    fn mul(self, rhs: &CycloElem) -> CycloElem {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;

    fn neg(self) -> CycloElem {
        CycloElem { order: self.order, residue: -&self.residue }
    }
}
