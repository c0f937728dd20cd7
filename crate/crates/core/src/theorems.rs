//! Executable checks, one per statement, each producing a
//! [`VerificationReport`].
//!
//! The main check divides `F(q)` by `[n]_{q^b}` with `b = gcd(n, a)`. The
//! root-vanishing engine reaches the same conclusion by an independent path:
//! `[n]_{q^b}` is squarefree with roots exactly the `zeta_{nb}^s` for
//! `n` not dividing `s`, so `F` is divisible iff it vanishes at all of them.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::bigpoly::{DivRemResult, Polynomial};
use crate::cyclo::{self, eval_at_root};
use crate::error::{positive, Error, Result};
use crate::numth::{self, gcd_unchecked};
use crate::qseries::{gauss_classical_sum, gauss_q_polynomial, q_integer};

/// Nonzero remainders in witnesses are cut off after this many terms.
pub const WITNESS_TERMS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StatementId {
    QGauss,
    GaussClassical,
    QFermat,
    QShift,
    Euler,
    RootVanish,
    Lemma1,
    Lemma2,
    Lemma3,
    ReducedSum,
}

impl StatementId {
    pub const ALL: [StatementId; 10] = [
        StatementId::QGauss,
        StatementId::GaussClassical,
        StatementId::QFermat,
        StatementId::QShift,
        StatementId::Euler,
        StatementId::RootVanish,
        StatementId::Lemma1,
        StatementId::Lemma2,
        StatementId::Lemma3,
        StatementId::ReducedSum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::QGauss => "Q_GAUSS",
            StatementId::GaussClassical => "GAUSS_CLASSICAL",
            StatementId::QFermat => "Q_FERMAT",
            StatementId::QShift => "Q_SHIFT",
            StatementId::Euler => "EULER",
            StatementId::RootVanish => "ROOT_VANISH",
            StatementId::Lemma1 => "LEMMA1",
            StatementId::Lemma2 => "LEMMA2",
            StatementId::Lemma3 => "LEMMA3",
            StatementId::ReducedSum => "REDUCED_SUM",
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Accepts `Q_GAUSS`, `q_gauss` and `q-gauss` alike.
impl FromStr for StatementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        StatementId::ALL
            .into_iter()
            .find(|id| id.as_str() == key)
            .ok_or_else(|| Error::Precondition(format!("unknown statement id {s:?}")))
    }
}

/// Named integer parameters of a check. Unused ones stay `None` and are
/// omitted from serialized output.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    /// Always `gcd(n, a)` when present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    /// Congruent pair for the q-shift check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b1: Option<u64>,
    /// Forced modulus exponent `e` in `[n]_{q^e}` (negative controls only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
}

impl Params {
    pub const NAMES: [&'static str; 10] = ["n", "a", "b", "s", "t", "m", "p", "a1", "b1", "e"];

    pub fn values(&self) -> [Option<u64>; 10] {
        [self.n, self.a, self.b, self.s, self.t, self.m, self.p, self.a1, self.b1, self.e]
    }

    fn sort_key(&self) -> [Option<u64>; 9] {
        [self.n, self.a, self.s, self.t, self.m, self.p, self.a1, self.b1, self.e]
    }

    fn n_a(n: u64, a: u64) -> Self {
        Params { n: Some(n), a: Some(a), b: Some(gcd_unchecked(n, a)), ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub statement_id: StatementId,
    #[serde(flatten)]
    pub params: Params,
    pub holds: bool,
    pub witness: Option<String>,
    pub degree_f: Option<u64>,
    pub quotient_terms: Option<u64>,
    pub quotient_degree: Option<u64>,
    pub elapsed_micros: u64,
}

impl VerificationReport {
    /// Total order used to sort sweep output: statement, then
    /// `(n, a, s, t, m, p, a1, b1, e)`.
    pub fn sort_key(&self) -> (StatementId, [Option<u64>; 9]) {
        (self.statement_id, self.params.sort_key())
    }

    pub fn without_timing(mut self) -> Self {
        self.elapsed_micros = 0;
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.statement_id)?;
        for (name, value) in Params::NAMES.iter().zip(self.params.values()) {
            if let Some(v) = value {
                write!(f, " {name}={v}")?;
            }
        }
        write!(f, " holds={}", self.holds)?;
        if let Some(d) = self.degree_f {
            write!(f, " degree_f={d}")?;
        }
        if let Some(d) = self.quotient_degree {
            write!(f, " quotient_degree={d}")?;
        }
        if let Some(c) = self.quotient_terms {
            write!(f, " quotient_terms={c}")?;
        }
        write!(f, " elapsed_us={}", self.elapsed_micros)?;
        if let Some(w) = &self.witness {
            write!(f, " witness=\"{w}\"")?;
        }
        Ok(())
    }
}

struct Pending {
    statement_id: StatementId,
    params: Params,
    started: Instant,
    degree_f: Option<u64>,
    quotient: Option<(u64, u64)>,
}

impl Pending {
    fn start(statement_id: StatementId, params: Params) -> Self {
        Pending { statement_id, params, started: Instant::now(), degree_f: None, quotient: None }
    }

    fn degree_f(mut self, f: &Polynomial) -> Self {
        self.degree_f = f.degree().finite().map(|d| d as u64);
        self
    }

    fn quotient(mut self, q: &Polynomial) -> Self {
        self.quotient = Some((q.term_count() as u64, q.degree().finite().unwrap_or(0) as u64));
        self
    }

    /// `witness` is produced only when the check fails.
    fn finish(self, holds: bool, witness: impl FnOnce() -> String) -> VerificationReport {
        VerificationReport {
            statement_id: self.statement_id,
            params: self.params,
            holds,
            witness: (!holds).then(witness),
            degree_f: self.degree_f,
            quotient_terms: self.quotient.map(|q| q.0),
            quotient_degree: self.quotient.map(|q| q.1),
            elapsed_micros: self.started.elapsed().as_micros() as u64,
        }
    }
}

fn remainder_witness(r: &Polynomial) -> String {
    format!("remainder {}", r.display_truncated(WITNESS_TERMS))
}

/// Everything produced by a divisibility check of `F(q)`.
#[derive(Debug, Clone)]
pub struct QGaussCheck {
    pub report: VerificationReport,
    pub f: Polynomial,
    pub modulus: Polynomial,
    pub division: DivRemResult,
}

/// Divides `F(q)` for `(n, a)` by `[n]_{q^b}`, `b = gcd(n, a)`.
pub fn check_q_gauss(n: u64, a: u64) -> Result<QGaussCheck> {
    positive(n, "n")?;
    positive(a, "a")?;
    let b = gcd_unchecked(n, a);
    divide_gauss_polynomial(Params::n_a(n, a), n, a, b)
}

/// Same division with the modulus exponent forced to `e`, i.e. by
/// `[n]_{q^e}`. Used for sharpness controls.
pub fn check_q_gauss_with_exponent(n: u64, a: u64, e: u64) -> Result<QGaussCheck> {
    positive(n, "n")?;
    positive(a, "a")?;
    positive(e, "e")?;
    let params = Params { n: Some(n), a: Some(a), e: Some(e), ..Default::default() };
    divide_gauss_polynomial(params, n, a, e)
}

fn divide_gauss_polynomial(params: Params, n: u64, a: u64, exponent: u64) -> Result<QGaussCheck> {
    let pending = Pending::start(StatementId::QGauss, params);
    let f = gauss_q_polynomial(n, a)?;
    let modulus = q_integer(n, exponent)?;
    let division = f.divrem_monic(&modulus)?;
    let holds = division.remainder.is_zero();
    let report = pending
        .degree_f(&f)
        .quotient(&division.quotient)
        .finish(holds, || remainder_witness(&division.remainder));
    Ok(QGaussCheck { report, f, modulus, division })
}

pub fn verify_q_gauss(n: u64, a: u64) -> Result<VerificationReport> {
    check_q_gauss(n, a).map(|c| c.report)
}

/// `n | sum_{d|n} mu(d) a^{n/d}`, with no coprimality assumption.
pub fn verify_gauss_classical(n: u64, a: u64) -> Result<VerificationReport> {
    let pending = Pending::start(StatementId::GaussClassical, Params::n_a(n, a));
    let sum = gauss_classical_sum(n, a)?;
    let residue = sum.mod_floor(&BigInt::from(n));
    Ok(pending.finish(residue.is_zero(), || format!("sum {sum} is {residue} mod {n}")))
}

/// `prod_{j=1}^{p-1} [a]_{q^j} = 1 (mod [p]_q)` for prime `p` not dividing `a`.
pub fn verify_q_fermat(p: u64, a: u64) -> Result<VerificationReport> {
    positive(a, "a")?;
    if !numth::is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if a % p == 0 {
        return Err(Error::Precondition(format!("{p} divides {a}")));
    }
    let pending = Pending::start(StatementId::QFermat, Params { p: Some(p), a: Some(a), ..Default::default() });
    let mut product = Polynomial::one();
    if a > 1 {
        for j in 1..p as usize {
            product = product.mul_geometric(a as usize, j)?;
        }
    }
    let shifted = &product - &Polynomial::one();
    let division = shifted.divrem_monic(&q_integer(p, 1)?)?;
    let holds = division.remainder.is_zero();
    Ok(pending
        .degree_f(&product)
        .quotient(&division.quotient)
        .finish(holds, || remainder_witness(&division.remainder)))
}

/// `[a1]_q = [b1]_q (mod [n]_q)` whenever `a1 = b1 (mod n)`.
pub fn verify_q_shift(n: u64, a1: u64, b1: u64) -> Result<VerificationReport> {
    positive(n, "n")?;
    positive(a1, "a1")?;
    positive(b1, "b1")?;
    if a1 % n != b1 % n {
        return Err(Error::Precondition(format!("{a1} and {b1} are not congruent mod {n}")));
    }
    let params = Params { n: Some(n), a1: Some(a1), b1: Some(b1), ..Default::default() };
    let pending = Pending::start(StatementId::QShift, params);
    let difference = &q_integer(a1, 1)? - &q_integer(b1, 1)?;
    let division = difference.divrem_monic(&q_integer(n, 1)?)?;
    let holds = division.remainder.is_zero();
    Ok(pending.finish(holds, || remainder_witness(&division.remainder)))
}

/// `n | a^{phi(n)} - 1` for `gcd(a, n) = 1`, with exact integers.
pub fn verify_euler(n: u64, a: u64) -> Result<VerificationReport> {
    positive(n, "n")?;
    positive(a, "a")?;
    if gcd_unchecked(n, a) != 1 {
        return Err(Error::Precondition(format!("gcd({a}, {n}) is not 1")));
    }
    let pending = Pending::start(StatementId::Euler, Params::n_a(n, a));
    let phi = numth::euler_phi(n)?;
    let value: BigInt = Pow::pow(BigInt::from(a), phi) - BigInt::one();
    let residue = value.mod_floor(&BigInt::from(n));
    Ok(pending.finish(residue.is_zero(), || format!("{a}^{phi} - 1 is {residue} mod {n}")))
}

/// The `s` in `1..=n*b` with `n` not dividing `s`: the exponents for which
/// `zeta_{nb}^s` is a root of `[n]_{q^b}`.
pub fn root_indices(n: u64, a: u64) -> Result<Vec<u64>> {
    positive(n, "n")?;
    positive(a, "a")?;
    let nb = n * gcd_unchecked(n, a);
    Ok((1..=nb).filter(|s| s % n != 0).collect())
}

fn root_report(f: &Polynomial, n: u64, a: u64, s: u64) -> Result<VerificationReport> {
    let b = gcd_unchecked(n, a);
    if s == 0 || s > n * b || s % n == 0 {
        return Err(Error::Precondition(format!(
            "s={s} must lie in 1..={} and not be a multiple of {n}",
            n * b
        )));
    }
    let params = Params { s: Some(s), ..Params::n_a(n, a) };
    let pending = Pending::start(StatementId::RootVanish, params);
    let value = eval_at_root(f, n * b, s as i64)?;
    Ok(pending
        .degree_f(f)
        .finish(value.is_zero(), || format!("F(zeta_{}^{s}) = {}", n * b, value.residue().display_truncated(WITNESS_TERMS))))
}

/// `F(zeta_{nb}^s) = 0` for one admissible `s`.
pub fn verify_root_vanishing(n: u64, a: u64, s: u64) -> Result<VerificationReport> {
    positive(n, "n")?;
    positive(a, "a")?;
    let f = gauss_q_polynomial(n, a)?;
    root_report(&f, n, a, s)
}

/// Root vanishing for every admissible `s`, building `F` once.
pub fn verify_root_vanishing_all(n: u64, a: u64) -> Result<Vec<VerificationReport>> {
    let indices = root_indices(n, a)?;
    let f = gauss_q_polynomial(n, a)?;
    indices.into_iter().map(|s| root_report(&f, n, a, s)).collect()
}

/// `sum_{d|n, gcd(d,ta) = gcd(d,t)} mu(n/d) a^{gcd(d,t)}`, summed exactly as
/// written. Vanishes when `n` does not divide `t*gcd(n, a)`.
pub fn lemma3_sum(n: u64, t: u64, a: u64) -> Result<BigInt> {
    positive(n, "n")?;
    positive(t, "t")?;
    positive(a, "a")?;
    let base = BigInt::from(a);
    let ta = t as u128 * a as u128;
    let mut total = BigInt::zero();
    for d in numth::divisors(n)? {
        let g = gcd_unchecked(d, t);
        let ta_mod = (ta % d as u128) as u64;
        if gcd_unchecked(d, ta_mod) != g {
            continue;
        }
        match numth::mobius(n / d)? {
            1 => total += Pow::pow(&base, g),
            -1 => total -= Pow::pow(&base, g),
            _ => {}
        }
    }
    Ok(total)
}

/// Lemma 3 as a report. Only defined where the vanishing claim applies.
pub fn verify_lemma3(n: u64, t: u64, a: u64) -> Result<VerificationReport> {
    positive(n, "n")?;
    positive(t, "t")?;
    positive(a, "a")?;
    let b = gcd_unchecked(n, a);
    if (t as u128 * b as u128) % n as u128 == 0 {
        return Err(Error::Precondition(format!("{n} divides t*b = {}; no claim is made", t * b)));
    }
    let params = Params { t: Some(t), ..Params::n_a(n, a) };
    let pending = Pending::start(StatementId::Lemma3, params);
    let sum = lemma3_sum(n, t, a)?;
    Ok(pending.finish(sum.is_zero(), || format!("sum is {sum}")))
}

pub fn verify_lemma1(m: u64, t: u64) -> Result<VerificationReport> {
    let pending = Pending::start(StatementId::Lemma1, Params { m: Some(m), t: Some(t), ..Default::default() });
    let count = numth::lemma1_count(m, t)?;
    let g = gcd_unchecked(m, t);
    Ok(pending.finish(count == g, || format!("count {count}, gcd {g}")))
}

pub fn verify_lemma2(m: u64, t: u64) -> Result<VerificationReport> {
    positive(m, "m")?;
    positive(t, "t")?;
    let pending = Pending::start(StatementId::Lemma2, Params { m: Some(m), t: Some(t), ..Default::default() });
    match cyclo::lemma2_product(m, t) {
        Ok(_) => Ok(pending.finish(true, String::new)),
        Err(Error::VerificationFailure(msg)) => Ok(pending.finish(false, || msg)),
        Err(e) => Err(e),
    }
}

/// The integer side of the evaluation chain:
/// `sum_{d|n, gcd(ta, n/d) = gcd(t, n/d)} mu(d) a^{gcd(n/d, t)}`.
pub fn reduced_sum(n: u64, t: u64, a: u64) -> Result<BigInt> {
    positive(n, "n")?;
    positive(t, "t")?;
    positive(a, "a")?;
    let base = BigInt::from(a);
    let mut total = BigInt::zero();
    for d in numth::divisors(n)? {
        let k = n / d;
        let g = gcd_unchecked(k, t);
        let ta_mod = ((t as u128 * a as u128) % k as u128) as u64;
        if gcd_unchecked(k, ta_mod) != g {
            continue;
        }
        match numth::mobius(d)? {
            1 => total += Pow::pow(&base, g),
            -1 => total -= Pow::pow(&base, g),
            _ => {}
        }
    }
    Ok(total)
}

fn reduced_sum_report(f: &Polynomial, n: u64, t: u64, a: u64) -> Result<VerificationReport> {
    if t == 0 || t > n {
        return Err(Error::Precondition(format!("t={t} must lie in 1..={n}")));
    }
    let params = Params { t: Some(t), ..Params::n_a(n, a) };
    let pending = Pending::start(StatementId::ReducedSum, params);
    let value = eval_at_root(f, n, t as i64)?;
    let expected = reduced_sum(n, t, a)?;
    let holds = value.as_rational_integer().as_ref() == Some(&expected);
    Ok(pending.degree_f(f).finish(holds, || {
        format!(
            "F(zeta_{n}^{t}) = {}, sum side {expected}",
            value.residue().display_truncated(WITNESS_TERMS)
        )
    }))
}

/// Checks `F(zeta_n^t)` against the integer sum [`reduced_sum`].
pub fn reduced_sum_identity(n: u64, t: u64, a: u64) -> Result<VerificationReport> {
    positive(n, "n")?;
    positive(a, "a")?;
    let f = gauss_q_polynomial(n, a)?;
    reduced_sum_report(&f, n, t, a)
}

/// [`reduced_sum_identity`] for every `t` in `1..=n`, building `F` once.
pub fn reduced_sum_identity_all(n: u64, a: u64) -> Result<Vec<VerificationReport>> {
    positive(n, "n")?;
    positive(a, "a")?;
    let f = gauss_q_polynomial(n, a)?;
    (1..=n).map(|t| reduced_sum_report(&f, n, t, a)).collect()
}

/// A catalogued case where shrinking or enlarging the modulus breaks
/// divisibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NegativeControl {
    pub n: u64,
    pub a: u64,
    /// Exponent `e` of the forced modulus `[n]_{q^e}`.
    pub exponent: u64,
}

pub const NEGATIVE_CONTROLS: [NegativeControl; 2] = [
    // F = q + q^3, and [2]_q = 1 + q leaves remainder -2.
    NegativeControl { n: 2, a: 2, exponent: 1 },
    // [4]_{q^4} = (1 + q^4)(1 + q^8), while F = (1 + q^2)(1 + q^4)(q + q^3 + q^4).
    NegativeControl { n: 4, a: 2, exponent: 4 },
];

#[derive(Debug, Clone)]
pub struct ControlOutcome {
    pub control: NegativeControl,
    pub report: VerificationReport,
    pub remainder: Polynomial,
    /// The control is satisfied when divisibility fails.
    pub satisfied: bool,
}

pub fn run_negative_controls() -> Result<Vec<ControlOutcome>> {
    NEGATIVE_CONTROLS
        .iter()
        .map(|&control| {
            let check = check_q_gauss_with_exponent(control.n, control.a, control.exponent)?;
            Ok(ControlOutcome {
                control,
                satisfied: !check.report.holds,
                remainder: check.division.remainder,
                report: check.report,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn statement_ids_round_trip() {
        for id in StatementId::ALL {
            assert_eq!(id.as_str().parse::<StatementId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{}\"", id.as_str()));
        }
        assert_eq!("root-vanish".parse::<StatementId>().unwrap(), StatementId::RootVanish);
        assert!("LEMMA4".parse::<StatementId>().is_err());
    }

    #[test]
    fn q_gauss_examples() {
        for a in 1..=7 {
            let c = check_q_gauss(1, a).unwrap();
            assert!(c.report.holds);
            assert!(c.modulus.is_one());
        }
        let c = check_q_gauss(2, 2).unwrap();
        assert!(c.report.holds);
        assert_eq!(c.division.quotient, p("q"));
        assert_eq!(c.report.params.b, Some(2));
        assert_eq!(c.report.degree_f, Some(3));

        let c = check_q_gauss(3, 2).unwrap();
        assert!(c.report.holds);
        assert_eq!(c.division.quotient, p("q + q^4"));
        assert!(c.report.witness.is_none());
    }

    #[test]
    fn gauss_classical_examples() {
        for n in 1..=12 {
            assert!(verify_gauss_classical(n, 1).unwrap().holds);
        }
        assert!(verify_gauss_classical(4, 2).unwrap().holds);
        assert_eq!(gauss_classical_sum(6, 6).unwrap(), BigInt::from(46410));
        assert!(verify_gauss_classical(6, 6).unwrap().holds);
    }

    #[test]
    fn q_fermat_examples() {
        for prime in [2, 3, 5, 7, 11] {
            assert!(verify_q_fermat(prime, 1).unwrap().holds);
        }
        let r = verify_q_fermat(3, 2).unwrap();
        assert!(r.holds);
        // (1+q)(1+q^2) - 1 = q*[3]_q
        assert_eq!(r.quotient_degree, Some(1));
        assert!(verify_q_fermat(5, 2).unwrap().holds);
        assert!(verify_q_fermat(4, 3).is_err());
        assert!(verify_q_fermat(1, 3).is_err());
        assert!(verify_q_fermat(5, 10).is_err());
    }

    #[test]
    fn q_shift_examples() {
        for n in 1..6 {
            assert!(verify_q_shift(n, 4, 4).unwrap().holds);
        }
        assert!(verify_q_shift(3, 5, 2).unwrap().holds);
        assert!(verify_q_shift(2, 4, 2).unwrap().holds);
        assert!(verify_q_shift(3, 5, 3).is_err());
    }

    #[test]
    fn euler_examples() {
        for n in 1..20 {
            assert!(verify_euler(n, 1).unwrap().holds);
        }
        assert!(verify_euler(12, 5).unwrap().holds);
        assert!(verify_euler(7, 3).unwrap().holds);
        assert!(verify_euler(12, 4).is_err());
    }

    #[test]
    fn root_vanishing_examples() {
        assert!(verify_root_vanishing(2, 2, 1).unwrap().holds);
        assert!(verify_root_vanishing(2, 2, 3).unwrap().holds);
        assert!(verify_root_vanishing(3, 2, 1).unwrap().holds);
        assert!(verify_root_vanishing(2, 2, 2).is_err());
        assert!(verify_root_vanishing(2, 2, 5).is_err());
        assert!(verify_root_vanishing(2, 2, 0).is_err());
        assert_eq!(root_indices(3, 2).unwrap(), vec![1, 2]);
        assert_eq!(root_indices(4, 2).unwrap(), vec![1, 2, 3, 5, 6, 7]);
    }

    #[test]
    fn lemma3_examples() {
        assert_eq!(lemma3_sum(4, 1, 2).unwrap(), BigInt::zero());
        assert_eq!(lemma3_sum(6, 1, 2).unwrap(), BigInt::zero());
        for t in 1..5 {
            for a in 1..5 {
                assert_eq!(lemma3_sum(1, t, a).unwrap(), BigInt::from(a));
            }
        }
        assert!(verify_lemma3(6, 1, 2).unwrap().holds);
        assert!(verify_lemma3(4, 2, 2).is_err());
    }

    /// Brute-force restatement of the lemma's sum, straight from gcds.
    fn lemma3_oracle(n: u64, t: u64, a: u64) -> BigInt {
        let mut total = BigInt::zero();
        for d in (1..=n).filter(|d| n % d == 0) {
            let mu = numth::mobius(n / d).unwrap();
            if mu != 0 && gcd_unchecked(d, t * a) == gcd_unchecked(d, t) {
                total += BigInt::from(mu) * BigInt::from(a).pow(gcd_unchecked(d, t) as u32);
            }
        }
        total
    }

    #[test]
    fn lemma3_sum_matches_oracle() {
        for n in 1..=40 {
            for t in 1..=20 {
                for a in 1..=8 {
                    assert_eq!(lemma3_sum(n, t, a).unwrap(), lemma3_oracle(n, t, a), "n={n} t={t} a={a}");
                }
            }
        }
    }

    #[test]
    fn reduced_sum_examples() {
        let r = reduced_sum_identity(2, 1, 2).unwrap();
        assert!(r.holds);
        assert_eq!(reduced_sum(2, 1, 2).unwrap(), BigInt::from(-2));
        for n in 1..=10 {
            for a in 1..=4 {
                assert_eq!(reduced_sum(n, n, a).unwrap(), gauss_classical_sum(n, a).unwrap());
                assert!(reduced_sum_identity(n, n, a).unwrap().holds);
            }
            for t in 1..=n {
                assert!(reduced_sum_identity(n, t, 1).unwrap().holds);
            }
        }
        assert!(reduced_sum_identity(3, 4, 2).is_err());
    }

    #[test]
    fn negative_controls_fail_divisibility() {
        let outcomes = run_negative_controls().unwrap();
        assert!(outcomes.iter().all(|o| o.satisfied && o.report.witness.is_some()));
        let first = &outcomes[0];
        assert_eq!(first.remainder, Polynomial::constant(-2));
        assert_eq!(first.remainder.eval_int(&BigInt::from(-1)), BigInt::from(-2));
    }

    #[test]
    fn failing_reports_carry_witnesses() {
        let c = check_q_gauss_with_exponent(2, 2, 1).unwrap();
        assert!(!c.report.holds);
        assert_eq!(c.report.witness.as_deref(), Some("remainder -2"));
        assert_eq!(c.report.params.b, None);
        assert_eq!(c.report.params.e, Some(1));
    }

    #[test]
    fn b_is_gcd_when_present() {
        for n in 1..=12 {
            for a in 1..=12 {
                let r = verify_q_gauss(n, a).unwrap();
                assert_eq!(r.params.b, Some(gcd_unchecked(n, a)));
            }
        }
    }
}
