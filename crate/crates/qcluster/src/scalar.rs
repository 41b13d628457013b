//! Exact coefficients: Laurent polynomials in `t = q^{1/2}` and their
//! specializations `a + b*sqrt(p)` at a prime.
//!
//! Half-powers of `q` are indexed by a single integer `k` meaning `t^k`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of `Z[t, t^{-1}]` stored as a sparse map from exponent to
/// nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FormalScalar {
    terms: BTreeMap<i64, BigInt>,
}

impl FormalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(0, BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::monomial(0, c)
    }

    /// `c * t^k`.
    pub fn monomial(k: i64, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// `t^k`.
    pub fn qpow(k: i64) -> Self {
        Self::monomial(k, BigInt::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in it {
            s.add_term(k, &c);
        }
        s
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest and highest exponents, if nonzero.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = *self.terms.keys().next()?;
        let hi = *self.terms.keys().next_back()?;
        Some((lo, hi))
    }

    /// If the scalar is `c * t^k`, returns `(k, c)`.
    pub fn as_monomial(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    fn add_term(&mut self, k: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `t -> t^d`.
    pub fn dilate(&self, d: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * d, c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / den`, or `None` when `den` does not divide.
    pub fn div_exact(&self, den: &Self) -> Option<Self> {
        let (dlo, dhi) = den.degree_range()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = den.terms[&dhi].clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((_, rhi)) = rem.degree_range() {
            let (rlo, _) = rem.degree_range().unwrap_or((0, 0));
            if rhi - rlo < dhi - dlo {
                return None;
            }
            let rc = rem.terms[&rhi].clone();
            let (qc, r) = rc.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let qk = rhi - dhi;
            let step = Self::monomial(qk, qc);
            rem = &rem - &(&step * den);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Evaluation at `t = sqrt(p)`.
    pub fn specialize(&self, p: u32) -> SpecScalar {
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        for (k, c) in &self.terms {
            let j = k.div_euclid(2);
            let v = BigRational::from_integer(c.clone()) * prime_power(p, j);
            if k.rem_euclid(2) == 0 {
                a += v;
            } else {
                b += v;
            }
        }
        SpecScalar::new(p, a, b)
    }
}

pub(crate) fn prime_power(p: u32, j: i64) -> BigRational {
    let base = BigInt::from(p);
    let mag = num_traits::pow(base, j.unsigned_abs() as usize);
    if j >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

impl Add for &FormalScalar {
    type Output = FormalScalar;
    fn add(self, rhs: &FormalScalar) -> FormalScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub for &FormalScalar {
    type Output = FormalScalar;
    fn sub(self, rhs: &FormalScalar) -> FormalScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Mul for &FormalScalar {
    type Output = FormalScalar;
    fn mul(self, rhs: &FormalScalar) -> FormalScalar {
        let mut out = FormalScalar::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }
}

impl Neg for &FormalScalar {
    type Output = FormalScalar;
    fn neg(self) -> FormalScalar {
        FormalScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

fn q_monomial(k: i64) -> String {
    if k % 2 == 0 {
        let j = k / 2;
        if j == 1 {
            "q".to_string()
        } else {
            format!("q^{{{}}}", j)
        }
    } else {
        format!("q^{{{}/2}}", k)
    }
}

impl fmt::Display for FormalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if *k == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                f.write_str(&q_monomial(*k))?;
            } else {
                write!(f, "{}{}", mag, q_monomial(*k))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FormalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `a + b*sqrt(p)` with `a, b` in `Z[1/p]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpecScalar {
    p: u32,
    a: BigRational,
    b: BigRational,
}

impl SpecScalar {
    pub fn new(p: u32, a: BigRational, b: BigRational) -> Self {
        Self { p, a, b }
    }

    pub fn zero(p: u32) -> Self {
        Self::new(p, BigRational::zero(), BigRational::zero())
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u32, c: i64) -> Self {
        Self::new(p, BigRational::from_integer(c.into()), BigRational::zero())
    }

    /// `p^{k/2}`.
    pub fn qpow(p: u32, k: i64) -> Self {
        let j = k.div_euclid(2);
        let v = prime_power(p, j);
        if k.rem_euclid(2) == 0 {
            Self::new(p, v, BigRational::zero())
        } else {
            Self::new(p, BigRational::zero(), v)
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Whether both parts have denominators that are powers of `p`.
    pub fn is_p_integral(&self) -> bool {
        let ok = |r: &BigRational| {
            let mut d = r.denom().clone();
            let p = BigInt::from(self.p);
            while (&d % &p).is_zero() {
                d /= &p;
            }
            d.is_one()
        };
        ok(&self.a) && ok(&self.b)
    }

    /// If the value is `+- p^{k/2}`, returns `(sign, k)`.
    pub fn as_signed_power(&self) -> Option<(i8, i64)> {
        let (v, odd) = match (self.a.is_zero(), self.b.is_zero()) {
            (false, true) => (&self.a, false),
            (true, false) => (&self.b, true),
            _ => return None,
        };
        let sign = if v.is_negative() { -1 } else { 1 };
        let v = v.abs();
        let p = BigInt::from(self.p);
        let (mut num, mut den) = (v.numer().clone(), v.denom().clone());
        let mut j: i64 = 0;
        while (&num % &p).is_zero() {
            num /= &p;
            j += 1;
        }
        while (&den % &p).is_zero() {
            den /= &p;
            j -= 1;
        }
        if !(num.is_one() && den.is_one()) {
            return None;
        }
        Some((sign, 2 * j + i64::from(odd)))
    }

    /// Inverse in `Z[p^{+-1/2}]` when it exists there.
    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = BigRational::from_integer(BigInt::from(self.p));
        let norm = &self.a * &self.a - &p * &self.b * &self.b;
        let inv = Self::new(self.p, &self.a / &norm, -&self.b / &norm);
        inv.is_p_integral().then_some(inv)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "specialized scalars at different primes");
    }
}

impl Add for &SpecScalar {
    type Output = SpecScalar;
    fn add(self, rhs: &SpecScalar) -> SpecScalar {
        self.check(rhs);
        SpecScalar::new(self.p, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &SpecScalar {
    type Output = SpecScalar;
    fn sub(self, rhs: &SpecScalar) -> SpecScalar {
        self.check(rhs);
        SpecScalar::new(self.p, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &SpecScalar {
    type Output = SpecScalar;
    fn mul(self, rhs: &SpecScalar) -> SpecScalar {
        self.check(rhs);
        let p = BigRational::from_integer(BigInt::from(self.p));
        SpecScalar::new(
            self.p,
            &self.a * &rhs.a + &self.b * &rhs.b * p,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Neg for &SpecScalar {
    type Output = SpecScalar;
    fn neg(self) -> SpecScalar {
        SpecScalar::new(self.p, -&self.a, -&self.b)
    }
}

impl fmt::Display for SpecScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt({})", self.p);
        let sqrt_term = |b: &BigRational| -> String {
            if b.is_one() {
                root.clone()
            } else {
                format!("{}*{}", b, root)
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => {
                if self.b.is_negative() {
                    write!(f, "-{}", sqrt_term(&-&self.b))
                } else {
                    f.write_str(&sqrt_term(&self.b))
                }
            }
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}", self.a, sqrt_term(&-&self.b))
                } else {
                    write!(f, "{} + {}", self.a, sqrt_term(&self.b))
                }
            }
        }
    }
}

impl fmt::Debug for SpecScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which coefficient ring a computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Formal,
    Specialized(u32),
}

impl Mode {
    pub fn prime(self) -> Option<u32> {
        match self {
            Mode::Formal => None,
            Mode::Specialized(p) => Some(p),
        }
    }
}

/// A coefficient in either mode.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum QScalar {
    Formal(FormalScalar),
    Spec(SpecScalar),
}

impl QScalar {
    pub fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Formal => QScalar::Formal(FormalScalar::zero()),
            Mode::Specialized(p) => QScalar::Spec(SpecScalar::zero(p)),
        }
    }

    pub fn one(mode: Mode) -> Self {
        Self::from_int(mode, 1)
    }

    pub fn from_int(mode: Mode, c: i64) -> Self {
        match mode {
            Mode::Formal => QScalar::Formal(FormalScalar::from_int(c)),
            Mode::Specialized(p) => QScalar::Spec(SpecScalar::from_int(p, c)),
        }
    }

    pub fn from_bigint(mode: Mode, c: BigInt) -> Self {
        match mode {
            Mode::Formal => QScalar::Formal(FormalScalar::from_bigint(c)),
            Mode::Specialized(p) => QScalar::Spec(SpecScalar::new(
                p,
                BigRational::from_integer(c),
                BigRational::zero(),
            )),
        }
    }

    /// `t^k` in the given mode.
    pub fn qpow(mode: Mode, k: i64) -> Self {
        match mode {
            Mode::Formal => QScalar::Formal(FormalScalar::qpow(k)),
            Mode::Specialized(p) => QScalar::Spec(SpecScalar::qpow(p, k)),
        }
    }

    /// Brings a formal scalar into `mode`.
    pub fn from_formal(mode: Mode, s: &FormalScalar) -> Self {
        match mode {
            Mode::Formal => QScalar::Formal(s.clone()),
            Mode::Specialized(p) => QScalar::Spec(s.specialize(p)),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            QScalar::Formal(_) => Mode::Formal,
            QScalar::Spec(s) => Mode::Specialized(s.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            QScalar::Formal(s) => s.is_zero(),
            QScalar::Spec(s) => s.is_zero(),
        }
    }

    pub fn as_formal(&self) -> Option<&FormalScalar> {
        match self {
            QScalar::Formal(s) => Some(s),
            QScalar::Spec(_) => None,
        }
    }

    pub fn as_spec(&self) -> Option<&SpecScalar> {
        match self {
            QScalar::Spec(s) => Some(s),
            QScalar::Formal(_) => None,
        }
    }

    pub fn bar(&self) -> Result<Self> {
        match self {
            QScalar::Formal(s) => Ok(QScalar::Formal(s.bar())),
            QScalar::Spec(_) => Err(Error::Unsupported(
                "bar involution is only defined in formal mode".into(),
            )),
        }
    }

    pub fn specialize(&self, p: u32) -> Self {
        match self {
            QScalar::Formal(s) => QScalar::Spec(s.specialize(p)),
            QScalar::Spec(_) => self.clone(),
        }
    }

    /// If this is `+- t^k`, returns `(sign, k)`.
    pub fn as_signed_power(&self) -> Option<(i8, i64)> {
        match self {
            QScalar::Formal(s) => {
                let (k, c) = s.as_monomial()?;
                if c.is_one() {
                    Some((1, k))
                } else if (-c).is_one() {
                    Some((-1, k))
                } else {
                    None
                }
            }
            QScalar::Spec(s) => s.as_signed_power(),
        }
    }

    /// Exact quotient, when it exists in the coefficient ring.
    pub fn div_exact(&self, den: &Self) -> Option<Self> {
        match (self, den) {
            (QScalar::Formal(a), QScalar::Formal(b)) => a.div_exact(b).map(QScalar::Formal),
            (QScalar::Spec(a), QScalar::Spec(b)) => {
                let inv = b.checked_inv()?;
                let q = a * &inv;
                q.is_p_integral().then_some(QScalar::Spec(q))
            }
            _ => None,
        }
    }

    /// Whether the value is a genuine integer (formal: constant term only).
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            QScalar::Formal(s) => {
                if s.is_zero() {
                    Some(BigInt::zero())
                } else {
                    let (k, c) = s.as_monomial()?;
                    (k == 0).then(|| c.clone())
                }
            }
            QScalar::Spec(s) => (s.b.is_zero() && s.a.is_integer()).then(|| s.a.to_integer()),
        }
    }
}

fn mode_clash() -> ! {
    panic!("{}", Error::ModeMismatch)
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        match (self, rhs) {
            (QScalar::Formal(a), QScalar::Formal(b)) => QScalar::Formal(a + b),
            (QScalar::Spec(a), QScalar::Spec(b)) => QScalar::Spec(a + b),
            _ => mode_clash(),
        }
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        match (self, rhs) {
            (QScalar::Formal(a), QScalar::Formal(b)) => QScalar::Formal(a - b),
            (QScalar::Spec(a), QScalar::Spec(b)) => QScalar::Spec(a - b),
            _ => mode_clash(),
        }
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        match (self, rhs) {
            (QScalar::Formal(a), QScalar::Formal(b)) => QScalar::Formal(a * b),
            (QScalar::Spec(a), QScalar::Spec(b)) => QScalar::Spec(a * b),
            _ => mode_clash(),
        }
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        match self {
            QScalar::Formal(a) => QScalar::Formal(-a),
            QScalar::Spec(a) => QScalar::Spec(-a),
        }
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QScalar::Formal(s) => fmt::Display::fmt(s, f),
            QScalar::Spec(s) => fmt::Display::fmt(s, f),
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `t^k`.
pub fn qpow(k: i64) -> FormalScalar {
    FormalScalar::qpow(k)
}

/// Evaluation at `t = sqrt(p)`.
pub fn specialize(s: &FormalScalar, p: u32) -> SpecScalar {
    s.specialize(p)
}

/// Quantum binomial coefficient in the variable `q^{d/2}`, computed by
/// dividing the defining products.
pub fn qbinom(n: u32, k: u32, d: u32) -> Result<FormalScalar> {
    if k > n || d == 0 {
        return Err(Error::Invalid(format!("qbinom({n}, {k}, {d})")));
    }
    let d = i64::from(d);
    // q^j - q^{-j} with q -> t^d
    let factor = |j: i64| -> FormalScalar {
        FormalScalar::from_terms([(d * j, BigInt::one()), (-d * j, -BigInt::one())])
    };
    let mut num = FormalScalar::one();
    let mut den = FormalScalar::one();
    for j in (n - k + 1)..=n {
        num = &num * &factor(i64::from(j));
    }
    for j in 1..=k {
        den = &den * &factor(i64::from(j));
    }
    num.div_exact(&den)
        .ok_or_else(|| Error::Internal(format!("inexact quantum binomial [{n} {k}]")))
}

/// `p^e` as a big integer.
pub fn int_pow(p: u32, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Converts a count like `p^k` into the exponent `k`.
pub fn log_p(p: u32, v: &BigInt) -> Option<u32> {
    let base = BigInt::from(p);
    let mut v = v.clone();
    let mut k = 0;
    if v <= BigInt::zero() {
        return None;
    }
    while !v.is_one() {
        let (q, r) = v.div_rem(&base);
        if !r.is_zero() {
            return None;
        }
        v = q;
        k += 1;
    }
    Some(k)
}

/// Integer coefficients of a polynomial in `q` as a formal scalar.
pub fn poly_in_q(coeffs: &[BigInt]) -> FormalScalar {
    FormalScalar::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (2 * i as i64, c.clone())),
    )
}

#[doc(hidden)]
pub fn terms_vec(s: &FormalScalar) -> Vec<(i64, BigInt)> {
    s.terms().map(|(k, c)| (k, c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(terms: &[(i64, i64)]) -> FormalScalar {
        FormalScalar::from_terms(terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn qbinom_values() {
        assert!(qbinom(5, 0, 1).unwrap().is_one());
        assert_eq!(qbinom(2, 1, 2).unwrap(), fs(&[(2, 1), (-2, 1)]));
        // q^4 + q^2 + 2 + q^-2 + q^-4, expanded by hand from [4]![2]!^-2
        assert_eq!(
            qbinom(4, 2, 2).unwrap(),
            fs(&[(8, 1), (4, 1), (0, 2), (-4, 1), (-8, 1)])
        );
        assert!(qbinom(1, 1, 1).unwrap().is_one());
        assert!(qbinom(2, 3, 1).is_err());
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(qpow(1).specialize(3), SpecScalar::new(3, rat(0, 1), rat(1, 1)));
        assert_eq!(FormalScalar::one().specialize(5), SpecScalar::one(5));
        assert_eq!(
            fs(&[(2, 1), (-2, 1)]).specialize(3),
            SpecScalar::new(3, rat(10, 3), rat(0, 1))
        );
        assert_eq!(
            fs(&[(1, 1), (-1, -1)]).specialize(3),
            SpecScalar::new(3, rat(0, 1), rat(2, 3))
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(fs(&[(2, 1), (0, 2), (-2, -1)]).to_string(), "q + 2 - q^{-1}");
        assert_eq!(fs(&[(1, 1)]).to_string(), "q^{1/2}");
        assert_eq!(fs(&[(-3, -2)]).to_string(), "-2q^{-3/2}");
        assert_eq!(fs(&[(4, 1)]).to_string(), "q^{2}");
        assert_eq!(FormalScalar::zero().to_string(), "0");
        assert_eq!(SpecScalar::qpow(3, -1).to_string(), "1/3*sqrt(3)");
        assert_eq!(SpecScalar::qpow(3, 2).to_string(), "3");
    }

    #[test]
    fn division() {
        let a = fs(&[(3, 1), (0, -2), (-1, 5)]);
        let b = fs(&[(1, 1), (-1, 1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(fs(&[(0, 1)]).div_exact(&fs(&[(0, 2)])).is_none());
        assert!(fs(&[(2, 1), (0, 1)]).div_exact(&fs(&[(2, 1), (-2, 1)])).is_none());
    }

    #[test]
    fn signed_powers() {
        assert_eq!(SpecScalar::qpow(5, -3).as_signed_power(), Some((1, -3)));
        assert_eq!((-&SpecScalar::qpow(5, 4)).as_signed_power(), Some((-1, 4)));
        assert_eq!(SpecScalar::from_int(5, 2).as_signed_power(), None);
        assert!(SpecScalar::from_int(3, 2).checked_inv().is_none());
        assert_eq!(
            SpecScalar::qpow(3, 3).checked_inv().unwrap(),
            SpecScalar::qpow(3, -3)
        );
    }

    #[test]
    fn log_p_values() {
        assert_eq!(log_p(3, &BigInt::from(27)), Some(3));
        assert_eq!(log_p(3, &BigInt::from(1)), Some(0));
        assert_eq!(log_p(3, &BigInt::from(6)), None);
    }
}
