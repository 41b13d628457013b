//! The based quantum torus: combinations of lattice monomials `X^e`
//! multiplied through a skew-symmetric form.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Mode, QScalar};

pub type ExpVec = Vec<i64>;

/// Skew-symmetric integer form on `Z^m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewForm {
    m: usize,
    data: Vec<i64>,
}

impl SkewForm {
    pub fn new(rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows.len();
        let mut data = Vec::with_capacity(m * m);
        for r in rows {
            if r.len() != m {
                return Err(Error::DimensionMismatch { expected: m, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        let form = Self { m, data };
        for i in 0..m {
            for j in 0..m {
                if form.get(i, j) != -form.get(j, i) {
                    return Err(Error::Invalid(format!(
                        "form is not skew-symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(form)
    }

    pub fn zero(m: usize) -> Self {
        Self { m, data: vec![0; m * m] }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.m + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.m.max(1)).take(self.m).map(|r| r.to_vec()).collect()
    }

    /// `e^T * L * f`.
    pub fn eval(&self, e: &[i64], f: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &ei) in e.iter().enumerate() {
            if ei == 0 {
                continue;
            }
            let row = &self.data[i * self.m..(i + 1) * self.m];
            s += ei * row.iter().zip(f).map(|(a, b)| a * b).sum::<i64>();
        }
        s
    }
}

/// `X^e X^f = t^{L(e,f)} X^{e+f}`; returns the half-power and `e+f`.
pub fn monomial_mul(form: &SkewForm, e: &[i64], f: &[i64]) -> Result<(i64, ExpVec)> {
    if e.len() != form.m || f.len() != form.m {
        return Err(Error::DimensionMismatch {
            expected: form.m,
            got: if e.len() != form.m { e.len() } else { f.len() },
        });
    }
    let sum = e.iter().zip(f).map(|(a, b)| a + b).collect();
    Ok((form.eval(e, f), sum))
}

/// A quantum torus: a form together with the coefficient mode.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Torus {
    form: SkewForm,
    mode: Mode,
}

impl Torus {
    pub fn new(form: SkewForm, mode: Mode) -> Arc<Self> {
        Arc::new(Self { form, mode })
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.form.m
    }
}

/// Finite sum of monomials with nonzero coefficients.
#[derive(Clone)]
pub struct ToricElement {
    torus: Arc<Torus>,
    terms: BTreeMap<ExpVec, QScalar>,
}

fn same_torus(a: &Arc<Torus>, b: &Arc<Torus>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ToricElement {
    pub fn zero(torus: &Arc<Torus>) -> Self {
        Self { torus: torus.clone(), terms: BTreeMap::new() }
    }

    pub fn one(torus: &Arc<Torus>) -> Self {
        Self::monomial(torus, vec![0; torus.rank()], QScalar::one(torus.mode))
    }

    /// `c * X^e`.
    pub fn monomial(torus: &Arc<Torus>, e: ExpVec, c: QScalar) -> Self {
        assert_eq!(e.len(), torus.rank(), "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { torus: torus.clone(), terms }
    }

    /// `X^e` with coefficient one.
    pub fn x(torus: &Arc<Torus>, e: ExpVec) -> Self {
        Self::monomial(torus, e, QScalar::one(torus.mode))
    }

    pub fn from_terms<I: IntoIterator<Item = (ExpVec, QScalar)>>(
        torus: &Arc<Torus>,
        it: I,
    ) -> Self {
        let mut out = Self::zero(torus);
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    pub fn mode(&self) -> Mode {
        self.torus.mode
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64]) -> QScalar {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| QScalar::zero(self.torus.mode))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&ExpVec, &QScalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, e: ExpVec, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                let v = &*slot + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_torus(&self.torus, &other.torus) {
            Ok(())
        } else {
            Err(Error::Invalid("toric elements live in different tori".into()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.torus);
        let mode = self.torus.mode;
        for (e, a) in &self.terms {
            for (f, b) in &other.terms {
                let (k, sum) = monomial_mul(&self.torus.form, e, f)?;
                let c = &(a * b) * &QScalar::qpow(mode, k);
                out.add_term(sum, &c);
            }
        }
        Ok(out)
    }

    /// Left multiplication by a scalar.
    pub fn scale(&self, c: &QScalar) -> Self {
        Self::from_terms(&self.torus, self.terms.iter().map(|(e, a)| (e.clone(), c * a)))
    }

    /// Multiplies every coefficient by `t^k`.
    pub fn scale_qpow(&self, k: i64) -> Self {
        self.scale(&QScalar::qpow(self.torus.mode, k))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.torus);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single monomial.
    pub fn monomial_inverse(&self) -> Result<Self> {
        let (e, c) = match (self.terms.len(), self.leading()) {
            (1, Some(t)) => t,
            _ => return Err(Error::Invalid("only monomials are invertible".into())),
        };
        let one = QScalar::one(self.torus.mode);
        let inv = one
            .div_exact(c)
            .ok_or_else(|| Error::Invalid("coefficient is not a unit".into()))?;
        // (c X^e)^{-1} = c^{-1} X^{-e}, since L(e,-e) = 0
        let neg: ExpVec = e.iter().map(|v| -v).collect();
        Ok(Self::monomial(&self.torus, neg, inv))
    }

    /// Bar involution; formal mode only.
    pub fn bar(&self) -> Result<Self> {
        let mut out = Self::zero(&self.torus);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &c.bar()?);
        }
        Ok(out)
    }

    pub fn is_bar_invariant(&self) -> Result<bool> {
        Ok(self.bar()? == *self)
    }

    /// Image in the specialized torus `target`, whose form must agree.
    pub fn specialize(&self, target: &Arc<Torus>) -> Result<Self> {
        let p = match target.mode {
            Mode::Specialized(p) => p,
            Mode::Formal => return Err(Error::ModeMismatch),
        };
        if target.form != self.torus.form {
            return Err(Error::Invalid("forms differ".into()));
        }
        Ok(Self::from_terms(
            target,
            self.terms.iter().map(|(e, c)| (e.clone(), c.specialize(p))),
        ))
    }

    /// Solves `y * d = self` for `y` by leading-term elimination.
    pub fn div_right(&self, d: &Self) -> Result<Self> {
        self.check(d)?;
        let (b, cb) = d
            .leading()
            .map(|(b, c)| (b.clone(), c.clone()))
            .ok_or_else(|| Error::Invalid("division by zero".into()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.torus);
        let cap = 64 * (self.len() + 1) * (d.len() + 1);
        for _ in 0..cap {
            let (a, ca) = match rem.leading() {
                None => return Ok(quot),
                Some((a, c)) => (a.clone(), c.clone()),
            };
            let e: ExpVec = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            let twist = QScalar::qpow(self.torus.mode, self.torus.form.eval(&e, &b));
            let coeff = ca.div_exact(&(&twist * &cb)).ok_or_else(|| {
                Error::Internal("non-Laurent quotient: coefficient does not divide".into())
            })?;
            let step = Self::monomial(&self.torus, e, coeff);
            rem = &rem - &(&step * d);
            quot = &quot + &step;
        }
        Err(Error::Internal("non-Laurent quotient: elimination does not terminate".into()))
    }

    /// Terms grouped by the first `n` exponent coordinates.
    pub fn components(&self, n: usize) -> BTreeMap<ExpVec, Self> {
        let mut out: BTreeMap<ExpVec, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e[..n].to_vec())
                .or_insert_with(|| Self::zero(&self.torus))
                .add_term(e.clone(), c);
        }
        out
    }

    /// Canonical one-line rendering.
    pub fn canonical(&self) -> String {
        format!("{}", self)
    }
}

impl PartialEq for ToricElement {
    fn eq(&self, other: &Self) -> bool {
        same_torus(&self.torus, &other.torus) && self.terms == other.terms
    }
}

impl Eq for ToricElement {}

impl Add for &ToricElement {
    type Output = ToricElement;
    fn add(self, rhs: &ToricElement) -> ToricElement {
        self.try_add(rhs).expect("ambient mismatch")
    }
}

impl Sub for &ToricElement {
    type Output = ToricElement;
    fn sub(self, rhs: &ToricElement) -> ToricElement {
        self.try_add(&-rhs).expect("ambient mismatch")
    }
}

impl Neg for &ToricElement {
    type Output = ToricElement;
    fn neg(self) -> ToricElement {
        ToricElement {
            torus: self.torus.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &ToricElement {
    type Output = ToricElement;
    fn mul(self, rhs: &ToricElement) -> ToricElement {
        self.try_mul(rhs).expect("ambient mismatch")
    }
}

fn exp_string(e: &[i64]) -> String {
    let parts: Vec<String> = e.iter().map(|v| format!("{}", v)).collect();
    format!("X^({})", parts.join(","))
}

impl fmt::Display for ToricElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let s = format!("{}", c);
            if s.contains(' ') {
                write!(f, "({}) * {}", s, exp_string(e))?;
            } else {
                write!(f, "{} * {}", s, exp_string(e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ToricElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The ordered product `X_1^{c_1} ... X_m^{c_m}` with its normalizing
/// prefactor; as an element of the based torus this is `X^c`.
pub fn normal_order(torus: &Arc<Torus>, c: &[i64]) -> Result<ToricElement> {
    let m = torus.rank();
    if c.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: c.len() });
    }
    let form = torus.form();
    let mut acc = ToricElement::one(torus);
    for (i, &ci) in c.iter().enumerate() {
        let mut e = vec![0; m];
        e[i] = ci;
        // X_i^{c_i} = X^{c_i e_i} since L(e_i, e_i) = 0
        acc = acc.try_mul(&ToricElement::x(torus, e))?;
    }
    let mut pre = 0;
    for i in 0..m {
        for j in (i + 1)..m {
            pre += c[i] * c[j] * form.get(j, i);
        }
    }
    Ok(acc.scale_qpow(pre))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kron_form() -> SkewForm {
        SkewForm::new(&[
            vec![0, 0, -1, 0],
            vec![0, 0, 0, -1],
            vec![1, 0, 0, -2],
            vec![0, 1, 2, 0],
        ])
        .unwrap()
    }

    #[test]
    fn monomial_product() {
        let form = kron_form();
        let (k, s) = monomial_mul(&form, &[1, 0, 0, 0], &[0, 0, 1, 0]).unwrap();
        assert_eq!((k, s), (-1, vec![1, 0, 1, 0]));
        assert_eq!(monomial_mul(&form, &[2, 1, 0, 3], &[-2, -1, 0, -3]).unwrap().0, 0);
        assert!(monomial_mul(&form, &[1, 0], &[0, 0, 0, 0]).is_err());
    }

    #[test]
    fn ordered_product_of_initial_variables() {
        let torus = Torus::new(kron_form(), Mode::Formal);
        let mut prod = ToricElement::one(&torus);
        for i in [0usize, 1, 3] {
            let mut e = vec![0; 4];
            e[i] = 1;
            prod = &prod * &ToricElement::x(&torus, e);
        }
        // (X1 X2) X4 = t^{L(e1+e2, e4)} X^{(1,1,0,1)} = t^{-1} X^{(1,1,0,1)}
        assert_eq!(prod, ToricElement::x(&torus, vec![1, 1, 0, 1]).scale_qpow(-1));
        assert_eq!(
            normal_order(&torus, &[1, 1, 0, 1]).unwrap(),
            ToricElement::x(&torus, vec![1, 1, 0, 1])
        );
    }

    #[test]
    fn right_division() {
        let torus = Torus::new(kron_form(), Mode::Formal);
        let a = &ToricElement::x(&torus, vec![1, 0, 0, 0])
            + &ToricElement::x(&torus, vec![0, -1, 2, 0]).scale_qpow(3);
        let d = &ToricElement::x(&torus, vec![0, 1, 0, 0])
            + &ToricElement::x(&torus, vec![1, 0, 1, 1]);
        let prod = &a * &d;
        assert_eq!(prod.div_right(&d).unwrap(), a);
        let bad = &prod + &ToricElement::one(&torus);
        assert!(bad.div_right(&d).is_err());
    }

    #[test]
    fn rendering() {
        let torus = Torus::new(kron_form(), Mode::Formal);
        let x = &ToricElement::x(&torus, vec![-1, 2, 0, 0])
            + &ToricElement::x(&torus, vec![-1, 0, 1, 0]).scale_qpow(1);
        assert_eq!(x.to_string(), "q^{1/2} * X^(-1,0,1,0) + 1 * X^(-1,2,0,0)");
    }
}
