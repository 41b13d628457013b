//! Gradings, support cones, expansion in standard monomials and the
//! independence checks built on them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::VerifyReport;
use crate::catalog::Framed;
use crate::ccmap::{cc_map, generic_variable, ClusterObject};
use crate::error::{Error, Result};
use crate::finrep::family::is_prime;
use crate::finrep::registry::Registry;
use crate::intlin::IMat;
use crate::scalar::{QScalar, SpecScalar};
use crate::seed::standard_monomial;
use crate::torus::{Torus, ToricElement};

pub use crate::catalog::{find_grading, is_graded};

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Largest `eps`-degree of a principal exponent of `x`.
pub fn filtration_degree(x: &ToricElement, eps: &[i64]) -> Option<i64> {
    x.terms().map(|(e, _)| dot(&e[..eps.len()], eps)).max()
}

/// Principal block of `B~`.
fn principal_b(fq: &Framed) -> IMat {
    let n = fq.n();
    let mut b = IMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            b.set(i, j, fq.pair.btilde.get(i, j));
        }
    }
    b
}

fn has_multiple_arrows(fq: &Framed) -> bool {
    let arrows = fq.principal.arrows();
    arrows.iter().enumerate().any(|(i, a)| arrows[i + 1..].iter().any(|b| b == a || (b.0 == a.1 && b.1 == a.0)))
}

/// Whether `v` is a nonnegative integer combination of the columns of `b`
/// with total weight at most `bound`.
fn in_cone(b: &IMat, v: &[i64], bound: i64) -> bool {
    fn rec(b: &IMat, rest: &[i64], col: usize, left: i64) -> bool {
        if rest.iter().all(|&x| x == 0) {
            return true;
        }
        if col == b.cols() {
            return false;
        }
        (0..=left).any(|k| {
            let next: Vec<i64> = rest.iter().enumerate().map(|(i, r)| r - k * b.get(i, col)).collect();
            rec(b, &next, col + 1, left - k)
        })
    }
    bound >= 0 && rec(b, v, 0, bound)
}

/// The principal exponent of the top term, `-(I-R)m` plus principal shifts.
pub fn cone_vertex(fq: &Framed, obj: &ClusterObject) -> Vec<i64> {
    let n = fq.n();
    let base = fq.ex.i_minus_r(&obj.module.dim_vec());
    (0..n).map(|i| -base[i] + obj.shifts[i] as i64).collect()
}

/// Every principal exponent of `X_obj` lies in `lambda + N{B alpha_i}`, and the
/// `lambda` component is one term with coefficient `+- q^{k/2}`.
pub fn support_cone_check(fq: &Framed, obj: &ClusterObject, torus: &Arc<Torus>) -> Result<VerifyReport> {
    let b = principal_b(fq);
    let eps = fq
        .grading
        .clone()
        .filter(|e| is_graded(&b, e))
        .ok_or_else(|| Error::Invalid(format!("{} is not graded", fq.name)))?;
    if has_multiple_arrows(fq) {
        return Err(Error::Invalid(format!("{} has multiple arrows", fq.name)));
    }
    let prime = torus.mode().prime();
    let inputs = format!("M={} shifts={:?}", super::dims_str(obj.module.dims()), &obj.shifts[..fq.n()]);
    let report = VerifyReport::new("cone", &fq.name, prime, inputs);
    let x = cc_map(fq, obj, torus)?;
    let lambda = cone_vertex(fq, obj);
    for (e, _) in x.terms() {
        let diff: Vec<i64> = e[..fq.n()].iter().zip(&lambda).map(|(a, b)| a - b).collect();
        if !in_cone(&b, &diff, -dot(&diff, &eps)) {
            return Ok(report.fail(format!("exponent {e:?} outside the cone at {lambda:?}")));
        }
    }
    let comps = x.components(fq.n());
    let Some(top) = comps.get(&lambda) else {
        return Ok(report.fail("no term at the cone vertex"));
    };
    if top.len() != 1 || top.terms().next().and_then(|(_, c)| c.as_signed_power()).is_none() {
        return Ok(report.fail(format!("vertex component {top} is not a monomial")));
    }
    let mut r = report;
    r.lhs = format!("{} terms in the cone", x.len());
    r.rhs = top.canonical();
    Ok(r)
}

/// Coefficients of an expansion in standard monomials.
#[derive(Clone, Debug)]
pub struct Expansion {
    /// `(d, coefficient)` in the order found, highest degree first.
    pub terms: Vec<(Vec<i64>, ToricElement)>,
}

impl Expansion {
    pub fn leading(&self) -> Option<&(Vec<i64>, ToricElement)> {
        self.terms.first()
    }

    /// Whether every coefficient lies in `Z[q^{+-1/2}]` with frozen monomials.
    pub fn integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.terms().all(|(_, s)| scalar_integral(s)))
    }
}

fn scalar_integral(s: &QScalar) -> bool {
    match s {
        QScalar::Spec(x) => x.is_p_integral(),
        QScalar::Formal(_) => true,
    }
}

/// Whether `c` is one term `+- q^{k/2} X^f`.
pub fn is_monomial(c: &ToricElement) -> bool {
    c.len() == 1 && c.terms().all(|(_, s)| s.as_signed_power().is_some())
}

/// Standard monomials of a box with their top exponents.
pub struct StandardBasis {
    pub eps: Vec<i64>,
    pub monomials: Vec<(Vec<i64>, ToricElement)>,
    top: BTreeMap<Vec<i64>, usize>,
}

fn box_points(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn top_exponent(x: &ToricElement, n: usize, eps: &[i64]) -> Option<Vec<i64>> {
    let comps = x.components(n);
    let best = comps.keys().map(|e| dot(e, eps)).max()?;
    let tops: Vec<&Vec<i64>> = comps.keys().filter(|e| dot(e, eps) == best).collect();
    (tops.len() == 1).then(|| tops[0].clone())
}

impl StandardBasis {
    /// Builds the standard monomials for `d` in `[lo, hi]^n`; fails unless
    /// each has a unique top exponent and these are pairwise distinct.
    pub fn new(fq: &Framed, lo: i64, hi: i64, eps: &[i64], torus: &Arc<Torus>) -> Result<Self> {
        let n = fq.n();
        let mut monomials = Vec::new();
        let mut top = BTreeMap::new();
        for d in box_points(n, lo, hi) {
            let sm = standard_monomial(fq, &d, torus)?;
            let t = top_exponent(&sm, n, eps)
                .ok_or_else(|| Error::Internal(format!("standard monomial {d:?} has no unique top exponent")))?;
            if top.insert(t.clone(), monomials.len()).is_some() {
                return Err(Error::Internal(format!("two standard monomials share the top exponent {t:?}")));
            }
            monomials.push((d, sm));
        }
        Ok(Self { eps: eps.to_vec(), monomials, top })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Triangular elimination along decreasing degree.
    pub fn expand(&self, x: &ToricElement) -> Result<Expansion> {
        let n = self.eps.len();
        let mut rest = x.clone();
        let mut terms = Vec::new();
        let limit = 4 * self.monomials.len() + 16;
        while !rest.is_zero() {
            if terms.len() > limit {
                return Err(Error::Invalid(format!("expansion does not terminate; residual {rest}")));
            }
            let comps = rest.components(n);
            let (v, comp) = comps
                .iter()
                .max_by_key(|(e, _)| (dot(e, &self.eps), (*e).clone()))
                .map(|(e, c)| (e.clone(), c.clone()))
                .expect("nonzero element");
            let Some(&k) = self.top.get(&v) else {
                return Err(Error::Invalid(format!("not in the span of the box; residual {rest}")));
            };
            let (d, sm) = &self.monomials[k];
            let lead = &sm.components(n)[&v];
            let c = comp.try_mul(&lead.monomial_inverse()?)?;
            rest = &rest - &c.try_mul(sm)?;
            terms.push((d.clone(), c));
        }
        Ok(Expansion { terms })
    }
}

/// A prime `l = 3 mod 4` near `2^31` in which `p` is a nonzero square, and a
/// square root of `p` modulo `l`.
fn modulus_for(p: u32) -> (u64, u64) {
    let mut l: u64 = (1 << 31) - 1;
    loop {
        if l % 4 == 3 && is_prime(l as u32) {
            let r = pow_mod(p as u64, (l + 1) / 4, l);
            if r * r % l == p as u64 % l {
                return (l, r);
            }
        }
        l -= 2;
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn rational_mod(r: &BigRational, l: u64) -> Option<u64> {
    let lb = BigInt::from(l);
    let num = r.numer().mod_floor(&lb).to_u64()?;
    let den = r.denom().mod_floor(&lb).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(num * pow_mod(den, l - 2, l) % l)
}

fn row_rank_mod(rows: &mut [Vec<u64>], l: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], l - 2, l);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % l;
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = (*x + l - f * y % l) % l;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rank over `Q(sqrt p)`.
fn row_rank_exact(rows: &mut [Vec<SpecScalar>], p: u32) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let pr = BigRational::from_integer(BigInt::from(p));
    let inv = |x: &SpecScalar| {
        let norm = x.rational_part() * x.rational_part() - &pr * x.sqrt_part() * x.sqrt_part();
        SpecScalar::new(p, x.rational_part() / &norm, -(x.sqrt_part() / &norm))
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, piv);
        let iv = inv(&rows[rank][c]);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] * &iv;
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the coefficient vectors over `Q(sqrt p)`; the columns are all
/// exponents, frozen ones included.
pub fn rank_over_field(elems: &[ToricElement], p: u32) -> Result<usize> {
    let mut cols: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for x in elems {
        for (e, _) in x.terms() {
            let k = cols.len();
            cols.entry(e.clone()).or_insert(k);
        }
    }
    let spec = |s: &QScalar| -> Result<SpecScalar> {
        s.as_spec().cloned().ok_or_else(|| Error::Invalid("rank test needs a specialized torus".into()))
    };
    let (l, root) = modulus_for(p);
    let mut rows = vec![vec![0u64; cols.len()]; elems.len()];
    let mut reducible = true;
    for (row, x) in rows.iter_mut().zip(elems) {
        for (e, s) in x.terms() {
            let s = spec(s)?;
            match (rational_mod(s.rational_part(), l), rational_mod(s.sqrt_part(), l)) {
                (Some(a), Some(b)) => row[cols[e]] = (a + b * root) % l,
                _ => reducible = false,
            }
        }
    }
    if reducible {
        let r = row_rank_mod(&mut rows, l);
        if r == elems.len() {
            return Ok(r);
        }
    }
    let mut exact = vec![vec![SpecScalar::zero(p); cols.len()]; elems.len()];
    for (row, x) in exact.iter_mut().zip(elems) {
        for (e, s) in x.terms() {
            row[cols[e]] = spec(s)?;
        }
    }
    Ok(row_rank_exact(&mut exact, p))
}

/// Top exponents of `elems`, each required to be unique in its element with
/// a monomial coefficient; `None` if some element fails this.
pub fn leading_exponents(elems: &[ToricElement], n: usize, eps: &[i64]) -> Option<Vec<Vec<i64>>> {
    elems
        .iter()
        .map(|x| {
            let t = top_exponent(x, n, eps)?;
            is_monomial(&x.components(n)[&t]).then_some(t)
        })
        .collect()
}

fn distinct(v: &[Vec<i64>]) -> bool {
    let mut s = v.to_vec();
    s.sort();
    s.dedup();
    s.len() == v.len()
}

/// Standard monomials of `[lo, hi]^n` are independent: distinct monomial
/// top terms, and full rank over `Q(sqrt p)`.
pub fn standard_independence(fq: &Framed, lo: i64, hi: i64, torus: &Arc<Torus>) -> Result<VerifyReport> {
    let n = fq.n();
    let p = torus.mode().prime().ok_or_else(|| Error::Invalid("needs a specialized torus".into()))?;
    let report = VerifyReport::new("standard-basis", &fq.name, Some(p), format!("box [{lo},{hi}]^{n}"));
    let elems: Vec<ToricElement> =
        box_points(n, lo, hi).iter().map(|d| standard_monomial(fq, d, torus)).collect::<Result<_>>()?;
    let rank = rank_over_field(&elems, p)?;
    let mut r = report;
    let tops = fq.grading.as_ref().and_then(|eps| leading_exponents(&elems, n, eps));
    r.notes.push(match &tops {
        Some(t) if distinct(t) => String::from("top terms are distinct monomials"),
        Some(_) => String::from("top terms collide"),
        None => String::from("no grading or a top term is not a monomial"),
    });
    r.lhs = format!("rank {rank}");
    r.rhs = format!("{} elements", elems.len());
    if rank != elems.len() {
        return Ok(r.fail("rank is not full"));
    }
    Ok(r)
}

/// Expands each cluster variable of `vars` in standard monomials and checks
/// the leading coefficient is a monomial.
pub fn cluster_variable_expansions(
    fq: &Framed,
    vars: &[ToricElement],
    basis: &StandardBasis,
) -> Result<Vec<VerifyReport>> {
    let mut out = Vec::new();
    for x in vars {
        let prime = x.mode().prime();
        let report = VerifyReport::new("standard-basis", &fq.name, prime, format!("X = {x}"));
        out.push(match basis.expand(x) {
            Err(e) => report.fail(format!("{e}")),
            Ok(exp) => {
                let (d, c) = exp.leading().expect("nonzero").clone();
                let mut r = report;
                r.lhs = format!("leading d = {d:?}");
                r.rhs = format!("coefficient {c}");
                if !is_monomial(&c) {
                    r.fail("leading coefficient is not a monomial")
                } else {
                    r.note(format!("{} standard monomials", exp.terms.len()))
                }
            }
        });
    }
    Ok(out)
}

/// A toric element tagged with the vector that produced it.
pub type Labelled = (Vec<i64>, ToricElement);

/// `X_d` for every `d` in `[lo, hi]^n`: distinct monomial top terms, full rank
/// over `Q(sqrt p)`, and an expansion in the standard monomials of `basis`
/// with coefficients in `Z[q^{+-1/2}]` and frozen monomials.
pub fn generic_basis(
    fq: &Framed,
    reg: &mut Registry,
    lo: i64,
    hi: i64,
    basis: &StandardBasis,
    torus: &Arc<Torus>,
) -> Result<(Vec<Labelled>, VerifyReport)> {
    let n = fq.n();
    let p = reg.p();
    let mut elems = Vec::new();
    for d in box_points(n, lo, hi) {
        let x = generic_variable(fq, reg, &d, torus)?;
        elems.push((d, x));
    }
    let xs: Vec<ToricElement> = elems.iter().map(|(_, x)| x.clone()).collect();
    let report = VerifyReport::new("basis", &fq.name, Some(p), format!("box [{lo},{hi}]^{n}"));
    let rank = rank_over_field(&xs, p)?;
    let mut r = report;
    r.lhs = format!("rank {rank}");
    r.rhs = format!("{} elements", xs.len());
    if rank != xs.len() {
        return Ok((elems, r.fail("rank is not full")));
    }
    match leading_exponents(&xs, n, &basis.eps) {
        Some(t) if distinct(&t) => r.notes.push("top terms are distinct monomials".into()),
        _ => return Ok((elems, r.fail("top terms are not distinct monomials"))),
    }
    for (d, x) in &elems {
        match basis.expand(x) {
            Err(e) => return Ok((elems.clone(), r.fail(format!("X_{d:?}: {e}")))),
            Ok(exp) if !exp.integral() => return Ok((elems.clone(), r.fail(format!("X_{d:?} has a non-integral coefficient")))),
            Ok(_) => {}
        }
    }
    r.notes.push("all expansions have integral coefficients".into());
    Ok((elems, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{a2, a3_graded, atilde, kronecker};
    use crate::scalar::Mode;
    use crate::seed::{explore, QuantumSeed};

    #[test]
    fn cones() {
        for fq in [a2(), a3_graded(), atilde(2, 1).unwrap()] {
            let p = 3;
            let t = fq.torus(Mode::Specialized(p));
            let mut reg = Registry::new(&fq.principal, p);
            let max = vec![1; fq.n()];
            for id in super::super::hall::indecomposables(&mut reg, &max, |_| true).unwrap() {
                let obj = ClusterObject::module(&fq, reg.rep(&id).clone());
                let r = support_cone_check(&fq, &obj, &t).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
        assert!(support_cone_check(&kronecker(), &ClusterObject::zero(&kronecker(), 3), &kronecker().torus(Mode::Specialized(3))).is_err());
    }

    #[test]
    fn expansions_of_cluster_variables() {
        for (fq, count) in [(a2(), 5), (a3_graded(), 9)] {
            let t = fq.torus(Mode::Specialized(3));
            let eps = fq.grading.clone().unwrap();
            let basis = StandardBasis::new(&fq, -2, 2, &eps, &t).unwrap();
            let g = explore(&QuantumSeed::initial(&fq, &t), 12).unwrap();
            assert_eq!(g.variables.len(), count);
            for r in cluster_variable_expansions(&fq, &g.variables, &basis).unwrap() {
                assert!(r.passed(), "{r}");
            }
            let x = standard_monomial(&fq, &vec![1; fq.n()], &t).unwrap();
            let exp = basis.expand(&x).unwrap();
            assert_eq!(exp.terms.len(), 1);
            assert_eq!(exp.terms[0].1, ToricElement::one(&t));
        }
    }

    #[test]
    fn small_independence() {
        let fq = a2();
        let t = fq.torus(Mode::Specialized(3));
        let r = standard_independence(&fq, -2, 2, &t).unwrap();
        assert!(r.passed(), "{r}");
        let same = vec![ToricElement::one(&t), ToricElement::one(&t).scale_qpow(2)];
        assert_eq!(rank_over_field(&same, 3).unwrap(), 1);
    }

    #[test]
    fn kronecker_generic_basis() {
        let fq = kronecker();
        let t = fq.torus(Mode::Specialized(3));
        let mut reg = Registry::new(&fq.principal, 3);
        let basis = StandardBasis::new(&fq, -3, 3, fq.grading.as_ref().unwrap(), &t).unwrap();
        let (_, r) = generic_basis(&fq, &mut reg, -1, 1, &basis, &t).unwrap();
        assert!(r.passed(), "{r}");
    }
}
