//! Integer representation templates valid over every prime, and
//! counting polynomials by interpolation.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Fp, Mat};
use super::quiver::Quiver;
use super::rep::QuiverRep;
use super::subspace::grassmannian_count;
use crate::error::{Error, Result};

/// An entry `constant + coeff * L`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Entry {
    pub constant: i64,
    pub lambda: i64,
}

impl Entry {
    pub fn int(c: i64) -> Self {
        Self { constant: c, lambda: 0 }
    }

    pub fn lam() -> Self {
        Self { constant: 0, lambda: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct EntryMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Entry>,
}

impl EntryMat {
    pub fn from_ints(rows: usize, cols: usize, data: &[i64]) -> Self {
        Self { rows, cols, data: data.iter().map(|&c| Entry::int(c)).collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Entry::default(); n * n];
        for i in 0..n {
            data[i * n + i] = Entry::int(1);
        }
        Self { rows: n, cols: n, data }
    }
}

/// A representation defined over `Z[L]`.
#[derive(Clone, Debug)]
pub struct RepFamily {
    pub quiver: Arc<Quiver>,
    pub dims: Vec<usize>,
    pub mats: Vec<EntryMat>,
    pub bad_primes: Vec<u32>,
}

impl RepFamily {
    pub fn new(quiver: Arc<Quiver>, dims: Vec<usize>, mats: Vec<EntryMat>) -> Result<Self> {
        if dims.len() != quiver.vertices() || mats.len() != quiver.arrows().len() {
            return Err(Error::Invalid("family shape does not match quiver".into()));
        }
        for (&(s, t), m) in quiver.arrows().iter().zip(&mats) {
            if m.rows != dims[t] || m.cols != dims[s] || m.data.len() != m.rows * m.cols {
                return Err(Error::Invalid("family matrix has the wrong shape".into()));
            }
        }
        Ok(Self { quiver, dims, mats, bad_primes: Vec::new() })
    }

    pub fn from_rep_ints(quiver: Arc<Quiver>, dims: Vec<usize>, mats: Vec<Vec<i64>>) -> Result<Self> {
        let ms = quiver
            .arrows()
            .iter()
            .zip(&mats)
            .map(|(&(s, t), d)| EntryMat::from_ints(dims[t], dims[s], d))
            .collect();
        Self::new(quiver, dims, ms)
    }

    pub fn has_parameter(&self) -> bool {
        self.mats.iter().any(|m| m.data.iter().any(|e| e.lambda != 0))
    }

    pub fn instantiate(&self, p: u32, lambda: Option<u32>) -> Result<QuiverRep> {
        if self.bad_primes.contains(&p) {
            return Err(Error::Invalid(format!("family is not defined at p = {p}")));
        }
        if self.has_parameter() && lambda.is_none() {
            return Err(Error::Invalid("family needs a value for L".into()));
        }
        let fp = Fp::new(p);
        let l = lambda.unwrap_or(0) as i64;
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let data = m.data.iter().map(|e| fp.reduce(e.constant + e.lambda * l)).collect();
                Mat::from_vec(m.rows, m.cols, data)
            })
            .collect();
        QuiverRep::new(self.quiver.clone(), p, self.dims.clone(), mats)
    }

    /// Instantiation where `L` is read as the integer `lambda`.
    pub fn at_integer(&self, p: u32, lambda: i64) -> Result<QuiverRep> {
        let l = Fp::new(p).reduce(lambda);
        self.instantiate(p, Some(l))
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes `>= start`, in increasing order, skipping `avoid`.
pub fn primes_from(start: u32, count: usize, avoid: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(count);
    let mut n = start;
    while out.len() < count {
        if is_prime(n) && !avoid.contains(&n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// Coefficients (lowest degree first) of the polynomial of degree `<= xs.len() - 1`
/// through the points.
pub fn lagrange(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += b * &scale;
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

pub fn eval_poly(coeffs: &[BigInt], x: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * BigInt::from(x) + c;
    }
    acc
}

/// Counting polynomial with its interpolation and held-out primes.
#[derive(Clone, Debug)]
pub struct CountingPoly {
    pub coeffs: Vec<BigInt>,
    pub primes: Vec<u32>,
    pub held_out: u32,
}

/// Interpolates `p -> f(p)` at `degree + 1` primes starting from `start`
/// and checks the result at the next prime.
pub fn interpolate_counts<F: FnMut(u32) -> Result<u128>>(
    degree: usize,
    start: u32,
    avoid: &[u32],
    mut f: F,
) -> Result<CountingPoly> {
    let ps = primes_from(start, degree + 2, avoid);
    let (fit, held) = ps.split_at(degree + 1);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &p in fit {
        xs.push(BigRational::from_integer(BigInt::from(p)));
        ys.push(BigRational::from_integer(BigInt::from(f(p)?)));
    }
    let rat = lagrange(&xs, &ys);
    let mut coeffs = Vec::with_capacity(rat.len());
    for c in rat {
        if !c.is_integer() {
            return Err(Error::Interpolation(format!("non-integer coefficient {c}")));
        }
        coeffs.push(c.to_integer());
    }
    let held_out = held[0];
    let direct = BigInt::from(f(held_out)?);
    if eval_poly(&coeffs, held_out) != direct {
        return Err(Error::Interpolation(format!("held-out prime {held_out} disagrees with the direct count")));
    }
    Ok(CountingPoly { coeffs, primes: fit.to_vec(), held_out })
}

/// `|Gr_e|` of a family as a polynomial in `q`, with `L` read as `lambda`.
pub fn grassmannian_poly(fam: &RepFamily, e: &[usize], lambda: i64) -> Result<CountingPoly> {
    if e.len() != fam.dims.len() || e.iter().zip(&fam.dims).any(|(a, b)| a > b) {
        return Ok(CountingPoly { coeffs: vec![BigInt::zero()], primes: Vec::new(), held_out: 0 });
    }
    let degree: usize = e.iter().zip(&fam.dims).map(|(a, m)| a * (m - a)).sum();
    interpolate_counts(degree, 2, &fam.bad_primes, |p| {
        let m = fam.at_integer(p, lambda)?;
        grassmannian_count(&m, e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_in_a_plane() {
        let q = Arc::new(Quiver::new(1, vec![]).unwrap());
        let fam = RepFamily::from_rep_ints(q, vec![2], vec![]).unwrap();
        let poly = grassmannian_poly(&fam, &[1], 0).unwrap();
        assert_eq!(poly.coeffs, vec![BigInt::from(1), BigInt::from(1)]);
        let zero = grassmannian_poly(&fam, &[0], 0).unwrap();
        assert_eq!(zero.coeffs, vec![BigInt::from(1)]);
    }

    #[test]
    fn interpolation_rejects_non_polynomials() {
        let res = interpolate_counts(1, 2, &[], |p| Ok((p as u128) * (p as u128)));
        assert!(res.is_err());
    }
}
