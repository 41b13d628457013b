//! Ice quivers, exchange matrices and compatible skew forms.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::intlin::{lex_min_abs, solve_integer, IMat};
use crate::torus::SkewForm;

/// An acyclic quiver whose vertices `n..m` (0-based) are frozen.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct IceQuiver {
    m: usize,
    n: usize,
    arrows: Vec<(usize, usize)>,
}

/// Kahn's algorithm; `None` when a cycle exists.
pub fn topological_order(v: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; v];
    for &(_, t) in arrows {
        indeg[t] += 1;
    }
    let mut ready: Vec<usize> = (0..v).filter(|&i| indeg[i] == 0).collect();
    ready.reverse();
    let mut order = Vec::with_capacity(v);
    while let Some(x) = ready.pop() {
        order.push(x);
        let mut next = Vec::new();
        for &(s, t) in arrows {
            if s == x {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    next.push(t);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        for t in next.into_iter().rev() {
            ready.push(t);
        }
    }
    (order.len() == v).then_some(order)
}

impl IceQuiver {
    pub fn new(m: usize, n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if n > m {
            return Err(Error::Invalid(format!("{n} principal vertices exceed {m}")));
        }
        for &(s, t) in &arrows {
            if s >= m || t >= m {
                return Err(Error::Invalid(format!(
                    "arrow {} -> {} out of range",
                    s + 1,
                    t + 1
                )));
            }
            if s == t {
                return Err(Error::Cyclic);
            }
        }
        topological_order(m, &arrows).ok_or(Error::Cyclic)?;
        Ok(Self { m, n, arrows })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn count(&self, s: usize, t: usize) -> i64 {
        self.arrows.iter().filter(|&&a| a == (s, t)).count() as i64
    }

    /// Arrows joining two frozen vertices; they do not enter `B~`.
    pub fn warnings(&self) -> Vec<String> {
        self.arrows
            .iter()
            .filter(|&&(s, t)| s >= self.n && t >= self.n)
            .map(|&(s, t)| format!("arrow {} -> {} joins frozen vertices and is ignored", s + 1, t + 1))
            .collect()
    }

    /// The full subquiver on the principal vertices.
    pub fn principal_arrows(&self) -> Vec<(usize, usize)> {
        self.arrows
            .iter()
            .copied()
            .filter(|&(s, t)| s < self.n && t < self.n)
            .collect()
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != i)
    }

    /// Reverses every arrow incident to `i`.
    pub fn reflect(&self, i: usize) -> Self {
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == i || t == i { (t, s) } else { (s, t) })
            .collect();
        Self { m: self.m, n: self.n, arrows }
    }
}

/// Adds a frozen vertex `n+i` with one arrow `n+i -> i` for each `i`.
pub fn standard_framing(n: usize, arrows: &[(usize, usize)]) -> Result<IceQuiver> {
    let mut all = arrows.to_vec();
    for i in 0..n {
        all.push((n + i, i));
    }
    IceQuiver::new(2 * n, n, all)
}

/// The matrices attached to an ice quiver.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExchangeData {
    pub btilde: IMat,
    pub rtilde: IMat,
    pub rtilde_tr: IMat,
    pub itilde: IMat,
    pub b: IMat,
    pub r: IMat,
}

impl ExchangeData {
    /// `(I~ - R~) v` for `v` in `Z^n`.
    pub fn i_minus_r(&self, v: &[i64]) -> Vec<i64> {
        self.itilde.sub(&self.rtilde).mul_vec(v)
    }

    /// `B~ e`.
    pub fn b_apply(&self, v: &[i64]) -> Vec<i64> {
        self.btilde.mul_vec(v)
    }

    pub fn m(&self) -> usize {
        self.btilde.rows()
    }

    pub fn n(&self) -> usize {
        self.btilde.cols()
    }

    /// Principal Euler form.
    pub fn euler(&self, a: &[i64], b: &[i64]) -> i64 {
        euler_form(&self.r, a, b)
    }
}

pub fn build_matrices(q: &IceQuiver) -> ExchangeData {
    let (m, n) = (q.m, q.n);
    let mut rt = IMat::zeros(m, n);
    let mut rtt = IMat::zeros(m, n);
    let mut it = IMat::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            rt.set(i, j, q.count(j, i));
            rtt.set(i, j, q.count(i, j));
            if i == j {
                it.set(i, j, 1);
            }
        }
    }
    let bt = rtt.sub(&rt);
    ExchangeData {
        b: bt.top(n),
        r: rt.top(n),
        btilde: bt,
        rtilde: rt,
        rtilde_tr: rtt,
        itilde: it,
    }
}

/// `a^T (I - R) b`.
pub fn euler_form(r: &IMat, a: &[i64], b: &[i64]) -> i64 {
    let n = r.rows();
    let mut s = 0;
    for i in 0..n {
        s += a[i] * b[i];
        for (j, bj) in b.iter().enumerate().take(n) {
            s -= a[i] * r.get(i, j) * bj;
        }
    }
    s
}

/// A skew form `L` with `B~^T L = (D | 0)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatiblePair {
    pub lambda: SkewForm,
    pub btilde: IMat,
    pub d: Vec<i64>,
}

impl CompatiblePair {
    pub fn new(lambda: SkewForm, btilde: IMat) -> Result<Self> {
        let d = check_compatible(&lambda, &btilde)?;
        Ok(Self { lambda, btilde, d })
    }
}

/// Returns the diagonal of `D` when `B~^T L = (D | 0)` with `D > 0`.
pub fn check_compatible(lambda: &SkewForm, btilde: &IMat) -> Result<Vec<i64>> {
    let m = lambda.dim();
    if btilde.rows() != m {
        return Err(Error::DimensionMismatch { expected: m, got: btilde.rows() });
    }
    let n = btilde.cols();
    let mut d = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..m {
            let v: i64 = (0..m).map(|k| btilde.get(k, i) * lambda.get(k, j)).sum();
            if i == j {
                if v <= 0 {
                    return Err(Error::Incompatible(format!(
                        "diagonal entry {} is {v}, not positive",
                        i + 1
                    )));
                }
                d.push(v);
            } else if v != 0 {
                let which = if j < n { "left block is not diagonal" } else { "right block is nonzero" };
                return Err(Error::Incompatible(format!(
                    "{which}: entry ({}, {}) is {v}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(d)
}

/// Solves `L (-B~) = I~` for a skew integer `L`, taking the strictly lower
/// entries (row-major) lexicographically smallest in absolute value.
pub fn solve_lambda(btilde: &IMat) -> Result<SkewForm> {
    let (m, n) = (btilde.rows(), btilde.cols());
    let idx = |i: usize, j: usize| -> usize { i * (i - 1) / 2 + j };
    let unknowns = m * (m - 1) / 2;
    let mut rows = Vec::with_capacity(m * n);
    let mut rhs = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut row = vec![0i128; unknowns];
            for k in 0..m {
                let coeff = -i128::from(btilde.get(k, j));
                if coeff == 0 || k == i {
                    continue;
                }
                if i > k {
                    row[idx(i, k)] += coeff;
                } else {
                    row[idx(k, i)] -= coeff;
                }
            }
            rows.push(row);
            rhs.push(i128::from(i == j));
        }
    }
    let lat = solve_integer(&rows, &rhs, unknowns)?
        .ok_or_else(|| Error::NoSolution("no skew integer form satisfies L(-B~) = I~".into()))?;
    let x = lex_min_abs(&lat)?;
    let mut full = vec![vec![0i64; m]; m];
    for i in 0..m {
        for k in 0..i {
            let v = i64::try_from(x[idx(i, k)])
                .map_err(|_| Error::Internal("form entry overflow".into()))?;
            full[i][k] = v;
            full[k][i] = -v;
        }
    }
    SkewForm::new(&full)
}

/// Outcome of checking the bilinear identities for one set of vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearReport {
    pub failures: Vec<String>,
}

impl BilinearReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `L((I~-R~)m, B~e) = -<e,m>`, `L(B~e, B~f) = <e,f> - <f,e>` and the
/// expansion of `L(B~e - (I~-R~)m, B~f - (I~-R~)l)`.
pub fn verify_bilinear_identities(
    lambda: &SkewForm,
    ex: &ExchangeData,
    m: &[i64],
    e: &[i64],
    f: &[i64],
    l: &[i64],
) -> BilinearReport {
    let mut failures = Vec::new();
    let ir_m = ex.i_minus_r(m);
    let ir_l = ex.i_minus_r(l);
    let be = ex.b_apply(e);
    let bf = ex.b_apply(f);
    let lhs1 = lambda.eval(&ir_m, &be);
    let rhs1 = -ex.euler(e, m);
    if lhs1 != rhs1 {
        failures.push(format!("first identity: {lhs1} != {rhs1}"));
    }
    let lhs2 = lambda.eval(&be, &bf);
    let rhs2 = ex.euler(e, f) - ex.euler(f, e);
    if lhs2 != rhs2 {
        failures.push(format!("second identity: {lhs2} != {rhs2}"));
    }
    let u: Vec<i64> = be.iter().zip(&ir_m).map(|(a, b)| a - b).collect();
    let w: Vec<i64> = bf.iter().zip(&ir_l).map(|(a, b)| a - b).collect();
    let lhs3 = lambda.eval(&u, &w);
    let rhs3 = lambda.eval(&ir_m, &ir_l) + ex.euler(e, f) - ex.euler(f, e) - ex.euler(e, l)
        + ex.euler(f, m);
    if lhs3 != rhs3 {
        failures.push(format!("expansion: {lhs3} != {rhs3}"));
    }
    BilinearReport { failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker() -> IceQuiver {
        standard_framing(2, &[(0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn kronecker_matrices() {
        let ex = build_matrices(&kronecker());
        assert_eq!(ex.btilde.to_rows(), vec![vec![0, 2], vec![-2, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(ex.rtilde.get(1, 0), 2);
        let nonzero = ex.rtilde.to_rows().concat().iter().filter(|&&v| v != 0).count();
        assert_eq!(nonzero, 1);
        assert_eq!(ex.btilde, ex.rtilde_tr.sub(&ex.rtilde));
        assert_eq!(euler_form(&ex.r, &[1, 0], &[0, 1]), 0);
        assert_eq!(euler_form(&ex.r, &[0, 1], &[1, 0]), -2);
    }

    #[test]
    fn kronecker_form() {
        let ex = build_matrices(&kronecker());
        let lam = solve_lambda(&ex.btilde).unwrap();
        assert_eq!(
            lam.rows(),
            vec![vec![0, 0, -1, 0], vec![0, 0, 0, -1], vec![1, 0, 0, -2], vec![0, 1, 2, 0]]
        );
        assert_eq!(check_compatible(&lam, &ex.btilde).unwrap(), vec![1, 1]);
    }

    #[test]
    fn alternative_pair() {
        let lam = SkewForm::new(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let b = IMat::from_rows(&[vec![0, 2], vec![-2, 0]]).unwrap();
        assert_eq!(check_compatible(&lam, &b).unwrap(), vec![2, 2]);
        assert!(check_compatible(&SkewForm::zero(2), &b).is_err());
    }

    #[test]
    fn cycles_rejected() {
        assert_eq!(IceQuiver::new(2, 2, vec![(0, 1), (1, 0)]), Err(Error::Cyclic));
    }

    #[test]
    fn framing_single_vertex() {
        let q = standard_framing(1, &[]).unwrap();
        assert_eq!(q.arrows(), &[(1, 0)]);
        let ex = build_matrices(&q);
        assert_eq!(ex.btilde.to_rows(), vec![vec![0], vec![1]]);
        let lam = solve_lambda(&ex.btilde).unwrap();
        assert_eq!(lam.rows(), vec![vec![0, -1], vec![1, 0]]);
    }
}
