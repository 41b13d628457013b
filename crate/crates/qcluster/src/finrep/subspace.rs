//! Subspace and submodule enumeration.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{Fp, Mat};
use super::rep::QuiverRep;
use crate::error::{Error, Result};

/// Default cap on candidate subspace tuples visited in one enumeration.
pub const SUBSPACE_BUDGET: u128 = 10_000_000;

/// Number of `k`-dimensional subspaces of `F_p^n`.
pub fn gaussian_binomial(n: usize, k: usize, p: u32) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= p.pow((n - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Visits every `k`-dimensional subspace of `F_p^n` once, as an `n x k`
/// matrix whose columns are the rows of its reduced echelon form.
/// Stops early if `visit` returns `true`.
pub fn for_each_subspace<F: FnMut(&Mat) -> bool>(n: usize, k: usize, fp: Fp, visit: &mut F) -> bool {
    if k > n {
        return false;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free slots: (row r, column c) with c > pivots[r] and c not a pivot
        let mut slots = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    slots.push((r, c));
                }
            }
        }
        let mut basis = Mat::zeros(n, k);
        for (r, &pc) in pivots.iter().enumerate() {
            basis.set(pc, r, 1);
        }
        let mut vals = vec![0u32; slots.len()];
        loop {
            if visit(&basis) {
                return true;
            }
            let mut i = 0;
            while i < slots.len() {
                vals[i] += 1;
                if vals[i] == fp.p() {
                    vals[i] = 0;
                    basis.set(slots[i].1, slots[i].0, 0);
                    i += 1;
                } else {
                    basis.set(slots[i].1, slots[i].0, vals[i]);
                    break;
                }
            }
            if i == slots.len() {
                break;
            }
        }
        // next pivot combination
        let mut j = k;
        loop {
            if j == 0 {
                return false;
            }
            j -= 1;
            if pivots[j] < n - k + j {
                pivots[j] += 1;
                for l in j + 1..k {
                    pivots[l] = pivots[l - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Visits the `k`-dimensional subspaces of `F_p^n` containing the column
/// space of `w` (whose columns must be independent).
pub fn for_each_superspace<F: FnMut(&Mat) -> bool>(w: &Mat, k: usize, fp: Fp, visit: &mut F) -> bool {
    let j = w.cols();
    if k < j {
        return false;
    }
    let comp = fp.complement(w);
    for_each_subspace(comp.cols(), k - j, fp, &mut |s: &Mat| {
        let u = w.hstack(&fp.mat_mul(&comp, s));
        visit(&u)
    })
}

struct Walk<'a, F> {
    m: &'a QuiverRep,
    fp: Fp,
    target: Option<&'a [usize]>,
    budget: u128,
    visited: u128,
    chosen: Vec<Mat>,
    visit: F,
    count_sinks: bool,
    total: u128,
}

impl<F: FnMut(&[Mat]) -> bool> Walk<'_, F> {
    fn forced(&self, v: usize) -> Mat {
        let q = self.m.quiver();
        let mut acc = Mat::zeros(self.m.dims()[v], 0);
        for a in q.incoming(v) {
            let s = q.arrows()[a].0;
            acc = acc.hstack(&self.fp.mat_mul(self.m.mat(a), &self.chosen[s]));
        }
        self.fp.col_basis(&acc)
    }

    fn tick(&mut self) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::Budget { what: "subspace tuples", needed: self.visited, limit: self.budget });
        }
        Ok(())
    }

    fn go(&mut self, pos: usize) -> Result<bool> {
        let q = self.m.quiver().clone();
        let order = q.order();
        if pos == order.len() {
            self.tick()?;
            return Ok((self.visit)(&self.chosen));
        }
        let v = order[pos];
        if self.count_sinks && q.is_sink(v) {
            // every remaining vertex is a sink: choices are independent
            let mut prod: u128 = 1;
            for &u in &order[pos..] {
                let w = self.forced(u);
                let need = self.target.map(|t| t[u]);
                let free = self.m.dims()[u] - w.cols();
                let c = match need {
                    Some(e) if e < w.cols() => 0,
                    Some(e) => gaussian_binomial(free, e - w.cols(), self.fp.p()),
                    None => (0..=free).map(|k| gaussian_binomial(free, k, self.fp.p())).sum(),
                };
                prod *= c;
            }
            self.tick()?;
            self.total += prod;
            return Ok(false);
        }
        let w = self.forced(v);
        let dim = self.m.dims()[v];
        let ks: Vec<usize> = match self.target {
            Some(t) => vec![t[v]],
            None => (0..=dim).collect(),
        };
        for k in ks {
            if k < w.cols() || k > dim {
                continue;
            }
            let mut err = None;
            let mut stop = false;
            let mut subs = Vec::new();
            for_each_superspace(&w, k, self.fp, &mut |u: &Mat| {
                subs.push(u.clone());
                false
            });
            for u in subs {
                if let Err(e) = self.tick() {
                    err = Some(e);
                    break;
                }
                self.chosen[v] = u;
                match self.go(pos + 1) {
                    Ok(true) => {
                        stop = true;
                        break;
                    }
                    Ok(false) => {}
                    Err(e) => {
                        err = Some(e);
                        break;
                    }
                }
            }
            if let Some(e) = err {
                return Err(e);
            }
            if stop {
                return Ok(true);
            }
        }
        self.chosen[v] = Mat::zeros(dim, 0);
        Ok(false)
    }
}

/// Visits every submodule of `m` (of dimension vector `e`, if given) as
/// column bases of its spaces.  Stops early when `visit` returns `true`.
pub fn for_each_submodule<F: FnMut(&[Mat]) -> bool>(
    m: &QuiverRep,
    e: Option<&[usize]>,
    budget: u128,
    visit: F,
) -> Result<bool> {
    if let Some(e) = e {
        if e.len() != m.dims().len() || e.iter().zip(m.dims()).any(|(a, b)| a > b) {
            return Ok(false);
        }
    }
    let mut walk = Walk {
        m,
        fp: m.field(),
        target: e,
        budget,
        visited: 0,
        chosen: m.dims().iter().map(|&d| Mat::zeros(d, 0)).collect(),
        visit,
        count_sinks: false,
        total: 0,
    };
    walk.go(0)
}

pub fn submodules(m: &QuiverRep, e: &[usize]) -> Result<Vec<Vec<Mat>>> {
    let mut out = Vec::new();
    for_each_submodule(m, Some(e), SUBSPACE_BUDGET, |u| {
        out.push(u.to_vec());
        false
    })?;
    Ok(out)
}

/// `|Gr_e(M)|` over `F_p`; spaces at sinks are counted, not enumerated.
pub fn grassmannian_count(m: &QuiverRep, e: &[usize]) -> Result<u128> {
    grassmannian_count_with_budget(m, e, SUBSPACE_BUDGET)
}

pub fn grassmannian_count_with_budget(m: &QuiverRep, e: &[usize], budget: u128) -> Result<u128> {
    if e.len() != m.dims().len() || e.iter().zip(m.dims()).any(|(a, b)| a > b) {
        return Ok(0);
    }
    let mut walk = Walk {
        m,
        fp: m.field(),
        target: Some(e),
        budget,
        visited: 0,
        chosen: m.dims().iter().map(|&d| Mat::zeros(d, 0)).collect(),
        visit: |_: &[Mat]| -> bool {
            unreachable!("sink vertices are counted")
        },
        count_sinks: true,
        total: 0,
    };
    walk.go(0)?;
    Ok(walk.total)
}

/// `|Gr_e(M)|` for every `e <= dim M`, keyed by `e`.
pub fn grassmannian_profile(m: &QuiverRep) -> Result<Vec<(Vec<usize>, u128)>> {
    let mut out = Vec::new();
    let dims = m.dims().to_vec();
    let mut e = vec![0usize; dims.len()];
    loop {
        let c = grassmannian_count(m, &e)?;
        if c > 0 {
            out.push((e.clone(), c));
        }
        let mut i = 0;
        while i < e.len() {
            if e[i] < dims[i] {
                e[i] += 1;
                break;
            }
            e[i] = 0;
            i += 1;
        }
        if i == e.len() {
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrep::quiver::Quiver;
    use alloc::sync::Arc;

    #[test]
    fn gaussian_counts_match_enumeration() {
        let fp = Fp::new(3);
        for n in 0..=4 {
            for k in 0..=n {
                let mut c = 0u128;
                for_each_subspace(n, k, fp, &mut |_| {
                    c += 1;
                    false
                });
                assert_eq!(c, gaussian_binomial(n, k, 3), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn kronecker_regular_grassmannians() {
        // module quiver 1 => 0, maps (1) and (lambda)
        let q = Arc::new(Quiver::new(2, vec![(1, 0), (1, 0)]).unwrap());
        let r = QuiverRep::new(q, 3, vec![1, 1], vec![Mat::identity(1), Mat::from_vec(1, 1, vec![2])]).unwrap();
        assert_eq!(grassmannian_count(&r, &[0, 0]).unwrap(), 1);
        assert_eq!(grassmannian_count(&r, &[1, 0]).unwrap(), 1);
        assert_eq!(grassmannian_count(&r, &[0, 1]).unwrap(), 0);
        assert_eq!(grassmannian_count(&r, &[1, 1]).unwrap(), 1);
        let listed = submodules(&r, &[1, 0]).unwrap();
        assert_eq!(listed.len(), 1);
    }

    #[test]
    fn counting_agrees_with_listing() {
        let q = Arc::new(Quiver::new(3, vec![(2, 1), (1, 0)]).unwrap());
        let m = QuiverRep::projective(&q, 3, 2).direct_sum(&QuiverRep::simple(&q, 3, 1)).direct_sum(&QuiverRep::simple(&q, 3, 0));
        for (e, c) in grassmannian_profile(&m).unwrap() {
            assert_eq!(submodules(&m, &e).unwrap().len() as u128, c);
        }
    }
}
