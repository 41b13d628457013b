//! Integer linear systems: solution lattices and lexicographic minimization.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// Top `k` rows.
    pub fn top(&self, k: usize) -> Self {
        Self { rows: k, cols: self.cols, data: self.data[..k * self.cols].to_vec() }
    }
}

impl core::fmt::Display for IMat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `base + sum_k z_k * gens[k]` over integer `z`.
#[derive(Clone, Debug)]
pub struct AffineLattice {
    pub base: Vec<i128>,
    pub gens: Vec<Vec<i128>>,
}

fn ck(v: Option<i128>) -> Result<i128> {
    v.ok_or_else(|| Error::Internal("integer overflow in lattice reduction".into()))
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // returns (g, x, y) with a x + b y = g >= 0
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// All integer solutions of `a x = b`, or `None` if there are none.
pub fn solve_integer(a: &[Vec<i128>], b: &[i128], unknowns: usize) -> Result<Option<AffineLattice>> {
    let eqs = a.len();
    // work on A * T with unimodular column operations tracked in T
    let mut h: Vec<Vec<i128>> = a.to_vec();
    let mut t: Vec<Vec<i128>> = (0..unknowns)
        .map(|i| (0..unknowns).map(|j| i128::from(i == j)).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<i128>>, c1: usize, c2: usize, x: i128, y: i128, u: i128, v: i128| -> Result<()> {
        // (col c1, col c2) <- (x c1 + y c2, u c1 + v c2)
        for row in m.iter_mut() {
            let (p, q) = (row[c1], row[c2]);
            row[c1] = ck(ck(x.checked_mul(p))?.checked_add(ck(y.checked_mul(q))?))?;
            row[c2] = ck(ck(u.checked_mul(p))?.checked_add(ck(v.checked_mul(q))?))?;
        }
        Ok(())
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pc = 0;
    for r in 0..eqs {
        if pc >= unknowns {
            break;
        }
        for c in (pc + 1)..unknowns {
            let (x0, y0) = (h[r][pc], h[r][c]);
            if y0 == 0 {
                continue;
            }
            let (g, s, tt) = ext_gcd(x0, y0);
            let (u, v) = (-y0 / g, x0 / g);
            col_op(&mut h, pc, c, s, tt, u, v)?;
            col_op(&mut t, pc, c, s, tt, u, v)?;
        }
        if h[r][pc] != 0 {
            if h[r][pc] < 0 {
                col_op(&mut h, pc, pc, -1, 0, -1, 0)?;
                col_op(&mut t, pc, pc, -1, 0, -1, 0)?;
            }
            pivots.push((r, pc));
            pc += 1;
        }
    }
    let rank = pc;
    let mut y = vec![0i128; unknowns];
    for &(r, c) in &pivots {
        let mut acc = b[r];
        for (j, yj) in y.iter().enumerate().take(c) {
            acc = ck(acc.checked_sub(ck(h[r][j].checked_mul(*yj))?))?;
        }
        if acc % h[r][c] != 0 {
            return Ok(None);
        }
        y[c] = acc / h[r][c];
    }
    for r in 0..eqs {
        let mut acc = 0i128;
        for j in 0..unknowns {
            acc = ck(acc.checked_add(ck(h[r][j].checked_mul(y[j]))?))?;
        }
        if acc != b[r] {
            return Ok(None);
        }
    }
    let mut base = vec![0i128; unknowns];
    for i in 0..unknowns {
        for (j, yj) in y.iter().enumerate() {
            base[i] = ck(base[i].checked_add(ck(t[i][j].checked_mul(*yj))?))?;
        }
    }
    let gens = (rank..unknowns)
        .map(|j| (0..unknowns).map(|i| t[i][j]).collect())
        .collect();
    Ok(Some(AffineLattice { base, gens }))
}

fn gcd(a: i128, b: i128) -> i128 {
    ext_gcd(a, b).0
}

/// The lattice point minimizing `(|x_0|, |x_1|, ...)` lexicographically,
/// preferring the nonnegative value on ties.
pub fn lex_min_abs(lat: &AffineLattice) -> Result<Vec<i128>> {
    let mut base = lat.base.clone();
    let mut gens = lat.gens.clone();
    let n = base.len();
    for i in 0..n {
        if gens.is_empty() {
            break;
        }
        let g = gens.iter().fold(0, |acc, v| gcd(acc, v[i]));
        if g == 0 {
            continue;
        }
        let r = base[i].rem_euclid(g);
        let target = if g - r < r { r - g } else { r };
        // constrain sum_k z_k gens[k][i] = target - base[i]
        let row: Vec<i128> = gens.iter().map(|v| v[i]).collect();
        let sub = solve_integer(&[row], &[target - base[i]], gens.len())?
            .ok_or_else(|| Error::Internal("lattice coordinate unreachable".into()))?;
        let combine = |z: &[i128]| -> Result<Vec<i128>> {
            let mut out = vec![0i128; n];
            for (k, zk) in z.iter().enumerate() {
                for (o, gv) in out.iter_mut().zip(&gens[k]) {
                    *o = ck(o.checked_add(ck(zk.checked_mul(*gv))?))?;
                }
            }
            Ok(out)
        };
        let shift = combine(&sub.base)?;
        for (b, s) in base.iter_mut().zip(&shift) {
            *b += s;
        }
        let mut new_gens = Vec::with_capacity(sub.gens.len());
        for z in &sub.gens {
            new_gens.push(combine(z)?);
        }
        gens = new_gens;
    }
    Ok(base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_systems() {
        // 2x + 4y = 6
        let lat = solve_integer(&[vec![2, 4]], &[6], 2).unwrap().unwrap();
        assert_eq!(lat.gens.len(), 1);
        let x = lex_min_abs(&lat).unwrap();
        assert_eq!(x, vec![1, 1]);
        assert!(solve_integer(&[vec![2, 4]], &[5], 2).unwrap().is_none());
    }

    #[test]
    fn lex_min_prefers_nonnegative() {
        // x - y = 0 gives x = y; the minimal point is 0
        let lat = solve_integer(&[vec![1, -1]], &[0], 2).unwrap().unwrap();
        assert_eq!(lex_min_abs(&lat).unwrap(), vec![0, 0]);
        // x + 2y = 1 : x odd, minimal |x| is 1 with y = 0
        let lat = solve_integer(&[vec![1, 2]], &[1], 2).unwrap().unwrap();
        assert_eq!(lex_min_abs(&lat).unwrap(), vec![1, 0]);
        // 2y - x = 0 with x in 2Z: x = 0
        let lat = solve_integer(&[vec![-1, 2]], &[0], 2).unwrap().unwrap();
        assert_eq!(lex_min_abs(&lat).unwrap(), vec![0, 0]);
    }

    #[test]
    fn matrix_ops() {
        let a = IMat::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        let b = a.mul(&IMat::identity(2));
        assert_eq!(a, b);
        assert_eq!(a.transpose().get(0, 1), 3);
        assert_eq!(a.mul_vec(&[1, 1]), vec![3, 7]);
        assert_eq!(a.to_string(), "[[1,2],[3,4]]");
    }
}
