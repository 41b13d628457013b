//! Dense linear algebra over a prime field.

use alloc::vec;
use alloc::vec::Vec;

/// Matrix over `F_p`, row-major; the prime travels with the caller.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
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

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend_from_slice(r);
        }
        Self { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors of length `len`.
    pub fn from_cols(cols: &[Vec<u32>], len: usize) -> Self {
        let mut m = Self::zeros(len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u32] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
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

    /// Columns `c0..c1`.
    pub fn col_range(&self, c0: usize, c1: usize) -> Self {
        let mut out = Self::zeros(self.rows, c1 - c0);
        for i in 0..self.rows {
            for j in c0..c1 {
                out.set(i, j - c0, self.get(i, j));
            }
        }
        out
    }

    /// Rows `r0..r1`.
    pub fn row_range(&self, r0: usize, r1: usize) -> Self {
        Self {
            rows: r1 - r0,
            cols: self.cols,
            data: self.data[r0 * self.cols..r1 * self.cols].to_vec(),
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack rows");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Writes `b` into this matrix with top-left corner `(r, c)`.
    pub fn put(&mut self, r: usize, c: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r + i, c + j, b.get(i, j));
            }
        }
    }
}

/// Arithmetic in `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

/// Reduced row echelon data.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Fp {
    pub fn new(p: u32) -> Self {
        assert!(p >= 2, "modulus must be a prime");
        Self { p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, a: u32, mut e: u32) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduces an integer into `[0, p)`.
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }

    /// Centered lift in `(-p/2, p/2]`.
    pub fn lift(&self, v: u32) -> i64 {
        let v = i64::from(v);
        let p = i64::from(self.p);
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }

    pub fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.cols, b.rows, "matrix product shapes");
        let p = u64::from(self.p);
        let mut out = Mat::zeros(a.rows, b.cols);
        let mut acc = vec![0u64; b.cols];
        for i in 0..a.rows {
            acc.iter_mut().for_each(|v| *v = 0);
            for k in 0..a.cols {
                let x = u64::from(a.get(i, k));
                if x == 0 {
                    continue;
                }
                let brow = b.row(k);
                for (slot, &y) in acc.iter_mut().zip(brow) {
                    *slot += x * u64::from(y);
                }
            }
            for (j, v) in acc.iter().enumerate() {
                out.set(i, j, (v % p) as u32);
            }
        }
        out
    }

    pub fn mat_vec(&self, a: &Mat, v: &[u32]) -> Vec<u32> {
        let p = u64::from(self.p);
        (0..a.rows)
            .map(|i| {
                let s: u64 = a.row(i).iter().zip(v).map(|(&x, &y)| u64::from(x) * u64::from(y)).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn mat_add(&self, a: &Mat, b: &Mat) -> Mat {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols), "matrix sum shapes");
        Mat {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().zip(&b.data).map(|(&x, &y)| self.add(x, y)).collect(),
        }
    }

    pub fn mat_sub(&self, a: &Mat, b: &Mat) -> Mat {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols), "matrix difference shapes");
        Mat {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().zip(&b.data).map(|(&x, &y)| self.sub(x, y)).collect(),
        }
    }

    pub fn mat_scale(&self, c: u32, a: &Mat) -> Mat {
        Mat {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().map(|&x| self.mul(c, x)).collect(),
        }
    }

    pub fn mat_neg(&self, a: &Mat) -> Mat {
        Mat {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().map(|&x| self.neg(x)).collect(),
        }
    }

    pub fn echelon(&self, a: &Mat) -> Echelon {
        let mut m = a.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    let t = m.get(r, j);
                    m.set(r, j, m.get(piv, j));
                    m.set(piv, j, t);
                }
            }
            let inv = self.inv(m.get(r, c));
            for j in c..m.cols {
                m.set(r, j, self.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = self.sub(m.get(i, j), self.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self, a: &Mat) -> usize {
        self.echelon(a).pivots.len()
    }

    /// Basis of the right null space, as the columns of the result.
    pub fn nullspace(&self, a: &Mat) -> Mat {
        let ech = self.echelon(a);
        let n = a.cols;
        let mut is_pivot = vec![false; n];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut out = Mat::zeros(n, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, 1);
            for (r, &pc) in ech.pivots.iter().enumerate() {
                out.set(pc, k, self.neg(ech.reduced.get(r, f)));
            }
        }
        out
    }

    /// A basis of the column space (columns of the result).
    pub fn col_basis(&self, a: &Mat) -> Mat {
        let ech = self.echelon(a);
        let cols: Vec<Vec<u32>> = ech.pivots.iter().map(|&c| a.col(c)).collect();
        Mat::from_cols(&cols, a.rows)
    }

    /// Some `x` with `a x = b`, if one exists.
    pub fn solve(&self, a: &Mat, b: &Mat) -> Option<Mat> {
        assert_eq!(a.rows, b.rows, "solve shapes");
        let aug = a.hstack(b);
        let ech = self.echelon(&aug);
        if ech.pivots.iter().any(|&c| c >= a.cols) {
            return None;
        }
        let mut x = Mat::zeros(a.cols, b.cols);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, ech.reduced.get(r, a.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self, a: &Mat) -> Option<Mat> {
        if a.rows != a.cols {
            return None;
        }
        let n = a.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let ech = self.echelon(&a.hstack(&Mat::identity(n)));
        if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
            return None;
        }
        Some(ech.reduced.col_range(n, 2 * n))
    }

    pub fn is_invertible(&self, a: &Mat) -> bool {
        a.rows == a.cols && self.rank(a) == a.rows
    }

    /// Columns extending the independent columns of `u` to a basis of `F_p^d`.
    pub fn complement(&self, u: &Mat) -> Mat {
        let d = u.rows;
        let mut current = u.clone();
        let mut rank = self.rank(&current);
        let mut extra: Vec<Vec<u32>> = Vec::new();
        for i in 0..d {
            if rank == d {
                break;
            }
            let mut e = vec![0u32; d];
            e[i] = 1;
            let cand = current.hstack(&Mat::from_cols(&[e.clone()], d));
            let r = self.rank(&cand);
            if r > rank {
                rank = r;
                current = cand;
                extra.push(e);
            }
        }
        Mat::from_cols(&extra, d)
    }

    /// Basis of the intersection of two column spaces.
    pub fn intersect(&self, a: &Mat, b: &Mat) -> Mat {
        // x in col(a) and col(b): a u = b v
        let k = self.nullspace(&a.hstack(&self.mat_neg(b)));
        let u = k.row_range(0, a.cols);
        self.col_basis(&self.mat_mul(a, &u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_and_nullspace() {
        let f = Fp::new(3);
        let a = Mat::from_rows(&[vec![1, 2, 0], vec![2, 1, 0]], 3);
        assert_eq!(f.rank(&a), 1);
        let k = f.nullspace(&a);
        assert_eq!(k.cols(), 2);
        assert!(f.mat_mul(&a, &k).is_zero());
    }

    #[test]
    fn inverse_and_solve() {
        let f = Fp::new(5);
        let a = Mat::from_rows(&[vec![1, 2], vec![3, 4]], 2);
        let inv = f.inverse(&a).unwrap();
        assert_eq!(f.mat_mul(&a, &inv), Mat::identity(2));
        let b = Mat::from_rows(&[vec![1], vec![0]], 1);
        let x = f.solve(&a, &b).unwrap();
        assert_eq!(f.mat_mul(&a, &x), b);
        let sing = Mat::from_rows(&[vec![1, 2], vec![2, 4]], 2);
        assert!(f.inverse(&sing).is_none());
        assert!(f.solve(&sing, &b).is_none());
    }

    #[test]
    fn complements() {
        let f = Fp::new(3);
        let u = Mat::from_cols(&[vec![1, 1, 0]], 3);
        let c = f.complement(&u);
        assert_eq!(c.cols(), 2);
        assert_eq!(f.rank(&u.hstack(&c)), 3);
        let v = Mat::from_cols(&[vec![1, 1, 0], vec![0, 0, 1]], 3);
        let w = Mat::from_cols(&[vec![1, 0, 0], vec![0, 1, 0]], 3);
        assert_eq!(f.intersect(&v, &w).cols(), 1);
    }
}
