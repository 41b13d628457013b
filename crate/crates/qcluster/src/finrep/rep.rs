use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::field::{Fp, Mat};
use super::quiver::Quiver;
use crate::error::{Error, Result};

/// A representation over `F_p`: a space at each vertex and a matrix per arrow.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuiverRep {
    quiver: Arc<Quiver>,
    p: u32,
    dims: Vec<usize>,
    mats: Vec<Mat>,
}

/// A morphism of representations: one matrix per vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Morphism {
    pub maps: Vec<Mat>,
}

impl Morphism {
    pub fn zero(dom: &QuiverRep, cod: &QuiverRep) -> Self {
        Self {
            maps: dom.dims.iter().zip(&cod.dims).map(|(&a, &b)| Mat::zeros(b, a)).collect(),
        }
    }

    pub fn identity(m: &QuiverRep) -> Self {
        Self { maps: m.dims.iter().map(|&d| Mat::identity(d)).collect() }
    }

    /// `g . f`.
    pub fn then(&self, g: &Morphism, fp: Fp) -> Morphism {
        Morphism {
            maps: self.maps.iter().zip(&g.maps).map(|(f, g)| fp.mat_mul(g, f)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    pub fn add(&self, other: &Morphism, fp: Fp) -> Morphism {
        Morphism {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| fp.mat_add(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: u32, fp: Fp) -> Morphism {
        Morphism { maps: self.maps.iter().map(|a| fp.mat_scale(c, a)).collect() }
    }

    pub fn is_iso(&self, fp: Fp) -> bool {
        self.maps.iter().all(|m| fp.is_invertible(m))
    }
}

impl QuiverRep {
    pub fn new(quiver: Arc<Quiver>, p: u32, dims: Vec<usize>, mats: Vec<Mat>) -> Result<Self> {
        if dims.len() != quiver.vertices() {
            return Err(Error::DimensionMismatch { expected: quiver.vertices(), got: dims.len() });
        }
        if mats.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch {
                expected: quiver.arrows().len(),
                got: mats.len(),
            });
        }
        for (idx, (&(s, t), m)) in quiver.arrows().iter().zip(&mats).enumerate() {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::Invalid(format!(
                    "matrix on arrow {} is {}x{}, expected {}x{}",
                    idx + 1,
                    m.rows(),
                    m.cols(),
                    dims[t],
                    dims[s]
                )));
            }
            if m.data().iter().any(|&v| v >= p) {
                return Err(Error::Invalid("matrix entry not reduced mod p".into()));
            }
        }
        Ok(Self { quiver, p, dims, mats })
    }

    pub(crate) fn from_parts(quiver: Arc<Quiver>, p: u32, dims: Vec<usize>, mats: Vec<Mat>) -> Self {
        debug_assert!(Self::new(quiver.clone(), p, dims.clone(), mats.clone()).is_ok());
        Self { quiver, p, dims, mats }
    }

    pub fn zero(quiver: &Arc<Quiver>, p: u32) -> Self {
        Self::with_zero_maps(quiver, p, vec![0; quiver.vertices()])
    }

    /// Representation of the given dimension with all maps zero.
    pub fn with_zero_maps(quiver: &Arc<Quiver>, p: u32, dims: Vec<usize>) -> Self {
        let mats = quiver.arrows().iter().map(|&(s, t)| Mat::zeros(dims[t], dims[s])).collect();
        Self { quiver: quiver.clone(), p, dims, mats }
    }

    pub fn simple(quiver: &Arc<Quiver>, p: u32, i: usize) -> Self {
        let mut dims = vec![0; quiver.vertices()];
        dims[i] = 1;
        Self::with_zero_maps(quiver, p, dims)
    }

    /// Projective cover of the simple at `i`, in the path basis.
    pub fn projective(quiver: &Arc<Quiver>, p: u32, i: usize) -> Self {
        let n = quiver.vertices();
        let paths: Vec<_> = (0..n).map(|v| quiver.paths(i, v)).collect();
        let dims: Vec<usize> = paths.iter().map(|ps| ps.len()).collect();
        let mats = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Mat::zeros(dims[t], dims[s]);
                for (c, path) in paths[s].iter().enumerate() {
                    let mut ext = path.clone();
                    ext.push(a);
                    let r = paths[t].iter().position(|q| *q == ext).expect("extended path");
                    m.set(r, c, 1);
                }
                m
            })
            .collect();
        Self { quiver: quiver.clone(), p, dims, mats }
    }

    /// Injective envelope of the simple at `i`, in the dual path basis.
    pub fn injective(quiver: &Arc<Quiver>, p: u32, i: usize) -> Self {
        let n = quiver.vertices();
        let paths: Vec<_> = (0..n).map(|v| quiver.paths(v, i)).collect();
        let dims: Vec<usize> = paths.iter().map(|ps| ps.len()).collect();
        let mats = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Mat::zeros(dims[t], dims[s]);
                for (c, path) in paths[s].iter().enumerate() {
                    if path.first() == Some(&a) {
                        let rest = &path[1..];
                        let r = paths[t].iter().position(|q| q.as_slice() == rest).expect("path tail");
                        m.set(r, c, 1);
                    }
                }
                m
            })
            .collect();
        Self { quiver: quiver.clone(), p, dims, mats }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn field(&self) -> Fp {
        Fp::new(self.p)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vec(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn mat(&self, arrow: usize) -> &Mat {
        &self.mats[arrow]
    }

    /// Number of matrix entries, i.e. the dimension of the representation space.
    pub fn param_count(&self) -> usize {
        self.quiver.arrows().iter().map(|&(s, t)| self.dims[s] * self.dims[t]).sum()
    }

    pub fn same_setting(&self, other: &Self) -> Result<()> {
        if self.p != other.p || *self.quiver != *other.quiver {
            return Err(Error::Invalid("representations over different quivers or fields".into()));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.block_diag(b)).collect();
        Self { quiver: self.quiver.clone(), p: self.p, dims, mats }
    }

    pub fn direct_sum_all<'a, I: IntoIterator<Item = &'a QuiverRep>>(quiver: &Arc<Quiver>, p: u32, it: I) -> Self {
        let mut acc = Self::zero(quiver, p);
        for m in it {
            acc = acc.direct_sum(m);
        }
        acc
    }

    pub fn power(&self, k: usize) -> Self {
        let mut acc = Self::zero(&self.quiver, self.p);
        for _ in 0..k {
            acc = acc.direct_sum(self);
        }
        acc
    }

    /// Transpose dual, a representation of the opposite quiver.
    pub fn dual(&self, opposite: &Arc<Quiver>) -> Self {
        Self {
            quiver: opposite.clone(),
            p: self.p,
            dims: self.dims.clone(),
            mats: self.mats.iter().map(|m| m.transpose()).collect(),
        }
    }

    /// Change of basis `g_v` at every vertex: `M'_a = g_t M_a g_s^{-1}`.
    pub fn transport(&self, g: &[Mat]) -> Self {
        let fp = self.field();
        let inv: Vec<Mat> = g.iter().map(|m| fp.inverse(m).expect("invertible change of basis")).collect();
        let mats = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(&(s, t), m)| fp.mat_mul(&fp.mat_mul(&g[t], m), &inv[s]))
            .collect();
        Self { quiver: self.quiver.clone(), p: self.p, dims: self.dims.clone(), mats }
    }

    /// Whether the column spaces `u` are closed under the arrows.
    pub fn is_subrep(&self, u: &[Mat]) -> bool {
        let fp = self.field();
        self.quiver.arrows().iter().zip(&self.mats).all(|(&(s, t), m)| {
            let img = fp.mat_mul(m, &u[s]);
            fp.rank(&u[t].hstack(&img)) == fp.rank(&u[t])
        })
    }

    /// The subrepresentation spanned by the columns of `u` (assumed closed).
    pub fn sub_rep(&self, u: &[Mat]) -> Result<Self> {
        let fp = self.field();
        let dims: Vec<usize> = u.iter().map(|b| b.cols()).collect();
        let mut mats = Vec::with_capacity(self.mats.len());
        for (&(s, t), m) in self.quiver.arrows().iter().zip(&self.mats) {
            let img = fp.mat_mul(m, &u[s]);
            let c = fp
                .solve(&u[t], &img)
                .ok_or_else(|| Error::Invalid("subspaces are not a subrepresentation".into()))?;
            mats.push(c);
        }
        Ok(Self { quiver: self.quiver.clone(), p: self.p, dims, mats })
    }

    /// `M / U` together with the projection matrices at each vertex.
    pub fn quotient(&self, u: &[Mat]) -> Result<(Self, Vec<Mat>)> {
        if !self.is_subrep(u) {
            return Err(Error::Invalid("subspaces are not a subrepresentation".into()));
        }
        let fp = self.field();
        let mut comps = Vec::with_capacity(self.dims.len());
        let mut projs = Vec::with_capacity(self.dims.len());
        for (v, b) in u.iter().enumerate() {
            let c = fp.complement(b);
            let t = fp.inverse(&b.hstack(&c)).expect("basis");
            projs.push(t.row_range(b.cols(), self.dims[v]));
            comps.push(c);
        }
        let dims: Vec<usize> = comps.iter().map(|c| c.cols()).collect();
        let mats = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(&(s, t), m)| fp.mat_mul(&projs[t], &fp.mat_mul(m, &comps[s])))
            .collect();
        Ok((Self { quiver: self.quiver.clone(), p: self.p, dims, mats }, projs))
    }

    /// Radical: at each vertex the span of the images of incoming arrows.
    pub fn radical(&self) -> Vec<Mat> {
        let fp = self.field();
        (0..self.dims.len())
            .map(|v| {
                let mut acc = Mat::zeros(self.dims[v], 0);
                for a in self.quiver.incoming(v) {
                    acc = acc.hstack(&self.mats[a]);
                }
                fp.col_basis(&acc)
            })
            .collect()
    }

    pub fn top_dims(&self) -> Vec<usize> {
        self.radical().iter().zip(&self.dims).map(|(r, d)| d - r.cols()).collect()
    }

    /// Socle: at each vertex the common kernel of outgoing arrows.
    pub fn socle(&self) -> Vec<Mat> {
        let fp = self.field();
        (0..self.dims.len())
            .map(|v| {
                let mut stacked = Mat::zeros(0, self.dims[v]);
                for a in self.quiver.outgoing(v) {
                    stacked = stacked.vstack(&self.mats[a]);
                }
                fp.nullspace(&stacked)
            })
            .collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle().iter().map(|s| s.cols()).collect()
    }

    /// Kernel of `f: self -> cod` as a subrepresentation, with its inclusion.
    pub fn kernel(&self, f: &Morphism) -> (Self, Vec<Mat>) {
        let fp = self.field();
        let bases: Vec<Mat> = f.maps.iter().map(|m| fp.nullspace(m)).collect();
        let k = self.sub_rep(&bases).expect("kernels are subrepresentations");
        (k, bases)
    }

    /// Image of `f: dom -> self` as column bases in `self`.
    pub fn image_of(&self, f: &Morphism) -> Vec<Mat> {
        let fp = self.field();
        f.maps.iter().map(|m| fp.col_basis(m)).collect()
    }

    /// Cokernel of `f: dom -> self`, with the projection.
    pub fn cokernel(&self, f: &Morphism) -> (Self, Vec<Mat>) {
        let img = self.image_of(f);
        self.quotient(&img).expect("images are subrepresentations")
    }

    /// Copies this representation onto a quiver containing it, with `vmap`
    /// and `amap` giving the positions of vertices and arrows.
    pub fn embed(&self, big: &Arc<Quiver>, vmap: &[usize], amap: &[usize]) -> Self {
        let mut dims = vec![0; big.vertices()];
        for (v, &w) in vmap.iter().enumerate() {
            dims[w] = self.dims[v];
        }
        let mut out = Self::with_zero_maps(big, self.p, dims);
        for (a, &b) in amap.iter().enumerate() {
            out.mats[b] = self.mats[a].clone();
        }
        out
    }

    /// Restriction to a full subquiver; spaces outside must vanish.
    pub fn restrict(&self, small: &Arc<Quiver>, vmap: &[usize], amap: &[usize]) -> Result<Self> {
        let covered: Vec<bool> = (0..self.dims.len()).map(|w| vmap.contains(&w)).collect();
        for (w, &c) in covered.iter().enumerate() {
            if !c && self.dims[w] != 0 {
                return Err(Error::Invalid(format!("nonzero space at vertex {}", w + 1)));
            }
        }
        let dims = vmap.iter().map(|&w| self.dims[w]).collect();
        let mats = amap.iter().map(|&b| self.mats[b].clone()).collect();
        Self::new(small.clone(), self.p, dims, mats)
    }

    /// All maps replaced by their images in another quiver with the same
    /// arrow list; used for relabelled copies.
    pub fn with_quiver(&self, quiver: &Arc<Quiver>) -> Result<Self> {
        Self::new(quiver.clone(), self.p, self.dims.clone(), self.mats.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Arc<Quiver> {
        Arc::new(Quiver::new(3, vec![(2, 1), (1, 0)]).unwrap())
    }

    #[test]
    fn projectives_and_injectives() {
        let q = a3();
        let p2 = QuiverRep::projective(&q, 3, 2);
        assert_eq!(p2.dims(), &[1, 1, 1]);
        assert_eq!(p2.top_dims(), vec![0, 0, 1]);
        assert_eq!(p2.socle_dims(), vec![1, 0, 0]);
        let i2 = QuiverRep::injective(&q, 3, 2);
        assert_eq!(i2.dims(), &[0, 0, 1]);
        let i0 = QuiverRep::injective(&q, 3, 0);
        assert_eq!(i0.dims(), &[1, 1, 1]);
        assert_eq!(i0.socle_dims(), vec![1, 0, 0]);
        assert!(QuiverRep::simple(&q, 3, 1).radical().iter().all(|b| b.cols() == 0));
    }

    #[test]
    fn quotients() {
        let q = a3();
        let p2 = QuiverRep::projective(&q, 3, 2);
        let rad = p2.radical();
        let (top, _) = p2.quotient(&rad).unwrap();
        assert_eq!(top, QuiverRep::simple(&q, 3, 2));
        let sub = p2.sub_rep(&rad).unwrap();
        assert_eq!(sub.dims(), &[1, 1, 0]);
    }
}
