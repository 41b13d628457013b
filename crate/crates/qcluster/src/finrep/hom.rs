//! Hom and Ext between representations of an acyclic quiver.
//!
//! For `M, N` the map `delta: C0 -> C1`, `(X_v) -> (N_a X_s - X_t M_a)_a`
//! has kernel `Hom(M, N)` and cokernel `Ext^1(M, N)`.

use alloc::vec::Vec;

use super::field::{Fp, Mat};
use super::rep::{Morphism, QuiverRep};
use crate::error::Result;

/// The two-term complex computing Hom and Ext.
pub struct HomComplex {
    pub delta: Mat,
    off0: Vec<usize>,
    off1: Vec<usize>,
    shape0: Vec<(usize, usize)>,
    shape1: Vec<(usize, usize)>,
}

impl HomComplex {
    pub fn new(m: &QuiverRep, n: &QuiverRep) -> Result<Self> {
        m.same_setting(n)?;
        let fp = m.field();
        let q = m.quiver();
        let mut off0 = Vec::new();
        let mut shape0 = Vec::new();
        let mut c0 = 0;
        for v in 0..q.vertices() {
            off0.push(c0);
            shape0.push((n.dims()[v], m.dims()[v]));
            c0 += n.dims()[v] * m.dims()[v];
        }
        let mut off1 = Vec::new();
        let mut shape1 = Vec::new();
        let mut c1 = 0;
        for &(s, t) in q.arrows() {
            off1.push(c1);
            shape1.push((n.dims()[t], m.dims()[s]));
            c1 += n.dims()[t] * m.dims()[s];
        }
        let mut delta = Mat::zeros(c1, c0);
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            let (ma, na) = (m.mat(a), n.mat(a));
            let (ns, ms) = (n.dims()[s], m.dims()[s]);
            let (nt, mt) = (n.dims()[t], m.dims()[t]);
            for i in 0..nt {
                for j in 0..ms {
                    let row = off1[a] + i * ms + j;
                    // N_a X_s: sum_k N_a[i,k] X_s[k,j]
                    for k in 0..ns {
                        let c = na.get(i, k);
                        if c != 0 {
                            let col = off0[s] + k * ms + j;
                            delta.set(row, col, fp.add(delta.get(row, col), c));
                        }
                    }
                    // - X_t M_a: sum_k X_t[i,k] M_a[k,j]
                    for k in 0..mt {
                        let c = ma.get(k, j);
                        if c != 0 {
                            let col = off0[t] + i * mt + k;
                            delta.set(row, col, fp.sub(delta.get(row, col), c));
                        }
                    }
                }
            }
        }
        Ok(Self { delta, off0, off1, shape0, shape1 })
    }

    pub fn morphism(&self, x: &[u32]) -> Morphism {
        Morphism {
            maps: self
                .off0
                .iter()
                .zip(&self.shape0)
                .map(|(&o, &(r, c))| Mat::from_vec(r, c, x[o..o + r * c].to_vec()))
                .collect(),
        }
    }

    pub fn flatten0(&self, f: &Morphism) -> Vec<u32> {
        f.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn cochain(&self, z: &[u32]) -> Vec<Mat> {
        self.off1
            .iter()
            .zip(&self.shape1)
            .map(|(&o, &(r, c))| Mat::from_vec(r, c, z[o..o + r * c].to_vec()))
            .collect()
    }

    pub fn flatten1(&self, z: &[Mat]) -> Vec<u32> {
        z.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn c1_dim(&self) -> usize {
        self.delta.rows()
    }
}

pub fn hom_basis(m: &QuiverRep, n: &QuiverRep) -> Result<Vec<Morphism>> {
    let cx = HomComplex::new(m, n)?;
    let k = m.field().nullspace(&cx.delta);
    Ok((0..k.cols()).map(|j| cx.morphism(&k.col(j))).collect())
}

pub fn hom_dim(m: &QuiverRep, n: &QuiverRep) -> Result<usize> {
    let cx = HomComplex::new(m, n)?;
    Ok(cx.delta.cols() - m.field().rank(&cx.delta))
}

pub fn ext_dim(m: &QuiverRep, n: &QuiverRep) -> Result<usize> {
    let cx = HomComplex::new(m, n)?;
    Ok(cx.delta.rows() - m.field().rank(&cx.delta))
}

/// Cocycles whose classes form a basis of `Ext^1(M, N)`.
pub fn ext_basis(m: &QuiverRep, n: &QuiverRep) -> Result<Vec<Vec<Mat>>> {
    let cx = HomComplex::new(m, n)?;
    let fp = m.field();
    let img = fp.col_basis(&cx.delta);
    let comp = fp.complement(&img);
    Ok((0..comp.cols()).map(|j| cx.cochain(&comp.col(j))).collect())
}

/// The middle term of `0 -> N -> E -> M -> 0` given by cocycle `z`,
/// with the inclusion of `N` and projection to `M`.
pub fn extension(m: &QuiverRep, n: &QuiverRep, z: &[Mat]) -> (QuiverRep, Morphism, Morphism) {
    let q = m.quiver();
    let dims: Vec<usize> = m.dims().iter().zip(n.dims()).map(|(a, b)| a + b).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let mut e = Mat::zeros(dims[t], dims[s]);
            e.put(0, 0, n.mat(a));
            e.put(0, n.dims()[s], &z[a]);
            e.put(n.dims()[t], n.dims()[s], m.mat(a));
            e
        })
        .collect();
    let e = QuiverRep::from_parts(q.clone(), m.p(), dims.clone(), mats);
    let incl = Morphism {
        maps: (0..dims.len())
            .map(|v| Mat::identity(n.dims()[v]).vstack(&Mat::zeros(m.dims()[v], n.dims()[v])))
            .collect(),
    };
    let proj = Morphism {
        maps: (0..dims.len())
            .map(|v| Mat::zeros(m.dims()[v], n.dims()[v]).hstack(&Mat::identity(m.dims()[v])))
            .collect(),
    };
    (e, incl, proj)
}

/// Some nonsplit extension of `M` by `N`, if `Ext^1(M, N) != 0`.
pub fn nonsplit_extension(m: &QuiverRep, n: &QuiverRep) -> Result<Option<QuiverRep>> {
    let basis = ext_basis(m, n)?;
    Ok(basis.first().map(|z| extension(m, n, z).0))
}

/// Whether `f: M -> N` is a morphism.
pub fn is_morphism(m: &QuiverRep, n: &QuiverRep, f: &Morphism) -> bool {
    let fp: Fp = m.field();
    m.quiver().arrows().iter().enumerate().all(|(a, &(s, t))| {
        fp.mat_mul(n.mat(a), &f.maps[s]) == fp.mat_mul(&f.maps[t], m.mat(a))
    })
}

/// Calls `visit` on every element of the span of `basis`, stopping early
/// when it returns `true`.  Returns whether it stopped early.
pub fn for_each_combination<F: FnMut(&Morphism) -> bool>(
    basis: &[Morphism],
    template: &Morphism,
    fp: Fp,
    mut visit: F,
) -> bool {
    let h = basis.len();
    let mut coeffs = alloc::vec![0u32; h];
    let mut cur = template.clone();
    for m in &mut cur.maps {
        *m = Mat::zeros(m.rows(), m.cols());
    }
    loop {
        if visit(&cur) {
            return true;
        }
        // odometer increment; adding basis[i] to cur keeps it in sync
        let mut i = 0;
        loop {
            if i == h {
                return false;
            }
            coeffs[i] += 1;
            if coeffs[i] == fp.p() {
                coeffs[i] = 0;
                // subtract (p-1) copies, i.e. add one more: wraps to zero
                cur = cur.add(&basis[i], fp);
                i += 1;
            } else {
                cur = cur.add(&basis[i], fp);
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrep::quiver::Quiver;
    use alloc::sync::Arc;
    use alloc::vec;

    #[test]
    fn kronecker_simples() {
        let q = Arc::new(Quiver::new(2, vec![(1, 0), (1, 0)]).unwrap());
        let s0 = QuiverRep::simple(&q, 3, 0);
        let s1 = QuiverRep::simple(&q, 3, 1);
        assert_eq!(hom_dim(&s1, &s0).unwrap(), 0);
        assert_eq!(ext_dim(&s1, &s0).unwrap(), 2);
        assert_eq!(ext_dim(&s0, &s1).unwrap(), 0);
        assert_eq!(hom_dim(&s0, &s0).unwrap(), 1);
        let e = nonsplit_extension(&s1, &s0).unwrap().unwrap();
        assert_eq!(e.dims(), &[1, 1]);
        assert_eq!(hom_dim(&e, &e).unwrap(), 1);
    }

    #[test]
    fn combinations_cover_space() {
        let q = Arc::new(Quiver::new(1, vec![]).unwrap());
        let s = QuiverRep::simple(&q, 5, 0).power(2);
        let basis = hom_basis(&s, &s).unwrap();
        assert_eq!(basis.len(), 4);
        let mut count = 0;
        let fp = Fp::new(5);
        for_each_combination(&basis, &basis[0], fp, |f| {
            if f.is_iso(fp) {
                count += 1;
            }
            false
        });
        assert_eq!(count, (25 - 1) * (25 - 5));
    }
}
