//! Minimal projective presentations, the Nakayama functor and the
//! Auslander-Reiten translate.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::field::{Fp, Mat};
use super::iso::brick_multiplicity;
use super::quiver::{Path, Quiver};
use super::rep::{Morphism, QuiverRep};
use crate::error::{Error, Result};

/// `P1 -> P0 -> M -> 0` with `P0 = (+) P_{gens0[i]}` and
/// `P1 = (+) P_{gens1[j]}`.  Column `j` of `relations` is the image of the
/// `j`-th generator of `P1`, written in the path basis of `P0` at
/// vertex `gens1[j]`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub gens0: Vec<usize>,
    pub gens1: Vec<usize>,
    pub cover: Vec<Vec<u32>>,
    pub relations: Vec<Vec<u32>>,
}

impl Presentation {
    pub fn dim_p0(&self, q: &Quiver) -> Vec<i64> {
        sum_dims(q, &self.gens0)
    }

    pub fn dim_p1(&self, q: &Quiver) -> Vec<i64> {
        sum_dims(q, &self.gens1)
    }
}

fn sum_dims(q: &Quiver, gens: &[usize]) -> Vec<i64> {
    let mut out = alloc::vec![0i64; q.vertices()];
    for &g in gens {
        for (o, d) in out.iter_mut().zip(q.projective_dims(g)) {
            *o += d;
        }
    }
    out
}

fn path_matrix(m: &QuiverRep, path: &Path, from: usize) -> Mat {
    let fp = m.field();
    let mut acc = Mat::identity(m.dims()[from]);
    for &a in path {
        acc = fp.mat_mul(m.mat(a), &acc);
    }
    acc
}

/// Direct sum of projectives with the given generator vertices.
pub fn free_module(q: &Arc<Quiver>, p: u32, gens: &[usize]) -> QuiverRep {
    QuiverRep::direct_sum_all(q, p, gens.iter().map(|&g| QuiverRep::projective(q, p, g)).collect::<Vec<_>>().iter())
}

/// Direct sum of injectives with the given socle vertices.
pub fn cofree_module(q: &Arc<Quiver>, p: u32, gens: &[usize]) -> QuiverRep {
    QuiverRep::direct_sum_all(q, p, gens.iter().map(|&g| QuiverRep::injective(q, p, g)).collect::<Vec<_>>().iter())
}

/// Map from the free module on `gens` sending generator `i` to `images[i]`
/// (a vector in the target at vertex `gens[i]`).
fn free_map(q: &Quiver, gens: &[usize], images: &[Vec<u32>], target: &QuiverRep) -> Morphism {
    let fp = target.field();
    let maps = (0..q.vertices())
        .map(|x| {
            let mut cols = Vec::new();
            for (g, img) in gens.iter().zip(images) {
                for path in q.paths(*g, x) {
                    let pm = path_matrix(target, &path, *g);
                    cols.push(fp.mat_vec(&pm, img));
                }
            }
            Mat::from_cols(&cols, target.dims()[x])
        })
        .collect();
    Morphism { maps }
}

/// Generators of a module: a basis of a complement of the radical at each
/// vertex, returned as (vertex, vector) pairs.
fn generators(m: &QuiverRep) -> Vec<(usize, Vec<u32>)> {
    let fp = m.field();
    let rad = m.radical();
    let mut out = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let c = fp.complement(r);
        for j in 0..c.cols() {
            out.push((v, c.col(j)));
        }
    }
    out
}

/// Minimal projective presentation of `M`.
pub fn proj_cover_data(m: &QuiverRep) -> Result<Presentation> {
    let q = m.quiver().clone();
    let gens = generators(m);
    let gens0: Vec<usize> = gens.iter().map(|g| g.0).collect();
    let cover: Vec<Vec<u32>> = gens.iter().map(|g| g.1.clone()).collect();
    let p0 = free_module(&q, m.p(), &gens0);
    let pi = free_map(&q, &gens0, &cover, m);
    let (k, incl) = p0.kernel(&pi);
    let fp = m.field();
    let kgens = generators(&k);
    let gens1 = kgens.iter().map(|g| g.0).collect();
    let relations = kgens.iter().map(|(v, x)| fp.mat_vec(&incl[*v], x)).collect();
    Ok(Presentation { gens0, gens1, cover, relations })
}

/// The Nakayama functor applied to the presentation map `P1 -> P0`.
fn nakayama_map(q: &Arc<Quiver>, p: u32, pres: &Presentation) -> (QuiverRep, QuiverRep, Morphism) {
    let fp = Fp::new(p);
    let n1 = cofree_module(q, p, &pres.gens1);
    let n0 = cofree_module(q, p, &pres.gens0);
    let maps = (0..q.vertices())
        .map(|x| {
            let mut m = Mat::zeros(n0.dims()[x], n1.dims()[x]);
            let mut col0 = 0;
            for (j, &w) in pres.gens1.iter().enumerate() {
                let src_paths = q.paths(x, w);
                // coefficient of (generator i, path u: v -> w) in relation j
                let mut row0 = 0;
                let mut coeff_off = 0;
                for &v in &pres.gens0 {
                    let us = q.paths(v, w);
                    let tgt_paths = q.paths(x, v);
                    for (ui, u) in us.iter().enumerate() {
                        let c = pres.relations[j][coeff_off + ui];
                        if c == 0 {
                            continue;
                        }
                        for (pi, path) in src_paths.iter().enumerate() {
                            if path.len() >= u.len() && path[path.len() - u.len()..] == u[..] {
                                let head = &path[..path.len() - u.len()];
                                if let Some(ri) = tgt_paths.iter().position(|t| t.as_slice() == head) {
                                    let (r, cc) = (row0 + ri, col0 + pi);
                                    m.set(r, cc, fp.add(m.get(r, cc), c));
                                }
                            }
                        }
                    }
                    coeff_off += us.len();
                    row0 += tgt_paths.len();
                }
                col0 += src_paths.len();
            }
            m
        })
        .collect();
    (n1, n0, Morphism { maps })
}

/// Fails naming the first projective summand of `M`, if any.
pub fn check_no_projective_summand(m: &QuiverRep) -> Result<()> {
    let q = m.quiver();
    for i in 0..q.vertices() {
        let pi = QuiverRep::projective(q, m.p(), i);
        if brick_multiplicity(&pi, m)? > 0 {
            return Err(Error::Invalid(format!("projective P{} is a direct summand", i + 1)));
        }
    }
    Ok(())
}

pub fn check_no_injective_summand(m: &QuiverRep) -> Result<()> {
    let q = m.quiver();
    for i in 0..q.vertices() {
        let ii = QuiverRep::injective(q, m.p(), i);
        if brick_multiplicity(&ii, m)? > 0 {
            return Err(Error::Invalid(format!("injective I{} is a direct summand", i + 1)));
        }
    }
    Ok(())
}

/// `tau M`, with projective summands silently annihilated.
pub fn tau_unchecked(m: &QuiverRep) -> Result<QuiverRep> {
    let pres = proj_cover_data(m)?;
    let (n1, _, nu) = nakayama_map(m.quiver(), m.p(), &pres);
    Ok(n1.kernel(&nu).0)
}

/// Auslander-Reiten translate of a module without projective summands.
pub fn tau(m: &QuiverRep) -> Result<QuiverRep> {
    check_no_projective_summand(m)?;
    tau_unchecked(m)
}

pub fn tau_inverse_unchecked(m: &QuiverRep) -> Result<QuiverRep> {
    let op = Arc::new(m.quiver().opposite());
    let d = m.dual(&op);
    let t = tau_unchecked(&d)?;
    Ok(t.dual(m.quiver()))
}

/// Inverse translate of a module without injective summands.
pub fn tau_inverse(m: &QuiverRep) -> Result<QuiverRep> {
    check_no_injective_summand(m)?;
    tau_inverse_unchecked(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrep::iso::iso_test;
    use alloc::vec;

    #[test]
    fn a2_translate() {
        // module quiver 1 -> 0; S1 is injective non-projective, tau S1 = S0
        let q = Arc::new(Quiver::new(2, vec![(1, 0)]).unwrap());
        let s0 = QuiverRep::simple(&q, 3, 0);
        let s1 = QuiverRep::simple(&q, 3, 1);
        assert!(iso_test(&tau(&s1).unwrap(), &s0).unwrap());
        assert!(tau(&s0).is_err());
        assert!(iso_test(&tau_inverse(&s0).unwrap(), &s1).unwrap());
        let pres = proj_cover_data(&s1).unwrap();
        assert_eq!(pres.gens0, vec![1]);
        assert_eq!(pres.gens1, vec![0]);
    }

    #[test]
    fn kronecker_translate() {
        let q = Arc::new(Quiver::new(2, vec![(1, 0), (1, 0)]).unwrap());
        let r = QuiverRep::new(q.clone(), 3, vec![1, 1], vec![Mat::identity(1), Mat::from_vec(1, 1, vec![2])]).unwrap();
        let t = tau(&r).unwrap();
        assert!(iso_test(&t, &r).unwrap());
        let pres = proj_cover_data(&r).unwrap();
        let d0 = pres.dim_p0(&q);
        let d1 = pres.dim_p1(&q);
        assert_eq!((d0[0] - d1[0], d0[1] - d1[1]), (1, 1));
        let s1 = QuiverRep::simple(&q, 3, 1);
        let ts = tau(&s1).unwrap();
        assert_eq!(ts.dim_vec(), q.coxeter(&[0, 1]));
        assert!(iso_test(&tau_inverse(&ts).unwrap(), &s1).unwrap());
    }
}
