//! Isomorphism tests, automorphism counts and direct-summand splitting.

use alloc::vec::Vec;

use super::field::{Fp, Mat};
use super::hom::{for_each_combination, hom_basis, hom_dim, HomComplex};
use super::rep::{Morphism, QuiverRep};
use crate::error::{Error, Result};

/// Default cap on the number of Hom elements enumerated by one search.
pub const HOM_BUDGET: u128 = 1_000_000;

fn check_budget(p: u32, h: usize, budget: u128) -> Result<()> {
    let needed = (p as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Budget { what: "hom elements", needed, limit: budget });
    }
    Ok(())
}

/// Some isomorphism `M -> N`, if one exists.
pub fn find_iso(m: &QuiverRep, n: &QuiverRep) -> Result<Option<Morphism>> {
    m.same_setting(n)?;
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.top_dims() != n.top_dims() || m.socle_dims() != n.socle_dims() {
        return Ok(None);
    }
    for (a, b) in m.mats().iter().zip(n.mats()) {
        if m.field().rank(a) != m.field().rank(b) {
            return Ok(None);
        }
    }
    let h = hom_dim(m, n)?;
    if h != hom_dim(m, m)? || h != hom_dim(n, n)? {
        return Ok(None);
    }
    let basis = hom_basis(m, n)?;
    check_budget(m.p(), basis.len(), HOM_BUDGET)?;
    let fp = m.field();
    // try the basis elements and their sum first; isomorphisms are usually dense
    for f in &basis {
        if f.is_iso(fp) {
            return Ok(Some(f.clone()));
        }
    }
    let mut found = None;
    let template = Morphism::zero(m, n);
    for_each_combination(&basis, &template, fp, |f| {
        if f.is_iso(fp) {
            found = Some(f.clone());
            true
        } else {
            false
        }
    });
    Ok(found)
}

pub fn iso_test(m: &QuiverRep, n: &QuiverRep) -> Result<bool> {
    Ok(find_iso(m, n)?.is_some())
}

/// Number of automorphisms of `M`.
pub fn aut_count(m: &QuiverRep) -> Result<u128> {
    let basis = hom_basis(m, m)?;
    check_budget(m.p(), basis.len(), HOM_BUDGET)?;
    let fp = m.field();
    let mut count = 0u128;
    for_each_combination(&basis, &Morphism::identity(m), fp, |f| {
        if f.is_iso(fp) {
            count += 1;
        }
        false
    });
    Ok(count)
}

/// `|GL_d(F_p)| = prod_v prod_{i<d_v} (p^{d_v} - p^i)`.
pub fn gl_order(dims: &[usize], p: u32) -> u128 {
    let p = p as u128;
    let mut out = 1u128;
    for &d in dims {
        for i in 0..d {
            out *= p.pow(d as u32) - p.pow(i as u32);
        }
    }
    out
}

fn is_idempotent(f: &Morphism, fp: Fp) -> bool {
    f.maps.iter().all(|m| fp.mat_mul(m, m) == *m)
}

/// A nontrivial idempotent endomorphism, if `M` decomposes.
pub fn find_idempotent(m: &QuiverRep) -> Result<Option<Morphism>> {
    let basis = hom_basis(m, m)?;
    if basis.len() <= 1 {
        return Ok(None);
    }
    check_budget(m.p(), basis.len(), HOM_BUDGET)?;
    let fp = m.field();
    let id = Morphism::identity(m);
    let mut found = None;
    for_each_combination(&basis, &id, fp, |f| {
        if !f.is_zero() && *f != id && is_idempotent(f, fp) {
            found = Some(f.clone());
            true
        } else {
            false
        }
    });
    Ok(found)
}

pub fn is_indecomposable(m: &QuiverRep) -> Result<bool> {
    Ok(!m.is_zero() && find_idempotent(m)?.is_none())
}

/// Splits `M` into indecomposable summands.
pub fn decompose(m: &QuiverRep) -> Result<Vec<QuiverRep>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let Some(e) = find_idempotent(m)? else {
        return Ok(alloc::vec![m.clone()]);
    };
    let img = m.image_of(&e);
    let (ker, _) = m.kernel(&e);
    let mut out = decompose(&m.sub_rep(&img)?)?;
    out.extend(decompose(&ker)?);
    out.sort_by_key(|r| (r.total_dim(), r.dims().to_vec()));
    Ok(out)
}

/// Multiplicity of a brick `X` (End X = k) as a direct summand of `C`.
pub fn brick_multiplicity(x: &QuiverRep, c: &QuiverRep) -> Result<usize> {
    Ok(split_brick(x, c)?.0)
}

/// Writes `C = X^r (+) C'` for a brick `X`; returns `r` and `C'` with its
/// inclusion into `C`.
pub fn split_brick(x: &QuiverRep, c: &QuiverRep) -> Result<(usize, QuiverRep, Vec<Mat>)> {
    let fp = c.field();
    let gs = hom_basis(x, c)?;
    let hs = hom_basis(c, x)?;
    // the pairing (g, h) -> h g lands in End X = k, read off at a vertex where X is nonzero
    let v = x
        .dims()
        .iter()
        .position(|&d| d > 0)
        .ok_or_else(|| Error::Invalid("zero module is not a brick".into()))?;
    let mut pairing = Mat::zeros(hs.len(), gs.len());
    for (i, h) in hs.iter().enumerate() {
        for (j, g) in gs.iter().enumerate() {
            let hg = fp.mat_mul(&h.maps[v], &g.maps[v]);
            pairing.set(i, j, hg.get(0, 0));
        }
    }
    let r = fp.rank(&pairing);
    // complement: common kernel of the h's that pair nontrivially
    let ech = fp.echelon(&pairing.transpose());
    let mut chosen: Vec<&Morphism> = Vec::new();
    for &pc in &ech.pivots {
        chosen.push(&hs[pc]);
    }
    let bases: Vec<Mat> = (0..c.dims().len())
        .map(|u| {
            let mut stacked = Mat::zeros(0, c.dims()[u]);
            for h in &chosen {
                stacked = stacked.vstack(&h.maps[u]);
            }
            fp.nullspace(&stacked)
        })
        .collect();
    let rest = c.sub_rep(&bases)?;
    if rest.total_dim() + r * x.total_dim() != c.total_dim() {
        return Err(Error::Internal("brick splitting lost dimension".into()));
    }
    Ok((r, rest, bases))
}

/// `dim End(M)`, a cheap invariant.
pub fn end_dim(m: &QuiverRep) -> Result<usize> {
    hom_dim(m, m)
}

/// Isomorphism-invariant data used to bucket representations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Fingerprint {
    pub top: Vec<usize>,
    pub socle: Vec<usize>,
    pub ranks: Vec<usize>,
    pub end: usize,
}

pub fn fingerprint(m: &QuiverRep) -> Result<Fingerprint> {
    let fp = m.field();
    let cx = HomComplex::new(m, m)?;
    let end = cx.delta.cols() - fp.rank(&cx.delta);
    Ok(Fingerprint {
        top: m.top_dims(),
        socle: m.socle_dims(),
        ranks: m.mats().iter().map(|a| fp.rank(a)).collect(),
        end,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrep::quiver::Quiver;
    use alloc::sync::Arc;
    use alloc::vec;

    #[test]
    fn automorphisms() {
        let q = Arc::new(Quiver::new(2, vec![(1, 0)]).unwrap());
        let s = QuiverRep::simple(&q, 3, 0);
        assert_eq!(aut_count(&s).unwrap(), 2);
        assert_eq!(aut_count(&s.power(2)).unwrap(), 48);
        assert_eq!(gl_order(&[2], 3), 48);
        let p1 = QuiverRep::projective(&q, 3, 1);
        assert_eq!(aut_count(&p1).unwrap(), 2);
        assert!(iso_test(&p1, &p1).unwrap());
        assert!(!iso_test(&p1, &s.direct_sum(&QuiverRep::simple(&q, 3, 1))).unwrap());
    }

    #[test]
    fn splitting() {
        let q = Arc::new(Quiver::new(2, vec![(1, 0)]).unwrap());
        let p1 = QuiverRep::projective(&q, 5, 1);
        let s0 = QuiverRep::simple(&q, 5, 0);
        let c = p1.direct_sum(&s0).direct_sum(&p1);
        let (r, rest, _) = split_brick(&p1, &c).unwrap();
        assert_eq!(r, 2);
        assert!(iso_test(&rest, &s0).unwrap());
        let parts = decompose(&c).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(is_indecomposable(&p1).unwrap());
        assert!(!is_indecomposable(&c).unwrap());
    }
}
