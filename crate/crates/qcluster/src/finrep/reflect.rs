//! Bernstein-Gelfand-Ponomarev reflection functors.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::field::Mat;
use super::quiver::Quiver;
use super::rep::QuiverRep;
use crate::error::{Error, Result};

/// Reflection at a sink `i`: the space at `i` becomes the kernel of the
/// sum map `(+)_{a: j -> i} M_j -> M_i`, and the arrows at `i` turn around.
pub fn reflect_plus(m: &QuiverRep, i: usize) -> Result<QuiverRep> {
    let q = m.quiver();
    if !q.is_sink(i) {
        return Err(Error::Invalid(format!("vertex {} is not a sink", i + 1)));
    }
    let fp = m.field();
    let inc: Vec<usize> = q.incoming(i).collect();
    let mut sum = Mat::zeros(m.dims()[i], 0);
    for &a in &inc {
        sum = sum.hstack(m.mat(a));
    }
    let ker = fp.nullspace(&sum);
    let new_q = Arc::new(q.reflect(i));
    let mut dims = m.dims().to_vec();
    dims[i] = ker.cols();
    let mut mats: Vec<Mat> = m.mats().to_vec();
    let mut off = 0;
    for &a in &inc {
        let j = q.arrows()[a].0;
        mats[a] = ker.row_range(off, off + m.dims()[j]);
        off += m.dims()[j];
    }
    QuiverRep::new(new_q, m.p(), dims, mats)
}

/// Reflection at a source `i`: the space at `i` becomes the cokernel of
/// `M_i -> (+)_{a: i -> j} M_j`.
pub fn reflect_minus(m: &QuiverRep, i: usize) -> Result<QuiverRep> {
    let q = m.quiver();
    if !q.is_source(i) {
        return Err(Error::Invalid(format!("vertex {} is not a source", i + 1)));
    }
    let fp = m.field();
    let out: Vec<usize> = q.outgoing(i).collect();
    let mut stacked = Mat::zeros(0, m.dims()[i]);
    for &a in &out {
        stacked = stacked.vstack(m.mat(a));
    }
    // rows of the projection onto the cokernel: a basis of the left kernel
    let proj = fp.nullspace(&stacked.transpose()).transpose();
    let new_q = Arc::new(q.reflect(i));
    let mut dims = m.dims().to_vec();
    dims[i] = proj.rows();
    let mut mats: Vec<Mat> = m.mats().to_vec();
    let mut off = 0;
    for &a in &out {
        let j = q.arrows()[a].1;
        mats[a] = proj.col_range(off, off + m.dims()[j]);
        off += m.dims()[j];
    }
    QuiverRep::new(new_q, m.p(), dims, mats)
}

/// The reflected quiver at `i`, arrow indices preserved.
pub fn reflected_quiver(q: &Quiver, i: usize) -> Quiver {
    q.reflect(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrep::iso::iso_test;
    use alloc::vec;

    #[test]
    fn a2_reflections() {
        // 1 -> 0, sink 0
        let q = Arc::new(Quiver::new(2, vec![(1, 0)]).unwrap());
        let p1 = QuiverRep::projective(&q, 3, 1);
        let r = reflect_plus(&p1, 0).unwrap();
        assert_eq!(r.dims(), &[0, 1]);
        let s0 = QuiverRep::simple(&q, 3, 0);
        assert!(reflect_plus(&s0, 0).unwrap().is_zero());
        // reflecting back recovers the module
        let s1 = QuiverRep::simple(&q, 3, 1);
        let there = reflect_plus(&s1, 0).unwrap();
        let back = reflect_minus(&there, 0).unwrap();
        assert!(iso_test(&back, &s1).unwrap());
        assert!(reflect_plus(&p1, 1).is_err());
    }
}
