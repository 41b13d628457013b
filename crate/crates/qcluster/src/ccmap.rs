//! The quantum cluster character of a module plus shifted projectives.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::catalog::{degree_one_points, e_family, e_lambda, Framed, Kind};
use crate::error::{Error, Result};
use crate::finrep::family::{grassmannian_poly, RepFamily};
use crate::finrep::hom::{ext_dim, hom_dim};
use crate::finrep::registry::Registry;
use crate::finrep::rep::QuiverRep;
use crate::finrep::subspace::grassmannian_profile;
use crate::scalar::{poly_in_q, Mode, QScalar};
use crate::torus::{Torus, ToricElement};

/// `M (+) (+)_i P_i[1]^{shifts_i}`; `shifts` has one entry per vertex of
/// the ice quiver and contributes `X^{shifts}`.
#[derive(Clone, Debug)]
pub struct ClusterObject {
    pub module: QuiverRep,
    pub shifts: Vec<u32>,
}

impl ClusterObject {
    pub fn new(module: QuiverRep, shifts: Vec<u32>) -> Self {
        Self { module, shifts }
    }

    pub fn module(fq: &Framed, module: QuiverRep) -> Self {
        Self { module, shifts: vec![0; fq.m()] }
    }

    pub fn zero(fq: &Framed, p: u32) -> Self {
        Self::module(fq, QuiverRep::zero(&fq.principal, p))
    }

    pub fn shifted_projective(fq: &Framed, p: u32, i: usize) -> Self {
        let mut shifts = vec![0; fq.m()];
        shifts[i] = 1;
        Self { module: QuiverRep::zero(&fq.principal, p), shifts }
    }

    /// `dim M - (shift multiplicities)` on the principal part.
    pub fn dim_vector(&self) -> Vec<i64> {
        self.module.dim_vec().iter().zip(&self.shifts).map(|(&d, &s)| d - s as i64).collect()
    }
}

fn exponent(fq: &Framed, e: &[i64], m: &[i64], shifts: &[u32]) -> Vec<i64> {
    let be = fq.ex.b_apply(e);
    let irm = fq.ex.i_minus_r(m);
    be.iter().zip(&irm).zip(shifts).map(|((a, b), &s)| a - b + s as i64).collect()
}

fn check_shape(fq: &Framed, shifts: &[u32]) -> Result<()> {
    if shifts.len() != fq.m() {
        return Err(Error::DimensionMismatch { expected: fq.m(), got: shifts.len() });
    }
    Ok(())
}

/// `sum_e |Gr_e M| q^{-<e, m-e>/2} X^{B~e - (I~-R~)m + shifts}` with counts
/// taken over `F_p`; the torus must be specialized at the same prime.
pub fn cc_map(fq: &Framed, obj: &ClusterObject, torus: &Arc<Torus>) -> Result<ToricElement> {
    check_shape(fq, &obj.shifts)?;
    let p = obj.module.p();
    if torus.mode() != Mode::Specialized(p) {
        return Err(Error::Invalid(format!(
            "counts over F_{p} need a torus specialized at {p}; formal mode takes a family"
        )));
    }
    if **obj.module.quiver() != *fq.principal {
        return Err(Error::Invalid("module is not over the principal quiver".into()));
    }
    let m = obj.module.dim_vec();
    let mut out = ToricElement::zero(torus);
    for (e, count) in grassmannian_profile(&obj.module)? {
        let e: Vec<i64> = e.iter().map(|&x| x as i64).collect();
        let rest: Vec<i64> = m.iter().zip(&e).map(|(a, b)| a - b).collect();
        let c = &QScalar::from_bigint(torus.mode(), BigInt::from(count)) * &QScalar::qpow(torus.mode(), -fq.ex.euler(&e, &rest));
        out.add_term(exponent(fq, &e, &m, &obj.shifts), &c);
    }
    Ok(out)
}

/// The character of an integer template: counts are interpolated in `q` in
/// formal mode and evaluated at `p` in specialized mode.
pub fn cc_map_family(
    fq: &Framed,
    fam: &RepFamily,
    lambda: i64,
    shifts: &[u32],
    torus: &Arc<Torus>,
) -> Result<ToricElement> {
    check_shape(fq, shifts)?;
    match torus.mode() {
        Mode::Specialized(p) => {
            let module = fam.at_integer(p, lambda)?;
            cc_map(fq, &ClusterObject::new(module, shifts.to_vec()), torus)
        }
        Mode::Formal => {
            let m: Vec<i64> = fam.dims.iter().map(|&d| d as i64).collect();
            let mut out = ToricElement::zero(torus);
            let mut e = vec![0usize; fam.dims.len()];
            loop {
                let poly = grassmannian_poly(fam, &e, lambda)?;
                let count = poly_in_q(&poly.coeffs);
                if !count.is_zero() {
                    let ei: Vec<i64> = e.iter().map(|&x| x as i64).collect();
                    let rest: Vec<i64> = m.iter().zip(&ei).map(|(a, b)| a - b).collect();
                    let c = count.shift(-fq.ex.euler(&ei, &rest));
                    out.add_term(exponent(fq, &ei, &m, shifts), &QScalar::Formal(c));
                }
                match (0..e.len()).find(|&i| e[i] < fam.dims[i]) {
                    Some(i) => {
                        e[i] += 1;
                        for x in &mut e[..i] {
                            *x = 0;
                        }
                    }
                    None => return Ok(out),
                }
            }
        }
    }
}

/// `X^{e_i}` for the shifted projective at vertex `i`.
pub fn cc_shifted(torus: &Arc<Torus>, i: usize) -> ToricElement {
    let mut e = vec![0; torus.rank()];
    e[i] = 1;
    ToricElement::x(torus, e)
}

/// The character of a simple, in either mode.
pub fn cc_simple(fq: &Framed, i: usize, torus: &Arc<Torus>) -> Result<ToricElement> {
    let mut dims = vec![0; fq.n()];
    dims[i] = 1;
    let mats = fq.principal.arrows().iter().map(|_| Vec::new()).collect();
    let fam = RepFamily::from_rep_ints(fq.principal.clone(), dims, mats)?;
    cc_map_family(fq, &fam, 0, &vec![0; fq.m()], torus)
}

/// `X_delta`: the character of a homogeneous regular simple of dimension
/// `delta`, checked to agree at two distinct points.
pub fn cc_delta(fq: &Framed, torus: &Arc<Torus>) -> Result<ToricElement> {
    match torus.mode() {
        Mode::Specialized(p) => {
            let pts = degree_one_points(fq, p)?;
            if pts.is_empty() {
                return Err(Error::Invalid(format!("no homogeneous point of degree one at p = {p}")));
            }
            let x = cc_map(fq, &ClusterObject::module(fq, e_lambda(fq, p, pts[0])?), torus)?;
            if let Some(&other) = pts.get(1) {
                let y = cc_map(fq, &ClusterObject::module(fq, e_lambda(fq, p, other)?), torus)?;
                if x != y {
                    return Err(Error::Internal("characters of homogeneous simples differ".into()));
                }
            }
            Ok(x)
        }
        Mode::Formal => {
            let mut fam = e_family(fq)?;
            // L = -1 avoids the exceptional points 0, 1 and infinity once p > 2
            if let Kind::Dtilde(_) = fq.kind {
                fam.bad_primes.push(2);
            }
            let lambda = if fq.kind == Kind::Kronecker { 0 } else { -1 };
            cc_map_family(fq, &fam, lambda, &vec![0; fq.m()], torus)
        }
    }
}

/// `X_d` for the generic object of dimension vector `d`: a rigid
/// `M (+) P[1]` when one exists, otherwise `X_delta^k X_R` with `R` rigid
/// and orthogonal to the homogeneous tubes, `k` as large as possible.
pub fn generic_variable(fq: &Framed, reg: &mut Registry, d: &[i64], torus: &Arc<Torus>) -> Result<ToricElement> {
    let n = fq.n();
    if d.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: d.len() });
    }
    let p = reg.p();
    if torus.mode() != Mode::Specialized(p) {
        return Err(Error::Invalid("generic variables are computed in specialized mode".into()));
    }
    let plus: Vec<usize> = d.iter().map(|&x| x.max(0) as usize).collect();
    let mut shifts = vec![0u32; fq.m()];
    for (s, &x) in shifts.iter_mut().zip(d) {
        *s = (-x).max(0) as u32;
    }
    if let Some(r) = rigid_of_dim(reg, &plus)? {
        return cc_map(fq, &ClusterObject::new(r, shifts), torus);
    }
    let delta = fq
        .delta()
        .map_err(|_| Error::Unsupported(format!("dimension vector {d:?} has no rigid object on {}", fq.name)))?;
    let pts = degree_one_points(fq, p)?;
    let hom_simple = e_lambda(fq, p, *pts.first().ok_or_else(|| Error::Invalid("no homogeneous point".into()))?)?;
    let max_k = plus.iter().zip(&delta).map(|(a, b)| a / b).min().unwrap_or(0);
    for k in (1..=max_k).rev() {
        let rest: Vec<usize> = plus.iter().zip(&delta).map(|(a, b)| a - k * b).collect();
        let r = if rest.iter().all(|&x| x == 0) {
            Some(QuiverRep::zero(&fq.principal, p))
        } else {
            rigid_of_dim(reg, &rest)?
        };
        let Some(r) = r else { continue };
        if !r.is_zero() && (ext_dim(&r, &hom_simple)? != 0 || ext_dim(&hom_simple, &r)? != 0 || hom_dim(&r, &hom_simple)? != 0) {
            continue;
        }
        let xd = cc_delta(fq, torus)?;
        let xr = cc_map(fq, &ClusterObject::new(r, shifts.clone()), torus)?;
        return xd.pow(k as u32).try_mul(&xr);
    }
    Err(Error::Unsupported(format!("no decomposition of {d:?} into delta and a rigid part")))
}

/// The rigid module of dimension `dims`, if any.
pub fn rigid_of_dim(reg: &mut Registry, dims: &[usize]) -> Result<Option<QuiverRep>> {
    if dims.iter().all(|&x| x == 0) {
        return Ok(Some(QuiverRep::zero(reg.quiver(), reg.p())));
    }
    for id in reg.all_classes(dims)? {
        let m = reg.rep(&id).clone();
        if ext_dim(&m, &m)? == 0 {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
