//! The Hall-number product formula and Green's formula.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{dims_str, VerifyReport};
use crate::catalog::Framed;
use crate::ccmap::{cc_map, ClusterObject};
use crate::error::Result;
use crate::finrep::hom::{ext_dim, hom_dim};
use crate::finrep::iso::is_indecomposable;
use crate::finrep::registry::{ClassId, Registry};
use crate::finrep::rep::QuiverRep;
use crate::torus::{Torus, ToricElement};

/// Indecomposable classes with dimension vector below `max` that satisfy `keep`.
/// Vectors with Tits form above 1 are not roots and are skipped.
pub fn indecomposables<F: Fn(&[usize]) -> bool>(reg: &mut Registry, max: &[usize], keep: F) -> Result<Vec<ClassId>> {
    let mut out = Vec::new();
    for d in Registry::dims_below(max) {
        if d.iter().all(|&x| x == 0) || !keep(&d) {
            continue;
        }
        let v: Vec<i64> = d.iter().map(|&x| x as i64).collect();
        if reg.quiver().euler(&v, &v) > 1 {
            continue;
        }
        for id in reg.all_classes(&d)? {
            if is_indecomposable(reg.rep(&id))? {
                out.push(id);
            }
        }
    }
    Ok(out)
}

/// Ordered pairs of indecomposables whose dimension vectors add up to an
/// admissible vector.
pub fn sweep_pairs<F: Fn(&[usize]) -> bool>(reg: &mut Registry, max: &[usize], admissible: F) -> Result<Vec<(ClassId, ClassId)>> {
    let ind = indecomposables(reg, max, |d| admissible(d))?;
    let mut out = Vec::new();
    for a in &ind {
        for b in &ind {
            let s: Vec<usize> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
            if admissible(&s) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

pub fn label(id: &ClassId) -> alloc::string::String {
    format!("{}#{}", dims_str(&id.0), id.1)
}

/// `q^{[M,N]^1} X_N X_M = q^{-L((I~-R~)m, (I~-R~)n)/2} sum_E eps^E_{MN} X_E`.
pub fn verify_hall(fq: &Framed, reg: &mut Registry, m: &QuiverRep, n: &QuiverRep, torus: &Arc<Torus>) -> Result<VerifyReport> {
    let mid = reg.middle_terms(m, n)?;
    let inputs = format!("M={} N={}", dims_str(m.dims()), dims_str(n.dims()));
    let xm = cc_map(fq, &ClusterObject::module(fq, m.clone()), torus)?;
    let xn = cc_map(fq, &ClusterObject::module(fq, n.clone()), torus)?;
    let ext = ext_dim(m, n)? as i64;
    let lhs = xn.try_mul(&xm)?.scale_qpow(2 * ext);
    let mut sum = ToricElement::zero(torus);
    let mut terms = 0;
    for (id, eps) in &mid {
        if *eps == 0 {
            continue;
        }
        terms += 1;
        let xe = cc_map(fq, &ClusterObject::module(fq, reg.rep(id).clone()), torus)?;
        let c = crate::scalar::QScalar::from_bigint(torus.mode(), BigInt::from(*eps));
        sum = sum.try_add(&xe.scale(&c))?;
    }
    let twist = fq.pair.lambda.eval(&fq.ex.i_minus_r(&m.dim_vec()), &fq.ex.i_minus_r(&n.dim_vec()));
    let rhs = sum.scale_qpow(-twist);
    Ok(VerifyReport::new("hall", &fq.name, Some(reg.p()), inputs)
        .compare(&lhs, &rhs)
        .note(format!("{} middle-term classes, {terms} with nonzero count", mid.len())))
}

pub fn hall_sweep<F: Fn(&[usize]) -> bool>(
    fq: &Framed,
    reg: &mut Registry,
    max: &[usize],
    admissible: F,
    torus: &Arc<Torus>,
) -> Result<Vec<VerifyReport>> {
    let pairs = sweep_pairs(reg, max, admissible)?;
    let mut out = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let (m, n) = (reg.rep(&a).clone(), reg.rep(&b).clone());
        let mut r = verify_hall(fq, reg, &m, &n, torus)?;
        r.inputs = format!("M={} N={}", label(&a), label(&b));
        out.push(r);
    }
    Ok(out)
}

fn p_power(p: u32, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    let mut out = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

fn add_dims(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn to_i64(d: &[usize]) -> Vec<i64> {
    d.iter().map(|&x| x as i64).collect()
}

/// `sum_E eps^E_{MN} F^E_{XY} =
///  sum_{A,B,C,D} q^{[M,N]-[A,C]-[B,D]-<A,D>} F^M_{AB} F^N_{CD} eps^X_{AC} eps^Y_{BD}`.
pub fn verify_green(name: &str, reg: &mut Registry, m: &ClassId, n: &ClassId, x: &ClassId, y: &ClassId) -> Result<VerifyReport> {
    let p = reg.p();
    let q = reg.quiver().clone();
    let inputs = format!("M={} N={} X={} Y={}", label(m), label(n), label(x), label(y));
    let mut report = VerifyReport::new("green", name, Some(p), inputs);
    let total = add_dims(&m.0, &n.0);
    if add_dims(&x.0, &y.0) != total {
        return Ok(report.skip("dimension vectors do not match"));
    }
    let mut lhs = BigInt::zero();
    for e in reg.all_classes(&total)? {
        let eps = reg.ext_count_ids(&e, m, n)?;
        if eps == 0 {
            continue;
        }
        let f = reg.filtration_count_ids(&e, x, y)?;
        lhs += BigInt::from(eps) * BigInt::from(f);
    }
    let (mr, nr) = (reg.rep(m).clone(), reg.rep(n).clone());
    let hom_mn = hom_dim(&mr, &nr)? as i64;
    let pm: BTreeMap<(ClassId, ClassId), u128> = reg.profile(m)?;
    let pn: BTreeMap<(ClassId, ClassId), u128> = reg.profile(n)?;
    let mut rhs = BigRational::zero();
    for ((a, b), fab) in &pm {
        for ((c, d), fcd) in &pn {
            if add_dims(&a.0, &c.0) != x.0 || add_dims(&b.0, &d.0) != y.0 {
                continue;
            }
            let e1 = reg.ext_count_ids(x, a, c)?;
            if e1 == 0 {
                continue;
            }
            let e2 = reg.ext_count_ids(y, b, d)?;
            if e2 == 0 {
                continue;
            }
            let (ar, br, cr, dr) = (reg.rep(a).clone(), reg.rep(b).clone(), reg.rep(c).clone(), reg.rep(d).clone());
            let expo = hom_mn - hom_dim(&ar, &cr)? as i64 - hom_dim(&br, &dr)? as i64 - q.euler(&to_i64(&a.0), &to_i64(&d.0));
            let count = BigInt::from(*fab) * BigInt::from(*fcd) * BigInt::from(e1) * BigInt::from(e2);
            rhs += p_power(p, expo) * BigRational::from_integer(count);
        }
    }
    report = report.compare_strings(format!("{lhs}"), format!("{rhs}"));
    Ok(report)
}

/// Green's formula on every `(M, N)` of a sweep and every split
/// `dim X + dim Y = dim M + dim N` over all classes.
pub fn green_sweep<F: Fn(&[usize]) -> bool>(name: &str, reg: &mut Registry, max: &[usize], admissible: F) -> Result<Vec<VerifyReport>> {
    let pairs = sweep_pairs(reg, max, admissible)?;
    let mut out = Vec::new();
    for (m, n) in pairs {
        let total = add_dims(&m.0, &n.0);
        for dx in Registry::dims_below(&total) {
            let dy: Vec<usize> = total.iter().zip(&dx).map(|(t, x)| t - x).collect();
            let xs = reg.all_classes(&dx)?;
            let ys = reg.all_classes(&dy)?;
            for x in &xs {
                for y in &ys {
                    out.push(verify_green(name, reg, &m, &n, x, y)?);
                }
            }
        }
    }
    Ok(out)
}
