//! Sink reflections of framed quivers and the matching mutation.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::hall::{indecomposables, label};
use super::VerifyReport;
use crate::catalog::{Framed, Kind};
use crate::ccmap::{cc_map, ClusterObject};
use crate::error::{Error, Result};
use crate::finrep::iso::split_brick;
use crate::finrep::reflect::reflect_minus;
use crate::finrep::registry::Registry;
use crate::finrep::rep::QuiverRep;
use crate::quiver::{CompatiblePair, IceQuiver};
use crate::seed::{frame_monomial, mutate_matrices, mutate_seed, QuantumSeed};
use crate::torus::{Torus, ToricElement};

/// Principal vertices that are sinks of the ice quiver.
pub fn ice_sinks(fq: &Framed) -> Vec<usize> {
    (0..fq.n()).filter(|&i| fq.ice.is_sink(i)).collect()
}

/// The ice quiver with the arrows at the sink `i` reversed, carrying the
/// form and matrix of the seed mutated at `i`. Arrow order is kept, so its
/// module quiver is the reflected module quiver.
pub fn reflected_framing(fq: &Framed, i: usize) -> Result<Framed> {
    if i >= fq.n() || !fq.ice.is_sink(i) {
        return Err(Error::Invalid(format!("vertex {} is not a principal sink", i + 1)));
    }
    let arrows = fq.ice.arrows().iter().map(|&(s, t)| if t == i { (t, s) } else { (s, t) }).collect();
    let ice = IceQuiver::new(fq.m(), fq.n(), arrows)?;
    let (lambda, btilde) = mutate_matrices(&fq.pair.lambda, &fq.pair.btilde, i)?;
    let pair = CompatiblePair::new(lambda, btilde)?;
    Framed::with_pair(&format!("{}/s{}", fq.name, i + 1), Kind::Other, ice, pair)
}

/// `S_i -> P_i[1]`, `P_i[1] -> S_i`, `P_j[1] -> P_j[1]`, and every other
/// indecomposable summand goes through the reflection functor.
pub fn extended_reflect(fq: &Framed, target: &Framed, obj: &ClusterObject, i: usize) -> Result<ClusterObject> {
    let p = obj.module.p();
    let simple = QuiverRep::simple(&fq.principal, p, i);
    let (r, rest, _) = split_brick(&simple, &obj.module)?;
    let moved = reflect_minus(&fq.embed(&rest), i)?.with_quiver(&target.full)?;
    let mut module = target.restrict(&moved)?;
    let back = obj.shifts[i] as usize;
    if back > 0 {
        module = module.direct_sum(&QuiverRep::simple(&target.principal, p, i).power(back));
    }
    let mut shifts = obj.shifts.clone();
    shifts[i] = r as u32;
    Ok(ClusterObject::new(module, shifts))
}

fn describe(obj: &ClusterObject) -> String {
    let shifts: Vec<String> = obj.shifts.iter().map(|s| format!("{s}")).collect();
    format!("dim {:?} shifts ({})", obj.module.dims(), shifts.join(","))
}

/// Checks that the character over the reflected framing, read in the seed
/// mutated at `i`, is the character over the original one. Terms with a
/// negative power of the new variable are cleared by multiplying both
/// sides on the right by `M(k e_i)`.
pub fn verify_reflection(fq: &Framed, obj: &ClusterObject, i: usize, torus: &Arc<Torus>) -> Result<VerifyReport> {
    let target = reflected_framing(fq, i)?;
    let seed = mutate_seed(&QuantumSeed::initial(fq, torus), i)?;
    let rep = VerifyReport::new("reflection", &fq.name, torus.mode().prime(), format!("{} at sink {}", describe(obj), i + 1));
    if seed.lambda != target.pair.lambda || seed.btilde != target.pair.btilde {
        return Ok(rep.fail("mutated seed does not carry the reflected matrices"));
    }
    let image = extended_reflect(fq, &target, obj, i)?;
    let there = cc_map(&target, &image, &target.torus(torus.mode()))?;
    let k = there.terms().map(|(e, _)| -e[i]).max().unwrap_or(0).max(0);
    let mut clear = vec![0i64; fq.m()];
    clear[i] = k;
    let mut lhs = ToricElement::zero(torus);
    for (e, c) in there.terms() {
        let twist = seed.lambda.eval(e, &clear);
        let shifted: Vec<i64> = e.iter().zip(&clear).map(|(a, b)| a + b).collect();
        lhs = lhs.try_add(&frame_monomial(&seed, &shifted)?.scale(c).scale_qpow(twist))?;
    }
    let rhs = cc_map(fq, obj, torus)?.try_mul(&frame_monomial(&seed, &clear)?)?;
    Ok(rep.note(format!("image {}", describe(&image))).compare(&lhs, &rhs))
}

/// Every indecomposable up to `max` and every shifted projective, at every
/// principal sink of the ice quiver.
pub fn reflection_sweep(fq: &Framed, reg: &mut Registry, max: &[usize], torus: &Arc<Torus>) -> Result<Vec<VerifyReport>> {
    let p = reg.p();
    let mut objs: Vec<(String, ClusterObject)> = Vec::new();
    for id in indecomposables(reg, max, |_| true)? {
        objs.push((label(&id), ClusterObject::module(fq, reg.rep(&id).clone())));
    }
    for j in 0..fq.n() {
        objs.push((format!("P{}[1]", j + 1), ClusterObject::shifted_projective(fq, p, j)));
    }
    let mut out = Vec::new();
    for i in ice_sinks(fq) {
        for (name, obj) in &objs {
            let mut r = verify_reflection(fq, obj, i, torus)?;
            r.inputs = format!("{name} at sink {}", i + 1);
            out.push(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{a2, a3, kronecker};
    use crate::scalar::Mode;

    #[test]
    fn simple_goes_to_shifted_projective() {
        let fq = a2();
        let i = ice_sinks(&fq)[0];
        let target = reflected_framing(&fq, i).unwrap();
        let s = ClusterObject::module(&fq, QuiverRep::simple(&fq.principal, 3, i));
        let img = extended_reflect(&fq, &target, &s, i).unwrap();
        assert!(img.module.is_zero());
        assert_eq!(img.shifts[i], 1);
        let back = extended_reflect(&fq, &target, &ClusterObject::shifted_projective(&fq, 3, i), i).unwrap();
        assert_eq!(back.module.dims()[i], 1);
        assert_eq!(back.shifts[i], 0);
    }

    #[test]
    fn sweeps() {
        for (fq, max) in [(a2(), vec![1, 1]), (a3(), vec![1, 1, 1]), (kronecker(), vec![2, 2])] {
            assert!(!ice_sinks(&fq).is_empty());
            let t = fq.torus(Mode::Specialized(3));
            let mut reg = Registry::new(&fq.principal, 3);
            let reps = reflection_sweep(&fq, &mut reg, &max, &t).unwrap();
            for r in &reps {
                assert!(r.passed(), "{r}");
            }
        }
    }
}
