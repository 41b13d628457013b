//! Isomorphism classes of representations by dimension vector, with the
//! counts entering Hall numbers.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::field::Mat;
use super::hom::{hom_dim, ext_dim};
use super::iso::{aut_count, find_iso, fingerprint, gl_order, Fingerprint};
use super::quiver::Quiver;
use super::rep::QuiverRep;
use super::subspace::{for_each_submodule, SUBSPACE_BUDGET};
use crate::error::{Error, Result};

/// `(dimension vector, index within that dimension)`.
pub type ClassId = (Vec<usize>, usize);

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub rep: QuiverRep,
    pub aut: u128,
    fingerprint: Fingerprint,
}

/// Orbit enumeration limits: the number of matrix tuples allowed.
#[derive(Clone, Copy, Debug)]
pub struct OrbitBudget {
    pub tuples: u128,
}

impl OrbitBudget {
    /// At most 12 entries for `p <= 3`, 8 for `p = 5`, and `p^entries <= 531441` beyond.
    pub fn default_for(p: u32) -> Self {
        let tuples = match p {
            2 | 3 => 3u128.pow(12),
            5 => 5u128.pow(8),
            _ => 531_441,
        };
        Self { tuples }
    }
}

pub struct Registry {
    quiver: Arc<Quiver>,
    p: u32,
    classes: BTreeMap<Vec<usize>, Vec<ClassInfo>>,
    complete: BTreeSet<Vec<usize>>,
    profiles: BTreeMap<ClassId, BTreeMap<(ClassId, ClassId), u128>>,
    pub budget: OrbitBudget,
    pub subspace_budget: u128,
}

fn index_of_tuple(quiver: &Quiver, dims: &[usize], p: u32, mut idx: u128) -> Vec<Mat> {
    quiver
        .arrows()
        .iter()
        .map(|&(s, t)| {
            let mut m = Mat::zeros(dims[t], dims[s]);
            for v in m.data_mut() {
                *v = (idx % p as u128) as u32;
                idx /= p as u128;
            }
            m
        })
        .collect()
}

impl Registry {
    pub fn new(quiver: &Arc<Quiver>, p: u32) -> Self {
        Self {
            quiver: quiver.clone(),
            p,
            classes: BTreeMap::new(),
            complete: BTreeSet::new(),
            profiles: BTreeMap::new(),
            budget: OrbitBudget::default_for(p),
            subspace_budget: SUBSPACE_BUDGET,
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn info(&self, id: &ClassId) -> &ClassInfo {
        &self.classes[&id.0][id.1]
    }

    pub fn rep(&self, id: &ClassId) -> &QuiverRep {
        &self.info(id).rep
    }

    pub fn aut(&self, id: &ClassId) -> u128 {
        self.info(id).aut
    }

    fn lookup(&self, m: &QuiverRep, fpr: &Fingerprint) -> Result<Option<usize>> {
        if let Some(list) = self.classes.get(m.dims()) {
            for (i, c) in list.iter().enumerate() {
                if c.fingerprint == *fpr && find_iso(&c.rep, m)?.is_some() {
                    return Ok(Some(i));
                }
            }
        }
        Ok(None)
    }

    fn insert(&mut self, m: &QuiverRep, fpr: Fingerprint) -> Result<ClassId> {
        if self.complete.contains(m.dims()) {
            return Err(Error::Internal("representation missing from a complete class list".into()));
        }
        let aut = aut_count(m)?;
        let list = self.classes.entry(m.dims().to_vec()).or_default();
        list.push(ClassInfo { rep: m.clone(), aut, fingerprint: fpr });
        Ok((m.dims().to_vec(), list.len() - 1))
    }

    /// The class of `m`, registering it if new.
    pub fn classify(&mut self, m: &QuiverRep) -> Result<ClassId> {
        m.same_setting(&QuiverRep::zero(&self.quiver, self.p))?;
        let fpr = fingerprint(m)?;
        match self.lookup(m, &fpr)? {
            Some(i) => Ok((m.dims().to_vec(), i)),
            None => self.insert(m, fpr),
        }
    }

    /// Every isomorphism class of the given dimension, by enumerating all
    /// matrix tuples.  The orbit sizes are checked to exhaust the tuples.
    pub fn all_classes(&mut self, dims: &[usize]) -> Result<Vec<ClassId>> {
        if !self.complete.contains(dims) {
            self.enumerate(dims)?;
        }
        let n = self.classes.get(dims).map_or(0, |l| l.len());
        Ok((0..n).map(|i| (dims.to_vec(), i)).collect())
    }

    fn enumerate(&mut self, dims: &[usize]) -> Result<()> {
        let entries: usize = self.quiver.arrows().iter().map(|&(s, t)| dims[s] * dims[t]).sum();
        let total = (self.p as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
        if total > self.budget.tuples {
            return Err(Error::Budget { what: "orbit enumeration tuples", needed: total, limit: self.budget.tuples });
        }
        let gl = gl_order(dims, self.p);
        // orbit sizes of classes already known
        let mut covered: u128 = 0;
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut idx: u128 = 0;
        while covered < total {
            if idx >= total {
                return Err(Error::Internal("orbit sizes do not exhaust the representation space".into()));
            }
            let mats = index_of_tuple(&self.quiver, dims, self.p, idx);
            idx += 1;
            let m = QuiverRep::new(self.quiver.clone(), self.p, dims.to_vec(), mats)?;
            let fpr = fingerprint(&m)?;
            let i = match self.lookup(&m, &fpr)? {
                Some(i) => i,
                None => self.insert(&m, fpr)?.1,
            };
            if seen.insert(i) {
                let aut = self.classes[dims][i].aut;
                if !gl.is_multiple_of(aut) {
                    return Err(Error::Internal("automorphism group order does not divide GL".into()));
                }
                covered += gl / aut;
            }
        }
        if covered != total {
            return Err(Error::Internal("orbit sizes overshoot the representation space".into()));
        }
        let n = self.classes.get(dims).map_or(0, |l| l.len());
        if seen.len() != n {
            return Err(Error::Internal("registered class has no orbit in the enumeration".into()));
        }
        self.complete.insert(dims.to_vec());
        Ok(())
    }

    /// For the class of `m`: counts of submodules `U` by
    /// `(class of m/U, class of U)`.
    pub fn profile(&mut self, id: &ClassId) -> Result<BTreeMap<(ClassId, ClassId), u128>> {
        if let Some(p) = self.profiles.get(id) {
            return Ok(p.clone());
        }
        let m = self.rep(id).clone();
        let mut subs: Vec<Vec<Mat>> = Vec::new();
        for_each_submodule(&m, None, self.subspace_budget, |u| {
            subs.push(u.to_vec());
            false
        })?;
        let mut out: BTreeMap<(ClassId, ClassId), u128> = BTreeMap::new();
        for u in subs {
            let sub = m.sub_rep(&u)?;
            let (quo, _) = m.quotient(&u)?;
            let a = self.classify(&quo)?;
            let b = self.classify(&sub)?;
            *out.entry((a, b)).or_default() += 1;
        }
        self.profiles.insert(id.clone(), out.clone());
        Ok(out)
    }

    /// `F^M_{AB}`: submodules `U` of `M` with `U ~ B` and `M/U ~ A`.
    pub fn filtration_count(&mut self, m: &QuiverRep, a: &QuiverRep, b: &QuiverRep) -> Result<u128> {
        let dm = m.dims();
        if a.dims().iter().zip(b.dims()).zip(dm).any(|((x, y), z)| x + y != *z) {
            return Ok(0);
        }
        let mi = self.classify(m)?;
        let ai = self.classify(a)?;
        let bi = self.classify(b)?;
        self.filtration_count_ids(&mi, &ai, &bi)
    }

    pub fn filtration_count_ids(&mut self, m: &ClassId, a: &ClassId, b: &ClassId) -> Result<u128> {
        Ok(self.profile(m)?.get(&(a.clone(), b.clone())).copied().unwrap_or(0))
    }

    /// `eps^E_{MN} = F^E_{MN} p^{[M,N]} a_M a_N / a_E`.
    pub fn ext_count_ids(&mut self, e: &ClassId, m: &ClassId, n: &ClassId) -> Result<u128> {
        let f = self.filtration_count_ids(e, m, n)?;
        if f == 0 {
            return Ok(0);
        }
        let (mr, nr) = (self.rep(m).clone(), self.rep(n).clone());
        let h = hom_dim(&mr, &nr)?;
        let num = f * (self.p as u128).pow(h as u32) * self.aut(m) * self.aut(n);
        let ae = self.aut(e);
        if !num.is_multiple_of(ae) {
            return Err(Error::Internal("Riedtmann-Peng quotient is not an integer".into()));
        }
        Ok(num / ae)
    }

    pub fn ext_count(&mut self, e: &QuiverRep, m: &QuiverRep, n: &QuiverRep) -> Result<u128> {
        if e.dims().iter().zip(m.dims()).zip(n.dims()).any(|((x, y), z)| *x != y + z) {
            return Ok(0);
        }
        let ei = self.classify(e)?;
        let mi = self.classify(m)?;
        let ni = self.classify(n)?;
        self.ext_count_ids(&ei, &mi, &ni)
    }

    /// All classes of dimension `dim M + dim N`, each with `eps^E_{MN}`.
    pub fn middle_terms(&mut self, m: &QuiverRep, n: &QuiverRep) -> Result<Vec<(ClassId, u128)>> {
        let dims: Vec<usize> = m.dims().iter().zip(n.dims()).map(|(a, b)| a + b).collect();
        let mi = self.classify(m)?;
        let ni = self.classify(n)?;
        let classes = self.all_classes(&dims)?;
        let mut out = Vec::with_capacity(classes.len());
        for c in classes {
            let eps = self.ext_count_ids(&c, &mi, &ni)?;
            out.push((c, eps));
        }
        let total: u128 = out.iter().map(|x| x.1).sum();
        let expect = (self.p as u128).pow(ext_dim(m, n)? as u32);
        if total != expect {
            return Err(Error::Internal("extension counts do not sum to |Ext^1|".into()));
        }
        Ok(out)
    }

    /// Number of registered classes at `dims`.
    pub fn class_count(&self, dims: &[usize]) -> usize {
        self.classes.get(dims).map_or(0, |l| l.len())
    }

    pub fn is_complete(&self, dims: &[usize]) -> bool {
        self.complete.contains(dims)
    }

    /// Dimension vectors bounded by `max`, componentwise.
    pub fn dims_below(max: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut e = vec![0usize; max.len()];
        loop {
            out.push(e.clone());
            let mut i = 0;
            while i < e.len() {
                if e[i] < max[i] {
                    e[i] += 1;
                    break;
                }
                e[i] = 0;
                i += 1;
            }
            if i == e.len() {
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_dimension_one_one() {
        let q = Arc::new(Quiver::new(2, vec![(1, 0), (1, 0)]).unwrap());
        let mut reg = Registry::new(&q, 3);
        let classes = reg.all_classes(&[1, 1]).unwrap();
        // split class plus one regular module per point of P^1(F_3)
        assert_eq!(classes.len(), 5);
        let s0 = QuiverRep::simple(&q, 3, 0);
        let s1 = QuiverRep::simple(&q, 3, 1);
        let mids = reg.middle_terms(&s1, &s0).unwrap();
        let total: u128 = mids.iter().map(|x| x.1).sum();
        assert_eq!(total, 9);
        for (c, eps) in &mids {
            let split = reg.rep(c).socle_dims() == vec![1, 1];
            assert_eq!(*eps, if split { 1 } else { 2 });
        }
    }
}
