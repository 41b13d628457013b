//! Quantum seeds, mutation and cluster or standard monomials.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::Framed;
use crate::ccmap::{cc_shifted, cc_simple};
use crate::error::{Error, Result};
use crate::intlin::IMat;
use crate::quiver::check_compatible;
use crate::torus::{SkewForm, Torus, ToricElement};

/// The matrix `E` with `E e_k = -e_k + sum_i [-b_ik]_+ e_i` and identity
/// columns elsewhere.
pub fn e_matrix(btilde: &IMat, k: usize) -> IMat {
    let m = btilde.rows();
    let mut e = IMat::identity(m);
    for i in 0..m {
        let v = if i == k { -1 } else { (-btilde.get(i, k)).max(0) };
        e.set(i, k, v);
    }
    e
}

/// Standard matrix mutation at `k`.
pub fn mutate_b(btilde: &IMat, k: usize) -> IMat {
    let (m, n) = (btilde.rows(), btilde.cols());
    let mut out = IMat::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            let b = btilde.get(i, j);
            let v = if i == k || j == k {
                -b
            } else {
                let (bik, bkj) = (btilde.get(i, k), btilde.get(k, j));
                b + (bik.abs() * bkj + bik * bkj.abs()) / 2
            };
            out.set(i, j, v);
        }
    }
    out
}

/// `(E^T L E, mu_k(B~))`.
pub fn mutate_matrices(lambda: &SkewForm, btilde: &IMat, k: usize) -> Result<(SkewForm, IMat)> {
    if k >= btilde.cols() {
        return Err(Error::Invalid(alloc::format!("vertex {} is frozen", k + 1)));
    }
    let e = e_matrix(btilde, k);
    let l = IMat::from_rows(&lambda.rows())?;
    let new_l = e.transpose().mul(&l).mul(&e);
    Ok((SkewForm::new(&new_l.to_rows())?, mutate_b(btilde, k)))
}

/// A seed stored through the expansions of its frame `M(e_i)` in the
/// initial torus.
#[derive(Clone, Debug)]
pub struct QuantumSeed {
    pub lambda: SkewForm,
    pub btilde: IMat,
    pub vars: Vec<ToricElement>,
}

impl QuantumSeed {
    pub fn initial(fq: &Framed, torus: &Arc<Torus>) -> Self {
        let vars = (0..fq.m()).map(|i| cc_shifted(torus, i)).collect();
        Self { lambda: fq.pair.lambda.clone(), btilde: fq.pair.btilde.clone(), vars }
    }

    pub fn n(&self) -> usize {
        self.btilde.cols()
    }

    pub fn torus(&self) -> &Arc<Torus> {
        self.vars[0].torus()
    }

    /// `D` from `B~^T L = (D | 0)`.
    pub fn check(&self) -> Result<Vec<i64>> {
        check_compatible(&self.lambda, &self.btilde)
    }

    /// Canonical strings of the variables.
    pub fn canonical(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.canonical()).collect()
    }
}

/// `M(c) = q^{-1/2 sum_{i<j} c_i c_j L_ij} M(e_1)^{c_1} ... M(e_m)^{c_m}`.
/// Negative exponents are allowed only on variables that are monomials.
pub fn frame_monomial(seed: &QuantumSeed, c: &[i64]) -> Result<ToricElement> {
    let m = seed.vars.len();
    if c.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: c.len() });
    }
    if let Some(i) = (0..m).find(|&i| c[i] < 0 && seed.vars[i].len() != 1) {
        return Err(Error::Invalid(alloc::format!("negative exponent on non-monomial variable {}", i + 1)));
    }
    let torus = seed.torus();
    let mut acc = ToricElement::one(torus);
    let mut pre = 0;
    for i in 0..m {
        if c[i] == 0 {
            continue;
        }
        let factor = if c[i] > 0 {
            seed.vars[i].pow(c[i] as u32)
        } else {
            seed.vars[i].monomial_inverse()?.pow((-c[i]) as u32)
        };
        acc = acc.try_mul(&factor)?;
        for j in (i + 1)..m {
            pre -= c[i] * c[j] * seed.lambda.get(i, j);
        }
    }
    Ok(acc.scale_qpow(pre))
}

/// Mutation at `k`: `M'(e_k) = M(E e_k) + M(E e_k + b^k)`.
pub fn mutate_seed(seed: &QuantumSeed, k: usize) -> Result<QuantumSeed> {
    let (lambda, btilde) = mutate_matrices(&seed.lambda, &seed.btilde, k)?;
    let m = seed.vars.len();
    let e = e_matrix(&seed.btilde, k);
    let c1 = e.col(k);
    let c2: Vec<i64> = c1.iter().zip(seed.btilde.col(k)).map(|(a, b)| a + b).collect();
    // M(c) = q^{L(c, e_k)/2} M(c + e_k) M(e_k)^{-1}, and both c have c_k = -1
    let mut ek = vec![0; m];
    ek[k] = 1;
    let mut num = ToricElement::zero(seed.torus());
    for c in [&c1, &c2] {
        let mut a = c.clone();
        a[k] += 1;
        let twist = seed.lambda.eval(c, &ek);
        num = num.try_add(&frame_monomial(seed, &a)?.scale_qpow(twist))?;
    }
    let new_var = num.div_right(&seed.vars[k])?;
    let mut vars = seed.vars.clone();
    vars[k] = new_var;
    Ok(QuantumSeed { lambda, btilde, vars })
}

pub fn mutate_sequence(seed: &QuantumSeed, seq: &[usize]) -> Result<QuantumSeed> {
    let mut s = seed.clone();
    for &k in seq {
        s = mutate_seed(&s, k)?;
    }
    Ok(s)
}

/// `prod_i X_{S_i}^{d_i^+} X_{P_i[1]}^{d_i^-}`, in the order `i = 1..n`.
pub fn standard_monomial(fq: &Framed, d: &[i64], torus: &Arc<Torus>) -> Result<ToricElement> {
    let mut acc = ToricElement::one(torus);
    for (i, &di) in d.iter().enumerate() {
        if di > 0 {
            acc = acc.try_mul(&cc_simple(fq, i, torus)?.pow(di as u32))?;
        } else if di < 0 {
            acc = acc.try_mul(&cc_shifted(torus, i).pow((-di) as u32))?;
        }
    }
    Ok(acc)
}

/// Result of a breadth-first walk over seeds up to a depth.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    /// Distinct unlabeled seeds found, each as its sorted variable strings.
    pub seeds: Vec<Vec<String>>,
    /// Distinct principal cluster variables found.
    pub variables: Vec<ToricElement>,
    /// Whether the walk stopped because no new seed appeared.
    pub closed: bool,
}

fn seed_key(seed: &QuantumSeed) -> Vec<String> {
    let mut k: Vec<String> = seed.vars[..seed.n()].iter().map(|v| v.canonical()).collect();
    k.sort();
    k
}

/// Explores mutation classes by breadth-first search to `depth`.
pub fn explore(seed: &QuantumSeed, depth: usize) -> Result<ExchangeGraph> {
    let mut seen: BTreeMap<Vec<String>, ()> = BTreeMap::new();
    let mut vars: BTreeMap<String, ToricElement> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(seed_key(seed), ());
    queue.push_back((seed.clone(), 0usize, usize::MAX));
    let mut closed = true;
    while let Some((s, d, last)) = queue.pop_front() {
        for v in &s.vars[..s.n()] {
            vars.entry(v.canonical()).or_insert_with(|| v.clone());
        }
        if d == depth {
            closed = false;
            continue;
        }
        for k in 0..s.n() {
            if k == last {
                continue;
            }
            let t = mutate_seed(&s, k)?;
            let key = seed_key(&t);
            if seen.insert(key, ()).is_none() {
                queue.push_back((t, d + 1, k));
            }
        }
    }
    Ok(ExchangeGraph { seeds: seen.into_keys().collect(), variables: vars.into_values().collect(), closed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{a2, a3, kronecker};
    use crate::scalar::Mode;

    #[test]
    fn involution_and_compatibility() {
        for fq in [a2(), a3(), kronecker()] {
            let t = fq.torus(Mode::Formal);
            let s = QuantumSeed::initial(&fq, &t);
            for k in 0..fq.n() {
                let once = mutate_seed(&s, k).unwrap();
                assert_eq!(once.check().unwrap(), vec![1; fq.n()]);
                assert!(once.vars[k].is_bar_invariant().unwrap());
                let twice = mutate_seed(&once, k).unwrap();
                assert_eq!(twice.lambda, s.lambda);
                assert_eq!(twice.btilde, s.btilde);
                assert_eq!(twice.canonical(), s.canonical());
            }
        }
    }

    #[test]
    fn pentagon() {
        let fq = a2();
        let t = fq.torus(Mode::Formal);
        let s = QuantumSeed::initial(&fq, &t);
        let five = mutate_sequence(&s, &[0, 1, 0, 1, 0]).unwrap();
        assert_eq!(five.vars[0], s.vars[1]);
        assert_eq!(five.vars[1], s.vars[0]);
        let ten = mutate_sequence(&s, &[0, 1, 0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(ten.canonical(), s.canonical());
        let g = explore(&s, 6).unwrap();
        assert!(g.closed);
        assert_eq!(g.variables.len(), 5);
        assert_eq!(g.seeds.len(), 5);
    }

    #[test]
    fn mutation_matches_characters() {
        let fq = kronecker();
        let t = fq.torus(Mode::Specialized(3));
        let s = QuantumSeed::initial(&fq, &t);
        let m0 = mutate_seed(&s, 0).unwrap();
        assert_eq!(m0.vars[0], cc_simple(&fq, 0, &t).unwrap());
        let m1 = mutate_seed(&s, 1).unwrap();
        assert_eq!(m1.vars[1], cc_simple(&fq, 1, &t).unwrap());
    }

    #[test]
    fn normal_ordering() {
        let fq = kronecker();
        let t = fq.torus(Mode::Formal);
        let s = QuantumSeed::initial(&fq, &t);
        let m = frame_monomial(&s, &[1, 1, 0, 1]).unwrap();
        assert_eq!(m, ToricElement::x(&t, vec![1, 1, 0, 1]));
        assert!(frame_monomial(&s, &[-1, 0, 0, 0]).is_ok());
        let m0 = mutate_seed(&s, 0).unwrap();
        assert!(frame_monomial(&m0, &[-1, 0, 0, 0]).is_err());
        assert!(frame_monomial(&m0, &[1, -1, 0, 0]).is_ok());
    }
}
