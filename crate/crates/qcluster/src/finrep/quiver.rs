use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quiver::topological_order;

/// A finite acyclic quiver on which representations live.
///
/// An arrow `s -> t` carries a `dim_t x dim_s` matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    order: Vec<usize>,
}

/// A path as the list of its arrows, read from its start.
pub type Path = Vec<usize>;

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        for &(s, t) in &arrows {
            if s >= n || t >= n {
                return Err(Error::Invalid("arrow endpoint out of range".into()));
            }
        }
        let topo = topological_order(n, &arrows).ok_or(Error::Cyclic)?;
        let is_sink = |v: usize| arrows.iter().all(|&(s, _)| s != v);
        let mut order: Vec<usize> = topo.iter().copied().filter(|&v| !is_sink(v)).collect();
        order.extend(topo.iter().copied().filter(|&v| is_sink(v)));
        Ok(Self { n, arrows, order })
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Topological order with all sinks at the end.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.1 == v).map(|(i, _)| i)
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.0 == v).map(|(i, _)| i)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.outgoing(v).next().is_none()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.incoming(v).next().is_none()
    }

    pub fn opposite(&self) -> Self {
        Self::new(self.n, self.arrows.iter().map(|&(s, t)| (t, s)).collect())
            .expect("opposite of an acyclic quiver")
    }

    /// Reverses the arrows at `v`, keeping arrow indices.
    pub fn reflect(&self, v: usize) -> Self {
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == v || t == v { (t, s) } else { (s, t) })
            .collect();
        Self::new(self.n, arrows).expect("reflection preserves acyclicity")
    }

    /// All paths from `a` to `b`, including the trivial one when `a == b`.
    pub fn paths(&self, a: usize, b: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Path)> = vec![(a, Vec::new())];
        while let Some((v, path)) = stack.pop() {
            if v == b {
                out.push(path.clone());
            }
            for (idx, &(s, t)) in self.arrows.iter().enumerate() {
                if s == v {
                    let mut next = path.clone();
                    next.push(idx);
                    stack.push((t, next));
                }
            }
        }
        out.sort();
        out
    }

    /// Number of paths from `a` to each vertex.
    pub fn path_counts_from(&self, a: usize) -> Vec<usize> {
        (0..self.n).map(|b| self.paths(a, b).len()).collect()
    }

    /// `<a, b> = sum a_i b_i - sum_{s->t} a_s b_t`.
    pub fn euler(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        for &(u, v) in &self.arrows {
            s -= a[u] * b[v];
        }
        s
    }

    /// Cartan matrix column `i`: dimension vector of the projective at `i`.
    pub fn projective_dims(&self, i: usize) -> Vec<i64> {
        self.path_counts_from(i).into_iter().map(|c| c as i64).collect()
    }

    pub fn injective_dims(&self, i: usize) -> Vec<i64> {
        (0..self.n).map(|a| self.paths(a, i).len() as i64).collect()
    }

    /// Coxeter transform: the dimension vector of the translate of a
    /// non-projective indecomposable.
    pub fn coxeter(&self, d: &[i64]) -> Vec<i64> {
        // write d = sum y_i dim P_i, then replace each P_i by -I_i
        let n = self.n;
        let proj: Vec<Vec<i64>> = (0..n).map(|i| self.projective_dims(i)).collect();
        let order = topological_order(n, &self.arrows).expect("acyclic");
        let mut y = vec![0i64; n];
        let mut rem = d.to_vec();
        for &i in &order {
            let c = rem[i];
            y[i] = c;
            for (v, r) in rem.iter_mut().enumerate() {
                *r -= c * proj[i][v];
            }
        }
        let inj: Vec<Vec<i64>> = (0..n).map(|i| self.injective_dims(i)).collect();
        let mut out = vec![0i64; n];
        for i in 0..n {
            for v in 0..n {
                out[v] -= y[i] * inj[i][v];
            }
        }
        out
    }
}
