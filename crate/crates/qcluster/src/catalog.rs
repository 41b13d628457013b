//! Named framed quivers and the modules attached to them.
//!
//! Modules are representations of the opposite quiver: an ice arrow
//! `s -> t` becomes a module arrow `t -> s`.  Frozen vertices are then
//! sinks of the full module quiver.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finrep::family::{Entry, EntryMat, RepFamily};
use crate::finrep::field::{Fp, Mat};
use crate::finrep::hom::{ext_basis, extension};
use crate::finrep::iso::{iso_test, is_indecomposable};
use crate::finrep::quiver::Quiver;
use crate::finrep::rep::QuiverRep;
use crate::finrep::tau::{tau, tau_inverse};
use crate::intlin::IMat;
use crate::quiver::{build_matrices, solve_lambda, standard_framing, CompatiblePair, ExchangeData, IceQuiver};
use crate::scalar::Mode;
use crate::torus::Torus;

/// Representation type of the principal part.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Finite,
    Kronecker,
    /// Two paths of lengths `r` and `s` between a source and a sink.
    Atilde(usize, usize),
    Dtilde(usize),
    Other,
}

/// An ice quiver with its matrices, a compatible form and its module quivers.
#[derive(Clone, Debug)]
pub struct Framed {
    pub name: String,
    pub kind: Kind,
    pub ice: IceQuiver,
    pub ex: ExchangeData,
    pub pair: CompatiblePair,
    /// Principal module quiver on `0..n`.
    pub principal: Arc<Quiver>,
    /// Full module quiver on `0..m`.
    pub full: Arc<Quiver>,
    principal_arrows: Vec<usize>,
    pub grading: Option<Vec<i64>>,
}

impl Framed {
    pub fn from_ice(name: &str, kind: Kind, ice: IceQuiver) -> Result<Self> {
        let ex = build_matrices(&ice);
        let lambda = solve_lambda(&ex.btilde)?;
        let pair = CompatiblePair::new(lambda, ex.btilde.clone())?;
        Self::with_pair(name, kind, ice, pair)
    }

    pub fn with_pair(name: &str, kind: Kind, ice: IceQuiver, pair: CompatiblePair) -> Result<Self> {
        let ex = build_matrices(&ice);
        if pair.btilde != ex.btilde {
            return Err(Error::Invalid("form was computed for another exchange matrix".into()));
        }
        let n = ice.n();
        let full_arrows: Vec<(usize, usize)> = ice.arrows().iter().map(|&(s, t)| (t, s)).collect();
        let principal_arrows: Vec<usize> =
            (0..full_arrows.len()).filter(|&a| full_arrows[a].0 < n && full_arrows[a].1 < n).collect();
        let principal = Arc::new(Quiver::new(n, principal_arrows.iter().map(|&a| full_arrows[a]).collect())?);
        let full = Arc::new(Quiver::new(ice.m(), full_arrows)?);
        let grading = find_grading(&ex.b);
        Ok(Self { name: name.to_string(), kind, ice, ex, pair, principal, full, principal_arrows, grading })
    }

    pub fn n(&self) -> usize {
        self.ice.n()
    }

    pub fn m(&self) -> usize {
        self.ice.m()
    }

    pub fn torus(&self, mode: Mode) -> Arc<Torus> {
        Torus::new(self.pair.lambda.clone(), mode)
    }

    /// A principal module viewed over the full quiver.
    pub fn embed(&self, rep: &QuiverRep) -> QuiverRep {
        let vmap: Vec<usize> = (0..self.n()).collect();
        rep.embed(&self.full, &vmap, &self.principal_arrows)
    }

    /// A full-quiver module supported on principal vertices, as a principal module.
    pub fn restrict(&self, rep: &QuiverRep) -> Result<QuiverRep> {
        let vmap: Vec<usize> = (0..self.n()).collect();
        rep.restrict(&self.principal, &vmap, &self.principal_arrows)
    }

    pub fn is_principal_supported(&self, rep: &QuiverRep) -> bool {
        rep.dims()[self.n()..].iter().all(|&d| d == 0)
    }

    /// Minimal imaginary root, for tame types.
    pub fn delta(&self) -> Result<Vec<usize>> {
        match self.kind {
            Kind::Kronecker => Ok(vec![1, 1]),
            Kind::Atilde(r, s) => Ok(vec![1; r + s]),
            Kind::Dtilde(r) => {
                let mut d = vec![2; r + 1];
                for i in [0, 1, r - 1, r] {
                    d[i] = 1;
                }
                Ok(d)
            }
            _ => Err(Error::Unsupported(format!("{} is not of tame type", self.name))),
        }
    }

    /// Builds a principal module from one matrix per ice arrow between
    /// principal vertices, in the order the arrows were listed.
    pub fn module_from(&self, p: u32, dims: Vec<usize>, mats: Vec<Mat>) -> Result<QuiverRep> {
        QuiverRep::new(self.principal.clone(), p, dims, mats)
    }
}

/// The first `e` in `[-k, k]^n`, `k = 1, 2`, with `e(B a_i) < 0` for every column.
pub fn find_grading(b: &IMat) -> Option<Vec<i64>> {
    let n = b.cols();
    for k in 1..=2i64 {
        let mut e = vec![-k; n];
        loop {
            if is_graded(b, &e) {
                return Some(e);
            }
            match (0..n).rev().find(|&i| e[i] < k) {
                Some(i) => {
                    e[i] += 1;
                    for x in &mut e[i + 1..] {
                        *x = -k;
                    }
                }
                None => break,
            }
        }
    }
    None
}

pub fn is_graded(b: &IMat, eps: &[i64]) -> bool {
    (0..b.cols()).all(|i| (0..b.rows()).map(|j| eps[j] * b.get(j, i)).sum::<i64>() < 0)
}

fn framed(name: &str, kind: Kind, n: usize, arrows: &[(usize, usize)]) -> Framed {
    let ice = standard_framing(n, arrows).expect("catalog quivers are acyclic");
    Framed::from_ice(name, kind, ice).expect("catalog quivers admit a compatible form")
}

/// `1 => 2` with the standard framing.
pub fn kronecker() -> Framed {
    framed("kronecker", Kind::Kronecker, 2, &[(0, 1), (0, 1)])
}

pub fn a2() -> Framed {
    framed("a2", Kind::Finite, 2, &[(0, 1)])
}

/// `1 -> 2` with a single frozen vertex `3 -> 1`.
pub fn a2_partial() -> Framed {
    let ice = IceQuiver::new(3, 2, vec![(0, 1), (2, 0)]).expect("acyclic");
    Framed::from_ice("a2p", Kind::Finite, ice).expect("full rank")
}

/// Linear orientation `1 -> 2 -> 3`.
pub fn a3() -> Framed {
    framed("a3", Kind::Finite, 3, &[(0, 1), (1, 2)])
}

/// `1 -> 2 <- 3`, which admits a grading.
pub fn a3_graded() -> Framed {
    framed("a3g", Kind::Finite, 3, &[(0, 1), (2, 1)])
}

/// Paths `1 -> 2 -> ... -> r+1` and `1 -> r+s -> ... -> r+2 -> r+1`.
pub fn atilde_arrows(r: usize, s: usize) -> Vec<(usize, usize)> {
    let mut arrows: Vec<(usize, usize)> = (0..r).map(|v| (v, v + 1)).collect();
    let mut lower = vec![0];
    lower.extend((r + 1..r + s).rev());
    lower.push(r);
    for w in lower.windows(2) {
        arrows.push((w[0], w[1]));
    }
    arrows
}

pub fn atilde(r: usize, s: usize) -> Result<Framed> {
    if r == 0 || s == 0 || r + s < 3 {
        return Err(Error::Invalid("need two paths with at least three arrows in total".into()));
    }
    Ok(framed(&format!("atilde{r}{s}"), Kind::Atilde(r, s), r + s, &atilde_arrows(r, s)))
}

/// `r -> r-1`, `r+1 -> r-1`, `r-1 -> ... -> 3`, `3 -> 1`, `3 -> 2` (1-based).
pub fn dtilde_arrows(r: usize) -> Vec<(usize, usize)> {
    let mut arrows = vec![(r - 1, r - 2), (r, r - 2)];
    for j in (2..r - 2).rev() {
        arrows.push((j + 1, j));
    }
    arrows.push((2, 0));
    arrows.push((2, 1));
    arrows
}

pub fn dtilde(r: usize) -> Result<Framed> {
    if r < 4 {
        return Err(Error::Invalid("D~_r needs r >= 4".into()));
    }
    Ok(framed(&format!("dtilde{r}"), Kind::Dtilde(r), r + 1, &dtilde_arrows(r)))
}

pub fn by_name(name: &str) -> Result<Framed> {
    match name {
        "kronecker" => Ok(kronecker()),
        "a2" => Ok(a2()),
        "a2p" => Ok(a2_partial()),
        "a3" => Ok(a3()),
        "a3g" => Ok(a3_graded()),
        "atilde21" => atilde(2, 1),
        "atilde12" => atilde(1, 2),
        "atilde22" => atilde(2, 2),
        "dtilde4" => dtilde(4),
        _ => Err(Error::Invalid(format!("unknown quiver '{name}'"))),
    }
}

pub const NAMES: [&str; 9] = ["kronecker", "a2", "a2p", "a3", "a3g", "atilde21", "atilde12", "atilde22", "dtilde4"];

/// A point `[a : b]` of the projective line, normalized so the last
/// nonzero coordinate is 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Point {
    pub a: u32,
    pub b: u32,
}

impl Point {
    pub fn finite(lambda: u32) -> Self {
        Self { a: lambda, b: 1 }
    }

    pub fn infinity() -> Self {
        Self { a: 1, b: 0 }
    }

    pub fn all(p: u32) -> Vec<Point> {
        let mut out: Vec<Point> = (0..p).map(Point::finite).collect();
        out.push(Point::infinity());
        out
    }
}

fn scalar(x: u32) -> Mat {
    Mat::from_vec(1, 1, vec![x])
}

/// Matrix of the module arrow reversing ice arrow `(s, t)`: `dims[s] x dims[t]`.
fn ice_arrow_maps<F: FnMut(usize, usize, usize) -> Mat>(fq: &Framed, mut f: F) -> Vec<Mat> {
    fq.ice
        .principal_arrows()
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| f(k, s, t))
        .collect()
}

/// `R(n)` at a point of the projective line: arrows `(I, J_n(l))`, or
/// `(J_n(0), I)` at infinity.
pub fn kron_regular(fq: &Framed, p: u32, pt: Point, n: usize) -> Result<QuiverRep> {
    if fq.kind != Kind::Kronecker {
        return Err(Error::Invalid("regular modules R(n) live on the Kronecker quiver".into()));
    }
    if n == 0 {
        return Ok(QuiverRep::zero(&fq.principal, p));
    }
    let jordan = |l: u32| {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, l);
            if i + 1 < n {
                m.set(i, i + 1, 1);
            }
        }
        m
    };
    let (x, y) = if pt.b == 0 { (jordan(0), Mat::identity(n)) } else { (Mat::identity(n), jordan(pt.a)) };
    fq.module_from(p, vec![n, n], vec![x, y])
}

/// The family `E(L)`: dimension `delta`, with `L` on the parameter arrow.
pub fn e_family(fq: &Framed) -> Result<RepFamily> {
    let dims = fq.delta()?;
    let mats = match fq.kind {
        Kind::Kronecker => vec![EntryMat::from_ints(1, 1, &[1]), EntryMat { rows: 1, cols: 1, data: vec![Entry::lam()] }],
        Kind::Atilde(..) => fq
            .ice
            .principal_arrows()
            .iter()
            .map(|&a| {
                if a == (0, 1) {
                    EntryMat { rows: 1, cols: 1, data: vec![Entry::lam()] }
                } else {
                    EntryMat::from_ints(1, 1, &[1])
                }
            })
            .collect(),
        Kind::Dtilde(r) => fq
            .ice
            .principal_arrows()
            .iter()
            .map(|&(s, t)| match (s, t) {
                (2, 0) => EntryMat::from_ints(2, 1, &[1, 0]),
                (2, 1) => EntryMat::from_ints(2, 1, &[0, 1]),
                (x, _) if x == r - 1 => EntryMat::from_ints(1, 2, &[1, 1]),
                (x, _) if x == r => EntryMat { rows: 1, cols: 2, data: vec![Entry::int(1), Entry::lam()] },
                _ => EntryMat::identity(2),
            })
            .collect(),
        _ => return Err(Error::Unsupported(format!("no E(L) family on {}", fq.name))),
    };
    RepFamily::new(fq.principal.clone(), dims, mats)
}

/// `E` at a point `[a : b]`: the parameter arrow carries `a` and its
/// partner carries `b` (for D~, the arrow reads `(b a)`).
pub fn e_lambda(fq: &Framed, p: u32, pt: Point) -> Result<QuiverRep> {
    let fp = Fp::new(p);
    let (a, b) = (fp.reduce(pt.a as i64), fp.reduce(pt.b as i64));
    let dims = fq.delta()?;
    let mats = match fq.kind {
        Kind::Kronecker => vec![scalar(b), scalar(a)],
        Kind::Atilde(r, s) => {
            let lower_first = if s == 1 { r } else { r + s - 1 };
            ice_arrow_maps(fq, |_, x, y| match (x, y) {
                (0, 1) => scalar(a),
                (0, w) if w == lower_first => scalar(b),
                _ => scalar(1),
            })
        }
        Kind::Dtilde(r) => ice_arrow_maps(fq, |_, x, y| match (x, y) {
            (2, 0) => Mat::from_vec(2, 1, vec![1, 0]),
            (2, 1) => Mat::from_vec(2, 1, vec![0, 1]),
            (x, _) if x == r - 1 => Mat::from_vec(1, 2, vec![1, 1]),
            (x, _) if x == r => Mat::from_vec(1, 2, vec![b, a]),
            _ => Mat::identity(2),
        }),
        _ => return Err(Error::Unsupported(format!("no E(L) family on {}", fq.name))),
    };
    fq.module_from(p, dims, mats)
}

/// Points where `E` is an indecomposable module fixed by the translate.
pub fn degree_one_points(fq: &Framed, p: u32) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for pt in Point::all(p) {
        let e = e_lambda(fq, p, pt)?;
        if is_indecomposable(&e)? && iso_test(&tau(&e)?, &e)? {
            out.push(pt);
        }
    }
    Ok(out)
}

/// A non-homogeneous tube given by its first regular simple; the others are
/// obtained by the inverse translate.
#[derive(Clone, Debug)]
pub struct Tube {
    pub simples: Vec<QuiverRep>,
}

impl Tube {
    pub fn from_simple(first: QuiverRep) -> Result<Self> {
        let mut simples = vec![first.clone()];
        let mut cur = tau_inverse(&first)?;
        while !iso_test(&cur, &first)? {
            if simples.len() > 16 {
                return Err(Error::Invalid("module is not tau-periodic".into()));
            }
            simples.push(cur.clone());
            cur = tau_inverse(&cur)?;
        }
        Ok(Self { simples })
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    /// `E_t` with `t` 1-based and read cyclically.
    pub fn simple(&self, t: usize) -> &QuiverRep {
        let r = self.rank();
        &self.simples[(t + r - 1) % r]
    }

    /// `E_t[len]`: regular socle `E_t`, regular length `len`.
    pub fn module(&self, t: usize, len: usize) -> Result<QuiverRep> {
        let first = self.simple(t);
        if len == 0 {
            return Ok(QuiverRep::zero(first.quiver(), first.p()));
        }
        let mut cur = first.clone();
        for k in 2..=len {
            let top = self.simple(t + k - 1);
            let basis = ext_basis(top, &cur)?;
            if basis.len() != 1 {
                return Err(Error::Internal(format!("Ext(E_top, E[k-1]) has dimension {}", basis.len())));
            }
            cur = extension(top, &cur, &basis[0]).0;
        }
        Ok(cur)
    }
}

/// The tube of `A~_{r,s}` through the lower path (`lower`) or the upper path.
pub fn tube_a(fq: &Framed, p: u32, lower: bool) -> Result<Tube> {
    let Kind::Atilde(r, s) = fq.kind else {
        return Err(Error::Invalid(format!("{} is not of type A~", fq.name)));
    };
    let v = if lower {
        if s < 2 {
            return Err(Error::Invalid("the lower path has no interior vertex".into()));
        }
        r + 1
    } else {
        if r < 2 {
            return Err(Error::Invalid("the upper path has no interior vertex".into()));
        }
        1
    };
    Tube::from_simple(QuiverRep::simple(&fq.principal, p, v))
}

/// The tube of `D~_r` through the simple at vertex 3.
pub fn tube_d(fq: &Framed, p: u32) -> Result<Tube> {
    let Kind::Dtilde(_) = fq.kind else {
        return Err(Error::Invalid(format!("{} is not of type D~", fq.name)));
    };
    Tube::from_simple(QuiverRep::simple(&fq.principal, p, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::euler_form;

    #[test]
    fn kronecker_matrices() {
        let k = kronecker();
        assert_eq!(k.ex.btilde.to_rows(), vec![vec![0, 2], vec![-2, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(k.pair.d, vec![1, 1]);
        assert_eq!(k.principal.arrows(), &[(1, 0), (1, 0)]);
        assert_eq!(k.grading, Some(vec![-1, 1]));
        assert_eq!(euler_form(&k.ex.r, &[0, 1], &[1, 0]), -2);
    }

    #[test]
    fn gradings() {
        assert!(a2().grading.is_some());
        assert!(a3().grading.is_none());
        assert_eq!(a3_graded().grading, Some(vec![-1, 1, -1]));
        assert!(atilde(2, 1).unwrap().grading.is_some());
    }

    #[test]
    fn shapes() {
        assert_eq!(atilde_arrows(2, 1), vec![(0, 1), (1, 2), (0, 2)]);
        assert_eq!(atilde_arrows(1, 2), vec![(0, 1), (0, 2), (2, 1)]);
        assert_eq!(dtilde_arrows(4), vec![(3, 2), (4, 2), (2, 0), (2, 1)]);
        assert_eq!(dtilde(4).unwrap().delta().unwrap(), vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn homogeneous_points() {
        let k = kronecker();
        assert_eq!(degree_one_points(&k, 3).unwrap().len(), 4);
        let a = atilde(2, 1).unwrap();
        assert_eq!(degree_one_points(&a, 3).unwrap().len(), 3);
        let a = atilde(2, 2).unwrap();
        assert_eq!(degree_one_points(&a, 3).unwrap().len(), 2);
        let d = dtilde(4).unwrap();
        assert_eq!(degree_one_points(&d, 5).unwrap().len(), 3);
    }

    #[test]
    fn tubes() {
        let a = atilde(2, 2).unwrap();
        for lower in [false, true] {
            let t = tube_a(&a, 3, lower).unwrap();
            assert_eq!(t.rank(), 2);
            assert_eq!(t.module(1, 2).unwrap().dims(), &[1, 1, 1, 1]);
            assert!(is_indecomposable(&t.module(1, 2).unwrap()).unwrap());
        }
        let d = dtilde(4).unwrap();
        let t = tube_d(&d, 3).unwrap();
        assert_eq!(t.rank(), 2);
        assert_eq!(t.module(1, 2).unwrap().dims(), &[1, 1, 2, 1, 1]);
    }

    #[test]
    fn family_matches_points() {
        for fq in [kronecker(), atilde(2, 1).unwrap(), dtilde(4).unwrap()] {
            let fam = e_family(&fq).unwrap();
            for l in 0..5u32 {
                let a = fam.instantiate(5, Some(l)).unwrap();
                let b = e_lambda(&fq, 5, Point::finite(l)).unwrap();
                assert!(iso_test(&a, &b).unwrap(), "{}", fq.name);
            }
        }
    }
}
