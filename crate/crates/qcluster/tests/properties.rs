use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use qcluster::catalog::*;
use qcluster::ccmap::{cc_map, cc_map_family, ClusterObject};
use qcluster::finrep::field::Mat;
use qcluster::finrep::hom::{ext_dim, hom_dim};
use qcluster::finrep::iso::iso_test;
use qcluster::finrep::quiver::Quiver;
use qcluster::finrep::registry::Registry;
use qcluster::finrep::rep::QuiverRep;
use qcluster::finrep::family::RepFamily;
use qcluster::finrep::subspace::{for_each_subspace, grassmannian_profile};
use qcluster::finrep::tau::tau;
use qcluster::quiver::{check_compatible, standard_framing, verify_bilinear_identities};
use qcluster::scalar::{qbinom, qpow, specialize, FormalScalar, Mode};
use qcluster::seed::{mutate_seed, QuantumSeed};
use qcluster::torus::{normal_order, ToricElement};

fn formal() -> impl Strategy<Value = FormalScalar> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..4)
        .prop_map(|t| FormalScalar::from_terms(t.into_iter().map(|(k, c)| (k, BigInt::from(c)))))
}

proptest! {
    #[test]
    fn specialization_is_a_ring_map(x in formal(), y in formal(), p in prop::sample::select(vec![3u32, 5, 7])) {
        prop_assert_eq!(specialize(&(&x * &y), p), &specialize(&x, p) * &specialize(&y, p));
        prop_assert_eq!(specialize(&(&x + &y), p), &specialize(&x, p) + &specialize(&y, p));
    }
}

#[test]
fn gaussian_binomials() {
    for d in 1..=3u32 {
        for n in 0..=8u32 {
            for k in 0..=n {
                let b = qbinom(n, k, d).unwrap();
                assert_eq!(b, qbinom(n, n - k, d).unwrap());
                assert_eq!(b, b.bar());
                if n > 0 && k > 0 && k < n {
                    let (d, n1, k1) = (d as i64, n as i64, k as i64);
                    let rhs = &(&qpow(d * k1) * &qbinom(n - 1, k, d as u32).unwrap())
                        + &(&qpow(-d * (n1 - k1)) * &qbinom(n - 1, k - 1, d as u32).unwrap());
                    assert_eq!(b, rhs, "n={n} k={k} d={d}");
                }
            }
        }
    }
}

fn exps(m: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, m)
}

fn element(fq: &Framed) -> impl Strategy<Value = ToricElement> {
    let t = fq.torus(Mode::Formal);
    prop::collection::vec((exps(fq.m()), -4i64..=4, -3i64..=3), 1..4).prop_map(move |terms| {
        let mut x = ToricElement::zero(&t);
        for (e, k, c) in terms {
            let c = qcluster::scalar::QScalar::Formal(qcluster::scalar::FormalScalar::monomial(k, BigInt::from(c)));
            x.add_term(e, &c);
        }
        x
    })
}

proptest! {
    #[test]
    fn torus_monomials(a in exps(4), b in exps(4), c in exps(4)) {
        let fq = kronecker();
        let t = fq.torus(Mode::Formal);
        let (xa, xb, xc) = (ToricElement::x(&t, a.clone()), ToricElement::x(&t, b.clone()), ToricElement::x(&t, c));
        prop_assert_eq!(&(&xa * &xb) * &xc, &xa * &(&xb * &xc));
        prop_assert_eq!(&xa * &xb, (&xb * &xa).scale_qpow(2 * fq.pair.lambda.eval(&a, &b)));
        prop_assert!(normal_order(&t, &a).unwrap().is_bar_invariant().unwrap());
    }

    #[test]
    fn bar_reverses_products(x in element(&kronecker()), y in element(&kronecker())) {
        prop_assert_eq!((&x * &y).bar().unwrap(), &y.bar().unwrap() * &x.bar().unwrap());
    }
}

/// Acyclic quivers on up to four vertices with arrows going up in index.
fn acyclic() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=4).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (s + 1..n).map(move |t| (s, t))).collect();
        let len = pairs.len();
        prop::collection::vec(0usize..=2, len).prop_map(move |mult| {
            let arrows = pairs.iter().zip(&mult).flat_map(|(&a, &k)| std::iter::repeat_n(a, k)).collect();
            (n, arrows)
        })
    })
}

proptest! {
    #[test]
    fn standard_framings_are_compatible((n, arrows) in acyclic(), seed in any::<u64>()) {
        let ice = standard_framing(n, &arrows).unwrap();
        let fq = Framed::from_ice("random", Kind::Other, ice).unwrap();
        prop_assert_eq!(check_compatible(&fq.pair.lambda, &fq.pair.btilde).unwrap(), vec![1; n]);
        prop_assert_eq!(&fq.ex.btilde, &fq.ex.rtilde_tr.sub(&fq.ex.rtilde));
        let mut s = seed;
        let mut v = || -> Vec<i64> {
            (0..n).map(|_| { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); ((s >> 33) % 7) as i64 - 3 }).collect()
        };
        let (m, e, f, l) = (v(), v(), v(), v());
        let r = verify_bilinear_identities(&fq.pair.lambda, &fq.ex, &m, &e, &f, &l);
        prop_assert!(r.passed(), "{:?}", r.failures);
    }
}

fn module_quivers() -> Vec<Arc<Quiver>> {
    vec![kronecker().principal, a3().principal, atilde(2, 1).unwrap().principal]
}

/// Random representations over `F_3` of dimension at most 2 at each vertex.
fn rep() -> impl Strategy<Value = QuiverRep> {
    (0..3usize).prop_flat_map(rep_on)
}

fn rep_on(qi: usize) -> impl Strategy<Value = QuiverRep> {
    prop::collection::vec(0usize..=2, 3).prop_flat_map(move |dims| {
        let q = module_quivers()[qi].clone();
        let dims: Vec<usize> = dims[..q.vertices()].to_vec();
        let sizes: Vec<usize> = q.arrows().iter().map(|&(s, t)| dims[s] * dims[t]).collect();
        let entries = sizes.iter().map(|&k| prop::collection::vec(0u32..3, k)).collect::<Vec<_>>();
        entries.prop_map(move |data| {
            let mats = q.arrows().iter().zip(data).map(|(&(s, t), d)| Mat::from_vec(dims[t], dims[s], d)).collect();
            QuiverRep::new(q.clone(), 3, dims.clone(), mats).unwrap()
        })
    })
}

fn pair() -> impl Strategy<Value = (QuiverRep, QuiverRep)> {
    (0..3usize).prop_flat_map(|qi| (rep_on(qi), rep_on(qi)))
}

/// Counts subrepresentations by running over all tuples of subspaces.
fn brute_submodules(m: &QuiverRep) -> u128 {
    fn go(m: &QuiverRep, v: usize, chosen: &mut Vec<Mat>, count: &mut u128) {
        if v == m.dims().len() {
            if m.is_subrep(chosen) {
                *count += 1;
            }
            return;
        }
        let n = m.dims()[v];
        for k in 0..=n {
            for_each_subspace(n, k, m.field(), &mut |u| {
                chosen.push(u.clone());
                go(m, v + 1, chosen, count);
                chosen.pop();
                false
            });
        }
    }
    let mut count = 0;
    go(m, 0, &mut Vec::new(), &mut count);
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_form_matches_hom_minus_ext((m, n) in pair()) {
        let lhs = hom_dim(&m, &n).unwrap() as i64 - ext_dim(&m, &n).unwrap() as i64;
        prop_assert_eq!(lhs, m.quiver().euler(&m.dim_vec(), &n.dim_vec()));
    }

    #[test]
    fn grassmannians_partition_submodules(m in rep()) {
        let total: u128 = grassmannian_profile(&m).unwrap().iter().map(|(_, c)| c).sum();
        prop_assert_eq!(total, brute_submodules(&m));
    }

    #[test]
    fn middle_terms_sum_to_extension_count((m, n) in pair()) {
        let s: Vec<usize> = m.dims().iter().zip(n.dims()).map(|(a, b)| a + b).collect();
        prop_assume!(s.iter().sum::<usize>() <= 4 && s.iter().all(|&x| x <= 2));
        let mut reg = Registry::new(m.quiver(), 3);
        let sum: u128 = reg.middle_terms(&m, &n).unwrap().iter().map(|(_, e)| e).sum();
        prop_assert_eq!(sum, 3u128.pow(ext_dim(&m, &n).unwrap() as u32));
    }

    #[test]
    fn character_exponents_lie_in_the_span(m in rep_on(0)) {
        let fq = kronecker();
        let x = cc_map(&fq, &ClusterObject::module(&fq, m.clone()), &fq.torus(Mode::Specialized(3))).unwrap();
        let md = m.dim_vec();
        let base = fq.ex.i_minus_r(&md);
        for (exp, _) in x.terms() {
            let found = Registry::dims_below(m.dims()).into_iter().any(|e| {
                let e: Vec<i64> = e.iter().map(|&v| v as i64).collect();
                let be = fq.ex.b_apply(&e);
                be.iter().zip(&base).zip(exp).all(|((b, r), x)| b - r == *x)
            });
            prop_assert!(found, "exponent {:?}", exp);
        }
    }
}

#[test]
fn tubes_are_periodic() {
    let p = 3;
    let mut tubes = Vec::new();
    for (r, s) in [(2, 1), (1, 2), (2, 2)] {
        let fq = atilde(r, s).unwrap();
        for lower in [false, true] {
            if let Ok(t) = tube_a(&fq, p, lower) {
                tubes.push(t);
            }
        }
    }
    let d = dtilde(4).unwrap();
    tubes.push(tube_d(&d, p).unwrap());
    for tube in &tubes {
        for i in 0..tube.rank() {
            let s = tube.simple(i);
            let mut x = s.clone();
            for _ in 0..tube.rank() {
                x = tau(&x).unwrap();
            }
            assert!(iso_test(&x, s).unwrap());
        }
    }
}

#[test]
fn degree_one_points_share_grassmannian_counts() {
    for name in ["kronecker", "atilde21", "atilde12", "atilde22", "dtilde4"] {
        let fq = by_name(name).unwrap();
        for p in [3, 5] {
            let pts = degree_one_points(&fq, p).unwrap();
            let first = grassmannian_profile(&e_lambda(&fq, p, pts[0]).unwrap()).unwrap();
            for pt in &pts[1..] {
                assert_eq!(grassmannian_profile(&e_lambda(&fq, p, *pt).unwrap()).unwrap(), first, "{name} p={p} {pt:?}");
            }
        }
    }
}

#[test]
fn specialization_commutes_with_characters() {
    let mut cases: Vec<(Framed, RepFamily, i64)> = Vec::new();
    for name in ["kronecker", "atilde21", "a3"] {
        let fq = by_name(name).unwrap();
        if fq.kind != Kind::Finite {
            let lambda = if fq.kind == Kind::Kronecker { 0 } else { -1 };
            cases.push((fq.clone(), e_family(&fq).unwrap(), lambda));
        }
        for v in 0..fq.n() {
            for m in [QuiverRep::projective(&fq.principal, 3, v), QuiverRep::injective(&fq.principal, 3, v)] {
                let mats = m.mats().iter().map(|x| x.data().iter().map(|&c| c as i64).collect()).collect();
                cases.push((fq.clone(), RepFamily::from_rep_ints(fq.principal.clone(), m.dims().to_vec(), mats).unwrap(), 0));
            }
        }
    }
    for (fq, fam, lambda) in &cases {
        let shifts = vec![0; fq.m()];
        let formal = cc_map_family(fq, fam, *lambda, &shifts, &fq.torus(Mode::Formal)).unwrap();
        for p in [3, 5] {
            let t = fq.torus(Mode::Specialized(p));
            assert_eq!(formal.specialize(&t).unwrap(), cc_map_family(fq, fam, *lambda, &shifts, &t).unwrap(), "{}", fq.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mutation_sequences(qi in 0..3usize, seq in prop::collection::vec(0usize..3, 1..=8)) {
        let fq = [a2(), a3(), kronecker()][qi].clone();
        let t = fq.torus(Mode::Formal);
        let mut s = QuantumSeed::initial(&fq, &t);
        let seq: Vec<usize> = seq.into_iter().map(|k| k % fq.n()).collect();
        for &k in &seq {
            s = mutate_seed(&s, k).unwrap();
            prop_assert_eq!(s.check().unwrap(), vec![1; fq.n()]);
            prop_assert!(s.vars[k].is_bar_invariant().unwrap());
        }
        let last = *seq.last().unwrap();
        let back = mutate_seed(&mutate_seed(&s, last).unwrap(), last).unwrap();
        prop_assert_eq!(back.canonical(), s.canonical());
    }
}
