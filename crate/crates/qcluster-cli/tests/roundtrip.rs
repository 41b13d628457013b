use proptest::prelude::*;

use qcluster::catalog::{atilde, kronecker, Framed};
use qcluster::finrep::field::Mat;
use qcluster::finrep::rep::QuiverRep;
use qcluster::quiver::IceQuiver;
use qcluster_cli::io::{parse_quiver, parse_rep, print_quiver, print_rep, RepFile};

/// Ice quivers on up to five vertices whose arrows respect a shuffled order.
fn ice() -> impl Strategy<Value = IceQuiver> {
    (1usize..=5).prop_flat_map(|m| {
        (1..=m, Just(m), Just((0..m).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec((0..m, 0..m), 0..8)).prop_map(
            |(n, m, order, raw)| {
                let pos = |v: usize| order.iter().position(|&x| x == v).unwrap();
                let arrows = raw
                    .into_iter()
                    .filter(|&(s, t)| s != t && (s < n || t < n))
                    .map(|(s, t)| if pos(s) < pos(t) { (s, t) } else { (t, s) })
                    .collect();
                IceQuiver::new(m, n, arrows).unwrap()
            },
        )
    })
}

fn rep_on(fq: Framed) -> impl Strategy<Value = QuiverRep> {
    let q = fq.principal.clone();
    prop::collection::vec(0usize..=3, q.vertices()).prop_flat_map(move |dims| {
        let q = q.clone();
        let sizes: Vec<usize> = q.arrows().iter().map(|&(s, t)| dims[s] * dims[t]).collect();
        sizes.into_iter().map(|k| prop::collection::vec(0u32..5, k)).collect::<Vec<_>>().prop_map(move |data| {
            let mats = q.arrows().iter().zip(data).map(|(&(s, t), d)| Mat::from_vec(dims[t], dims[s], d)).collect();
            QuiverRep::new(q.clone(), 5, dims.clone(), mats).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn quivers_survive_printing(q in ice()) {
        prop_assert_eq!(parse_quiver(&print_quiver(&q)).unwrap(), q);
    }

    #[test]
    fn reps_survive_printing(m in prop_oneof![rep_on(kronecker()), rep_on(atilde(2, 1).unwrap())]) {
        let file = RepFile::from_rep(&m, "q.quiver");
        let text = print_rep(&file);
        let parsed = parse_rep(&text).unwrap();
        prop_assert_eq!(&parsed, &file);
        let back = parsed.family(m.quiver()).unwrap().at_integer(5, 0).unwrap();
        prop_assert_eq!(back, m);
    }
}
