mod common;

use common::id;
use cwkit::graph::VertexId;
use cwkit::kexpr::{eval, mwis, parse, serialize, width, KExpr};
use cwkit::oracle::brute_mwis;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use proptest::prelude::*;

/// Random expression over `x0..x{n-1}` with labels `1..=labels`.
fn random_expr(n: usize, labels: u32, seed: u64) -> KExpr {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<KExpr> = (0..n).map(|i| KExpr::create(r.gen_range(1..=labels), &id(&format!("x{i}")))).collect();
    while pool.len() > 1 || r.gen_bool(0.3) {
        let i = r.gen_range(0..pool.len());
        let e = pool.swap_remove(i);
        let (a, b) = (r.gen_range(1..=labels), r.gen_range(1..=labels));
        let e = match r.gen_range(0..4) {
            0 if a != b => e.join(a, b),
            1 if a != b => e.relabel(a, b),
            _ if !pool.is_empty() => {
                let j = r.gen_range(0..pool.len());
                KExpr::union(e, pool.swap_remove(j))
            }
            _ => e,
        };
        pool.push(e);
        if pool.len() == 1 && r.gen_bool(0.5) {
            break;
        }
    }
    pool.pop().unwrap()
}

fn subtrees(e: &KExpr) -> Vec<&KExpr> {
    let mut out = vec![e];
    match e {
        KExpr::Create(..) => {}
        KExpr::Union(a, b) => {
            out.extend(subtrees(a));
            out.extend(subtrees(b));
        }
        KExpr::Join(_, _, c) | KExpr::Relabel(_, _, c) => out.extend(subtrees(c)),
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eval_is_deterministic(n in 1usize..14, labels in 2u32..6, seed: u64) {
        let e = random_expr(n, labels, seed);
        prop_assert_eq!(eval(&e).unwrap(), eval(&e.clone()).unwrap());
        prop_assert_eq!(parse(&serialize(&e)).unwrap(), e);
    }

    #[test]
    fn subtree_vertices_are_its_creates(n in 1usize..14, labels in 2u32..6, seed: u64) {
        let e = random_expr(n, labels, seed);
        for s in subtrees(&e) {
            let mut created = s.vertices();
            created.sort();
            let built: Vec<VertexId> = eval(s).unwrap().graph.ids().to_vec();
            prop_assert_eq!(created, built);
        }
    }

    #[test]
    fn join_is_idempotent(n in 2usize..14, labels in 2u32..6, seed: u64, a in 1u32..6, b in 1u32..6) {
        prop_assume!(a != b);
        let e = random_expr(n, labels, seed);
        let once = e.clone().join(a, b);
        let twice = once.clone().join(a, b);
        prop_assert_eq!(eval(&once).unwrap(), eval(&twice).unwrap());
    }

    #[test]
    fn width_bounds_live_labels(n in 1usize..14, labels in 2u32..6, seed: u64) {
        let e = random_expr(n, labels, seed);
        let w = width(&e);
        for s in subtrees(&e) {
            prop_assert!(w.width >= s.live_labels().len());
        }
        prop_assert!(w.width >= w.max_live);
    }

    #[test]
    fn mwis_matches_brute_force(n in 1usize..=16, labels in 2u32..6, seed: u64, wseed: u64) {
        let e = random_expr(n, labels, seed);
        let g = eval(&e).unwrap().graph;
        let weight = |v: &VertexId| {
            let i: u64 = v.as_str()[1..].parse().unwrap();
            wseed.wrapping_mul(i + 1).rotate_left(17) % 10
        };
        let dp = mwis(&e, &|v| Some(weight(v))).unwrap();
        let (best, _) = brute_mwis(&g, &weight).unwrap();
        prop_assert_eq!(dp.weight, best);
        let idx: Vec<usize> = dp.set.iter().map(|v| g.index_of(v).unwrap()).collect();
        for (i, &a) in idx.iter().enumerate() {
            for &b in &idx[i + 1..] {
                prop_assert!(!g.adjacent(a, b));
            }
        }
        prop_assert_eq!(dp.set.iter().map(&weight).sum::<u64>(), best);
    }
}
