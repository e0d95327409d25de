mod common;

use common::{id, indices};
use cwkit::chain::{
    build_3chain_expr, build_chain_expr, recognize_3chain, recognize_chain, ChainPalette, ChainVerdict,
};
use cwkit::gen::{gen_3chain, gen_chain};
use cwkit::kexpr::{eval, width};
use cwkit::oracle::exact_cw_leq;
use cwkit::pattern::{contains_induced, Pattern};
use cwkit::{Graph, VertexId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_bipartite(px: usize, py: usize, p: f64, seed: u64) -> Graph {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<VertexId> = (0..px).map(|i| id(&format!("x{i}"))).collect();
    let ys: Vec<VertexId> = (0..py).map(|i| id(&format!("y{i}"))).collect();
    let mut pairs = Vec::new();
    for x in &xs {
        for y in &ys {
            if r.gen_bool(p) {
                pairs.push((x.clone(), y.clone()));
            }
        }
    }
    let all: Vec<VertexId> = xs.into_iter().chain(ys).collect();
    Graph::from_edge_list(&pairs, &all).unwrap()
}

/// Two edges `x1y1`, `x2y2` with neither cross edge, straight from the definition.
fn has_cross_2p2(g: &Graph, x: &[usize], y: &[usize]) -> bool {
    for &x1 in x {
        for &x2 in x {
            for &y1 in y {
                for &y2 in y {
                    if g.adjacent(x1, y1) && g.adjacent(x2, y2) && !g.adjacent(x1, y2) && !g.adjacent(x2, y1) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn chain_iff_no_cross_2p2(px in 0usize..=6, py in 0usize..=6, p in 0.1f64..0.9, seed: u64) {
        let g = random_bipartite(px, py, p, seed);
        let (x, y) = (indices(&g, "x"), indices(&g, "y"));
        let accepted = matches!(recognize_chain(&g, &x, &y).unwrap(), ChainVerdict::Chain(_));
        prop_assert_eq!(accepted, !has_cross_2p2(&g, &x, &y));
        prop_assert_eq!(accepted, contains_induced(&g, &Pattern::two_p2()).is_none());
        if let ChainVerdict::TwoP2 { x1, y1, x2, y2 } = recognize_chain(&g, &x, &y).unwrap() {
            prop_assert!(g.adjacent(x1, y1) && g.adjacent(x2, y2));
            prop_assert!(!g.adjacent(x1, y2) && !g.adjacent(x2, y1));
        }
    }

    #[test]
    fn chain_expr_round_trips(px in 0usize..=30, py in 0usize..=30, seed: u64) {
        prop_assume!(px + py > 0);
        let g = gen_chain(px, py, seed);
        let (x, y) = (indices(&g, "x"), indices(&g, "y"));
        let ChainVerdict::Chain(order) = recognize_chain(&g, &x, &y).unwrap() else {
            return Err(TestCaseError::fail("generator produced a 2P2"));
        };
        let e = build_chain_expr(&order, ChainPalette::default()).unwrap();
        prop_assert_eq!(eval(&e).unwrap().graph, g);
        prop_assert!(width(&e).width <= 3);
    }
}

#[test]
fn three_chains_up_to_twelve() {
    for p in 1..=12 {
        let g = gen_3chain(p);
        let t = recognize_3chain(&g, &indices(&g, "a"), &indices(&g, "b"), &indices(&g, "c"))
            .unwrap()
            .expect("canonical 3-chain is accepted");
        assert_eq!(t.p(), p);
        let e = build_3chain_expr(&t).unwrap();
        assert_eq!(eval(&e).unwrap().graph, g);
        assert!(width(&e).width <= 6);
    }
}

#[test]
fn small_three_chains_confirmed_by_oracle() {
    for p in 1..=2 {
        let g = gen_3chain(p);
        let d = exact_cw_leq(&g, 6).unwrap();
        assert!(d.answer);
        assert_eq!(eval(&d.certificate.unwrap()).unwrap().graph, g);
    }
    // p = 2 contains a C5, so it needs exactly three labels
    let g = gen_3chain(2);
    assert!(!exact_cw_leq(&g, 2).unwrap().answer);
    assert!(exact_cw_leq(&g, 3).unwrap().answer);
}

#[test]
fn relabelled_three_chain_rejected() {
    // moving one edge breaks the staircase
    let g = gen_3chain(3);
    let mut pairs = g.edge_ids();
    pairs.retain(|(a, b)| !(a.as_str() == "a1" && b.as_str() == "b1"));
    pairs.push((id("a1"), id("b2")));
    let h = Graph::from_edge_list(&pairs, g.ids()).unwrap();
    let r = recognize_3chain(&h, &indices(&h, "a"), &indices(&h, "b"), &indices(&h, "c"));
    assert!(!matches!(r, Ok(Some(_))));
}
