mod common;

use common::{corpus, graph, id, petersen};
use cwkit::format::read_graph;
use cwkit::gen::{gen_cycle, gen_random_trianglefree, gen_substituted};
use cwkit::kexpr::{eval, width, KExpr};
use cwkit::modular::is_prime;
use cwkit::oracle::{brute_contains, exact_cw_leq};
use cwkit::pattern::{is_class_member, Pattern};
use cwkit::pipeline::{
    build_cycle_expr, decompose, decompose_with, long_odd_cycle_structure, verify, CaseTag, Checks, PipelineError,
};
use cwkit::cycles::shortest_odd_cycle;
use cwkit::{Graph, VertexId};
use proptest::prelude::*;

fn cycle_ids(n: usize) -> Vec<VertexId> {
    (1..=n).map(|i| id(&format!("v{i}"))).collect()
}

/// The expression with its outermost join removed.
fn drop_first_join(e: &KExpr) -> Option<KExpr> {
    match e {
        KExpr::Create(..) => None,
        KExpr::Join(_, _, c) => Some((**c).clone()),
        KExpr::Relabel(a, b, c) => drop_first_join(c).map(|c| c.relabel(a.get(), b.get())),
        KExpr::Union(a, b) => drop_first_join(a)
            .map(|a| KExpr::union(a, (**b).clone()))
            .or_else(|| drop_first_join(b).map(|b| KExpr::union((**a).clone(), b))),
    }
}

#[test]
fn long_odd_cycles() {
    for n in [7, 9, 11] {
        let g = gen_cycle(n).unwrap();
        let r = decompose(&g).unwrap();
        assert_eq!(r.case, CaseTag::LongOddCycle);
        assert!(r.verified && r.width.unwrap() <= 4);
    }
}

#[test]
fn c5_cycle_expression_and_oracle() {
    let e = build_cycle_expr(&cycle_ids(5));
    let g = gen_cycle(5).unwrap();
    assert!(verify(&g, &e));
    assert!(width(&e).width <= 4);
    assert!(exact_cw_leq(&g, 3).unwrap().answer);
    assert!(!exact_cw_leq(&g, 2).unwrap().answer);
}

#[test]
fn c4_composes_over_k2() {
    let r = decompose(&gen_cycle(4).unwrap()).unwrap();
    assert_eq!(r.case, CaseTag::ModularComposite);
    assert_eq!(r.nodes[0].quotient_size, 2);
    assert!(r.verified);
}

#[test]
fn petersen_is_outside_the_class() {
    // the C5-case run on Petersen is contingent on class membership, which fails
    let g = petersen();
    assert!(brute_contains(&g, &Pattern::s(1, 2, 2)).unwrap());
    assert!(!is_class_member(&g).in_class());
    assert!(matches!(decompose(&g), Err(PipelineError::NotInClass(_))));
}

#[test]
fn dropping_a_join_breaks_verification() {
    for g in [gen_cycle(7).unwrap(), gen_cycle(4).unwrap()] {
        let e = decompose(&g).unwrap().expr.unwrap();
        assert!(verify(&g, &e));
        assert!(!verify(&g, &drop_first_join(&e).unwrap()));
    }
}

#[test]
fn pendant_on_c7_violates_cycle_structure() {
    let mut pairs: Vec<(String, String)> = (1..=7).map(|i| (format!("v{i}"), format!("v{}", i % 7 + 1))).collect();
    pairs.push(("v1".into(), "w".into()));
    let p: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let g = graph(&p);
    assert!(is_prime(&g));
    let (len, cyc) = shortest_odd_cycle(&g).unwrap();
    assert_eq!(len, 7);
    let err = long_odd_cycle_structure(&g, &cyc).unwrap_err();
    assert!(
        matches!(&err, PipelineError::StructureViolation { clause, .. } if clause == "cycle-only-zero-and-two-vertices"),
        "{err:?}"
    );
}

#[test]
fn chord_twin_on_c7_composes_but_fails_cycle_structure() {
    let mut pairs: Vec<(String, String)> = (1..=7).map(|i| (format!("v{i}"), format!("v{}", i % 7 + 1))).collect();
    pairs.push(("v1".into(), "x".into()));
    pairs.push(("v3".into(), "x".into()));
    let p: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let g = graph(&p);
    let r = decompose(&g).unwrap();
    assert_eq!(r.case, CaseTag::ModularComposite);
    assert!(r.nodes.iter().any(|n| n.case == CaseTag::LongOddCycle));
    let (_, cyc) = shortest_odd_cycle(&g).unwrap();
    let err = long_odd_cycle_structure(&g, &cyc).unwrap_err();
    assert!(matches!(&err, PipelineError::StructureViolation { clause, .. } if clause == "cycle-chords-empty"), "{err:?}");
}

#[test]
fn long_prime_bipartite_is_unsupported() {
    let names: Vec<String> = (0..9).map(|i| format!("p{i}")).collect();
    let pairs: Vec<(&str, &str)> = (0..8).map(|i| (names[i].as_str(), names[i + 1].as_str())).collect();
    let g = graph(&pairs);
    let r = decompose(&g).unwrap();
    assert_eq!(r.case, CaseTag::BipartiteUnsupported);
    assert!(r.expr.is_none() && !r.verified);
}

#[test]
fn disjoint_cycles_compose() {
    let g = gen_cycle(5).unwrap().disjoint_union(&gen_cycle(7).unwrap().rename(|v| id(&format!("w{v}"))));
    let r = decompose_with(&g, Checks { eval: true, relations: true }).unwrap();
    assert_eq!(r.case, CaseTag::ModularComposite);
    assert!(r.verified);
}

#[test]
fn corpus_dispatch_is_total() {
    for (spec, text, _) in corpus() {
        let g = read_graph(&text).unwrap();
        let r = decompose(&g).unwrap_or_else(|e| panic!("{spec}: {e}"));
        match r.case {
            CaseTag::BipartiteUnsupported => assert!(r.expr.is_none()),
            _ => assert!(r.verified, "{spec}"),
        }
        if r.case == CaseTag::LongOddCycle {
            assert_eq!(shortest_odd_cycle(&g).unwrap().0, g.n());
        }
    }
}

fn composed_width_is_max_node_width(g: &Graph) -> Result<(), TestCaseError> {
    let r = decompose(g).unwrap();
    if r.case == CaseTag::BipartiteUnsupported {
        return Ok(());
    }
    prop_assert!(r.verified);
    let node_max = r.nodes.iter().filter_map(|n| n.width).max().unwrap();
    prop_assert_eq!(r.width.unwrap(), node_max);
    prop_assert_eq!(eval(r.expr.as_ref().unwrap()).unwrap().graph, g.clone());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn substituted_members_compose(seed: u64) {
        let g = gen_substituted(seed).unwrap();
        prop_assert!(!is_prime(&g));
        composed_width_is_max_node_width(&g)?;
    }

    #[test]
    fn random_members_dispatch(n in 1usize..=18, d in 0.05f64..0.5, seed: u64) {
        let g = gen_random_trianglefree(n, d, seed);
        let r = decompose(&g);
        prop_assert!(r.is_ok(), "{:?}", r.err());
        composed_width_is_max_node_width(&g)?;
        if is_prime(&g) {
            if let Some((len, _)) = shortest_odd_cycle(&g) {
                if len >= 7 {
                    prop_assert_eq!(g.n(), len);
                }
            }
        }
    }
}
