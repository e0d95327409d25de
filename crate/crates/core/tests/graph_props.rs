mod common;

use std::collections::VecDeque;

use common::random_graph;
use cwkit::cycles::shortest_odd_cycle;
use cwkit::modular::{is_prime, modular_decomposition, ModuleTree};
use cwkit::oracle::brute_contains;
use cwkit::pattern::{contains_induced, Pattern};
use cwkit::Graph;
use proptest::prelude::*;

fn bipartite_by_bfs(g: &Graph) -> bool {
    let mut side = vec![None; g.n()];
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for w in 0..g.n() {
                if !g.adjacent(v, w) {
                    continue;
                }
                match side[w] {
                    None => {
                        side[w] = Some(!side[v].unwrap());
                        q.push_back(w);
                    }
                    Some(x) if x == side[v].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

fn homogeneous(g: &Graph, m: &[usize]) -> bool {
    (0..g.n()).filter(|v| !m.contains(v)).all(|z| {
        let hits = m.iter().filter(|&&x| g.adjacent(z, x)).count();
        hits == 0 || hits == m.len()
    })
}

fn has_nontrivial_module(g: &Graph) -> bool {
    let n = g.n();
    (1u32..(1 << n)).any(|mask| {
        let m: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        m.len() >= 2 && m.len() < n && homogeneous(g, &m)
    })
}

fn patterns() -> Vec<Pattern> {
    vec![Pattern::s(1, 2, 2), Pattern::complete(3), Pattern::cycle(5), Pattern::path(4), Pattern::two_p2()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contains_matches_enumeration(n in 4usize..=10, p in 0.1f64..0.6, seed: u64) {
        let g = random_graph(n, p, seed);
        for pat in patterns() {
            let fast = contains_induced(&g, &pat);
            prop_assert_eq!(fast.is_some(), brute_contains(&g, &pat).unwrap());
            if let Some(m) = fast {
                let adj = pat.adjacency();
                for a in 0..pat.size() {
                    for b in a + 1..pat.size() {
                        prop_assert_eq!(g.adjacent(m[a], m[b]), adj[a][b]);
                    }
                }
            }
        }
    }

    #[test]
    fn odd_cycle_iff_not_bipartite(n in 1usize..=14, p in 0.05f64..0.5, seed: u64) {
        let g = random_graph(n, p, seed);
        let c = shortest_odd_cycle(&g);
        prop_assert_eq!(c.is_none(), bipartite_by_bfs(&g));
        if let Some((len, cyc)) = c {
            prop_assert_eq!(len % 2, 1);
            prop_assert_eq!(cyc.len(), len);
            for i in 0..len {
                prop_assert!(g.adjacent(cyc[i], cyc[(i + 1) % len]));
            }
        }
    }

    #[test]
    fn decomposition_modules_are_homogeneous(n in 1usize..=16, p in 0.05f64..0.7, seed: u64) {
        let g = random_graph(n, p, seed);
        let tree = modular_decomposition(&g);
        prop_assert_eq!(tree.vertices().len(), n);
        for node in tree.internal_nodes() {
            prop_assert!(homogeneous(&g, &node.vertices()));
            for c in node.children() {
                prop_assert!(homogeneous(&g, &c.vertices()));
            }
        }
        if let ModuleTree::Node { vertices, .. } = &tree {
            prop_assert_eq!(vertices.len(), n);
        }
    }

    #[test]
    fn prime_iff_no_module_by_enumeration(n in 3usize..=10, p in 0.2f64..0.6, seed: u64) {
        let g = random_graph(n, p, seed);
        prop_assert_eq!(is_prime(&g), !has_nontrivial_module(&g));
    }
}
