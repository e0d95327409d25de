//! Two-colouring and shortest odd cycles.

use std::collections::VecDeque;

use crate::graph::Graph;

/// BFS 2-colouring; `None` if the graph has an odd cycle.
pub fn two_coloring(g: &Graph) -> Option<Vec<u8>> {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Length and vertex sequence of a shortest odd cycle, or `None` iff bipartite.
///
/// For every root a BFS is run until the first edge joining two vertices of
/// the same layer; the minimum over roots (smallest root on ties) is kept.
/// At the minimising root both tree paths are internally disjoint, so the
/// returned cycle is induced.
pub fn shortest_odd_cycle(g: &Graph) -> Option<(usize, Vec<usize>)> {
    let n = g.n();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut found = None;
        'bfs: while let Some(v) = queue.pop_front() {
            if let Some((len, _)) = &best {
                // a same-layer edge at this depth cannot beat the current best
                if 2 * dist[v] + 1 >= *len {
                    break;
                }
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if dist[w] == dist[v] {
                    found = Some((v, w));
                    break 'bfs;
                }
            }
        }
        let Some((x, y)) = found else { continue };
        let len = 2 * dist[x] + 1;
        if best.as_ref().is_some_and(|(b, _)| *b <= len) {
            continue;
        }
        let mut left = vec![x];
        while *left.last().unwrap() != root {
            left.push(parent[*left.last().unwrap()]);
        }
        let mut right = vec![y];
        while *right.last().unwrap() != root {
            right.push(parent[*right.last().unwrap()]);
        }
        // cycle: root .. x, y .. (back to root)
        left.reverse();
        right.pop();
        left.extend(right);
        best = Some((len, left));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Pattern;

    #[test]
    fn c7_cycle() {
        let g = Pattern::cycle(7).to_graph();
        let (len, cyc) = shortest_odd_cycle(&g).unwrap();
        assert_eq!(len, 7);
        assert_eq!(cyc.len(), 7);
        for i in 0..7 {
            assert!(g.adjacent(cyc[i], cyc[(i + 1) % 7]));
        }
    }

    #[test]
    fn tree_has_none() {
        let g = crate::graph::Graph::from_strs(&[("a", "b"), ("a", "c"), ("c", "d"), ("c", "e")], &[])
            .unwrap();
        assert!(shortest_odd_cycle(&g).is_none());
        assert!(two_coloring(&g).is_some());
    }

    #[test]
    fn petersen_odd_girth_five() {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((format!("o{i}"), format!("o{}", (i + 1) % 5)));
            pairs.push((format!("o{i}"), format!("i{i}")));
            pairs.push((format!("i{i}"), format!("i{}", (i + 2) % 5)));
        }
        let p: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let g = crate::graph::Graph::from_strs(&p, &[]).unwrap();
        let (len, cyc) = shortest_odd_cycle(&g).unwrap();
        assert_eq!(len, 5);
        for i in 0..5 {
            assert!(g.adjacent(cyc[i], cyc[(i + 1) % 5]));
        }
    }
}
