//! Modular decomposition by closure of vertex pairs.
//!
//! Cubic-ish and plenty for graphs of a few hundred vertices.

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Parallel,
    Series,
    Prime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleTree {
    Leaf(usize),
    Node {
        kind: NodeKind,
        /// Sorted vertex set of this module.
        vertices: Vec<usize>,
        children: Vec<ModuleTree>,
    },
}

impl ModuleTree {
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            ModuleTree::Leaf(v) => vec![*v],
            ModuleTree::Node { vertices, .. } => vertices.clone(),
        }
    }

    /// Smallest vertex of the module; used as its quotient representative.
    pub fn representative(&self) -> usize {
        match self {
            ModuleTree::Leaf(v) => *v,
            ModuleTree::Node { vertices, .. } => vertices[0],
        }
    }

    pub fn children(&self) -> &[ModuleTree] {
        match self {
            ModuleTree::Leaf(_) => &[],
            ModuleTree::Node { children, .. } => children,
        }
    }

    pub fn kind(&self) -> Option<NodeKind> {
        match self {
            ModuleTree::Leaf(_) => None,
            ModuleTree::Node { kind, .. } => Some(*kind),
        }
    }

    /// Quotient graph of an internal node on the children's representatives.
    pub fn quotient(&self, g: &Graph) -> Option<Graph> {
        match self {
            ModuleTree::Leaf(_) => None,
            ModuleTree::Node { children, .. } => {
                let reps: Vec<usize> = children.iter().map(ModuleTree::representative).collect();
                Some(g.induced(&reps))
            }
        }
    }

    /// All internal nodes, pre-order.
    pub fn internal_nodes(&self) -> Vec<&ModuleTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if let ModuleTree::Node { children, .. } = t {
                out.push(t);
                stack.extend(children.iter().rev());
            }
        }
        out
    }
}

/// True if no vertex outside `set` distinguishes it.
pub fn is_module(g: &Graph, set: &[usize]) -> bool {
    distinguisher(g, set).is_none()
}

/// Some vertex outside `set` adjacent to part but not all of it.
pub fn distinguisher(g: &Graph, set: &[usize]) -> Option<usize> {
    if set.len() < 2 {
        return None;
    }
    let mut inside = FixedBitSet::with_capacity(g.n());
    for &v in set {
        inside.insert(v);
    }
    (0..g.n()).filter(|&z| !inside.contains(z)).find(|&z| {
        let hits = set.iter().filter(|&&v| g.adjacent(z, v)).count();
        hits != 0 && hits != set.len()
    })
}

/// Smallest module of `G[scope]` containing `u` and `v`.
fn pair_closure(g: &Graph, scope: &FixedBitSet, u: usize, v: usize) -> FixedBitSet {
    let mut module = FixedBitSet::with_capacity(g.n());
    module.insert(u);
    module.insert(v);
    let mut queue = vec![v];
    while let Some(x) = queue.pop() {
        // outside vertices that see x and u differently
        let mut diff = g.row(x).clone();
        diff.symmetric_difference_with(g.row(u));
        diff.intersect_with(scope);
        diff.difference_with(&module);
        for z in diff.ones().collect::<Vec<_>>() {
            module.insert(z);
            queue.push(z);
        }
    }
    module
}

/// Maximal strong modules of `G[scope]` when both it and its complement are connected.
fn prime_parts(g: &Graph, scope: &[usize]) -> Vec<Vec<usize>> {
    let mut scope_bits = FixedBitSet::with_capacity(g.n());
    for &v in scope {
        scope_bits.insert(v);
    }
    let mut assigned = FixedBitSet::with_capacity(g.n());
    let mut parts = Vec::new();
    for &v in scope {
        if assigned.contains(v) {
            continue;
        }
        let mut part = FixedBitSet::with_capacity(g.n());
        part.insert(v);
        for &u in scope {
            if u == v || part.contains(u) {
                continue;
            }
            let m = pair_closure(g, &scope_bits, v, u);
            if m.count_ones(..) < scope.len() {
                part.union_with(&m);
            }
        }
        assigned.union_with(&part);
        parts.push(part.ones().collect());
    }
    parts.sort();
    parts
}

fn decompose_scope(g: &Graph, scope: Vec<usize>) -> ModuleTree {
    if scope.len() == 1 {
        return ModuleTree::Leaf(scope[0]);
    }
    let comps = g.components_within(&scope, false);
    let (kind, parts) = if comps.len() > 1 {
        (NodeKind::Parallel, comps)
    } else {
        let cocomps = g.components_within(&scope, true);
        if cocomps.len() > 1 {
            (NodeKind::Series, cocomps)
        } else {
            (NodeKind::Prime, prime_parts(g, &scope))
        }
    };
    let children = parts.into_iter().map(|p| decompose_scope(g, p)).collect();
    ModuleTree::Node { kind, vertices: scope, children }
}

/// Modular decomposition tree of `g` (which must be non-empty).
pub fn modular_decomposition(g: &Graph) -> ModuleTree {
    assert!(g.n() > 0, "modular decomposition of the empty graph");
    decompose_scope(g, (0..g.n()).collect())
}

/// The maximal strong modules, i.e. the children of the decomposition root.
pub fn homogeneous_sets(g: &Graph) -> Vec<Vec<usize>> {
    match modular_decomposition(g) {
        ModuleTree::Leaf(v) => vec![vec![v]],
        ModuleTree::Node { children, .. } => children.iter().map(ModuleTree::vertices).collect(),
    }
}

/// A graph is prime when it has no module other than the empty set, the
/// whole vertex set and singletons. Graphs on at most two vertices are
/// therefore prime.
pub fn is_prime(g: &Graph) -> bool {
    if g.n() <= 2 {
        return true;
    }
    match modular_decomposition(g) {
        ModuleTree::Node { kind: NodeKind::Prime, children, .. } => {
            children.iter().all(|c| matches!(c, ModuleTree::Leaf(_)))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Pattern;

    fn all_nontrivial_modules(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if set.len() >= 2 && set.len() < n && is_module(g, &set) {
                out.push(set);
            }
        }
        out
    }

    #[test]
    fn p4_prime_c4_not() {
        assert!(is_prime(&Pattern::path(4).to_graph()));
        let c4 = Pattern::cycle(4).to_graph();
        assert!(!is_prime(&c4));
        assert_eq!(homogeneous_sets(&c4), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn c5_with_pendant_matches_enumeration() {
        let g = Graph::from_strs(
            &[("c1", "c2"), ("c2", "c3"), ("c3", "c4"), ("c4", "c5"), ("c5", "c1"), ("c1", "x")],
            &[],
        )
        .unwrap();
        assert_eq!(is_prime(&g), all_nontrivial_modules(&g).is_empty());
        assert!(is_prime(&g));
    }

    #[test]
    fn small_node_kinds() {
        let e3 = Graph::from_strs(&[], &["a", "b", "c"]).unwrap();
        let t = modular_decomposition(&e3);
        assert_eq!(t.kind(), Some(NodeKind::Parallel));
        assert_eq!(t.children().len(), 3);

        let k3 = Pattern::complete(3).to_graph();
        let t = modular_decomposition(&k3);
        assert_eq!(t.kind(), Some(NodeKind::Series));
        assert_eq!(t.children().len(), 3);

        let p4 = Pattern::path(4).to_graph();
        let t = modular_decomposition(&p4);
        assert_eq!(t.kind(), Some(NodeKind::Prime));
        assert_eq!(t.children().len(), 4);
    }

    #[test]
    fn prime_against_enumeration_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(3..=8);
            let mut pairs = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.45) {
                        pairs.push((format!("v{a}"), format!("v{b}")));
                    }
                }
            }
            let p: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let iso: Vec<&str> = names.iter().map(String::as_str).collect();
            let g = Graph::from_strs(&p, &iso).unwrap();
            assert_eq!(is_prime(&g), all_nontrivial_modules(&g).is_empty(), "{g:?}");
            for node in modular_decomposition(&g).internal_nodes() {
                for child in node.children() {
                    assert!(is_module(&g, &child.vertices()));
                }
            }
        }
    }
}
