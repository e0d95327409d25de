//! Simple undirected graphs with stable, ordered vertex identities.
//!
//! Vertices are stored sorted by id; algorithms work on the dense index
//! `0..n` and translate back through [`Graph::id`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
}

/// Opaque vertex token matching `[A-Za-z0-9_]+`, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(s: impl Into<String>) -> Result<Self, GraphError> {
        let s = s.into();
        if Self::is_valid(&s) {
            Ok(VertexId(s))
        } else {
            Err(GraphError::MalformedGraph(format!("invalid vertex id {s:?}")))
        }
    }

    pub fn is_valid(s: &str) -> bool {
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for VertexId {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VertexId::new(s)
    }
}

#[derive(Clone)]
pub struct Graph {
    ids: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    adj: Vec<Vec<usize>>,
    rows: Vec<FixedBitSet>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v)| format!("{}-{}", self.ids[u], self.ids[v]))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.ids)
            .field("edges", &edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from edge pairs plus extra (possibly isolated) vertices.
    /// Duplicate edges collapse; a self-loop is rejected.
    pub fn from_edge_list(
        pairs: &[(VertexId, VertexId)],
        isolated: &[VertexId],
    ) -> Result<Graph, GraphError> {
        let mut ids: BTreeSet<VertexId> = isolated.iter().cloned().collect();
        for (a, b) in pairs {
            if a == b {
                return Err(GraphError::MalformedGraph(format!("self-loop at {a}")));
            }
            ids.insert(a.clone());
            ids.insert(b.clone());
        }
        let ids: Vec<VertexId> = ids.into_iter().collect();
        let index: HashMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let edges: Vec<(usize, usize)> = pairs.iter().map(|(a, b)| (index[a], index[b])).collect();
        Ok(Self::assemble(ids, index, &edges))
    }

    /// Convenience constructor over string ids; panics on malformed ids.
    pub fn from_strs(pairs: &[(&str, &str)], isolated: &[&str]) -> Result<Graph, GraphError> {
        let pairs = pairs
            .iter()
            .map(|(a, b)| Ok((VertexId::new(*a)?, VertexId::new(*b)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        let isolated = isolated
            .iter()
            .map(|a| VertexId::new(*a))
            .collect::<Result<Vec<_>, _>>()?;
        Graph::from_edge_list(&pairs, &isolated)
    }

    /// Builds from sorted-unique ids and index pairs; pairs must not be loops.
    pub(crate) fn from_indexed(ids: Vec<VertexId>, edges: &[(usize, usize)]) -> Graph {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        let index = ids.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Self::assemble(ids, index, edges)
    }

    fn assemble(ids: Vec<VertexId>, index: HashMap<VertexId, usize>, edges: &[(usize, usize)]) -> Graph {
        let n = ids.len();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            debug_assert_ne!(u, v);
            rows[u].insert(v);
            rows[v].insert(u);
        }
        let adj = rows.iter().map(|r| r.ones().collect()).collect();
        Graph { ids, index, adj, rows }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &VertexId {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &VertexId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_ids(&self) -> Vec<(VertexId, VertexId)> {
        self.edges()
            .map(|(u, v)| (self.ids[u].clone(), self.ids[v].clone()))
            .collect()
    }

    pub fn has_edge(&self, a: &VertexId, b: &VertexId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(u), Some(v)) => self.adjacent(u, v),
            _ => false,
        }
    }

    /// Subgraph induced by the given vertex indices (ids are preserved).
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut vs: Vec<usize> = verts.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let pos: HashMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in vs.iter().enumerate() {
            for &w in &self.adj[v] {
                if let Some(&j) = pos.get(&w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        Graph::from_indexed(vs.iter().map(|&v| self.ids[v].clone()).collect(), &edges)
    }

    /// Connected components of the subgraph induced by `within`, each sorted.
    pub fn components_within(&self, within: &[usize], complement: bool) -> Vec<Vec<usize>> {
        let mut inside = FixedBitSet::with_capacity(self.n());
        for &v in within {
            inside.insert(v);
        }
        let mut seen = FixedBitSet::with_capacity(self.n());
        let mut comps = Vec::new();
        for &s in within {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in within {
                    if !seen.contains(w) && w != v && (self.adjacent(v, w) != complement) {
                        seen.insert(w);
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort();
        comps
    }

    /// Relabels vertices through `f`; `f` must be injective.
    pub fn rename(&self, f: impl Fn(&VertexId) -> VertexId) -> Graph {
        let pairs: Vec<_> = self
            .edges()
            .map(|(u, v)| (f(&self.ids[u]), f(&self.ids[v])))
            .collect();
        let isolated: Vec<_> = self.ids.iter().map(&f).collect();
        Graph::from_edge_list(&pairs, &isolated).expect("renaming cannot create loops")
    }

    /// Disjoint union; panics if ids overlap.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut pairs = self.edge_ids();
        pairs.extend(other.edge_ids());
        let mut isolated: Vec<VertexId> = self.ids.clone();
        isolated.extend(other.ids.iter().cloned());
        let g = Graph::from_edge_list(&pairs, &isolated).expect("no loops");
        assert_eq!(g.n(), self.n() + other.n(), "disjoint_union on overlapping ids");
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_k2() {
        let g = Graph::from_strs(&[("a", "b")], &[]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 1);
        assert!(g.adjacent(0, 1));
    }

    #[test]
    fn isolated_vertex() {
        let g = Graph::from_strs(&[], &["a"]).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn self_loop_rejected() {
        let err = Graph::from_strs(&[("a", "a")], &[]).unwrap_err();
        assert!(matches!(err, GraphError::MalformedGraph(_)));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_strs(&[("a", "b"), ("b", "a"), ("a", "b")], &[]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn bad_ids_rejected() {
        assert!(VertexId::new("").is_err());
        assert!(VertexId::new("a-b").is_err());
        assert!(VertexId::new("x_1").is_ok());
    }

    #[test]
    fn induced_keeps_ids() {
        let g = Graph::from_strs(&[("a", "b"), ("b", "c"), ("c", "d")], &[]).unwrap();
        let h = g.induced(&[1, 2, 3]);
        assert_eq!(h, Graph::from_strs(&[("b", "c"), ("c", "d")], &[]).unwrap());
    }

    #[test]
    fn co_components() {
        // C4 complement is 2K2
        let g = Graph::from_strs(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], &[]).unwrap();
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(g.components_within(&all, false).len(), 1);
        assert_eq!(g.components_within(&all, true), vec![vec![0, 2], vec![1, 3]]);
    }
}
