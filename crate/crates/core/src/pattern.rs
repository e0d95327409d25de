//! Forbidden-pattern detection by backtracking induced-subgraph search.

use std::fmt;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternKind {
    /// Three paths of lengths i, j, k glued at a centre.
    S(usize, usize, usize),
    Cycle(usize),
    Complete(usize),
    Path(usize),
    /// Two disjoint edges.
    TwoP2,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::S(i, j, k) => write!(f, "S({i},{j},{k})"),
            PatternKind::Cycle(n) => write!(f, "C{n}"),
            PatternKind::Complete(n) => write!(f, "K{n}"),
            PatternKind::Path(n) => write!(f, "P{n}"),
            PatternKind::TwoP2 => write!(f, "2P2"),
        }
    }
}

/// A small pattern graph on vertices `0..size` with a canonical vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub kind: PatternKind,
    pub names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl Pattern {
    /// `S_{i,j,k}` with vertex order `u, x1..xi, y1..yj, z1..zk`.
    pub fn s(i: usize, j: usize, k: usize) -> Pattern {
        let mut names = vec!["u".to_string()];
        let mut edges = Vec::new();
        for (prefix, len) in [("x", i), ("y", j), ("z", k)] {
            let mut prev = 0;
            for t in 1..=len {
                names.push(format!("{prefix}{t}"));
                let cur = names.len() - 1;
                edges.push((prev, cur));
                prev = cur;
            }
        }
        Pattern { kind: PatternKind::S(i, j, k), names, edges }
    }

    pub fn cycle(n: usize) -> Pattern {
        assert!(n >= 3, "cycles need at least three vertices");
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Pattern { kind: PatternKind::Cycle(n), names: numbered("c", n), edges }
    }

    pub fn complete(n: usize) -> Pattern {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Pattern { kind: PatternKind::Complete(n), names: numbered("k", n), edges }
    }

    pub fn path(n: usize) -> Pattern {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Pattern { kind: PatternKind::Path(n), names: numbered("p", n), edges }
    }

    /// `a1-b1`, `a2-b2`.
    pub fn two_p2() -> Pattern {
        Pattern {
            kind: PatternKind::TwoP2,
            names: vec!["a1".into(), "b1".into(), "a2".into(), "b2".into()],
            edges: vec![(0, 1), (2, 3)],
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        let mut m = vec![vec![false; n]; n];
        for &(a, b) in &self.edges {
            m[a][b] = true;
            m[b][a] = true;
        }
        m
    }

    /// The pattern as a graph with ids `names`.
    pub fn to_graph(&self) -> Graph {
        let pairs: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|&(a, b)| (self.names[a].as_str(), self.names[b].as_str()))
            .collect();
        let all: Vec<&str> = self.names.iter().map(String::as_str).collect();
        Graph::from_strs(&pairs, &all).expect("pattern names are valid ids")
    }
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

struct Search<'a> {
    g: &'a Graph,
    padj: Vec<Vec<bool>>,
    order: Vec<usize>,
    /// For each position in `order`, an earlier-placed pattern neighbour.
    anchor: Vec<Option<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, p: &Pattern, first: Option<usize>) -> Self {
        let padj = p.adjacency();
        let np = p.size();
        let deg: Vec<usize> = padj.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
        let mut placed = vec![false; np];
        let mut order = Vec::with_capacity(np);
        if let Some(f) = first {
            placed[f] = true;
            order.push(f);
        }
        while order.len() < np {
            let next = (0..np)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let linked = (0..np).filter(|&w| placed[w] && padj[v][w]).count();
                    (linked, deg[v], std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let anchor = order
            .iter()
            .enumerate()
            .map(|(pos, &v)| order[..pos].iter().copied().find(|&w| padj[v][w]))
            .collect();
        Search {
            g,
            padj,
            order,
            anchor,
            map: vec![usize::MAX; np],
            used: vec![false; g.n()],
        }
    }

    fn consistent(&self, pos: usize, cand: usize) -> bool {
        let pv = self.order[pos];
        self.order[..pos]
            .iter()
            .all(|&w| self.g.adjacent(cand, self.map[w]) == self.padj[pv][w])
    }

    fn run(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let pv = self.order[pos];
        if self.map[pv] != usize::MAX {
            // pre-assigned
            let cand = self.map[pv];
            return self.consistent(pos, cand) && self.run(pos + 1);
        }
        let g = self.g;
        let candidates: Vec<usize> = match self.anchor[pos] {
            Some(a) => g.neighbors(self.map[a]).to_vec(),
            None => (0..g.n()).collect(),
        };
        for cand in candidates {
            if self.used[cand] || !self.consistent(pos, cand) {
                continue;
            }
            self.map[pv] = cand;
            self.used[cand] = true;
            if self.run(pos + 1) {
                return true;
            }
            self.used[cand] = false;
            self.map[pv] = usize::MAX;
        }
        false
    }
}

/// First induced embedding of `p` in `g`: `result[pattern_vertex] = graph_vertex`.
pub fn contains_induced(g: &Graph, p: &Pattern) -> Option<Vec<usize>> {
    if p.size() > g.n() {
        return None;
    }
    let mut s = Search::new(g, p, None);
    s.run(0).then(|| s.map.clone())
}

/// First induced embedding of `p` whose image contains graph vertex `w`.
pub fn contains_induced_through(g: &Graph, p: &Pattern, w: usize) -> Option<Vec<usize>> {
    if p.size() > g.n() {
        return None;
    }
    for pv in 0..p.size() {
        let mut s = Search::new(g, p, Some(pv));
        s.map[pv] = w;
        s.used[w] = true;
        if s.run(0) {
            return Some(s.map.clone());
        }
    }
    None
}

/// Some triangle through a single edge scan, or `None`.
pub fn find_triangle(g: &Graph) -> Option<[usize; 3]> {
    for (u, v) in g.edges() {
        let mut common = g.row(u).clone();
        common.intersect_with(g.row(v));
        if let Some(w) = common.ones().next() {
            let mut t = [u, v, w];
            t.sort_unstable();
            return Some(t);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub triangle_free: bool,
    pub s122_free: bool,
    pub triangle: Option<Vec<VertexId>>,
    /// Image of `u, x1, y1, y2, z1, z2`.
    pub s122: Option<Vec<VertexId>>,
}

impl ClassReport {
    pub fn in_class(&self) -> bool {
        self.triangle_free && self.s122_free
    }

    pub fn witness_line(&self) -> Option<String> {
        if let Some(t) = &self.triangle {
            return Some(format!("triangle {}", join_ids(t)));
        }
        self.s122.as_ref().map(|s| format!("S(1,2,2) {}", join_ids(s)))
    }
}

fn join_ids(ids: &[VertexId]) -> String {
    ids.iter().map(VertexId::as_str).collect::<Vec<_>>().join(" ")
}

/// Membership in the class of (S_{1,2,2}, K_3)-free graphs.
pub fn is_class_member(g: &Graph) -> ClassReport {
    let triangle = find_triangle(g).map(|t| t.iter().map(|&v| g.id(v).clone()).collect());
    let s122 = contains_induced(g, &Pattern::s(1, 2, 2))
        .map(|m| m.iter().map(|&v| g.id(v).clone()).collect());
    ClassReport {
        triangle_free: triangle.is_none(),
        s122_free: s122.is_none(),
        triangle,
        s122,
    }
}

/// True when adding `w` created no triangle or S_{1,2,2} through `w`.
pub fn class_member_through(g: &Graph, w: usize) -> bool {
    let ns = g.neighbors(w);
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            if g.adjacent(a, b) {
                return false;
            }
        }
    }
    contains_induced_through(g, &Pattern::s(1, 2, 2), w).is_none()
}
