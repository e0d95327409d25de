//! Named adjacency assertions between vertex sets.

use crate::chain::{recognize_chain, ChainVerdict};
use crate::graph::Graph;

/// One checked relation: `REL <name> PASS|FAIL [witness...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rel {
    pub name: String,
    pub pass: bool,
    pub witness: Vec<usize>,
}

impl Rel {
    pub fn ok(name: impl Into<String>) -> Rel {
        Rel { name: name.into(), pass: true, witness: Vec::new() }
    }

    pub fn fail(name: impl Into<String>, witness: Vec<usize>) -> Rel {
        Rel { name: name.into(), pass: false, witness }
    }

    pub fn from_witness(name: impl Into<String>, witness: Option<Vec<usize>>) -> Rel {
        match witness {
            None => Rel::ok(name),
            Some(w) => Rel::fail(name, w),
        }
    }

    pub fn render(&self, g: &Graph) -> String {
        let mut s = format!("REL {} {}", self.name, if self.pass { "PASS" } else { "FAIL" });
        for &v in &self.witness {
            s.push(' ');
            s.push_str(g.id(v).as_str());
        }
        s
    }
}

pub fn cat(parts: &[&[usize]]) -> Vec<usize> {
    let mut v: Vec<usize> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn contacts(g: &Graph, v: usize, set: &[usize]) -> bool {
    set.iter().any(|&u| g.adjacent(v, u))
}

pub fn complete_to(g: &Graph, v: usize, set: &[usize]) -> bool {
    set.iter().all(|&u| g.adjacent(v, u))
}

pub fn non_edge(g: &Graph, a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| x != y && !g.adjacent(x, y))
        .map(|(x, y)| vec![x, y])
}

pub fn edge(g: &Graph, a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| g.adjacent(x, y))
        .map(|(x, y)| vec![x, y])
}

pub fn complete(name: impl Into<String>, g: &Graph, a: &[usize], b: &[usize]) -> Rel {
    Rel::from_witness(name, non_edge(g, a, b))
}

pub fn anticomplete(name: impl Into<String>, g: &Graph, a: &[usize], b: &[usize]) -> Rel {
    Rel::from_witness(name, edge(g, a, b))
}

pub fn empty(name: impl Into<String>, set: &[usize]) -> Rel {
    Rel::from_witness(name, (!set.is_empty()).then(|| set.to_vec()))
}

/// `x` and `y` induce a chain bipartite graph; the witness is an induced 2P2
/// (or an edge inside a side).
pub fn chain(name: impl Into<String>, g: &Graph, x: &[usize], y: &[usize]) -> Rel {
    let witness = match recognize_chain(g, x, y) {
        Ok(ChainVerdict::Chain(_)) => None,
        Ok(ChainVerdict::TwoP2 { x1, y1, x2, y2 }) => Some(vec![x1, y1, x2, y2]),
        Err(_) => edge(g, x, x).or_else(|| edge(g, y, y)).or_else(|| Some(cat(&[x, y]))),
    };
    Rel::from_witness(name, witness)
}

/// No triple `a ∈ x, b ∈ y, c ∈ z` is independent.
pub fn no_independent_triple(name: impl Into<String>, g: &Graph, x: &[usize], y: &[usize], z: &[usize]) -> Rel {
    for &a in x {
        for &b in y {
            if g.adjacent(a, b) {
                continue;
            }
            if let Some(&c) = z.iter().find(|&&c| !g.adjacent(a, c) && !g.adjacent(b, c)) {
                return Rel::fail(name, vec![a, b, c]);
            }
        }
    }
    Rel::ok(name)
}

/// Pairwise disjointness of several sets, witnessed by a shared vertex.
pub fn disjoint(name: impl Into<String>, sets: &[&[usize]]) -> Rel {
    let mut seen = std::collections::BTreeSet::new();
    for s in sets {
        for &v in s.iter() {
            if !seen.insert(v) {
                return Rel::fail(name, vec![v]);
            }
        }
    }
    Rel::ok(name)
}
