//! Clique-width expressions: create, disjoint union, join and relabel.

mod mwis;
mod text;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

pub use mwis::{mwis, MwisSolution};
pub use text::{parse, serialize};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("vertex {0} is created more than once")]
    DuplicateVertex(VertexId),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("no weight for vertex {0}")]
    MissingWeight(VertexId),
    #[error("expression uses {0} labels; the table supports at most 128")]
    TooManyLabels(usize),
}

/// A positive integer label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(u32);

impl Label {
    pub fn new(l: u32) -> Label {
        assert!(l > 0, "labels are positive");
        Label(l)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KExpr {
    Create(Label, VertexId),
    Union(Box<KExpr>, Box<KExpr>),
    /// Adds every edge between the two label classes.
    Join(Label, Label, Box<KExpr>),
    /// Renames the first label to the second.
    Relabel(Label, Label, Box<KExpr>),
}

/// Shorthand constructors; these assert the distinct-label invariant.
impl KExpr {
    pub fn create(l: u32, v: &VertexId) -> KExpr {
        KExpr::Create(Label::new(l), v.clone())
    }

    pub fn union(a: KExpr, b: KExpr) -> KExpr {
        KExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn join(self, a: u32, b: u32) -> KExpr {
        assert_ne!(a, b, "join labels must differ");
        KExpr::Join(Label::new(a), Label::new(b), Box::new(self))
    }

    pub fn relabel(self, from: u32, to: u32) -> KExpr {
        assert_ne!(from, to, "relabel labels must differ");
        KExpr::Relabel(Label::new(from), Label::new(to), Box::new(self))
    }

    /// Left-leaning union of all parts, `None` when empty.
    pub fn union_all(parts: impl IntoIterator<Item = KExpr>) -> Option<KExpr> {
        parts.into_iter().reduce(KExpr::union)
    }

    /// Relabels every label in `from` to `to` (skipping `to` itself).
    pub fn relabel_all(self, from: impl IntoIterator<Item = u32>, to: u32) -> KExpr {
        from.into_iter()
            .filter(|&l| l != to)
            .fold(self, |e, l| e.relabel(l, to))
    }

    /// Vertex ids created in this expression, in creation (left-to-right) order.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                KExpr::Create(_, v) => out.push(v.clone()),
                KExpr::Union(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                KExpr::Join(_, _, c) | KExpr::Relabel(_, _, c) => stack.push(c),
            }
        }
        out
    }

    /// Every label integer mentioned anywhere.
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                KExpr::Create(l, _) => {
                    out.insert(*l);
                }
                KExpr::Union(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                KExpr::Join(x, y, c) | KExpr::Relabel(x, y, c) => {
                    out.insert(*x);
                    out.insert(*y);
                    stack.push(c);
                }
            }
        }
        out
    }

    /// Labels carried by at least one vertex at the root.
    pub fn live_labels(&self) -> BTreeSet<Label> {
        match self {
            KExpr::Create(l, _) => BTreeSet::from([*l]),
            KExpr::Union(a, b) => {
                let mut s = a.live_labels();
                s.extend(b.live_labels());
                s
            }
            KExpr::Join(_, _, c) => c.live_labels(),
            KExpr::Relabel(from, to, c) => {
                let mut s = c.live_labels();
                if s.remove(from) {
                    s.insert(*to);
                }
                s
            }
        }
    }

    /// Replaces labels through `f` (which must keep join/relabel pairs distinct).
    pub fn map_labels(&self, f: &impl Fn(Label) -> Label) -> KExpr {
        match self {
            KExpr::Create(l, v) => KExpr::Create(f(*l), v.clone()),
            KExpr::Union(a, b) => KExpr::Union(Box::new(a.map_labels(f)), Box::new(b.map_labels(f))),
            KExpr::Join(x, y, c) => KExpr::Join(f(*x), f(*y), Box::new(c.map_labels(f))),
            KExpr::Relabel(x, y, c) => KExpr::Relabel(f(*x), f(*y), Box::new(c.map_labels(f))),
        }
    }

    /// Renumbers labels to `1..=k` in increasing order of their old value.
    pub fn normalize_labels(&self) -> KExpr {
        let map: BTreeMap<Label, Label> = self
            .labels()
            .into_iter()
            .enumerate()
            .map(|(i, l)| (l, Label::new(i as u32 + 1)))
            .collect();
        self.map_labels(&|l| map[&l])
    }

    /// Replaces every `Create(l, v)` with `sub(v)` relabelled onto `l`.
    pub fn substitute(&self, sub: &mut impl FnMut(&VertexId) -> Option<KExpr>) -> KExpr {
        match self {
            KExpr::Create(l, v) => match sub(v) {
                Some(e) => {
                    let live: Vec<u32> = e.live_labels().iter().map(|l| l.get()).collect();
                    e.relabel_all(live, l.get())
                }
                None => self.clone(),
            },
            KExpr::Union(a, b) => KExpr::union(a.substitute(sub), b.substitute(sub)),
            KExpr::Join(x, y, c) => KExpr::Join(*x, *y, Box::new(c.substitute(sub))),
            KExpr::Relabel(x, y, c) => KExpr::Relabel(*x, *y, Box::new(c.substitute(sub))),
        }
    }

    /// Number of operation nodes.
    pub fn size(&self) -> usize {
        match self {
            KExpr::Create(..) => 1,
            KExpr::Union(a, b) => 1 + a.size() + b.size(),
            KExpr::Join(_, _, c) | KExpr::Relabel(_, _, c) => 1 + c.size(),
        }
    }
}

impl fmt::Display for KExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

/// A graph with one positive label per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: BTreeMap<VertexId, Label>,
}

/// Per-subtree label classes while evaluating.
type Classes = BTreeMap<Label, Vec<usize>>;

struct Evaluator {
    ids: Vec<VertexId>,
    seen: HashSet<VertexId>,
    edges: HashSet<(usize, usize)>,
}

impl Evaluator {
    fn run(&mut self, e: &KExpr) -> Result<Classes, ExprError> {
        match e {
            KExpr::Create(l, v) => {
                if !self.seen.insert(v.clone()) {
                    return Err(ExprError::DuplicateVertex(v.clone()));
                }
                self.ids.push(v.clone());
                Ok(BTreeMap::from([(*l, vec![self.ids.len() - 1])]))
            }
            KExpr::Union(a, b) => {
                let mut left = self.run(a)?;
                let right = self.run(b)?;
                for (l, vs) in right {
                    left.entry(l).or_default().extend(vs);
                }
                Ok(left)
            }
            KExpr::Join(x, y, c) => {
                let classes = self.run(c)?;
                if let (Some(xs), Some(ys)) = (classes.get(x), classes.get(y)) {
                    for &a in xs {
                        for &b in ys {
                            self.edges.insert((a.min(b), a.max(b)));
                        }
                    }
                }
                Ok(classes)
            }
            KExpr::Relabel(from, to, c) => {
                let mut classes = self.run(c)?;
                if let Some(vs) = classes.remove(from) {
                    classes.entry(*to).or_default().extend(vs);
                }
                Ok(classes)
            }
        }
    }
}

/// Evaluates the expression to its labelled graph.
pub fn eval(e: &KExpr) -> Result<LabeledGraph, ExprError> {
    let mut ev = Evaluator { ids: Vec::new(), seen: HashSet::new(), edges: HashSet::new() };
    let classes = ev.run(e)?;
    let pairs: Vec<(VertexId, VertexId)> = ev
        .edges
        .iter()
        .map(|&(a, b)| (ev.ids[a].clone(), ev.ids[b].clone()))
        .collect();
    let graph = Graph::from_edge_list(&pairs, &ev.ids).expect("distinct endpoints");
    let labels = classes
        .into_iter()
        .flat_map(|(l, vs)| vs.into_iter().map(move |v| (v, l)))
        .map(|(v, l)| (ev.ids[v].clone(), l))
        .collect();
    Ok(LabeledGraph { graph, labels })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthReport {
    /// Distinct label integers in the whole expression.
    pub width: usize,
    /// Largest number of simultaneously live labels over all subtrees.
    pub max_live: usize,
    /// Live labels at the root.
    pub root_live: usize,
}

pub fn width(e: &KExpr) -> WidthReport {
    fn live(e: &KExpr, max_live: &mut usize) -> BTreeSet<Label> {
        let s = match e {
            KExpr::Create(l, _) => BTreeSet::from([*l]),
            KExpr::Union(a, b) => {
                let mut s = live(a, max_live);
                s.extend(live(b, max_live));
                s
            }
            KExpr::Join(_, _, c) => live(c, max_live),
            KExpr::Relabel(from, to, c) => {
                let mut s = live(c, max_live);
                if s.remove(from) {
                    s.insert(*to);
                }
                s
            }
        };
        *max_live = (*max_live).max(s.len());
        s
    }
    let mut max_live = 0;
    let root = live(e, &mut max_live);
    WidthReport { width: e.labels().len(), max_live, root_live: root.len() }
}
