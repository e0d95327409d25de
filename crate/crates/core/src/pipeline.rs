//! Whole-graph decomposition: modular decomposition, a case per prime piece,
//! and composition of the piece expressions.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::c5::{decompose_c5, C5Error};
use crate::chain::{build_chain_expr, recognize_chain, ChainPalette, ChainVerdict};
use crate::cycles::{shortest_odd_cycle, two_coloring};
use crate::graph::{Graph, VertexId};
use crate::kexpr::{eval, width, KExpr};
use crate::modular::{modular_decomposition, ModuleTree};
use crate::oracle::{exact_cw_leq, CW_VERTEX_CAP};
use crate::pattern::is_class_member;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("not in class: {0}")]
    NotInClass(String),
    #[error("{clause} violated; witness {}", join(.witness))]
    StructureViolation { clause: String, witness: Vec<VertexId> },
    #[error(transparent)]
    C5(#[from] C5Error),
    #[error("empty graph")]
    EmptyGraph,
    #[error("expression does not rebuild the graph on {}", join(.0))]
    Mismatch(Vec<VertexId>),
}

fn join(ids: &[VertexId]) -> String {
    ids.iter().map(VertexId::as_str).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    BipartiteChain,
    BipartiteUnsupported,
    BipartiteOracle,
    C5Case,
    LongOddCycle,
    ModularComposite,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::BipartiteChain => "bipartite-chain",
            CaseTag::BipartiteUnsupported => "bipartite-unsupported",
            CaseTag::BipartiteOracle => "bipartite-oracle",
            CaseTag::C5Case => "C5-case",
            CaseTag::LongOddCycle => "long-odd-cycle",
            CaseTag::ModularComposite => "modular-composite",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One internal node of the modular decomposition tree (or the whole graph
/// when it is prime): the case its quotient fell into and the width of the
/// quotient expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeReport {
    pub module: Vec<VertexId>,
    pub quotient_size: usize,
    pub case: CaseTag,
    pub width: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct DecompositionResult {
    pub expr: Option<KExpr>,
    pub case: CaseTag,
    /// Distinct labels in `expr`.
    pub width: Option<usize>,
    /// `eval(expr)` was compared with the input and matched.
    pub verified: bool,
    pub nodes: Vec<NodeReport>,
}

/// Which self-checks `decompose_with` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checks {
    /// Compare `eval(expr)` with the input graph.
    pub eval: bool,
    /// Assert every structural relation inside the C5 construction.
    pub relations: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks { eval: true, relations: false }
    }
}

pub fn decompose(g: &Graph) -> Result<DecompositionResult, PipelineError> {
    decompose_with(g, Checks::default())
}

pub fn decompose_with(g: &Graph, checks: Checks) -> Result<DecompositionResult, PipelineError> {
    if g.n() == 0 {
        return Err(PipelineError::EmptyGraph);
    }
    let report = is_class_member(g);
    if let Some(w) = report.witness_line() {
        return Err(PipelineError::NotInClass(w));
    }
    let tree = modular_decomposition(g);
    let mut nodes = Vec::new();
    let expr = compose(g, &tree, checks, &mut nodes)?;
    let composite = match &tree {
        ModuleTree::Leaf(_) => false,
        ModuleTree::Node { children, .. } => children.iter().any(|c| matches!(c, ModuleTree::Node { .. })),
    };
    let case = if nodes.iter().any(|n| n.case == CaseTag::BipartiteUnsupported) {
        CaseTag::BipartiteUnsupported
    } else if composite {
        CaseTag::ModularComposite
    } else {
        nodes[0].case
    };
    let expr = expr.filter(|_| case != CaseTag::BipartiteUnsupported);
    let width = expr.as_ref().map(|e| width(e).width);
    let verified = match &expr {
        Some(e) if checks.eval => {
            if !verify(g, e) {
                return Err(PipelineError::Mismatch(g.ids().to_vec()));
            }
            true
        }
        _ => false,
    };
    Ok(DecompositionResult { expr, case, width, verified, nodes })
}

/// Expression for the module `t`; `None` once some piece is unsupported.
fn compose(
    g: &Graph,
    t: &ModuleTree,
    checks: Checks,
    nodes: &mut Vec<NodeReport>,
) -> Result<Option<KExpr>, PipelineError> {
    let ModuleTree::Node { children, vertices, .. } = t else {
        // a lone vertex is its own prime piece
        let q = g.induced(&t.vertices());
        let (case, e) = dispatch(&q, checks)?;
        nodes.push(NodeReport { module: q.ids().to_vec(), quotient_size: 1, case, width: e.as_ref().map(|e| width(e).width) });
        return Ok(e);
    };
    let q = t.quotient(g).expect("internal node");
    let (case, qexpr) = dispatch(&q, checks)?;
    nodes.push(NodeReport {
        module: vertices.iter().map(|&v| g.id(v).clone()).collect(),
        quotient_size: q.n(),
        case,
        width: qexpr.as_ref().map(|e| width(e).width),
    });
    let mut subs: HashMap<VertexId, Option<KExpr>> = HashMap::new();
    for c in children {
        let e = match c {
            ModuleTree::Leaf(_) => None,
            ModuleTree::Node { .. } => Some(compose(g, c, checks, nodes)?),
        };
        subs.insert(g.id(c.representative()).clone(), e.flatten());
    }
    let Some(qexpr) = qexpr else { return Ok(None) };
    let unsupported = children
        .iter()
        .any(|c| matches!(c, ModuleTree::Node { .. }) && subs[g.id(c.representative())].is_none());
    if unsupported {
        return Ok(None);
    }
    Ok(Some(qexpr.substitute(&mut |v| subs.get(v).cloned().flatten())))
}

/// Case and label-normalized expression for a quotient graph.
fn dispatch(q: &Graph, checks: Checks) -> Result<(CaseTag, Option<KExpr>), PipelineError> {
    let (case, e) = match shortest_odd_cycle(q) {
        None => bipartite(q)?,
        Some((5, _)) => (CaseTag::C5Case, Some(decompose_c5(q, checks.relations)?.expr)),
        Some((_, cycle)) => {
            long_odd_cycle_structure(q, &cycle)?;
            let ids: Vec<VertexId> = cycle.iter().map(|&v| q.id(v).clone()).collect();
            (CaseTag::LongOddCycle, Some(build_cycle_expr(&ids)))
        }
    };
    Ok((case, e.map(|e| e.normalize_labels())))
}

fn bipartite(q: &Graph) -> Result<(CaseTag, Option<KExpr>), PipelineError> {
    let color = two_coloring(q).expect("no odd cycle");
    let x: Vec<usize> = (0..q.n()).filter(|&v| color[v] == 0).collect();
    let y: Vec<usize> = (0..q.n()).filter(|&v| color[v] == 1).collect();
    if let Ok(ChainVerdict::Chain(order)) = recognize_chain(q, &x, &y) {
        return Ok((CaseTag::BipartiteChain, build_chain_expr(&order, ChainPalette::default())));
    }
    if q.n() <= CW_VERTEX_CAP {
        for k in 1..=q.n() {
            let d = exact_cw_leq(q, k).expect("within the oracle cap");
            if d.answer {
                return Ok((CaseTag::BipartiteOracle, d.certificate));
            }
        }
    }
    Ok((CaseTag::BipartiteUnsupported, None))
}

fn violation(g: &Graph, clause: &str, vs: &[usize]) -> PipelineError {
    PipelineError::StructureViolation { clause: clause.into(), witness: vs.iter().map(|&v| g.id(v).clone()).collect() }
}

/// Asserts that a class member whose shortest odd cycle `cycle` (in cyclic
/// order, length at least 7) is induced and C5-free around it is exactly that
/// cycle, clause by clause.
pub fn long_odd_cycle_structure(g: &Graph, cycle: &[usize]) -> Result<(), PipelineError> {
    let len = cycle.len();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in cycle.iter().enumerate() {
        pos[v] = i;
    }
    let mut zero = Vec::new();
    let mut chords: Vec<Vec<usize>> = vec![Vec::new(); len];
    for v in (0..g.n()).filter(|&v| pos[v] == usize::MAX) {
        let hits: Vec<usize> = g.neighbors(v).iter().map(|&w| pos[w]).filter(|&p| p != usize::MAX).collect();
        match hits.as_slice() {
            [] => zero.push(v),
            &[a, b] => {
                let (a, b) = (a.min(b), a.max(b));
                let start = if b - a == 2 {
                    a
                } else if a + len - b == 2 {
                    b
                } else {
                    return Err(violation(g, "cycle-two-vertices-span-two", &[v, cycle[a], cycle[b]]));
                };
                chords[start].push(v);
            }
            _ => {
                let mut w = vec![v];
                w.extend(hits.iter().map(|&p| cycle[p]));
                return Err(violation(g, "cycle-only-zero-and-two-vertices", &w));
            }
        }
    }
    for (i, c) in chords.iter().enumerate() {
        for &x in c {
            if let Some(&z) = zero.iter().find(|&&z| g.adjacent(x, z)) {
                return Err(violation(g, "cycle-zero-anticomplete-chords", &[z, x, cycle[i]]));
            }
        }
    }
    if let Some(&z) = zero.first() {
        return Err(violation(g, "cycle-zero-vertices-empty", &[z]));
    }
    for i in 0..len {
        for d in [2, 3] {
            for &x in &chords[i] {
                if let Some(&y) = chords[(i + d) % len].iter().find(|&&y| g.adjacent(x, y)) {
                    return Err(violation(g, "cycle-far-chords-anticomplete", &[x, y]));
                }
            }
        }
        for &x in &chords[i] {
            if let Some(&y) = chords[(i + 1) % len].iter().find(|&&y| !g.adjacent(x, y)) {
                return Err(violation(g, "cycle-consecutive-chords-complete", &[x, y]));
            }
        }
    }
    if let Some((i, c)) = chords.iter().enumerate().find(|(_, c)| !c.is_empty()) {
        return Err(violation(g, "cycle-chords-empty", &[c[0], cycle[i], cycle[(i + 2) % len]]));
    }
    if g.n() != len {
        return Err(violation(g, "cycle-is-whole-graph", cycle));
    }
    Ok(())
}

/// Four-label expression for the cycle through `ids` in order: grow the path
/// with its first vertex on 1, the current end on 2, the interior on 4, then
/// close it.
pub fn build_cycle_expr(ids: &[VertexId]) -> KExpr {
    assert!(ids.len() >= 3, "a cycle needs at least three vertices");
    let n = ids.len();
    let mut e = KExpr::union(KExpr::create(1, &ids[0]), KExpr::create(2, &ids[1])).join(1, 2);
    for v in &ids[2..n - 1] {
        e = KExpr::union(e, KExpr::create(3, v)).join(2, 3).relabel(2, 4).relabel(3, 2);
    }
    KExpr::union(e, KExpr::create(3, &ids[n - 1])).join(2, 3).join(1, 3)
}

/// True iff `e` builds exactly `g`: same vertex ids, same edges.
pub fn verify(g: &Graph, e: &KExpr) -> bool {
    eval(e).is_ok_and(|lg| lg.graph == *g)
}
