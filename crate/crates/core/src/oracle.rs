//! Brute-force ground truth for tiny graphs: exact clique-width decisions,
//! exhaustive maximum weight independent set and pattern search by subsets.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::kexpr::KExpr;
use crate::pattern::Pattern;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices; this oracle is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
}

pub const CW_VERTEX_CAP: usize = 8;
pub const MWIS_VERTEX_CAP: usize = 24;
pub const CONTAINS_VERTEX_CAP: usize = 12;

#[derive(Debug, Clone)]
pub struct CwDecision {
    pub k: usize,
    pub answer: bool,
    pub certificate: Option<KExpr>,
}

/// Sorted label classes of a partial construction, as vertex bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    set: u16,
    classes: Vec<u16>,
}

#[derive(Debug, Clone)]
enum Origin {
    Create(usize),
    Union { left: State, right: State },
    /// Classes `i < j` of `from` merged by a relabel.
    Merge { from: State, i: usize, j: usize },
}

struct CwSearch<'a> {
    g: &'a Graph,
    k: usize,
    nbr: Vec<u16>,
    full: u16,
    origin: HashMap<State, Origin>,
}

fn bit_iter(mask: u16) -> impl Iterator<Item = usize> {
    (0..16).filter(move |i| mask >> i & 1 == 1)
}

impl CwSearch<'_> {
    /// Every class is seen uniformly by each vertex outside the state.
    fn outside_modules(&self, st: &State) -> bool {
        let outside = self.full & !st.set;
        bit_iter(outside).all(|w| {
            st.classes.iter().all(|&c| {
                let seen = self.nbr[w] & c;
                seen == 0 || seen == c
            })
        })
    }

    fn complete(&self, a: u16, b: u16) -> bool {
        bit_iter(a).all(|u| self.nbr[u] & b == b)
    }

    /// After a union every crossing edge must be produced by joining two
    /// classes that are complete to each other in `g`.
    fn crossing_edges_realizable(&self, left: u16, right: u16, classes: &[u16]) -> bool {
        let class_of = |v: usize| classes.iter().position(|&c| c >> v & 1 == 1).unwrap();
        for u in bit_iter(left) {
            for v in bit_iter(self.nbr[u] & right) {
                let (cu, cv) = (class_of(u), class_of(v));
                if cu == cv || !self.complete(classes[cu], classes[cv]) {
                    return false;
                }
            }
        }
        true
    }

    fn record(&mut self, st: State, how: Origin, layer: &mut Vec<State>) {
        if !self.origin.contains_key(&st) {
            self.origin.insert(st.clone(), how);
            layer.push(st);
        }
    }

    fn unions(&mut self, a: &State, b: &State, out: &mut Vec<State>) {
        let (m, r) = (a.classes.len(), b.classes.len());
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut used = vec![false; r];
        self.matchings(a, b, 0, m, r, &mut pairs, &mut used, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn matchings(
        &mut self,
        a: &State,
        b: &State,
        i: usize,
        m: usize,
        r: usize,
        pairs: &mut Vec<(usize, usize)>,
        used: &mut [bool],
        out: &mut Vec<State>,
    ) {
        if i == m {
            if m + r - pairs.len() > self.k {
                return;
            }
            let mut classes: Vec<u16> = Vec::with_capacity(m + r);
            let mut right_taken = vec![false; r];
            for ai in 0..m {
                match pairs.iter().find(|p| p.0 == ai) {
                    Some(&(_, bj)) => {
                        classes.push(a.classes[ai] | b.classes[bj]);
                        right_taken[bj] = true;
                    }
                    None => classes.push(a.classes[ai]),
                }
            }
            for bj in 0..r {
                if !right_taken[bj] {
                    classes.push(b.classes[bj]);
                }
            }
            classes.sort_unstable();
            let st = State { set: a.set | b.set, classes };
            if self.outside_modules(&st) && self.crossing_edges_realizable(a.set, b.set, &st.classes) {
                let how = Origin::Union { left: a.clone(), right: b.clone() };
                self.record(st, how, out);
            }
            return;
        }
        // class i unmatched
        self.matchings(a, b, i + 1, m, r, pairs, used, out);
        for j in 0..r {
            if !used[j] {
                used[j] = true;
                pairs.push((i, j));
                self.matchings(a, b, i + 1, m, r, pairs, used, out);
                pairs.pop();
                used[j] = false;
            }
        }
    }

    fn merge_closure(&mut self, layer: &mut Vec<State>) {
        let mut idx = 0;
        while idx < layer.len() {
            let st = layer[idx].clone();
            idx += 1;
            let c = st.classes.len();
            for i in 0..c {
                for j in i + 1..c {
                    let mut classes: Vec<u16> = st
                        .classes
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != i && t != j)
                        .map(|(_, &x)| x)
                        .collect();
                    classes.push(st.classes[i] | st.classes[j]);
                    classes.sort_unstable();
                    let next = State { set: st.set, classes };
                    if self.outside_modules(&next) {
                        self.record(next, Origin::Merge { from: st.clone(), i, j }, layer);
                    }
                }
            }
        }
    }

    fn run(&mut self) -> Option<State> {
        let n = self.g.n();
        let mut layers: Vec<Vec<State>> = vec![Vec::new(); n + 1];
        for v in 0..n {
            let st = State { set: 1 << v, classes: vec![1 << v] };
            let mut l = std::mem::take(&mut layers[1]);
            self.record(st, Origin::Create(v), &mut l);
            layers[1] = l;
        }
        let mut l1 = std::mem::take(&mut layers[1]);
        self.merge_closure(&mut l1);
        layers[1] = l1;
        for s in 2..=n {
            let mut cur = Vec::new();
            for a in 1..=s / 2 {
                let (la, lb) = (layers[a].clone(), layers[s - a].clone());
                for x in &la {
                    for y in &lb {
                        if x.set & y.set != 0 || (a == s - a && x.set > y.set) {
                            continue;
                        }
                        self.unions(x, y, &mut cur);
                    }
                }
            }
            self.merge_closure(&mut cur);
            if s == n {
                return cur.into_iter().next();
            }
            layers[s] = cur;
        }
        None
    }

    fn build(&self, st: &State, labels: &[u32]) -> KExpr {
        match &self.origin[st] {
            Origin::Create(v) => KExpr::create(labels[0], self.g.id(*v)),
            Origin::Merge { from, i, j } => {
                let merged = from.classes[*i] | from.classes[*j];
                let target_of = |c: u16| st.classes.iter().position(|&x| x & c == c).unwrap();
                let target_label = labels[target_of(merged)];
                let spare = (1..=self.k as u32).find(|l| !labels.contains(l)).expect("a spare label");
                let from_labels: Vec<u32> = from
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(t, &c)| if t == *j { spare } else { labels[target_of(c)] })
                    .collect();
                self.build(from, &from_labels).relabel(spare, target_label)
            }
            Origin::Union { left, right } => {
                let target_of = |c: u16| st.classes.iter().position(|&x| x & c == c).unwrap();
                let ll: Vec<u32> = left.classes.iter().map(|&c| labels[target_of(c)]).collect();
                let rl: Vec<u32> = right.classes.iter().map(|&c| labels[target_of(c)]).collect();
                let mut e = KExpr::union(self.build(left, &ll), self.build(right, &rl));
                for (x, &cx) in st.classes.iter().enumerate() {
                    for (y, &cy) in st.classes.iter().enumerate().skip(x + 1) {
                        let crosses = (cx & left.set != 0 && cy & right.set != 0)
                            || (cx & right.set != 0 && cy & left.set != 0);
                        if crosses && self.complete(cx, cy) {
                            e = e.join(labels[x], labels[y]);
                        }
                    }
                }
                e
            }
        }
    }
}

/// One label per vertex, every edge joined directly.
fn trivial_certificate(g: &Graph) -> Option<KExpr> {
    let e = KExpr::union_all((0..g.n()).map(|v| KExpr::create(v as u32 + 1, g.id(v))))?;
    Some(g.edges().fold(e, |e, (u, v)| e.join(u as u32 + 1, v as u32 + 1)))
}

/// Decides whether `g` has an expression with at most `k` labels.
///
/// States are partial constructions: a vertex subset together with its label
/// classes (label names forgotten). Joins are applied as soon as they are
/// safe, so a state is alive only if its induced subgraph is already exact
/// and each class is seen uniformly from outside.
pub fn exact_cw_leq(g: &Graph, k: usize) -> Result<CwDecision, OracleError> {
    let n = g.n();
    if n > CW_VERTEX_CAP {
        return Err(OracleError::TooLarge { n, cap: CW_VERTEX_CAP });
    }
    if n == 0 || k == 0 {
        return Ok(CwDecision { k, answer: n == 0, certificate: None });
    }
    if k >= n {
        return Ok(CwDecision { k, answer: true, certificate: trivial_certificate(g) });
    }
    let nbr: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w))
        .collect();
    let mut search = CwSearch { g, k, nbr, full: ((1u32 << n) - 1) as u16, origin: HashMap::new() };
    let goal = search.run();
    let certificate = goal.map(|st| {
        let labels: Vec<u32> = (1..=st.classes.len() as u32).collect();
        search.build(&st, &labels)
    });
    Ok(CwDecision { k, answer: certificate.is_some(), certificate })
}

/// Exact maximum weight independent set by branch and bound.
pub fn brute_mwis(g: &Graph, w: &dyn Fn(&VertexId) -> u64) -> Result<(u64, Vec<VertexId>), OracleError> {
    let n = g.n();
    if n > MWIS_VERTEX_CAP {
        return Err(OracleError::TooLarge { n, cap: MWIS_VERTEX_CAP });
    }
    let weights: Vec<u64> = (0..n).map(|v| w(g.id(v))).collect();
    let suffix: Vec<u64> = (0..=n).map(|i| weights[i..].iter().sum()).collect();
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &x| m | 1 << x))
        .collect();
    let mut best = (0u64, 0u32);
    fn go(i: usize, chosen: u32, weight: u64, n: usize, ws: &[u64], suffix: &[u64], nbr: &[u32], best: &mut (u64, u32)) {
        if weight > best.0 {
            *best = (weight, chosen);
        }
        if i == n || weight + suffix[i] <= best.0 {
            return;
        }
        if chosen & nbr[i] == 0 {
            go(i + 1, chosen | 1 << i, weight + ws[i], n, ws, suffix, nbr, best);
        }
        go(i + 1, chosen, weight, n, ws, suffix, nbr, best);
    }
    go(0, 0, 0, n, &weights, &suffix, &nbr, &mut best);
    let set = (0..n).filter(|&v| best.1 >> v & 1 == 1).map(|v| g.id(v).clone()).collect();
    Ok((best.0, set))
}

/// Pattern containment by testing every vertex subset of the pattern's size
/// against every bijection onto the pattern.
pub fn brute_contains(g: &Graph, p: &Pattern) -> Result<bool, OracleError> {
    let n = g.n();
    if n > CONTAINS_VERTEX_CAP {
        return Err(OracleError::TooLarge { n, cap: CONTAINS_VERTEX_CAP });
    }
    let k = p.size();
    if k > n {
        return Ok(false);
    }
    let padj = p.adjacency();
    let pedges = p.edges.len();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let m = vs.iter().enumerate().flat_map(|(i, &a)| vs[i + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| g.adjacent(a, b))
            .count();
        if m != pedges {
            continue;
        }
        let mut perm: Vec<usize> = (0..k).collect();
        if permutations_any(&mut perm, 0, &mut |perm| {
            (0..k).all(|a| (a + 1..k).all(|b| g.adjacent(vs[perm[a]], vs[perm[b]]) == padj[a][b]))
        }) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn permutations_any(perm: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if i == perm.len() {
        return f(perm);
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        if permutations_any(perm, i + 1, f) {
            perm.swap(i, j);
            return true;
        }
        perm.swap(i, j);
    }
    false
}
