//! Bipartite chain graphs and 3-chain graphs: recognition and expressions.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::kexpr::KExpr;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("sides are not a bipartition: {0}")]
    NotBipartition(String),
    #[error("not a 3-chain: {0}")]
    NotThreeChain(String),
}

/// Nested-neighbourhood order of a bipartite chain graph between `X` and `Y`.
///
/// `x_blocks` groups twins of `X` by neighbourhood, ordered by strict
/// inclusion; `y_new[j]` holds the vertices of `Y` first covered by block `j`.
/// `y_isolated` has no neighbour in `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainOrder {
    pub x_blocks: Vec<Vec<VertexId>>,
    pub y_new: Vec<Vec<VertexId>>,
    pub y_isolated: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainVerdict {
    Chain(ChainOrder),
    /// `x1-y1` and `x2-y2` form an induced 2P2 with one edge per side.
    TwoP2 { x1: usize, y1: usize, x2: usize, y2: usize },
}

impl ChainOrder {
    /// `X` in nesting order (smallest neighbourhood first).
    pub fn x_order(&self) -> Vec<VertexId> {
        self.x_blocks.iter().flatten().cloned().collect()
    }

    /// 1-based index of the last block whose vertices `z` is adjacent to, 0 if none.
    pub fn threshold(&self, g: &Graph, z: &VertexId) -> usize {
        self.x_blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.iter().any(|x| g.has_edge(z, x)))
            .map(|(j, _)| j + 1)
            .max()
            .unwrap_or(0)
    }

    /// True if `z`'s neighbours in `X` are exactly the blocks `threshold..` downwards
    /// in strict nesting order: `z ~ X_j` implies `z ~ X_i` for every `i < j`
    /// where `N(X_i)` is strictly smaller.
    pub fn prefix_property(&self, g: &Graph, z: &VertexId) -> bool {
        let t = self.threshold(g, z);
        self.x_blocks[..t.saturating_sub(1)]
            .iter()
            .all(|b| b.iter().all(|x| g.has_edge(z, x)))
    }
}

fn neighbourhood_in(g: &Graph, v: usize, side: &FixedBitSet) -> FixedBitSet {
    let mut s = g.row(v).clone();
    s.intersect_with(side);
    s
}

fn bits(n: usize, set: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for &v in set {
        b.insert(v);
    }
    b
}

fn check_independent(g: &Graph, set: &[usize], name: &str) -> Result<(), ChainError> {
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            if g.adjacent(a, b) {
                return Err(ChainError::NotBipartition(format!(
                    "{name} has edge {}-{}",
                    g.id(a),
                    g.id(b)
                )));
            }
        }
    }
    Ok(())
}

/// Recognizes a chain graph between the disjoint independent sets `x` and `y`.
pub fn recognize_chain(g: &Graph, x: &[usize], y: &[usize]) -> Result<ChainVerdict, ChainError> {
    let xb = bits(g.n(), x);
    if y.iter().any(|&v| xb.contains(v)) {
        return Err(ChainError::NotBipartition("sides overlap".into()));
    }
    check_independent(g, x, "X")?;
    check_independent(g, y, "Y")?;
    let yb = bits(g.n(), y);
    let mut xs: Vec<(usize, FixedBitSet)> = x.iter().map(|&v| (v, neighbourhood_in(g, v, &yb))).collect();
    // by size, then by id (index order follows id order)
    xs.sort_by(|a, b| a.1.count_ones(..).cmp(&b.1.count_ones(..)).then(a.0.cmp(&b.0)));
    for w in xs.windows(2) {
        let (a, na) = (&w[0].0, &w[0].1);
        let (b, nb) = (&w[1].0, &w[1].1);
        if !na.is_subset(nb) {
            let y1 = na.difference(nb).next().unwrap();
            let y2 = nb.difference(na).next().unwrap();
            return Ok(ChainVerdict::TwoP2 { x1: *a, y1, x2: *b, y2 });
        }
    }
    let mut x_blocks: Vec<Vec<VertexId>> = Vec::new();
    let mut y_new: Vec<Vec<VertexId>> = Vec::new();
    let mut covered = FixedBitSet::with_capacity(g.n());
    let mut last: Option<&FixedBitSet> = None;
    for (v, nv) in &xs {
        if last == Some(nv) {
            x_blocks.last_mut().unwrap().push(g.id(*v).clone());
            continue;
        }
        x_blocks.push(vec![g.id(*v).clone()]);
        y_new.push(nv.difference(&covered).map(|u| g.id(u).clone()).collect());
        covered.union_with(nv);
        last = Some(nv);
    }
    let y_isolated = y.iter().filter(|&&u| !covered.contains(u)).map(|&u| g.id(u).clone()).collect();
    Ok(ChainVerdict::Chain(ChainOrder { x_blocks, y_new, y_isolated }))
}

/// Labels used by a chain expression: final labels of the two sides and one
/// scratch label for the block being attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainPalette {
    pub x: u32,
    pub y: u32,
    pub scratch: u32,
}

impl Default for ChainPalette {
    fn default() -> Self {
        ChainPalette { x: 1, y: 2, scratch: 3 }
    }
}

/// Expression for the chain graph with `X` ending on `pal.x` and `Y` on `pal.y`.
///
/// Blocks are attached in increasing neighbourhood order: the `Y` vertices a
/// block newly covers are created on `pal.y`, the block itself on
/// `pal.scratch`, joined to everything on `pal.y`, then parked on `pal.x`.
/// `None` for an empty graph.
pub fn build_chain_expr(order: &ChainOrder, pal: ChainPalette) -> Option<KExpr> {
    let mut acc: Option<KExpr> = None;
    let push = |acc: Option<KExpr>, e: KExpr| Some(match acc {
        Some(a) => KExpr::union(a, e),
        None => e,
    });
    let mut covered = false;
    for (block, fresh_y) in order.x_blocks.iter().zip(&order.y_new) {
        for y in fresh_y {
            acc = push(acc, KExpr::create(pal.y, y));
        }
        covered |= !fresh_y.is_empty();
        if covered {
            let attached = KExpr::union_all(block.iter().map(|x| KExpr::create(pal.scratch, x))).unwrap();
            acc = push(acc, attached);
            acc = acc.map(|e| e.join(pal.scratch, pal.y).relabel(pal.scratch, pal.x));
        } else {
            for x in block {
                acc = push(acc, KExpr::create(pal.x, x));
            }
        }
    }
    for y in &order.y_isolated {
        acc = push(acc, KExpr::create(pal.y, y));
    }
    acc
}

/// A 3-chain graph with its forced numbering `a_i, b_i, c_i` (0-based here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeChain {
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
    pub c: Vec<VertexId>,
}

impl ThreeChain {
    pub fn p(&self) -> usize {
        self.a.len()
    }
}

/// Recognizes a 3-chain with parts `A`, `B`, `C`; the numbering is read off
/// the degrees of `A` into `B`, which must be exactly `1..=p`.
pub fn recognize_3chain(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> Result<Option<ThreeChain>, ChainError> {
    let p = a.len();
    if b.len() != p || c.len() != p {
        return Err(ChainError::NotThreeChain(format!(
            "part sizes {}, {}, {} differ",
            a.len(),
            b.len(),
            c.len()
        )));
    }
    let (bb, cb) = (bits(g.n(), b), bits(g.n(), c));
    let mut a_sorted: Vec<usize> = a.to_vec();
    a_sorted.sort_by_key(|&v| (neighbourhood_in(g, v, &bb).count_ones(..), v));
    // b_i is the vertex a_i newly sees in B
    let mut b_ord = Vec::with_capacity(p);
    let mut seen = FixedBitSet::with_capacity(g.n());
    for &av in &a_sorted {
        let nb = neighbourhood_in(g, av, &bb);
        let fresh: Vec<usize> = nb.difference(&seen).collect();
        if fresh.len() != 1 {
            return Ok(None);
        }
        b_ord.push(fresh[0]);
        seen.union_with(&nb);
    }
    // c_i is seen by a_i but not by a_{i+1}; c_p is seen by a_p
    let mut c_ord = Vec::with_capacity(p);
    for i in 0..p {
        let ni = neighbourhood_in(g, a_sorted[i], &cb);
        let rest: Vec<usize> = if i + 1 < p {
            ni.difference(&neighbourhood_in(g, a_sorted[i + 1], &cb)).collect()
        } else {
            ni.ones().collect()
        };
        if rest.len() != 1 {
            return Ok(None);
        }
        c_ord.push(rest[0]);
    }
    let mut all = a_sorted.clone();
    all.extend(&b_ord);
    all.extend(&c_ord);
    let mut uniq = all.clone();
    uniq.sort_unstable();
    uniq.dedup();
    if uniq.len() != 3 * p {
        return Ok(None);
    }
    for part in [&a_sorted, &b_ord, &c_ord] {
        for (i, &u) in part.iter().enumerate() {
            if part[i + 1..].iter().any(|&v| g.adjacent(u, v)) {
                return Ok(None);
            }
        }
    }
    for i in 0..p {
        for j in 0..p {
            let ab = j <= i;
            let ac = j >= i;
            let cb_edge = j > i;
            if g.adjacent(a_sorted[i], b_ord[j]) != ab
                || g.adjacent(a_sorted[i], c_ord[j]) != ac
                || g.adjacent(c_ord[i], b_ord[j]) != cb_edge
            {
                return Ok(None);
            }
        }
    }
    let ids = |v: &[usize]| v.iter().map(|&x| g.id(x).clone()).collect();
    Ok(Some(ThreeChain { a: ids(&a_sorted), b: ids(&b_ord), c: ids(&c_ord) }))
}

/// The six-label construction: labels `base+1 ..= base+6` play `l1..l6`.
pub fn build_3chain_expr_with(t: &ThreeChain, base: u32) -> Option<KExpr> {
    let l = |k: u32| base + k;
    if t.p() == 0 {
        return None;
    }
    let mut e = KExpr::union(
        KExpr::union(KExpr::create(l(1), &t.a[0]), KExpr::create(l(2), &t.b[0])),
        KExpr::create(l(3), &t.c[0]),
    )
    .join(l(1), l(2))
    .join(l(1), l(3));
    for i in 1..t.p() {
        let fresh = KExpr::union(
            KExpr::union(KExpr::create(l(4), &t.a[i]), KExpr::create(l(5), &t.b[i])),
            KExpr::create(l(6), &t.c[i]),
        );
        e = KExpr::union(e, fresh)
            .join(l(4), l(2))
            .join(l(4), l(5))
            .join(l(4), l(6))
            .join(l(1), l(6))
            .join(l(5), l(3))
            .relabel(l(4), l(1))
            .relabel(l(5), l(2))
            .relabel(l(6), l(3));
    }
    Some(e)
}

pub fn build_3chain_expr(t: &ThreeChain) -> Option<KExpr> {
    build_3chain_expr_with(t, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kexpr::{eval, width};

    fn g(pairs: &[(&str, &str)], iso: &[&str]) -> Graph {
        Graph::from_strs(pairs, iso).unwrap()
    }

    fn idx(g: &Graph, names: &[&str]) -> Vec<usize> {
        names.iter().map(|s| g.index_of(&VertexId::new(*s).unwrap()).unwrap()).collect()
    }

    fn round_trip(gr: &Graph, x: &[&str], y: &[&str]) -> KExpr {
        let verdict = recognize_chain(gr, &idx(gr, x), &idx(gr, y)).unwrap();
        let ChainVerdict::Chain(order) = verdict else { panic!("expected a chain graph") };
        let e = build_chain_expr(&order, ChainPalette::default()).unwrap();
        assert_eq!(eval(&e).unwrap().graph, *gr);
        assert!(width(&e).width <= 3);
        e
    }

    #[test]
    fn two_p2_rejected() {
        let gr = g(&[("x", "y"), ("xx", "yy")], &[]);
        let v = recognize_chain(&gr, &idx(&gr, &["x", "xx"]), &idx(&gr, &["y", "yy"])).unwrap();
        assert!(matches!(v, ChainVerdict::TwoP2 { .. }));
    }

    #[test]
    fn k23_is_chain() {
        let gr = g(
            &[("x1", "y1"), ("x1", "y2"), ("x1", "y3"), ("x2", "y1"), ("x2", "y2"), ("x2", "y3")],
            &[],
        );
        let verdict = recognize_chain(&gr, &idx(&gr, &["x1", "x2"]), &idx(&gr, &["y1", "y2", "y3"])).unwrap();
        let ChainVerdict::Chain(order) = verdict else { panic!() };
        assert_eq!(order.x_blocks.len(), 1);
        round_trip(&gr, &["x1", "x2"], &["y1", "y2", "y3"]);
    }

    #[test]
    fn single_edge_and_isolated() {
        round_trip(&g(&[("x", "y")], &[]), &["x"], &["y"]);
        round_trip(&g(&[("x", "y")], &["x0", "y0"]), &["x", "x0"], &["y", "y0"]);
        round_trip(&g(&[], &["x0", "y0"]), &["x0"], &["y0"]);
    }

    #[test]
    fn not_independent() {
        let gr = g(&[("x", "xx"), ("x", "y")], &[]);
        assert!(recognize_chain(&gr, &idx(&gr, &["x", "xx"]), &idx(&gr, &["y"])).is_err());
    }

    fn three_chain_p2() -> Graph {
        g(
            &[
                ("a1", "b1"),
                ("a2", "b1"),
                ("a2", "b2"),
                ("a1", "c1"),
                ("a1", "c2"),
                ("a2", "c2"),
                ("c1", "b2"),
            ],
            &[],
        )
    }

    #[test]
    fn three_chain_p1() {
        let gr = g(&[("a1", "b1"), ("a1", "c1")], &[]);
        let t = recognize_3chain(&gr, &idx(&gr, &["a1"]), &idx(&gr, &["b1"]), &idx(&gr, &["c1"]))
            .unwrap()
            .unwrap();
        let e = build_3chain_expr(&t).unwrap();
        assert_eq!(eval(&e).unwrap().graph, gr);
    }

    #[test]
    fn three_chain_p2_accepted_and_built() {
        let gr = three_chain_p2();
        let t = recognize_3chain(
            &gr,
            &idx(&gr, &["a1", "a2"]),
            &idx(&gr, &["b1", "b2"]),
            &idx(&gr, &["c1", "c2"]),
        )
        .unwrap()
        .unwrap();
        let e = build_3chain_expr(&t).unwrap();
        assert_eq!(eval(&e).unwrap().graph, gr);
        assert_eq!(width(&e).width, 6);
    }

    #[test]
    fn three_chain_extra_edge_rejected() {
        let base = three_chain_p2();
        let mut pairs = base.edge_ids();
        pairs.push((VertexId::new("c2").unwrap(), VertexId::new("b1").unwrap()));
        let gr = Graph::from_edge_list(&pairs, &[]).unwrap();
        let r = recognize_3chain(
            &gr,
            &idx(&gr, &["a1", "a2"]),
            &idx(&gr, &["b1", "b2"]),
            &idx(&gr, &["c1", "c2"]),
        )
        .unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn three_chain_unequal_sizes() {
        let gr = g(&[("a1", "b1"), ("a1", "c1")], &["b2"]);
        assert!(recognize_3chain(&gr, &idx(&gr, &["a1"]), &idx(&gr, &["b1", "b2"]), &idx(&gr, &["c1"])).is_err());
    }
}
