//! Members made of a `both` set `Z` and two chord parts `A`, `B`: the
//! staircase block structure and the seven-colour labelling built on it.

use super::rel::{anticomplete, cat, chain, complete, contacts, Rel};
use super::{violation, C5Error};
use crate::chain::{build_chain_expr, recognize_chain, ChainPalette, ChainVerdict};
use crate::graph::Graph;
use crate::kexpr::KExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum F2Kind {
    /// All three sides empty.
    Empty,
    /// At least one side empty; the rest is a chain bipartite graph.
    ChainBipartite,
    /// `A` anticomplete to `B`; `Z` splits into `z_a` (complete to `A`) and
    /// `z_b` (complete to `B`).
    Split,
    /// `A`, `B`, `Z` nonempty with `p ≥ 1` blocks.
    Staircase,
}

impl F2Kind {
    pub fn tag(self) -> &'static str {
        match self {
            F2Kind::Empty => "empty",
            F2Kind::ChainBipartite => "degenerate: chain-bipartite",
            F2Kind::Split => "degenerate: split",
            F2Kind::Staircase => "staircase",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Structure {
    pub kind: F2Kind,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub z: Vec<usize>,
    pub p: usize,
    /// `a_blocks[0]` is `A_0` (no neighbour in `B`); `a_blocks[i]`, `i ≥ 1`,
    /// are twin classes ordered by growing neighbourhood in `B`.
    pub a_blocks: Vec<Vec<usize>>,
    /// `b_blocks[0]` is `B_0`; `A_i` is complete to `B_j` iff `i + j ≥ p + 1`.
    pub b_blocks: Vec<Vec<usize>>,
    /// `Z` vertices without neighbours in `A`.
    pub z_star: Vec<usize>,
    /// `z_minus[i]`: highest `A` block contacted is `i`, with a non-neighbour in it.
    pub z_minus: Vec<Vec<usize>>,
    /// `z_plus[i]`: highest `A` block contacted is `i`, complete to it.
    pub z_plus: Vec<Vec<usize>>,
    pub z_a: Vec<usize>,
    pub z_b: Vec<usize>,
}

fn blocks(bl: &[Vec<usize>], lo: usize, hi: isize) -> Vec<usize> {
    if hi < lo as isize {
        return Vec::new();
    }
    let hi = (hi as usize).min(bl.len().saturating_sub(1));
    cat(&bl[lo..=hi].iter().map(|v| v.as_slice()).collect::<Vec<_>>())
}

pub fn analyze_f2(g: &Graph, a: &[usize], b: &[usize], z: &[usize]) -> Result<F2Structure, C5Error> {
    let mut s = F2Structure {
        kind: F2Kind::Empty,
        a: a.to_vec(),
        b: b.to_vec(),
        z: z.to_vec(),
        p: 0,
        a_blocks: Vec::new(),
        b_blocks: Vec::new(),
        z_star: Vec::new(),
        z_minus: Vec::new(),
        z_plus: Vec::new(),
        z_a: Vec::new(),
        z_b: Vec::new(),
    };
    if a.is_empty() && b.is_empty() && z.is_empty() {
        return Ok(s);
    }
    if a.is_empty() || b.is_empty() || z.is_empty() {
        s.kind = F2Kind::ChainBipartite;
        return Ok(s);
    }
    let a0: Vec<usize> = a.iter().copied().filter(|&x| !contacts(g, x, b)).collect();
    let b0: Vec<usize> = b.iter().copied().filter(|&y| !contacts(g, y, a)).collect();
    if a0.len() == a.len() {
        s.kind = F2Kind::Split;
        s.a_blocks = vec![a0];
        s.b_blocks = vec![b0];
        for &x in z {
            if a.iter().all(|&y| g.adjacent(x, y)) {
                s.z_a.push(x);
            } else {
                s.z_b.push(x);
            }
        }
        return Ok(s);
    }
    let nb = |x: usize| -> Vec<usize> { b.iter().copied().filter(|&y| g.adjacent(x, y)).collect() };
    let mut rest: Vec<(usize, Vec<usize>)> = a.iter().copied().filter(|x| !a0.contains(x)).map(|x| (x, nb(x))).collect();
    rest.sort_by(|x, y| x.1.len().cmp(&y.1.len()).then(x.0.cmp(&y.0)));
    let mut a_blocks: Vec<Vec<usize>> = vec![a0];
    let mut nbhds: Vec<Vec<usize>> = vec![Vec::new()];
    for (x, n) in rest {
        if nbhds.len() > 1 && *nbhds.last().unwrap() == n {
            a_blocks.last_mut().unwrap().push(x);
            continue;
        }
        let prev = nbhds.last().unwrap();
        if let Some(&y) = prev.iter().find(|y| !n.contains(y)) {
            let x_prev = *a_blocks.last().unwrap().first().unwrap();
            let y2 = *n.iter().find(|v| !prev.contains(v)).unwrap();
            return Err(violation(g, "f2-a-b-chain", &[x_prev, y, x, y2]));
        }
        a_blocks.push(vec![x]);
        nbhds.push(n);
    }
    let p = a_blocks.len() - 1;
    let mut b_blocks: Vec<Vec<usize>> = vec![Vec::new(); p + 1];
    b_blocks[0] = b0;
    for i in 1..=p {
        b_blocks[p + 1 - i] = nbhds[i].iter().copied().filter(|y| !nbhds[i - 1].contains(y)).collect();
    }
    s.kind = F2Kind::Staircase;
    s.p = p;
    s.z_minus = vec![Vec::new(); p + 1];
    s.z_plus = vec![Vec::new(); p + 1];
    for &x in z {
        match (0..=p).rev().find(|&i| contacts(g, x, &a_blocks[i])) {
            None => s.z_star.push(x),
            Some(i) => {
                if a_blocks[i].iter().all(|&y| g.adjacent(x, y)) {
                    s.z_plus[i].push(x);
                } else {
                    s.z_minus[i].push(x);
                }
            }
        }
    }
    s.a_blocks = a_blocks;
    s.b_blocks = b_blocks;
    Ok(s)
}

/// First failure among `parts`, reported under `name`.
fn all(name: String, parts: Vec<Rel>) -> Rel {
    match parts.into_iter().find(|r| !r.pass) {
        Some(r) => Rel::fail(name, r.witness),
        None => Rel::ok(name),
    }
}

/// Relations of one member; `tag` prefixes every name.
pub fn f2_relations(g: &Graph, s: &F2Structure, tag: &str) -> Vec<Rel> {
    let n = |x: &str| format!("{tag}.{x}");
    let mut out = Vec::new();
    match s.kind {
        F2Kind::Empty => {}
        F2Kind::ChainBipartite => {
            let (x, y) = match (s.z.is_empty(), s.a.is_empty()) {
                (true, _) => (&s.a, &s.b),
                (false, true) => (&s.z, &s.b),
                (false, false) => (&s.z, &s.a),
            };
            out.push(chain(n("two-sided-chain"), g, x, y));
        }
        F2Kind::Split => {
            out.push(anticomplete(n("a-b-anticomplete"), g, &s.a, &s.b));
            out.push(complete(n("split-zb-complete-b"), g, &s.z_b, &s.b));
            out.push(chain(n("split-za-b-chain"), g, &s.z_a, &s.b));
            out.push(chain(n("split-zb-a-chain"), g, &s.z_b, &s.a));
        }
        F2Kind::Staircase => staircase_relations(g, s, &n, &mut out),
    }
    out
}

fn staircase_relations(g: &Graph, s: &F2Structure, n: &dyn Fn(&str) -> String, out: &mut Vec<Rel>) {
    let p = s.p;
    let (ab, bb) = (&s.a_blocks, &s.b_blocks);
    let pi = p as isize;
    out.push(all(
        n("a0-b0-anticomplete"),
        vec![anticomplete("", g, &ab[0], &s.b), anticomplete("", g, &bb[0], &s.a)],
    ));
    let mut stair_a = Vec::new();
    let mut stair_b = Vec::new();
    for i in 1..=p {
        let h = p + 1 - i;
        stair_a.push(anticomplete("", g, &ab[i], &blocks(bb, 0, h as isize - 1)));
        stair_a.push(complete("", g, &ab[i], &blocks(bb, h, pi)));
        stair_b.push(anticomplete("", g, &bb[i], &blocks(ab, 0, h as isize - 1)));
        stair_b.push(complete("", g, &bb[i], &blocks(ab, h, pi)));
    }
    out.push(all(n("a-staircase"), stair_a));
    out.push(all(n("b-staircase"), stair_b));
    let covered = cat(&bb.iter().map(|v| v.as_slice()).collect::<Vec<_>>());
    let nonempty = (1..=p).all(|i| !ab[i].is_empty() && !bb[i].is_empty());
    out.push(if nonempty && covered.len() == s.b.len() {
        Rel::ok(n("block-duality"))
    } else {
        Rel::fail(n("block-duality"), s.b.clone())
    });
    let zi = |i: usize| cat(&[&s.z_minus[i], &s.z_plus[i]]);
    let mut lower_a = Vec::new();
    let mut upper_b = Vec::new();
    let mut lower_b = Vec::new();
    let mut minus_b = Vec::new();
    let mut plus_a = Vec::new();
    for i in 0..=p {
        let h = (p + 1 - i) as isize;
        if i >= 1 {
            lower_a.push(complete("", g, &zi(i), &blocks(ab, 0, i as isize - 1)));
            upper_b.push(anticomplete("", g, &zi(i), &blocks(bb, h as usize, pi)));
        }
        lower_b.push(complete("", g, &zi(i), &blocks(bb, 0, h - 2)));
        minus_b.push(complete("", g, &s.z_minus[i], &bb[(h - 1) as usize]));
        plus_a.push(complete("", g, &s.z_plus[i], &ab[i]));
    }
    out.push(all(n("z-complete-lower-a"), lower_a));
    out.push(all(n("z-anticomplete-upper-b"), upper_b));
    out.push(all(n("z-complete-lower-b"), lower_b));
    out.push(all(n("zminus-complete-b-partner"), minus_b));
    out.push(all(n("zplus-complete-own-a"), plus_a));
    out.push(all(
        n("z0minus-profile"),
        vec![
            anticomplete("", g, &s.z_minus[0], &blocks(ab, 1, pi)),
            complete("", g, &s.z_minus[0], &blocks(bb, 0, pi)),
            chain("", g, &s.z_minus[0], &ab[0]),
        ],
    ));
    out.push(all(
        n("z0plus-profile"),
        vec![
            anticomplete("", g, &s.z_plus[0], &blocks(ab, 1, pi)),
            complete("", g, &s.z_plus[0], &ab[0]),
            complete("", g, &s.z_plus[0], &blocks(bb, 0, pi - 1)),
            chain("", g, &s.z_plus[0], &bb[p]),
        ],
    ));
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for i in 1..=p {
        let h = p + 1 - i;
        let (zm, zp) = (&s.z_minus[i], &s.z_plus[i]);
        minus.push(anticomplete("", g, zm, &blocks(ab, i + 1, pi)));
        minus.push(anticomplete("", g, zm, &blocks(bb, h, pi)));
        minus.push(complete("", g, zm, &blocks(ab, 0, i as isize - 1)));
        minus.push(complete("", g, zm, &blocks(bb, 0, h as isize - 1)));
        minus.push(chain("", g, zm, &ab[i]));
        plus.push(anticomplete("", g, zp, &blocks(ab, i + 1, pi)));
        plus.push(anticomplete("", g, zp, &blocks(bb, h, pi)));
        plus.push(complete("", g, zp, &blocks(ab, 0, i as isize)));
        plus.push(complete("", g, zp, &blocks(bb, 0, h as isize - 2)));
        plus.push(chain("", g, zp, &bb[h - 1]));
    }
    out.push(all(n("zminus-profile"), minus));
    out.push(all(n("zplus-profile"), plus));
    if !s.z_star.is_empty() {
        let parts = if ab[0].is_empty() {
            vec![chain("", g, &s.z_star, &bb[p]), complete("", g, &s.z_star, &blocks(bb, 0, pi - 1))]
        } else {
            vec![complete("", g, &s.z_star, &s.b)]
        };
        out.push(all(n("zstar-profile"), parts));
    }
}

/// Chain expression with `x` ending on `lx` and `y` on `ly`.
pub(super) fn chain_expr(
    g: &Graph,
    x: &[usize],
    y: &[usize],
    pal: ChainPalette,
    clause: &str,
) -> Result<Option<KExpr>, C5Error> {
    match recognize_chain(g, x, y) {
        Ok(ChainVerdict::Chain(order)) => Ok(build_chain_expr(&order, pal)),
        Ok(ChainVerdict::TwoP2 { x1, y1, x2, y2 }) => Err(violation(g, clause, &[x1, y1, x2, y2])),
        Err(_) => Err(violation(g, clause, &cat(&[x, y]))),
    }
}

/// Partial expression that tolerates an empty start.
#[derive(Default)]
pub(super) struct Acc(pub Option<KExpr>);

impl Acc {
    pub fn add(&mut self, e: Option<KExpr>) {
        self.0 = match (self.0.take(), e) {
            (Some(a), Some(b)) => Some(KExpr::union(a, b)),
            (a, b) => a.or(b),
        };
    }

    pub fn join(&mut self, a: u32, b: u32) {
        self.0 = self.0.take().map(|e| e.join(a, b));
    }

    pub fn relabel(&mut self, from: u32, to: u32) {
        self.0 = self.0.take().map(|e| e.relabel(from, to));
    }
}

// Local labels: the member's sides Z, A, B end on 1, 2, 3.
const GREEN: u32 = 1;
const WHITE: u32 = 2;
const BLACK: u32 = 3;
const PALE_WHITE: u32 = 4;
const PALE_BLACK: u32 = 5;
const PALE_GREEN: u32 = 6;
const BLUE: u32 = 7;
const S1: u32 = 8;
const S2: u32 = 9;
const S3: u32 = 10;

fn pal(x: u32, y: u32, scratch: u32) -> ChainPalette {
    ChainPalette { x, y, scratch }
}

/// Expression for `G[Z ∪ A ∪ B]` on labels `1..=10` whose sides end on
/// labels 1 (`Z`), 2 (`A`) and 3 (`B`).
pub fn build_f2(g: &Graph, s: &F2Structure) -> Result<Option<KExpr>, C5Error> {
    let mut acc = Acc::default();
    match s.kind {
        F2Kind::Empty => {}
        F2Kind::ChainBipartite => {
            let e = if s.z.is_empty() {
                chain_expr(g, &s.a, &s.b, pal(WHITE, BLACK, 4), "f2-a-b-chain")?
            } else if s.a.is_empty() {
                chain_expr(g, &s.z, &s.b, pal(GREEN, BLACK, 4), "f2-z-b-chain")?
            } else {
                chain_expr(g, &s.z, &s.a, pal(GREEN, WHITE, 4), "f2-z-a-chain")?
            };
            acc.add(e);
        }
        F2Kind::Split => {
            acc.add(chain_expr(g, &s.z_a, &s.b, pal(PALE_WHITE, BLACK, S3), "f2-za-b-chain")?);
            acc.add(chain_expr(g, &s.z_b, &s.a, pal(PALE_BLACK, WHITE, S3), "f2-zb-a-chain")?);
            acc.join(PALE_WHITE, WHITE);
            acc.join(PALE_BLACK, BLACK);
            acc.relabel(PALE_WHITE, GREEN);
            acc.relabel(PALE_BLACK, GREEN);
        }
        F2Kind::Staircase => labeling(g, s, &mut acc)?,
    }
    Ok(acc.0)
}

/// The seven-colour procedure. When `A_0` is empty and `Z*` is not, `Z*`
/// waits on blue and is joined to each `B` block as that block arrives
/// (it is only chain-related to `B_p`, so a final blue-black join would add
/// too many edges). When `A_0` is nonempty, `Z*` is complete to `B` and is
/// added at the end.
fn labeling(g: &Graph, s: &F2Structure, acc: &mut Acc) -> Result<(), C5Error> {
    let p = s.p;
    let (ab, bb) = (&s.a_blocks, &s.b_blocks);
    let star_waits = !s.z_star.is_empty() && ab[0].is_empty();
    if star_waits {
        acc.add(chain_expr(g, &s.z_star, &bb[p], pal(S1, S3, PALE_GREEN), "f2-zstar-bp-chain")?);
        acc.relabel(S1, BLUE);
        acc.relabel(S3, BLACK);
    } else {
        acc.add(chain_expr(g, &ab[0], &s.z_minus[0], pal(S1, S2, S3), "f2-a0-z0minus-chain")?);
        acc.relabel(S1, WHITE);
        acc.add(chain_expr(g, &s.z_plus[0], &bb[p], pal(S1, S3, PALE_GREEN), "f2-z0plus-bp-chain")?);
        acc.relabel(S3, BLACK);
        acc.relabel(S2, PALE_GREEN);
        acc.join(PALE_GREEN, BLACK);
        acc.relabel(PALE_GREEN, GREEN);
        acc.relabel(S1, PALE_GREEN);
        acc.join(PALE_GREEN, WHITE);
        acc.relabel(PALE_GREEN, GREEN);
    }
    for k in 1..=p {
        let hb = p - k; // B_{h-1} with h = p + 1 - k
        acc.add(chain_expr(g, &ab[k], &s.z_minus[k], pal(S1, S2, S3), "f2-ak-zkminus-chain")?);
        acc.relabel(S1, PALE_WHITE);
        acc.join(PALE_WHITE, BLACK);
        acc.add(chain_expr(g, &s.z_plus[k], &bb[hb], pal(S1, S3, PALE_GREEN), "f2-zkplus-b-chain")?);
        acc.relabel(S3, PALE_BLACK);
        acc.join(PALE_BLACK, GREEN);
        if star_waits {
            acc.join(PALE_BLACK, BLUE);
        }
        acc.relabel(S2, PALE_GREEN);
        acc.join(PALE_GREEN, PALE_BLACK);
        acc.join(PALE_GREEN, WHITE);
        acc.relabel(PALE_GREEN, GREEN);
        acc.relabel(S1, PALE_GREEN);
        acc.join(PALE_GREEN, PALE_WHITE);
        acc.join(PALE_GREEN, WHITE);
        acc.relabel(PALE_GREEN, GREEN);
        acc.relabel(PALE_WHITE, WHITE);
        acc.relabel(PALE_BLACK, BLACK);
    }
    if !s.z_star.is_empty() && !star_waits {
        acc.add(KExpr::union_all(s.z_star.iter().map(|&v| KExpr::create(BLUE, g.id(v)))));
        acc.join(BLUE, BLACK);
    }
    acc.relabel(BLUE, GREEN);
    Ok(())
}
