//! Members, sides, the two-sided members' expressions and the final gluing.

use std::fmt;

use super::f2::{analyze_f2, build_f2, chain_expr, f2_relations, Acc, F2Structure};
use super::refine::{refine, refinement_relations, RefinedPartition};
use super::rel::{cat, chain, complete, contacts, non_edge, Rel};
use super::{
    at, classification_relations, classify, find_frame, first_failure, strip_constant_set, to_ids, violation,
    C5Classification, C5Error, Removed, SetRef,
};
use crate::chain::ChainPalette;
use crate::graph::Graph;
use crate::kexpr::{eval, width, KExpr, Label};

/// Announced label budget: 30 side labels plus one label per removed vertex
/// (five frame vertices and at most five lonely 1-vertices). Member scratch
/// labels reuse other members' side labels.
pub const C5_WIDTH_BUDGET: usize = 40;

const SIDE_LABELS: u32 = 30;
const MEMBER_LABELS: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideKind {
    Star,
    Left,
    Right,
    Both,
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Side {
    pub kind: SideKind,
    pub index: usize,
}

impl Side {
    pub fn vertices<'a>(&self, p: &'a RefinedPartition) -> &'a [usize] {
        let i = self.index;
        match self.kind {
            SideKind::Star => &p.star[i],
            SideKind::Left => &p.left[i],
            SideKind::Right => &p.right[i],
            SideKind::Both => &p.both[i],
            SideKind::Minus => &p.minus[i],
            SideKind::Plus => &p.plus[i],
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index;
        let chord = |f: &mut fmt::Formatter<'_>, tag: &str| write!(f, "I{tag}{},{}", i + 1, at(i, 2) + 1);
        match self.kind {
            SideKind::Star => chord(f, "*"),
            SideKind::Minus => chord(f, "-"),
            SideKind::Plus => chord(f, "+"),
            SideKind::Left => write!(f, "Ileft{}", i + 1),
            SideKind::Right => write!(f, "Iright{}", i + 1),
            SideKind::Both => write!(f, "Iboth{}", i + 1),
        }
    }
}

/// The ten members. `F1(i)` is `star(i) ∪ left(i-1) ∪ right(i+3)`;
/// `F2(i)` is `both(i) ∪ minus(i+1) ∪ plus(i+2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Member {
    F1(usize),
    F2(usize),
}

impl Member {
    pub fn all() -> [Member; 10] {
        std::array::from_fn(|m| if m < 5 { Member::F1(m) } else { Member::F2(m - 5) })
    }

    pub fn slot(self) -> usize {
        match self {
            Member::F1(i) => i,
            Member::F2(i) => 5 + i,
        }
    }

    pub fn sides(self) -> [Side; 3] {
        let s = |kind, index| Side { kind, index };
        match self {
            Member::F1(i) => [s(SideKind::Star, i), s(SideKind::Left, at(i, -1)), s(SideKind::Right, at(i, 3))],
            Member::F2(i) => [s(SideKind::Both, i), s(SideKind::Minus, at(i, 1)), s(SideKind::Plus, at(i, 2))],
        }
    }

    pub fn vertices(self, p: &RefinedPartition) -> Vec<usize> {
        let [a, b, c] = self.sides();
        cat(&[a.vertices(p), b.vertices(p), c.vertices(p)])
    }

    /// Global label of side `pos` (0, 1 or 2).
    pub fn side_label(self, pos: usize) -> u32 {
        3 * self.slot() as u32 + pos as u32 + 1
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Member::F1(i) => write!(f, "f1[{}]", i + 1),
            Member::F2(i) => write!(f, "f2[{}]", i + 1),
        }
    }
}

/// Star vertices of an F1 member split by which other side they contact;
/// vertices contacting neither go with the right side.
fn f1_split(g: &Graph, p: &RefinedPartition, i: usize) -> (Vec<usize>, Vec<usize>) {
    let [star, left, _] = Member::F1(i).sides();
    let (mut w, mut z) = (Vec::new(), Vec::new());
    for &x in star.vertices(p) {
        if contacts(g, x, left.vertices(p)) {
            z.push(x);
        } else {
            w.push(x);
        }
    }
    (w, z)
}

pub fn f1_relations(g: &Graph, p: &RefinedPartition, i: usize) -> Vec<Rel> {
    let m = Member::F1(i);
    let [_, left, right] = m.sides();
    let (w, z) = f1_split(g, p, i);
    vec![
        chain(format!("{m}.w-right-chain"), g, &w, right.vertices(p)),
        chain(format!("{m}.z-left-chain"), g, &z, left.vertices(p)),
        complete(format!("{m}.left-right-complete"), g, left.vertices(p), right.vertices(p)),
        super::rel::anticomplete(format!("{m}.z-right-anticomplete"), g, &z, right.vertices(p)),
    ]
}

/// Expression for an F1 member with star, left and right ending on local
/// labels 1, 2, 3 (scratch 4..=6).
pub fn build_f1(g: &Graph, p: &RefinedPartition, i: usize) -> Result<Option<KExpr>, C5Error> {
    let [_, left, right] = Member::F1(i).sides();
    let (w, z) = f1_split(g, p, i);
    let mut acc = Acc::default();
    acc.add(chain_expr(g, &w, right.vertices(p), ChainPalette { x: 4, y: 3, scratch: 6 }, "f1-w-right-chain")?);
    acc.add(chain_expr(g, &z, left.vertices(p), ChainPalette { x: 5, y: 2, scratch: 6 }, "f1-z-left-chain")?);
    acc.join(3, 2);
    acc.relabel(4, 1);
    acc.relabel(5, 1);
    Ok(acc.0)
}

/// Moves a member expression from local labels onto global ones: sides to
/// the member's side labels, scratch onto other members' side labels.
fn place(e: &KExpr, m: Member) -> KExpr {
    let own: Vec<u32> = (0..3).map(|q| m.side_label(q)).collect();
    let pool: Vec<u32> = (1..=SIDE_LABELS).filter(|l| !own.contains(l)).collect();
    e.map_labels(&|l: Label| {
        let l = l.get();
        Label::new(if l <= 3 { own[l as usize - 1] } else { pool[l as usize - 4] })
    })
}

fn side_relation(g: &Graph, p: &RefinedPartition) -> Rel {
    let name = "sides-homogeneous";
    let members = Member::all();
    for (x, &m) in members.iter().enumerate() {
        for &n in &members[x + 1..] {
            for s in m.sides() {
                for t in n.sides() {
                    let (a, b) = (s.vertices(p), t.vertices(p));
                    if super::rel::edge(g, a, b).is_some() {
                        if let Some(w) = non_edge(g, a, b) {
                            return Rel::fail(name, w);
                        }
                    }
                }
            }
        }
    }
    Rel::ok(name)
}

fn expand(r: SetRef) -> [Side; 3] {
    let s = |kind, index| Side { kind, index };
    match r {
        SetRef::One(i) => [s(SideKind::Left, i), s(SideKind::Right, i), s(SideKind::Both, i)],
        SetRef::Two(c) => [s(SideKind::Minus, c), s(SideKind::Plus, c), s(SideKind::Star, c)],
    }
}

fn label_of(side: Side) -> u32 {
    for m in Member::all() {
        if let Some(q) = m.sides().iter().position(|&s| s == side) {
            return m.side_label(q);
        }
    }
    unreachable!("every side belongs to a member")
}

/// Glues member expressions along their sides and adds the removed vertices
/// back, each on a fresh label.
pub fn assemble(
    g: &Graph,
    p: &RefinedPartition,
    members: &[Option<KExpr>],
    removed: &[Removed],
) -> Result<KExpr, C5Error> {
    let mut acc = Acc::default();
    for (m, e) in Member::all().into_iter().zip(members) {
        acc.add(e.as_ref().map(|e| place(e, m)));
    }
    let all = Member::all();
    for (x, &m) in all.iter().enumerate() {
        for &n in &all[x + 1..] {
            for (q, s) in m.sides().into_iter().enumerate() {
                for (r, t) in n.sides().into_iter().enumerate() {
                    let (a, b) = (s.vertices(p), t.vertices(p));
                    if let Some(e) = super::rel::edge(g, a, b) {
                        if let Some(w) = non_edge(g, a, b) {
                            return Err(violation(g, "sides-homogeneous", &[e[0], e[1], w[0], w[1]]));
                        }
                        acc.join(m.side_label(q), n.side_label(r));
                    }
                }
            }
        }
    }
    for (j, r) in removed.iter().enumerate() {
        let fresh = SIDE_LABELS + 1 + j as u32;
        acc.add(Some(KExpr::create(fresh, g.id(r.vertex))));
        for &set in &r.profile {
            for side in expand(set) {
                if !side.vertices(p).is_empty() {
                    acc.join(fresh, label_of(side));
                }
            }
        }
        for (k, q) in removed[..j].iter().enumerate() {
            if g.adjacent(r.vertex, q.vertex) {
                acc.join(fresh, SIDE_LABELS + 1 + k as u32);
            }
        }
    }
    acc.0.ok_or_else(|| violation(g, "empty-assembly", &[]))
}

/// Everything computed on the way to a C5 expression.
#[derive(Debug, Clone)]
pub struct C5Outcome {
    pub expr: KExpr,
    pub classification: C5Classification,
    pub refined: RefinedPartition,
    pub f2: Vec<F2Structure>,
    pub removed: Vec<Removed>,
}

fn f2_sides(p: &RefinedPartition, i: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let [z, a, b] = Member::F2(i).sides();
    (a.vertices(p).to_vec(), b.vertices(p).to_vec(), z.vertices(p).to_vec())
}

/// Builds an expression for a prime class member containing an induced C5.
/// With `verified`, every structural relation is asserted and each member
/// expression is evaluated against its induced subgraph.
pub fn decompose_c5(g: &Graph, verified: bool) -> Result<C5Outcome, C5Error> {
    let frame = find_frame(g).ok_or_else(|| violation(g, "no-induced-c5", &[]))?;
    let c = classify(g, frame)?;
    if verified {
        first_failure(g, &classification_relations(g, &c))?;
    }
    let (reduced, removed) = strip_constant_set(g, &c)?;
    let refined = refine(g, &reduced)?;
    if verified {
        first_failure(g, &refinement_relations(g, &reduced, &refined))?;
    }
    let mut exprs = Vec::with_capacity(10);
    let mut f2s = Vec::with_capacity(5);
    for i in 0..5 {
        if verified {
            first_failure(g, &f1_relations(g, &refined, i))?;
        }
        exprs.push(build_f1(g, &refined, i)?);
    }
    for i in 0..5 {
        let (a, b, z) = f2_sides(&refined, i);
        let s = analyze_f2(g, &a, &b, &z)?;
        if verified {
            first_failure(g, &f2_relations(g, &s, &Member::F2(i).to_string()))?;
        }
        exprs.push(build_f2(g, &s)?);
        f2s.push(s);
    }
    if verified {
        for (m, e) in Member::all().into_iter().zip(&exprs) {
            let Some(e) = e else { continue };
            let vs = m.vertices(&refined);
            let built = eval(e).map_err(|_| violation(g, format!("{m}.expression"), &vs))?;
            if built.graph != g.induced(&vs) || width(e).width > MEMBER_LABELS as usize {
                return Err(violation(g, format!("{m}.expression"), &vs));
            }
        }
    }
    let expr = assemble(g, &refined, &exprs, &removed)?;
    Ok(C5Outcome { expr, classification: c, refined, f2: f2s, removed })
}

/// Diagnostic dump: `SET` lines for every set and side, then one `REL` line
/// per asserted relation. Only failures that make the later stages
/// meaningless abort the report.
#[derive(Debug, Clone)]
pub struct C5Report {
    pub sets: Vec<String>,
    pub rels: Vec<Rel>,
}

impl C5Report {
    pub fn all_pass(&self) -> bool {
        self.rels.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Rel> {
        self.rels.iter().filter(|r| !r.pass)
    }

    pub fn render(&self, g: &Graph) -> String {
        let mut s = String::new();
        for l in &self.sets {
            s.push_str(l);
            s.push('\n');
        }
        for r in &self.rels {
            s.push_str(&r.render(g));
            s.push('\n');
        }
        s
    }
}

pub fn relation_suite(g: &Graph) -> Result<C5Report, C5Error> {
    let frame = find_frame(g).ok_or_else(|| violation(g, "no-induced-c5", &[]))?;
    let c = classify(g, frame)?;
    let mut sets = c.set_lines(g);
    let mut rels = classification_relations(g, &c);
    let (reduced, removed) = strip_constant_set(g, &c)?;
    rels.push(Rel::ok("removed-profile-aligned"));
    let refined = refine(g, &reduced)?;
    for m in Member::all() {
        for s in m.sides() {
            let vs = to_ids(g, s.vertices(&refined));
            let names: Vec<&str> = vs.iter().map(|v| v.as_str()).collect();
            sets.push(format!("SET {m}.{s} {}", names.join(" ")).trim_end().to_string());
        }
    }
    for r in &removed {
        let prof: Vec<String> = r.profile.iter().map(|s| s.to_string()).collect();
        sets.push(format!("SET removed.{} {}", g.id(r.vertex), prof.join(" ")));
    }
    rels.extend(refinement_relations(g, &reduced, &refined));
    for i in 0..5 {
        rels.extend(f1_relations(g, &refined, i));
    }
    for i in 0..5 {
        let (a, b, z) = f2_sides(&refined, i);
        match analyze_f2(g, &a, &b, &z) {
            Ok(s) => rels.extend(f2_relations(g, &s, &Member::F2(i).to_string())),
            Err(C5Error::StructureViolation { clause, .. }) => {
                rels.push(Rel::fail(format!("{}.{clause}", Member::F2(i)), cat(&[&a, &b])))
            }
            Err(e) => return Err(e),
        }
    }
    rels.push(side_relation(g, &refined));
    Ok(C5Report { sets, rels })
}
