//! Decomposition of (S_{1,2,2}, triangle)-free graphs around an induced C5.
//!
//! Vertices off a frame `v_1..v_5` are classified by their frame neighbours,
//! the frame and a handful of lonely 1-vertices are set aside, the rest is
//! split into ten members of three sides each, every member gets a small
//! expression, and the members are glued along the 30 sides.
//!
//! Indices are 0-based internally (`one[0]` holds the 1-vertices of `v_1`,
//! `two[c]` the 2-vertices adjacent to `v_{c+1}` and `v_{c+3}`); reports print
//! them 1-based.

mod assemble;
mod f2;
pub mod rel;
mod refine;

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::pattern::{contains_induced, Pattern};
use rel::{anticomplete, cat, chain, complete, complete_to, contacts, no_independent_triple, Rel};

pub use assemble::{
    assemble, build_f1, decompose_c5, f1_relations, relation_suite, C5Outcome, C5Report, Member, Side, SideKind,
    C5_WIDTH_BUDGET,
};
pub use f2::{analyze_f2, build_f2, f2_relations, F2Kind, F2Structure};
pub use refine::{refine, refinement_relations, RefinedPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum C5Error {
    #[error("triangle found: {}", ids(.0))]
    NotTriangleFreeWitness(Vec<VertexId>),
    #[error("{clause} fails; induced S_1,2,2 on {}", ids(.witness))]
    NotS122FreeWitness { clause: String, witness: Vec<VertexId> },
    #[error("vertices without frame neighbours: {}", ids(.0))]
    DisconnectedOrNotPrime(Vec<VertexId>),
    #[error("graph is not prime ({reason}): {}", ids(.witness))]
    NotPrime { reason: String, witness: Vec<VertexId> },
    #[error("structure violation in {clause}: {}", ids(.witness))]
    StructureViolation { clause: String, witness: Vec<VertexId> },
}

fn ids(v: &[VertexId]) -> String {
    v.iter().map(|x| x.as_str()).collect::<Vec<_>>().join(" ")
}

pub(crate) fn to_ids(g: &Graph, vs: &[usize]) -> Vec<VertexId> {
    vs.iter().map(|&v| g.id(v).clone()).collect()
}

pub(crate) fn violation(g: &Graph, clause: impl Into<String>, witness: &[usize]) -> C5Error {
    C5Error::StructureViolation { clause: clause.into(), witness: to_ids(g, witness) }
}

/// Turns the first failing relation into a structure violation.
pub(crate) fn first_failure(g: &Graph, rels: &[Rel]) -> Result<(), C5Error> {
    match rels.iter().find(|r| !r.pass) {
        Some(r) => Err(violation(g, r.name.clone(), &r.witness)),
        None => Ok(()),
    }
}

/// `(i + d) mod 5`.
pub(crate) fn at(i: usize, d: isize) -> usize {
    (i as isize + d).rem_euclid(5) as usize
}

/// Lexicographically smallest induced C5 as a vertex tuple, if any.
pub fn find_frame(g: &Graph) -> Option<[usize; 5]> {
    let n = g.n();
    for v1 in 0..n {
        for &v2 in g.neighbors(v1) {
            for &v3 in g.neighbors(v2) {
                if v3 == v1 || g.adjacent(v3, v1) {
                    continue;
                }
                for &v4 in g.neighbors(v3) {
                    if v4 == v2 || g.adjacent(v4, v1) || g.adjacent(v4, v2) {
                        continue;
                    }
                    for &v5 in g.neighbors(v4) {
                        if v5 != v3 && v5 != v1 && g.adjacent(v5, v1) && !g.adjacent(v5, v2) && !g.adjacent(v5, v3) {
                            return Some([v1, v2, v3, v4, v5]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Vertices off the frame grouped by their frame neighbourhoods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C5Classification {
    pub frame: [usize; 5],
    /// Vertices with no frame neighbour.
    pub zero: Vec<usize>,
    /// `one[i]`: vertices whose only frame neighbour is `frame[i]`.
    pub one: [Vec<usize>; 5],
    /// `two[c]`: vertices adjacent to exactly `frame[c]` and `frame[c+2]`.
    pub two: [Vec<usize>; 5],
    /// Members of `one[i]` without neighbours in `two[i+1] ∪ two[i+2]`.
    pub one_prime: [Vec<usize>; 5],
    /// Members of `two[c]` complete to `two[c+1] ∪ two[c-1]` and
    /// anticomplete to `one[c-1] ∪ one[c+3]`.
    pub two_prime: [Vec<usize>; 5],
}

impl C5Classification {
    pub fn set_lines(&self, g: &Graph) -> Vec<String> {
        let mut out = Vec::new();
        let line = |name: String, vs: &[usize]| {
            let mut s = format!("SET {name}");
            for &v in vs {
                s.push(' ');
                s.push_str(g.id(v).as_str());
            }
            s
        };
        out.push(line("frame".into(), &self.frame));
        out.push(line("N".into(), &self.zero));
        for i in 0..5 {
            out.push(line(format!("I{}", i + 1), &self.one[i]));
        }
        for c in 0..5 {
            out.push(line(format!("I{},{}", c + 1, at(c, 2) + 1), &self.two[c]));
        }
        for i in 0..5 {
            out.push(line(format!("I'{}", i + 1), &self.one_prime[i]));
        }
        for c in 0..5 {
            out.push(line(format!("I'{},{}", c + 1, at(c, 2) + 1), &self.two_prime[c]));
        }
        out
    }
}

/// Best-effort S_{1,2,2} witness inside the frame plus a few extra vertices.
fn s122_witness(g: &Graph, frame: &[usize; 5], extra: &[usize]) -> Vec<VertexId> {
    let vs = cat(&[frame, extra]);
    let h = g.induced(&vs);
    match contains_induced(&h, &Pattern::s(1, 2, 2)) {
        Some(emb) => emb.iter().map(|&v| h.id(v).clone()).collect(),
        None => to_ids(g, extra),
    }
}

/// Places every off-frame vertex and checks the forced relations between
/// the resulting sets.
pub fn classify(g: &Graph, frame: [usize; 5]) -> Result<C5Classification, C5Error> {
    for i in 0..5 {
        for j in i + 1..5 {
            let should = j == i + 1 || (i == 0 && j == 4);
            if g.adjacent(frame[i], frame[j]) != should {
                return Err(violation(g, "frame-induced-c5", &frame));
            }
        }
    }
    let mut zero = Vec::new();
    let mut one: [Vec<usize>; 5] = Default::default();
    let mut two: [Vec<usize>; 5] = Default::default();
    for v in 0..g.n() {
        if frame.contains(&v) {
            continue;
        }
        let hits: Vec<usize> = (0..5).filter(|&i| g.adjacent(v, frame[i])).collect();
        match hits.as_slice() {
            [] => zero.push(v),
            [i] => one[*i].push(v),
            [a, b] if b - a == 2 => two[*a].push(v),
            [a, b] if b - a == 3 => two[*b].push(v),
            [a, b] => {
                return Err(C5Error::NotTriangleFreeWitness(to_ids(g, &[v, frame[*a], frame[*b]])));
            }
            _ => {
                let (a, b) = if g.adjacent(frame[hits[0]], frame[hits[1]]) {
                    (hits[0], hits[1])
                } else if g.adjacent(frame[hits[1]], frame[hits[2]]) {
                    (hits[1], hits[2])
                } else {
                    (hits[0], hits[2])
                };
                return Err(C5Error::NotTriangleFreeWitness(to_ids(g, &[v, frame[a], frame[b]])));
            }
        }
    }
    // sets with an inner edge close a triangle with their frame vertex
    for i in 0..5 {
        for set in [&one[i], &two[i]] {
            if let Some(e) = rel::edge(g, set, set) {
                return Err(C5Error::NotTriangleFreeWitness(to_ids(g, &[e[0], e[1], frame[i]])));
            }
        }
    }
    let mut c = C5Classification {
        frame,
        zero,
        one,
        two,
        one_prime: Default::default(),
        two_prime: Default::default(),
    };
    for i in 0..5 {
        let far = cat(&[&c.two[at(i, 1)], &c.two[at(i, 2)]]);
        c.one_prime[i] = c.one[i].iter().copied().filter(|&x| !contacts(g, x, &far)).collect();
        let near = cat(&[&c.two[at(i, 1)], &c.two[at(i, -1)]]);
        let ones = cat(&[&c.one[at(i, -1)], &c.one[at(i, 3)]]);
        c.two_prime[i] = c.two[i]
            .iter()
            .copied()
            .filter(|&x| complete_to(g, x, &near) && !contacts(g, x, &ones))
            .collect();
    }
    for r in forced_relations(g, &c) {
        if !r.pass {
            let witness = if r.name.starts_with("triangle") {
                return Err(C5Error::NotTriangleFreeWitness(to_ids(g, &r.witness)));
            } else {
                s122_witness(g, &c.frame, &r.witness)
            };
            return Err(C5Error::NotS122FreeWitness { clause: r.name, witness });
        }
    }
    if !c.zero.is_empty() {
        return Err(C5Error::DisconnectedOrNotPrime(to_ids(g, &c.zero)));
    }
    Ok(c)
}

/// Relations forced by excluding triangles and S_{1,2,2} around the frame.
/// Names starting with `triangle` fail only in graphs with a triangle.
fn forced_relations(g: &Graph, c: &C5Classification) -> Vec<Rel> {
    let mut out = Vec::new();
    for i in 0..5 {
        let k = i + 1;
        out.push(complete(format!("ones-consecutive-complete[{k}]"), g, &c.one[i], &c.one[at(i, 1)]));
        out.push(anticomplete(format!("ones-apart-anticomplete[{k}]"), g, &c.one[i], &c.one[at(i, 2)]));
        out.push(complete(format!("one-opposite-chord-complete[{k}]"), g, &c.one[i], &c.two[at(i, -1)]));
        out.push(anticomplete(
            format!("triangle-one-incident-chords[{k}]"),
            g,
            &c.one[i],
            &cat(&[&c.two[i], &c.two[at(i, -2)]]),
        ));
        out.push(anticomplete(
            format!("zero-anticomplete[{k}]"),
            g,
            &c.zero,
            &cat(&[&c.one[i], &c.two[i]]),
        ));
        out.push(anticomplete(
            format!("triangle-chords-sharing-vertex[{k}]"),
            g,
            &c.two[i],
            &cat(&[&c.two[at(i, 2)], &c.two[at(i, -2)]]),
        ));
    }
    out
}

/// Every relation that holds for any member of the class around any frame,
/// in report order.
pub fn classification_relations(g: &Graph, c: &C5Classification) -> Vec<Rel> {
    let mut out = forced_relations(g, c);
    out.push(rel::empty("zero-vertices-empty", &c.zero));
    for i in 0..5 {
        let k = i + 1;
        let (one, two) = (&c.one, &c.two);
        out.push(distinguishers(
            format!("one-distinguishers[{k}]"),
            g,
            &one[i],
            &cat(&[&two[at(i, 1)], &two[at(i, 2)]]),
        ));
        out.push(distinguishers(
            format!("chord-distinguishers[{k}]"),
            g,
            &two[i],
            &cat(&[&two[at(i, 1)], &two[at(i, -1)], &one[at(i, 3)], &one[at(i, -1)]]),
        ));
        out.push(no_independent_triple(
            format!("one-chords-no-independent-triple[{k}]"),
            g,
            &one[i],
            &two[at(i, 1)],
            &two[at(i, 2)],
        ));
        out.push(chain(format!("one-next-chord-chain[{k}]"), g, &one[i], &two[at(i, 1)]));
        out.push(chain(format!("one-far-chord-chain[{k}]"), g, &one[i], &two[at(i, 2)]));
        out.push(chain(format!("chords-consecutive-chain[{k}]"), g, &two[i], &two[at(i, 1)]));
        out.push(chord_nonneighbour_forces(g, c, i));
        out.push(no_independent_triple(
            format!("chords-no-independent-triple[{k}]"),
            g,
            &two[i],
            &two[at(i, 1)],
            &two[at(i, 2)],
        ));
        out.push(chord_one_neighbour_forces(g, c, i));
        out.push(nested_threshold(g, c, i));
    }
    out
}

/// Any vertex outside `set` that sees part of it must lie in `allowed`.
fn distinguishers(name: String, g: &Graph, set: &[usize], allowed: &[usize]) -> Rel {
    for z in 0..g.n() {
        if set.contains(&z) || allowed.contains(&z) {
            continue;
        }
        let seen = set.iter().find(|&&x| g.adjacent(z, x));
        let missed = set.iter().find(|&&x| !g.adjacent(z, x));
        if let (Some(&a), Some(&b)) = (seen, missed) {
            return Rel::fail(name, vec![z, a, b]);
        }
    }
    Rel::ok(name)
}

fn chord_nonneighbour_forces(g: &Graph, c: &C5Classification, i: usize) -> Rel {
    let name = format!("chord-nonneighbour-forces-complete[{}]", i + 1);
    let (next, prev) = (&c.two[at(i, 1)], &c.two[at(i, -1)]);
    for &x in &c.two[i] {
        for (a, b) in [(next, prev), (prev, next)] {
            if let Some(&y) = a.iter().find(|&&y| !g.adjacent(x, y)) {
                if let Some(&z) = b.iter().find(|&&z| !g.adjacent(x, z)) {
                    return Rel::fail(name, vec![x, y, z]);
                }
            }
        }
    }
    Rel::ok(name)
}

fn chord_one_neighbour_forces(g: &Graph, c: &C5Classification, i: usize) -> Rel {
    let name = format!("chord-one-neighbour-forces[{}]", i + 1);
    let cases = [
        (&c.one[at(i, 3)], &c.two[at(i, 1)], &c.one[at(i, -1)]),
        (&c.one[at(i, -1)], &c.two[at(i, -1)], &c.one[at(i, 3)]),
    ];
    for &x in &c.two[i] {
        for (trigger, must_see, must_miss) in cases {
            if let Some(&t) = trigger.iter().find(|&&t| g.adjacent(x, t)) {
                if let Some(&y) = must_see.iter().find(|&&y| !g.adjacent(x, y)) {
                    return Rel::fail(name, vec![x, t, y]);
                }
                if let Some(&y) = must_miss.iter().find(|&&y| g.adjacent(x, y)) {
                    return Rel::fail(name, vec![x, t, y]);
                }
            }
        }
    }
    Rel::ok(name)
}

/// A 1-vertex adjacent to a 2-vertex `x` of the next chord is adjacent to
/// every 2-vertex of that chord with a strictly smaller neighbourhood in the
/// far chord.
fn nested_threshold(g: &Graph, c: &C5Classification, i: usize) -> Rel {
    let name = format!("nested-threshold[{}]", i + 1);
    let (xs, ys) = (&c.two[at(i, 1)], &c.two[at(i, 2)]);
    let nbhd = |x: usize| ys.iter().filter(|&&y| g.adjacent(x, y)).count();
    for &z in &c.one[i] {
        for &xj in xs.iter().filter(|&&x| g.adjacent(z, x)) {
            for &xi in xs {
                let smaller = nbhd(xi) < nbhd(xj);
                if smaller && !g.adjacent(z, xi) {
                    return Rel::fail(name, vec![z, xj, xi]);
                }
            }
        }
    }
    Rel::ok(name)
}

/// What a removed vertex is adjacent to, in terms of whole remaining sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SetRef {
    One(usize),
    Two(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovedKind {
    Frame(usize),
    LoneOne(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removed {
    pub vertex: usize,
    pub kind: RemovedKind,
    pub profile: Vec<SetRef>,
}

impl fmt::Display for SetRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SetRef::One(i) => write!(f, "I{}", i + 1),
            SetRef::Two(c) => write!(f, "I{},{}", c + 1, at(c, 2) + 1),
        }
    }
}

/// The classification after the frame and the lonely 1-vertices are removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub one: [Vec<usize>; 5],
    pub two: [Vec<usize>; 5],
}

impl Reduced {
    pub fn set(&self, s: SetRef) -> &[usize] {
        match s {
            SetRef::One(i) => &self.one[i],
            SetRef::Two(c) => &self.two[c],
        }
    }
}

/// Removes the frame and every `I'_i` vertex, recording each removed
/// vertex's neighbourhood among the rest as a union of whole sets.
pub fn strip_constant_set(g: &Graph, c: &C5Classification) -> Result<(Reduced, Vec<Removed>), C5Error> {
    for i in 0..5 {
        if c.one_prime[i].len() >= 2 {
            return Err(C5Error::NotPrime {
                reason: format!("lonely 1-vertices of v{} form a module", i + 1),
                witness: to_ids(g, &c.one_prime[i]),
            });
        }
        if let Some(&x) = c.two_prime[i].first() {
            return Err(C5Error::NotPrime {
                reason: format!("a 2-vertex of I{},{} forms a module with v{}", i + 1, at(i, 2) + 1, at(i, 1) + 1),
                witness: to_ids(g, &[x, c.frame[at(i, 1)]]),
            });
        }
    }
    let mut removed = Vec::new();
    for i in 0..5 {
        removed.push(Removed {
            vertex: c.frame[i],
            kind: RemovedKind::Frame(i),
            profile: vec![SetRef::One(i), SetRef::Two(i), SetRef::Two(at(i, -2))],
        });
    }
    for i in 0..5 {
        if let Some(&x) = c.one_prime[i].first() {
            removed.push(Removed {
                vertex: x,
                kind: RemovedKind::LoneOne(i),
                profile: vec![SetRef::One(at(i, -1)), SetRef::One(at(i, 1)), SetRef::Two(at(i, -1))],
            });
        }
    }
    let gone: Vec<usize> = removed.iter().map(|r| r.vertex).collect();
    let keep = |s: &Vec<usize>| s.iter().copied().filter(|v| !gone.contains(v)).collect::<Vec<_>>();
    let reduced = Reduced {
        one: std::array::from_fn(|i| keep(&c.one[i])),
        two: std::array::from_fn(|i| keep(&c.two[i])),
    };
    for r in &removed {
        let expected: Vec<usize> = cat(&r.profile.iter().map(|&s| reduced.set(s)).collect::<Vec<_>>());
        let actual: Vec<usize> = g.neighbors(r.vertex).iter().copied().filter(|v| !gone.contains(v)).collect();
        if expected != actual {
            let odd = actual
                .iter()
                .find(|v| !expected.contains(v))
                .or_else(|| expected.iter().find(|v| !actual.contains(v)))
                .copied()
                .unwrap();
            return Err(violation(g, "removed-profile-aligned", &[r.vertex, odd]));
        }
    }
    Ok((reduced, removed))
}
