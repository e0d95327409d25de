//! Splitting each chord into minus / plus / star and each 1-vertex set into
//! left / right / both.

use super::rel::{anticomplete, cat, chain, complete, complete_to, contacts, Rel};
use super::{at, violation, C5Error, Reduced};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedPartition {
    /// `minus[c]`: vertices of `two[c]` with a non-neighbour in `two[c+1]`.
    pub minus: [Vec<usize>; 5],
    /// `plus[c]`: vertices of `two[c]` with a non-neighbour in `two[c-1]`.
    pub plus: [Vec<usize>; 5],
    pub star: [Vec<usize>; 5],
    /// `left[i]`: vertices of `one[i]` contacting `star[i+1]`.
    pub left: [Vec<usize>; 5],
    /// `right[i]`: vertices of `one[i]` contacting `star[i+2]`.
    pub right: [Vec<usize>; 5],
    pub both: [Vec<usize>; 5],
}

pub fn refine(g: &Graph, r: &Reduced) -> Result<RefinedPartition, C5Error> {
    let mut p = RefinedPartition {
        minus: Default::default(),
        plus: Default::default(),
        star: Default::default(),
        left: Default::default(),
        right: Default::default(),
        both: Default::default(),
    };
    for c in 0..5 {
        let (next, prev) = (&r.two[at(c, 1)], &r.two[at(c, -1)]);
        for &x in &r.two[c] {
            let m = next.iter().find(|&&y| !g.adjacent(x, y));
            let q = prev.iter().find(|&&y| !g.adjacent(x, y));
            match (m, q) {
                (Some(&y), Some(&z)) => {
                    return Err(violation(g, format!("chord-split-disjoint[{}]", c + 1), &[x, y, z]));
                }
                (Some(_), None) => p.minus[c].push(x),
                (None, Some(_)) => p.plus[c].push(x),
                (None, None) => p.star[c].push(x),
            }
        }
    }
    for i in 0..5 {
        let (sl, sr) = (&p.star[at(i, 1)], &p.star[at(i, 2)]);
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut both = Vec::new();
        for &x in &r.one[i] {
            match (contacts(g, x, sl), contacts(g, x, sr)) {
                (true, true) => {
                    let a = *sl.iter().find(|&&y| g.adjacent(x, y)).unwrap();
                    let b = *sr.iter().find(|&&y| g.adjacent(x, y)).unwrap();
                    return Err(violation(g, format!("one-meets-one-star-side[{}]", i + 1), &[x, a, b]));
                }
                (true, false) => left.push(x),
                (false, true) => right.push(x),
                (false, false) => both.push(x),
            }
        }
        p.left[i] = left;
        p.right[i] = right;
        p.both[i] = both;
    }
    Ok(p)
}

/// All relations the refinement must satisfy, in report order.
pub fn refinement_relations(g: &Graph, r: &Reduced, p: &RefinedPartition) -> Vec<Rel> {
    let mut out = Vec::new();
    for c in 0..5 {
        let k = c + 1;
        let (prev, next) = (at(c, -1), at(c, 1));
        let needs = (p.minus[c].is_empty() || !r.two[next].is_empty()) && (p.plus[c].is_empty() || !r.two[prev].is_empty());
        out.push(if needs {
            Rel::ok(format!("chord-split-needs-neighbours[{k}]"))
        } else {
            Rel::fail(format!("chord-split-needs-neighbours[{k}]"), cat(&[&p.minus[c], &p.plus[c]]))
        });
        out.push(complete(format!("minus-complete-prev-chord[{k}]"), g, &p.minus[c], &r.two[prev]));
        out.push(complete(
            format!("plus-complete-prev-plus-star[{k}]"),
            g,
            &p.plus[c],
            &cat(&[&p.plus[prev], &p.star[prev]]),
        ));
        out.push(chain(format!("plus-prev-minus-chain[{k}]"), g, &p.plus[c], &p.minus[prev]));
        out.push(complete(format!("star-complete-prev-chord[{k}]"), g, &p.star[c], &r.two[prev]));
        out.push(complete(
            format!("minus-complete-next-minus-star[{k}]"),
            g,
            &p.minus[c],
            &cat(&[&p.minus[next], &p.star[next]]),
        ));
        out.push(chain(format!("minus-next-plus-chain[{k}]"), g, &p.minus[c], &p.plus[next]));
        out.push(complete(format!("plus-complete-next-chord[{k}]"), g, &p.plus[c], &r.two[next]));
        out.push(complete(format!("star-complete-next-chord[{k}]"), g, &p.star[c], &r.two[next]));
    }
    for i in 0..5 {
        let k = i + 1;
        let (n1, n2) = (at(i, 1), at(i, 2));
        out.push(anticomplete(
            format!("one-anticomplete-near-plus-far-minus[{k}]"),
            g,
            &r.one[i],
            &cat(&[&p.plus[n1], &p.minus[n2]]),
        ));
        out.push(one_meets_one_star_side(g, r, p, i));
        out.push(star_contact_forces(g, r, p, i));
        out.push(one_split_definition(g, r, p, i));
        out.push(star_single_side(g, p, i));
    }
    out
}

fn one_meets_one_star_side(g: &Graph, r: &Reduced, p: &RefinedPartition, i: usize) -> Rel {
    let name = format!("one-meets-one-star-side[{}]", i + 1);
    for &x in &r.one[i] {
        let a = p.star[at(i, 1)].iter().find(|&&y| g.adjacent(x, y));
        let b = p.star[at(i, 2)].iter().find(|&&y| g.adjacent(x, y));
        if let (Some(&a), Some(&b)) = (a, b) {
            return Rel::fail(name, vec![x, a, b]);
        }
    }
    Rel::ok(name)
}

fn star_contact_forces(g: &Graph, r: &Reduced, p: &RefinedPartition, i: usize) -> Rel {
    let name = format!("star-contact-forces[{}]", i + 1);
    let (n1, n2) = (at(i, 1), at(i, 2));
    let cases = [
        (&p.star[n1], &p.minus[n1], &r.two[n2]),
        (&p.star[n2], &p.plus[n2], &r.two[n1]),
    ];
    for &x in &r.one[i] {
        for (star, must_see, must_miss) in cases {
            if let Some(&s) = star.iter().find(|&&y| g.adjacent(x, y)) {
                if let Some(&y) = must_see.iter().find(|&&y| !g.adjacent(x, y)) {
                    return Rel::fail(name, vec![x, s, y]);
                }
                if let Some(&y) = must_miss.iter().find(|&&y| g.adjacent(x, y)) {
                    return Rel::fail(name, vec![x, s, y]);
                }
            }
        }
    }
    Rel::ok(name)
}

/// Each part of the split of `one[i]` meets its defining conditions, and the
/// three parts cover `one[i]`.
fn one_split_definition(g: &Graph, r: &Reduced, p: &RefinedPartition, i: usize) -> Rel {
    let name = format!("one-split-definition[{}]", i + 1);
    let (n1, n2) = (at(i, 1), at(i, 2));
    for &x in &p.left[i] {
        let ok = contacts(g, x, &p.star[n1])
            && complete_to(g, x, &p.minus[n1])
            && !contacts(g, x, &p.plus[n1])
            && !contacts(g, x, &r.two[n2]);
        if !ok {
            return Rel::fail(name, vec![x]);
        }
    }
    for &x in &p.right[i] {
        let ok = contacts(g, x, &p.star[n2])
            && complete_to(g, x, &p.plus[n2])
            && !contacts(g, x, &p.minus[n2])
            && !contacts(g, x, &r.two[n1]);
        if !ok {
            return Rel::fail(name, vec![x]);
        }
    }
    let avoid = cat(&[&p.plus[n1], &p.star[n1], &p.minus[n2], &p.star[n2]]);
    let seek = cat(&[&p.minus[n1], &p.plus[n2]]);
    for &x in &p.both[i] {
        if !contacts(g, x, &seek) || contacts(g, x, &avoid) {
            return Rel::fail(name, vec![x]);
        }
    }
    let parts = cat(&[&p.left[i], &p.right[i], &p.both[i]]);
    if parts != r.one[i] || parts.len() != p.left[i].len() + p.right[i].len() + p.both[i].len() {
        return Rel::fail(name, r.one[i].clone());
    }
    Rel::ok(name)
}

/// No star vertex of chord `c` contacts both other sides of its member.
fn star_single_side(g: &Graph, p: &RefinedPartition, c: usize) -> Rel {
    let name = format!("star-contacts-one-side[{}]", c + 1);
    let (l, r) = (&p.left[at(c, -1)], &p.right[at(c, 3)]);
    for &x in &p.star[c] {
        let a = l.iter().find(|&&y| g.adjacent(x, y));
        let b = r.iter().find(|&&y| g.adjacent(x, y));
        if let (Some(&a), Some(&b)) = (a, b) {
            return Rel::fail(name, vec![x, a, b]);
        }
    }
    Rel::ok(name)
}
