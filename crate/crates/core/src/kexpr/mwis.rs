//! Maximum weight independent set by dynamic programming over an expression.
//!
//! A table maps an occupied-label set to the best independent set whose
//! vertices carry exactly those labels. Labels that no enclosing join can
//! ever touch again are projected away, which keeps tables small.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::{ExprError, KExpr, Label};
use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwisSolution {
    pub weight: u64,
    /// Sorted vertex ids of the chosen set.
    pub set: Vec<VertexId>,
}

enum Pick {
    Empty,
    One(VertexId),
    Both(Rc<Pick>, Rc<Pick>),
}

type Table = BTreeMap<u128, (u64, Rc<Pick>)>;

struct Dp<'a> {
    bit: HashMap<Label, u128>,
    weights: &'a dyn Fn(&VertexId) -> Option<u64>,
}

fn offer(t: &mut Table, key: u128, weight: u64, pick: Rc<Pick>) {
    match t.get(&key) {
        Some((w, _)) if *w >= weight => {}
        _ => {
            t.insert(key, (weight, pick));
        }
    }
}

impl Dp<'_> {
    fn solve(&self, e: &KExpr, relevant: u128) -> Result<Table, ExprError> {
        let mut out = Table::new();
        match e {
            KExpr::Create(l, v) => {
                let w = (self.weights)(v).ok_or_else(|| ExprError::MissingWeight(v.clone()))?;
                offer(&mut out, 0, 0, Rc::new(Pick::Empty));
                offer(&mut out, self.bit[l] & relevant, w, Rc::new(Pick::One(v.clone())));
            }
            KExpr::Union(a, b) => {
                let ta = self.solve(a, relevant)?;
                let tb = self.solve(b, relevant)?;
                for (ka, (wa, pa)) in &ta {
                    for (kb, (wb, pb)) in &tb {
                        offer(&mut out, ka | kb, wa + wb, Rc::new(Pick::Both(pa.clone(), pb.clone())));
                    }
                }
            }
            KExpr::Join(x, y, c) => {
                let (bx, by) = (self.bit[x], self.bit[y]);
                let tc = self.solve(c, relevant | bx | by)?;
                for (k, (w, p)) in tc {
                    if k & bx != 0 && k & by != 0 {
                        continue;
                    }
                    offer(&mut out, k & relevant, w, p);
                }
            }
            KExpr::Relabel(x, y, c) => {
                let (bx, by) = (self.bit[x], self.bit[y]);
                let mut child_rel = relevant & !(bx | by);
                if relevant & by != 0 {
                    child_rel |= bx | by;
                }
                let tc = self.solve(c, child_rel)?;
                for (k, (w, p)) in tc {
                    let k = if k & bx != 0 { (k & !bx) | by } else { k };
                    offer(&mut out, k & relevant, w, p);
                }
            }
        }
        Ok(out)
    }
}

fn collect(p: &Pick, out: &mut Vec<VertexId>) {
    let mut stack = vec![p];
    while let Some(p) = stack.pop() {
        match p {
            Pick::Empty => {}
            Pick::One(v) => out.push(v.clone()),
            Pick::Both(a, b) => {
                stack.push(a);
                stack.push(b);
            }
        }
    }
}

/// Maximum weight independent set of `eval(e)`.
pub fn mwis(e: &KExpr, weights: &dyn Fn(&VertexId) -> Option<u64>) -> Result<MwisSolution, ExprError> {
    let labels = e.labels();
    if labels.len() > 128 {
        return Err(ExprError::TooManyLabels(labels.len()));
    }
    let bit = labels.into_iter().enumerate().map(|(i, l)| (l, 1u128 << i)).collect();
    let dp = Dp { bit, weights };
    let table = dp.solve(e, 0)?;
    let (weight, pick) = table.get(&0).expect("projection onto no labels leaves one entry");
    let mut set = Vec::new();
    collect(pick, &mut set);
    set.sort();
    Ok(MwisSolution { weight: *weight, set })
}
