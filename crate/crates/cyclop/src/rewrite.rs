//! The special-corolla elimination rewriting on extended trees, its normal
//! forms, and an exhaustive confluence oracle for desk-scale inputs.
//!
//! Two rules, oriented left to right:
//! - an edge from a variable of an ordinary corolla to one end of a special
//!   corolla contracts by renaming that variable to the special corolla's
//!   other end;
//! - an edge between two special corollas merges them into one.
//!
//! Every step removes exactly one special corolla, so reduction terminates;
//! the exhaustive oracle checks that all reduction orders meet in a single
//! alpha-class.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::tree::{Corolla, Edge, TreeClass, VernonGraph};
use crate::var::{Bijection, Variable};

/// A contractible edge position. `OrdinarySpecial` joins variable `var` of
/// the ordinary corolla to endpoint `edge_end` of the special corolla whose
/// other endpoint is `other_end`. `SpecialSpecial` joins `left_end` of
/// `(left_keep, left_end)` to `right_end` of `(right_end, right_keep)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Redex {
    OrdinarySpecial {
        ordinary: usize,
        var: Variable,
        special: usize,
        edge_end: Variable,
        other_end: Variable,
    },
    SpecialSpecial {
        left: usize,
        left_keep: Variable,
        left_end: Variable,
        right: usize,
        right_end: Variable,
        right_keep: Variable,
    },
}

impl Redex {
    pub fn edge(&self) -> Edge {
        match self {
            Redex::OrdinarySpecial { var, edge_end, .. } => {
                Edge::new(var.clone(), edge_end.clone()).expect("redex endpoints differ")
            }
            Redex::SpecialSpecial { left_end, right_end, .. } => {
                Edge::new(left_end.clone(), right_end.clone()).expect("redex endpoints differ")
            }
        }
    }
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Redex::OrdinarySpecial { var, edge_end, other_end, .. } => {
                write!(f, "contract {var}~{edge_end}, renaming {var} to {other_end}")
            }
            Redex::SpecialSpecial { left_keep, left_end, right_end, right_keep, .. } => {
                write!(
                    f,
                    "merge ({left_keep},{left_end})~({right_end},{right_keep}) into ({left_keep},{right_keep})"
                )
            }
        }
    }
}

/// All redexes of `t`, ordered by their mediating edge. An ordinary tree has
/// none; a lone special corolla has none either.
pub fn find_redexes(t: &VernonGraph) -> Vec<Redex> {
    let mut out = Vec::new();
    for edge in t.edges() {
        let (a, b) = edge.endpoints();
        let ia = t.corolla_of(a).expect("validated endpoint");
        let ib = t.corolla_of(b).expect("validated endpoint");
        let ca = &t.corollas()[ia];
        let cb = &t.corollas()[ib];
        match (ca.is_special(), cb.is_special()) {
            (false, false) => {}
            (false, true) => out.push(ordinary_special(ib, cb, b, ia, a)),
            (true, false) => out.push(ordinary_special(ia, ca, a, ib, b)),
            (true, true) => {
                let (left, left_end, right, right_end) = (ia, a, ib, b);
                let left_keep = other_special_end(ca, left_end);
                let right_keep = other_special_end(cb, right_end);
                out.push(Redex::SpecialSpecial {
                    left,
                    left_keep,
                    left_end: left_end.clone(),
                    right,
                    right_end: right_end.clone(),
                    right_keep,
                });
            }
        }
    }
    out
}

fn other_special_end(c: &Corolla, end: &Variable) -> Variable {
    match c {
        Corolla::Special(x, y) => {
            if x == end {
                y.clone()
            } else {
                x.clone()
            }
        }
        Corolla::Ordinary(_) => unreachable!("caller checked the corolla is special"),
    }
}

fn ordinary_special(
    special: usize,
    special_corolla: &Corolla,
    edge_end: &Variable,
    ordinary: usize,
    var: &Variable,
) -> Redex {
    Redex::OrdinarySpecial {
        ordinary,
        var: var.clone(),
        special,
        edge_end: edge_end.clone(),
        other_end: other_special_end(special_corolla, edge_end),
    }
}

/// Applies one contraction. The result has exactly one special corolla less.
pub fn contract(t: &VernonGraph, r: &Redex) -> Result<VernonGraph> {
    if !find_redexes(t).contains(r) {
        return Err(Error::Domain(format!("not a redex of the graph: {r}")));
    }
    let removed_edge = r.edge();
    let mut corollas = Vec::new();
    let edges: BTreeSet<Edge> = t.edges().iter().filter(|e| **e != removed_edge).cloned().collect();
    match r {
        Redex::OrdinarySpecial { ordinary, var, special, other_end, .. } => {
            for (i, c) in t.corollas().iter().enumerate() {
                if i == *special {
                    continue;
                }
                if i == *ordinary {
                    let inst = c.instance().expect("redex names an ordinary corolla");
                    let cur = inst.current_vars();
                    let tau = Bijection::from_pairs(cur.iter().map(|v| {
                        if v == var {
                            (other_end.clone(), v.clone())
                        } else {
                            (v.clone(), v.clone())
                        }
                    }))?;
                    corollas.push(Corolla::Ordinary(inst.act(&tau)?));
                } else {
                    corollas.push(c.clone());
                }
            }
        }
        Redex::SpecialSpecial { left, left_keep, right, right_keep, .. } => {
            for (i, c) in t.corollas().iter().enumerate() {
                if i == *left || i == *right {
                    continue;
                }
                corollas.push(c.clone());
            }
            corollas.push(Corolla::special(left_keep.clone(), right_keep.clone())?);
        }
    }
    let result = VernonGraph::new(corollas, edges)?;
    debug_assert_eq!(
        special_count(&result) + 1,
        special_count(t),
        "a contraction removes exactly one special corolla"
    );
    Ok(result)
}

pub fn special_count(t: &VernonGraph) -> usize {
    t.corollas().iter().filter(|c| c.is_special()).count()
}

/// Reduces to a normal form with the deterministic first-redex strategy,
/// recording each step for tracing.
pub fn normal_form_trace(t: &VernonGraph) -> Result<(VernonGraph, Vec<(Redex, VernonGraph)>)> {
    let mut current = t.clone();
    let mut steps = Vec::new();
    loop {
        let redexes = find_redexes(&current);
        let Some(first) = redexes.first() else {
            return Ok((current, steps));
        };
        let next = contract(&current, first)?;
        steps.push((first.clone(), next.clone()));
        current = next;
    }
}

/// The deterministic normal form: no special corollas remain unless the
/// whole result is a lone special corolla.
pub fn normal_form(t: &VernonGraph) -> Result<VernonGraph> {
    Ok(normal_form_trace(t)?.0)
}

/// Explores every reduction sequence and returns the set of alpha-classes of
/// the terminal graphs. `fuel` bounds the number of distinct states visited.
pub fn all_normal_forms(t: &VernonGraph, fuel: usize) -> Result<BTreeSet<TreeClass>> {
    let mut classes = BTreeSet::new();
    let mut seen: BTreeSet<VernonGraph> = BTreeSet::new();
    let mut stack = vec![t.clone()];
    while let Some(state) = stack.pop() {
        let key = sorted_key(&state);
        if !seen.insert(key) {
            continue;
        }
        if seen.len() > fuel {
            return Err(Error::Resource(format!(
                "all_normal_forms exceeded the fuel bound of {fuel} states"
            )));
        }
        let redexes = find_redexes(&state);
        if redexes.is_empty() {
            classes.insert(state.canonicalize()?);
            continue;
        }
        for r in &redexes {
            stack.push(contract(&state, r)?);
        }
    }
    Ok(classes)
}

/// Corolla order is irrelevant; sort it away when memoizing states.
fn sorted_key(t: &VernonGraph) -> VernonGraph {
    let mut corollas = t.corollas().to_vec();
    corollas.sort();
    VernonGraph::new(corollas, t.edges().clone()).expect("reordering preserves validity")
}
