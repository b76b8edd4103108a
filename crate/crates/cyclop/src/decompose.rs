//! Subtree extraction and tree decomposition: plucking the subtree hanging
//! off a chosen corolla entry, splitting a tree into its head corolla plus
//! plucked pieces, leaf removal, the command extractor that turns a tree and
//! a head corolla into a normal-form command, and the composition fold that
//! rebuilds the class from the pieces.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::mu::{MuCommand, MuTerm};
use crate::operad::vt_compose;
use crate::tree::{Corolla, TreeClass, TreeKind, VernonGraph};
use crate::var::{VarSet, Variable};

/// A plucked subtree together with its entry variable: the former edge
/// partner, now a fixpoint of the subtree's involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckedSubtree {
    pub subtree: VernonGraph,
    pub entry: Variable,
}

fn check_pluck_args(t: &VernonGraph, corolla: usize, v: &Variable) -> Result<Variable> {
    if t.classify() != TreeKind::OrdinaryTree {
        return Err(Error::Domain("plucking is defined on ordinary trees".into()));
    }
    let c = t
        .corollas()
        .get(corolla)
        .ok_or_else(|| Error::Domain(format!("no corolla at index {corolla}")))?;
    if !c.free_vars().contains(v) {
        return Err(Error::Domain(format!(
            "`{v}` is not a variable of the chosen corolla"
        )));
    }
    if t.free_vars().contains(v) {
        return Err(Error::Domain(format!(
            "`{v}` is free in the whole tree; nothing hangs off it"
        )));
    }
    Ok(t.involution(v).expect("v occurs in the tree"))
}

/// The subtree plucked from corolla `corolla` at its variable `v`: the
/// connected component across the edge at `v`, with the partner variable as
/// the subtree's entry.
pub fn pluck(t: &VernonGraph, corolla: usize, v: &Variable) -> Result<PluckedSubtree> {
    let entry = check_pluck_args(t, corolla, v)?;
    let start = t.corolla_of(&entry).expect("the partner occurs in the tree");

    // Component of `start` in the corolla tree, never crossing back into
    // the chosen corolla.
    let mut component: BTreeSet<usize> = [start].into_iter().collect();
    let mut stack = vec![start];
    while let Some(idx) = stack.pop() {
        for e in t.edges() {
            let (a, b) = e.endpoints();
            let ca = t.corolla_of(a).expect("validated endpoint");
            let cb = t.corolla_of(b).expect("validated endpoint");
            for (here, there) in [(ca, cb), (cb, ca)] {
                if here == idx && there != corolla && component.insert(there) {
                    stack.push(there);
                }
            }
        }
    }

    Ok(PluckedSubtree {
        subtree: induced_subgraph(t, &component)?,
        entry,
    })
}

/// The subgraph on a corolla subset: original corolla order, edges with
/// both endpoints inside the subset; severed partners become fixpoints.
pub(crate) fn induced_subgraph(t: &VernonGraph, idxs: &BTreeSet<usize>) -> Result<VernonGraph> {
    let corollas: Vec<Corolla> = t
        .corollas()
        .iter()
        .enumerate()
        .filter(|(i, _)| idxs.contains(i))
        .map(|(_, c)| c.clone())
        .collect();
    let vars: VarSet = corollas.iter().flat_map(|c| c.free_vars()).collect();
    let edges = t
        .edges()
        .iter()
        .filter(|e| {
            let (a, b) = e.endpoints();
            vars.contains(a) && vars.contains(b)
        })
        .cloned()
        .collect();
    VernonGraph::new(corollas, edges)
}

/// The decomposition of a tree at a corolla: the bare head plus one plucked
/// subtree per bound variable of the head, in ascending variable order.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub head: VernonGraph,
    pub pieces: Vec<(Variable, PluckedSubtree)>,
}

pub fn decomposition(t: &VernonGraph, corolla: usize) -> Result<Decomposition> {
    if t.classify() != TreeKind::OrdinaryTree {
        return Err(Error::Domain("decomposition is defined on ordinary trees".into()));
    }
    let c = t
        .corollas()
        .get(corolla)
        .ok_or_else(|| Error::Domain(format!("no corolla at index {corolla}")))?;
    let free = t.free_vars();
    let head = VernonGraph::single(c.clone());
    let mut pieces = Vec::new();
    for v in c.free_vars() {
        if !free.contains(&v) {
            let piece = pluck(t, corolla, &v)?;
            pieces.push((v, piece));
        }
    }
    Ok(Decomposition { head, pieces })
}

/// Some corolla with exactly one non-free variable; the smallest such
/// corolla by its canonical order. Errors on single-corolla trees.
pub fn find_leaf_corolla(t: &VernonGraph) -> Result<usize> {
    if t.classify() != TreeKind::OrdinaryTree {
        return Err(Error::Domain("leaf search is defined on ordinary trees".into()));
    }
    if t.corollas().len() < 2 {
        return Err(Error::Domain("a single corolla has no leaf to remove".into()));
    }
    let bound = t.bound_vars();
    t.corollas()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.free_vars().intersection(&bound).count() == 1)
        .min_by(|(_, a), (_, b)| a.cmp(b))
        .map(|(i, _)| i)
        .ok_or_else(|| Error::Internal("a tree with two corollas has a leaf".into()))
}

/// Removes a leaf corolla; the severed partner becomes a fixpoint.
pub fn remove_leaf(t: &VernonGraph, leaf: usize) -> Result<VernonGraph> {
    let c = t
        .corollas()
        .get(leaf)
        .ok_or_else(|| Error::Domain(format!("no corolla at index {leaf}")))?;
    let bound = t.bound_vars();
    let attached: Vec<Variable> = c.free_vars().intersection(&bound).cloned().collect();
    if attached.len() != 1 {
        return Err(Error::Domain(format!(
            "corolla {leaf} touches {} edges; a removable leaf touches exactly one",
            attached.len()
        )));
    }
    let keep: BTreeSet<usize> =
        (0..t.corollas().len()).filter(|i| *i != leaf).collect();
    induced_subgraph(t, &keep)
}

/// Extracts a normal-form command denoting the tree, headed at the chosen
/// corolla: free entries stay variables, bound entries become abstractions
/// over the command of the plucked subtree headed at the adjacent corolla.
/// An exceptional tree yields the bare pair of its two variables.
pub fn command_of(t: &VernonGraph, corolla: usize) -> Result<MuCommand> {
    match t.classify() {
        TreeKind::ExceptionalTree => {
            let fv: Vec<Variable> = t.free_vars().into_iter().collect();
            Ok(MuCommand::Pair(
                MuTerm::Var(fv[0].clone()),
                MuTerm::Var(fv[1].clone()),
            ))
        }
        TreeKind::OrdinaryTree => command_of_rec(t, corolla),
        kind => Err(Error::Domain(format!(
            "command extraction needs a tree, got {kind}"
        ))),
    }
}

fn command_of_rec(t: &VernonGraph, corolla: usize) -> Result<MuCommand> {
    let c = t
        .corollas()
        .get(corolla)
        .ok_or_else(|| Error::Domain(format!("no corolla at index {corolla}")))?;
    let Corolla::Ordinary(inst) = c else {
        return Err(Error::Domain("the head corolla must be ordinary".into()));
    };
    let free = t.free_vars();
    let mut args: BTreeMap<Variable, MuTerm> = BTreeMap::new();
    for v in inst.current_vars() {
        if free.contains(&v) {
            args.insert(v.clone(), MuTerm::Var(v.clone()));
        } else {
            let piece = pluck(t, corolla, &v)?;
            let sub_head = piece
                .subtree
                .corolla_of(&piece.entry)
                .expect("the entry lives in the subtree");
            let body = command_of_rec(&piece.subtree, sub_head)?;
            args.insert(v.clone(), MuTerm::mu(piece.entry.clone(), body));
        }
    }
    MuCommand::apply(inst.clone(), args)
}

/// Rebuilds the class of the tree by folding partial compositions of the
/// head with its plucked pieces, in ascending entry order.
pub fn reconstruct(t: &VernonGraph, corolla: usize) -> Result<TreeClass> {
    let parts = decomposition(t, corolla)?;
    let mut acc = parts.head.canonicalize()?;
    for (v, piece) in &parts.pieces {
        let piece_class = piece.subtree.canonicalize()?;
        acc = vt_compose(&acc, v, &piece.entry, &piece_class)?;
    }
    Ok(acc)
}
