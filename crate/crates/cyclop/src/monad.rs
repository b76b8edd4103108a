//! Flattening of two-level trees and the monad structure built from it.
//!
//! A two-level tree is a graph whose ordinary corollas are decorated by tree
//! classes; flattening opens every such corolla into its representative
//! (bound variables freshened first, free variables renamed through the
//! attachment) and merges the involutions. The multiplication `mu` is
//! flattening followed by special-corolla elimination and canonicalization.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rewrite::normal_form;
use crate::signature::{DecoratedInstance, Decoration};
use crate::tree::{Corolla, Edge, TreeClass, VernonGraph};
use crate::var::{Bijection, FreshSupply};

/// The class of the single-corolla tree on `inst`, the monad unit.
pub fn eta(inst: &DecoratedInstance) -> TreeClass {
    VernonGraph::single(Corolla::Ordinary(inst.clone()))
        .canonicalize()
        .expect("a single corolla is a tree")
}

/// Whether every ordinary corolla of `t` carries a tree-class decoration.
pub fn is_two_level(t: &VernonGraph) -> bool {
    t.corollas().iter().all(|c| match c {
        Corolla::Ordinary(inst) => matches!(inst.decoration(), Decoration::Tree(_)),
        Corolla::Special(_, _) => true,
    })
}

/// Opens the corolla brackets of a two-level tree: inner bound variables are
/// freshened, inner free variables are renamed onto the corolla's variables,
/// and inner edges join the outer ones. Outer special corollas pass through.
pub fn flatten(t: &VernonGraph) -> Result<VernonGraph> {
    let mut supply = FreshSupply::avoiding(t.all_vars());
    let mut corollas: Vec<Corolla> = Vec::new();
    let mut edges: BTreeSet<Edge> = t.edges().clone();
    for c in t.corollas() {
        match c {
            Corolla::Special(a, b) => corollas.push(Corolla::special(a.clone(), b.clone())?),
            Corolla::Ordinary(inst) => {
                let Decoration::Tree(class) = inst.decoration() else {
                    return Err(Error::Type(format!(
                        "corolla `{inst}` is not decorated by a tree class"
                    )));
                };
                let rep = class.representative();
                supply.also_avoid(rep.all_vars());
                let freshening = Bijection::from_pairs(
                    rep.bound_vars().into_iter().map(|old| (supply.next("v"), old)),
                )?;
                let freshened = rep.rename(&freshening)?;
                let opened = freshened.rename(inst.attachment())?;
                corollas.extend(opened.corollas().iter().cloned());
                edges.extend(opened.edges().iter().cloned());
            }
        }
    }
    VernonGraph::new(corollas, edges)
}

/// The monad multiplication: flatten, eliminate special corollas, take the
/// alpha-class.
pub fn mu(t: &VernonGraph) -> Result<TreeClass> {
    normal_form(&flatten(t)?)?.canonicalize()
}

pub fn mu_class(c: &TreeClass) -> Result<TreeClass> {
    mu(c.representative())
}

/// Wraps every ordinary corolla into the class of its own single-corolla
/// tree: the functorial image of the unit.
pub fn map_eta(t: &VernonGraph) -> Result<VernonGraph> {
    let corollas = t
        .corollas()
        .iter()
        .map(|c| match c {
            Corolla::Special(a, b) => Corolla::special(a.clone(), b.clone()),
            Corolla::Ordinary(inst) => {
                let class = eta(&DecoratedInstance::identity(inst.decoration().clone()));
                let attachment = inst.attachment().clone();
                Ok(Corolla::Ordinary(DecoratedInstance::new(
                    Decoration::Tree(class),
                    attachment,
                )?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    VernonGraph::new(corollas, t.edges().clone())
}

/// The single-corolla two-level tree on a class: the outer unit.
pub fn eta_outer(class: &TreeClass) -> VernonGraph {
    let inst = DecoratedInstance::identity(Decoration::Tree(class.clone()));
    VernonGraph::single(Corolla::Ordinary(inst))
}

/// The monad-law harness: unit triangles, the associativity square, the
/// normalize/flatten interchange identities, and the confluence oracle, on
/// seeded random instances. Counterexamples land in the report.
pub fn check_monad_laws(bound: usize, instances: usize, seed: u64) -> crate::laws::LawReport {
    crate::laws::monad_suite(bound, instances, seed)
}

/// Corolla-wise multiplication on a three-level tree: each decoration class
/// (itself two-level) is multiplied down to a one-level class; attachments
/// survive because `mu` preserves free variables.
pub fn map_mu(t: &VernonGraph) -> Result<VernonGraph> {
    let corollas = t
        .corollas()
        .iter()
        .map(|c| match c {
            Corolla::Special(a, b) => Corolla::special(a.clone(), b.clone()),
            Corolla::Ordinary(inst) => {
                let Decoration::Tree(class) = inst.decoration() else {
                    return Err(Error::Type(format!(
                        "corolla `{inst}` is not decorated by a tree class"
                    )));
                };
                let collapsed = mu_class(class)?;
                Ok(Corolla::Ordinary(DecoratedInstance::new(
                    Decoration::Tree(collapsed),
                    inst.attachment().clone(),
                )?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    VernonGraph::new(corollas, t.edges().clone())
}
