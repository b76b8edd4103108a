//! The composition algebra on tree classes: functorial renaming, partial
//! composition along chosen entries, units, and total composition of an
//! element with an assignment of operands to all of its entries.
//!
//! `OperadModel` abstracts the carrier so the same combinator and command
//! interpreters work both for the free model on tree classes and for tree
//! classes viewed as an algebra over themselves.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::monad::eta;
use crate::rewrite::normal_form;
use crate::signature::{DecoratedInstance, Decoration};
use crate::tree::{Corolla, Edge, TreeClass, VernonGraph};
use crate::var::{format_set, Bijection, FreshSupply, VarSet, Variable};

/// A carrier with bijection action, partial composition and units.
pub trait OperadModel {
    type Elem: Clone + Eq + Ord + fmt::Debug + fmt::Display;

    /// How a decorated instance names an element of the carrier.
    fn embed(&self, inst: &DecoratedInstance) -> Result<Self::Elem>;
    fn act(&self, e: &Self::Elem, kappa: &Bijection) -> Result<Self::Elem>;
    fn compose(&self, a: &Self::Elem, x: &Variable, y: &Variable, b: &Self::Elem)
        -> Result<Self::Elem>;
    fn unit(&self, x: &Variable, y: &Variable) -> Result<Self::Elem>;
    fn entries(&self, e: &Self::Elem) -> VarSet;
}

/// Renames the free variables of a class along `kappa : X' -> X`; bound
/// variables are freshened away from the new names first.
pub fn vt_action(class: &TreeClass, kappa: &Bijection) -> Result<TreeClass> {
    let fv = class.free_vars();
    if kappa.codomain() != fv {
        return Err(Error::Domain(format!(
            "action codomain {{{}}} differs from the free variables {{{}}}",
            format_set(&kappa.codomain()),
            format_set(&fv)
        )));
    }
    let rep = class.representative();
    let mut avoid = rep.all_vars();
    avoid.extend(kappa.domain());
    let mut supply = FreshSupply::avoiding(avoid);
    let freshening = Bijection::from_pairs(
        rep.bound_vars().into_iter().map(|old| (supply.next("e"), old)),
    )?;
    rep.rename(&freshening)?.rename(kappa)?.canonicalize()
}

/// Grafts two classes along `x` in the first and `y` in the second: bound
/// variables and the grafting pair are freshened, the corollas are united
/// with a new edge, and the result is reduced to its normal-form class.
pub fn vt_compose(
    c1: &TreeClass,
    x: &Variable,
    y: &Variable,
    c2: &TreeClass,
) -> Result<TreeClass> {
    let xs = c1.free_vars();
    let ys = c2.free_vars();
    if !xs.contains(x) {
        return Err(Error::Domain(format!("`{x}` is not an entry of the first operand")));
    }
    if !ys.contains(y) {
        return Err(Error::Domain(format!("`{y}` is not an entry of the second operand")));
    }
    let res1: VarSet = xs.iter().filter(|v| *v != x).cloned().collect();
    let res2: VarSet = ys.iter().filter(|v| *v != y).cloned().collect();
    if let Some(shared) = res1.intersection(&res2).next() {
        return Err(Error::Clash(format!(
            "residual entries overlap on `{shared}`"
        )));
    }

    let t1 = c1.representative();
    let t2 = c2.representative();
    let mut avoid = t1.all_vars();
    avoid.extend(t2.all_vars());
    let mut supply = FreshSupply::avoiding(avoid);

    let mut rename1 = Vec::new();
    for old in t1.bound_vars() {
        rename1.push((supply.next("g"), old));
    }
    let x_new = supply.next("g");
    rename1.push((x_new.clone(), x.clone()));
    let t1 = t1.rename(&Bijection::from_pairs(rename1)?)?;

    let mut rename2 = Vec::new();
    for old in t2.bound_vars() {
        rename2.push((supply.next("g"), old));
    }
    let y_new = supply.next("g");
    rename2.push((y_new.clone(), y.clone()));
    let t2 = t2.rename(&Bijection::from_pairs(rename2)?)?;

    let mut corollas = t1.corollas().to_vec();
    corollas.extend(t2.corollas().iter().cloned());
    let mut edges = t1.edges().clone();
    edges.extend(t2.edges().iter().cloned());
    edges.insert(Edge::new(x_new, y_new)?);

    let grafted = VernonGraph::new(corollas, edges)?;
    normal_form(&grafted)?.canonicalize()
}

/// The exceptional class on `{x, y}`.
pub fn vt_unit(x: &Variable, y: &Variable) -> Result<TreeClass> {
    VernonGraph::single(Corolla::special(x.clone(), y.clone())?).canonicalize()
}

/// The free model: tree classes over arbitrary decorations, with instances
/// embedded as their single-corolla classes.
#[derive(Debug, Clone, Copy, Default)]
pub struct TreeModel;

impl OperadModel for TreeModel {
    type Elem = TreeClass;

    fn embed(&self, inst: &DecoratedInstance) -> Result<TreeClass> {
        Ok(eta(inst))
    }

    fn act(&self, e: &TreeClass, kappa: &Bijection) -> Result<TreeClass> {
        vt_action(e, kappa)
    }

    fn compose(&self, a: &TreeClass, x: &Variable, y: &Variable, b: &TreeClass) -> Result<TreeClass> {
        vt_compose(a, x, y, b)
    }

    fn unit(&self, x: &Variable, y: &Variable) -> Result<TreeClass> {
        vt_unit(x, y)
    }

    fn entries(&self, e: &TreeClass) -> VarSet {
        e.free_vars()
    }
}

/// Tree classes as an algebra over themselves: a tree-class decoration is
/// already a carrier element and embeds by renaming it along the attachment;
/// a base parameter embeds as its single-corolla class.
#[derive(Debug, Clone, Copy, Default)]
pub struct SelfAlgebra;

impl OperadModel for SelfAlgebra {
    type Elem = TreeClass;

    fn embed(&self, inst: &DecoratedInstance) -> Result<TreeClass> {
        match inst.decoration() {
            Decoration::Tree(class) => vt_action(class, inst.attachment()),
            Decoration::Base(_) => Ok(eta(inst)),
        }
    }

    fn act(&self, e: &TreeClass, kappa: &Bijection) -> Result<TreeClass> {
        vt_action(e, kappa)
    }

    fn compose(&self, a: &TreeClass, x: &Variable, y: &Variable, b: &TreeClass) -> Result<TreeClass> {
        vt_compose(a, x, y, b)
    }

    fn unit(&self, x: &Variable, y: &Variable) -> Result<TreeClass> {
        vt_unit(x, y)
    }

    fn entries(&self, e: &TreeClass) -> VarSet {
        e.free_vars()
    }
}

/// An assignment of an operand and one of its entries to each variable in
/// some index set.
#[derive(Debug, Clone)]
pub struct Assignment<E> {
    entries: BTreeMap<Variable, (E, Variable)>,
}

impl<E: Clone> Assignment<E> {
    pub fn new() -> Self {
        Assignment { entries: BTreeMap::new() }
    }

    pub fn assign(&mut self, x: Variable, operand: E, entry: Variable) {
        self.entries.insert(x, (operand, entry));
    }

    pub fn get(&self, x: &Variable) -> Option<&(E, Variable)> {
        self.entries.get(x)
    }

    pub fn keys(&self) -> VarSet {
        self.entries.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &(E, Variable))> {
        self.entries.iter()
    }
}

impl<E: Clone> Default for Assignment<E> {
    fn default() -> Self {
        Assignment::new()
    }
}

fn validate_assignment<M: OperadModel>(
    model: &M,
    phi: &Assignment<M::Elem>,
) -> Result<()> {
    let mut seen = VarSet::new();
    for (x, (operand, entry)) in phi.iter() {
        let ys = model.entries(operand);
        if !ys.contains(entry) {
            return Err(Error::Domain(format!(
                "chosen entry `{entry}` is not an entry of the operand assigned to `{x}`"
            )));
        }
        for v in ys {
            if v == *entry {
                continue;
            }
            if !seen.insert(v.clone()) {
                return Err(Error::Clash(format!(
                    "operand entries overlap on `{v}`"
                )));
            }
        }
    }
    Ok(())
}

/// The total composition of `f` with an assignment covering all of its
/// entries. The entries of `f` are first renamed to fresh names so the fold
/// can never clash, and the partial compositions are folded in ascending
/// entry order; the axioms make both choices semantically irrelevant.
pub fn total_composition<M: OperadModel>(
    model: &M,
    f: &M::Elem,
    phi: &Assignment<M::Elem>,
) -> Result<M::Elem> {
    let xs = model.entries(f);
    if phi.keys() != xs {
        return Err(Error::Domain(format!(
            "assignment keys {{{}}} differ from the entries {{{}}}",
            format_set(&phi.keys()),
            format_set(&xs)
        )));
    }
    validate_assignment(model, phi)?;

    let mut avoid = xs.clone();
    for (_, (operand, _)) in phi.iter() {
        avoid.extend(model.entries(operand));
    }
    let mut supply = FreshSupply::avoiding(avoid);
    let sigma = Bijection::from_pairs(xs.iter().map(|x| (supply.next("r"), x.clone())))?;

    let mut acc = model.act(f, &sigma)?;
    for x in &xs {
        let fresh_entry = sigma.unapply(x).expect("sigma covers every entry").clone();
        let (operand, entry) = phi.get(x).expect("assignment is total");
        acc = model.compose(&acc, &fresh_entry, entry, operand)?;
    }
    Ok(acc)
}

/// The axiom harness for the tree model: both associativity shapes,
/// equivariance, the three unit laws, commutativity, and the total
/// composition identities, on seeded random instances.
pub fn check_operad_axioms(bound: usize, instances: usize, seed: u64) -> crate::laws::LawReport {
    crate::laws::operad_suite(bound, instances, seed)
}

/// Folds partial compositions over just the assigned subset of entries,
/// without any precautionary renaming; callers arrange disjointness.
pub fn compose_entries<M: OperadModel>(
    model: &M,
    f: &M::Elem,
    phi: &Assignment<M::Elem>,
) -> Result<M::Elem> {
    let xs = model.entries(f);
    if !phi.keys().is_subset(&xs) {
        return Err(Error::Domain(
            "assignment mentions a variable that is not an entry".into(),
        ));
    }
    validate_assignment(model, phi)?;
    let mut acc = f.clone();
    for (x, (operand, entry)) in phi.iter() {
        acc = model.compose(&acc, x, entry, operand)?;
    }
    Ok(acc)
}
