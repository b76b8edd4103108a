//! The semantic bridge between the binder calculus, the combinator syntax
//! and tree classes: the translation of commands to combinators, the map
//! `phi` into tree classes (computed both through the translation and by
//! its direct clauses), the induced decision procedure for command
//! equivalence, the inverse translation, and the algebra structure map
//! `delta` evaluated through any model.

use std::collections::BTreeMap;

use crate::comb::{interpret, type_of, Combinator};
use crate::decompose::command_of;
use crate::error::{Error, Result};
use crate::mu::{cmd_all_vars, cmd_type, rename_cmd, MuCommand, MuTerm};
use crate::operad::{
    total_composition, Assignment, OperadModel, TreeModel,
};
use crate::signature::DecoratedInstance;
use crate::tree::{TreeClass, TreeKind, VernonGraph};
use crate::var::{format_set, Bijection, FreshSupply, Variable};

/// A term together with the fresh variable indexing its translation.
#[derive(Debug, Clone)]
pub struct FreshIndexedTerm {
    pub term: MuTerm,
    pub index: Variable,
}

impl FreshIndexedTerm {
    pub fn new(term: MuTerm, index: Variable) -> Result<FreshIndexedTerm> {
        if cmd_all_vars(&MuCommand::Pair(term.clone(), MuTerm::Var(index.clone()))).len()
            == cmd_all_vars(&MuCommand::Pair(term.clone(), term.clone())).len()
        {
            return Err(Error::Clash(format!(
                "index `{index}` is not fresh for the term"
            )));
        }
        Ok(FreshIndexedTerm { term, index })
    }
}

/// Translates a command to a combinator. Fresh hook indices are drawn
/// deterministically from the reserved namespace in traversal order, so
/// equal commands translate to equal combinators.
pub fn translate_command(c: &MuCommand) -> Result<Combinator> {
    cmd_type(c)?;
    let mut supply = FreshSupply::avoiding(cmd_all_vars(c));
    tr_cmd(c, &mut supply)
}

/// Translates a term at the given fresh index.
pub fn translate_term(t: &MuTerm, index: &Variable) -> Result<Combinator> {
    let mut all = match t {
        MuTerm::Var(x) => [x.clone()].into_iter().collect(),
        MuTerm::Mu(x, body) => {
            let mut vars = cmd_all_vars(body);
            vars.insert(x.clone());
            vars
        }
    };
    if all.contains(index) {
        return Err(Error::Clash(format!("index `{index}` occurs in the term")));
    }
    all.insert(index.clone());
    let mut supply = FreshSupply::avoiding(all);
    tr_term(t, index, &mut supply)
}

fn tr_cmd(c: &MuCommand, supply: &mut FreshSupply) -> Result<Combinator> {
    match c {
        MuCommand::Pair(s, t) => {
            let i = supply.next("i");
            let j = supply.next("i");
            let left = tr_term(s, &i, supply)?;
            let right = tr_term(t, &j, supply)?;
            Ok(Combinator::comp(left, i, j, right))
        }
        MuCommand::Apply(inst, args) => {
            // The total composition of the head with its argument
            // translations, expanded as a fold of partial compositions over
            // a fresh renaming of the head's entries.
            let entries = inst.current_vars();
            let sigma =
                Bijection::from_pairs(entries.iter().map(|x| (supply.next("r"), x.clone())))?;
            let mut acc = Combinator::Param(inst.act(&sigma)?);
            for x in &entries {
                let hook = sigma.unapply(x).expect("sigma covers the entries").clone();
                let index = supply.next("i");
                let operand = tr_term(&args[x], &index, supply)?;
                acc = Combinator::comp(acc, hook, index, operand);
            }
            Ok(acc)
        }
    }
}

fn tr_term(t: &MuTerm, index: &Variable, supply: &mut FreshSupply) -> Result<Combinator> {
    match t {
        MuTerm::Var(x) => Ok(Combinator::Id(x.clone(), index.clone())),
        MuTerm::Mu(x, body) => {
            // [[mu x.c]]_y = [[c[y/x]]].
            let ty = cmd_type(body)?;
            let mut pairs: Vec<(Variable, Variable)> = ty
                .iter()
                .filter(|v| *v != x)
                .map(|v| (v.clone(), v.clone()))
                .collect();
            pairs.push((index.clone(), x.clone()));
            let renamed = rename_cmd(body, &Bijection::from_pairs(pairs)?)?;
            tr_cmd(&renamed, supply)
        }
    }
}

/// The class of a command, as the interpretation of its translation in the
/// free tree model.
pub fn phi(c: &MuCommand) -> Result<TreeClass> {
    interpret(&translate_command(c)?, &TreeModel)
}

/// The class of a term at a fresh index.
pub fn phi_term(t: &MuTerm, index: &Variable) -> Result<TreeClass> {
    interpret(&translate_term(t, index)?, &TreeModel)
}

/// The same map computed by its direct clauses, without going through the
/// combinator syntax: an independent route kept for cross-checking.
pub fn phi_direct(c: &MuCommand) -> Result<TreeClass> {
    cmd_type(c)?;
    let mut supply = FreshSupply::avoiding(cmd_all_vars(c));
    phi_cmd(c, &mut supply)
}

fn phi_cmd(c: &MuCommand, supply: &mut FreshSupply) -> Result<TreeClass> {
    let model = TreeModel;
    match c {
        MuCommand::Pair(s, t) => {
            let i = supply.next("i");
            let j = supply.next("i");
            let left = phi_term_inner(s, &i, supply)?;
            let right = phi_term_inner(t, &j, supply)?;
            model.compose(&left, &i, &j, &right)
        }
        MuCommand::Apply(inst, args) => {
            let mut phi_assignment = Assignment::new();
            for (x, t) in args {
                let index = supply.next("i");
                let operand = phi_term_inner(t, &index, supply)?;
                phi_assignment.assign(x.clone(), operand, index);
            }
            total_composition(&model, &model.embed(inst)?, &phi_assignment)
        }
    }
}

fn phi_term_inner(
    t: &MuTerm,
    index: &Variable,
    supply: &mut FreshSupply,
) -> Result<TreeClass> {
    let model = TreeModel;
    match t {
        MuTerm::Var(x) => model.unit(x, index),
        MuTerm::Mu(x, body) => {
            let class = phi_cmd(body, supply)?;
            let kappa = Bijection::from_pairs(class.free_vars().iter().map(|v| {
                if v == x {
                    (index.clone(), v.clone())
                } else {
                    (v.clone(), v.clone())
                }
            }))?;
            model.act(&class, &kappa)
        }
    }
}

/// Decides command equivalence through the tree classes; sound and complete
/// for the equational theory of the calculus.
pub fn mu_equiv(c1: &MuCommand, c2: &MuCommand) -> Result<bool> {
    let t1 = cmd_type(c1)?;
    let t2 = cmd_type(c2)?;
    if t1 != t2 {
        return Err(Error::Type(format!(
            "commands have different types {{{}}} and {{{}}}",
            format_set(&t1),
            format_set(&t2)
        )));
    }
    Ok(phi(c1)? == phi(c2)?)
}

/// The inverse translation from combinators to commands: parameters become
/// all-variable applications, units become bare pairs, compositions become
/// cuts of two abstractions, actions become renamings.
pub fn comb_to_mu(c: &Combinator) -> Result<MuCommand> {
    type_of(c)?;
    match c {
        Combinator::Param(inst) => {
            let args: BTreeMap<Variable, MuTerm> = inst
                .current_vars()
                .into_iter()
                .map(|v| (v.clone(), MuTerm::Var(v)))
                .collect();
            MuCommand::apply(inst.clone(), args)
        }
        Combinator::Id(x, y) => Ok(MuCommand::Pair(
            MuTerm::Var(x.clone()),
            MuTerm::Var(y.clone()),
        )),
        Combinator::Comp(left, x, y, right) => Ok(MuCommand::Pair(
            MuTerm::mu(x.clone(), comb_to_mu(left)?),
            MuTerm::mu(y.clone(), comb_to_mu(right)?),
        )),
        Combinator::Act(body, sigma) => rename_cmd(&comb_to_mu(body)?, sigma),
    }
}

/// The structure map of an algebra over the tree monad: evaluates a
/// decorated tree by extracting any command denoting it and interpreting
/// that command's translation in the model. For the exceptional tree this
/// is the model's unit.
pub fn delta<M: OperadModel>(t: &VernonGraph, model: &M) -> Result<M::Elem> {
    match t.classify() {
        TreeKind::ExceptionalTree => {
            let fv: Vec<Variable> = t.free_vars().into_iter().collect();
            model.unit(&fv[0], &fv[1])
        }
        TreeKind::OrdinaryTree => {
            let c = command_of(t, 0)?;
            interpret(&translate_command(&c)?, model)
        }
        kind => Err(Error::Validation(format!(
            "delta needs an ordinary or exceptional tree, got {kind}"
        ))),
    }
}

/// `delta` evaluated once per corolla choice; all routes must agree for the
/// map to be well-defined.
pub fn delta_all_routes<M: OperadModel>(t: &VernonGraph, model: &M) -> Result<Vec<M::Elem>> {
    match t.classify() {
        TreeKind::ExceptionalTree => Ok(vec![delta(t, model)?]),
        TreeKind::OrdinaryTree => (0..t.corollas().len())
            .map(|i| {
                let c = command_of(t, i)?;
                interpret(&translate_command(&c)?, model)
            })
            .collect(),
        kind => Err(Error::Validation(format!(
            "delta needs an ordinary or exceptional tree, got {kind}"
        ))),
    }
}

/// The partial composition derived from a structure map:
/// `f x*y g = delta(eta(f) grafted-at x,y eta(g))` with both elements seen
/// as single-corolla decorated trees.
pub fn delta_derived_compose<M>(
    model: &M,
    f: &DecoratedInstance,
    x: &Variable,
    y: &Variable,
    g: &DecoratedInstance,
) -> Result<M::Elem>
where
    M: OperadModel,
{
    use crate::operad::vt_compose;
    let grafted = vt_compose(&crate::monad::eta(f), x, y, &crate::monad::eta(g))?;
    delta(grafted.representative(), model)
}
