//! Seeded random generators for trees, two- and three-level trees, commands
//! and combinators, plus a small deterministic tree corpus. Everything is a
//! pure function of the seed, so suite reports reproduce bit for bit.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::comb::{type_of, Combinator};
use crate::error::Result;
use crate::monad::eta;
use crate::mu::{cmd_type, MuCommand, MuTerm};
use crate::operad::vt_unit;
use crate::signature::{BaseParameter, DecoratedInstance, Decoration};
use crate::tree::{Corolla, Edge, TreeClass, VernonGraph};
use crate::var::{Bijection, VarSet, Variable};

/// Shared state for one generation run: the RNG plus counters for variable
/// and parameter names and the pool of parameters available for reuse.
pub struct GenCtx {
    pub rng: ChaCha8Rng,
    vars: u64,
    params: u64,
    by_arity: BTreeMap<usize, Vec<BaseParameter>>,
}

impl GenCtx {
    pub fn new(seed: u64) -> GenCtx {
        GenCtx {
            rng: ChaCha8Rng::seed_from_u64(seed),
            vars: 0,
            params: 0,
            by_arity: BTreeMap::new(),
        }
    }

    pub fn fresh_var(&mut self) -> Variable {
        let v = Variable::raw(&format!("v{}", self.vars));
        self.vars += 1;
        v
    }

    pub fn fresh_vars(&mut self, n: usize) -> Vec<Variable> {
        (0..n).map(|_| self.fresh_var()).collect()
    }

    /// A parameter of the given arity: occasionally one seen before, so
    /// generated trees also exercise repeated decorations.
    pub fn parameter(&mut self, arity: usize) -> BaseParameter {
        if let Some(pool) = self.by_arity.get(&arity) {
            if !pool.is_empty() && self.rng.gen_bool(0.3) {
                let i = self.rng.gen_range(0..pool.len());
                return pool[i].clone();
            }
        }
        let profile = (0..arity)
            .map(|_| {
                let v = Variable::raw(&format!("e{}", self.vars));
                self.vars += 1;
                v
            })
            .collect::<Vec<_>>();
        let p = BaseParameter::new(&format!("p{}", self.params), profile)
            .expect("minted profiles are duplicate-free");
        self.params += 1;
        self.by_arity.entry(arity).or_default().push(p.clone());
        p
    }

    /// An instance of a parameter over the given current variables, with a
    /// randomly matched attachment.
    pub fn instance_over(&mut self, current: &[Variable]) -> DecoratedInstance {
        let param = self.parameter(current.len());
        let mut profile = param.profile.clone();
        profile.shuffle(&mut self.rng);
        let attachment =
            Bijection::from_pairs(current.iter().cloned().zip(profile)).expect("both sides distinct");
        DecoratedInstance::new(Decoration::Base(param), attachment)
            .expect("attachment is onto the profile")
    }
}

/// A connected random graph shape: `parents[i]` attaches node `i + 1`.
fn random_parents(ctx: &mut GenCtx, n: usize) -> Vec<usize> {
    (1..n).map(|i| ctx.rng.gen_range(0..i)).collect()
}

/// A random extended tree with `n_ordinary` ordinary corollas and up to
/// `n_special` special corollas (nodes of degree over two cannot be
/// special), each ordinary corolla getting up to `max_extra` free slots.
pub fn gen_extended_tree(
    ctx: &mut GenCtx,
    n_ordinary: usize,
    n_special: usize,
    max_extra: usize,
) -> VernonGraph {
    let n = (n_ordinary + n_special).max(1);
    let parents = random_parents(ctx, n);
    let mut degree = vec![0usize; n];
    for (i, &p) in parents.iter().enumerate() {
        degree[i + 1] += 1;
        degree[p] += 1;
    }

    // Mark up to n_special nodes of degree <= 2 as special.
    let mut special = vec![false; n];
    let mut candidates: Vec<usize> = (0..n).filter(|&i| degree[i] <= 2).collect();
    candidates.shuffle(&mut ctx.rng);
    for idx in candidates.into_iter().take(n_special) {
        special[idx] = true;
    }

    // Mint slot variables: edges first, then extras.
    let mut slots: Vec<Vec<Variable>> = Vec::with_capacity(n);
    for i in 0..n {
        let extra = if special[i] {
            2usize.saturating_sub(degree[i])
        } else if degree[i] == 0 {
            1 + ctx.rng.gen_range(0..=max_extra)
        } else {
            ctx.rng.gen_range(0..=max_extra)
        };
        let mut vars = ctx.fresh_vars(degree[i] + extra);
        vars.shuffle(&mut ctx.rng);
        slots.push(vars);
    }

    let mut used = vec![0usize; n];
    let mut edges = BTreeSet::new();
    for (i, &p) in parents.iter().enumerate() {
        let child = i + 1;
        let a = slots[child][used[child]].clone();
        used[child] += 1;
        let b = slots[p][used[p]].clone();
        used[p] += 1;
        edges.insert(Edge::new(a, b).expect("minted names differ"));
    }

    let corollas = (0..n)
        .map(|i| {
            if special[i] {
                Corolla::special(slots[i][0].clone(), slots[i][1].clone())
                    .expect("minted names differ")
            } else {
                Corolla::Ordinary(ctx.instance_over(&slots[i]))
            }
        })
        .collect();
    VernonGraph::new(corollas, edges).expect("construction satisfies the invariants")
}

/// A random ordinary tree whose free variables are exactly `fv`.
pub fn gen_tree_over(ctx: &mut GenCtx, fv: &VarSet, max_corollas: usize) -> VernonGraph {
    let n = ctx.rng.gen_range(1..=max_corollas.max(1));
    let parents = random_parents(ctx, n);
    let mut degree = vec![0usize; n];
    for (i, &p) in parents.iter().enumerate() {
        degree[i + 1] += 1;
        degree[p] += 1;
    }

    // Scatter the free names over the nodes.
    let mut extras: Vec<Vec<Variable>> = vec![Vec::new(); n];
    for name in fv {
        let node = ctx.rng.gen_range(0..n);
        extras[node].push(name.clone());
    }

    let mut slots: Vec<Vec<Variable>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut vars = ctx.fresh_vars(degree[i]);
        vars.extend(extras[i].iter().cloned());
        vars.shuffle(&mut ctx.rng);
        slots.push(vars);
    }

    let mut used: Vec<usize> = vec![0; n];
    // Edge endpoints must avoid the free names scattered above.
    let next_edge_slot = |slots: &Vec<Vec<Variable>>, used: &mut Vec<usize>, node: usize, fv: &VarSet| {
        loop {
            let v = slots[node][used[node]].clone();
            used[node] += 1;
            if !fv.contains(&v) {
                return v;
            }
        }
    };
    let mut edges = BTreeSet::new();
    for (i, &p) in parents.iter().enumerate() {
        let child = i + 1;
        let a = next_edge_slot(&slots, &mut used, child, fv);
        let b = next_edge_slot(&slots, &mut used, p, fv);
        edges.insert(Edge::new(a, b).expect("minted names differ"));
    }

    let corollas = (0..n)
        .map(|i| Corolla::Ordinary(ctx.instance_over(&slots[i])))
        .collect();
    VernonGraph::new(corollas, edges).expect("construction satisfies the invariants")
}

/// A random one-level class over `fv`; for two-element `fv` occasionally
/// the exceptional class.
pub fn gen_class_over(ctx: &mut GenCtx, fv: &VarSet, max_corollas: usize) -> Result<TreeClass> {
    if fv.len() == 2 && ctx.rng.gen_bool(0.25) {
        let pair: Vec<&Variable> = fv.iter().collect();
        return vt_unit(pair[0], pair[1]);
    }
    gen_tree_over(ctx, fv, max_corollas).canonicalize()
}

/// Replaces every ordinary corolla's decoration by a class produced by
/// `inner` over freshly minted profile names, attached by a random matching.
pub fn redecorate<F>(ctx: &mut GenCtx, t: &VernonGraph, mut inner: F) -> Result<VernonGraph>
where
    F: FnMut(&mut GenCtx, &VarSet) -> Result<TreeClass>,
{
    let corollas = t
        .corollas()
        .iter()
        .map(|c| match c {
            Corolla::Special(a, b) => Corolla::special(a.clone(), b.clone()),
            Corolla::Ordinary(inst) => {
                let current: Vec<Variable> = inst.current_vars().into_iter().collect();
                let minted: VarSet = ctx.fresh_vars(current.len()).into_iter().collect();
                let class = inner(ctx, &minted)?;
                let mut image: Vec<Variable> = class.free_vars().into_iter().collect();
                image.shuffle(&mut ctx.rng);
                let attachment =
                    Bijection::from_pairs(current.into_iter().zip(image))?;
                Ok(Corolla::Ordinary(DecoratedInstance::new(
                    Decoration::Tree(class),
                    attachment,
                )?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    VernonGraph::new(corollas, t.edges().clone())
}

/// A random two-level tree: outer shape within the bound, inner classes with
/// up to three corollas each, exceptional decorations included.
pub fn gen_two_level(ctx: &mut GenCtx, bound: usize, outer_specials: usize) -> Result<VernonGraph> {
    let n_outer = ctx.rng.gen_range(1..=bound.max(1));
    let base = gen_extended_tree(ctx, n_outer, outer_specials, 2);
    redecorate(ctx, &base, |ctx, fv| gen_class_over(ctx, fv, 3))
}

/// A random two-level class over `fv`.
pub fn gen_two_level_class(ctx: &mut GenCtx, fv: &VarSet, bound: usize) -> Result<TreeClass> {
    let base = gen_tree_over(ctx, fv, bound.max(1));
    redecorate(ctx, &base, |ctx, inner_fv| gen_class_over(ctx, inner_fv, 3))?.canonicalize()
}

/// A random three-level tree: outer corollas decorated by two-level classes.
pub fn gen_three_level(ctx: &mut GenCtx, bound: usize) -> Result<VernonGraph> {
    let n_outer = ctx.rng.gen_range(1..=bound.max(1));
    let base = gen_extended_tree(ctx, n_outer, 0, 2);
    redecorate(ctx, &base, |ctx, fv| gen_two_level_class(ctx, fv, 2))
}

/// A random well-typed command. Variables are minted fresh throughout, so
/// linearity holds by construction; pair commands and abstractions appear
/// with the given depth budget.
pub fn gen_mu_command(ctx: &mut GenCtx, depth: usize) -> MuCommand {
    if depth > 0 && ctx.rng.gen_bool(0.35) {
        MuCommand::Pair(gen_mu_term(ctx, depth - 1), gen_mu_term(ctx, depth - 1))
    } else {
        gen_apply(ctx, depth)
    }
}

fn gen_apply(ctx: &mut GenCtx, depth: usize) -> MuCommand {
    let arity = ctx.rng.gen_range(1..=3);
    let current = ctx.fresh_vars(arity);
    let inst = ctx.instance_over(&current);
    let mut args = BTreeMap::new();
    for (i, entry) in current.iter().enumerate() {
        // Keep at least the first argument a variable so every command has
        // a non-empty type to bind through.
        let t = if i > 0 && depth > 0 && ctx.rng.gen_bool(0.5) {
            gen_abstraction(ctx, depth - 1)
        } else {
            MuTerm::Var(ctx.fresh_var())
        };
        args.insert(entry.clone(), t);
    }
    MuCommand::apply(inst, args).expect("freshly minted arguments are disjoint")
}

fn gen_mu_term(ctx: &mut GenCtx, depth: usize) -> MuTerm {
    if depth > 0 && ctx.rng.gen_bool(0.6) {
        gen_abstraction(ctx, depth)
    } else {
        MuTerm::Var(ctx.fresh_var())
    }
}

fn gen_abstraction(ctx: &mut GenCtx, depth: usize) -> MuTerm {
    let body = gen_mu_command(ctx, depth);
    let ty: Vec<Variable> = cmd_type(&body)
        .expect("generated commands are well-typed")
        .into_iter()
        .collect();
    if ty.is_empty() {
        // A closed command offers nothing to bind; fall back to a variable.
        return MuTerm::Var(ctx.fresh_var());
    }
    let binder = ty[ctx.rng.gen_range(0..ty.len())].clone();
    MuTerm::mu(binder, body)
}

/// A random well-typed combinator.
pub fn gen_combinator(ctx: &mut GenCtx, depth: usize) -> Combinator {
    if depth == 0 {
        return gen_comb_leaf(ctx);
    }
    match ctx.rng.gen_range(0..4) {
        0 => gen_comb_leaf(ctx),
        1 => {
            let left = gen_combinator(ctx, depth - 1);
            let right = gen_combinator(ctx, depth - 1);
            let lt: Vec<Variable> = type_of(&left).expect("well-typed").into_iter().collect();
            let rt: Vec<Variable> = type_of(&right).expect("well-typed").into_iter().collect();
            if lt.is_empty() || rt.is_empty() {
                return gen_comb_leaf(ctx);
            }
            let x = lt[ctx.rng.gen_range(0..lt.len())].clone();
            let y = rt[ctx.rng.gen_range(0..rt.len())].clone();
            Combinator::comp(left, x, y, right)
        }
        2 => {
            let body = gen_combinator(ctx, depth - 1);
            let ty = type_of(&body).expect("well-typed");
            let fresh: Vec<Variable> = ctx.fresh_vars(ty.len());
            let sigma = Bijection::from_pairs(fresh.into_iter().zip(ty))
                .expect("fresh domain");
            Combinator::act(body, sigma)
        }
        _ => {
            let x = ctx.fresh_var();
            let y = ctx.fresh_var();
            Combinator::Id(x, y)
        }
    }
}

fn gen_comb_leaf(ctx: &mut GenCtx) -> Combinator {
    if ctx.rng.gen_bool(0.2) {
        let x = ctx.fresh_var();
        let y = ctx.fresh_var();
        Combinator::Id(x, y)
    } else {
        let arity = ctx.rng.gen_range(1..=3);
        let current = ctx.fresh_vars(arity);
        Combinator::Param(ctx.instance_over(&current))
    }
}

/// A deterministic corpus of ordinary trees with up to five corollas,
/// covering every unlabeled tree shape of that size with both sparse and
/// richer free-slot patterns, a closed tree, and one tree with a repeated
/// decoration.
pub fn small_tree_corpus() -> Vec<VernonGraph> {
    let shapes: [&[usize]; 8] = [
        &[],
        &[0],
        &[0, 0],
        &[0, 0, 0],
        &[0, 1, 2],
        &[0, 0, 0, 0],
        &[0, 1, 2, 3],
        &[0, 1, 1, 0],
    ];
    let mut out = Vec::new();
    for parents in shapes {
        out.push(corpus_tree(parents, 1, false));
        out.push(corpus_tree(parents, 2, false));
    }
    // A closed two-corolla tree and a repeated-decoration star.
    out.push(corpus_tree(&[0], 0, false));
    out.push(corpus_tree(&[0, 0], 1, true));
    out
}

/// Builds one corpus tree: `extra` free slots on every node; when `reuse`
/// is set all leaves of equal arity share one parameter.
fn corpus_tree(parents: &[usize], extra: usize, reuse: bool) -> VernonGraph {
    let n = parents.len() + 1;
    let mut degree = vec![0usize; n];
    for (i, &p) in parents.iter().enumerate() {
        degree[i + 1] += 1;
        degree[p] += 1;
    }
    let mut counter = 0u64;
    let mut mint = |k: usize| -> Vec<Variable> {
        (0..k)
            .map(|_| {
                let v = Variable::raw(&format!("v{counter}"));
                counter += 1;
                v
            })
            .collect()
    };
    let slots: Vec<Vec<Variable>> = (0..n)
        .map(|i| mint(degree[i] + extra.max(if degree[i] == 0 { 1 } else { 0 })))
        .collect();

    let mut shared: BTreeMap<usize, BaseParameter> = BTreeMap::new();
    let corollas: Vec<Corolla> = (0..n)
        .map(|i| {
            let arity = slots[i].len();
            let param = if reuse && degree[i] == 1 {
                shared
                    .entry(arity)
                    .or_insert_with(|| {
                        BaseParameter::new(
                            &format!("shared{arity}"),
                            (0..arity).map(|k| Variable::raw(&format!("s{arity}_{k}"))).collect(),
                        )
                        .expect("distinct profile names")
                    })
                    .clone()
            } else {
                BaseParameter::new(&format!("c{i}"), slots[i].clone())
                    .expect("distinct profile names")
            };
            let attachment = Bijection::from_pairs(
                slots[i].iter().cloned().zip(param.profile.iter().cloned()),
            )
            .expect("both sides distinct");
            Corolla::Ordinary(
                DecoratedInstance::new(Decoration::Base(param), attachment)
                    .expect("attachment matches the profile"),
            )
        })
        .collect();

    let mut used = vec![extra; n]; // edge slots start after the extras
    let mut edges = BTreeSet::new();
    for (i, &p) in parents.iter().enumerate() {
        let child = i + 1;
        let a = slots[child][used[child]].clone();
        used[child] += 1;
        let b = slots[p][used[p]].clone();
        used[p] += 1;
        edges.insert(Edge::new(a, b).expect("minted names differ"));
    }
    VernonGraph::new(corollas, edges).expect("corpus construction is valid")
}

/// Convenience: the eta-class of a freshly minted instance over `fv`.
pub fn minted_class(ctx: &mut GenCtx, fv: &[Variable]) -> TreeClass {
    eta(&ctx.instance_over(fv))
}
