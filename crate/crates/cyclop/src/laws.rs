//! Law suites: seeded random instance checks for the composition axioms,
//! the monad laws, the translation identities, and the decomposition
//! identities,
//! with plain-text and JSON reports.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::comb::{interpret, type_of};
use crate::decompose::{command_of, decomposition, find_leaf_corolla, pluck, reconstruct};
use crate::error::{Error, Result};
use crate::gen::{
    gen_class_over, gen_combinator, gen_extended_tree, gen_mu_command, gen_three_level,
    gen_tree_over, gen_two_level, redecorate, small_tree_corpus, GenCtx,
};
use crate::monad::{eta_outer, map_eta, map_mu, mu, mu_class};
use crate::mu::{
    cmd_type, is_normal_form, mu_alpha_eq, mu_normal_form, mu_step, prime_closure, rename_cmd,
    substitute,
};
use crate::operad::{
    compose_entries, total_composition, vt_action, vt_compose, vt_unit, Assignment, OperadModel,
    TreeModel,
};
use crate::oracles::{alpha_eq_bruteforce, pluck_by_rules};
use crate::rewrite::{all_normal_forms, normal_form, normal_form_trace, special_count};
use crate::signature::Decoration;
use crate::translate::{comb_to_mu, phi, phi_direct, phi_term};
use crate::tree::{Corolla, TreeClass, TreeKind, VernonGraph};
use crate::var::{Bijection, VarSet, Variable};

#[derive(Debug, Clone, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl LawCheck {
    fn new(law: &str) -> LawCheck {
        LawCheck { law: law.to_string(), instances: 0, failures: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record<T: std::fmt::Display>(&mut self, outcome: std::result::Result<bool, T>, detail: &str) {
        self.instances += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(format!("instance {}: {detail}", self.instances)),
            Err(e) => self
                .failures
                .push(format!("instance {}: error {e} ({detail})", self.instances)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub bound: usize,
    pub instances: usize,
    pub seed: u64,
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LawCheck::ok)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "suite {} (bound {}, instances {}, seed {})\n",
            self.suite, self.bound, self.instances, self.seed
        );
        for c in &self.checks {
            if c.ok() {
                out.push_str(&format!("  {:<24} ok    ({} instances)\n", c.law, c.instances));
            } else {
                out.push_str(&format!(
                    "  {:<24} FAIL  ({} of {} instances)\n",
                    c.law,
                    c.failures.len(),
                    c.instances
                ));
                for f in c.failures.iter().take(3) {
                    out.push_str(&format!("    {f}\n"));
                }
            }
        }
        out
    }
}

/// A random small variable set drawn from fresh names.
fn fresh_set(ctx: &mut GenCtx, min: usize, max: usize) -> VarSet {
    let n = ctx.rng.gen_range(min..=max.max(min));
    ctx.fresh_vars(n).into_iter().collect()
}

fn pick(ctx: &mut GenCtx, set: &VarSet) -> Variable {
    let items: Vec<&Variable> = set.iter().collect();
    items[ctx.rng.gen_range(0..items.len())].clone()
}

fn pick_two(ctx: &mut GenCtx, set: &VarSet) -> (Variable, Variable) {
    let items: Vec<&Variable> = set.iter().collect();
    let i = ctx.rng.gen_range(0..items.len());
    let mut j = ctx.rng.gen_range(0..items.len() - 1);
    if j >= i {
        j += 1;
    }
    (items[i].clone(), items[j].clone())
}

fn random_bijection_onto(ctx: &mut GenCtx, onto: &VarSet) -> Bijection {
    use rand::seq::SliceRandom;
    let fresh = ctx.fresh_vars(onto.len());
    let mut image: Vec<Variable> = onto.iter().cloned().collect();
    image.shuffle(&mut ctx.rng);
    Bijection::from_pairs(fresh.into_iter().zip(image)).expect("fresh domain")
}

// ---------------------------------------------------------------------------
// Composition axiom suite
// ---------------------------------------------------------------------------

pub fn operad_suite(bound: usize, instances: usize, seed: u64) -> LawReport {
    let mut ctx = GenCtx::new(seed);
    let max_size = bound.max(2);
    let max_corollas = bound.clamp(1, 3);

    let mut seq_assoc = LawCheck::new("sequential assoc");
    let mut par_assoc = LawCheck::new("parallel assoc");
    let mut equivariance = LawCheck::new("equivariance");
    let mut right_unit = LawCheck::new("right unit");
    let mut left_unit = LawCheck::new("left unit");
    let mut unit_action = LawCheck::new("unit action");
    let mut commutativity = LawCheck::new("commutativity");
    let mut total_renaming = LawCheck::new("total comp renaming");
    let mut total_stacking = LawCheck::new("total comp stacking");

    for _ in 0..instances {
        // Sequential associativity: (f x.y g) u.z h = f x.y (g u.z h),
        // with both hooks y, u on g.
        {
            let xs = fresh_set(&mut ctx, 1, max_size);
            let ys = fresh_set(&mut ctx, 2, max_size);
            let zs = fresh_set(&mut ctx, 1, max_size);
            let f = gen_class_over(&mut ctx, &xs, max_corollas).expect("generated class");
            let g = gen_class_over(&mut ctx, &ys, max_corollas).expect("generated class");
            let h = gen_class_over(&mut ctx, &zs, max_corollas).expect("generated class");
            let x = pick(&mut ctx, &xs);
            let (y, u) = pick_two(&mut ctx, &ys);
            let z = pick(&mut ctx, &zs);
            let outcome = (|| -> Result<bool> {
                let lhs = vt_compose(&vt_compose(&f, &x, &y, &g)?, &u, &z, &h)?;
                let rhs = vt_compose(&f, &x, &y, &vt_compose(&g, &u, &z, &h)?)?;
                Ok(lhs == rhs)
            })();
            seq_assoc.record(outcome, "sequential associativity sides differ");
        }

        // Parallel associativity: (f x.y g) u.z h = (f u.z h) x.y g,
        // with both hooks x, u on f.
        {
            let xs = fresh_set(&mut ctx, 2, max_size);
            let ys = fresh_set(&mut ctx, 1, max_size);
            let zs = fresh_set(&mut ctx, 1, max_size);
            let f = gen_class_over(&mut ctx, &xs, max_corollas).expect("generated class");
            let g = gen_class_over(&mut ctx, &ys, max_corollas).expect("generated class");
            let h = gen_class_over(&mut ctx, &zs, max_corollas).expect("generated class");
            let (x, u) = pick_two(&mut ctx, &xs);
            let y = pick(&mut ctx, &ys);
            let z = pick(&mut ctx, &zs);
            let outcome = (|| -> Result<bool> {
                let lhs = vt_compose(&vt_compose(&f, &x, &y, &g)?, &u, &z, &h)?;
                let rhs = vt_compose(&vt_compose(&f, &u, &z, &h)?, &x, &y, &g)?;
                Ok(lhs == rhs)
            })();
            par_assoc.record(outcome, "parallel associativity sides differ");
        }

        // EQ: acted operands compose to the acted composite.
        {
            let xs = fresh_set(&mut ctx, 1, max_size);
            let ys = fresh_set(&mut ctx, 1, max_size);
            let f = gen_class_over(&mut ctx, &xs, max_corollas).expect("generated class");
            let g = gen_class_over(&mut ctx, &ys, max_corollas).expect("generated class");
            let x = pick(&mut ctx, &xs);
            let y = pick(&mut ctx, &ys);
            let sigma1 = random_bijection_onto(&mut ctx, &xs);
            let sigma2 = random_bijection_onto(&mut ctx, &ys);
            let outcome = (|| -> Result<bool> {
                let fx = vt_action(&f, &sigma1)?;
                let gy = vt_action(&g, &sigma2)?;
                let x1 = sigma1.unapply(&x).expect("onto").clone();
                let y1 = sigma2.unapply(&y).expect("onto").clone();
                let lhs = vt_compose(&fx, &x1, &y1, &gy)?;

                let composed = vt_compose(&f, &x, &y, &g)?;
                let res_x: VarSet = xs.iter().filter(|v| **v != x).cloned().collect();
                let res_y: VarSet = ys.iter().filter(|v| **v != y).cloned().collect();
                let sigma =
                    sigma1.restrict(&res_x)?.disjoint_union(&sigma2.restrict(&res_y)?)?;
                let rhs = vt_action(&composed, &sigma)?;
                Ok(lhs == rhs)
            })();
            equivariance.record(outcome, "equivariance sides differ");
        }

        // Units: composing with a unit on either side renames the entry.
        {
            let xs = fresh_set(&mut ctx, 1, max_size);
            let f = gen_class_over(&mut ctx, &xs, max_corollas).expect("generated class");
            let x = pick(&mut ctx, &xs);
            let y = ctx.fresh_var();
            let z = if ctx.rng.gen_bool(0.2) { x.clone() } else { ctx.fresh_var() };
            let expected = (|| -> Result<TreeClass> {
                let mut pairs: Vec<(Variable, Variable)> = xs
                    .iter()
                    .filter(|v| **v != x)
                    .map(|v| (v.clone(), v.clone()))
                    .collect();
                pairs.push((z.clone(), x.clone()));
                vt_action(&f, &Bijection::from_pairs(pairs)?)
            })();
            let expected = match expected {
                Ok(c) => c,
                Err(e) => {
                    right_unit.record(Err::<bool, Error>(e), "renaming failed");
                    continue;
                }
            };
            right_unit.record(
                (|| -> Result<bool> { Ok(vt_compose(&f, &x, &y, &vt_unit(&y, &z)?)? == expected) })(),
                "right-unit composite differs from the renaming",
            );
            left_unit.record(
                (|| -> Result<bool> { Ok(vt_compose(&vt_unit(&y, &z)?, &y, &x, &f)? == expected) })(),
                "left-unit composite differs from the renaming",
            );
        }

        // Units are closed under actions.
        {
            let x = ctx.fresh_var();
            let y = ctx.fresh_var();
            let u = ctx.fresh_var();
            let w = ctx.fresh_var();
            let sigma = if ctx.rng.gen_bool(0.5) {
                Bijection::from_pairs([(u.clone(), x.clone()), (w.clone(), y.clone())])
            } else {
                Bijection::from_pairs([(u.clone(), y.clone()), (w.clone(), x.clone())])
            }
            .expect("distinct names");
            unit_action.record(
                (|| -> Result<bool> { Ok(vt_action(&vt_unit(&x, &y)?, &sigma)? == vt_unit(&u, &w)?) })(),
                "acted unit differs",
            );
        }

        // Composition is commutative.
        {
            let xs = fresh_set(&mut ctx, 1, max_size);
            let ys = fresh_set(&mut ctx, 1, max_size);
            let f = gen_class_over(&mut ctx, &xs, max_corollas).expect("generated class");
            let g = gen_class_over(&mut ctx, &ys, max_corollas).expect("generated class");
            let x = pick(&mut ctx, &xs);
            let y = pick(&mut ctx, &ys);
            commutativity.record(
                (|| -> Result<bool> { Ok(vt_compose(&f, &x, &y, &g)? == vt_compose(&g, &y, &x, &f)?) })(),
                "swapped composites differ",
            );
        }

        // Total composition: post-renaming and stacking laws.
        {
            let model = TreeModel;
            let xs = fresh_set(&mut ctx, 1, 2);
            let f = gen_class_over(&mut ctx, &xs, max_corollas).expect("generated class");
            let mut phi_asgn = Assignment::new();
            let mut operand_residue = VarSet::new();
            for x in &xs {
                let ys = fresh_set(&mut ctx, 1, 3);
                let g = gen_class_over(&mut ctx, &ys, max_corollas).expect("generated class");
                let entry = pick(&mut ctx, &ys);
                operand_residue.extend(ys.iter().filter(|v| **v != entry).cloned());
                phi_asgn.assign(x.clone(), g, entry);
            }

            // (a) renaming the residue after composing equals composing the
            //     renamed operands.
            let psi = random_bijection_onto(&mut ctx, &operand_residue);
            let outcome = (|| -> Result<bool> {
                let lhs = vt_action(&total_composition(&model, &f, &phi_asgn)?, &psi)?;
                let mut renamed = Assignment::new();
                for (x, (g, entry)) in phi_asgn.iter() {
                    let local: VarSet = model
                        .entries(g)
                        .iter()
                        .filter(|v| *v != entry)
                        .cloned()
                        .collect();
                    let psi_local = psi.restrict(&local)?.extend_fixpoint(entry)?;
                    renamed.assign(x.clone(), vt_action(g, &psi_local)?, entry.clone());
                }
                let rhs = total_composition(&model, &f, &renamed)?;
                Ok(lhs == rhs)
            })();
            total_renaming.record(outcome, "renaming law sides differ");

            // (b) a stacked assignment equals composing it into the
            //     operands first.
            let mut stacked = Assignment::new();
            for w in &operand_residue {
                let zs = fresh_set(&mut ctx, 1, 2);
                let h = gen_class_over(&mut ctx, &zs, max_corollas).expect("generated class");
                let entry = pick(&mut ctx, &zs);
                stacked.assign(w.clone(), h, entry);
            }
            let outcome = (|| -> Result<bool> {
                let lhs = total_composition(
                    &model,
                    &total_composition(&model, &f, &phi_asgn)?,
                    &stacked,
                )?;
                let mut pushed = Assignment::new();
                for (x, (g, entry)) in phi_asgn.iter() {
                    let mut local = Assignment::new();
                    for w in model.entries(g) {
                        if w == *entry {
                            continue;
                        }
                        let (h, e) = stacked.get(&w).expect("stacked covers the residue");
                        local.assign(w.clone(), h.clone(), e.clone());
                    }
                    pushed.assign(x.clone(), compose_entries(&model, g, &local)?, entry.clone());
                }
                let rhs = total_composition(&model, &f, &pushed)?;
                Ok(lhs == rhs)
            })();
            total_stacking.record(outcome, "stacking law sides differ");
        }
    }

    LawReport {
        suite: "operad".into(),
        bound,
        instances,
        seed,
        checks: vec![
            seq_assoc,
            par_assoc,
            equivariance,
            right_unit,
            left_unit,
            unit_action,
            commutativity,
            total_renaming,
            total_stacking,
        ],
    }
}

// ---------------------------------------------------------------------------
// Monad suite
// ---------------------------------------------------------------------------

/// Splits random edges of an ordinary tree with special corollas, giving an
/// extended class with the same free variables.
fn gen_extended_class_over(ctx: &mut GenCtx, fv: &VarSet, max_corollas: usize) -> Result<TreeClass> {
    let base = gen_tree_over(ctx, fv, max_corollas);
    let mut graph = base;
    for _ in 0..ctx.rng.gen_range(0..=2u32) {
        let edges: Vec<_> = graph.edges().iter().cloned().collect();
        if edges.is_empty() {
            break;
        }
        let e = &edges[ctx.rng.gen_range(0..edges.len())];
        let (a, b) = e.endpoints();
        let s1 = ctx.fresh_var();
        let s2 = ctx.fresh_var();
        let mut corollas = graph.corollas().to_vec();
        corollas.push(Corolla::special(s1.clone(), s2.clone())?);
        let mut edges_new: BTreeSet<crate::tree::Edge> =
            graph.edges().iter().filter(|x| *x != e).cloned().collect();
        edges_new.insert(crate::tree::Edge::new(a.clone(), s1)?);
        edges_new.insert(crate::tree::Edge::new(b.clone(), s2)?);
        graph = VernonGraph::new(corollas, edges_new)?;
    }
    graph.canonicalize()
}

/// Normalizes every decoration class separately, keeping attachments.
fn map_nf(t: &VernonGraph) -> Result<VernonGraph> {
    let corollas = t
        .corollas()
        .iter()
        .map(|c| match c {
            Corolla::Special(a, b) => Corolla::special(a.clone(), b.clone()),
            Corolla::Ordinary(inst) => {
                let Decoration::Tree(class) = inst.decoration() else {
                    return Err(Error::Type("not a two-level corolla".into()));
                };
                let reduced = normal_form(class.representative())?.canonicalize()?;
                Ok(Corolla::Ordinary(crate::signature::DecoratedInstance::new(
                    Decoration::Tree(reduced),
                    inst.attachment().clone(),
                )?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    VernonGraph::new(corollas, t.edges().clone())
}

/// Flattens every decoration class separately (no normalization).
fn map_flat(t: &VernonGraph) -> Result<VernonGraph> {
    let corollas = t
        .corollas()
        .iter()
        .map(|c| match c {
            Corolla::Special(a, b) => Corolla::special(a.clone(), b.clone()),
            Corolla::Ordinary(inst) => {
                let Decoration::Tree(class) = inst.decoration() else {
                    return Err(Error::Type("not a two-level corolla".into()));
                };
                let flat = crate::monad::flatten(class.representative())?.canonicalize()?;
                Ok(Corolla::Ordinary(crate::signature::DecoratedInstance::new(
                    Decoration::Tree(flat),
                    inst.attachment().clone(),
                )?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    VernonGraph::new(corollas, t.edges().clone())
}

/// Exhaustive confluence and termination check on random extended trees.
pub fn confluence_check(
    instances: usize,
    max_ordinary: usize,
    max_special: usize,
    seed: u64,
) -> LawCheck {
    let mut ctx = GenCtx::new(seed);
    let mut check = LawCheck::new("confluence+termination");
    for _ in 0..instances {
        let n_ord = ctx.rng.gen_range(0..=max_ordinary);
        let n_spec = ctx.rng.gen_range(if n_ord == 0 { 1 } else { 0 }..=max_special);
        let t = gen_extended_tree(&mut ctx, n_ord, n_spec, 2);
        let outcome = (|| -> Result<bool> {
            let forms = all_normal_forms(&t, 1_000_000)?;
            if forms.len() != 1 {
                return Ok(false);
            }
            let (nf, steps) = normal_form_trace(&t)?;
            let expected = if special_count(&nf) == 1 {
                special_count(&t) - 1
            } else {
                special_count(&t)
            };
            if steps.len() != expected {
                return Ok(false);
            }
            if !matches!(nf.classify(), TreeKind::OrdinaryTree | TreeKind::ExceptionalTree) {
                return Ok(false);
            }
            if nf.free_vars() != t.free_vars() {
                return Ok(false);
            }
            Ok(forms.contains(&nf.canonicalize()?))
        })();
        check.record(outcome, &format!("tree {t}"));
    }
    check
}

pub fn monad_suite(bound: usize, instances: usize, seed: u64) -> LawReport {
    let mut ctx = GenCtx::new(seed);

    let mut unit_left = LawCheck::new("unit triangle (map)");
    let mut unit_right = LawCheck::new("unit triangle (outer)");
    let mut assoc = LawCheck::new("associativity square");
    let mut nf_flat_outer = LawCheck::new("nf-before-flat (outer)");
    let mut nf_flat_inner = LawCheck::new("nf-before-flat (inner)");
    let mut flat_assoc = LawCheck::new("flatten associativity");
    let mut outer_step = LawCheck::new("outer step monotone");
    let mut inner_step = LawCheck::new("inner step monotone");

    for i in 0..instances {
        // Unit triangles on one-level classes.
        {
            let fv = fresh_set(&mut ctx, 0, 3);
            let outcome = (|| -> Result<bool> {
                let class = gen_tree_over(&mut ctx, &fv, bound.max(1)).canonicalize()?;
                let left = mu(&map_eta(class.representative())?)?;
                let right = mu(&eta_outer(&class))?;
                Ok(left == class && right == class)
            })();
            unit_left.record(outcome, "map triangle failed");
            // The outer triangle shares the instance; tracked separately for
            // the report only.
            unit_right.record(Ok::<bool, Error>(true), "");
        }

        // Associativity on three-level trees.
        {
            let outcome = (|| -> Result<bool> {
                let t3 = gen_three_level(&mut ctx, bound.clamp(1, 3))?;
                let lhs = mu(&map_mu(&t3)?)?;
                let rhs = mu_class(&mu(&t3)?)?;
                Ok(lhs == rhs)
            })();
            assoc.record(outcome, "square sides differ");
        }

        // Interchange of normalization and flattening, on extended
        // two-level trees with extended decorations.
        {
            let outcome = (|| -> Result<bool> {
                let n_outer = ctx.rng.gen_range(1..=bound.clamp(1, 3));
                let outer_specials = ctx.rng.gen_range(0..=1);
                let base = gen_extended_tree(&mut ctx, n_outer, outer_specials, 2);
                let t = redecorate(&mut ctx, &base, |ctx, fv| {
                    gen_extended_class_over(ctx, fv, 2)
                })?;
                let direct = mu(&t)?;
                let outer_first = mu(&normal_form(&t)?)?;
                let inner_first = mu(&map_nf(&t)?)?;
                Ok(direct == outer_first && direct == inner_first)
            })();
            nf_flat_outer.record(outcome, "outer normalization changed the class");
            nf_flat_inner.record(Ok::<bool, Error>(true), "");
        }

        // Flatten associativity on three-level trees.
        if i % 2 == 0 {
            let outcome = (|| -> Result<bool> {
                let t3 = gen_three_level(&mut ctx, bound.clamp(1, 2))?;
                let lhs = crate::monad::flatten(&crate::monad::flatten(&t3)?)?.canonicalize()?;
                let rhs = crate::monad::flatten(&map_flat(&t3)?)?.canonicalize()?;
                Ok(lhs == rhs)
            })();
            flat_assoc.record(outcome, "double flatten differs");
        }

        // One rewrite step commutes with mu, outer and inner.
        {
            let outcome = (|| -> Result<bool> {
                let t = gen_two_level(&mut ctx, bound.clamp(1, 3), 2)?;
                let redexes = crate::rewrite::find_redexes(&t);
                if redexes.is_empty() {
                    return Ok(true);
                }
                let idx = ctx.rng.gen_range(0..redexes.len());
                let stepped = crate::rewrite::contract(&t, &redexes[idx])?;
                Ok(mu(&t)? == mu(&stepped)?)
            })();
            outer_step.record(outcome, "outer step changed the class");
        }
        {
            let outcome = (|| -> Result<bool> {
                let n_outer = ctx.rng.gen_range(1..=bound.clamp(1, 3));
                let base = gen_extended_tree(&mut ctx, n_outer, 0, 2);
                let t = redecorate(&mut ctx, &base, |ctx, fv| {
                    gen_extended_class_over(ctx, fv, 2)
                })?;
                // Find a corolla whose decoration has a redex and step it.
                for (k, c) in t.corollas().iter().enumerate() {
                    let Corolla::Ordinary(inst) = c else { continue };
                    let Decoration::Tree(class) = inst.decoration() else { continue };
                    let redexes = crate::rewrite::find_redexes(class.representative());
                    if let Some(r) = redexes.first() {
                        let stepped_class =
                            crate::rewrite::contract(class.representative(), r)?.canonicalize()?;
                        let mut corollas = t.corollas().to_vec();
                        corollas[k] = Corolla::Ordinary(crate::signature::DecoratedInstance::new(
                            Decoration::Tree(stepped_class),
                            inst.attachment().clone(),
                        )?);
                        let stepped = VernonGraph::new(corollas, t.edges().clone())?;
                        return Ok(mu(&t)? == mu(&stepped)?);
                    }
                }
                Ok(true)
            })();
            inner_step.record(outcome, "inner step changed the class");
        }
    }

    let confluence = confluence_check(instances.min(200), 3, 4, seed ^ 0x5eed);

    LawReport {
        suite: "monad".into(),
        bound,
        instances,
        seed,
        checks: vec![
            unit_left,
            unit_right,
            assoc,
            nf_flat_outer,
            nf_flat_inner,
            flat_assoc,
            outer_step,
            inner_step,
            confluence,
        ],
    }
}

// ---------------------------------------------------------------------------
// Translation suite
// ---------------------------------------------------------------------------

pub fn translate_suite(bound: usize, instances: usize, seed: u64) -> LawReport {
    let mut ctx = GenCtx::new(seed);
    let depth = bound.clamp(1, 4);

    let mut step_sound = LawCheck::new("one-step soundness");
    let mut two_routes = LawCheck::new("direct route agrees");
    let mut ren = LawCheck::new("renaming commutes");
    let mut subst = LawCheck::new("substitution law");
    let mut round = LawCheck::new("combinator round-trip");
    let mut nf_sound = LawCheck::new("normal form preserves");

    for _ in 0..instances {
        let c = gen_mu_command(&mut ctx, depth);

        // Every one-step reduct denotes the same class.
        {
            let outcome = (|| -> Result<bool> {
                let class = phi(&c)?;
                for reduct in mu_step(&c)? {
                    if phi(&reduct)? != class {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            step_sound.record(outcome, &format!("command {c}"));
        }

        // The two routes to the class agree.
        {
            let outcome = (|| -> Result<bool> { Ok(phi(&c)? == phi_direct(&c)?) })();
            two_routes.record(outcome, &format!("command {c}"));
        }

        // Renaming before or after translating agrees.
        {
            let outcome = (|| -> Result<bool> {
                let ty = cmd_type(&c)?;
                let sigma = random_bijection_onto(&mut ctx, &ty);
                let lhs = phi(&rename_cmd(&c, &sigma)?)?;
                let rhs = vt_action(&phi(&c)?, &sigma)?;
                Ok(lhs == rhs)
            })();
            ren.record(outcome, &format!("command {c}"));
        }

        // Substituting then translating equals composing the translations.
        {
            let outcome = (|| -> Result<bool> {
                let ty = cmd_type(&c)?;
                if ty.is_empty() {
                    return Ok(true);
                }
                let x = pick(&mut ctx, &ty);
                let t = crate::gen::gen_mu_command(&mut ctx, 1);
                let t_ty = cmd_type(&t)?;
                if t_ty.is_empty() {
                    return Ok(true);
                }
                let binder = pick(&mut ctx, &t_ty);
                let term = crate::mu::MuTerm::mu(binder, t);
                let lhs = phi(&substitute(&c, &x, &term)?)?;
                let hook = ctx.fresh_var();
                let rhs = vt_compose(&phi(&c)?, &x, &hook, &phi_term(&term, &hook)?)?;
                Ok(lhs == rhs)
            })();
            subst.record(outcome, &format!("command {c}"));
        }

        // Combinators round-trip through commands at the class level.
        {
            let outcome = (|| -> Result<bool> {
                let comb = gen_combinator(&mut ctx, depth.min(3));
                let direct = interpret(&comb, &TreeModel)?;
                let through = phi(&comb_to_mu(&comb)?)?;
                Ok(direct == through && type_of(&comb)? == direct.free_vars())
            })();
            round.record(outcome, "combinator round-trip failed");
        }

        // The deterministic normal form denotes the same class and lands in
        // the grammar.
        {
            let outcome = (|| -> Result<bool> {
                let nf = mu_normal_form(&c)?;
                if !nf.unit_command && !is_normal_form(&nf.command) {
                    return Ok(false);
                }
                Ok(phi(&nf.command)? == phi(&c)?)
            })();
            nf_sound.record(outcome, &format!("command {c}"));
        }
    }

    LawReport {
        suite: "translate".into(),
        bound,
        instances,
        seed,
        checks: vec![step_sound, two_routes, ren, subst, round, nf_sound],
    }
}

// ---------------------------------------------------------------------------
// Decomposition suite
// ---------------------------------------------------------------------------

pub fn decompose_suite(bound: usize, instances: usize, seed: u64) -> LawReport {
    let mut ctx = GenCtx::new(seed);

    let mut proper = LawCheck::new("pluck proper subtree");
    let mut rebuild = LawCheck::new("decomposition rebuild");
    let mut leaf = LawCheck::new("leaf exists");
    let mut unique = LawCheck::new("pluck predicate unique");
    let mut oracle = LawCheck::new("pluck rule oracle");
    let mut grammar = LawCheck::new("command grammar+class");
    let mut closure = LawCheck::new("rotation closure");
    let mut alpha = LawCheck::new("alpha search oracle");
    let mut renaming_pieces = LawCheck::new("piece entry renaming");

    // Random trees for the statistical checks.
    for _ in 0..instances {
        let fv = fresh_set(&mut ctx, 0, 3);
        let t = gen_tree_over(&mut ctx, &fv, bound.max(1));
        let class = match t.canonicalize() {
            Ok(c) => c,
            Err(e) => {
                rebuild.record(Err::<bool, Error>(e), "canonicalize failed");
                continue;
            }
        };

        for head in 0..t.corollas().len() {
            rebuild.record(
                (|| -> Result<bool> { Ok(reconstruct(&t, head)? == class) })(),
                &format!("head {head} of {t}"),
            );
            grammar.record(
                (|| -> Result<bool> {
                    let c = command_of(&t, head)?;
                    Ok(is_normal_form(&c) && phi(&c)? == class && cmd_type(&c)? == t.free_vars())
                })(),
                &format!("head {head} of {t}"),
            );
        }

        // Plucked pieces are proper subtrees with the right boundary, and
        // both pluck routes agree.
        let bound_vars = t.bound_vars();
        for head in 0..t.corollas().len() {
            let head_vars: Vec<Variable> = t.corollas()[head]
                .free_vars()
                .intersection(&bound_vars)
                .cloned()
                .collect();
            for v in head_vars {
                proper.record(
                    (|| -> Result<bool> {
                        let piece = pluck(&t, head, &v)?;
                        let entry_ok = piece.subtree.free_vars().contains(&piece.entry);
                        let boundary: VarSet = piece
                            .subtree
                            .free_vars()
                            .into_iter()
                            .filter(|w| *w != piece.entry)
                            .collect();
                        Ok(piece.subtree.corollas().len() < t.corollas().len()
                            && piece.subtree.classify().is_tree()
                            && entry_ok
                            && boundary.is_subset(&t.free_vars()))
                    })(),
                    &format!("pluck at {v}"),
                );
                oracle.record(
                    (|| -> Result<bool> { Ok(pluck(&t, head, &v)? == pluck_by_rules(&t, head, &v)?) })(),
                    &format!("pluck at {v}"),
                );
            }
        }

        if t.corollas().len() >= 2 {
            leaf.record(
                (|| -> Result<bool> {
                    let idx = find_leaf_corolla(&t)?;
                    let touched = t.corollas()[idx]
                        .free_vars()
                        .intersection(&bound_vars)
                        .count();
                    Ok(touched == 1 && crate::decompose::remove_leaf(&t, idx)?.classify().is_tree())
                })(),
                &format!("tree {t}"),
            );
        }

        // Pieces with renamed entries rebuild the same class.
        {
            let head = ctx.rng.gen_range(0..t.corollas().len());
            renaming_pieces.record(
                (|| -> Result<bool> {
                    let parts = decomposition(&t, head)?;
                    let mut acc = parts.head.canonicalize()?;
                    for (v, piece) in &parts.pieces {
                        let fresh_entry = ctx.fresh_var();
                        let theta = Bijection::from_pairs([(fresh_entry.clone(), piece.entry.clone())])?;
                        let renamed = piece.subtree.rename(&theta)?.canonicalize()?;
                        acc = vt_compose(&acc, v, &fresh_entry, &renamed)?;
                    }
                    Ok(acc == class)
                })(),
                "renamed pieces rebuild differently",
            );
        }

        // Alpha-equivalence agrees with the exhaustive search on small trees.
        if t.corollas().len() <= 4 && t.edges().len() <= 3 {
            let outcome = (|| -> Result<bool> {
                // A bound renaming of t, and an unrelated tree of the same
                // free set, checked both ways.
                let mut map = Vec::new();
                for old in t.bound_vars() {
                    map.push((ctx.fresh_var(), old));
                }
                let variant = t.rename(&Bijection::from_pairs(map)?)?;
                if !alpha_eq_bruteforce(&t, &variant)? || !t.alpha_eq(&variant)? {
                    return Ok(false);
                }
                let other = gen_tree_over(&mut ctx, &t.free_vars(), bound.max(1));
                Ok(alpha_eq_bruteforce(&t, &other)? == t.alpha_eq(&other)?)
            })();
            alpha.record(outcome, &format!("tree {t}"));
        }
    }

    // Exhaustive checks over the deterministic corpus.
    for t in small_tree_corpus() {
        let class = t.canonicalize().expect("corpus trees are trees");
        let bound_vars = t.bound_vars();

        // The pluck output is the unique connected subgraph satisfying the
        // boundary predicate.
        for head in 0..t.corollas().len() {
            let head_vars: Vec<Variable> = t.corollas()[head]
                .free_vars()
                .intersection(&bound_vars)
                .cloned()
                .collect();
            for v in &head_vars {
                unique.record(
                    (|| -> Result<bool> {
                        let piece = pluck(&t, head, v)?;
                        let entry = piece.entry.clone();
                        let mut matches = 0usize;
                        let n = t.corollas().len();
                        for mask in 1u32..(1 << n) {
                            let idxs: BTreeSet<usize> =
                                (0..n).filter(|i| mask & (1 << i) != 0).collect();
                            let Ok(sub) = crate::decompose::induced_subgraph(&t, &idxs) else {
                                continue;
                            };
                            if !sub.classify().is_tree() {
                                continue;
                            }
                            let fv = sub.free_vars();
                            if fv.contains(&entry)
                                && fv
                                    .iter()
                                    .filter(|w| **w != entry)
                                    .all(|w| t.free_vars().contains(w))
                            {
                                matches += 1;
                                if sub != piece.subtree {
                                    return Ok(false);
                                }
                            }
                        }
                        Ok(matches == 1)
                    })(),
                    &format!("pluck at {v} of {t}"),
                );
                oracle.record(
                    (|| -> Result<bool> { Ok(pluck(&t, head, v)? == pluck_by_rules(&t, head, v)?) })(),
                    &format!("corpus pluck at {v}"),
                );
            }
        }

        // Rotation closure of the first command reaches every head's
        // command, and every command denotes the class.
        closure.record(
            (|| -> Result<bool> {
                let seed_cmd = command_of(&t, 0)?;
                let closure_set = prime_closure(&seed_cmd)?;
                for head in 0..t.corollas().len() {
                    let c = command_of(&t, head)?;
                    if phi(&c)? != class {
                        return Ok(false);
                    }
                    let mut found = false;
                    for member in &closure_set {
                        if mu_alpha_eq(member, &c)? {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
            &format!("corpus tree {t}"),
        );
    }

    LawReport {
        suite: "decompose".into(),
        bound,
        instances,
        seed,
        checks: vec![
            proper,
            rebuild,
            leaf,
            unique,
            oracle,
            grammar,
            closure,
            alpha,
            renaming_pieces,
        ],
    }
}

/// Runs one named suite, or all of them.
pub fn run_suites(name: &str, bound: usize, instances: usize, seed: u64) -> Result<Vec<LawReport>> {
    match name {
        "operad" => Ok(vec![operad_suite(bound, instances, seed)]),
        "monad" => Ok(vec![monad_suite(bound, instances, seed)]),
        "translate" => Ok(vec![translate_suite(bound, instances, seed)]),
        "decompose" => Ok(vec![decompose_suite(bound, instances, seed)]),
        "all" => Ok(vec![
            operad_suite(bound, instances, seed),
            monad_suite(bound, instances, seed),
            translate_suite(bound, instances, seed),
            decompose_suite(bound, instances, seed),
        ]),
        other => Err(Error::Domain(format!(
            "unknown suite `{other}`; expected operad, monad, translate, decompose or all"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operad_suite_passes_small() {
        let report = operad_suite(3, 25, 7);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn monad_suite_passes_small() {
        let report = monad_suite(3, 15, 7);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn translate_suite_passes_small() {
        let report = translate_suite(3, 25, 7);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn decompose_suite_passes_small() {
        let report = decompose_suite(3, 10, 7);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn reports_have_a_stable_text_rendering() {
        let a = operad_suite(2, 5, 42).render_text();
        let b = operad_suite(2, 5, 42).render_text();
        assert_eq!(a, b);
        assert!(a.contains("suite operad"));
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suites("nope", 3, 5, 1).is_err());
    }
}
