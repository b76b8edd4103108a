//! The acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Counts and bounds are pinned here; run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeMap;

use rand::Rng;

use cyclop::decompose::{command_of, reconstruct};
use cyclop::gen::{
    gen_class_over, gen_mu_command, gen_three_level, gen_tree_over, gen_two_level,
    small_tree_corpus, GenCtx,
};
use cyclop::laws::{confluence_check, operad_suite};
use cyclop::monad::{eta, eta_outer, map_eta, map_mu, mu, mu_class};
use cyclop::mu::{
    cmd_type, mu_alpha_eq, mu_normal_form, mu_step, prime_closure, rename_cmd, substitute,
    MuCommand, MuTerm,
};
use cyclop::operad::{vt_action, vt_compose, SelfAlgebra};
use cyclop::oracles::{alpha_eq_bruteforce, pluck_by_rules};
use cyclop::signature::{BaseParameter, DecoratedInstance, Decoration, Signature};
use cyclop::translate::{delta, delta_derived_compose, phi, phi_direct, phi_term};
use cyclop::tree::{Corolla, Edge, NotATreeReason, TreeClass, TreeKind, VernonGraph};
use cyclop::var::{Bijection, VarSet, Variable};

const SEED: u64 = 7;

fn criterion(n: usize, title: &str, run: impl FnOnce() -> Result<(), String>) {
    match run() {
        Ok(()) => println!("acceptance {n} ({title}): PASS"),
        Err(msg) => {
            println!("acceptance {n} ({title}): FAIL - {msg}");
            panic!("acceptance criterion {n} failed: {msg}");
        }
    }
}

fn v(n: &str) -> Variable {
    Variable::raw(n)
}

fn edge(a: &str, b: &str) -> Edge {
    Edge::new(v(a), v(b)).unwrap()
}

fn declare(sig: &mut Signature, name: &str, profile: &[&str]) {
    sig.declare(BaseParameter::new(name, profile.iter().map(|p| v(p)).collect()).unwrap())
        .unwrap();
}

fn ordinary(sig: &Signature, name: &str) -> Corolla {
    Corolla::Ordinary(sig.instance(name).unwrap())
}

// ---------------------------------------------------------------------------
// 1. Classification goldens
// ---------------------------------------------------------------------------

#[test]
fn acceptance_1_classification_goldens() {
    criterion(1, "classification goldens", || {
        let mut sig = Signature::new();
        declare(&mut sig, "f", &["x", "y", "z", "u", "v"]);
        declare(&mut sig, "g", &["a", "b", "c", "d"]);
        declare(&mut sig, "h", &["p", "q", "r"]);

        // Two parallel edges between the same corollas.
        let multi = VernonGraph::new(
            vec![ordinary(&sig, "f"), ordinary(&sig, "g")],
            [edge("u", "c"), edge("v", "b")].into_iter().collect(),
        )
        .map_err(|e| e.to_string())?;
        if multi.classify() != TreeKind::NotATree(NotATreeReason::MultiEdge) {
            return Err(format!("expected MultiEdge, got {}", multi.classify()));
        }

        // An edge inside a single corolla.
        let mut sig3 = Signature::new();
        declare(&mut sig3, "f", &["x", "y", "z"]);
        declare(&mut sig3, "g", &["a", "b", "c"]);
        let looped = VernonGraph::new(
            vec![ordinary(&sig3, "f"), ordinary(&sig3, "g")],
            [edge("x", "a"), edge("b", "c")].into_iter().collect(),
        )
        .map_err(|e| e.to_string())?;
        if looped.classify() != TreeKind::NotATree(NotATreeReason::Loop) {
            return Err(format!("expected Loop, got {}", looped.classify()));
        }

        // Three corollas closed into a cycle.
        let cyclic = VernonGraph::new(
            vec![ordinary(&sig, "f"), ordinary(&sig, "g"), ordinary(&sig, "h")],
            [edge("v", "b"), edge("c", "q"), edge("r", "u")].into_iter().collect(),
        )
        .map_err(|e| e.to_string())?;
        if cyclic.classify() != TreeKind::NotATree(NotATreeReason::Cycle) {
            return Err(format!("expected Cycle, got {}", cyclic.classify()));
        }

        // Dropping one edge gives the accepted tree with 8 free variables.
        let tree = VernonGraph::new(
            vec![ordinary(&sig, "f"), ordinary(&sig, "g"), ordinary(&sig, "h")],
            [edge("v", "b"), edge("c", "q")].into_iter().collect(),
        )
        .map_err(|e| e.to_string())?;
        if tree.classify() != TreeKind::OrdinaryTree {
            return Err(format!("expected OrdinaryTree, got {}", tree.classify()));
        }
        let expected: VarSet =
            ["x", "y", "z", "a", "d", "p", "r", "u"].iter().map(|n| v(n)).collect();
        if tree.free_vars() != expected || tree.free_vars().len() != 8 {
            return Err(format!(
                "expected the 8 free variables {{x,y,z,a,d,p,r,u}}, got {{{}}}",
                cyclop::var::format_set(&tree.free_vars())
            ));
        }
        Ok(())
    });
}

// ---------------------------------------------------------------------------
// 2. Confluence and termination
// ---------------------------------------------------------------------------

#[test]
fn acceptance_2_confluence_and_termination() {
    criterion(2, "rewriting confluence+termination", || {
        let check = confluence_check(1000, 4, 6, SEED);
        if check.instances < 1000 {
            return Err(format!("only {} instances ran", check.instances));
        }
        if !check.ok() {
            return Err(check.failures.join("; "));
        }
        Ok(())
    });
}

// ---------------------------------------------------------------------------
// 3. Monad laws
// ---------------------------------------------------------------------------

#[test]
fn acceptance_3_monad_laws() {
    criterion(3, "monad unit+associativity", || {
        let mut ctx = GenCtx::new(SEED);
        let mut exceptional_seen = 0usize;
        for i in 0..500 {
            // Unit triangles on a one-level class at bound 5.
            let n = ctx.rng.gen_range(0..=3);
            let fv: VarSet = ctx.fresh_vars(n).into_iter().collect();
            let class = gen_tree_over(&mut ctx, &fv, 5)
                .canonicalize()
                .map_err(|e| e.to_string())?;
            let left = mu(&map_eta(class.representative()).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let right = mu(&eta_outer(&class)).map_err(|e| e.to_string())?;
            if left != class || right != class {
                return Err(format!("unit triangle failed at instance {i}"));
            }

            // Associativity square on a three-level instance at bound 5.
            let t3 = gen_three_level(&mut ctx, 5).map_err(|e| e.to_string())?;
            let lhs = mu(&map_mu(&t3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let rhs = mu_class(&mu(&t3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("associativity square failed at instance {i}"));
            }

            // A two-level instance (exceptional decorations included by the
            // generator) multiplies cleanly.
            let t2 = gen_two_level(&mut ctx, 5, 0).map_err(|e| e.to_string())?;
            for c in t2.corollas() {
                if let Corolla::Ordinary(inst) = c {
                    if let Decoration::Tree(class) = inst.decoration() {
                        if class.is_exceptional() {
                            exceptional_seen += 1;
                        }
                    }
                }
            }
            mu(&t2).map_err(|e| e.to_string())?;
        }
        if exceptional_seen == 0 {
            return Err("no exceptional decorations were generated".into());
        }
        Ok(())
    });
}

// ---------------------------------------------------------------------------
// 4. Composition axioms
// ---------------------------------------------------------------------------

#[test]
fn acceptance_4_composition_axioms() {
    criterion(4, "composition axioms", || {
        let report = operad_suite(4, 200, SEED);
        for check in &report.checks {
            if check.instances < 200 {
                return Err(format!("{} ran only {} instances", check.law, check.instances));
            }
            if !check.ok() {
                return Err(format!("{}: {}", check.law, check.failures.join("; ")));
            }
        }
        Ok(())
    });
}

// ---------------------------------------------------------------------------
// 5. The running-tree goldens
// ---------------------------------------------------------------------------

fn golden_sig() -> Signature {
    let mut sig = Signature::new();
    declare(&mut sig, "f", &["x", "y", "z", "w"]);
    declare(&mut sig, "g", &["a", "b", "c", "d"]);
    declare(&mut sig, "h", &["p", "q"]);
    sig
}

fn golden_tree(sig: &Signature) -> TreeClass {
    VernonGraph::new(
        vec![ordinary(sig, "f"), ordinary(sig, "g"), ordinary(sig, "h")],
        [edge("x", "a"), edge("y", "p")].into_iter().collect(),
    )
    .unwrap()
    .canonicalize()
    .unwrap()
}

fn apply(sig: &Signature, name: &str, args: &[(&str, MuTerm)]) -> MuCommand {
    let inst = sig.instance(name).unwrap();
    let map: BTreeMap<Variable, MuTerm> =
        args.iter().map(|(k, t)| (v(k), t.clone())).collect();
    MuCommand::apply(inst, map).unwrap()
}

fn var(n: &str) -> MuTerm {
    MuTerm::Var(v(n))
}

/// g{a,b,c,d} with its `a` argument replaced.
fn g_all(sig: &Signature, a: MuTerm) -> MuCommand {
    apply(sig, "g", &[("a", a), ("b", var("b")), ("c", var("c")), ("d", var("d"))])
}

fn h_all(sig: &Signature, p: MuTerm) -> MuCommand {
    apply(sig, "h", &[("p", p), ("q", var("q"))])
}

fn f_all(sig: &Signature, x: MuTerm, y: MuTerm) -> MuCommand {
    apply(sig, "f", &[("x", x), ("y", y), ("z", var("z")), ("w", var("w"))])
}

/// The five normal-form commands that decompose the running tree.
fn golden_commands(sig: &Signature) -> Vec<MuCommand> {
    let mu_g = || MuTerm::mu(v("a"), g_all(sig, var("a")));
    let mu_h = || MuTerm::mu(v("p"), h_all(sig, var("p")));

    let c_f = f_all(sig, mu_g(), mu_h());
    let c_g1 = g_all(
        sig,
        MuTerm::mu(v("x"), f_all(sig, var("x"), mu_h())),
    );
    let c_g2 = g_all(
        sig,
        MuTerm::mu(
            v("x"),
            apply(
                sig,
                "h",
                &[
                    ("p", MuTerm::mu(v("y"), f_all(sig, var("x"), var("y")))),
                    ("q", var("q")),
                ],
            ),
        ),
    );
    let c_h1 = h_all(sig, MuTerm::mu(v("y"), f_all(sig, mu_g(), var("y"))));
    let c_h2 = h_all(
        sig,
        MuTerm::mu(
            v("y"),
            g_all(sig, MuTerm::mu(v("x"), f_all(sig, var("x"), var("y")))),
        ),
    );
    vec![c_f, c_g1, c_g2, c_h1, c_h2]
}

#[test]
fn acceptance_5_running_tree_goldens() {
    criterion(5, "normal-form goldens", || {
        let sig = golden_sig();
        let class = golden_tree(&sig);
        let commands = golden_commands(&sig);

        // The cut command reduces to the first listed normal form.
        let star = MuCommand::Pair(
            MuTerm::mu(v("y"), f_all(&sig, MuTerm::mu(v("a"), g_all(&sig, var("a"))), var("y"))),
            MuTerm::mu(v("p"), h_all(&sig, var("p"))),
        );
        let nf = mu_normal_form(&star).map_err(|e| e.to_string())?;
        if nf.unit_command {
            return Err("the cut normalized to a unit command".into());
        }
        if !mu_alpha_eq(&nf.command, &commands[0]).map_err(|e| e.to_string())? {
            return Err(format!(
                "normal form differs: got {}, expected {}",
                nf.command, commands[0]
            ));
        }

        // All five commands denote the tree and are pairwise equivalent.
        for (i, c) in commands.iter().enumerate() {
            let got = phi(c).map_err(|e| e.to_string())?;
            if got != class {
                return Err(format!("command {i} denotes {got}, expected {class}"));
            }
        }
        for (i, a) in commands.iter().enumerate() {
            for (j, b) in commands.iter().enumerate().skip(i + 1) {
                if !cyclop::translate::mu_equiv(a, b).map_err(|e| e.to_string())? {
                    return Err(format!("commands {i} and {j} are not equivalent"));
                }
            }
        }
        Ok(())
    });
}

// ---------------------------------------------------------------------------
// 6. One-step soundness, renaming and substitution
// ---------------------------------------------------------------------------

#[test]
fn acceptance_6_translation_soundness() {
    criterion(6, "translation soundness", || {
        let mut ctx = GenCtx::new(SEED);

        // At least 500 one-step rewrites preserve the class exactly.
        let mut rewrites = 0usize;
        while rewrites < 500 {
            let c = gen_mu_command(&mut ctx, 4);
            let class = phi(&c).map_err(|e| e.to_string())?;
            for reduct in mu_step(&c).map_err(|e| e.to_string())? {
                let got = phi(&reduct).map_err(|e| e.to_string())?;
                if got != class {
                    return Err(format!("one-step rewrite changed {class} to {got}"));
                }
                rewrites += 1;
            }
        }

        // Renaming commutes with the translation (200 instances).
        for i in 0..200 {
            let c = gen_mu_command(&mut ctx, 3);
            let ty = cmd_type(&c).map_err(|e| e.to_string())?;
            let fresh: Vec<Variable> = ctx.fresh_vars(ty.len());
            let sigma = Bijection::from_pairs(fresh.into_iter().zip(ty))
                .map_err(|e| e.to_string())?;
            let lhs = phi(&rename_cmd(&c, &sigma).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let rhs = vt_action(&phi(&c).map_err(|e| e.to_string())?, &sigma)
                .map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("renaming law failed at instance {i}"));
            }
        }

        // Substitution composes (200 instances).
        let mut done = 0usize;
        while done < 200 {
            let c = gen_mu_command(&mut ctx, 3);
            let ty: Vec<Variable> =
                cmd_type(&c).map_err(|e| e.to_string())?.into_iter().collect();
            if ty.is_empty() {
                continue;
            }
            let x = ty[ctx.rng.gen_range(0..ty.len())].clone();
            let body = gen_mu_command(&mut ctx, 2);
            let b_ty: Vec<Variable> =
                cmd_type(&body).map_err(|e| e.to_string())?.into_iter().collect();
            if b_ty.is_empty() {
                continue;
            }
            let binder = b_ty[ctx.rng.gen_range(0..b_ty.len())].clone();
            let term = MuTerm::mu(binder, body);
            let lhs = phi(&substitute(&c, &x, &term).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let hook = ctx.fresh_var();
            let rhs = vt_compose(
                &phi(&c).map_err(|e| e.to_string())?,
                &x,
                &hook,
                &phi_term(&term, &hook).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err("substitution law failed".into());
            }
            done += 1;
        }
        Ok(())
    });
}

// ---------------------------------------------------------------------------
// 7. Command extraction at desk scale
// ---------------------------------------------------------------------------

#[test]
fn acceptance_7_command_extraction() {
    criterion(7, "command extraction", || {
        for t in small_tree_corpus() {
            let class = t.canonicalize().map_err(|e| e.to_string())?;

            // Every head's command denotes the class, and the rebuild does.
            for head in 0..t.corollas().len() {
                let c = command_of(&t, head).map_err(|e| e.to_string())?;
                if phi(&c).map_err(|e| e.to_string())? != class {
                    return Err(format!("command at head {head} of {t} misses the class"));
                }
                if reconstruct(&t, head).map_err(|e| e.to_string())? != class {
                    return Err(format!("rebuild at head {head} of {t} misses the class"));
                }
            }

            // The rotation closure of one command reaches them all.
            let closure =
                prime_closure(&command_of(&t, 0).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
            for head in 0..t.corollas().len() {
                let c = command_of(&t, head).map_err(|e| e.to_string())?;
                let mut found = false;
                for member in &closure {
                    if mu_alpha_eq(member, &c).map_err(|e| e.to_string())? {
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Err(format!(
                        "rotation closure of {t} misses the command at head {head}"
                    ));
                }
            }
        }
        Ok(())
    });
}

// ---------------------------------------------------------------------------
// 8. The structure map agrees with the multiplication
// ---------------------------------------------------------------------------

#[test]
fn acceptance_8_structure_map() {
    criterion(8, "structure map vs multiplication", || {
        let mut ctx = GenCtx::new(SEED);
        let model = SelfAlgebra;

        for i in 0..200 {
            // delta on an ordinary two-level tree equals mu.
            let t = gen_two_level(&mut ctx, 4, 0).map_err(|e| e.to_string())?;
            if t.classify() != TreeKind::OrdinaryTree {
                continue;
            }
            let d = delta(&t, &model).map_err(|e| e.to_string())?;
            let m = mu(&t).map_err(|e| e.to_string())?;
            if d != m {
                return Err(format!("delta and mu disagree at instance {i}"));
            }

            // delta of the unit shape is the identity, exactly.
            let n = ctx.rng.gen_range(1..=3);
            let fv: VarSet = ctx.fresh_vars(n).into_iter().collect();
            let class = gen_class_over(&mut ctx, &fv, 3).map_err(|e| e.to_string())?;
            let back = delta(&eta_outer(&class), &model).map_err(|e| e.to_string())?;
            if back != class {
                return Err(format!("delta of the unit shape returned {back}, not {class}"));
            }
        }

        // The derived composition passes the sequential associativity
        // instance: both hooks on g, mirroring the two bracketings of the
        // three-corolla tree {f, g, h; (x~a)(b~p)}.
        let sig = golden_sig();
        let as_elem = |name: &str| {
            DecoratedInstance::identity(Decoration::Tree(eta(&sig.instance(name).unwrap())))
        };
        let f = as_elem("f");
        let g = as_elem("g");
        let h = as_elem("h");
        let fg = delta_derived_compose(&model, &f, &v("x"), &v("a"), &g)
            .map_err(|e| e.to_string())?;
        let gh = delta_derived_compose(&model, &g, &v("b"), &v("p"), &h)
            .map_err(|e| e.to_string())?;
        let lhs = delta_derived_compose(
            &model,
            &DecoratedInstance::identity(Decoration::Tree(fg)),
            &v("b"),
            &v("p"),
            &h,
        )
        .map_err(|e| e.to_string())?;
        let rhs = delta_derived_compose(
            &model,
            &f,
            &v("x"),
            &v("a"),
            &DecoratedInstance::identity(Decoration::Tree(gh)),
        )
        .map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err("the derived composition is not associative on the instance".into());
        }
        let direct = VernonGraph::new(
            vec![ordinary(&sig, "f"), ordinary(&sig, "g"), ordinary(&sig, "h")],
            [edge("x", "a"), edge("b", "p")].into_iter().collect(),
        )
        .map_err(|e| e.to_string())?
        .canonicalize()
        .map_err(|e| e.to_string())?;
        if lhs != direct {
            return Err("the derived composite misses the direct tree".into());
        }
        Ok(())
    });
}

// ---------------------------------------------------------------------------
// 9. Oracle equivalences
// ---------------------------------------------------------------------------

#[test]
fn acceptance_9_oracles() {
    criterion(9, "oracle equivalences", || {
        // Rule-iteration plucking agrees with the traversal on the corpus.
        for t in small_tree_corpus() {
            let bound_vars = t.bound_vars();
            for head in 0..t.corollas().len() {
                let head_vars: Vec<Variable> = t.corollas()[head]
                    .free_vars()
                    .intersection(&bound_vars)
                    .cloned()
                    .collect();
                for var in head_vars {
                    let fast =
                        cyclop::decompose::pluck(&t, head, &var).map_err(|e| e.to_string())?;
                    let slow = pluck_by_rules(&t, head, &var).map_err(|e| e.to_string())?;
                    if fast != slow {
                        return Err(format!("pluck routes disagree at {var} of {t}"));
                    }
                }
            }
        }

        // Alpha-equivalence agrees with the exhaustive search on small trees.
        let mut ctx = GenCtx::new(SEED);
        let mut checked = 0usize;
        while checked < 200 {
            let n = ctx.rng.gen_range(0..=3);
            let fv: VarSet = ctx.fresh_vars(n).into_iter().collect();
            let t = gen_tree_over(&mut ctx, &fv, 4);
            if t.edges().len() > 3 {
                continue;
            }
            let mut pairs = Vec::new();
            for old in t.bound_vars() {
                pairs.push((ctx.fresh_var(), old));
            }
            let variant = t
                .rename(&Bijection::from_pairs(pairs).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let fast = t.alpha_eq(&variant).map_err(|e| e.to_string())?;
            let slow = alpha_eq_bruteforce(&t, &variant).map_err(|e| e.to_string())?;
            if !(fast && slow) {
                return Err(format!("bound renaming not recognized for {t}"));
            }
            let other = gen_tree_over(&mut ctx, &fv, 4);
            if other.edges().len() <= 3 {
                let fast = t.alpha_eq(&other).map_err(|e| e.to_string())?;
                let slow = alpha_eq_bruteforce(&t, &other).map_err(|e| e.to_string())?;
                if fast != slow {
                    return Err(format!("alpha routes disagree on {t} vs {other}"));
                }
            }
            checked += 1;
        }

        // The direct class map agrees with translate-then-interpret.
        for _ in 0..500 {
            let c = gen_mu_command(&mut ctx, 3);
            let a = phi(&c).map_err(|e| e.to_string())?;
            let b = phi_direct(&c).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("class routes disagree on {c}"));
            }
        }
        Ok(())
    });
}
