//! Property tests for the structural invariants: canonical forms, the
//! rewriting system, the command calculus, and the text formats. Seeds feed
//! the library's own generators, so every case is a well-formed instance.

use proptest::prelude::*;
use rand::Rng;

use cyclop::comb::{interpret, type_of};
use cyclop::gen::{
    gen_class_over, gen_combinator, gen_extended_tree, gen_mu_command, gen_two_level, GenCtx,
};
use cyclop::monad::{flatten, mu};
use cyclop::mu::{
    binder_count, cmd_type, is_normal_form, mu_alpha_eq, mu_normal_form, mu_step, prime_step,
};
use cyclop::operad::TreeModel;
use cyclop::parse::{
    parse_comb_file, parse_mu_file, parse_tree_file, print_comb_file, print_mu_file,
    print_tree_file,
};
use cyclop::rewrite::{find_redexes, normal_form, normal_form_trace, special_count};
use cyclop::translate::phi;
use cyclop::tree::{TreeKind, VernonGraph};
use cyclop::var::{Bijection, Variable};

/// A bound-variable renaming of the tree, using reserved fresh names.
fn bound_variant(ctx: &mut GenCtx, t: &VernonGraph) -> VernonGraph {
    let pairs: Vec<(Variable, Variable)> = t
        .bound_vars()
        .into_iter()
        .map(|old| (ctx.fresh_var(), old))
        .collect();
    t.rename(&Bijection::from_pairs(pairs).expect("fresh domain")).expect("valid renaming")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonicalize_is_idempotent(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let t = gen_extended_tree(&mut ctx, 4, 2, 2);
        let class = t.canonicalize().unwrap();
        let again = class.representative().canonicalize().unwrap();
        prop_assert_eq!(&again, &class);
    }

    #[test]
    fn alpha_equivalence_is_an_equivalence(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let t = gen_extended_tree(&mut ctx, 3, 1, 2);
        prop_assert!(t.alpha_eq(&t).unwrap());
        let once = bound_variant(&mut ctx, &t);
        let twice = bound_variant(&mut ctx, &once);
        prop_assert!(t.alpha_eq(&once).unwrap());
        prop_assert!(once.alpha_eq(&t).unwrap());
        prop_assert!(t.alpha_eq(&twice).unwrap());
    }

    #[test]
    fn free_variables_survive_canonicalization(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let t = gen_extended_tree(&mut ctx, 4, 2, 2);
        prop_assert_eq!(t.free_vars(), t.canonicalize().unwrap().free_vars());
    }

    #[test]
    fn reduction_length_counts_special_corollas(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let t = gen_extended_tree(&mut ctx, 3, 4, 2);
        let (nf, steps) = normal_form_trace(&t).unwrap();
        let expected = if special_count(&nf) == 1 {
            special_count(&t) - 1
        } else {
            special_count(&t)
        };
        prop_assert_eq!(steps.len(), expected);
        prop_assert_eq!(nf.free_vars(), t.free_vars());
        prop_assert!(matches!(
            nf.classify(),
            TreeKind::OrdinaryTree | TreeKind::ExceptionalTree
        ));
    }

    #[test]
    fn normalization_respects_renaming(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let t = gen_extended_tree(&mut ctx, 3, 3, 2);
        let variant = bound_variant(&mut ctx, &t);
        let nf1 = normal_form(&t).unwrap();
        let nf2 = normal_form(&variant).unwrap();
        prop_assert!(nf1.alpha_eq(&nf2).unwrap());
    }

    #[test]
    fn one_step_reducts_preserve_the_type(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let c = gen_mu_command(&mut ctx, 3);
        let ty = cmd_type(&c).unwrap();
        for reduct in mu_step(&c).unwrap() {
            prop_assert_eq!(cmd_type(&reduct).unwrap(), ty.clone());
        }
    }

    #[test]
    fn cuts_strictly_reduce_binder_counts(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let mut current = gen_mu_command(&mut ctx, 3);
        let mut cuts = 0usize;
        let start = binder_count(&current);
        // Follow reducts, bounding commutation swaps; only cuts may change
        // the binder count, and each consumes exactly one binder.
        for _ in 0..(2 * start + 4) {
            let steps = mu_step(&current).unwrap();
            let Some(next) = steps.into_iter().max_by_key(|c| {
                std::cmp::Reverse(binder_count(c))
            }) else {
                break;
            };
            let before = binder_count(&current);
            let after = binder_count(&next);
            prop_assert!(after == before || after + 1 == before);
            if after + 1 == before {
                cuts += 1;
            }
            current = next;
        }
        prop_assert!(cuts <= start);
    }

    #[test]
    fn normal_forms_match_the_grammar_and_are_stable(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let c = gen_mu_command(&mut ctx, 3);
        let nf = mu_normal_form(&c).unwrap();
        prop_assert!(nf.unit_command || is_normal_form(&nf.command));
        let again = mu_normal_form(&nf.command).unwrap();
        prop_assert_eq!(again.command, nf.command);
    }

    #[test]
    fn rotations_preserve_the_class(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let c = gen_mu_command(&mut ctx, 3);
        let nf = mu_normal_form(&c).unwrap();
        if nf.unit_command {
            return Ok(());
        }
        let class = phi(&nf.command).unwrap();
        for rotated in prime_step(&nf.command).unwrap() {
            prop_assert!(is_normal_form(&rotated));
            prop_assert_eq!(phi(&rotated).unwrap(), class.clone());
        }
    }

    #[test]
    fn alpha_keys_are_insensitive_to_binder_names(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let c = gen_mu_command(&mut ctx, 3);
        let nf = mu_normal_form(&c).unwrap().command;
        prop_assert!(mu_alpha_eq(&nf, &nf).unwrap());
    }

    #[test]
    fn flattening_preserves_free_variables(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let t = gen_two_level(&mut ctx, 3, 1).unwrap();
        prop_assert_eq!(flatten(&t).unwrap().free_vars(), t.free_vars());
        prop_assert_eq!(mu(&t).unwrap().free_vars(), t.free_vars());
    }

    #[test]
    fn redexes_only_touch_special_corollas(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let t = gen_extended_tree(&mut ctx, 3, 3, 2);
        prop_assert!(find_redexes(&t).len() <= t.edges().len());
        let nf = normal_form(&t).unwrap();
        prop_assert!(find_redexes(&nf).is_empty());
    }

    #[test]
    fn tree_text_round_trips(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let t = gen_extended_tree(&mut ctx, 3, 1, 2);
        let printed = print_tree_file(&t);
        let (_, reparsed) = parse_tree_file(&printed).unwrap();
        prop_assert_eq!(&reparsed, &t);
        // And again: printing the reparse is stable.
        prop_assert_eq!(print_tree_file(&reparsed), printed);
    }

    #[test]
    fn two_level_tree_text_round_trips(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let t = gen_two_level(&mut ctx, 3, 0).unwrap();
        let printed = print_tree_file(&t);
        let (_, reparsed) = parse_tree_file(&printed).unwrap();
        prop_assert!(reparsed.alpha_eq(&t).unwrap());
    }

    #[test]
    fn mu_text_round_trips_up_to_reindexing(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let c = gen_mu_command(&mut ctx, 3);
        let printed = print_mu_file(&c);
        let (_, reparsed) = parse_mu_file(&printed).unwrap();
        prop_assert!(mu_alpha_eq(&reparsed, &c).unwrap());
        // Parsed values round-trip exactly.
        let again = print_mu_file(&reparsed);
        let (_, reparsed2) = parse_mu_file(&again).unwrap();
        prop_assert_eq!(reparsed2, reparsed);
    }

    #[test]
    fn comb_text_round_trips_at_the_class_level(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let c = gen_combinator(&mut ctx, 3);
        let printed = print_comb_file(&c);
        let (_, reparsed) = parse_comb_file(&printed).unwrap();
        prop_assert_eq!(type_of(&reparsed).unwrap(), type_of(&c).unwrap());
        prop_assert_eq!(
            interpret(&reparsed, &TreeModel).unwrap(),
            interpret(&c, &TreeModel).unwrap()
        );
        // Parsed values round-trip exactly.
        let again = print_comb_file(&reparsed);
        let (_, reparsed2) = parse_comb_file(&again).unwrap();
        prop_assert_eq!(reparsed2, reparsed);
    }

    #[test]
    fn class_equality_means_interchangeable_composition(seed in any::<u64>()) {
        let mut ctx = GenCtx::new(seed);
        let n = ctx.rng.gen_range(1..=2usize);
        let fv: std::collections::BTreeSet<Variable> =
            ctx.fresh_vars(n).into_iter().collect();
        let class = gen_class_over(&mut ctx, &fv, 3).unwrap();
        // Composing two alpha-copies of the same class along the same entry
        // against a third operand gives the same result.
        let entry = fv.iter().next().unwrap().clone();
        let other_fv: std::collections::BTreeSet<Variable> =
            ctx.fresh_vars(2).into_iter().collect();
        let other = gen_class_over(&mut ctx, &other_fv, 2).unwrap();
        let hook = other_fv.iter().next().unwrap().clone();
        let a = cyclop::operad::vt_compose(&class, &entry, &hook, &other).unwrap();
        let b = cyclop::operad::vt_compose(&class, &entry, &hook, &other).unwrap();
        prop_assert_eq!(a, b);
    }
}
