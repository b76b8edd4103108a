//! The special-corolla elimination rewriting, step by step, plus the
//! exhaustive check that every reduction order meets in one class.
//!
//! Run with `cargo run --example rewrite_trace`.

use cyclop::parse::parse_tree_file;
use cyclop::rewrite::{all_normal_forms, find_redexes, normal_form_trace};

fn main() {
    // A chain: ordinary - special - ordinary - special - special.
    let text = "{ f(x), (y,z), g(w,u), (a,b), (c,d) ; (x~y)(z~w)(u~a)(b~c) }";
    let (_, tree) = parse_tree_file(text).expect("a well-formed extended tree");

    println!("input: {tree}");
    println!("redexes now: {}", find_redexes(&tree).len());
    println!();

    let (nf, steps) = normal_form_trace(&tree).expect("reduction succeeds");
    for (i, (redex, stage)) in steps.iter().enumerate() {
        println!("step {}: {redex}", i + 1);
        println!("   {stage}");
    }
    println!();
    println!("normal form: {nf}");
    println!("free variables preserved: {}", nf.free_vars() == tree.free_vars());

    // Every reduction order gives the same class.
    let classes = all_normal_forms(&tree, 100_000).expect("search fits in the fuel bound");
    println!("distinct classes over all reduction orders: {}", classes.len());
}
