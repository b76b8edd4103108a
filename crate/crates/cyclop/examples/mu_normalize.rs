//! The command calculus: a cut of two abstractions reduces to an
//! application-headed normal form, and head rotations move between the
//! decompositions of one tree.
//!
//! Run with `cargo run --example mu_normalize`.

use cyclop::mu::{mu_alpha_eq, mu_normal_form, prime_closure};
use cyclop::parse::{parse_mu_file, print_mu_file};
use cyclop::translate::{mu_equiv, phi};

fn main() {
    let preamble = "\
param f : {x, y, z, w}
param g : {a, b, c, d}
param h : {p, q}
";

    // The cut: graft (f with g hanging off x) against h, along y and p.
    let star = format!(
        "{preamble}< mu y. f{{mu a. g{{a,b,c,d}}, y, z, w}} | mu p. h{{p,q}} >"
    );
    let (_, cut) = parse_mu_file(&star).unwrap();
    println!("input cut:\n{}", print_mu_file(&cut));

    let nf = mu_normal_form(&cut).unwrap();
    println!("normal form:\n{}", print_mu_file(&nf.command));

    // Two other decompositions of the same tree, headed at g and at h.
    let at_g = format!(
        "{preamble}g{{mu x. f{{x, mu p. h{{p,q}}, z, w}}, b, c, d}}"
    );
    let at_h = format!(
        "{preamble}h{{mu y. f{{mu a. g{{a,b,c,d}}, y, z, w}}, q}}"
    );
    let (_, cmd_g) = parse_mu_file(&at_g).unwrap();
    let (_, cmd_h) = parse_mu_file(&at_h).unwrap();

    println!("all three denote the same class:");
    println!("  nf == head-at-g: {}", mu_equiv(&nf.command, &cmd_g).unwrap());
    println!("  nf == head-at-h: {}", mu_equiv(&nf.command, &cmd_h).unwrap());
    println!("  class: {}", phi(&nf.command).unwrap());
    println!();

    // Head rotation explores every decomposition, up to renaming binders.
    let closure = prime_closure(&nf.command).unwrap();
    println!("rotation closure size: {}", closure.len());
    let reaches_g = closure
        .iter()
        .any(|c| mu_alpha_eq(c, &cmd_g).unwrap());
    let reaches_h = closure
        .iter()
        .any(|c| mu_alpha_eq(c, &cmd_h).unwrap());
    println!("closure reaches the g-headed command: {reaches_g}");
    println!("closure reaches the h-headed command: {reaches_h}");
}
