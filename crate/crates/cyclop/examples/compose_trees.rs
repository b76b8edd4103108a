//! The composition algebra on tree classes: grafting along chosen entries,
//! units, renaming actions, and total composition of a head with operands
//! assigned to every entry.
//!
//! Run with `cargo run --example compose_trees`.

use cyclop::monad::eta;
use cyclop::operad::{total_composition, vt_action, vt_compose, vt_unit, Assignment, TreeModel};
use cyclop::parse::parse_tree_file;
use cyclop::var::{Bijection, Variable};

fn v(name: &str) -> Variable {
    Variable::raw(name)
}

fn main() {
    let (ws, _) = parse_tree_file(
        "param f : {x, y, z}\nparam g : {u, w}\nparam h : {p, q}\n{ f(x,y,z) }",
    )
    .unwrap();
    let f = eta(&ws.signature.instance("f").unwrap());
    let g = eta(&ws.signature.instance("g").unwrap());
    let h = eta(&ws.signature.instance("h").unwrap());

    // Grafting f at x onto g at u.
    let fg = vt_compose(&f, &v("x"), &v("u"), &g).unwrap();
    println!("f x*u g = {fg}");
    println!("  entries: {}", cyclop::var::format_set(&fg.free_vars()));

    // Composing with a unit just renames the entry.
    let renamed = vt_compose(&f, &v("x"), &v("x"), &vt_unit(&v("x"), &v("x9")).unwrap()).unwrap();
    let kappa = Bijection::from_pairs([
        (v("x9"), v("x")),
        (v("y"), v("y")),
        (v("z"), v("z")),
    ])
    .unwrap();
    println!();
    println!("f x*x id(x,x9)      = {renamed}");
    println!("action by x9 -> x   = {}", vt_action(&f, &kappa).unwrap());
    println!("they are equal      : {}", renamed == vt_action(&f, &kappa).unwrap());

    // Total composition: one operand per entry of f, folded in one shot.
    let mut phi = Assignment::new();
    phi.assign(v("x"), g.clone(), v("u"));
    phi.assign(v("y"), h.clone(), v("p"));
    phi.assign(v("z"), vt_unit(&v("z"), &v("tail")).unwrap(), v("z"));
    let total = total_composition(&TreeModel, &f, &phi).unwrap();
    println!();
    println!("total composition of f with (g at u, h at p, unit at z):");
    println!("  {total}");
    println!("  entries: {}", cyclop::var::format_set(&total.free_vars()));
}
