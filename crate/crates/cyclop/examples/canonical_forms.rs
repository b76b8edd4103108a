//! Alpha-canonical forms: edge variables get deterministic reserved names,
//! so class equality is plain structural equality.
//!
//! Run with `cargo run --example canonical_forms`.

use cyclop::parse::{parse_tree_file, print_tree_file};

fn main() {
    // Shared declarations, so `f` means the same operation in every file;
    // an undeclared head would infer its profile from each spelling.
    let decls = "\
param f : {x, y, z, w}
param g : {a, b, c, d}
param h : {p, q}
";
    // The same tree written with two different sets of edge variables.
    let first = format!("{decls}{{ f(x,y,z,w), g(a,b,c,d), h(p,q) ; (x~a)(y~p) }}");
    let second = format!("{decls}{{ f(x1,y1,z,w), g(a1,b,c,d), h(p1,q) ; (x1~a1)(y1~p1) }}");
    // A genuinely different tree: one free variable renamed.
    let third = format!("{decls}{{ f(x,y,z,w9), g(a,b,c,d), h(p,q) ; (x~a)(y~p) }}");
    let (first, second, third) = (first.as_str(), second.as_str(), third.as_str());

    let (_, t1) = parse_tree_file(first).unwrap();
    let (_, t2) = parse_tree_file(second).unwrap();
    let (_, t3) = parse_tree_file(third).unwrap();

    println!("first  == second (up to renaming bound variables): {}", t1.alpha_eq(&t2).unwrap());
    println!("first  == third  (a free variable differs):        {}", t1.alpha_eq(&t3).unwrap());
    println!();

    let class = t1.canonicalize().unwrap();
    println!("canonical representative of the class:");
    print!("{}", print_tree_file(class.representative()));
    println!();
    println!(
        "canonicalizing the second spelling gives the same value: {}",
        t2.canonicalize().unwrap() == class
    );
}
