//! Two-level trees and the multiplication: flattening opens the corolla
//! brackets, elimination removes leftover bare pairs, and the unit shapes
//! collapse to the identity.
//!
//! Run with `cargo run --example monad_roundtrip`.

use cyclop::monad::{eta_outer, flatten, map_eta, mu};
use cyclop::parse::{parse_tree_file, print_tree_file};

fn main() {
    // Two named clusters grafted by an outer edge; T2 is the bare pair, so
    // multiplication has real work to do after flattening.
    let text = "\
let T1 = { f(x,y), g(a,b) ; (x~a) } ;
let T2 = { (p,q) } ;
{ T1(u,v), T2(s,t) ; (v~s) }";
    let (_, outer) = parse_tree_file(text).unwrap();
    println!("outer tree:\n{}", print_tree_file(&outer));

    let flat = flatten(&outer).unwrap();
    println!("flattened (bare pair still present):\n{}", print_tree_file(&flat));

    let class = mu(&outer).unwrap();
    println!("multiplied:\n{}", print_tree_file(class.representative()));

    // Unit laws: wrapping in either unit and multiplying is the identity.
    let left = mu(&map_eta(class.representative()).unwrap()).unwrap();
    let right = mu(&eta_outer(&class)).unwrap();
    println!("corolla-wise unit then multiply restores the class: {}", left == class);
    println!("outer unit then multiply restores the class:       {}", right == class);
}
