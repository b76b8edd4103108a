//! Decomposition: plucking subtrees off a chosen corolla, rebuilding the
//! class by composition, and extracting the denoting command per head.
//!
//! Run with `cargo run --example decompose_tree`.

use cyclop::decompose::{command_of, decomposition, find_leaf_corolla, reconstruct};
use cyclop::parse::{parse_tree_file, print_mu_file, print_tree_file};

fn main() {
    let text = "{ f(x,y,z,w), g(a,b,c,d), h(p,q) ; (x~a)(y~p) }";
    let (_, tree) = parse_tree_file(text).unwrap();
    let class = tree.canonicalize().unwrap();
    println!("tree: {tree}");
    println!();

    for head in 0..tree.corollas().len() {
        let parts = decomposition(&tree, head).unwrap();
        println!("decomposition at corolla {head} ({}):", tree.corollas()[head]);
        for (v, piece) in &parts.pieces {
            println!("  piece hanging off {v}, entering at {}:", piece.entry);
            println!("    {}", piece.subtree);
        }
        let rebuilt = reconstruct(&tree, head).unwrap();
        println!("  composing the pieces restores the class: {}", rebuilt == class);

        let command = command_of(&tree, head).unwrap();
        println!("  denoting command:");
        for line in print_mu_file(&command).lines() {
            println!("    {line}");
        }
        println!();
    }

    let leaf = find_leaf_corolla(&tree).unwrap();
    println!("a removable leaf corolla: index {leaf} ({})", tree.corollas()[leaf]);
    let pruned = cyclop::decompose::remove_leaf(&tree, leaf).unwrap();
    print!("after removing it:\n{}", print_tree_file(&pruned));
}
