//! The three faces of one object: a command, its combinator translation,
//! and the tree class both denote; plus the inverse translation back.
//!
//! Run with `cargo run --example translate_roundtrip`.

use cyclop::comb::interpret;
use cyclop::operad::TreeModel;
use cyclop::parse::{parse_mu_file, print_comb_file, print_mu_file, print_tree_file};
use cyclop::translate::{comb_to_mu, phi, translate_command};

fn main() {
    let text = "\
param f : {x, y}
param g : {a, b}
f{mu a. g{a, b}, y}";
    let (_, command) = parse_mu_file(text).unwrap();
    println!("command:\n{}", print_mu_file(&command));

    let combinator = translate_command(&command).unwrap();
    println!("combinator translation:\n{}", print_comb_file(&combinator));

    let class = phi(&command).unwrap();
    println!("denoted class:\n{}", print_tree_file(class.representative()));

    // Interpreting the combinator gives the same class.
    let via_comb = interpret(&combinator, &TreeModel).unwrap();
    println!("combinator interprets to the same class: {}", via_comb == class);

    // The inverse translation returns a command with the same meaning.
    let back = comb_to_mu(&combinator).unwrap();
    println!();
    println!("inverse translation of the combinator:\n{}", print_mu_file(&back));
    println!("it denotes the same class: {}", phi(&back).unwrap() == class);
}
