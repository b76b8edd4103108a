//! Graphviz export: corollas as nodes, special corollas as diamonds, free
//! variables as dashed leaf stubs.
//!
//! Run with `cargo run --example dot_export`.

use cyclop::dot::to_dot;
use cyclop::parse::parse_tree_file;

fn main() {
    let text = "{ f(x,y,z,w), g(a,b,c,d), (p,q) ; (x~a)(y~p) }";
    let (_, tree) = parse_tree_file(text).unwrap();
    print!("{}", to_dot(&tree));
}
