//! Graph validation: which corolla graphs are trees, and why the others
//! are rejected.
//!
//! Run with `cargo run --example classify_graphs`.

use cyclop::parse::parse_tree_file;

fn main() {
    let inputs = [
        // Two parallel edges between the same pair of corollas.
        "{ f(x,y,z,u,v), g(a,b,c,d) ; (u~c)(v~b) }",
        // An edge with both endpoints on one corolla.
        "{ f(x,y,z), g(a,b,c) ; (x~a)(b~c) }",
        // Three corollas closed into a cycle.
        "{ f(x,y,z,u,v), g(a,b,c,d), h(p,q,r) ; (v~b)(c~q)(r~u) }",
        // Dropping one edge of the cycle yields an honest tree.
        "{ f(x,y,z,u,v), g(a,b,c,d), h(p,q,r) ; (v~b)(c~q) }",
        // The vertex-free tree: a single bare pair.
        "{ (x,y) }",
        // Mixing ordinary and special corollas is fine too.
        "{ f(x,y), (p,q) ; (y~p) }",
    ];

    for text in inputs {
        let (_, graph) = parse_tree_file(text).expect("all inputs are well-formed graphs");
        let kind = graph.classify();
        println!("{text}");
        println!("  -> {kind}");
        if kind.is_tree() {
            println!(
                "     free variables: {}",
                cyclop::var::format_set(&graph.free_vars())
            );
        }
        println!();
    }
}
