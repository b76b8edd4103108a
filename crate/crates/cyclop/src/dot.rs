//! Graphviz export: corollas as nodes (special corollas as diamonds),
//! edges labeled with their variable pair, free variables as leaf stubs.

use std::fmt::Write as _;

use crate::tree::{Corolla, VernonGraph};

pub fn to_dot(t: &VernonGraph) -> String {
    let mut out = String::from("graph corollas {\n  node [fontname=\"monospace\"];\n");
    for (i, c) in t.corollas().iter().enumerate() {
        match c {
            Corolla::Ordinary(inst) => {
                let _ = writeln!(
                    out,
                    "  c{i} [label=\"{}\", shape=circle];",
                    inst.decoration().display_name()
                );
            }
            Corolla::Special(a, b) => {
                let _ = writeln!(out, "  c{i} [label=\"({a},{b})\", shape=diamond];");
            }
        }
    }
    for e in t.edges() {
        let (a, b) = e.endpoints();
        let ca = t.corolla_of(a).expect("validated endpoint");
        let cb = t.corolla_of(b).expect("validated endpoint");
        let _ = writeln!(out, "  c{ca} -- c{cb} [label=\"{a}~{b}\"];");
    }
    for (k, v) in t.free_vars().iter().enumerate() {
        let c = t.corolla_of(v).expect("free variables occur in a corolla");
        let _ = writeln!(out, "  leg{k} [label=\"{v}\", shape=none];");
        let _ = writeln!(out, "  c{c} -- leg{k} [style=dashed];");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_tree_file;

    #[test]
    fn dot_output_names_every_piece() {
        let (_, t) =
            parse_tree_file("{ f(x,y,z), g(a,b), (p,q) ; (x~a)(y~p) }").unwrap();
        let dot = to_dot(&t);
        assert!(dot.starts_with("graph"));
        assert!(dot.contains("shape=diamond"));
        assert!(dot.contains("c0 -- c1") || dot.contains("c1 -- c0"));
        // Three free variables leave three dashed stubs.
        assert_eq!(dot.matches("style=dashed").count(), 3);
    }
}
