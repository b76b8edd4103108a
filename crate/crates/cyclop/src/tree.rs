//! Unrooted decorated trees: construction, validation, classification,
//! renaming, and alpha-canonical forms.
//!
//! A Vernon graph is a finite set of corollas with mutually disjoint free
//! variables plus an involution given as a set of edges; the involution's
//! fixpoints are the graph's free variables. Canonicalization renames every
//! edge variable into the reserved `b#k` namespace along a deterministic
//! traversal from the center of the corolla tree, so two graphs are
//! alpha-equivalent exactly when their canonical forms are equal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::signature::{Decoration, DecoratedInstance};
use crate::var::{format_set, Bijection, VarSet, Variable};

/// An unordered edge between two distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: Variable,
    b: Variable,
}

impl Edge {
    pub fn new(a: Variable, b: Variable) -> Result<Edge> {
        if a == b {
            return Err(Error::Validation(format!("edge endpoints coincide: `{a}`")));
        }
        if a <= b {
            Ok(Edge { a, b })
        } else {
            Ok(Edge { a: b, b: a })
        }
    }

    pub fn endpoints(&self) -> (&Variable, &Variable) {
        (&self.a, &self.b)
    }

    pub fn contains(&self, v: &Variable) -> bool {
        &self.a == v || &self.b == v
    }

    pub fn other(&self, v: &Variable) -> Option<&Variable> {
        if &self.a == v {
            Some(&self.b)
        } else if &self.b == v {
            Some(&self.a)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}~{})", self.a, self.b)
    }
}

/// A node of a Vernon graph: a decorated instance, or a bare unordered pair
/// of distinct variables standing for an identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Corolla {
    Ordinary(DecoratedInstance),
    Special(Variable, Variable),
}

impl Corolla {
    pub fn special(a: Variable, b: Variable) -> Result<Corolla> {
        if a == b {
            return Err(Error::Validation(format!(
                "special corolla endpoints coincide: `{a}`"
            )));
        }
        if a <= b {
            Ok(Corolla::Special(a, b))
        } else {
            Ok(Corolla::Special(b, a))
        }
    }

    pub fn free_vars(&self) -> VarSet {
        match self {
            Corolla::Ordinary(inst) => inst.current_vars(),
            Corolla::Special(a, b) => [a.clone(), b.clone()].into_iter().collect(),
        }
    }

    pub fn is_special(&self) -> bool {
        matches!(self, Corolla::Special(_, _))
    }

    pub fn instance(&self) -> Option<&DecoratedInstance> {
        match self {
            Corolla::Ordinary(inst) => Some(inst),
            Corolla::Special(_, _) => None,
        }
    }
}

impl fmt::Display for Corolla {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Corolla::Ordinary(inst) => write!(f, "{inst}"),
            Corolla::Special(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Why a graph fails to be a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NotATreeReason {
    Disconnected,
    Loop,
    MultiEdge,
    Cycle,
}

impl fmt::Display for NotATreeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NotATreeReason::Disconnected => "Disconnected",
            NotATreeReason::Loop => "Loop",
            NotATreeReason::MultiEdge => "MultiEdge",
            NotATreeReason::Cycle => "Cycle",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeKind {
    OrdinaryTree,
    ExceptionalTree,
    ExtendedTree,
    NotATree(NotATreeReason),
}

impl TreeKind {
    pub fn is_tree(&self) -> bool {
        !matches!(self, TreeKind::NotATree(_))
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeKind::OrdinaryTree => f.write_str("OrdinaryTree"),
            TreeKind::ExceptionalTree => f.write_str("ExceptionalTree"),
            TreeKind::ExtendedTree => f.write_str("ExtendedTree"),
            TreeKind::NotATree(r) => write!(f, "NotATree({r})"),
        }
    }
}

/// A finite non-empty sequence of corollas plus an involution given by its
/// set of two-cycles. Corolla order is semantically irrelevant; all
/// operations treat corollas as a set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VernonGraph {
    corollas: Vec<Corolla>,
    edges: BTreeSet<Edge>,
}

impl VernonGraph {
    pub fn new(corollas: Vec<Corolla>, edges: BTreeSet<Edge>) -> Result<VernonGraph> {
        if corollas.is_empty() {
            return Err(Error::Validation("a graph needs at least one corolla".into()));
        }
        let mut seen = VarSet::new();
        for c in &corollas {
            for v in c.free_vars() {
                if !seen.insert(v.clone()) {
                    return Err(Error::Validation(format!(
                        "variable `{v}` occurs in two corollas"
                    )));
                }
            }
        }
        let mut in_edge = VarSet::new();
        for e in &edges {
            let (a, b) = e.endpoints();
            for v in [a, b] {
                if !seen.contains(v) {
                    return Err(Error::Validation(format!(
                        "edge endpoint `{v}` occurs in no corolla"
                    )));
                }
                if !in_edge.insert(v.clone()) {
                    return Err(Error::Validation(format!(
                        "variable `{v}` occurs in two edges"
                    )));
                }
            }
        }
        Ok(VernonGraph { corollas, edges })
    }

    /// Single corolla, no edges.
    pub fn single(c: Corolla) -> VernonGraph {
        VernonGraph { corollas: vec![c], edges: BTreeSet::new() }
    }

    pub fn corollas(&self) -> &[Corolla] {
        &self.corollas
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// All variables occurring in the graph.
    pub fn all_vars(&self) -> VarSet {
        self.corollas.iter().flat_map(|c| c.free_vars()).collect()
    }

    /// The involution's fixpoints: variables in no edge.
    pub fn free_vars(&self) -> VarSet {
        let mut vars = self.all_vars();
        for e in &self.edges {
            let (a, b) = e.endpoints();
            vars.remove(a);
            vars.remove(b);
        }
        vars
    }

    pub fn bound_vars(&self) -> VarSet {
        self.edges
            .iter()
            .flat_map(|e| {
                let (a, b) = e.endpoints();
                [a.clone(), b.clone()]
            })
            .collect()
    }

    /// The partner of `v` under the involution; `v` itself if it is free.
    pub fn involution(&self, v: &Variable) -> Option<Variable> {
        if !self.all_vars().contains(v) {
            return None;
        }
        for e in &self.edges {
            if let Some(w) = e.other(v) {
                return Some(w.clone());
            }
        }
        Some(v.clone())
    }

    /// Index of the corolla whose free variables contain `v`.
    pub fn corolla_of(&self, v: &Variable) -> Option<usize> {
        self.corollas.iter().position(|c| c.free_vars().contains(v))
    }

    /// Classifies the graph per the tree taxonomy. Loops take precedence over
    /// multi-edges, which take precedence over the traversal verdicts.
    pub fn classify(&self) -> TreeKind {
        let n = self.corollas.len();
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for e in &self.edges {
            let (a, b) = e.endpoints();
            let ca = self.corolla_of(a).expect("validated endpoint");
            let cb = self.corolla_of(b).expect("validated endpoint");
            if ca == cb {
                return TreeKind::NotATree(NotATreeReason::Loop);
            }
            arcs.push((ca.min(cb), ca.max(cb)));
        }
        let mut sorted = arcs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != arcs.len() {
            return TreeKind::NotATree(NotATreeReason::MultiEdge);
        }

        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &arcs {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut visited = vec![false; n];
        let mut stack = vec![0usize];
        visited[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !visited[w] {
                    visited[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != n {
            return TreeKind::NotATree(NotATreeReason::Disconnected);
        }
        if arcs.len() != n - 1 {
            return TreeKind::NotATree(NotATreeReason::Cycle);
        }

        if self.corollas.iter().all(|c| !c.is_special()) {
            TreeKind::OrdinaryTree
        } else if n == 1 {
            TreeKind::ExceptionalTree
        } else {
            TreeKind::ExtendedTree
        }
    }

    /// Renames variables as dictated by `theta : U -> Y` with `Y` a subset of
    /// the graph's variables; variables outside `Y` are kept (the renaming is
    /// extended by the identity). Each corolla and edge endpoint `y` becomes
    /// the inverse image of `y`.
    pub fn rename(&self, theta: &Bijection) -> Result<VernonGraph> {
        let all = self.all_vars();
        let cod = theta.codomain();
        if !cod.is_subset(&all) {
            return Err(Error::Domain(format!(
                "renaming codomain {{{}}} is not contained in the graph's variables",
                format_set(&cod)
            )));
        }
        let untouched: VarSet = all.difference(&cod).cloned().collect();
        let dom = theta.domain();
        if let Some(v) = dom.intersection(&untouched).next() {
            return Err(Error::Clash(format!(
                "renaming target `{v}` already occurs in the graph"
            )));
        }
        // theta extended by the identity on the untouched variables,
        // inverted so it can be applied to occurrences directly.
        let mut backward: BTreeMap<Variable, Variable> =
            theta.pairs().map(|(d, c)| (c.clone(), d.clone())).collect();
        for v in untouched {
            backward.insert(v.clone(), v);
        }
        let map = |v: &Variable| backward[v].clone();

        let corollas = self
            .corollas
            .iter()
            .map(|c| match c {
                Corolla::Ordinary(inst) => {
                    let cur = inst.current_vars();
                    let local = Bijection::from_pairs(
                        cur.iter().map(|v| (map(v), v.clone())),
                    )?;
                    Ok(Corolla::Ordinary(inst.act(&local)?))
                }
                Corolla::Special(a, b) => Corolla::special(map(a), map(b)),
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = e.endpoints();
                Edge::new(map(a), map(b))
            })
            .collect::<Result<BTreeSet<_>>>()?;
        VernonGraph::new(corollas, edges)
    }

    /// The alpha-canonical class of the graph. Errors on non-tree input.
    pub fn canonicalize(&self) -> Result<TreeClass> {
        let kind = self.classify();
        if let TreeKind::NotATree(reason) = kind {
            return Err(Error::Validation(format!("not a tree: {reason}")));
        }
        let canonical = canonical_form(self);
        Ok(TreeClass { canonical, kind })
    }

    pub fn alpha_eq(&self, other: &VernonGraph) -> Result<bool> {
        Ok(self.canonicalize()? == other.canonicalize()?)
    }
}

impl fmt::Display for VernonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let corollas = self
            .corollas
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        if self.edges.is_empty() {
            write!(f, "{{ {corollas} }}")
        } else {
            let edges = self.edges.iter().map(|e| e.to_string()).collect::<String>();
            write!(f, "{{ {corollas} ; {edges} }}")
        }
    }
}

/// The alpha-equivalence class of a Vernon tree, held as its canonical
/// representative. Two trees have equal classes exactly when they are
/// alpha-equivalent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeClass {
    canonical: VernonGraph,
    kind: TreeKind,
}

// TreeKind does not influence the ordering; it is determined by the graph.
impl TreeClass {
    pub fn representative(&self) -> &VernonGraph {
        &self.canonical
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn free_vars(&self) -> VarSet {
        self.canonical.free_vars()
    }

    pub fn is_exceptional(&self) -> bool {
        self.kind == TreeKind::ExceptionalTree
    }
}

impl fmt::Display for TreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical)
    }
}

/// One position of a corolla in the canonical encoding: a free variable by
/// name, the hook back to the parent, or an embedded child encoding.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Free(Variable),
    Parent,
    Child(Enc),
}

/// Canonical encoding of a subtree: the head decoration (None for a special
/// corolla) and its slots in intrinsic order. Bound variable names never
/// appear, so the encoding is an alpha-class invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Enc {
    head: Option<Decoration>,
    slots: Vec<Slot>,
}

struct Canonicalizer<'a> {
    graph: &'a VernonGraph,
    free: VarSet,
    // variable -> (edge partner, partner's corolla index)
    partner: BTreeMap<Variable, (Variable, usize)>,
}

impl<'a> Canonicalizer<'a> {
    fn new(graph: &'a VernonGraph) -> Self {
        let free = graph.free_vars();
        let mut partner = BTreeMap::new();
        for e in graph.edges() {
            let (a, b) = e.endpoints();
            let ca = graph.corolla_of(a).unwrap();
            let cb = graph.corolla_of(b).unwrap();
            partner.insert(a.clone(), (b.clone(), cb));
            partner.insert(b.clone(), (a.clone(), ca));
        }
        Canonicalizer { graph, free, partner }
    }

    /// The corolla's positions in intrinsic order, with the variable sitting
    /// at each position: profile order for ordinary corollas, both endpoints
    /// for a special corolla (to be sorted by slot later).
    fn positions(&self, idx: usize) -> Vec<Variable> {
        match &self.graph.corollas()[idx] {
            Corolla::Ordinary(inst) => inst.current_order(),
            Corolla::Special(a, b) => vec![a.clone(), b.clone()],
        }
    }

    fn encode(&self, idx: usize, parent: Option<usize>) -> Enc {
        let corolla = &self.graph.corollas()[idx];
        let head = corolla.instance().map(|inst| inst.decoration().clone());
        let mut slots: Vec<Slot> = Vec::new();
        for v in self.positions(idx) {
            let slot = if self.free.contains(&v) {
                Slot::Free(v.clone())
            } else {
                let (_, other_idx) = self.partner[&v].clone();
                if Some(other_idx) == parent {
                    Slot::Parent
                } else {
                    Slot::Child(self.encode(other_idx, Some(idx)))
                }
            };
            slots.push(slot);
        }
        if corolla.is_special() {
            slots.sort();
        }
        Enc { head, slots }
    }

    /// Children of `idx` (excluding the parent) in canonical order, as
    /// (variable here, variable there, child index) triples.
    fn ordered_children(&self, idx: usize, parent: Option<usize>) -> Vec<(Variable, Variable, usize)> {
        let corolla = &self.graph.corollas()[idx];
        let mut entries: Vec<(Option<Enc>, Variable, Variable, usize)> = Vec::new();
        for v in self.positions(idx) {
            if self.free.contains(&v) {
                continue;
            }
            let (w, other_idx) = self.partner[&v].clone();
            if Some(other_idx) == parent {
                continue;
            }
            let enc = if corolla.is_special() {
                Some(self.encode(other_idx, Some(idx)))
            } else {
                None
            };
            entries.push((enc, v, w, other_idx));
        }
        // For a special corolla the two positions have no intrinsic order;
        // order its children by their encodings instead.
        if corolla.is_special() {
            entries.sort();
        }
        entries.into_iter().map(|(_, v, w, i)| (v, w, i)).collect()
    }

    /// Assigns `b#k` names to both endpoints of every edge in a pre-order
    /// walk from the root. Indices already taken by a free variable are
    /// skipped, which is class-invariant because free names are.
    fn assign_names(&self, root: usize) -> BTreeMap<Variable, Variable> {
        let mut names = BTreeMap::new();
        let mut counter = 0u64;
        let next_name = |counter: &mut u64| loop {
            let candidate = Variable::raw(&format!("b#{counter}"));
            *counter += 1;
            if !self.free.contains(&candidate) {
                return candidate;
            }
        };
        let mut stack = vec![(root, None)];
        while let Some((idx, parent)) = stack.pop() {
            let children = self.ordered_children(idx, parent);
            let mut to_visit = Vec::new();
            for (here, there, child_idx) in children {
                names.insert(here, next_name(&mut counter));
                names.insert(there, next_name(&mut counter));
                to_visit.push((child_idx, Some(idx)));
            }
            // Depth-first in canonical order.
            for entry in to_visit.into_iter().rev() {
                stack.push(entry);
            }
        }
        names
    }
}

/// The 1- or 2-element center of the corolla adjacency tree.
fn tree_centers(graph: &VernonGraph) -> Vec<usize> {
    let n = graph.corollas().len();
    if n == 1 {
        return vec![0];
    }
    let mut adj = vec![BTreeSet::new(); n];
    for e in graph.edges() {
        let (a, b) = e.endpoints();
        let ca = graph.corolla_of(a).unwrap();
        let cb = graph.corolla_of(b).unwrap();
        adj[ca].insert(cb);
        adj[cb].insert(ca);
    }
    let mut degree: Vec<usize> = adj.iter().map(|s| s.len()).collect();
    let mut removed = vec![false; n];
    let mut remaining = n;
    let mut layer: Vec<usize> = (0..n).filter(|&i| degree[i] <= 1).collect();
    while remaining > 2 {
        let mut next = Vec::new();
        for &leaf in &layer {
            removed[leaf] = true;
            remaining -= 1;
            for &nb in &adj[leaf] {
                if !removed[nb] {
                    degree[nb] -= 1;
                    if degree[nb] == 1 {
                        next.push(nb);
                    }
                }
            }
        }
        layer = next;
    }
    (0..n).filter(|&i| !removed[i]).collect()
}

fn canonical_form(graph: &VernonGraph) -> VernonGraph {
    let canon = Canonicalizer::new(graph);
    let centers = tree_centers(graph);
    let root = centers
        .iter()
        .copied()
        .min_by_key(|&idx| canon.encode(idx, None))
        .expect("a tree has a center");
    let names = canon.assign_names(root);

    // `rename` expects new-name -> old-name pairs.
    let theta = Bijection::from_pairs(names.into_iter().map(|(old, new)| (new, old)))
        .expect("fresh b#k names cannot clash");
    let renamed = graph.rename(&theta).expect("canonical renaming is valid");
    let mut corollas = renamed.corollas.clone();
    corollas.sort();
    VernonGraph { corollas, edges: renamed.edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{BaseParameter, Signature};
    use crate::var::varset;

    pub(crate) fn sig_121() -> Signature {
        let mut sig = Signature::new();
        for (name, profile) in [
            ("f", vec!["x", "y", "z", "u", "v"]),
            ("g", vec!["a", "b", "c", "d"]),
            ("h", vec!["p", "q", "r"]),
        ] {
            sig.declare(
                BaseParameter::new(name, profile.iter().map(|v| Variable::raw(v)).collect())
                    .unwrap(),
            )
            .unwrap();
        }
        sig
    }

    fn edge(a: &str, b: &str) -> Edge {
        Edge::new(Variable::raw(a), Variable::raw(b)).unwrap()
    }

    fn graph(sig: &Signature, corollas: &[&str], edges: &[(&str, &str)]) -> VernonGraph {
        let corollas = corollas
            .iter()
            .map(|c| Corolla::Ordinary(sig.instance(c).unwrap()))
            .collect();
        let edges = edges.iter().map(|(a, b)| edge(a, b)).collect();
        VernonGraph::new(corollas, edges).unwrap()
    }

    #[test]
    fn two_parallel_edges_are_a_multi_edge() {
        let sig = sig_121();
        let g = graph(&sig, &["f", "g"], &[("u", "c"), ("v", "b")]);
        assert_eq!(g.classify(), TreeKind::NotATree(NotATreeReason::MultiEdge));
    }

    #[test]
    fn edge_within_one_corolla_is_a_loop() {
        let mut sig = Signature::new();
        for (name, profile) in [("f", vec!["x", "y", "z"]), ("g", vec!["a", "b", "c"])] {
            sig.declare(
                BaseParameter::new(name, profile.iter().map(|v| Variable::raw(v)).collect())
                    .unwrap(),
            )
            .unwrap();
        }
        let g = graph(&sig, &["f", "g"], &[("x", "a"), ("b", "c")]);
        assert_eq!(g.classify(), TreeKind::NotATree(NotATreeReason::Loop));
    }

    #[test]
    fn three_corollas_with_three_edges_close_a_cycle() {
        let sig = sig_121();
        let g = graph(&sig, &["f", "g", "h"], &[("v", "b"), ("c", "q"), ("r", "u")]);
        assert_eq!(g.classify(), TreeKind::NotATree(NotATreeReason::Cycle));
    }

    #[test]
    fn dropping_one_cycle_edge_gives_an_ordinary_tree() {
        let sig = sig_121();
        let g = graph(&sig, &["f", "g", "h"], &[("v", "b"), ("c", "q")]);
        assert_eq!(g.classify(), TreeKind::OrdinaryTree);
        assert_eq!(g.free_vars(), varset(&["x", "y", "z", "a", "d", "p", "r", "u"]));
        assert_eq!(g.free_vars().len(), 8);
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let sig = sig_121();
        let g = graph(&sig, &["f", "g"], &[]);
        assert_eq!(g.classify(), TreeKind::NotATree(NotATreeReason::Disconnected));
    }

    #[test]
    fn corolla_taxonomy() {
        let sig = sig_121();
        let single = graph(&sig, &["h"], &[]);
        assert_eq!(single.classify(), TreeKind::OrdinaryTree);

        let exceptional = VernonGraph::single(
            Corolla::special(Variable::raw("x"), Variable::raw("y")).unwrap(),
        );
        assert_eq!(exceptional.classify(), TreeKind::ExceptionalTree);
        assert_eq!(exceptional.free_vars(), varset(&["x", "y"]));

        let mixed = VernonGraph::new(
            vec![
                Corolla::Ordinary(sig.instance("h").unwrap()),
                Corolla::special(Variable::raw("s"), Variable::raw("t")).unwrap(),
            ],
            [edge("p", "s")].into_iter().collect(),
        )
        .unwrap();
        assert_eq!(mixed.classify(), TreeKind::ExtendedTree);
    }

    #[test]
    fn validation_catches_shared_and_repeated_variables() {
        let sig = sig_121();
        let f = Corolla::Ordinary(sig.instance("f").unwrap());
        let f2 = Corolla::Ordinary(sig.instance("f").unwrap());
        assert!(VernonGraph::new(vec![f.clone(), f2], BTreeSet::new()).is_err());

        let g = Corolla::Ordinary(sig.instance("g").unwrap());
        let double_edge = [edge("x", "a"), edge("x", "b")].into_iter().collect();
        assert!(VernonGraph::new(vec![f.clone(), g.clone()], double_edge).is_err());

        let dangling = [edge("x", "nope")].into_iter().collect();
        assert!(VernonGraph::new(vec![f, g], dangling).is_err());
    }

    #[test]
    fn rename_by_identity_is_identity() {
        let sig = sig_121();
        let g = graph(&sig, &["f", "g"], &[("x", "a")]);
        let id = Bijection::identity(&g.all_vars());
        assert_eq!(g.rename(&id).unwrap(), g);
    }

    #[test]
    fn rename_single_corolla() {
        let mut sig = Signature::new();
        sig.declare(
            BaseParameter::new("f", vec![Variable::raw("x"), Variable::raw("y")]).unwrap(),
        )
        .unwrap();
        let g = VernonGraph::single(Corolla::Ordinary(sig.instance("f").unwrap()));
        let theta =
            Bijection::from_pairs([(Variable::raw("u"), Variable::raw("x"))]).unwrap();
        let renamed = g.rename(&theta).unwrap();
        assert_eq!(renamed.free_vars(), varset(&["u", "y"]));
    }

    #[test]
    fn alpha_renaming_of_bound_pair_preserves_class() {
        let mk = |p: &str, q: &str| {
            VernonGraph::new(
                vec![
                    Corolla::special(Variable::raw("x"), Variable::raw(p)).unwrap(),
                    Corolla::special(Variable::raw("y"), Variable::raw(q)).unwrap(),
                ],
                [edge(p, q)].into_iter().collect(),
            )
            .unwrap()
        };
        let t1 = mk("u", "v");
        let t2 = mk("p", "q");
        assert!(t1.alpha_eq(&t2).unwrap());
        assert_eq!(t1.canonicalize().unwrap(), t2.canonicalize().unwrap());
    }

    #[test]
    fn canonicalize_without_bound_variables_is_the_sorted_graph() {
        let sig = sig_121();
        let g = graph(&sig, &["h"], &[]);
        let class = g.canonicalize().unwrap();
        assert_eq!(class.representative(), &g);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let sig = sig_121();
        let g = graph(&sig, &["f", "g", "h"], &[("v", "b"), ("c", "q")]);
        let class = g.canonicalize().unwrap();
        let again = class.representative().canonicalize().unwrap();
        assert_eq!(&again, &class);
    }

    #[test]
    fn free_vars_invariant_under_canonicalize() {
        let sig = sig_121();
        let g = graph(&sig, &["f", "g", "h"], &[("v", "b"), ("c", "q")]);
        assert_eq!(g.free_vars(), g.canonicalize().unwrap().free_vars());
    }

    #[test]
    fn renaming_bound_variables_preserves_class() {
        let sig = sig_121();
        // The running 3-corolla example: f(x,y,z,w), g(a,b,c,d), h(p,q)
        // with edges (x~a)(y~p).
        let mut sig2 = Signature::new();
        for (name, profile) in [
            ("f", vec!["x", "y", "z", "w"]),
            ("g", vec!["a", "b", "c", "d"]),
            ("h", vec!["p", "q"]),
        ] {
            sig2.declare(
                BaseParameter::new(name, profile.iter().map(|v| Variable::raw(v)).collect())
                    .unwrap(),
            )
            .unwrap();
        }
        let _ = sig;
        let t = graph(&sig2, &["f", "g", "h"], &[("x", "a"), ("y", "p")]);
        let theta = Bijection::from_pairs([
            (Variable::raw("x1"), Variable::raw("x")),
            (Variable::raw("a1"), Variable::raw("a")),
            (Variable::raw("y1"), Variable::raw("y")),
            (Variable::raw("p1"), Variable::raw("p")),
        ])
        .unwrap();
        let renamed = t.rename(&theta).unwrap();
        assert!(t.alpha_eq(&renamed).unwrap());
        assert_eq!(t.free_vars(), renamed.free_vars());
    }

    #[test]
    fn renaming_a_free_variable_changes_the_class() {
        let sig = sig_121();
        let t = graph(&sig, &["h"], &[]);
        let theta =
            Bijection::from_pairs([(Variable::raw("p1"), Variable::raw("p"))]).unwrap();
        let renamed = t.rename(&theta).unwrap();
        assert!(!t.alpha_eq(&renamed).unwrap());
    }
}
