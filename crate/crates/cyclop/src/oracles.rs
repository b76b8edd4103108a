//! Independent reference implementations used to cross-check the fast
//! paths: a brute-force search for alpha-equivalence of small trees, and the
//! literal rule-iteration form of subtree plucking. These stay deliberately
//! naive; the test suites assert they agree with the production routes.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::decompose::PluckedSubtree;
use crate::error::{Error, Result};
use crate::tree::{Corolla, Edge, TreeKind, VernonGraph};
use crate::var::{Variable, VarSet};

/// Rebuilds a graph applying `map` to every occurrence of its key variables;
/// unmapped variables stay. No well-formedness preconditions beyond the
/// output being a valid graph.
fn rebuild_with(t: &VernonGraph, map: &BTreeMap<Variable, Variable>) -> Result<VernonGraph> {
    let rename = |v: &Variable| map.get(v).cloned().unwrap_or_else(|| v.clone());
    let corollas = t
        .corollas()
        .iter()
        .map(|c| match c {
            Corolla::Ordinary(inst) => {
                let pairs = inst
                    .current_vars()
                    .iter()
                    .map(|v| (rename(v), v.clone()))
                    .collect::<Vec<_>>();
                let local = crate::var::Bijection::from_pairs(pairs)?;
                Ok(Corolla::Ordinary(inst.act(&local)?))
            }
            Corolla::Special(a, b) => Corolla::special(rename(a), rename(b)),
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = t
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = e.endpoints();
            Edge::new(rename(a), rename(b))
        })
        .collect::<Result<BTreeSet<_>>>()?;
    VernonGraph::new(corollas, edges)
}

fn as_sorted_sets(t: &VernonGraph) -> (Vec<Corolla>, BTreeSet<Edge>) {
    let mut corollas = t.corollas().to_vec();
    corollas.sort();
    (corollas, t.edges().clone())
}

/// Alpha-equivalence by exhausting every bijection between the two trees'
/// bound-variable sets. Exponential; intended for trees with few edges.
pub fn alpha_eq_bruteforce(t1: &VernonGraph, t2: &VernonGraph) -> Result<bool> {
    if !t1.classify().is_tree() || !t2.classify().is_tree() {
        return Err(Error::Domain("alpha-equivalence is defined on trees".into()));
    }
    if t1.free_vars() != t2.free_vars() || t1.corollas().len() != t2.corollas().len() {
        return Ok(false);
    }
    let b1: Vec<Variable> = t1.bound_vars().into_iter().collect();
    let b2: Vec<Variable> = t2.bound_vars().into_iter().collect();
    if b1.len() != b2.len() {
        return Ok(false);
    }
    let target = as_sorted_sets(t2);
    for image in b2.iter().cloned().permutations(b2.len()) {
        let map: BTreeMap<Variable, Variable> =
            b1.iter().cloned().zip(image).collect();
        let rebuilt = rebuild_with(t1, &map)?;
        if as_sorted_sets(&rebuilt) == target {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The subtree plucked at `(corolla, v)`, computed by iterating the two
/// generation rules to their least fixed point instead of by traversal.
pub fn pluck_by_rules(t: &VernonGraph, corolla: usize, v: &Variable) -> Result<PluckedSubtree> {
    if t.classify() != TreeKind::OrdinaryTree {
        return Err(Error::Domain("plucking is defined on ordinary trees".into()));
    }
    let free: VarSet = t.free_vars();
    let c = t
        .corollas()
        .get(corolla)
        .ok_or_else(|| Error::Domain(format!("no corolla at index {corolla}")))?;
    if !c.free_vars().contains(v) || free.contains(v) {
        return Err(Error::Domain(format!("`{v}` is not a bound variable of the corolla")));
    }
    let partner = |x: &Variable| t.involution(x).expect("variable occurs in the tree");

    // Seed rule: the corolla adjacent along (v, sigma(v)), tagged with its
    // entry sigma(v).
    let entry = partner(v);
    let seed = (
        t.corolla_of(&entry).expect("partner occurs in the tree"),
        entry.clone(),
    );
    let mut collected: BTreeSet<(usize, Variable)> = [seed].into_iter().collect();

    // Closure rule: from a tagged corolla (D, u), every bound variable x of
    // D other than u reaches the adjacent corolla tagged sigma(x).
    loop {
        let mut added = false;
        for (d_idx, u) in collected.clone() {
            let d = &t.corollas()[d_idx];
            for x in d.free_vars() {
                if x == u || free.contains(&x) {
                    continue;
                }
                let sx = partner(&x);
                let next = (
                    t.corolla_of(&sx).expect("partner occurs in the tree"),
                    sx,
                );
                if collected.insert(next) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }

    let idxs: BTreeSet<usize> = collected.iter().map(|(i, _)| *i).collect();
    Ok(PluckedSubtree {
        subtree: crate::decompose::induced_subgraph(t, &idxs)?,
        entry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::pluck;
    use crate::signature::{BaseParameter, Signature};
    use crate::var::varset;

    fn v(n: &str) -> Variable {
        Variable::raw(n)
    }

    fn sig() -> Signature {
        let mut sig = Signature::new();
        for (name, profile) in [
            ("f", vec!["x", "y", "z", "w"]),
            ("g", vec!["a", "b", "c", "d"]),
            ("h", vec!["p", "q"]),
        ] {
            sig.declare(
                BaseParameter::new(name, profile.iter().map(|p| v(p)).collect()).unwrap(),
            )
            .unwrap();
        }
        sig
    }

    fn running(sig: &Signature) -> VernonGraph {
        VernonGraph::new(
            vec![
                Corolla::Ordinary(sig.instance("f").unwrap()),
                Corolla::Ordinary(sig.instance("g").unwrap()),
                Corolla::Ordinary(sig.instance("h").unwrap()),
            ],
            [
                Edge::new(v("x"), v("a")).unwrap(),
                Edge::new(v("y"), v("p")).unwrap(),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap()
    }

    #[test]
    fn bruteforce_agrees_on_bound_renamings() {
        let sig = sig();
        let t = running(&sig);
        let theta = crate::var::Bijection::from_pairs([
            (v("x1"), v("x")),
            (v("a1"), v("a")),
        ])
        .unwrap();
        let renamed = t.rename(&theta).unwrap();
        assert!(alpha_eq_bruteforce(&t, &renamed).unwrap());
        assert!(t.alpha_eq(&renamed).unwrap());
    }

    #[test]
    fn bruteforce_rejects_free_renamings() {
        let sig = sig();
        let t = running(&sig);
        let theta =
            crate::var::Bijection::from_pairs([(v("z1"), v("z"))]).unwrap();
        let renamed = t.rename(&theta).unwrap();
        assert!(!alpha_eq_bruteforce(&t, &renamed).unwrap());
        assert!(!t.alpha_eq(&renamed).unwrap());
    }

    #[test]
    fn rule_iteration_matches_traversal_on_the_running_tree() {
        let sig = sig();
        let t = running(&sig);
        for (head, var) in [(0usize, "x"), (0, "y"), (1, "a"), (2, "p")] {
            let fast = pluck(&t, head, &v(var)).unwrap();
            let slow = pluck_by_rules(&t, head, &v(var)).unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn rule_iteration_collects_multi_corolla_components() {
        let sig = sig();
        let t = running(&sig);
        let slow = pluck_by_rules(&t, 1, &v("a")).unwrap();
        assert_eq!(slow.subtree.corollas().len(), 2);
        assert_eq!(slow.subtree.free_vars(), varset(&["x", "z", "w", "q"]));
    }
}
