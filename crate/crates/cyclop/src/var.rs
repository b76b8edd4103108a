//! Variables, variable sets, and the bijection algebra used everywhere else.
//!
//! Library-generated names always contain the reserved character `#`
//! (`stem#counter`), so they can never collide with user-supplied tokens.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A named variable. Ordering puts `#`-suffixed names after all plain names
/// with the same stem, and orders their counters numerically, so canonical
/// forms do not depend on the order in which fresh names were generated.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Variable(String);

impl Variable {
    /// A variable from a user-facing token. Rejects the reserved `#`.
    pub fn user(name: &str) -> Result<Variable> {
        if name.is_empty() {
            return Err(Error::Validation("empty variable name".into()));
        }
        if name.contains('#') {
            return Err(Error::Validation(format!(
                "variable `{name}` contains the reserved character `#`"
            )));
        }
        Ok(Variable(name.to_string()))
    }

    /// A variable from any non-empty token, including generated `stem#n` ones.
    pub fn raw(name: &str) -> Variable {
        assert!(!name.is_empty(), "empty variable name");
        Variable(name.to_string())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Splits `stem#n` into its stem and counter; a plain name has no counter.
    fn key(&self) -> (&str, Option<u64>) {
        if let Some(pos) = self.0.find('#') {
            if let Ok(n) = self.0[pos + 1..].parse::<u64>() {
                return (&self.0[..pos], Some(n));
            }
        }
        (&self.0, None)
    }
}

impl Ord for Variable {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (s1, n1) = self.key();
        let (s2, n2) = other.key();
        s1.cmp(s2)
            .then_with(|| match (n1, n2) {
                (None, None) => std::cmp::Ordering::Equal,
                (None, Some(_)) => std::cmp::Ordering::Less,
                (Some(_), None) => std::cmp::Ordering::Greater,
                (Some(a), Some(b)) => a.cmp(&b),
            })
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Variable {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type VarSet = BTreeSet<Variable>;

/// Convenience constructor for a set of raw variables.
pub fn varset(names: &[&str]) -> VarSet {
    names.iter().map(|n| Variable::raw(n)).collect()
}

/// The least `hint#n` not in `avoid`. Deterministic in `(hint, avoid)`.
/// A hint that is itself of the form `stem#k` is first reduced to its stem.
pub fn fresh(hint: &str, avoid: &VarSet) -> Variable {
    let stem = hint.split('#').next().unwrap_or(hint);
    let stem = if stem.is_empty() { "v" } else { stem };
    let mut n = 0u64;
    loop {
        let candidate = Variable(format!("{stem}#{n}"));
        if !avoid.contains(&candidate) {
            return candidate;
        }
        n += 1;
    }
}

/// A supply of fresh variables that extends its avoid-set as it hands them out.
#[derive(Debug, Clone)]
pub struct FreshSupply {
    avoid: VarSet,
}

impl FreshSupply {
    pub fn avoiding(avoid: VarSet) -> Self {
        FreshSupply { avoid }
    }

    pub fn next(&mut self, hint: &str) -> Variable {
        let v = fresh(hint, &self.avoid);
        self.avoid.insert(v.clone());
        v
    }

    pub fn also_avoid(&mut self, vars: impl IntoIterator<Item = Variable>) {
        self.avoid.extend(vars);
    }
}

/// A finite bijection between variable sets, stored as domain -> codomain.
///
/// Bijections are written `sigma : X' -> X`, acting contravariantly on
/// decorated structure: an element over `X` acted on by `sigma` lives over `X'`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bijection {
    forward: BTreeMap<Variable, Variable>,
}

impl Bijection {
    pub fn empty() -> Bijection {
        Bijection::default()
    }

    /// The identity on `set`.
    pub fn identity(set: &VarSet) -> Bijection {
        Bijection {
            forward: set.iter().map(|v| (v.clone(), v.clone())).collect(),
        }
    }

    /// Builds a bijection from (domain, codomain) pairs, checking invertibility.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, Variable)>) -> Result<Bijection> {
        let mut forward = BTreeMap::new();
        let mut cod = VarSet::new();
        for (d, c) in pairs {
            if forward.insert(d.clone(), c.clone()).is_some() {
                return Err(Error::Clash(format!("duplicate domain entry `{d}`")));
            }
            if !cod.insert(c.clone()) {
                return Err(Error::Clash(format!("duplicate codomain entry `{c}`")));
            }
        }
        Ok(Bijection { forward })
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn domain(&self) -> VarSet {
        self.forward.keys().cloned().collect()
    }

    pub fn codomain(&self) -> VarSet {
        self.forward.values().cloned().collect()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Variable, &Variable)> {
        self.forward.iter()
    }

    pub fn apply(&self, v: &Variable) -> Option<&Variable> {
        self.forward.get(v)
    }

    /// Inverse image: the domain element mapped to `v`.
    pub fn unapply(&self, v: &Variable) -> Option<&Variable> {
        self.forward.iter().find(|(_, c)| *c == v).map(|(d, _)| d)
    }

    pub fn inverse(&self) -> Bijection {
        Bijection {
            forward: self.forward.iter().map(|(d, c)| (c.clone(), d.clone())).collect(),
        }
    }

    /// `sigma|^Y`: the pairs of `sigma` whose codomain element lies in `Y`.
    pub fn restrict(&self, y: &VarSet) -> Result<Bijection> {
        let cod = self.codomain();
        if !y.is_subset(&cod) {
            return Err(Error::Domain(format!(
                "restriction set {{{}}} is not contained in the codomain",
                format_set(y)
            )));
        }
        Ok(Bijection {
            forward: self
                .forward
                .iter()
                .filter(|(_, c)| y.contains(c))
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        })
    }

    /// `sigma_y`: extends `sigma` with the fixpoint pair `(y, y)`.
    pub fn extend_fixpoint(&self, y: &Variable) -> Result<Bijection> {
        if self.forward.contains_key(y) || self.codomain().contains(y) {
            return Err(Error::Clash(format!(
                "`{y}` already occurs in the bijection"
            )));
        }
        let mut forward = self.forward.clone();
        forward.insert(y.clone(), y.clone());
        Ok(Bijection { forward })
    }

    /// `sigma^{y/x'}`: the pair `(x', x)` becomes `(y, x)`.
    /// Self-replacement (`y = x'`) is the identity.
    pub fn replace_domain(&self, y: &Variable, x_prime: &Variable) -> Result<Bijection> {
        let Some(target) = self.forward.get(x_prime).cloned() else {
            return Err(Error::Domain(format!(
                "`{x_prime}` is not in the domain of the bijection"
            )));
        };
        if y == x_prime {
            return Ok(self.clone());
        }
        if self.forward.contains_key(y) {
            return Err(Error::Clash(format!("`{y}` already occurs in the domain")));
        }
        let mut forward = self.forward.clone();
        forward.remove(x_prime);
        forward.insert(y.clone(), target);
        Ok(Bijection { forward })
    }

    /// `sigma + tau`: union of two bijections with disjoint domains and codomains.
    pub fn disjoint_union(&self, other: &Bijection) -> Result<Bijection> {
        let mut forward = self.forward.clone();
        let mut cod = self.codomain();
        for (d, c) in &other.forward {
            if forward.insert(d.clone(), c.clone()).is_some() {
                return Err(Error::Clash(format!("domains overlap on `{d}`")));
            }
            if !cod.insert(c.clone()) {
                return Err(Error::Clash(format!("codomains overlap on `{c}`")));
            }
        }
        Ok(Bijection { forward })
    }

    /// Composite `self . other`: first `other`, then `self`.
    /// Requires `codomain(other) = domain(self)`.
    pub fn compose_after(&self, other: &Bijection) -> Result<Bijection> {
        if other.codomain() != self.domain() {
            return Err(Error::Domain(
                "composition mismatch: codomain of the inner bijection differs from the domain of the outer".into(),
            ));
        }
        Ok(Bijection {
            forward: other
                .forward
                .iter()
                .map(|(d, mid)| (d.clone(), self.forward[mid].clone()))
                .collect(),
        })
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .forward
            .iter()
            .map(|(d, c)| format!("{d}->{c}"))
            .collect::<Vec<_>>()
            .join(", ");
        write!(f, "{body}")
    }
}

pub fn format_set(s: &VarSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Variable {
        Variable::raw(n)
    }

    fn bij(pairs: &[(&str, &str)]) -> Bijection {
        Bijection::from_pairs(pairs.iter().map(|(d, c)| (v(d), v(c)))).unwrap()
    }

    #[test]
    fn restrict_keeps_pairs_with_codomain_in_y() {
        let s = bij(&[("a", "x"), ("b", "y")]);
        assert_eq!(s.restrict(&varset(&["x"])).unwrap(), bij(&[("a", "x")]));
        let s = bij(&[("a", "x")]);
        assert_eq!(s.restrict(&varset(&[])).unwrap(), Bijection::empty());
        let s = bij(&[("a", "x"), ("b", "y"), ("c", "z")]);
        assert_eq!(
            s.restrict(&varset(&["y", "z"])).unwrap(),
            bij(&[("b", "y"), ("c", "z")])
        );
        assert!(s.restrict(&varset(&["w"])).is_err());
    }

    #[test]
    fn extend_fixpoint_adds_a_fixed_pair() {
        let s = bij(&[("a", "x")]);
        assert_eq!(s.extend_fixpoint(&v("u")).unwrap(), bij(&[("a", "x"), ("u", "u")]));
        assert_eq!(
            Bijection::empty().extend_fixpoint(&v("u")).unwrap(),
            bij(&[("u", "u")])
        );
        assert!(s.extend_fixpoint(&v("a")).is_err());
        assert!(s.extend_fixpoint(&v("x")).is_err());
    }

    #[test]
    fn replace_domain_renames_one_domain_entry() {
        let s = bij(&[("a", "x")]);
        assert_eq!(s.replace_domain(&v("b"), &v("a")).unwrap(), bij(&[("b", "x")]));
        let s = bij(&[("a", "x"), ("c", "z")]);
        assert_eq!(
            s.replace_domain(&v("b"), &v("c")).unwrap(),
            bij(&[("a", "x"), ("b", "z")])
        );
        let s = bij(&[("a", "x")]);
        assert_eq!(s.replace_domain(&v("a"), &v("a")).unwrap(), s);
        assert!(s.replace_domain(&v("b"), &v("q")).is_err());
    }

    #[test]
    fn disjoint_union_requires_disjointness() {
        assert_eq!(
            bij(&[("a", "x")]).disjoint_union(&bij(&[("b", "y")])).unwrap(),
            bij(&[("a", "x"), ("b", "y")])
        );
        assert_eq!(
            Bijection::empty().disjoint_union(&bij(&[("b", "y")])).unwrap(),
            bij(&[("b", "y")])
        );
        assert!(bij(&[("a", "x")]).disjoint_union(&bij(&[("a", "y")])).is_err());
        assert!(bij(&[("a", "x")]).disjoint_union(&bij(&[("b", "x")])).is_err());
    }

    #[test]
    fn fresh_picks_minimal_reserved_name() {
        assert_eq!(fresh("x", &varset(&["x"])), v("x#0"));
        assert_eq!(fresh("x", &varset(&["x", "x#0"])), v("x#1"));
        assert_eq!(fresh("v", &varset(&[])), v("v#0"));
        assert_eq!(fresh("x#7", &varset(&["x#0"])), v("x#1"));
    }

    #[test]
    fn fresh_is_injective_over_growing_avoid_set() {
        let mut supply = FreshSupply::avoiding(varset(&["x", "y"]));
        let mut seen = VarSet::new();
        for _ in 0..20 {
            let v = supply.next("x");
            assert!(seen.insert(v));
        }
    }

    #[test]
    fn restrict_then_union_over_partition_reconstructs() {
        let s = bij(&[("a", "x"), ("b", "y"), ("c", "z")]);
        let left = s.restrict(&varset(&["x"])).unwrap();
        let right = s.restrict(&varset(&["y", "z"])).unwrap();
        assert_eq!(left.disjoint_union(&right).unwrap(), s);
    }

    #[test]
    fn replace_domain_twice_is_identity() {
        let s = bij(&[("a", "x"), ("c", "z")]);
        let once = s.replace_domain(&v("b"), &v("a")).unwrap();
        let twice = once.replace_domain(&v("a"), &v("b")).unwrap();
        assert_eq!(twice, s);
    }

    #[test]
    fn ordering_puts_generated_names_after_their_stem() {
        let mut names = [v("x#1"), v("x"), v("x#0"), v("xa"), v("x#10"), v("x#9")];
        names.sort();
        let shown: Vec<String> = names.iter().map(|n| n.to_string()).collect();
        assert_eq!(shown, vec!["x", "x#0", "x#1", "x#9", "x#10", "xa"]);
    }

    #[test]
    fn user_tokens_reject_reserved_character() {
        assert!(Variable::user("x").is_ok());
        assert!(Variable::user("x#0").is_err());
        assert!(Variable::user("").is_err());
    }
}
