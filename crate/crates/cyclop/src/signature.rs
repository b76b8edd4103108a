//! Finite presentations of decorations and their renaming action.
//!
//! A decoration is either a named base parameter with a fixed variable
//! profile, or a whole tree class (so that trees whose nodes are themselves
//! trees need no separate machinery). A decorated instance pairs a decoration
//! with an attachment bijection from its current variable set onto the
//! decoration's profile; acting by a bijection composes into the attachment.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::tree::TreeClass;
use crate::var::{format_set, Bijection, VarSet, Variable};

/// A named operation symbol with a finite variable profile.
///
/// The profile order is the declared order, kept for display and positional
/// parsing; typing treats the profile as a set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseParameter {
    pub name: String,
    pub profile: Vec<Variable>,
}

impl BaseParameter {
    pub fn new(name: &str, profile: Vec<Variable>) -> Result<BaseParameter> {
        let set: VarSet = profile.iter().cloned().collect();
        if set.len() != profile.len() {
            return Err(Error::Validation(format!(
                "profile of `{name}` repeats a variable"
            )));
        }
        Ok(BaseParameter { name: name.to_string(), profile })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    Base(BaseParameter),
    Tree(TreeClass),
}

impl Decoration {
    /// The profile of the decoration; for a tree class, its free variables.
    pub fn profile(&self) -> VarSet {
        match self {
            Decoration::Base(p) => p.profile.iter().cloned().collect(),
            Decoration::Tree(c) => c.free_vars(),
        }
    }

    /// Profile entries in display order: declared order for a base parameter,
    /// sorted order for a tree class.
    pub fn profile_order(&self) -> Vec<Variable> {
        match self {
            Decoration::Base(p) => p.profile.clone(),
            Decoration::Tree(c) => c.free_vars().into_iter().collect(),
        }
    }

    pub fn display_name(&self) -> String {
        match self {
            Decoration::Base(p) => p.name.clone(),
            Decoration::Tree(_) => "<tree>".to_string(),
        }
    }
}

/// A decoration together with an attachment bijection from its current
/// variable set onto the decoration's profile. Equal instances have equal
/// decorations and equal attachments.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedInstance {
    decoration: Decoration,
    attachment: Bijection,
}

impl DecoratedInstance {
    pub fn new(decoration: Decoration, attachment: Bijection) -> Result<DecoratedInstance> {
        if attachment.codomain() != decoration.profile() {
            return Err(Error::Domain(format!(
                "attachment codomain {{{}}} differs from the profile {{{}}}",
                format_set(&attachment.codomain()),
                format_set(&decoration.profile())
            )));
        }
        Ok(DecoratedInstance { decoration, attachment })
    }

    /// The instance whose current variables are the profile itself.
    pub fn identity(decoration: Decoration) -> DecoratedInstance {
        let attachment = Bijection::identity(&decoration.profile());
        DecoratedInstance { decoration, attachment }
    }

    pub fn decoration(&self) -> &Decoration {
        &self.decoration
    }

    pub fn attachment(&self) -> &Bijection {
        &self.attachment
    }

    /// The variable set the instance currently lives over.
    pub fn current_vars(&self) -> VarSet {
        self.attachment.domain()
    }

    /// Current variables listed in the decoration's profile order.
    pub fn current_order(&self) -> Vec<Variable> {
        self.decoration
            .profile_order()
            .iter()
            .map(|p| self.attachment.unapply(p).expect("attachment is onto the profile").clone())
            .collect()
    }

    /// Contravariant action: `act(f, sigma)` composes `sigma` into the
    /// attachment, so the result lives over the domain of `sigma`.
    pub fn act(&self, sigma: &Bijection) -> Result<DecoratedInstance> {
        if sigma.codomain() != self.current_vars() {
            return Err(Error::Domain(format!(
                "action codomain {{{}}} differs from the current variables {{{}}}",
                format_set(&sigma.codomain()),
                format_set(&self.current_vars())
            )));
        }
        Ok(DecoratedInstance {
            decoration: self.decoration.clone(),
            attachment: self.attachment.compose_after(sigma)?,
        })
    }
}

impl fmt::Display for DecoratedInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args = self
            .current_order()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{}({})", self.decoration.display_name(), args)
    }
}

/// A finite set of base parameters with unique names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    params: BTreeMap<String, BaseParameter>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn declare(&mut self, param: BaseParameter) -> Result<()> {
        if self.params.contains_key(&param.name) {
            return Err(Error::Clash(format!("parameter `{}` declared twice", param.name)));
        }
        self.params.insert(param.name.clone(), param);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&BaseParameter> {
        self.params.get(name)
    }

    pub fn params(&self) -> impl Iterator<Item = &BaseParameter> {
        self.params.values()
    }

    /// The identity instance of a declared parameter.
    pub fn instance(&self, name: &str) -> Result<DecoratedInstance> {
        let p = self
            .get(name)
            .ok_or_else(|| Error::Domain(format!("unknown parameter `{name}`")))?;
        Ok(DecoratedInstance::identity(Decoration::Base(p.clone())))
    }

    /// An instance of `name` whose current variables are `current`, matched
    /// positionally against the declared profile.
    pub fn instance_over(&self, name: &str, current: &[Variable]) -> Result<DecoratedInstance> {
        let p = self
            .get(name)
            .ok_or_else(|| Error::Domain(format!("unknown parameter `{name}`")))?;
        if current.len() != p.profile.len() {
            return Err(Error::Type(format!(
                "parameter `{name}` takes {} variables, got {}",
                p.profile.len(),
                current.len()
            )));
        }
        let attachment = Bijection::from_pairs(
            current.iter().cloned().zip(p.profile.iter().cloned()),
        )?;
        DecoratedInstance::new(Decoration::Base(p.clone()), attachment)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.params.values() {
            let profile = p
                .profile
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            writeln!(f, "{} : {{{profile}}}", p.name)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::var::varset;
    use itertools::Itertools;

    fn sample() -> Signature {
        let mut sig = Signature::new();
        sig.declare(
            BaseParameter::new("f", vec![Variable::raw("x"), Variable::raw("y")]).unwrap(),
        )
        .unwrap();
        sig
    }

    #[test]
    fn act_composes_into_the_attachment() {
        let sig = sample();
        let f = sig.instance("f").unwrap();
        let sigma = Bijection::from_pairs([
            (Variable::raw("u"), Variable::raw("x")),
            (Variable::raw("v"), Variable::raw("y")),
        ])
        .unwrap();
        let acted = f.act(&sigma).unwrap();
        assert_eq!(acted.current_vars(), varset(&["u", "v"]));
        assert_eq!(acted.attachment(), &sigma);
    }

    #[test]
    fn act_by_identity_is_identity() {
        let sig = sample();
        let f = sig.instance("f").unwrap();
        let id = Bijection::identity(&f.current_vars());
        assert_eq!(f.act(&id).unwrap(), f);
    }

    #[test]
    fn act_rejects_mismatched_codomain() {
        let sig = sample();
        let f = sig.instance("f").unwrap();
        let bad = Bijection::from_pairs([(Variable::raw("u"), Variable::raw("z"))]).unwrap();
        assert!(f.act(&bad).is_err());
    }

    /// All bijections between two equal-sized sets.
    fn all_bijections(from: &VarSet, to: &VarSet) -> Vec<Bijection> {
        let from: Vec<_> = from.iter().cloned().collect();
        to.iter()
            .cloned()
            .permutations(to.len())
            .map(|perm| Bijection::from_pairs(from.iter().cloned().zip(perm)).unwrap())
            .collect()
    }

    #[test]
    fn contravariant_functoriality_over_all_small_bijections() {
        let mut sig = Signature::new();
        sig.declare(
            BaseParameter::new(
                "f",
                vec![Variable::raw("x"), Variable::raw("y"), Variable::raw("z")],
            )
            .unwrap(),
        )
        .unwrap();
        let f = sig.instance("f").unwrap();
        let x = f.current_vars();
        let x1 = varset(&["a", "b", "c"]);
        let x2 = varset(&["p", "q", "r"]);
        for kappa in all_bijections(&x1, &x) {
            let fk = f.act(&kappa).unwrap();
            for tau in all_bijections(&x2, &x1) {
                let lhs = fk.act(&tau).unwrap();
                let rhs = f.act(&kappa.compose_after(&tau).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn signature_rejects_duplicate_names() {
        let mut sig = sample();
        let dup = BaseParameter::new("f", vec![Variable::raw("a")]).unwrap();
        assert!(sig.declare(dup).is_err());
    }
}
