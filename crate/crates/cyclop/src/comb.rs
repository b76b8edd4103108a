//! Combinator terms: parameters, two-variable units, bijection actions and
//! partial compositions, with set-valued types and homomorphic evaluation
//! into any model.

use std::fmt;

use crate::error::{Error, Result};
use crate::operad::OperadModel;
use crate::signature::DecoratedInstance;
use crate::var::{format_set, Bijection, VarSet, Variable};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Combinator {
    Param(DecoratedInstance),
    Id(Variable, Variable),
    Comp(Box<Combinator>, Variable, Variable, Box<Combinator>),
    Act(Box<Combinator>, Bijection),
}

impl Combinator {
    pub fn comp(left: Combinator, x: Variable, y: Variable, right: Combinator) -> Combinator {
        Combinator::Comp(Box::new(left), x, y, Box::new(right))
    }

    pub fn act(body: Combinator, sigma: Bijection) -> Combinator {
        Combinator::Act(Box::new(body), sigma)
    }
}

/// The type set of a combinator, or a typing error.
pub fn type_of(c: &Combinator) -> Result<VarSet> {
    match c {
        Combinator::Param(inst) => Ok(inst.current_vars()),
        Combinator::Id(x, y) => {
            if x == y {
                return Err(Error::Type(format!("unit entries coincide: `{x}`")));
            }
            Ok([x.clone(), y.clone()].into_iter().collect())
        }
        Combinator::Comp(left, x, y, right) => {
            let xs = type_of(left)?;
            let ys = type_of(right)?;
            if !xs.contains(x) {
                return Err(Error::Type(format!(
                    "`{x}` is not in the left operand's type {{{}}}",
                    format_set(&xs)
                )));
            }
            if !ys.contains(y) {
                return Err(Error::Type(format!(
                    "`{y}` is not in the right operand's type {{{}}}",
                    format_set(&ys)
                )));
            }
            let mut out = VarSet::new();
            for v in xs.iter().filter(|v| *v != x).chain(ys.iter().filter(|v| *v != y)) {
                if !out.insert(v.clone()) {
                    return Err(Error::Type(format!("residual types overlap on `{v}`")));
                }
            }
            Ok(out)
        }
        Combinator::Act(body, sigma) => {
            let xs = type_of(body)?;
            if sigma.codomain() != xs {
                return Err(Error::Type(format!(
                    "action codomain {{{}}} differs from the body's type {{{}}}",
                    format_set(&sigma.codomain()),
                    format_set(&xs)
                )));
            }
            Ok(sigma.domain())
        }
    }
}

/// Homomorphic evaluation into a model.
pub fn interpret<M: OperadModel>(c: &Combinator, model: &M) -> Result<M::Elem> {
    type_of(c)?;
    eval(c, model)
}

fn eval<M: OperadModel>(c: &Combinator, model: &M) -> Result<M::Elem> {
    match c {
        Combinator::Param(inst) => model.embed(inst),
        Combinator::Id(x, y) => model.unit(x, y),
        Combinator::Comp(left, x, y, right) => {
            let a = eval(left, model)?;
            let b = eval(right, model)?;
            model.compose(&a, x, y, &b)
        }
        Combinator::Act(body, sigma) => {
            let e = eval(body, model)?;
            model.act(&e, sigma)
        }
    }
}

impl fmt::Display for Combinator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Combinator::Param(inst) => write!(f, "{inst}"),
            Combinator::Id(x, y) => write!(f, "id{{{x},{y}}}"),
            Combinator::Comp(l, x, y, r) => write!(f, "({l} {x}*{y} {r})"),
            Combinator::Act(body, sigma) => write!(f, "act[{sigma}]({body})"),
        }
    }
}
