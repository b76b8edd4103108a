//! The two-sorted binder calculus of commands and terms.
//!
//! Commands are either a cut pair of two terms or an application of a
//! decorated instance to one argument term per entry; terms are variables or
//! single-binder abstractions over commands. Typing is linear: every free
//! variable occurs exactly once.
//!
//! The reduction rules are the pair swap and the beta-like cut
//! `<mu x.c | s> -> c[s/x]`; the deterministic normalizer drives them to the
//! application-headed normal-form grammar, eliminating leftover bound pairs
//! `mu u.<u|v>` (equal to `v` by a cut expansion) along the way. On normal
//! forms, the head-rotation relation re-roots a command at an adjacent
//! application; its reflexive-transitive closure is finite modulo renaming.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::signature::{DecoratedInstance, Decoration};
use crate::var::{format_set, fresh, Bijection, VarSet, Variable};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum MuTerm {
    Var(Variable),
    Mu(Variable, Box<MuCommand>),
}

impl MuTerm {
    pub fn mu(binder: Variable, body: MuCommand) -> MuTerm {
        MuTerm::Mu(binder, Box::new(body))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum MuCommand {
    Pair(MuTerm, MuTerm),
    /// Application of an instance to one argument per current entry;
    /// the map is keyed by the instance's current variables.
    Apply(DecoratedInstance, BTreeMap<Variable, MuTerm>),
}

impl MuCommand {
    pub fn apply(inst: DecoratedInstance, args: BTreeMap<Variable, MuTerm>) -> Result<MuCommand> {
        if args.keys().cloned().collect::<VarSet>() != inst.current_vars() {
            return Err(Error::Type(format!(
                "argument keys differ from the entries of `{inst}`"
            )));
        }
        Ok(MuCommand::Apply(inst, args))
    }
}

/// Either sort of expression, for operations that act on both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuExpr {
    Command(MuCommand),
    Term(MuTerm),
}

/// A type judgement: a command's entry set, or a term's entry set with one
/// further selected entry left implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuType {
    Command(VarSet),
    TermWithSelected(VarSet),
}

pub fn mu_typeof(e: &MuExpr) -> Result<MuType> {
    match e {
        MuExpr::Command(c) => Ok(MuType::Command(cmd_type(c)?)),
        MuExpr::Term(t) => Ok(MuType::TermWithSelected(term_type(t)?)),
    }
}

/// Simultaneous renaming for either sort.
pub fn rename_expr(e: &MuExpr, sigma: &Bijection) -> Result<MuExpr> {
    match e {
        MuExpr::Command(c) => Ok(MuExpr::Command(rename_cmd(c, sigma)?)),
        MuExpr::Term(t) => Ok(MuExpr::Term(rename_term(t, sigma)?)),
    }
}

/// The type of a term: its free variables other than the selected entry.
pub fn term_type(t: &MuTerm) -> Result<VarSet> {
    match t {
        MuTerm::Var(x) => Ok([x.clone()].into_iter().collect()),
        MuTerm::Mu(x, body) => {
            let mut ty = cmd_type(body)?;
            if !ty.remove(x) {
                return Err(Error::Type(format!(
                    "binder `{x}` does not occur in the body's type"
                )));
            }
            Ok(ty)
        }
    }
}

/// The type of a command: the union of its argument types, which must be
/// pairwise disjoint (linearity).
pub fn cmd_type(c: &MuCommand) -> Result<VarSet> {
    match c {
        MuCommand::Pair(s, t) => {
            let a = term_type(s)?;
            let b = term_type(t)?;
            if let Some(shared) = a.intersection(&b).next() {
                return Err(Error::Type(format!(
                    "cut sides share the variable `{shared}`"
                )));
            }
            Ok(a.union(&b).cloned().collect())
        }
        MuCommand::Apply(inst, args) => {
            if args.keys().cloned().collect::<VarSet>() != inst.current_vars() {
                return Err(Error::Type(format!(
                    "argument keys differ from the entries of `{inst}`"
                )));
            }
            let mut out = VarSet::new();
            for t in args.values() {
                for v in term_type(t)? {
                    if !out.insert(v.clone()) {
                        return Err(Error::Type(format!(
                            "argument types overlap on `{v}`"
                        )));
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Every variable occurring anywhere, binders included.
pub fn cmd_all_vars(c: &MuCommand) -> VarSet {
    let mut out = VarSet::new();
    collect_cmd(c, &mut out);
    out
}

fn collect_cmd(c: &MuCommand, out: &mut VarSet) {
    match c {
        MuCommand::Pair(s, t) => {
            collect_term(s, out);
            collect_term(t, out);
        }
        MuCommand::Apply(inst, args) => {
            out.extend(inst.current_vars());
            for t in args.values() {
                collect_term(t, out);
            }
        }
    }
}

fn collect_term(t: &MuTerm, out: &mut VarSet) {
    match t {
        MuTerm::Var(x) => {
            out.insert(x.clone());
        }
        MuTerm::Mu(x, body) => {
            out.insert(x.clone());
            collect_cmd(body, out);
        }
    }
}

/// Replaces the unique free occurrence of `x` in `c` by `s`,
/// alpha-renaming binders that would capture a free variable of `s`.
pub fn substitute(c: &MuCommand, x: &Variable, s: &MuTerm) -> Result<MuCommand> {
    let ty = cmd_type(c)?;
    if !ty.contains(x) {
        return Err(Error::Domain(format!("`{x}` does not occur free in the command")));
    }
    let s_ty = term_type(s)?;
    let residual: VarSet = ty.iter().filter(|v| *v != x).cloned().collect();
    if let Some(shared) = s_ty.intersection(&residual).next() {
        return Err(Error::Clash(format!(
            "substituted term reuses the variable `{shared}`"
        )));
    }
    let (result, replaced) = subst_cmd(c, x, s, &s_ty)?;
    debug_assert!(replaced, "linearity guarantees one occurrence");
    Ok(result)
}

fn subst_cmd(
    c: &MuCommand,
    x: &Variable,
    s: &MuTerm,
    s_free: &VarSet,
) -> Result<(MuCommand, bool)> {
    match c {
        MuCommand::Pair(l, r) => {
            let (l2, hit_l) = subst_term(l, x, s, s_free)?;
            if hit_l {
                return Ok((MuCommand::Pair(l2, r.clone()), true));
            }
            let (r2, hit_r) = subst_term(r, x, s, s_free)?;
            Ok((MuCommand::Pair(l2, r2), hit_r))
        }
        MuCommand::Apply(inst, args) => {
            let mut out = BTreeMap::new();
            let mut hit = false;
            for (k, t) in args {
                if hit {
                    out.insert(k.clone(), t.clone());
                    continue;
                }
                let (t2, h) = subst_term(t, x, s, s_free)?;
                hit = h;
                out.insert(k.clone(), t2);
            }
            Ok((MuCommand::Apply(inst.clone(), out), hit))
        }
    }
}

fn subst_term(
    t: &MuTerm,
    x: &Variable,
    s: &MuTerm,
    s_free: &VarSet,
) -> Result<(MuTerm, bool)> {
    match t {
        MuTerm::Var(v) => {
            if v == x {
                Ok((s.clone(), true))
            } else {
                Ok((t.clone(), false))
            }
        }
        MuTerm::Mu(binder, body) => {
            if binder == x {
                // The free x cannot occur under a binder of the same name.
                return Ok((t.clone(), false));
            }
            if s_free.contains(binder) {
                let mut avoid = cmd_all_vars(body);
                avoid.extend(s_free.iter().cloned());
                avoid.insert(x.clone());
                let new_binder = fresh(binder.name(), &avoid);
                let renamed = rename_binder(body, binder, &new_binder)?;
                let (body2, hit) = subst_cmd(&renamed, x, s, s_free)?;
                Ok((MuTerm::mu(new_binder, body2), hit))
            } else {
                let (body2, hit) = subst_cmd(body, x, s, s_free)?;
                Ok((MuTerm::mu(binder.clone(), body2), hit))
            }
        }
    }
}

/// Renames the free occurrence of `old` in `body` to `new` (binder renaming).
fn rename_binder(body: &MuCommand, old: &Variable, new: &Variable) -> Result<MuCommand> {
    let ty = cmd_type(body)?;
    let mut pairs: Vec<(Variable, Variable)> =
        ty.iter().filter(|v| *v != old).map(|v| (v.clone(), v.clone())).collect();
    pairs.push((new.clone(), old.clone()));
    rename_cmd(body, &Bijection::from_pairs(pairs)?)
}

/// Simultaneous renaming `c^sigma` for `sigma : X' -> X` with `X` the type
/// of the command.
pub fn rename_cmd(c: &MuCommand, sigma: &Bijection) -> Result<MuCommand> {
    let ty = cmd_type(c)?;
    if sigma.codomain() != ty {
        return Err(Error::Domain(format!(
            "renaming codomain {{{}}} differs from the type {{{}}}",
            format_set(&sigma.codomain()),
            format_set(&ty)
        )));
    }
    rename_cmd_unchecked(c, sigma)
}

fn rename_cmd_unchecked(c: &MuCommand, sigma: &Bijection) -> Result<MuCommand> {
    match c {
        MuCommand::Pair(s, t) => {
            let s_sigma = sigma.restrict(&term_type(s)?)?;
            let t_sigma = sigma.restrict(&term_type(t)?)?;
            Ok(MuCommand::Pair(
                rename_term_unchecked(s, &s_sigma)?,
                rename_term_unchecked(t, &t_sigma)?,
            ))
        }
        MuCommand::Apply(inst, args) => {
            let mut out = BTreeMap::new();
            for (k, t) in args {
                let local = sigma.restrict(&term_type(t)?)?;
                out.insert(k.clone(), rename_term_unchecked(t, &local)?);
            }
            Ok(MuCommand::Apply(inst.clone(), out))
        }
    }
}

/// Simultaneous renaming `t^sigma` for a term; satisfies
/// `(mu a.c)^sigma = mu a.c^(sigma extended with a fixed)`.
pub fn rename_term(t: &MuTerm, sigma: &Bijection) -> Result<MuTerm> {
    let ty = term_type(t)?;
    if sigma.codomain() != ty {
        return Err(Error::Domain(format!(
            "renaming codomain {{{}}} differs from the type {{{}}}",
            format_set(&sigma.codomain()),
            format_set(&ty)
        )));
    }
    rename_term_unchecked(t, sigma)
}

fn rename_term_unchecked(t: &MuTerm, sigma: &Bijection) -> Result<MuTerm> {
    match t {
        MuTerm::Var(x) => {
            let new = sigma
                .unapply(x)
                .ok_or_else(|| Error::Domain(format!("`{x}` missing from the renaming")))?;
            Ok(MuTerm::Var(new.clone()))
        }
        MuTerm::Mu(binder, body) => {
            if sigma.domain().contains(binder) || sigma.codomain().contains(binder) {
                let mut avoid = cmd_all_vars(body);
                avoid.extend(sigma.domain());
                avoid.extend(sigma.codomain());
                let new_binder = fresh(binder.name(), &avoid);
                let renamed = rename_binder(body, binder, &new_binder)?;
                let extended = sigma.extend_fixpoint(&new_binder)?;
                Ok(MuTerm::mu(new_binder, rename_cmd_unchecked(&renamed, &extended)?))
            } else {
                let extended = sigma.extend_fixpoint(binder)?;
                Ok(MuTerm::mu(binder.clone(), rename_cmd_unchecked(body, &extended)?))
            }
        }
    }
}

/// All one-step reducts of a command under the congruent closure of the pair
/// swap and the cut rule.
pub fn mu_step(c: &MuCommand) -> Result<Vec<MuCommand>> {
    let mut out = Vec::new();
    match c {
        MuCommand::Pair(s, t) => {
            out.push(MuCommand::Pair(t.clone(), s.clone()));
            if let MuTerm::Mu(x, body) = s {
                out.push(substitute(body, x, t)?);
            }
            for s2 in mu_step_term(s)? {
                out.push(MuCommand::Pair(s2, t.clone()));
            }
            for t2 in mu_step_term(t)? {
                out.push(MuCommand::Pair(s.clone(), t2));
            }
        }
        MuCommand::Apply(inst, args) => {
            for (k, t) in args {
                for t2 in mu_step_term(t)? {
                    let mut new_args = args.clone();
                    new_args.insert(k.clone(), t2);
                    out.push(MuCommand::Apply(inst.clone(), new_args));
                }
            }
        }
    }
    Ok(out)
}

fn mu_step_term(t: &MuTerm) -> Result<Vec<MuTerm>> {
    match t {
        MuTerm::Var(_) => Ok(Vec::new()),
        MuTerm::Mu(x, body) => Ok(mu_step(body)?
            .into_iter()
            .map(|c| MuTerm::mu(x.clone(), c))
            .collect()),
    }
}

pub fn binder_count(c: &MuCommand) -> usize {
    match c {
        MuCommand::Pair(s, t) => binder_count_term(s) + binder_count_term(t),
        MuCommand::Apply(_, args) => args.values().map(binder_count_term).sum(),
    }
}

fn binder_count_term(t: &MuTerm) -> usize {
    match t {
        MuTerm::Var(_) => 0,
        MuTerm::Mu(_, body) => 1 + binder_count(body),
    }
}

/// Outcome of the deterministic normalizer: an application-headed command in
/// the normal-form grammar, or a bare top-level pair of two variables, which
/// denotes a unit and has no application form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuNormalForm {
    pub command: MuCommand,
    pub unit_command: bool,
}

/// Reduces to normal form: cuts fire with the left orientation (one swap
/// when only the right side is an abstraction), and a binder over a bare
/// pair collapses to the pair's other variable, which is a derivable
/// equality needed to reach the application-headed grammar.
pub fn mu_normal_form(c: &MuCommand) -> Result<MuNormalForm> {
    cmd_type(c)?;
    let command = nf_cmd(c)?;
    let unit_command = matches!(
        command,
        MuCommand::Pair(MuTerm::Var(_), MuTerm::Var(_))
    );
    debug_assert!(unit_command || is_normal_form(&command));
    Ok(MuNormalForm { command, unit_command })
}

fn nf_cmd(c: &MuCommand) -> Result<MuCommand> {
    match c {
        MuCommand::Apply(inst, args) => {
            let mut out = BTreeMap::new();
            for (k, t) in args {
                out.insert(k.clone(), nf_term(t)?);
            }
            Ok(MuCommand::Apply(inst.clone(), out))
        }
        MuCommand::Pair(s, t) => {
            let s = nf_term(s)?;
            let t = nf_term(t)?;
            let pair_binders = binder_count_term(&s) + binder_count_term(&t);
            match (s, t) {
                (MuTerm::Mu(x, body), t) => {
                    let contracted = substitute(&body, &x, &t)?;
                    debug_assert_eq!(
                        binder_count(&contracted) + 1,
                        pair_binders,
                        "a cut consumes exactly one binder"
                    );
                    nf_cmd(&contracted)
                }
                (MuTerm::Var(a), MuTerm::Mu(y, body)) => {
                    let contracted = substitute(&body, &y, &MuTerm::Var(a))?;
                    nf_cmd(&contracted)
                }
                (MuTerm::Var(a), MuTerm::Var(b)) => {
                    Ok(MuCommand::Pair(MuTerm::Var(a), MuTerm::Var(b)))
                }
            }
        }
    }
}

fn nf_term(t: &MuTerm) -> Result<MuTerm> {
    match t {
        MuTerm::Var(_) => Ok(t.clone()),
        MuTerm::Mu(x, body) => {
            let body = nf_cmd(body)?;
            if let MuCommand::Pair(MuTerm::Var(a), MuTerm::Var(b)) = &body {
                // mu x.<a|b> with x one of a, b collapses to the other
                // variable; sound because <mu x.c | v> reduces both to
                // c[v/x] and, after a swap, to the variable route.
                if a == x {
                    return Ok(MuTerm::Var(b.clone()));
                }
                if b == x {
                    return Ok(MuTerm::Var(a.clone()));
                }
                return Err(Error::Type(format!(
                    "binder `{x}` does not occur in the bare pair <{a}|{b}>"
                )));
            }
            Ok(MuTerm::mu(x.clone(), body))
        }
    }
}

/// Membership in the normal-form grammar: an application whose arguments are
/// variables or abstractions over grammar commands.
pub fn is_normal_form(c: &MuCommand) -> bool {
    match c {
        MuCommand::Pair(_, _) => false,
        MuCommand::Apply(_, args) => args.values().all(|t| match t {
            MuTerm::Var(_) => true,
            MuTerm::Mu(_, body) => is_normal_form(body),
        }),
    }
}

/// All head rotations of a normal-form application: for each abstraction
/// argument `mu y.c`, re-roots as `c[mu w.<head with that entry open>/y]`.
pub fn prime_step(c: &MuCommand) -> Result<Vec<MuCommand>> {
    let MuCommand::Apply(inst, args) = c else {
        return Err(Error::Domain("head rotation needs an application command".into()));
    };
    if !is_normal_form(c) {
        return Err(Error::Domain("head rotation is defined on normal forms".into()));
    }
    let mut out = Vec::new();
    for (x, t) in args {
        let MuTerm::Mu(y, inner) = t else { continue };
        let mut avoid = cmd_all_vars(c);
        let w = fresh("w", &avoid);
        avoid.insert(w.clone());

        // Re-index the head instance so the rotated entry is named w.
        let cur = inst.current_vars();
        let tau = Bijection::from_pairs(cur.iter().map(|v| {
            if v == x {
                (w.clone(), v.clone())
            } else {
                (v.clone(), v.clone())
            }
        }))?;
        let new_inst = inst.act(&tau)?;
        let mut new_args: BTreeMap<Variable, MuTerm> = BTreeMap::new();
        for (k, arg) in args {
            if k == x {
                new_args.insert(w.clone(), MuTerm::Var(w.clone()));
            } else {
                new_args.insert(k.clone(), arg.clone());
            }
        }
        let reopened = MuTerm::mu(w.clone(), MuCommand::Apply(new_inst, new_args));
        let rotated = substitute(inner, y, &reopened)?;
        debug_assert!(is_normal_form(&rotated));
        out.push(rotated);
    }
    Ok(out)
}

/// The reflexive-transitive closure of head rotation modulo renaming,
/// as one representative per alpha-class.
pub fn prime_closure(c: &MuCommand) -> Result<Vec<MuCommand>> {
    let mut seen: BTreeSet<AlphaKey> = BTreeSet::new();
    let mut out = Vec::new();
    let mut stack = vec![c.clone()];
    while let Some(cmd) = stack.pop() {
        if !seen.insert(alpha_key(&cmd)?) {
            continue;
        }
        stack.extend(prime_step(&cmd)?);
        out.push(cmd);
    }
    Ok(out)
}

/// A canonical form invariant under binder renaming and instance
/// re-indexing: binders are numbered in a leftmost-outermost walk and
/// application arguments are listed in the decoration's profile order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum AlphaKey {
    Pair(Box<AlphaKey>, Box<AlphaKey>),
    Apply(Decoration, Vec<AlphaKey>),
    Bound(u64),
    Free(Variable),
    Abs(Box<AlphaKey>),
}

pub fn alpha_key(c: &MuCommand) -> Result<AlphaKey> {
    cmd_type(c)?;
    let mut counter = 0u64;
    let mut scope = BTreeMap::new();
    Ok(key_cmd(c, &mut counter, &mut scope))
}

fn key_cmd(c: &MuCommand, counter: &mut u64, scope: &mut BTreeMap<Variable, u64>) -> AlphaKey {
    match c {
        MuCommand::Pair(s, t) => AlphaKey::Pair(
            Box::new(key_term(s, counter, scope)),
            Box::new(key_term(t, counter, scope)),
        ),
        MuCommand::Apply(inst, args) => {
            let mut keyed = Vec::new();
            for profile_entry in inst.decoration().profile_order() {
                let current = inst
                    .attachment()
                    .unapply(&profile_entry)
                    .expect("attachment is onto the profile")
                    .clone();
                keyed.push(key_term(&args[&current], counter, scope));
            }
            AlphaKey::Apply(inst.decoration().clone(), keyed)
        }
    }
}

fn key_term(t: &MuTerm, counter: &mut u64, scope: &mut BTreeMap<Variable, u64>) -> AlphaKey {
    match t {
        MuTerm::Var(x) => match scope.get(x) {
            Some(n) => AlphaKey::Bound(*n),
            None => AlphaKey::Free(x.clone()),
        },
        MuTerm::Mu(x, body) => {
            let n = *counter;
            *counter += 1;
            let shadowed = scope.insert(x.clone(), n);
            let inner = key_cmd(body, counter, scope);
            match shadowed {
                Some(old) => {
                    scope.insert(x.clone(), old);
                }
                None => {
                    scope.remove(x);
                }
            }
            AlphaKey::Abs(Box::new(inner))
        }
    }
}

/// Equality modulo binder renaming and instance re-indexing.
pub fn mu_alpha_eq(c1: &MuCommand, c2: &MuCommand) -> Result<bool> {
    Ok(alpha_key(c1)? == alpha_key(c2)?)
}

impl fmt::Display for MuTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuTerm::Var(x) => write!(f, "{x}"),
            MuTerm::Mu(x, body) => write!(f, "mu {x}. {body}"),
        }
    }
}

impl fmt::Display for MuCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuCommand::Pair(s, t) => write!(f, "<{s} | {t}>"),
            MuCommand::Apply(inst, args) => {
                let body = inst
                    .current_order()
                    .iter()
                    .map(|entry| {
                        let profile_name = inst
                            .attachment()
                            .apply(entry)
                            .expect("entry is in the attachment");
                        format!("{profile_name}: {}", args[entry])
                    })
                    .collect::<Vec<_>>()
                    .join(", ");
                write!(f, "{}{{{body}}}", inst.decoration().display_name())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
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
            ("k", vec!["u", "v"]),
        ] {
            sig.declare(
                BaseParameter::new(name, profile.iter().map(|p| v(p)).collect()).unwrap(),
            )
            .unwrap();
        }
        sig
    }

    fn apply_vars(sig: &Signature, name: &str, args: &[(&str, MuTerm)]) -> MuCommand {
        let inst = sig.instance(name).unwrap();
        let map = args.iter().map(|(k, t)| (v(k), t.clone())).collect();
        MuCommand::apply(inst, map).unwrap()
    }

    fn var(n: &str) -> MuTerm {
        MuTerm::Var(v(n))
    }

    /// g{a, b, c, d} with entry `a` replaced by the given term.
    fn g_cmd(sig: &Signature, a: MuTerm) -> MuCommand {
        apply_vars(sig, "g", &[("a", a), ("b", var("b")), ("c", var("c")), ("d", var("d"))])
    }

    /// h{p, q} with entry `p` replaced by the given term.
    fn h_cmd(sig: &Signature, p: MuTerm) -> MuCommand {
        apply_vars(sig, "h", &[("p", p), ("q", var("q"))])
    }

    /// The running command: f{mu a.g{a,b,c,d}, y, z, w}.
    fn f_body(sig: &Signature) -> MuCommand {
        apply_vars(
            sig,
            "f",
            &[
                ("x", MuTerm::mu(v("a"), g_cmd(sig, var("a")))),
                ("y", var("y")),
                ("z", var("z")),
                ("w", var("w")),
            ],
        )
    }

    /// The cut (*): <mu y. f{mu a.g{a,b,c,d}, y, z, w} | mu p. h{p, q}>.
    fn star(sig: &Signature) -> MuCommand {
        MuCommand::Pair(
            MuTerm::mu(v("y"), f_body(sig)),
            MuTerm::mu(v("p"), h_cmd(sig, var("p"))),
        )
    }

    /// Its normal form: f{mu a.g{a,b,c,d}, mu p.h{p,q}, z, w}.
    fn star_nf(sig: &Signature) -> MuCommand {
        apply_vars(
            sig,
            "f",
            &[
                ("x", MuTerm::mu(v("a"), g_cmd(sig, var("a")))),
                ("y", MuTerm::mu(v("p"), h_cmd(sig, var("p")))),
                ("z", var("z")),
                ("w", var("w")),
            ],
        )
    }

    #[test]
    fn typing_basics() {
        let sig = sig();
        assert_eq!(term_type(&var("x")).unwrap(), varset(&["x"]));
        let cmd = apply_vars(&sig, "h", &[("p", var("u1")), ("q", var("u2"))]);
        assert_eq!(cmd_type(&cmd).unwrap(), varset(&["u1", "u2"]));

        // mu x.c with x not in the type of c is ill-typed.
        let bad = MuTerm::mu(v("nope"), cmd.clone());
        assert!(term_type(&bad).is_err());

        // Overlapping argument types are ill-typed.
        let shared = apply_vars(&sig, "h", &[("p", var("s")), ("q", var("s"))]);
        assert!(cmd_type(&shared).is_err());
    }

    #[test]
    fn star_command_types_and_reduces() {
        let sig = sig();
        let c = star(&sig);
        assert_eq!(cmd_type(&c).unwrap(), varset(&["b", "c", "d", "z", "w", "q"]));

        // One-step reducts contain the substitution target.
        let steps = mu_step(&c).unwrap();
        let expected = substitute(
            &f_body(&sig),
            &v("y"),
            &MuTerm::mu(v("p"), h_cmd(&sig, var("p"))),
        )
        .unwrap();
        assert!(steps.iter().any(|s| s == &expected));
        // The swap is also a one-step reduct.
        assert!(steps.iter().any(|s| matches!(s, MuCommand::Pair(_, _))));
    }

    #[test]
    fn substitution_into_an_application_argument() {
        let sig = sig();
        let c = apply_vars(&sig, "h", &[("p", var("x0")), ("q", var("q"))]);
        let s = MuTerm::mu(v("u"), apply_vars(&sig, "k", &[("u", var("u")), ("v", var("v"))]));
        let result = substitute(&c, &v("x0"), &s).unwrap();
        assert_eq!(result, apply_vars(&sig, "h", &[("p", s), ("q", var("q"))]));
    }

    #[test]
    fn substitution_of_a_variable_is_a_renaming() {
        let sig = sig();
        let c = apply_vars(&sig, "h", &[("p", var("x0")), ("q", var("q"))]);
        let subst = substitute(&c, &v("x0"), &var("u")).unwrap();
        let sigma = Bijection::from_pairs([(v("u"), v("x0")), (v("q"), v("q"))]).unwrap();
        assert_eq!(subst, rename_cmd(&c, &sigma).unwrap());
    }

    #[test]
    fn substitution_avoids_capture() {
        let sig = sig();
        // c = h{mu u.k{u, hole}, q}; substituting a term with free `u`
        // must rename the binder.
        let c = apply_vars(
            &sig,
            "h",
            &[
                (
                    "p",
                    MuTerm::mu(
                        v("u"),
                        apply_vars(&sig, "k", &[("u", var("u")), ("v", var("hole"))]),
                    ),
                ),
                ("q", var("q")),
            ],
        );
        let result = substitute(&c, &v("hole"), &var("u")).unwrap();
        let ty = cmd_type(&result).unwrap();
        assert!(ty.contains(&v("u")), "the substituted free u stays free");
    }

    #[test]
    fn renaming_commutes_with_binders() {
        let sig = sig();
        // (mu a.c)^sigma = mu a.c^(sigma_a), checked structurally.
        let c = g_cmd(&sig, var("a")); // type {a,b,c,d}
        let t = MuTerm::mu(v("a"), c.clone()); // type {b,c,d}
        let sigma = Bijection::from_pairs([
            (v("b1"), v("b")),
            (v("c1"), v("c")),
            (v("d1"), v("d")),
        ])
        .unwrap();
        let lhs = rename_term(&t, &sigma).unwrap();
        let rhs = MuTerm::mu(
            v("a"),
            rename_cmd(&c, &sigma.extend_fixpoint(&v("a")).unwrap()).unwrap(),
        );
        assert_eq!(lhs, rhs);

        // Identity renaming is the identity.
        let id = Bijection::identity(&term_type(&t).unwrap());
        assert_eq!(rename_term(&t, &id).unwrap(), t);
    }

    #[test]
    fn renaming_a_variable_term() {
        let sigma = Bijection::from_pairs([(v("y"), v("x"))]).unwrap();
        assert_eq!(rename_term(&var("x"), &sigma).unwrap(), var("y"));
    }

    #[test]
    fn star_normalizes_to_the_listed_normal_form() {
        let sig = sig();
        let nf = mu_normal_form(&star(&sig)).unwrap();
        assert!(!nf.unit_command);
        assert!(is_normal_form(&nf.command));
        assert!(mu_alpha_eq(&nf.command, &star_nf(&sig)).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent_and_unit_pairs_are_flagged() {
        let sig = sig();
        let nf = mu_normal_form(&star_nf(&sig)).unwrap();
        assert_eq!(nf.command, star_nf(&sig));

        let unit = MuCommand::Pair(var("x"), var("y"));
        let nf = mu_normal_form(&unit).unwrap();
        assert!(nf.unit_command);
        assert_eq!(nf.command, unit);
    }

    #[test]
    fn nested_bound_pair_collapses_to_a_variable() {
        let sig = sig();
        // h{mu u.<u|y0>, q} normalizes to h{y0, q}.
        let c = apply_vars(
            &sig,
            "h",
            &[
                ("p", MuTerm::mu(v("u"), MuCommand::Pair(var("u"), var("y0")))),
                ("q", var("q")),
            ],
        );
        let nf = mu_normal_form(&c).unwrap();
        assert_eq!(nf.command, apply_vars(&sig, "h", &[("p", var("y0")), ("q", var("q"))]));
    }

    #[test]
    fn binder_count_decreases_by_exactly_one_per_cut() {
        let sig = sig();
        let c = star(&sig);
        let n = binder_count(&c);
        for reduct in mu_step(&c).unwrap() {
            let m = binder_count(&reduct);
            // Swap keeps the count; a cut consumes exactly one binder.
            assert!(m == n || m + 1 == n);
        }
    }

    #[test]
    fn alpha_equality_modulo_binder_renaming() {
        let sig = sig();
        let c1 = star_nf(&sig);
        // Rename the binder a to a9 everywhere.
        let c2 = apply_vars(
            &sig,
            "f",
            &[
                ("x", MuTerm::mu(v("a9"), g_cmd(&sig, var("a9")))),
                ("y", MuTerm::mu(v("p"), h_cmd(&sig, var("p")))),
                ("z", var("z")),
                ("w", var("w")),
            ],
        );
        assert!(mu_alpha_eq(&c1, &c2).unwrap());

        // But renaming a free variable changes the class.
        let c3 = apply_vars(
            &sig,
            "f",
            &[
                ("x", MuTerm::mu(v("a"), g_cmd(&sig, var("a")))),
                ("y", MuTerm::mu(v("p"), h_cmd(&sig, var("p")))),
                ("z", var("z9")),
                ("w", var("w")),
            ],
        );
        assert!(!mu_alpha_eq(&c1, &c3).unwrap());
    }

    #[test]
    fn alpha_equality_modulo_instance_reindexing() {
        let sig = sig();
        let c1 = apply_vars(&sig, "h", &[("p", var("m")), ("q", var("n"))]);
        // The same command with the instance re-indexed through tau.
        let inst = sig.instance("h").unwrap();
        let tau = Bijection::from_pairs([(v("p1"), v("p")), (v("q1"), v("q"))]).unwrap();
        let c2 = MuCommand::apply(
            inst.act(&tau).unwrap(),
            [(v("p1"), var("m")), (v("q1"), var("n"))].into_iter().collect(),
        )
        .unwrap();
        assert!(mu_alpha_eq(&c1, &c2).unwrap());
    }

    #[test]
    fn rotation_on_the_two_corolla_picture() {
        let sig = sig();
        // f{mu y0.k{y0, s}, b0, c0, d0} rotates to k{mu x0.f{x0, b0, c0, d0}, s}.
        let c = apply_vars(
            &sig,
            "f",
            &[
                (
                    "x",
                    MuTerm::mu(
                        v("y0"),
                        apply_vars(&sig, "k", &[("u", var("y0")), ("v", var("s"))]),
                    ),
                ),
                ("y", var("b0")),
                ("z", var("c0")),
                ("w", var("d0")),
            ],
        );
        let rotations = prime_step(&c).unwrap();
        assert_eq!(rotations.len(), 1);

        let expected_inner = |hook: &str| {
            apply_vars(
                &sig,
                "f",
                &[
                    ("x", var(hook)),
                    ("y", var("b0")),
                    ("z", var("c0")),
                    ("w", var("d0")),
                ],
            )
        };
        // Compare modulo alpha with hook name w#0 irrelevant.
        let expected = apply_vars(
            &sig,
            "k",
            &[("u", MuTerm::mu(v("hook"), expected_inner("hook"))), ("v", var("s"))],
        );
        assert!(mu_alpha_eq(&rotations[0], &expected).unwrap());

        // Rotating back recovers the original, up to alpha.
        let back = prime_step(&rotations[0]).unwrap();
        assert!(back.iter().any(|b| mu_alpha_eq(b, &c).unwrap()));
    }

    #[test]
    fn all_variable_application_has_no_rotation() {
        let sig = sig();
        let c = apply_vars(&sig, "h", &[("p", var("m")), ("q", var("n"))]);
        assert!(prime_step(&c).unwrap().is_empty());
        assert_eq!(prime_closure(&c).unwrap().len(), 1);
    }

    #[test]
    fn two_corolla_closure_has_exactly_two_heads() {
        let sig = sig();
        let c = apply_vars(
            &sig,
            "k",
            &[
                ("u", MuTerm::mu(v("p"), h_cmd(&sig, var("p")))),
                ("v", var("n")),
            ],
        );
        let closure = prime_closure(&c).unwrap();
        assert_eq!(closure.len(), 2);
    }

    #[test]
    fn subject_reduction_on_the_star_command() {
        let sig = sig();
        let c = star(&sig);
        let ty = cmd_type(&c).unwrap();
        for reduct in mu_step(&c).unwrap() {
            assert_eq!(cmd_type(&reduct).unwrap(), ty);
        }
    }
}
