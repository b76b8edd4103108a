//! Text formats and printers.
//!
//! All three object languages share one lexer and one preamble syntax:
//!
//! ```text
//! // comment
//! param f : {x, y, z}          // declare a parameter and its profile
//! let T1 = { f(x,y,z) } ;      // bind a tree class to a name
//! ```
//!
//! Trees:        `{ f(x,y,z), g(a,b), (p,q) ; (x~a)(y~p) }`
//! Commands:     `<s | t>`, `f{t1, ..., tn}`, `f{x: t1, y: t2}`, `mu x. c`
//! Combinators:  `f`, `id{x,y}`, `(s x*y t)`, `act[u->x, v->y](s)`
//!
//! Corollas of undeclared parameters infer a profile from their first
//! occurrence; let-bound names used as corolla heads or combinator leaves
//! stand for their tree classes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::comb::Combinator;
use crate::error::{Error, Result};
use crate::mu::{MuCommand, MuTerm};
use crate::signature::{BaseParameter, DecoratedInstance, Decoration, Signature};
use crate::tree::{Corolla, Edge, TreeClass, VernonGraph};
use crate::var::{Bijection, Variable};

/// A named object bound in a script.
#[derive(Debug, Clone)]
pub enum Binding {
    Tree(TreeClass),
    Mu(MuCommand),
    Comb(Combinator),
}

/// The evaluation context a script builds up: declared parameters plus
/// named bindings.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub signature: Signature,
    pub bindings: BTreeMap<String, Binding>,
}

impl Workspace {
    pub fn tree(&self, name: &str) -> Option<&TreeClass> {
        match self.bindings.get(name) {
            Some(Binding::Tree(c)) => Some(c),
            _ => None,
        }
    }

    pub fn bind_tree(&mut self, name: &str, class: TreeClass) -> Result<()> {
        if self.bindings.contains_key(name) || self.signature.get(name).is_some() {
            return Err(Error::Clash(format!("name `{name}` is already bound")));
        }
        self.bindings.insert(name.to_string(), Binding::Tree(class));
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Tilde,
    Lt,
    Gt,
    Pipe,
    Dot,
    Star,
    Arrow,
    Eq,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Tilde => "~",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Pipe => "|",
            Tok::Dot => ".",
            Tok::Star => "*",
            Tok::Arrow => "->",
            Tok::Eq => "=",
        };
        write!(f, "`{s}`")
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '/' => {
                chars.next();
                if chars.peek() == Some(&'/') {
                    for c in chars.by_ref() {
                        if c == '\n' {
                            line += 1;
                            break;
                        }
                    }
                } else {
                    return Err(Error::Parse { line, msg: "stray `/`".into() });
                }
            }
            '-' => {
                chars.next();
                if chars.peek() == Some(&'>') {
                    chars.next();
                    out.push((Tok::Arrow, line));
                } else {
                    return Err(Error::Parse { line, msg: "stray `-`; expected `->`".into() });
                }
            }
            '{' | '}' | '(' | ')' | '[' | ']' | ',' | ';' | ':' | '~' | '<' | '>' | '|' | '.'
            | '*' | '=' => {
                chars.next();
                out.push((
                    match c {
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        '[' => Tok::LBracket,
                        ']' => Tok::RBracket,
                        ',' => Tok::Comma,
                        ';' => Tok::Semi,
                        ':' => Tok::Colon,
                        '~' => Tok::Tilde,
                        '<' => Tok::Lt,
                        '>' => Tok::Gt,
                        '|' => Tok::Pipe,
                        '.' => Tok::Dot,
                        '*' => Tok::Star,
                        _ => Tok::Eq,
                    },
                    line,
                ));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' || c == '#' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(word), line));
            }
            other => {
                return Err(Error::Parse { line, msg: format!("unexpected character `{other}`") });
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ws: Workspace,
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser { toks: lex(text)?, pos: 0, ws: Workspace::default() })
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|(_, l)| *l)
            .unwrap_or(1)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line(), msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(t, _)| t)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self
            .toks
            .get(self.pos)
            .map(|(t, _)| t.clone())
            .ok_or_else(|| Error::Parse { line: self.line(), msg: "unexpected end of input".into() })?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        let got = self.next()?;
        if got == t {
            Ok(())
        } else {
            self.fail(format!("expected {t}, got {got}"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            other => self.fail(format!("expected a name, got {other}")),
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }

    /// `param f : {x, y}` and `let N = <tree> ;` lines.
    fn preamble(&mut self) -> Result<()> {
        loop {
            match self.peek() {
                Some(Tok::Ident(w)) if w == "param" => {
                    self.next()?;
                    let name = self.ident()?;
                    self.expect(Tok::Colon)?;
                    self.expect(Tok::LBrace)?;
                    let mut profile = Vec::new();
                    if self.peek() != Some(&Tok::RBrace) {
                        loop {
                            profile.push(Variable::raw(&self.ident()?));
                            if self.peek() == Some(&Tok::Comma) {
                                self.next()?;
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(Tok::RBrace)?;
                    self.ws.signature.declare(BaseParameter::new(&name, profile)?)?;
                }
                Some(Tok::Ident(w)) if w == "let" => {
                    self.next()?;
                    let name = self.ident()?;
                    self.expect(Tok::Eq)?;
                    let graph = self.tree_object()?;
                    self.expect(Tok::Semi)?;
                    let class = graph.canonicalize()?;
                    self.ws.bind_tree(&name, class)?;
                }
                _ => return Ok(()),
            }
        }
    }

    /// `{ corolla, ... ; (x~y)(z~w) }`
    fn tree_object(&mut self) -> Result<VernonGraph> {
        self.expect(Tok::LBrace)?;
        let mut corollas = vec![self.corolla()?];
        while self.peek() == Some(&Tok::Comma) {
            self.next()?;
            corollas.push(self.corolla()?);
        }
        let mut edges = BTreeSet::new();
        if self.peek() == Some(&Tok::Semi) {
            self.next()?;
            while self.peek() == Some(&Tok::LParen) {
                self.next()?;
                let a = Variable::raw(&self.ident()?);
                self.expect(Tok::Tilde)?;
                let b = Variable::raw(&self.ident()?);
                self.expect(Tok::RParen)?;
                edges.insert(Edge::new(a, b)?);
                if self.peek() == Some(&Tok::Comma) {
                    self.next()?;
                }
            }
        }
        self.expect(Tok::RBrace)?;
        VernonGraph::new(corollas, edges)
    }

    /// `f(x,y)` (ordinary, resolving or inferring the head) or `(x,y)`
    /// (special).
    fn corolla(&mut self) -> Result<Corolla> {
        if self.peek() == Some(&Tok::LParen) {
            self.next()?;
            let a = Variable::raw(&self.ident()?);
            self.expect(Tok::Comma)?;
            let b = Variable::raw(&self.ident()?);
            self.expect(Tok::RParen)?;
            return Corolla::special(a, b);
        }
        let head = self.ident()?;
        self.expect(Tok::LParen)?;
        let mut current = Vec::new();
        if self.peek() != Some(&Tok::RParen) {
            loop {
                current.push(Variable::raw(&self.ident()?));
                if self.peek() == Some(&Tok::Comma) {
                    self.next()?;
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen)?;
        self.instance(&head, &current).map(Corolla::Ordinary)
    }

    /// Resolves a corolla head: let-bound class, declared parameter, or a
    /// freshly inferred parameter whose profile is this first occurrence.
    fn instance(&mut self, head: &str, current: &[Variable]) -> Result<DecoratedInstance> {
        if let Some(class) = self.ws.tree(head) {
            let profile: Vec<Variable> = class.free_vars().into_iter().collect();
            if profile.len() != current.len() {
                return self.fail(format!(
                    "`{head}` has {} free variables, got {} arguments",
                    profile.len(),
                    current.len()
                ));
            }
            let attachment =
                Bijection::from_pairs(current.iter().cloned().zip(profile))?;
            return DecoratedInstance::new(Decoration::Tree(class.clone()), attachment);
        }
        if self.ws.signature.get(head).is_none() {
            self.ws
                .signature
                .declare(BaseParameter::new(head, current.to_vec())?)?;
        }
        self.ws.signature.instance_over(head, current)
    }

    /// `<s | t>` or `f{...}`.
    fn mu_command(&mut self) -> Result<MuCommand> {
        if self.peek() == Some(&Tok::Lt) {
            self.next()?;
            let s = self.mu_term()?;
            self.expect(Tok::Pipe)?;
            let t = self.mu_term()?;
            self.expect(Tok::Gt)?;
            return Ok(MuCommand::Pair(s, t));
        }
        let head = self.ident()?;
        let Some(param) = self.ws.signature.get(&head).cloned() else {
            return self.fail(format!(
                "parameter `{head}` must be declared with `param` before use in a command"
            ));
        };
        self.expect(Tok::LBrace)?;
        // Named form fixes the entry for each argument; positional form
        // follows the declared profile order.
        let named = matches!(self.peek(), Some(Tok::Ident(_)))
            && self.peek2() == Some(&Tok::Colon);
        let mut args: BTreeMap<Variable, MuTerm> = BTreeMap::new();
        if self.peek() != Some(&Tok::RBrace) {
            if named {
                loop {
                    let entry = Variable::raw(&self.ident()?);
                    self.expect(Tok::Colon)?;
                    if !param.profile.contains(&entry) {
                        return self.fail(format!(
                            "`{entry}` is not an entry of `{head}`"
                        ));
                    }
                    let t = self.mu_term()?;
                    if args.insert(entry.clone(), t).is_some() {
                        return self.fail(format!("entry `{entry}` given twice"));
                    }
                    if self.peek() == Some(&Tok::Comma) {
                        self.next()?;
                    } else {
                        break;
                    }
                }
            } else {
                let mut position = 0usize;
                loop {
                    let t = self.mu_term()?;
                    let Some(entry) = param.profile.get(position) else {
                        return self.fail(format!(
                            "`{head}` takes {} arguments",
                            param.profile.len()
                        ));
                    };
                    args.insert(entry.clone(), t);
                    position += 1;
                    if self.peek() == Some(&Tok::Comma) {
                        self.next()?;
                    } else {
                        break;
                    }
                }
            }
        }
        self.expect(Tok::RBrace)?;
        let inst = DecoratedInstance::identity(Decoration::Base(param));
        MuCommand::apply(inst, args)
    }

    /// `x` or `mu x. c`.
    fn mu_term(&mut self) -> Result<MuTerm> {
        match self.peek() {
            Some(Tok::Ident(w)) if w == "mu" => {
                self.next()?;
                let binder = Variable::raw(&self.ident()?);
                self.expect(Tok::Dot)?;
                let body = self.mu_command()?;
                Ok(MuTerm::mu(binder, body))
            }
            Some(Tok::Ident(_)) if self.peek2() == Some(&Tok::LBrace) => {
                self.fail("an application is a command; bind it with `mu x.` to use it as a term")
            }
            Some(Tok::Ident(_)) => Ok(MuTerm::Var(Variable::raw(&self.ident()?))),
            other => self.fail(format!(
                "expected a term, got {}",
                other.map(|t| t.to_string()).unwrap_or_else(|| "end of input".into())
            )),
        }
    }

    /// `id{x,y}`, `act[u->x](s)`, `(s x*y t)`, or a parameter / bound name.
    fn combinator(&mut self) -> Result<Combinator> {
        match self.peek() {
            Some(Tok::Ident(w)) if w == "id" => {
                self.next()?;
                self.expect(Tok::LBrace)?;
                let x = Variable::raw(&self.ident()?);
                self.expect(Tok::Comma)?;
                let y = Variable::raw(&self.ident()?);
                self.expect(Tok::RBrace)?;
                Ok(Combinator::Id(x, y))
            }
            Some(Tok::Ident(w)) if w == "act" => {
                self.next()?;
                self.expect(Tok::LBracket)?;
                let mut pairs = Vec::new();
                // `act[]` is the action by the empty renaming.
                while self.peek() != Some(&Tok::RBracket) {
                    let from = Variable::raw(&self.ident()?);
                    self.expect(Tok::Arrow)?;
                    let to = Variable::raw(&self.ident()?);
                    pairs.push((from, to));
                    if self.peek() == Some(&Tok::Comma) {
                        self.next()?;
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RBracket)?;
                self.expect(Tok::LParen)?;
                let body = self.combinator()?;
                self.expect(Tok::RParen)?;
                Ok(Combinator::act(body, Bijection::from_pairs(pairs)?))
            }
            Some(Tok::Ident(_)) => {
                let head = self.ident()?;
                if let Some(class) = self.ws.tree(&head) {
                    return Ok(Combinator::Param(DecoratedInstance::identity(
                        Decoration::Tree(class.clone()),
                    )));
                }
                match self.ws.signature.get(&head) {
                    Some(p) => Ok(Combinator::Param(DecoratedInstance::identity(
                        Decoration::Base(p.clone()),
                    ))),
                    None => self.fail(format!("unknown name `{head}`")),
                }
            }
            Some(Tok::LParen) => {
                self.next()?;
                let left = self.combinator()?;
                let x = Variable::raw(&self.ident()?);
                self.expect(Tok::Star)?;
                let y = Variable::raw(&self.ident()?);
                let right = self.combinator()?;
                self.expect(Tok::RParen)?;
                Ok(Combinator::comp(left, x, y, right))
            }
            other => self.fail(format!(
                "expected a combinator, got {}",
                other.map(|t| t.to_string()).unwrap_or_else(|| "end of input".into())
            )),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.fail("trailing input after the object")
        }
    }
}

/// Parses a tree script: preamble plus one tree object.
pub fn parse_tree_file(text: &str) -> Result<(Workspace, VernonGraph)> {
    let mut p = Parser::new(text)?;
    p.preamble()?;
    let graph = p.tree_object()?;
    p.finish()?;
    Ok((p.ws, graph))
}

/// Parses a command script: preamble plus one command.
pub fn parse_mu_file(text: &str) -> Result<(Workspace, MuCommand)> {
    let mut p = Parser::new(text)?;
    p.preamble()?;
    let cmd = p.mu_command()?;
    p.finish()?;
    crate::mu::cmd_type(&cmd)?;
    Ok((p.ws, cmd))
}

/// Parses a combinator script: preamble plus one combinator. Also serves as
/// the composition-script format, with let-bound trees as the leaves.
pub fn parse_comb_file(text: &str) -> Result<(Workspace, Combinator)> {
    let mut p = Parser::new(text)?;
    p.preamble()?;
    let comb = p.combinator()?;
    p.finish()?;
    crate::comb::type_of(&comb)?;
    Ok((p.ws, comb))
}

/// Parses a bare signature: one `name : {x, y}` line per parameter, with
/// the `param` keyword optional.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let mut p = Parser::new(text)?;
    let mut sig = Signature::new();
    while !p.at_end() {
        match p.peek() {
            Some(Tok::Ident(w)) if w == "param" => {
                p.next()?;
            }
            _ => {}
        }
        let name = p.ident()?;
        p.expect(Tok::Colon)?;
        p.expect(Tok::LBrace)?;
        let mut profile = Vec::new();
        if p.peek() != Some(&Tok::RBrace) {
            loop {
                profile.push(Variable::raw(&p.ident()?));
                if p.peek() == Some(&Tok::Comma) {
                    p.next()?;
                } else {
                    break;
                }
            }
        }
        p.expect(Tok::RBrace)?;
        sig.declare(BaseParameter::new(&name, profile)?)?;
    }
    Ok(sig)
}

// ---------------------------------------------------------------------------
// Printers
// ---------------------------------------------------------------------------

fn collect_base_params(d: &Decoration, out: &mut BTreeMap<String, BaseParameter>) {
    match d {
        Decoration::Base(p) => {
            out.entry(p.name.clone()).or_insert_with(|| p.clone());
        }
        Decoration::Tree(class) => {
            for c in class.representative().corollas() {
                if let Corolla::Ordinary(inst) = c {
                    collect_base_params(inst.decoration(), out);
                }
            }
        }
    }
}

fn param_lines(params: &BTreeMap<String, BaseParameter>) -> String {
    let mut out = String::new();
    for p in params.values() {
        let profile = p
            .profile
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(out, "param {} : {{{profile}}}", p.name);
    }
    out
}

fn render_tree_object(
    t: &VernonGraph,
    class_names: &BTreeMap<TreeClass, String>,
) -> String {
    let corollas = t
        .corollas()
        .iter()
        .map(|c| match c {
            Corolla::Special(a, b) => format!("({a},{b})"),
            Corolla::Ordinary(inst) => {
                let args = inst
                    .current_order()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let head = match inst.decoration() {
                    Decoration::Base(p) => p.name.clone(),
                    Decoration::Tree(class) => class_names
                        .get(class)
                        .cloned()
                        .unwrap_or_else(|| "<tree>".to_string()),
                };
                format!("{head}({args})")
            }
        })
        .collect::<Vec<_>>()
        .join(", ");
    if t.edges().is_empty() {
        format!("{{ {corollas} }}")
    } else {
        let edges = t
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = e.endpoints();
                format!("({a}~{b})")
            })
            .collect::<String>();
        format!("{{ {corollas} ; {edges} }}")
    }
}

/// Collects class decorations inner-first, so each let-binding only refers
/// to classes bound above it.
fn collect_classes(t: &VernonGraph, order: &mut Vec<TreeClass>, seen: &mut BTreeSet<TreeClass>) {
    for c in t.corollas() {
        if let Corolla::Ordinary(inst) = c {
            if let Decoration::Tree(class) = inst.decoration() {
                if seen.contains(class) {
                    continue;
                }
                collect_classes(class.representative(), order, seen);
                if seen.insert(class.clone()) {
                    order.push(class.clone());
                }
            }
        }
    }
}

/// Prints a tree script that reparses to the same graph: parameter
/// declarations, a let-binding per distinct class decoration (inner classes
/// first), and the object itself.
pub fn print_tree_file(t: &VernonGraph) -> String {
    let mut params = BTreeMap::new();
    for c in t.corollas() {
        if let Corolla::Ordinary(inst) = c {
            collect_base_params(inst.decoration(), &mut params);
        }
    }
    let mut order = Vec::new();
    collect_classes(t, &mut order, &mut BTreeSet::new());
    let mut names: BTreeMap<TreeClass, String> = BTreeMap::new();

    let mut out = param_lines(&params);
    for class in order {
        let rendered = render_tree_object(class.representative(), &names);
        let name = format!("T{}", names.len() + 1);
        let _ = writeln!(out, "let {name} = {rendered} ;");
        names.insert(class, name);
    }
    out.push_str(&render_tree_object(t, &names));
    out.push('\n');
    out
}

/// Prints a command script with named arguments in profile order.
pub fn print_mu_file(c: &MuCommand) -> String {
    let mut params = BTreeMap::new();
    collect_mu_params(c, &mut params);
    let mut out = param_lines(&params);
    out.push_str(&render_mu_command(c));
    out.push('\n');
    out
}

fn collect_mu_params(c: &MuCommand, out: &mut BTreeMap<String, BaseParameter>) {
    match c {
        MuCommand::Pair(s, t) => {
            collect_mu_term_params(s, out);
            collect_mu_term_params(t, out);
        }
        MuCommand::Apply(inst, args) => {
            collect_base_params(inst.decoration(), out);
            for t in args.values() {
                collect_mu_term_params(t, out);
            }
        }
    }
}

fn collect_mu_term_params(t: &MuTerm, out: &mut BTreeMap<String, BaseParameter>) {
    if let MuTerm::Mu(_, body) = t {
        collect_mu_params(body, out);
    }
}

fn render_mu_command(c: &MuCommand) -> String {
    match c {
        MuCommand::Pair(s, t) => format!("<{} | {}>", render_mu_term(s), render_mu_term(t)),
        MuCommand::Apply(inst, args) => {
            let body = inst
                .decoration()
                .profile_order()
                .iter()
                .map(|p| {
                    let cur = inst
                        .attachment()
                        .unapply(p)
                        .expect("attachment is onto the profile");
                    format!("{p}: {}", render_mu_term(&args[cur]))
                })
                .collect::<Vec<_>>()
                .join(", ");
            format!("{}{{{body}}}", inst.decoration().display_name())
        }
    }
}

fn render_mu_term(t: &MuTerm) -> String {
    match t {
        MuTerm::Var(x) => x.to_string(),
        MuTerm::Mu(x, body) => format!("mu {x}. {}", render_mu_command(body)),
    }
}

/// Prints a combinator script.
pub fn print_comb_file(c: &Combinator) -> String {
    let mut params = BTreeMap::new();
    collect_comb_params(c, &mut params);
    let mut out = param_lines(&params);
    out.push_str(&render_comb(c));
    out.push('\n');
    out
}

fn collect_comb_params(c: &Combinator, out: &mut BTreeMap<String, BaseParameter>) {
    match c {
        Combinator::Param(inst) => collect_base_params(inst.decoration(), out),
        Combinator::Id(_, _) => {}
        Combinator::Comp(l, _, _, r) => {
            collect_comb_params(l, out);
            collect_comb_params(r, out);
        }
        Combinator::Act(b, _) => collect_comb_params(b, out),
    }
}

fn render_comb(c: &Combinator) -> String {
    match c {
        Combinator::Param(inst) => {
            let name = inst.decoration().display_name();
            // A non-identity attachment prints as an explicit action so the
            // text denotes the same element.
            if inst.attachment() == &Bijection::identity(&inst.current_vars()) {
                name
            } else {
                format!("act[{}]({name})", render_renaming(inst.attachment()))
            }
        }
        Combinator::Id(x, y) => format!("id{{{x},{y}}}"),
        Combinator::Comp(l, x, y, r) => {
            format!("({} {x}*{y} {})", render_comb(l), render_comb(r))
        }
        Combinator::Act(b, sigma) => {
            format!("act[{}]({})", render_renaming(sigma), render_comb(b))
        }
    }
}

fn render_renaming(sigma: &Bijection) -> String {
    sigma
        .pairs()
        .map(|(d, c)| format!("{d}->{c}"))
        .collect::<Vec<_>>()
        .join(", ")
}
