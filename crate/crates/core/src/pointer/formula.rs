//! Quantifier-free partitioned formulas over unary predicates and functions.
//!
//! Text syntax:
//!
//! ```text
//! formula := disj
//! disj    := conj ("|" conj)*
//! conj    := lit ("&" lit)*
//! lit     := "!" lit | "(" formula ")" | atom
//! atom    := NAME "(" term ")" | term "=" term
//! term    := VAR | NAME "(" term ")"
//! VAR     := ("x" | "y" | "z") digits
//! ```
//!
//! Predicate names start with an uppercase letter, function names with a
//! lowercase one. Variables are numbered from 1 in text and from 0 inside.

use std::fmt;

use super::structure::PointerStructure;
use crate::error::{Error, Result};

/// Longest function word a term may carry.
pub const WORD_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub side: Side,
    /// 0-based
    pub index: usize,
}

impl Var {
    pub fn x(index: usize) -> Self {
        Var { side: Side::X, index }
    }

    pub fn y(index: usize) -> Self {
        Var { side: Side::Y, index }
    }

    pub fn z(index: usize) -> Self {
        Var { side: Side::Z, index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.side {
            Side::X => 'x',
            Side::Y => 'y',
            Side::Z => 'z',
        };
        write!(f, "{c}{}", self.index + 1)
    }
}

/// A variable with a word of functions applied innermost-first:
/// `f(g(x1))` has word `["g", "f"]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub var: Var,
    pub word: Vec<String>,
}

impl Term {
    pub fn var(var: Var) -> Self {
        Term { var, word: Vec::new() }
    }

    pub fn apply(mut self, function: &str) -> Self {
        self.word.push(function.to_string());
        self
    }

    /// Applies the word to `value`, the value of the variable.
    pub fn eval_word(m: &PointerStructure, word: &[String], mut value: usize) -> Result<usize> {
        for f in word {
            value = m.function(f)?[value];
        }
        Ok(value)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in self.word.iter().rev() {
            write!(f, "{g}(")?;
        }
        write!(f, "{}", self.var)?;
        for _ in &self.word {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Pred(String, Term),
    Eq(Term, Term),
}

impl Atom {
    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Pred(_, t) => vec![t],
            Atom::Eq(a, b) => vec![a, b],
        }
    }

    /// Equalities with their sides sorted, so `t = s` and `s = t` coincide.
    pub fn canonical(self) -> Self {
        match self {
            Atom::Eq(a, b) if b < a => Atom::Eq(b, a),
            other => other,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Pred(p, t) => write!(f, "{p}({t})"),
            Atom::Eq(a, b) => write!(f, "{a}={b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    And(Vec<Node>),
    Or(Vec<Node>),
    Not(Box<Node>),
    Atom(Atom),
}

impl Node {
    pub fn atom_count(&self) -> usize {
        match self {
            Node::And(ns) | Node::Or(ns) => ns.iter().map(Node::atom_count).sum(),
            Node::Not(n) => n.atom_count(),
            Node::Atom(_) => 1,
        }
    }

    fn visit_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Node::And(ns) | Node::Or(ns) => ns.iter().for_each(|n| n.visit_atoms(out)),
            Node::Not(n) => n.visit_atoms(out),
            Node::Atom(a) => out.push(a),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // 0 = disjunction, 1 = conjunction, 2 = literal
        let (sep, own) = match self {
            Node::Or(_) => (" | ", 0),
            Node::And(_) => (" & ", 1),
            Node::Not(n) => {
                write!(f, "!")?;
                return n.fmt_prec(f, 2);
            }
            Node::Atom(a) => return write!(f, "{a}"),
        };
        let (Node::Or(ns) | Node::And(ns)) = self else { unreachable!() };
        let wrap = own < prec || ns.is_empty();
        if wrap {
            write!(f, "(")?;
        }
        if ns.is_empty() {
            // empty conjunction / disjunction have no surface syntax
            write!(f, "{}", if own == 1 { "x1=x1" } else { "!x1=x1" })?;
        }
        for (i, n) in ns.iter().enumerate() {
            if i > 0 {
                write!(f, "{sep}")?;
            }
            n.fmt_prec(f, own + 1)?;
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A partitioned formula `φ(x̄; ȳ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFFormula {
    pub x_arity: usize,
    pub y_arity: usize,
    pub root: Node,
}

impl QFFormula {
    /// Arities are inferred from the highest variable index on each side.
    pub fn new(root: Node) -> Result<Self> {
        let mut atoms = Vec::new();
        root.visit_atoms(&mut atoms);
        let (mut xa, mut ya) = (0, 0);
        for t in atoms.iter().flat_map(|a| a.terms()) {
            match t.var.side {
                Side::X => xa = xa.max(t.var.index + 1),
                Side::Y => ya = ya.max(t.var.index + 1),
                Side::Z => return Err(Error::Unsupported("z variables are reserved for decompositions".into())),
            }
        }
        Ok(QFFormula { x_arity: xa, y_arity: ya, root })
    }

    /// Same formula with wider declared arities (unused variables are allowed).
    pub fn with_arities(mut self, x_arity: usize, y_arity: usize) -> Result<Self> {
        if x_arity < self.x_arity || y_arity < self.y_arity {
            return Err(Error::invalid("declared arity below the variables used"));
        }
        self.x_arity = x_arity;
        self.y_arity = y_arity;
        Ok(self)
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.root.visit_atoms(&mut out);
        out
    }

    pub fn atom_count(&self) -> usize {
        self.root.atom_count()
    }
}

impl fmt::Display for QFFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

impl std::str::FromStr for QFFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

pub fn parse_formula(text: &str) -> Result<QFFormula> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, at: 0, end: text.len() };
    let root = p.disj()?;
    if let Some((pos, tok)) = p.tokens.get(p.at) {
        return Err(syntax(*pos, format!("unexpected {tok}")));
    }
    QFFormula::new(root)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Var(Var),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "'{n}'"),
            Tok::Var(v) => write!(f, "'{v}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
        }
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if "()|&!=".contains(c) {
            chars.next();
            out.push((pos, Tok::Sym(c)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                word.push(d);
                chars.next();
            }
            if matches!(word.as_str(), "exists" | "forall") {
                return Err(syntax(pos, format!("quantifier '{word}' in a quantifier-free formula")));
            }
            out.push((pos, lex_word(pos, word)?));
        } else {
            return Err(syntax(pos, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

fn lex_word(pos: usize, word: String) -> Result<Tok> {
    let (head, digits) = word.split_at(1);
    if matches!(head, "x" | "y" | "z") && !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        let index: usize = digits.parse().map_err(|_| syntax(pos, "variable index too large"))?;
        if index == 0 {
            return Err(syntax(pos, "variables are numbered from 1"));
        }
        let side = match head {
            "x" => Side::X,
            "y" => Side::Y,
            _ => Side::Z,
        };
        return Ok(Tok::Var(Var { side, index: index - 1 }));
    }
    Ok(Tok::Name(word))
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(t) => syntax(self.pos(), format!("expected {wanted}, found {t}")),
            None => syntax(self.pos(), format!("expected {wanted}, found end of input")),
        }
    }

    fn disj(&mut self) -> Result<Node> {
        let mut parts = vec![self.conj()?];
        while self.eat('|') {
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Node::Or(parts) })
    }

    fn conj(&mut self) -> Result<Node> {
        let mut parts = vec![self.lit()?];
        while self.eat('&') {
            parts.push(self.lit()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Node::And(parts) })
    }

    fn lit(&mut self) -> Result<Node> {
        if self.eat('!') {
            return Ok(Node::Not(Box::new(self.lit()?)));
        }
        if self.eat('(') {
            let inner = self.disj()?;
            self.expect(')')?;
            return Ok(inner);
        }
        self.atom().map(Node::Atom)
    }

    fn atom(&mut self) -> Result<Atom> {
        if let Some(Tok::Name(name)) = self.peek() {
            if name.starts_with(|c: char| c.is_ascii_uppercase()) {
                let name = name.clone();
                self.at += 1;
                self.expect('(')?;
                let t = self.term()?;
                self.expect(')')?;
                return Ok(Atom::Pred(name, t));
            }
        }
        let lhs = self.term()?;
        self.expect('=')?;
        let rhs = self.term()?;
        Ok(Atom::Eq(lhs, rhs))
    }

    fn term(&mut self) -> Result<Term> {
        let start = self.pos();
        match self.peek().cloned() {
            Some(Tok::Var(v)) => {
                self.at += 1;
                Ok(Term::var(v))
            }
            Some(Tok::Name(name)) if name.starts_with(|c: char| c.is_ascii_lowercase()) => {
                self.at += 1;
                self.expect('(')?;
                let inner = self.term()?;
                self.expect(')')?;
                if inner.word.len() >= WORD_CAP {
                    return Err(syntax(start, format!("function word longer than {WORD_CAP}")));
                }
                Ok(inner.apply(&name))
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

/// Whether `m ⊨ φ(a; b)`.
pub fn eval_formula(m: &PointerStructure, phi: &QFFormula, a: &[usize], b: &[usize]) -> Result<bool> {
    if a.len() != phi.x_arity || b.len() != phi.y_arity {
        return Err(Error::invalid(format!("formula takes ({}, {}) arguments, got ({}, {})", phi.x_arity, phi.y_arity, a.len(), b.len())));
    }
    if let Some(&v) = a.iter().chain(b).find(|&&v| v >= m.n()) {
        return Err(Error::invalid(format!("element {v} outside domain of size {}", m.n())));
    }
    eval_node(m, &phi.root, &Assignment { x: a, y: b, z: &[] })
}

/// Values for the three variable sides.
#[derive(Clone, Copy)]
pub(crate) struct Assignment<'a> {
    pub x: &'a [usize],
    pub y: &'a [usize],
    pub z: &'a [usize],
}

impl Assignment<'_> {
    fn get(&self, v: Var) -> Result<usize> {
        let side = match v.side {
            Side::X => self.x,
            Side::Y => self.y,
            Side::Z => self.z,
        };
        side.get(v.index).copied().ok_or_else(|| Error::invalid(format!("variable {v} is unassigned")))
    }
}

pub(crate) fn eval_term(m: &PointerStructure, t: &Term, env: &Assignment) -> Result<usize> {
    Term::eval_word(m, &t.word, env.get(t.var)?)
}

pub(crate) fn eval_atom(m: &PointerStructure, atom: &Atom, env: &Assignment) -> Result<bool> {
    Ok(match atom {
        Atom::Pred(p, t) => {
            let set = m.predicate(p)?;
            set[eval_term(m, t, env)?]
        }
        Atom::Eq(s, t) => eval_term(m, s, env)? == eval_term(m, t, env)?,
    })
}

pub(crate) fn eval_node(m: &PointerStructure, node: &Node, env: &Assignment) -> Result<bool> {
    match node {
        Node::And(ns) => {
            for n in ns {
                if !eval_node(m, n, env)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Node::Or(ns) => {
            for n in ns {
                if eval_node(m, n, env)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Node::Not(n) => Ok(!eval_node(m, n, env)?),
        Node::Atom(a) => eval_atom(m, a, env),
    }
}
