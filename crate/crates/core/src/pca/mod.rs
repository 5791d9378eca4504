//! Combinatory logic over `S` and `K` with named constants, evaluated
//! leftmost-outermost under a step budget.
//!
//! A constant may carry a finite rewrite table: applied to an argument
//! whose normal form is a listed key, it rewrites to the paired term.
//! Constants without a matching entry are inert.

pub mod encode;
pub mod membership;
pub mod weihrauch;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default step budget per evaluation.
pub const DEFAULT_FUEL: u64 = 100_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    S,
    K,
    Const(Rc<str>),
    /// Only produced by bracket abstraction; inert under evaluation.
    Var(Rc<str>),
    App(Rc<Term>, Rc<Term>),
}

impl Term {
    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Rc::new(f), Rc::new(a))
    }

    /// Left-associated application `f a1 a2 ...`.
    pub fn apply<I: IntoIterator<Item = Term>>(f: Term, args: I) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(Rc::from(name))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(Rc::from(name))
    }

    pub fn mentions_constant(&self) -> bool {
        self.any_node(&|t| matches!(t, Term::Const(_)))
    }

    pub fn mentions_var(&self, name: &str) -> bool {
        self.any_node(&|t| matches!(t, Term::Var(v) if &**v == name))
    }

    fn any_node(&self, p: &dyn Fn(&Term) -> bool) -> bool {
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if p(t) {
                return true;
            }
            if let Term::App(f, a) = t {
                stack.push(f);
                stack.push(a);
            }
        }
        false
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            n += 1;
            if let Term::App(f, a) = t {
                stack.push(f);
                stack.push(a);
            }
        }
        n
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::S => f.write_str("S"),
            Term::K => f.write_str("K"),
            Term::Const(c) => f.write_str(c),
            Term::Var(v) => write!(f, "?{v}"),
            Term::App(g, a) => {
                write!(f, "{g} ")?;
                if matches!(**a, Term::App(..)) {
                    write!(f, "({a})")
                } else {
                    write!(f, "{a}")
                }
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl Serialize for Term {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Default)]
struct ConstDef {
    table: Vec<(Term, Term)>,
}

/// Declared constants, their rewrite tables, and abbreviations that the
/// parser expands in place.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    consts: BTreeMap<Rc<str>, ConstDef>,
    definitions: BTreeMap<String, Term>,
}

fn valid_ident(name: &str) -> bool {
    let mut cs = name.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && name != "S"
        && name != "K"
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// Signature with the abbreviation `I = S K K`.
    pub fn standard() -> Signature {
        let mut sig = Signature::new();
        sig.define("I", encode::identity()).expect("valid name");
        sig
    }

    /// Declares inert constants.
    pub fn with_atoms(names: &[&str]) -> Result<Signature> {
        let mut sig = Signature::standard();
        for n in names {
            sig.declare(n)?;
        }
        Ok(sig)
    }

    pub fn declare(&mut self, name: &str) -> Result<()> {
        if !valid_ident(name) {
            return Err(Error::Format(format!("`{name}` is not a valid constant name")));
        }
        if self.definitions.contains_key(name) {
            return Err(Error::DuplicateLabel(name.to_string()));
        }
        self.consts.entry(Rc::from(name)).or_default();
        Ok(())
    }

    /// Adds `name key ⇝ result` to `name`'s rewrite table, declaring it if
    /// needed. `key` must be in normal form; later entries for an equal
    /// key are ignored.
    pub fn add_rule(&mut self, name: &str, key: Term, result: Term) -> Result<()> {
        self.declare(name)?;
        let def = self.consts.get_mut(name).expect("declared above");
        if !def.table.iter().any(|(k, _)| *k == key) {
            def.table.push((key, result));
        }
        Ok(())
    }

    pub fn define(&mut self, name: &str, body: Term) -> Result<()> {
        if !valid_ident(name) {
            return Err(Error::Format(format!("`{name}` is not a valid definition name")));
        }
        if self.consts.contains_key(name) {
            return Err(Error::DuplicateLabel(name.to_string()));
        }
        self.definitions.insert(name.to_string(), body);
        Ok(())
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.consts.contains_key(name)
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.consts.keys().map(|k| &**k)
    }

    pub fn rules(&self, name: &str) -> &[(Term, Term)] {
        self.consts.get(name).map(|d| d.table.as_slice()).unwrap_or(&[])
    }

    /// Parses `term := atom+`, `atom := S | K | identifier | ( term )`.
    pub fn parse(&self, src: &str) -> Result<Term> {
        let tokens = tokenize(src)?;
        let mut p = Parser {
            sig: self,
            tokens: &tokens,
            pos: 0,
            src_len: src.len(),
        };
        let t = p.term()?;
        if let Some((off, tok)) = tokens.get(p.pos) {
            return Err(Error::Syntax {
                offset: *off,
                message: format!("unexpected `{tok}`"),
            });
        }
        Ok(t)
    }

    /// Normal form within `fuel` reduction steps.
    pub fn eval(&self, t: &Term, fuel: u64) -> EvalResult {
        let mut left = fuel;
        match self.normalize(Rc::new(t.clone()), &mut left) {
            Ok(v) => EvalResult::Value(Rc::unwrap_or_clone(v)),
            Err(OutOfFuel) => EvalResult::Diverged { fuel },
        }
    }

    /// Like [`Signature::eval`], also reporting the steps taken.
    pub fn eval_counting(&self, t: &Term, fuel: u64) -> (EvalResult, u64) {
        let mut left = fuel;
        match self.normalize(Rc::new(t.clone()), &mut left) {
            Ok(v) => (EvalResult::Value(Rc::unwrap_or_clone(v)), fuel - left),
            Err(OutOfFuel) => (EvalResult::Diverged { fuel }, fuel),
        }
    }

    fn lookup(&self, name: &str, arg: &Term) -> Option<&Term> {
        self.consts
            .get(name)?
            .table
            .iter()
            .find(|(k, _)| k == arg)
            .map(|(_, r)| r)
    }

    fn has_rules(&self, name: &str) -> bool {
        self.consts.get(name).is_some_and(|d| !d.table.is_empty())
    }

    fn normalize(&self, t: Rc<Term>, fuel: &mut u64) -> std::result::Result<Rc<Term>, OutOfFuel> {
        let mut head = t;
        // last element is the first argument
        let mut args: Vec<Rc<Term>> = Vec::new();
        loop {
            while let Term::App(f, a) = &*head {
                args.push(a.clone());
                head = f.clone();
            }
            match &*head {
                Term::K if args.len() >= 2 => {
                    tick(fuel)?;
                    let x = args.pop().expect("two arguments");
                    args.pop();
                    head = x;
                }
                Term::S if args.len() >= 3 => {
                    tick(fuel)?;
                    let x = args.pop().expect("three arguments");
                    let y = args.pop().expect("three arguments");
                    let z = args.pop().expect("three arguments");
                    args.push(Rc::new(Term::App(y, z.clone())));
                    args.push(z);
                    head = x;
                }
                Term::Const(c) if !args.is_empty() && self.has_rules(c) => {
                    let a = self.normalize(args.pop().expect("one argument"), fuel)?;
                    match self.lookup(c, &a) {
                        Some(r) => {
                            tick(fuel)?;
                            head = Rc::new(r.clone());
                        }
                        None => {
                            let stuck = Rc::new(Term::App(head.clone(), a));
                            return self.finish(stuck, args, fuel);
                        }
                    }
                }
                _ => return self.finish(head, args, fuel),
            }
        }
    }

    fn finish(&self, head: Rc<Term>, mut args: Vec<Rc<Term>>, fuel: &mut u64) -> std::result::Result<Rc<Term>, OutOfFuel> {
        let mut t = head;
        while let Some(a) = args.pop() {
            let a = self.normalize(a, fuel)?;
            t = Rc::new(Term::App(t, a));
        }
        Ok(t)
    }
}

struct OutOfFuel;

fn tick(fuel: &mut u64) -> std::result::Result<(), OutOfFuel> {
    if *fuel == 0 {
        return Err(OutOfFuel);
    }
    *fuel -= 1;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalResult {
    Value(Term),
    Diverged { fuel: u64 },
}

impl EvalResult {
    pub fn value(&self) -> Option<&Term> {
        match self {
            EvalResult::Value(t) => Some(t),
            EvalResult::Diverged { .. } => None,
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '(' || c == ')' {
            out.push((i, c.to_string()));
            chars.next();
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    s.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((i, s));
        } else {
            return Err(Error::Syntax {
                offset: i,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    sig: &'a Signature,
    tokens: &'a [(usize, String)],
    pos: usize,
    src_len: usize,
}

impl Parser<'_> {
    fn term(&mut self) -> Result<Term> {
        let mut t = match self.atom()? {
            Some(a) => a,
            None => {
                let offset = self.tokens.get(self.pos).map_or(self.src_len, |(o, _)| *o);
                return Err(Error::Syntax {
                    offset,
                    message: "expected a term".into(),
                });
            }
        };
        while let Some(a) = self.atom()? {
            t = Term::app(t, a);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Option<Term>> {
        let Some((off, tok)) = self.tokens.get(self.pos) else {
            return Ok(None);
        };
        let t = match tok.as_str() {
            ")" => return Ok(None),
            "(" => {
                self.pos += 1;
                let inner = self.term()?;
                match self.tokens.get(self.pos) {
                    Some((_, c)) if c == ")" => {}
                    other => {
                        return Err(Error::Syntax {
                            offset: other.map_or(self.src_len, |(o, _)| *o),
                            message: format!("unclosed `(` at offset {off}"),
                        })
                    }
                }
                inner
            }
            "S" => Term::S,
            "K" => Term::K,
            name => {
                if let Some(body) = self.sig.definitions.get(name) {
                    body.clone()
                } else if self.sig.consts.contains_key(name) {
                    Term::constant(name)
                } else {
                    return Err(Error::UnknownConstant(name.to_string()));
                }
            }
        };
        self.pos += 1;
        Ok(Some(t))
    }
}

/// Distinct terms in first-occurrence order.
pub(crate) fn dedup(terms: Vec<Term>) -> Vec<Term> {
    let mut seen = HashSet::new();
    terms.into_iter().filter(|t| seen.insert(t.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::with_atoms(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn parsing() {
        let s = sig();
        assert_eq!(s.parse("K").unwrap(), Term::K);
        assert_eq!(s.parse("S K K").unwrap(), Term::apply(Term::S, [Term::K, Term::K]));
        assert_eq!(
            s.parse("S (K S) K").unwrap(),
            Term::apply(Term::S, [Term::app(Term::K, Term::S), Term::K])
        );
        assert_eq!(s.parse("((x))").unwrap(), Term::constant("x"));
        assert_eq!(s.parse("I").unwrap(), s.parse("S K K").unwrap());
        assert!(matches!(s.parse("S w"), Err(Error::UnknownConstant(w)) if w == "w"));
        assert!(matches!(s.parse(""), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(s.parse("(S K"), Err(Error::Syntax { .. })));
        assert!(matches!(s.parse("S K)"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(s.parse("S + K"), Err(Error::Syntax { offset: 2, .. })));
    }

    #[test]
    fn display_round_trips() {
        let s = sig();
        for src in ["S (K S) K", "x (y z) x", "S (S (K x)) (K (K y))"] {
            let t = s.parse(src).unwrap();
            assert_eq!(t.to_string(), src);
            assert_eq!(s.parse(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn combinator_axioms() {
        let s = sig();
        let x = Term::constant("x");
        assert_eq!(s.eval(&s.parse("K x y").unwrap(), 10).value(), Some(&x));
        assert_eq!(s.eval(&s.parse("S K K x").unwrap(), 10).value(), Some(&x));
        assert_eq!(s.eval(&s.parse("S K K x").unwrap(), 2).value(), Some(&x));
        assert!(s.eval(&s.parse("S K K x").unwrap(), 1).value().is_none());
        assert_eq!(s.eval(&s.parse("S x y z").unwrap(), 5).value(), Some(&s.parse("x z (y z)").unwrap()));
    }

    #[test]
    fn arguments_are_normalized() {
        let s = sig();
        assert_eq!(s.eval(&s.parse("x (K y z)").unwrap(), 5).value(), Some(&s.parse("x y").unwrap()));
        assert_eq!(s.eval(&s.parse("K (K x y)").unwrap(), 5).value(), Some(&s.parse("K x").unwrap()));
    }

    #[test]
    fn omega_diverges() {
        let s = sig();
        let omega = s.parse("S I I (S I I)").unwrap();
        for fuel in [0, 1, 10, 1000, 100_000] {
            assert_eq!(s.eval(&omega, fuel), EvalResult::Diverged { fuel });
        }
        let omega2 = s.parse("S (S K K) (S K K) (S (S K K) (S K K))").unwrap();
        assert!(s.eval(&omega2, 50_000).value().is_none());
    }

    #[test]
    fn rewrite_tables() {
        let mut s = sig();
        s.add_rule("c", Term::constant("x"), Term::constant("y")).unwrap();
        s.add_rule("c", Term::constant("y"), s.parse("K x").unwrap()).unwrap();
        assert_eq!(s.eval(&s.parse("c x").unwrap(), 5).value(), Some(&Term::constant("y")));
        assert_eq!(s.eval(&s.parse("c (K x y)").unwrap(), 5).value(), Some(&Term::constant("y")));
        assert_eq!(s.eval(&s.parse("c y z").unwrap(), 5).value(), Some(&Term::constant("x")));
        // no entry: stuck, remaining arguments still normalized
        assert_eq!(s.eval(&s.parse("c z (K x y)").unwrap(), 5).value(), Some(&s.parse("c z x").unwrap()));
        assert_eq!(s.rules("c").len(), 2);
    }

    #[test]
    fn more_fuel_never_changes_a_value() {
        let s = sig();
        let t = s.parse("S (K x) (S K K) (K y z)").unwrap();
        let (v, steps) = s.eval_counting(&t, 1000);
        for fuel in steps..steps + 20 {
            assert_eq!(s.eval(&t, fuel), v);
        }
        assert!(s.eval(&t, steps - 1).value().is_none());
    }

    #[test]
    fn identifiers_are_checked() {
        let mut s = Signature::new();
        assert!(s.declare("S").is_err());
        assert!(s.declare("1x").is_err());
        s.declare("x'").unwrap();
        assert!(s.define("x'", Term::K).is_err());
    }
}
