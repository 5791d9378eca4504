//! Standard encodings: identity, pairing, numerals, tagged tree nodes,
//! and bracket abstraction.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::Term;

/// `I = S K K`.
pub fn identity() -> Term {
    Term::apply(Term::S, [Term::K, Term::K])
}

/// `B = S (K S) K`, with `B f g x = f (g x)`.
pub fn compose() -> Term {
    Term::apply(Term::S, [Term::app(Term::K, Term::S), Term::K])
}

/// `pair x y = S (S I (K x)) (K y)`, so that `pair x y z = z x y`.
pub fn pair(x: Term, y: Term) -> Term {
    Term::apply(
        Term::S,
        [
            Term::apply(Term::S, [identity(), Term::app(Term::K, x)]),
            Term::app(Term::K, y),
        ],
    )
}

/// `fst = S I (K K)`.
pub fn fst() -> Term {
    Term::apply(Term::S, [identity(), Term::app(Term::K, Term::K)])
}

/// `snd = S I (K (K I))`.
pub fn snd() -> Term {
    Term::apply(Term::S, [identity(), Term::app(Term::K, Term::app(Term::K, identity()))])
}

/// `0̄ = I` and `n+1 = pair K n̄`.
pub fn numeral(n: usize) -> Term {
    (0..n).fold(identity(), |acc, _| pair(Term::K, acc))
}

/// `⟨0̄, a⟩`.
pub fn tag_leaf(a: Term) -> Term {
    pair(numeral(0), a)
}

/// `⟨1̄, ⟨b, c⟩⟩`.
pub fn tag_node(b: Term, c: Term) -> Term {
    pair(numeral(1), pair(b, c))
}

/// Syntactic inverse of [`pair`] on normal forms.
pub fn unpair(t: &Term) -> Option<(&Term, &Term)> {
    let Term::App(f, ky) = t else { return None };
    let Term::App(s, inner) = &**f else { return None };
    if **s != Term::S {
        return None;
    }
    let Term::App(k, y) = &**ky else { return None };
    if **k != Term::K {
        return None;
    }
    let Term::App(si, kx) = &**inner else { return None };
    let Term::App(s2, i) = &**si else { return None };
    if **s2 != Term::S || **i != identity() {
        return None;
    }
    let Term::App(k2, x) = &**kx else { return None };
    if **k2 != Term::K {
        return None;
    }
    Some((x, y))
}

/// A decoded tree node in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tagged<'a> {
    Leaf(&'a Term),
    Node(&'a Term, &'a Term),
}

/// Reads `⟨0̄, a⟩` or `⟨1̄, ⟨b, c⟩⟩`.
pub fn untag(t: &Term) -> Option<Tagged<'_>> {
    let (tag, payload) = unpair(t)?;
    if *tag == numeral(0) {
        Some(Tagged::Leaf(payload))
    } else if *tag == numeral(1) {
        let (b, c) = unpair(payload)?;
        Some(Tagged::Node(b, c))
    } else {
        None
    }
}

/// `[x] t`: a term without `x` such that `([x] t) u` reduces to `t[u/x]`.
pub fn abstract_var(x: &str, t: &Term) -> Term {
    if !t.mentions_var(x) {
        return Term::app(Term::K, t.clone());
    }
    match t {
        Term::Var(_) => identity(),
        Term::App(f, a) => Term::apply(Term::S, [abstract_var(x, f), abstract_var(x, a)]),
        _ => unreachable!("only variables and applications mention variables"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncodeKind {
    Pair,
    Fst,
    Snd,
    Numeral(usize),
    TagLeaf,
    TagNode,
}

impl EncodeKind {
    pub fn name(self) -> &'static str {
        match self {
            EncodeKind::Pair => "pair",
            EncodeKind::Fst => "fst",
            EncodeKind::Snd => "snd",
            EncodeKind::Numeral(_) => "numeral",
            EncodeKind::TagLeaf => "tag_leaf",
            EncodeKind::TagNode => "tag_node",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            EncodeKind::Pair | EncodeKind::TagNode => 2,
            EncodeKind::TagLeaf => 1,
            EncodeKind::Fst | EncodeKind::Snd | EncodeKind::Numeral(_) => 0,
        }
    }
}

impl fmt::Display for EncodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncodeKind::Numeral(n) => write!(f, "numeral {n}"),
            k => f.write_str(k.name()),
        }
    }
}

impl FromStr for EncodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<EncodeKind> {
        Ok(match s {
            "pair" => EncodeKind::Pair,
            "fst" => EncodeKind::Fst,
            "snd" => EncodeKind::Snd,
            "tag_leaf" => EncodeKind::TagLeaf,
            "tag_node" => EncodeKind::TagNode,
            _ => match s.strip_prefix("numeral").map(str::trim) {
                Some(n) => EncodeKind::Numeral(
                    n.parse()
                        .map_err(|_| Error::Format(format!("bad numeral `{s}`")))?,
                ),
                None => return Err(Error::Format(format!("unknown encoding `{s}`"))),
            },
        })
    }
}

pub fn encode(kind: EncodeKind, args: &[Term]) -> Result<Term> {
    if args.len() != kind.arity() {
        return Err(Error::Arity {
            op: kind.name(),
            expected: match kind.arity() {
                0 => "0",
                1 => "1",
                _ => "2",
            },
            got: args.len(),
        });
    }
    Ok(match kind {
        EncodeKind::Pair => pair(args[0].clone(), args[1].clone()),
        EncodeKind::Fst => fst(),
        EncodeKind::Snd => snd(),
        EncodeKind::Numeral(n) => numeral(n),
        EncodeKind::TagLeaf => tag_leaf(args[0].clone()),
        EncodeKind::TagNode => tag_node(args[0].clone(), args[1].clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pca::Signature;

    fn sig() -> Signature {
        Signature::with_atoms(&["x", "y", "z", "a"]).unwrap()
    }

    #[test]
    fn pairing_laws() {
        let s = sig();
        let atoms: Vec<Term> = ["x", "y", "z"].iter().map(|n| Term::constant(n)).collect();
        let mut corpus = atoms.clone();
        corpus.push(identity());
        corpus.push(pair(atoms[0].clone(), atoms[1].clone()));
        for p in &corpus {
            for q in &corpus {
                let pq = pair(p.clone(), q.clone());
                assert_eq!(s.eval(&Term::app(fst(), pq.clone()), 100).value(), Some(p));
                assert_eq!(s.eval(&Term::app(snd(), pq.clone()), 100).value(), Some(q));
                // pairs of normal forms are normal
                assert_eq!(s.eval(&pq, 100).value(), Some(&pq));
                assert_eq!(unpair(&pq), Some((p, q)));
            }
        }
    }

    #[test]
    fn tags_decode() {
        let a = Term::constant("a");
        assert_eq!(untag(&tag_leaf(a.clone())), Some(Tagged::Leaf(&a)));
        let (b, c) = (Term::constant("x"), Term::constant("y"));
        assert_eq!(untag(&tag_node(b.clone(), c.clone())), Some(Tagged::Node(&b, &c)));
        assert_eq!(untag(&a), None);
        assert_eq!(untag(&pair(numeral(2), a.clone())), None);
        assert_eq!(untag(&pair(numeral(1), a)), None);
        assert_ne!(numeral(0), numeral(1));
    }

    #[test]
    fn abstraction_substitutes() {
        let s = sig();
        let body = Term::apply(Term::var("v"), [Term::constant("z"), Term::var("v")]);
        let f = abstract_var("v", &body);
        assert!(!f.mentions_var("v"));
        let out = s.eval(&Term::app(f, Term::constant("x")), 100);
        assert_eq!(out.value(), Some(&s.parse("x z x").unwrap()));
    }

    #[test]
    fn composition_combinator() {
        let s = sig();
        let t = Term::apply(compose(), [Term::constant("x"), Term::constant("y"), Term::constant("z")]);
        assert_eq!(s.eval(&t, 100).value(), Some(&s.parse("x (y z)").unwrap()));
    }

    #[test]
    fn arity_is_enforced() {
        assert!(matches!(encode(EncodeKind::Pair, &[Term::K]), Err(Error::Arity { got: 1, .. })));
        assert!(encode(EncodeKind::Fst, &[]).is_ok());
        assert_eq!(encode(EncodeKind::Numeral(1), &[]).unwrap(), pair(Term::K, identity()));
        assert_eq!("numeral 3".parse::<EncodeKind>().unwrap(), EncodeKind::Numeral(3));
        assert!("nope".parse::<EncodeKind>().is_err());
    }
}
