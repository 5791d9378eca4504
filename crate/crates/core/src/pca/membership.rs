//! Bounded membership checking for realizers of oracle-computation trees,
//! certificate re-verification, and a builder for member trees with their
//! single-node mutations.

use rand::Rng;
use serde::Serialize;

use crate::error::Result;

use super::encode::{numeral, pair, tag_leaf, untag, Tagged};
use super::weihrauch::OracleQueries;
use super::{EvalResult, Signature, Term};

/// A decoded well-founded tree witnessing membership.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Certificate {
    Leaf {
        value: Term,
    },
    Node {
        query: Term,
        /// Index of the chosen alternative among those for `query`.
        alternative: usize,
        label: String,
        answers: Vec<(Term, Certificate)>,
    },
}

impl Certificate {
    /// Leaves count as one level.
    pub fn depth(&self) -> usize {
        match self {
            Certificate::Leaf { .. } => 1,
            Certificate::Node { answers, .. } => 1 + answers.iter().map(|(_, c)| c.depth()).max().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum MembershipVerdict {
    Member { certificate: Certificate },
    NotMember { path: Vec<String>, reason: String },
    Unknown { path: Vec<String>, reason: String },
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipVerdict::Member { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            MembershipVerdict::Member { certificate } => Some(certificate),
            _ => None,
        }
    }
}

struct Checker<'a, Q: ?Sized> {
    sig: &'a Signature,
    oracle: &'a Q,
    s: &'a [Term],
    fuel: u64,
}

impl<Q: OracleQueries + ?Sized> Checker<'_, Q> {
    fn check(&self, t: &Term, depth: usize, path: &mut Vec<String>) -> MembershipVerdict {
        let v = match self.sig.eval(t, self.fuel) {
            EvalResult::Value(v) => v,
            EvalResult::Diverged { fuel } => {
                return MembershipVerdict::Unknown {
                    path: path.clone(),
                    reason: format!("undefined within {fuel} steps"),
                }
            }
        };
        if depth == 0 {
            return MembershipVerdict::Unknown {
                path: path.clone(),
                reason: "depth bound reached".into(),
            };
        }
        match untag(&v) {
            None => MembershipVerdict::NotMember {
                path: path.clone(),
                reason: format!("`{v}` is neither a leaf nor a node"),
            },
            Some(Tagged::Leaf(a)) if self.s.contains(a) => MembershipVerdict::Member {
                certificate: Certificate::Leaf { value: a.clone() },
            },
            Some(Tagged::Leaf(a)) => MembershipVerdict::NotMember {
                path: path.clone(),
                reason: format!("leaf payload `{a}` is not in S"),
            },
            Some(Tagged::Node(b, c)) => self.node(b, c, depth, path),
        }
    }

    fn node(&self, b: &Term, c: &Term, depth: usize, path: &mut Vec<String>) -> MembershipVerdict {
        let alts = self.oracle.alternatives(b);
        if alts.is_empty() {
            return MembershipVerdict::NotMember {
                path: path.clone(),
                reason: format!("query `{b}` has no alternatives"),
            };
        }
        let mut first_failure = None;
        let mut first_unknown = None;
        for (i, (label, answers)) in alts.iter().enumerate() {
            path.push(label.clone());
            let mut children = Vec::with_capacity(answers.len());
            let mut outcome = None;
            for d in answers.iter() {
                path.push(format!("d={d}"));
                let r = self.check(&Term::app(c.clone(), d.clone()), depth - 1, path);
                path.pop();
                match r {
                    MembershipVerdict::Member { certificate } => children.push((d.clone(), certificate)),
                    // one definite failure kills the alternative
                    bad @ MembershipVerdict::NotMember { .. } => {
                        outcome = Some(bad);
                        break;
                    }
                    unk @ MembershipVerdict::Unknown { .. } => {
                        outcome.get_or_insert(unk);
                    }
                }
            }
            path.pop();
            match outcome {
                None => {
                    return MembershipVerdict::Member {
                        certificate: Certificate::Node {
                            query: b.clone(),
                            alternative: i,
                            label: label.clone(),
                            answers: children,
                        },
                    }
                }
                Some(v @ MembershipVerdict::NotMember { .. }) => {
                    first_failure.get_or_insert(v);
                }
                Some(v) => {
                    first_unknown.get_or_insert(v);
                }
            }
        }
        first_unknown.or(first_failure).expect("some alternative was tried")
    }
}

/// Membership of `t` in the least fixed point generated by `S` and the
/// node clause of `oracle`, within `depth` levels and `fuel` steps per
/// evaluation.
pub fn check_oracle_membership<Q: OracleQueries + ?Sized>(
    sig: &Signature,
    oracle: &Q,
    s: &[Term],
    t: &Term,
    depth: usize,
    fuel: u64,
) -> MembershipVerdict {
    let ck = Checker { sig, oracle, s, fuel };
    ck.check(t, depth, &mut Vec::new())
}

pub fn check_oracle_membership_w(
    sig: &Signature,
    f: &super::weihrauch::ExtWeihrauchPredicate,
    s: &[Term],
    t: &Term,
    depth: usize,
    fuel: u64,
) -> MembershipVerdict {
    check_oracle_membership(sig, f, s, t, depth, fuel)
}

pub fn check_oracle_membership_asm(
    sig: &Signature,
    p: &super::weihrauch::PartitionedAssemblyPredicate,
    s: &[Term],
    t: &Term,
    depth: usize,
    fuel: u64,
) -> MembershipVerdict {
    check_oracle_membership(sig, p, s, t, depth, fuel)
}

/// Re-checks a certificate against `t` by evaluation alone, without search.
pub fn verify_certificate<Q: OracleQueries + ?Sized>(
    sig: &Signature,
    oracle: &Q,
    s: &[Term],
    t: &Term,
    cert: &Certificate,
    fuel: u64,
) -> bool {
    let Some(v) = sig.eval(t, fuel).value().cloned() else {
        return false;
    };
    match (untag(&v), cert) {
        (Some(Tagged::Leaf(a)), Certificate::Leaf { value }) => a == value && s.contains(a),
        (
            Some(Tagged::Node(b, c)),
            Certificate::Node {
                query,
                alternative,
                answers,
                ..
            },
        ) => {
            if b != query {
                return false;
            }
            let alts = oracle.alternatives(b);
            let Some((_, theta)) = alts.get(*alternative) else {
                return false;
            };
            theta.len() == answers.len()
                && theta.iter().all(|d| {
                    answers
                        .iter()
                        .find(|(e, _)| e == d)
                        .is_some_and(|(_, sub)| verify_certificate(sig, oracle, s, &Term::app(c.clone(), d.clone()), sub, fuel))
                })
        }
        _ => false,
    }
}

/// A tree to be rendered as a realizer. `Junk` renders to `K`, which
/// decodes as nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeSpec {
    Leaf { tag: usize, payload: Term },
    Node { tag: usize, query: Term, answers: Vec<(Term, TreeSpec)> },
    Junk,
}

impl TreeSpec {
    /// Renders the tree, declaring one fresh case-dispatch constant per
    /// node whose rewrite table sends each answer to its subtree.
    pub fn render(&self, sig: &mut Signature, prefix: &str) -> Result<Term> {
        let mut counter = 0;
        self.render_with(sig, prefix, &mut counter)
    }

    fn render_with(&self, sig: &mut Signature, prefix: &str, counter: &mut usize) -> Result<Term> {
        Ok(match self {
            TreeSpec::Leaf { tag, payload } => pair(numeral(*tag), payload.clone()),
            TreeSpec::Junk => Term::K,
            TreeSpec::Node { tag, query, answers } => {
                let name = loop {
                    let n = format!("{prefix}{counter}");
                    *counter += 1;
                    if !sig.is_declared(&n) {
                        break n;
                    }
                };
                sig.declare(&name)?;
                for (d, child) in answers {
                    let sub = child.render_with(sig, prefix, counter)?;
                    sig.add_rule(&name, d.clone(), sub)?;
                }
                pair(numeral(*tag), pair(query.clone(), Term::constant(&name)))
            }
        })
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeSpec::Leaf { .. } | TreeSpec::Junk => 1,
            TreeSpec::Node { answers, .. } => 1 + answers.iter().map(|(_, c)| c.depth()).max().unwrap_or(0),
        }
    }

    /// Every tree differing from `self` at exactly one node: a flipped tag,
    /// a leaf payload replaced by `junk`, or one answer branch replaced by
    /// [`TreeSpec::Junk`].
    pub fn mutations(&self, junk: &Term) -> Vec<TreeSpec> {
        let mut out = Vec::new();
        match self {
            TreeSpec::Junk => {}
            TreeSpec::Leaf { tag, payload } => {
                out.push(TreeSpec::Leaf {
                    tag: 1 - tag.min(&1),
                    payload: payload.clone(),
                });
                out.push(TreeSpec::Leaf {
                    tag: *tag,
                    payload: junk.clone(),
                });
            }
            TreeSpec::Node { tag, query, answers } => {
                out.push(TreeSpec::Node {
                    tag: 1 - tag.min(&1),
                    query: query.clone(),
                    answers: answers.clone(),
                });
                for i in 0..answers.len() {
                    let with = |child: TreeSpec| {
                        let mut a = answers.clone();
                        a[i].1 = child;
                        TreeSpec::Node {
                            tag: *tag,
                            query: query.clone(),
                            answers: a,
                        }
                    };
                    out.push(with(TreeSpec::Junk));
                    for m in answers[i].1.mutations(junk) {
                        out.push(with(m));
                    }
                }
            }
        }
        out
    }
}

/// A random member tree of depth at most `depth`: nodes query a random
/// supported realizer, pick one alternative, and answer all of it.
pub fn random_member_spec<Q: OracleQueries + ?Sized, R: Rng + ?Sized>(
    rng: &mut R,
    oracle: &Q,
    s: &[Term],
    depth: usize,
) -> TreeSpec {
    let queries = oracle.queries();
    if depth <= 1 || queries.is_empty() || rng.random_bool(0.3) {
        return TreeSpec::Leaf {
            tag: 0,
            payload: s[rng.random_range(0..s.len())].clone(),
        };
    }
    let b = queries[rng.random_range(0..queries.len())].clone();
    let alts = oracle.alternatives(&b);
    let (_, theta) = alts[rng.random_range(0..alts.len())];
    let answers = theta
        .iter()
        .map(|d| (d.clone(), random_member_spec(rng, oracle, s, depth - 1)))
        .collect();
    TreeSpec::Node {
        tag: 1,
        query: b,
        answers,
    }
}

/// `⟨0̄, a⟩` for each `a`, the trivial members.
pub fn leaves(s: &[Term]) -> Vec<Term> {
    s.iter().cloned().map(tag_leaf).collect()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::pca::encode::tag_node;
    use crate::pca::weihrauch::{ExtWeihrauchPredicate, PartitionedAssemblyPredicate};
    use crate::pca::DEFAULT_FUEL;

    fn setup() -> (Signature, ExtWeihrauchPredicate, Vec<Term>) {
        let sig = Signature::with_atoms(&["a", "b", "p", "q", "u", "v", "w", "z"]).unwrap();
        let f = ExtWeihrauchPredicate::from_sources(
            &sig,
            DEFAULT_FUEL,
            &[("p", vec![vec!["u", "v"], vec!["w"]]), ("q", vec![vec!["u"], vec!["v"]])],
        )
        .unwrap();
        let s = vec![Term::constant("a"), Term::constant("b")];
        (sig, f, s)
    }

    #[test]
    fn leaves_and_nodes() {
        let (mut sig, f, s) = setup();
        let a = Term::constant("a");
        let v = check_oracle_membership_w(&sig, &f, &s, &tag_leaf(a.clone()), 8, DEFAULT_FUEL);
        assert_eq!(v.certificate(), Some(&Certificate::Leaf { value: a }));
        let v = check_oracle_membership_w(&sig, &f, &s, &tag_leaf(Term::constant("z")), 8, DEFAULT_FUEL);
        assert!(matches!(v, MembershipVerdict::NotMember { .. }));

        // a case dispatch answering only the second family of p
        sig.declare("c").unwrap();
        sig.add_rule("c", Term::constant("w"), tag_leaf(Term::constant("b"))).unwrap();
        let t = tag_node(Term::constant("p"), Term::constant("c"));
        let v = check_oracle_membership_w(&sig, &f, &s, &t, 8, DEFAULT_FUEL);
        let cert = v.certificate().expect("member");
        assert_eq!(cert.depth(), 2);
        assert!(matches!(cert, Certificate::Node { alternative: 1, .. }));
        assert!(verify_certificate(&sig, &f, &s, &t, cert, DEFAULT_FUEL));
        assert!(!check_oracle_membership_w(&sig, &f, &s, &t, 1, DEFAULT_FUEL).is_member());

        let t = tag_node(Term::constant("z"), Term::constant("c"));
        assert!(matches!(
            check_oracle_membership_w(&sig, &f, &s, &t, 8, DEFAULT_FUEL),
            MembershipVerdict::NotMember { .. }
        ));
    }

    #[test]
    fn divergent_branches_are_unknown() {
        let (sig, f, s) = setup();
        // every answer leads to a divergent continuation
        let omega = sig.parse("S I I (S I I)").unwrap();
        let c = Term::app(Term::K, omega);
        let t = tag_node(Term::constant("p"), c);
        let v = check_oracle_membership_w(&sig, &f, &s, &t, 8, 1000);
        assert!(matches!(v, MembershipVerdict::Unknown { .. }), "{v:?}");
    }

    #[test]
    fn assembly_nodes() {
        let (mut sig, _, s) = setup();
        let asm = PartitionedAssemblyPredicate::from_sources(
            &sig,
            DEFAULT_FUEL,
            &[("x0", "p", vec!["u"]), ("x1", "p", vec![]), ("x2", "q", vec!["v"])],
        )
        .unwrap();
        // x1 has no answers, so any continuation works
        let t = tag_node(Term::constant("p"), Term::K);
        let v = check_oracle_membership_asm(&sig, &asm, &s, &t, 8, DEFAULT_FUEL);
        assert!(matches!(v.certificate(), Some(Certificate::Node { label, .. }) if label == "x1"));
        let t = tag_node(Term::constant("u"), Term::K);
        assert!(!check_oracle_membership_asm(&sig, &asm, &s, &t, 8, DEFAULT_FUEL).is_member());
        sig.declare("c").unwrap();
        sig.add_rule("c", Term::constant("v"), tag_leaf(Term::constant("a"))).unwrap();
        let t = tag_node(Term::constant("q"), Term::constant("c"));
        assert!(check_oracle_membership_asm(&sig, &asm, &s, &t, 8, DEFAULT_FUEL).is_member());
    }

    #[test]
    fn built_trees_are_members_and_mutants_are_not() {
        let (sig0, f, s) = setup();
        let junk = Term::constant("z");
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..30 {
            let spec = random_member_spec(&mut rng, &f, &s, 3);
            let mut sig = sig0.clone();
            let t = spec.render(&mut sig, &format!("m{i}_")).unwrap();
            let v = check_oracle_membership_w(&sig, &f, &s, &t, 8, DEFAULT_FUEL);
            let cert = v.certificate().unwrap_or_else(|| panic!("{spec:?}: {v:?}"));
            assert!(verify_certificate(&sig, &f, &s, &t, cert, DEFAULT_FUEL));
            for (k, m) in spec.mutations(&junk).into_iter().enumerate() {
                let mut sig = sig0.clone();
                let t = m.render(&mut sig, &format!("m{i}_{k}_")).unwrap();
                assert!(!check_oracle_membership_w(&sig, &f, &s, &t, 8, DEFAULT_FUEL).is_member(), "{m:?}");
            }
        }
    }
}
