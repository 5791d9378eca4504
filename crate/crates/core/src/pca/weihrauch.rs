//! Finite extended Weihrauch predicates, partitioned assembly predicates,
//! and a checker for supplied Weihrauch reducers.

use serde::Serialize;

use crate::error::{Error, Result};

use super::encode::{abstract_var, compose, identity};
use super::{dedup, EvalResult, Signature, Term};

fn normal(sig: &Signature, t: &Term, fuel: u64) -> Result<Term> {
    match sig.eval(t, fuel) {
        EvalResult::Value(v) => Ok(v),
        EvalResult::Diverged { .. } => Err(Error::Diverged(t.to_string())),
    }
}

/// One instance realizer with its families of acceptable answer sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeihrauchEntry {
    pub instance: Term,
    pub families: Vec<Vec<Term>>,
}

/// A finite map from realizers to families of finite realizer sets.
/// Realizers are stored in normal form; entries for the same instance
/// are merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExtWeihrauchPredicate {
    entries: Vec<WeihrauchEntry>,
}

impl ExtWeihrauchPredicate {
    pub fn new(sig: &Signature, fuel: u64, entries: Vec<(Term, Vec<Vec<Term>>)>) -> Result<Self> {
        let mut out: Vec<WeihrauchEntry> = Vec::new();
        for (r, families) in entries {
            let r = normal(sig, &r, fuel)?;
            let families = families
                .into_iter()
                .map(|theta| Ok(dedup(theta.iter().map(|t| normal(sig, t, fuel)).collect::<Result<Vec<_>>>()?)))
                .collect::<Result<Vec<_>>>()?;
            match out.iter_mut().find(|e| e.instance == r) {
                Some(e) => e.families.extend(families),
                None => out.push(WeihrauchEntry { instance: r, families }),
            }
        }
        Ok(ExtWeihrauchPredicate { entries: out })
    }

    /// Parses every term with `sig`.
    pub fn from_sources(sig: &Signature, fuel: u64, entries: &[(&str, Vec<Vec<&str>>)]) -> Result<Self> {
        let parsed = entries
            .iter()
            .map(|(r, fams)| {
                Ok((
                    sig.parse(r)?,
                    fams.iter()
                        .map(|th| th.iter().map(|s| sig.parse(s)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        ExtWeihrauchPredicate::new(sig, fuel, parsed)
    }

    pub fn entries(&self) -> &[WeihrauchEntry] {
        &self.entries
    }

    /// Instances with at least one family.
    pub fn support(&self) -> Vec<&Term> {
        self.entries
            .iter()
            .filter(|e| !e.families.is_empty())
            .map(|e| &e.instance)
            .collect()
    }

    pub fn in_support(&self, r: &Term) -> bool {
        !self.families(r).is_empty()
    }

    pub fn families(&self, r: &Term) -> &[Vec<Term>] {
        self.entries
            .iter()
            .find(|e| e.instance == *r)
            .map(|e| e.families.as_slice())
            .unwrap_or(&[])
    }
}

/// Elements with one realizer each and a finite answer set each.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PartitionedAssemblyPredicate {
    pub elements: Vec<String>,
    pub rho: Vec<Term>,
    pub pred: Vec<Vec<Term>>,
}

impl PartitionedAssemblyPredicate {
    pub fn new(sig: &Signature, fuel: u64, elements: Vec<(String, Term, Vec<Term>)>) -> Result<Self> {
        let mut out = PartitionedAssemblyPredicate::default();
        for (x, r, answers) in elements {
            if out.elements.contains(&x) {
                return Err(Error::DuplicateLabel(x));
            }
            out.rho.push(normal(sig, &r, fuel)?);
            out.pred
                .push(dedup(answers.iter().map(|t| normal(sig, t, fuel)).collect::<Result<Vec<_>>>()?));
            out.elements.push(x);
        }
        Ok(out)
    }

    pub fn from_sources(sig: &Signature, fuel: u64, elements: &[(&str, &str, Vec<&str>)]) -> Result<Self> {
        let parsed = elements
            .iter()
            .map(|(x, r, ans)| {
                Ok((
                    x.to_string(),
                    sig.parse(r)?,
                    ans.iter().map(|s| sig.parse(s)).collect::<Result<Vec<_>>>()?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionedAssemblyPredicate::new(sig, fuel, parsed)
    }
}

/// Node alternatives of an oracle presentation: for a query realizer,
/// the labelled answer sets one of which must be fully handled.
pub trait OracleQueries {
    fn queries(&self) -> Vec<&Term>;
    fn alternatives(&self, b: &Term) -> Vec<(String, &[Term])>;
}

impl OracleQueries for ExtWeihrauchPredicate {
    fn queries(&self) -> Vec<&Term> {
        self.support()
    }

    fn alternatives(&self, b: &Term) -> Vec<(String, &[Term])> {
        self.families(b)
            .iter()
            .enumerate()
            .map(|(i, th)| (format!("family {i}"), th.as_slice()))
            .collect()
    }
}

impl OracleQueries for PartitionedAssemblyPredicate {
    fn queries(&self) -> Vec<&Term> {
        let mut out: Vec<&Term> = Vec::new();
        for r in &self.rho {
            if !out.contains(&r) {
                out.push(r);
            }
        }
        out
    }

    fn alternatives(&self, b: &Term) -> Vec<(String, &[Term])> {
        (0..self.elements.len())
            .filter(|&i| self.rho[i] == *b)
            .map(|i| (self.elements[i].clone(), self.pred[i].as_slice()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObligationStatus {
    Met,
    Failed(String),
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obligation {
    pub path: String,
    pub status: ObligationStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum WeihrauchOutcome {
    Accepted,
    Rejected { path: String, reason: String },
    Unknown { path: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeihrauchVerdict {
    pub outcome: WeihrauchOutcome,
    pub obligations: Vec<Obligation>,
}

impl WeihrauchVerdict {
    pub fn accepted(&self) -> bool {
        self.outcome == WeihrauchOutcome::Accepted
    }
}

/// Checks that `l1`, `l2` witness `f ≤ g`: for every `r` in the support
/// of `f`, `l1 r` lands in the support of `g`, and every family `θ` of
/// `f(r)` has some `ξ` in `g(l1 r)` with `l2 r s ∈ θ` for all `s ∈ ξ`.
/// Reducers must be free of constants.
pub fn check_weihrauch(
    sig: &Signature,
    f: &ExtWeihrauchPredicate,
    g: &ExtWeihrauchPredicate,
    l1: &Term,
    l2: &Term,
    fuel: u64,
) -> WeihrauchVerdict {
    let mut log = Vec::new();
    for (name, l) in [("l1", l1), ("l2", l2)] {
        let status = if l.mentions_constant() {
            ObligationStatus::Failed(format!("{name} = {l} mentions an oracle constant"))
        } else if l.size() != 0 && has_var(l) {
            ObligationStatus::Failed(format!("{name} = {l} is not closed"))
        } else {
            ObligationStatus::Met
        };
        log.push(Obligation {
            path: format!("{name}/elementary"),
            status,
        });
    }
    if log.iter().all(|o| o.status == ObligationStatus::Met) {
        for r in f.support() {
            check_instance(sig, f, g, l1, l2, r, fuel, &mut log);
        }
    }
    let outcome = log
        .iter()
        .find_map(|o| match &o.status {
            ObligationStatus::Failed(why) => Some(WeihrauchOutcome::Rejected {
                path: o.path.clone(),
                reason: why.clone(),
            }),
            _ => None,
        })
        .or_else(|| {
            log.iter().find_map(|o| match &o.status {
                ObligationStatus::Unknown(why) => Some(WeihrauchOutcome::Unknown {
                    path: o.path.clone(),
                    reason: why.clone(),
                }),
                _ => None,
            })
        })
        .unwrap_or(WeihrauchOutcome::Accepted);
    WeihrauchVerdict {
        outcome,
        obligations: log,
    }
}

fn has_var(t: &Term) -> bool {
    let mut stack = vec![t];
    while let Some(t) = stack.pop() {
        match t {
            Term::Var(_) => return true,
            Term::App(f, a) => {
                stack.push(f);
                stack.push(a);
            }
            _ => {}
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn check_instance(
    sig: &Signature,
    f: &ExtWeihrauchPredicate,
    g: &ExtWeihrauchPredicate,
    l1: &Term,
    l2: &Term,
    r: &Term,
    fuel: u64,
    log: &mut Vec<Obligation>,
) {
    let base = format!("r={r}");
    let translated = match sig.eval(&Term::app(l1.clone(), r.clone()), fuel) {
        EvalResult::Diverged { fuel } => {
            log.push(Obligation {
                path: format!("{base}/l1"),
                status: ObligationStatus::Unknown(format!("l1 r undefined within {fuel} steps")),
            });
            return;
        }
        EvalResult::Value(v) => v,
    };
    if !g.in_support(&translated) {
        log.push(Obligation {
            path: format!("{base}/l1"),
            status: ObligationStatus::Failed(format!("l1 r = {translated} is outside the support of g")),
        });
        return;
    }
    log.push(Obligation {
        path: format!("{base}/l1"),
        status: ObligationStatus::Met,
    });
    for (i, theta) in f.families(r).iter().enumerate() {
        let path = format!("{base}/theta[{i}]");
        let mut unknown = None;
        let mut met = None;
        let mut last_failure = String::from("g(l1 r) has no family");
        for (k, xi) in g.families(&translated).iter().enumerate() {
            match answers_within(sig, l2, r, xi, theta, fuel) {
                Ok(()) => {
                    met = Some(k);
                    break;
                }
                Err(Some(why)) => last_failure = format!("xi[{k}]: {why}"),
                Err(None) => {
                    unknown.get_or_insert(k);
                }
            }
        }
        let status = match (met, unknown) {
            (Some(_), _) => ObligationStatus::Met,
            (None, Some(k)) => ObligationStatus::Unknown(format!("xi[{k}]: l2 r s undefined within {fuel} steps")),
            (None, None) => ObligationStatus::Failed(last_failure),
        };
        let path = match met {
            Some(k) => format!("{path}/xi[{k}]"),
            None => path,
        };
        log.push(Obligation { path, status });
    }
}

/// `Err(Some(_))` on a definite failure, `Err(None)` when only fuel ran out.
fn answers_within(
    sig: &Signature,
    l2: &Term,
    r: &Term,
    xi: &[Term],
    theta: &[Term],
    fuel: u64,
) -> std::result::Result<(), Option<String>> {
    let mut undecided = false;
    for s in xi {
        match sig.eval(&Term::apply(l2.clone(), [r.clone(), s.clone()]), fuel) {
            EvalResult::Value(v) if theta.contains(&v) => {}
            EvalResult::Value(v) => return Err(Some(format!("l2 r {s} = {v} is not in theta"))),
            EvalResult::Diverged { .. } => undecided = true,
        }
    }
    if undecided {
        Err(None)
    } else {
        Ok(())
    }
}

/// `l1 = I`, `l2 = K I`: the reflexivity reducers.
pub fn identity_reducers() -> (Term, Term) {
    (identity(), Term::app(Term::K, identity()))
}

/// Reducers for `f ≤ h` from reducers `(l1, l2)` for `f ≤ g` and
/// `(m1, m2)` for `g ≤ h`: `n1 = B m1 l1` and
/// `n2 = [r][s] l2 r (m2 (l1 r) s)`.
pub fn compose_reducers(l: (&Term, &Term), m: (&Term, &Term)) -> (Term, Term) {
    let (l1, l2) = l;
    let (m1, m2) = m;
    let n1 = Term::apply(compose(), [m1.clone(), l1.clone()]);
    let (r, s) = (Term::var("r"), Term::var("s"));
    let body = Term::apply(
        l2.clone(),
        [
            r.clone(),
            Term::apply(m2.clone(), [Term::app(l1.clone(), r), s]),
        ],
    );
    let n2 = abstract_var("r", &abstract_var("s", &body));
    (n1, n2)
}
