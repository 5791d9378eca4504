//! Batch verification of the order-theoretic facts relating containers,
//! their oracle modalities and nuclei, on one finite frame.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::nucleus::{enumerate_nuclei, nucleus_leq, sup_among, Nucleus};

use super::container::{all_containers, container_sum, PropContainer};
use super::modality::{
    forces, instance_prenucleus, instance_reducible, oracle_modality, pred_of_nucleus,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// `◯(pred j) = j` for every nucleus.
    Retraction,
    /// `j` forces `c` iff `◯c <= j`.
    Forcing,
    /// `◯c <= ◯d` iff `◯d` forces `c`.
    OracleLeq,
    /// `◯c` is the least nucleus above the single-query map of `c`.
    LeastAbove,
    /// `◯(c + d) = ◯c ∨ ◯d`.
    Sup,
    /// `◯(c ∘ q) = ◯c` for surjective relabelings `q`.
    Surjection,
    /// Single-query reducibility agrees with its prenucleus reading and
    /// implies forcing by the target's modality.
    InstanceReducibility,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::Retraction,
        TheoremId::Forcing,
        TheoremId::OracleLeq,
        TheoremId::LeastAbove,
        TheoremId::Sup,
        TheoremId::Surjection,
        TheoremId::InstanceReducibility,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Retraction => "retraction",
            TheoremId::Forcing => "forcing",
            TheoremId::OracleLeq => "oracle-leq",
            TheoremId::LeastAbove => "least-above",
            TheoremId::Sup => "sup",
            TheoremId::Surjection => "surjection",
            TheoremId::InstanceReducibility => "instance-reducibility",
        }
    }

    fn stream(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremId> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown theorem `{s}`")))
    }
}

/// Instance budget for [`verify_theorems`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub seed: u64,
    /// Enumerate every container with up to this many shapes...
    pub exhaustive_shapes: usize,
    /// ...as long as there are at most this many of them (or pairs of them).
    pub exhaustive_limit: usize,
    /// Random containers (or pairs) drawn in addition.
    pub samples: usize,
    /// Shapes per random container.
    pub max_random_shapes: usize,
    /// Hard cap on checked instances per theorem; hitting it leaves the
    /// report incomplete.
    pub max_checks: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            seed: 0,
            exhaustive_shapes: 1,
            exhaustive_limit: 100_000,
            samples: 500,
            max_random_shapes: 3,
            max_checks: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub checked: usize,
    pub total: usize,
    pub failures: Vec<String>,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub complete: bool,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs each requested theorem on `frame`. Theorems quantifying over
/// nuclei enumerate them, so the frame must be within the enumeration
/// bound.
pub fn verify_theorems(frame: &Frame, ids: &[TheoremId], budget: &Budget) -> Result<Vec<TheoremReport>> {
    let nuclei = enumerate_nuclei(frame)?;
    ids.iter()
        .map(|&id| {
            let start = Instant::now();
            let mut run = Run::new(id, budget);
            let mut rng = rng_for(budget.seed, id);
            match id {
                TheoremId::Retraction => retraction(&mut run, &nuclei),
                TheoremId::Forcing => forcing(&mut run, frame, &nuclei, budget, &mut rng)?,
                TheoremId::OracleLeq => oracle_leq(&mut run, frame, budget, &mut rng)?,
                TheoremId::LeastAbove => least_above(&mut run, frame, &nuclei, budget, &mut rng)?,
                TheoremId::Sup => sup(&mut run, frame, &nuclei, budget, &mut rng)?,
                TheoremId::Surjection => surjection(&mut run, frame, budget, &mut rng),
                TheoremId::InstanceReducibility => instance(&mut run, frame, budget, &mut rng)?,
            }
            Ok(run.finish(start))
        })
        .collect()
}

/// Retraction check on raw tables that need not be nuclei; used to
/// exercise the failure path with injected tables.
pub fn verify_retraction_tables(frame: &Frame, tables: &[Vec<usize>], seed: u64) -> Result<TheoremReport> {
    let start = Instant::now();
    let mut run = Run::new(TheoremId::Retraction, &Budget { seed, ..Budget::default() });
    let mut js = Vec::with_capacity(tables.len());
    for t in tables {
        if t.len() != frame.len() || t.iter().any(|&x| x >= frame.len()) {
            return Err(Error::NotTotal {
                expected: frame.len(),
                got: t.len(),
            });
        }
        js.push(Nucleus::unchecked(frame, t.clone()));
    }
    retraction(&mut run, &js);
    Ok(run.finish(start))
}

fn rng_for(seed: u64, id: TheoremId) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id.stream());
    rng
}

struct Run {
    theorem: TheoremId,
    seed: u64,
    cap: Option<usize>,
    checked: usize,
    total: usize,
    failures: Vec<String>,
}

impl Run {
    fn new(theorem: TheoremId, budget: &Budget) -> Run {
        Run {
            theorem,
            seed: budget.seed,
            cap: budget.max_checks,
            checked: 0,
            total: 0,
            failures: Vec::new(),
        }
    }

    /// Registers one instance; returns false once the cap is reached.
    fn admit(&mut self) -> bool {
        self.total += 1;
        if self.cap.is_some_and(|c| self.checked >= c) {
            return false;
        }
        self.checked += 1;
        true
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(describe());
        }
    }

    fn finish(self, start: Instant) -> TheoremReport {
        TheoremReport {
            theorem: self.theorem,
            checked: self.checked,
            total: self.total,
            complete: self.checked == self.total,
            failures: self.failures,
            seed: self.seed,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// Exhaustive containers (when affordable) followed by seeded random ones.
fn containers(frame: &Frame, budget: &Budget, rng: &mut ChaCha8Rng) -> Vec<PropContainer> {
    let mut out = Vec::new();
    for k in 1..=budget.exhaustive_shapes {
        let all = all_containers(frame, k);
        if out.len() + all.len() > budget.exhaustive_limit {
            break;
        }
        out.extend(all);
    }
    out.extend((0..budget.samples).map(|_| PropContainer::random(rng, frame, budget.max_random_shapes)));
    out
}

fn pairs(frame: &Frame, budget: &Budget, rng: &mut ChaCha8Rng) -> Vec<(PropContainer, PropContainer)> {
    let mut out = Vec::new();
    let mut singles = Vec::new();
    for k in 1..=budget.exhaustive_shapes {
        let all = all_containers(frame, k);
        if (singles.len() + all.len()).pow(2) > budget.exhaustive_limit {
            break;
        }
        singles.extend(all);
    }
    for c in &singles {
        for d in &singles {
            out.push((c.clone(), d.clone()));
        }
    }
    for _ in 0..budget.samples {
        let c = PropContainer::random(rng, frame, budget.max_random_shapes);
        let d = PropContainer::random(rng, frame, budget.max_random_shapes);
        out.push((c, d));
    }
    out
}

fn retraction(run: &mut Run, nuclei: &[Nucleus]) {
    for j in nuclei {
        if !run.admit() {
            continue;
        }
        let back = oracle_modality(&pred_of_nucleus(j));
        run.check(back == *j, || format!("{j:?} retracts to {back:?}"));
    }
}

fn forcing(run: &mut Run, frame: &Frame, nuclei: &[Nucleus], budget: &Budget, rng: &mut ChaCha8Rng) -> Result<()> {
    for c in containers(frame, budget, rng) {
        let o = oracle_modality(&c);
        for j in nuclei {
            if !run.admit() {
                continue;
            }
            let lhs = forces(j, &c)?;
            let rhs = nucleus_leq(&o, j)?;
            run.check(lhs == rhs, || format!("{j:?} forces {c:?}: {lhs}, oracle below: {rhs}"));
        }
    }
    Ok(())
}

fn oracle_leq(run: &mut Run, frame: &Frame, budget: &Budget, rng: &mut ChaCha8Rng) -> Result<()> {
    for (c, d) in pairs(frame, budget, rng) {
        if !run.admit() {
            continue;
        }
        let (oc, od) = (oracle_modality(&c), oracle_modality(&d));
        let lhs = nucleus_leq(&oc, &od)?;
        let rhs = c
            .shapes()
            .iter()
            .all(|a| frame.le_ix(a.extent, od.apply_ix(a.pred)));
        run.check(lhs == rhs, || format!("{c:?} vs {d:?}: leq {lhs}, pointwise {rhs}"));
    }
    Ok(())
}

fn least_above(run: &mut Run, frame: &Frame, nuclei: &[Nucleus], budget: &Budget, rng: &mut ChaCha8Rng) -> Result<()> {
    for c in containers(frame, budget, rng) {
        if !run.admit() {
            continue;
        }
        let o = oracle_modality(&c);
        let i = instance_prenucleus(&c);
        run.check(i.below(&o)?, || format!("{c:?}: {o:?} not above single-query map"));
        for k in nuclei {
            if i.below(k)? && !nucleus_leq(&o, k)? {
                run.failures.push(format!("{c:?}: {k:?} above single-query map but not above {o:?}"));
            }
        }
    }
    Ok(())
}

fn sup(run: &mut Run, frame: &Frame, nuclei: &[Nucleus], budget: &Budget, rng: &mut ChaCha8Rng) -> Result<()> {
    for (c, d) in pairs(frame, budget, rng) {
        if !run.admit() {
            continue;
        }
        let sum = container_sum(frame, &[c.clone(), d.clone()])?;
        let lhs = oracle_modality(&sum);
        let rhs = sup_among(nuclei, &[oracle_modality(&c), oracle_modality(&d)])?;
        run.check(lhs == rhs, || format!("{c:?} + {d:?}: {lhs:?} vs sup {rhs:?}"));
    }
    Ok(())
}

/// A uniformly random surjection onto `0..n` from a domain of size
/// `n..=n + 2`, as the list of images.
pub fn random_surjection<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let m = if n == 0 { 0 } else { n + rng.random_range(0..=2) };
    let mut q: Vec<usize> = (0..n).collect();
    q.extend((n..m).map(|_| rng.random_range(0..n)));
    // Fisher-Yates keeps every target hit
    for i in (1..q.len()).rev() {
        let k = rng.random_range(0..=i);
        q.swap(i, k);
    }
    q
}

fn surjection(run: &mut Run, frame: &Frame, budget: &Budget, rng: &mut ChaCha8Rng) {
    for c in containers(frame, budget, rng) {
        if !run.admit() {
            continue;
        }
        let q = random_surjection(rng, c.len());
        let pulled = c.precompose(&q).expect("q targets existing shapes");
        let (lhs, rhs) = (oracle_modality(&pulled), oracle_modality(&c));
        run.check(lhs == rhs, || format!("{c:?} along {q:?}: {lhs:?} vs {rhs:?}"));
    }
}

fn instance(run: &mut Run, frame: &Frame, budget: &Budget, rng: &mut ChaCha8Rng) -> Result<()> {
    for (c, d) in pairs(frame, budget, rng) {
        if !run.admit() {
            continue;
        }
        let direct = instance_reducible(&c, &d)?;
        let i = instance_prenucleus(&d);
        let via_map = c.shapes().iter().all(|a| frame.le_ix(a.extent, i.apply_ix(a.pred)));
        run.check(direct == via_map, || {
            format!("{c:?} to {d:?}: direct {direct}, via single-query map {via_map}")
        });
        if direct {
            let f = forces(&oracle_modality(&d), &c)?;
            run.check(f, || format!("{c:?} reduces to {d:?} but is not forced by its modality"));
        }
    }
    Ok(())
}
