//! Nuclei (Lawvere-Tierney topologies) on finite frames.
//!
//! A nucleus here is a table on the carrier that is inflationary,
//! idempotent and preserves finite meets. Meet preservation is checked as
//! an axiom: on a finite frame the first two laws together with
//! monotonicity do not imply it.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{Elem, Frame, Poset};

/// Largest carrier [`enumerate_nuclei`] accepts by default.
pub const DEFAULT_ENUM_CARRIER: usize = 64;

/// Largest number of nuclei [`enumerate_nuclei`] returns by default.
pub const DEFAULT_MAX_NUCLEI: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_carrier: usize,
    pub max_nuclei: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_carrier: DEFAULT_ENUM_CARRIER,
            max_nuclei: DEFAULT_MAX_NUCLEI,
        }
    }
}

/// A validated nucleus on a frame.
#[derive(Clone, PartialEq, Eq)]
pub struct Nucleus {
    frame: Frame,
    table: Vec<usize>,
}

impl fmt::Debug for Nucleus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = (0..self.frame.len())
            .map(|x| format!("{}↦{}", self.frame.render_ix(x), self.frame.render_ix(self.table[x])))
            .collect();
        write!(f, "Nucleus[{}]", entries.join(", "))
    }
}

impl Nucleus {
    /// Validates `table` (indexed by carrier position) and wraps it.
    pub fn new(frame: &Frame, table: &[Elem]) -> Result<Nucleus> {
        let report = validate_nucleus(frame, table)?;
        if !report.valid {
            return Err(Error::InvalidNucleus(report.describe(frame)));
        }
        let table = table.iter().map(|e| e.index()).collect();
        Ok(Nucleus {
            frame: frame.clone(),
            table,
        })
    }

    pub fn from_indices(frame: &Frame, table: Vec<usize>) -> Result<Nucleus> {
        let report = validate_table(frame, &table)?;
        if !report.valid {
            return Err(Error::InvalidNucleus(report.describe(frame)));
        }
        Ok(Nucleus {
            frame: frame.clone(),
            table,
        })
    }

    /// Wraps a table known to satisfy the nucleus laws.
    pub(crate) fn trusted(frame: &Frame, table: Vec<usize>) -> Nucleus {
        debug_assert!(validate_table(frame, &table).map(|r| r.valid).unwrap_or(false));
        Nucleus {
            frame: frame.clone(),
            table,
        }
    }

    /// Wraps an arbitrary total table without checking any law; only for
    /// exercising checkers on deliberately broken input.
    pub(crate) fn unchecked(frame: &Frame, table: Vec<usize>) -> Nucleus {
        Nucleus {
            frame: frame.clone(),
            table,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn apply(&self, e: Elem) -> Result<Elem> {
        Ok(self.frame.elem(self.table[self.frame.index(e)?]))
    }

    pub fn apply_ix(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table_ix(&self) -> &[usize] {
        &self.table
    }

    pub fn table(&self) -> Vec<Elem> {
        self.table.iter().map(|&i| self.frame.elem(i)).collect()
    }

    /// Pairs of rendered elements `(x, j(x))` in carrier order.
    pub fn rendered(&self) -> Vec<(String, String)> {
        (0..self.frame.len())
            .map(|x| (self.frame.render_ix(x), self.frame.render_ix(self.table[x])))
            .collect()
    }

    pub fn is_fixed(&self, x: usize) -> bool {
        self.table[x] == x
    }
}

/// The laws a nucleus table is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Inflationary,
    Idempotent,
    MeetPreserving,
    Monotone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<Elem>,
}

/// Outcome of [`validate_nucleus`]: the first witness found for each
/// violated law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NucleusReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl NucleusReport {
    pub fn violated(&self, law: Law) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }

    pub fn describe(&self, frame: &Frame) -> String {
        if self.valid {
            return "valid".into();
        }
        self.violations
            .iter()
            .map(|v| {
                let w: Vec<String> = v.witness.iter().map(|&e| frame.render(e).unwrap_or_default()).collect();
                format!("{:?} fails at ({})", v.law, w.join(", "))
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Checks the nucleus laws exhaustively for a table indexed by carrier
/// position.
pub fn validate_nucleus(frame: &Frame, table: &[Elem]) -> Result<NucleusReport> {
    let ixs = table.iter().map(|&e| frame.index(e)).collect::<Result<Vec<_>>>()?;
    validate_table(frame, &ixs)
}

/// [`validate_nucleus`] over raw carrier indices.
pub fn validate_table(frame: &Frame, table: &[usize]) -> Result<NucleusReport> {
    let n = frame.len();
    if table.len() != n {
        return Err(Error::NotTotal {
            expected: n,
            got: table.len(),
        });
    }
    if let Some(&bad) = table.iter().find(|&&v| v >= n) {
        return Err(Error::NotTotal { expected: n, got: bad });
    }
    let e = |i: usize| frame.elem(i);
    let mut violations = Vec::new();

    if let Some(x) = (0..n).find(|&x| !frame.le_ix(x, table[x])) {
        violations.push(Violation {
            law: Law::Inflationary,
            witness: vec![e(x)],
        });
    }
    if let Some(x) = (0..n).find(|&x| table[table[x]] != table[x]) {
        violations.push(Violation {
            law: Law::Idempotent,
            witness: vec![e(x)],
        });
    }
    let meet_failure = if table[frame.top_ix()] != frame.top_ix() {
        Some(vec![e(frame.top_ix())])
    } else {
        pairs(n)
            .find(|&(x, y)| table[frame.meet_ix(x, y)] != frame.meet_ix(table[x], table[y]))
            .map(|(x, y)| vec![e(x), e(y)])
    };
    if let Some(witness) = meet_failure {
        violations.push(Violation {
            law: Law::MeetPreserving,
            witness,
        });
    }
    if let Some((x, y)) = pairs(n).find(|&(x, y)| frame.le_ix(x, y) && !frame.le_ix(table[x], table[y])) {
        violations.push(Violation {
            law: Law::Monotone,
            witness: vec![e(x), e(y)],
        });
    }
    Ok(NucleusReport {
        valid: violations.is_empty(),
        violations,
    })
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

/// Every nucleus on `frame`, ordered lexicographically by table.
pub fn enumerate_nuclei(frame: &Frame) -> Result<Vec<Nucleus>> {
    enumerate_nuclei_with(frame, EnumLimits::default())
}

/// Enumerates nuclei through their sets of fixed points.
///
/// The fixed-point sets of nuclei are exactly the subsets that contain
/// `⊤`, are closed under binary meets, and contain `a ⇒ s` whenever they
/// contain `s`. These form a closure system, walked here in lectic order
/// (Ganter's NextClosure), so each is produced exactly once.
pub fn enumerate_nuclei_with(frame: &Frame, limits: EnumLimits) -> Result<Vec<Nucleus>> {
    let n = frame.len();
    let cap = limits.max_carrier.min(64);
    if n > cap {
        return Err(Error::SizeLimitExceeded {
            what: "carrier for nucleus enumeration",
            limit: cap,
            actual: n,
        });
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    let mut current = close(frame, 0);
    loop {
        if out.len() == limits.max_nuclei {
            return Err(Error::SizeLimitExceeded {
                what: "number of nuclei",
                limit: limits.max_nuclei,
                actual: limits.max_nuclei + 1,
            });
        }
        let table = table_from_fixed(frame, current);
        let report = validate_table(frame, &table)?;
        if !report.valid {
            return Err(Error::InternalInvariant(format!(
                "enumerated fixed-point set yields a non-nucleus: {}",
                report.describe(frame)
            )));
        }
        out.push(Nucleus::trusted(frame, table));
        if current == full {
            break;
        }
        current = match next_closure(frame, current, n) {
            Some(next) => next,
            None => break,
        };
    }
    out.sort_by(|a, b| a.table.cmp(&b.table));
    Ok(out)
}

fn next_closure(frame: &Frame, current: u64, n: usize) -> Option<u64> {
    for i in (0..n).rev() {
        let bit = 1u64 << i;
        if current & bit != 0 {
            continue;
        }
        let lower = bit - 1;
        let candidate = close(frame, (current & lower) | bit);
        if candidate & lower == current & lower {
            return Some(candidate);
        }
    }
    None
}

/// Smallest set containing `seed` and `⊤` that is closed under meets and
/// under `s ↦ a ⇒ s`.
fn close(frame: &Frame, seed: u64) -> u64 {
    let n = frame.len();
    let mut set = 0u64;
    let mut pending: Vec<usize> = (0..n).filter(|&i| seed >> i & 1 == 1).collect();
    pending.push(frame.top_ix());
    while let Some(s) = pending.pop() {
        if set >> s & 1 == 1 {
            continue;
        }
        set |= 1u64 << s;
        for a in 0..n {
            let imp = frame.implies_ix(a, s);
            if set >> imp & 1 == 0 {
                pending.push(imp);
            }
            if set >> a & 1 == 1 {
                let m = frame.meet_ix(a, s);
                if set >> m & 1 == 0 {
                    pending.push(m);
                }
            }
        }
    }
    set
}

fn table_from_fixed(frame: &Frame, fixed: u64) -> Vec<usize> {
    let n = frame.len();
    (0..n)
        .map(|x| frame.meet_all_ix((0..n).filter(|&s| fixed >> s & 1 == 1 && frame.le_ix(x, s))))
        .collect()
}

/// Pointwise order: `j(x) <= k(x)` for every `x`.
pub fn nucleus_leq(j: &Nucleus, k: &Nucleus) -> Result<bool> {
    if j.frame != k.frame {
        return Err(Error::FrameMismatch);
    }
    Ok((0..j.frame.len()).all(|x| j.frame.le_ix(j.table[x], k.table[x])))
}

/// Least upper bound of `js` in the frame of nuclei, found by scanning
/// the enumeration for the least common upper bound.
pub fn sup_nuclei(frame: &Frame, js: &[Nucleus]) -> Result<Nucleus> {
    if js.iter().any(|j| j.frame() != frame) {
        return Err(Error::FrameMismatch);
    }
    sup_among(&enumerate_nuclei(frame)?, js)
}

/// [`sup_nuclei`] over a precomputed enumeration of all nuclei.
pub fn sup_among(all: &[Nucleus], js: &[Nucleus]) -> Result<Nucleus> {
    let mut upper = Vec::new();
    for k in all {
        let mut dominates = true;
        for j in js {
            if !nucleus_leq(j, k)? {
                dominates = false;
                break;
            }
        }
        if dominates {
            upper.push(k);
        }
    }
    for cand in &upper {
        if upper.iter().all(|k| nucleus_leq(cand, k).unwrap_or(false)) {
            return Ok((*cand).clone());
        }
    }
    Err(Error::InternalInvariant("no least common upper bound among enumerated nuclei".into()))
}

/// Named nuclei available on every frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NucleusKind {
    Identity,
    /// Constantly `⊤`.
    Top,
    /// `s ↦ p ⇒ s`.
    Open(Elem),
    /// `s ↦ p ∨ s`.
    Closed(Elem),
    DoubleNegation,
}

pub fn canonical_nucleus(frame: &Frame, kind: NucleusKind) -> Result<Nucleus> {
    let n = frame.len();
    let table: Vec<usize> = match kind {
        NucleusKind::Identity => (0..n).collect(),
        NucleusKind::Top => vec![frame.top_ix(); n],
        NucleusKind::Open(p) => {
            let p = frame.index(p)?;
            (0..n).map(|s| frame.implies_ix(p, s)).collect()
        }
        NucleusKind::Closed(p) => {
            let p = frame.index(p)?;
            (0..n).map(|s| frame.join_ix(p, s)).collect()
        }
        NucleusKind::DoubleNegation => (0..n).map(|s| frame.neg_ix(frame.neg_ix(s))).collect(),
    };
    Ok(Nucleus::trusted(frame, table))
}

/// Elements sent to `⊤`.
pub fn dense_elements(j: &Nucleus) -> Vec<Elem> {
    let top = j.frame.top_ix();
    (0..j.frame.len())
        .filter(|&s| j.table[s] == top)
        .map(|s| j.frame.elem(s))
        .collect()
}

/// The frame of fixed points of a nucleus, together with its inclusion
/// into the ambient frame.
///
/// The fixed points are presented as the downset frame of their
/// join-irreducible elements, each labelled by its ambient labels joined
/// with `+`. Meets and implications agree with the ambient ones, joins are
/// `j(a ∨ b)`.
#[derive(Clone, Debug)]
pub struct FixedPointFrame {
    pub frame: Frame,
    inclusion: Vec<usize>,
}

impl FixedPointFrame {
    /// Ambient element corresponding to a fixed-point-frame element.
    pub fn include(&self, e: Elem) -> Result<usize> {
        Ok(self.inclusion[self.frame.index(e)?])
    }

    /// Ambient index for each carrier position of the fixed-point frame.
    pub fn inclusion(&self) -> &[usize] {
        &self.inclusion
    }

    /// The fixed-point-frame element for an ambient fixed point.
    pub fn restrict(&self, ambient: usize) -> Option<Elem> {
        self.inclusion.iter().position(|&a| a == ambient).map(|i| self.frame.elem(i))
    }
}

pub fn fixed_points_frame(j: &Nucleus) -> FixedPointFrame {
    let f = &j.frame;
    let fixed: Vec<usize> = (0..f.len()).filter(|&x| j.is_fixed(x)).collect();
    let fjoin = |xs: &mut dyn Iterator<Item = usize>| j.table[f.join_all_ix(xs)];
    let irreducible: Vec<usize> = fixed
        .iter()
        .copied()
        .filter(|&x| {
            let below = fjoin(&mut fixed.iter().copied().filter(|&y| y != x && f.le_ix(y, x)));
            below != x
        })
        .collect();
    let labels: Vec<String> = irreducible.iter().map(|&x| f.labels_ix(x).join("+")).collect();
    let mut pairs = Vec::new();
    for (a, &x) in irreducible.iter().enumerate() {
        for (b, &y) in irreducible.iter().enumerate() {
            if a != b && f.le_ix(x, y) {
                pairs.push((labels[a].clone(), labels[b].clone()));
            }
        }
    }
    let poset = Poset::from_relation(&labels, &pairs).expect("suborder of a poset");
    let frame = Frame::downsets(&poset).expect("fixed points are no more than the ambient carrier");
    let inclusion: Vec<usize> = (0..frame.len())
        .map(|i| {
            let members = crate::frame::bits(frame.bits_of(i)).map(|k| irreducible[k]);
            fjoin(&mut members.into_iter())
        })
        .collect();
    debug_assert_eq!(
        {
            let mut s = inclusion.clone();
            s.sort();
            s
        },
        fixed
    );
    FixedPointFrame { frame, inclusion }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega2() -> Frame {
        Frame::downsets(&Poset::chain(1)).unwrap()
    }

    fn omega3() -> Frame {
        Frame::downsets(&Poset::chain(2)).unwrap()
    }

    fn omega4() -> Frame {
        Frame::downsets(&Poset::antichain(2)).unwrap()
    }

    fn table(f: &Frame, ixs: &[usize]) -> Vec<Elem> {
        ixs.iter().map(|&i| f.elem(i)).collect()
    }

    /// Every inflationary table, filtered through validation.
    fn brute_force(f: &Frame) -> Vec<Vec<usize>> {
        let n = f.len();
        let ups: Vec<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| f.le_ix(x, y)).collect()).collect();
        let mut out = Vec::new();
        let mut cur = vec![0; n];
        fn go(k: usize, f: &Frame, ups: &[Vec<usize>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == cur.len() {
                if validate_table(f, cur).unwrap().valid {
                    out.push(cur.clone());
                }
                return;
            }
            for &v in &ups[k] {
                cur[k] = v;
                go(k + 1, f, ups, cur, out);
            }
        }
        go(0, f, &ups, &mut cur, &mut out);
        out
    }

    #[test]
    fn identity_is_valid() {
        let f = omega4();
        let id: Vec<Elem> = f.elements().collect();
        assert!(validate_nucleus(&f, &id).unwrap().valid);
    }

    #[test]
    fn non_meet_preserving_closure_is_rejected() {
        // ⊥↦⊥, a↦⊤, b↦b, ⊤↦⊤
        let f = omega4();
        let report = validate_nucleus(&f, &table(&f, &[0, 3, 2, 3])).unwrap();
        assert!(!report.valid);
        assert_eq!(report.violations.len(), 1);
        let v = report.violated(Law::MeetPreserving).unwrap();
        assert_eq!(v.witness, vec![f.elem(1), f.elem(2)]);
    }

    #[test]
    fn closed_nucleus_on_chain_is_valid() {
        let f = omega3();
        assert!(validate_nucleus(&f, &table(&f, &[1, 1, 2])).unwrap().valid);
    }

    #[test]
    fn each_law_is_detected() {
        let f = omega3();
        let r = validate_nucleus(&f, &table(&f, &[0, 0, 2])).unwrap();
        assert!(r.violated(Law::Inflationary).is_some());
        let f4 = omega4();
        // ⊥↦a, a↦⊤, b↦⊤, ⊤↦⊤: a is not fixed though it is an image
        let r = validate_nucleus(&f4, &table(&f4, &[1, 3, 3, 3])).unwrap();
        assert!(r.violated(Law::Idempotent).is_some());
        let r = validate_nucleus(&f, &table(&f, &[2, 1, 2])).unwrap();
        assert!(r.violated(Law::Monotone).is_some());
        assert!(matches!(validate_table(&f, &[0, 1]), Err(Error::NotTotal { .. })));
        let other = omega3();
        assert!(matches!(validate_nucleus(&f, &table(&other, &[0, 1, 2])), Err(Error::FrameMismatch)));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_nuclei(&omega2()).unwrap().len(), 2);
        let on3 = enumerate_nuclei(&omega3()).unwrap();
        let tables: Vec<&[usize]> = on3.iter().map(|j| j.table_ix()).collect();
        assert_eq!(tables, vec![&[0, 1, 2][..], &[0, 2, 2], &[1, 1, 2], &[2, 2, 2]]);
        // brute force on the diamond frame gives 4 as well
        assert_eq!(brute_force(&omega4()).len(), 4);
        assert_eq!(enumerate_nuclei(&omega4()).unwrap().len(), 4);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for p in crate::frame::labeled_posets(3) {
            let f = Frame::downsets(&p).unwrap();
            let fast: Vec<Vec<usize>> = enumerate_nuclei(&f).unwrap().iter().map(|j| j.table_ix().to_vec()).collect();
            assert_eq!(fast, brute_force(&f), "{p:?}");
        }
    }

    #[test]
    fn enumeration_limits() {
        let f = Frame::downsets(&Poset::chain(64)).unwrap();
        assert!(matches!(enumerate_nuclei(&f), Err(Error::SizeLimitExceeded { .. })));
        let f = Frame::downsets(&Poset::antichain(3)).unwrap();
        let limits = EnumLimits {
            max_carrier: 64,
            max_nuclei: 3,
        };
        assert!(matches!(enumerate_nuclei_with(&f, limits), Err(Error::SizeLimitExceeded { .. })));
    }

    #[test]
    fn order_and_sup_on_chain() {
        let f = omega3();
        let m = f.elem(1);
        let id = canonical_nucleus(&f, NucleusKind::Identity).unwrap();
        let top = canonical_nucleus(&f, NucleusKind::Top).unwrap();
        let closed = canonical_nucleus(&f, NucleusKind::Closed(m)).unwrap();
        let dn = canonical_nucleus(&f, NucleusKind::DoubleNegation).unwrap();
        assert_eq!(dn.table_ix(), &[0, 2, 2]);
        for j in enumerate_nuclei(&f).unwrap() {
            assert!(nucleus_leq(&id, &j).unwrap());
            assert!(nucleus_leq(&j, &top).unwrap());
        }
        assert!(!nucleus_leq(&closed, &dn).unwrap());
        assert!(!nucleus_leq(&dn, &closed).unwrap());
        assert_eq!(sup_nuclei(&f, &[closed.clone(), dn.clone()]).unwrap(), top);
        assert_eq!(sup_nuclei(&f, std::slice::from_ref(&dn)).unwrap(), dn);
        assert_eq!(sup_nuclei(&f, &[id.clone(), closed.clone()]).unwrap(), closed);
        assert_eq!(sup_nuclei(&f, &[]).unwrap(), id);
    }

    #[test]
    fn sup_matches_intersection_of_fixed_sets() {
        let f = Frame::downsets(&Poset::diamond()).unwrap();
        let all = enumerate_nuclei(&f).unwrap();
        for a in &all {
            for b in &all {
                let s = sup_nuclei(&f, &[a.clone(), b.clone()]).unwrap();
                let fixed: Vec<usize> = (0..f.len()).filter(|&x| a.is_fixed(x) && b.is_fixed(x)).collect();
                let expected: Vec<usize> = (0..f.len()).filter(|&x| s.is_fixed(x)).collect();
                assert_eq!(fixed, expected);
            }
        }
    }

    #[test]
    fn open_nuclei_at_extremes() {
        let f = omega4();
        let id = canonical_nucleus(&f, NucleusKind::Identity).unwrap();
        let top = canonical_nucleus(&f, NucleusKind::Top).unwrap();
        assert_eq!(canonical_nucleus(&f, NucleusKind::Open(f.top())).unwrap(), id);
        assert_eq!(canonical_nucleus(&f, NucleusKind::Open(f.bot())).unwrap(), top);
        for p in f.elements() {
            for kind in [NucleusKind::Open(p), NucleusKind::Closed(p)] {
                let j = canonical_nucleus(&f, kind).unwrap();
                assert!(validate_table(&f, j.table_ix()).unwrap().valid);
            }
        }
    }

    #[test]
    fn dense_sets() {
        let f = omega3();
        let id = canonical_nucleus(&f, NucleusKind::Identity).unwrap();
        assert_eq!(dense_elements(&id), vec![f.top()]);
        let top = canonical_nucleus(&f, NucleusKind::Top).unwrap();
        assert_eq!(dense_elements(&top).len(), 3);
        let dn = canonical_nucleus(&f, NucleusKind::DoubleNegation).unwrap();
        assert_eq!(dense_elements(&dn), vec![f.elem(1), f.elem(2)]);
    }

    #[test]
    fn fixed_point_frames() {
        let f = omega3();
        let id = canonical_nucleus(&f, NucleusKind::Identity).unwrap();
        let fp = fixed_points_frame(&id);
        assert_eq!(fp.frame.len(), 3);
        let top = canonical_nucleus(&f, NucleusKind::Top).unwrap();
        assert_eq!(fixed_points_frame(&top).frame.len(), 1);
        let dn = canonical_nucleus(&f, NucleusKind::DoubleNegation).unwrap();
        let fp = fixed_points_frame(&dn);
        assert_eq!(fp.frame.len(), 2);
        assert_eq!(fp.inclusion(), &[0, 2]);
    }

    #[test]
    fn fixed_point_frames_inherit_operations() {
        for p in crate::frame::labeled_posets(3) {
            let f = Frame::downsets(&p).unwrap();
            for j in enumerate_nuclei(&f).unwrap() {
                let fp = fixed_points_frame(&j);
                let g = &fp.frame;
                assert!(g.check_laws().is_empty());
                let inc = fp.inclusion();
                for a in 0..g.len() {
                    for b in 0..g.len() {
                        assert_eq!(inc[g.meet_ix(a, b)], f.meet_ix(inc[a], inc[b]));
                        assert_eq!(inc[g.implies_ix(a, b)], f.implies_ix(inc[a], inc[b]));
                        assert_eq!(inc[g.join_ix(a, b)], j.apply_ix(f.join_ix(inc[a], inc[b])));
                        assert_eq!(g.le_ix(a, b), f.le_ix(inc[a], inc[b]));
                    }
                }
            }
        }
    }

    #[test]
    fn nuclei_are_sub_implicative() {
        let f = Frame::downsets(&Poset::diamond()).unwrap();
        for j in enumerate_nuclei(&f).unwrap() {
            for a in 0..f.len() {
                for b in 0..f.len() {
                    let lhs = j.apply_ix(f.implies_ix(a, b));
                    let rhs = f.implies_ix(j.apply_ix(a), j.apply_ix(b));
                    assert!(f.le_ix(lhs, rhs));
                }
            }
        }
    }
}
