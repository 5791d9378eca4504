//! Finite Heyting frames presented as downset lattices of finite posets.
//!
//! A [`Frame`] is an immutable, cheaply clonable handle. Its elements are
//! [`Elem`] values that remember which frame they came from; mixing
//! elements of different frames is reported as [`Error::FrameMismatch`].
//! Internally every element is a bitset over the generating poset, and the
//! carrier is ordered by size and then by sorted label list, so `⊥` is
//! always index `0` and `⊤` is always the last index.

mod catalog;
mod poset;

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use catalog::{labeled_posets, posets_with_carrier_at_most, random_poset};
pub use poset::{Poset, PosetSpec, MAX_POSET_ELEMENTS};

/// Default bound on the number of downsets a frame may have.
pub const DEFAULT_MAX_CARRIER: usize = 1 << 16;

/// Frames up to this size get precomputed operation tables.
const TABLE_LIMIT: usize = 512;

static NEXT_FRAME_ID: AtomicU64 = AtomicU64::new(1);

/// An element of a particular [`Frame`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    frame: u64,
    ix: u32,
}

impl Elem {
    /// Position of the element in its frame's carrier.
    pub fn index(self) -> usize {
        self.ix as usize
    }

    pub fn frame_id(self) -> u64 {
        self.frame
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem#{}[{}]", self.frame, self.ix)
    }
}

/// The four Heyting operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeytingOp {
    Meet,
    Join,
    Implies,
    Neg,
}

struct Tables {
    meet: Vec<u32>,
    join: Vec<u32>,
    implies: Vec<u32>,
}

struct FrameData {
    id: u64,
    poset: Poset,
    sets: Vec<u128>,
    index: HashMap<u128, u32>,
    tables: Option<Tables>,
}

/// A finite frame: the downsets of a poset ordered by inclusion.
#[derive(Clone)]
pub struct Frame(Arc<FrameData>);

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Frame")
            .field("id", &self.0.id)
            .field("carrier", &self.len())
            .field("poset", &self.0.poset)
            .finish()
    }
}

impl Frame {
    /// The downset frame of `poset`, refusing carriers above
    /// [`DEFAULT_MAX_CARRIER`].
    pub fn downsets(poset: &Poset) -> Result<Frame> {
        Frame::downsets_with_limit(poset, DEFAULT_MAX_CARRIER)
    }

    pub fn downsets_with_limit(poset: &Poset, max_carrier: usize) -> Result<Frame> {
        let order = poset.linear_extension();
        let mut sets = Vec::new();
        enumerate_downsets(poset, &order, 0, 0, max_carrier, &mut sets)?;
        let mut keyed: Vec<(usize, Vec<&str>, u128)> = sets
            .into_iter()
            .map(|s| {
                let mut labels: Vec<&str> = bits(s).map(|i| poset.label(i)).collect();
                labels.sort_unstable();
                (s.count_ones() as usize, labels, s)
            })
            .collect();
        keyed.sort();
        let sets: Vec<u128> = keyed.into_iter().map(|(_, _, s)| s).collect();
        let index = sets.iter().enumerate().map(|(i, &s)| (s, i as u32)).collect();
        let mut data = FrameData {
            id: NEXT_FRAME_ID.fetch_add(1, Ordering::Relaxed),
            poset: poset.clone(),
            sets,
            index,
            tables: None,
        };
        let n = data.sets.len();
        if n <= TABLE_LIMIT {
            let mut meet = Vec::with_capacity(n * n);
            let mut join = Vec::with_capacity(n * n);
            let mut implies = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    meet.push(data.lookup(data.sets[a] & data.sets[b]));
                    join.push(data.lookup(data.sets[a] | data.sets[b]));
                    implies.push(data.lookup(data.implies_bits(data.sets[a], data.sets[b])));
                }
            }
            data.tables = Some(Tables { meet, join, implies });
        }
        Ok(Frame(Arc::new(data)))
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn poset(&self) -> &Poset {
        &self.0.poset
    }

    /// Number of elements in the carrier.
    pub fn len(&self) -> usize {
        self.0.sets.len()
    }

    /// Never true: every frame has at least `⊥ = ⊤`.
    pub fn is_empty(&self) -> bool {
        self.0.sets.is_empty()
    }

    pub fn bot(&self) -> Elem {
        self.elem(0)
    }

    pub fn top(&self) -> Elem {
        self.elem(self.len() - 1)
    }

    pub fn bot_ix(&self) -> usize {
        0
    }

    pub fn top_ix(&self) -> usize {
        self.len() - 1
    }

    /// The element at carrier position `ix`. Panics when out of range.
    pub fn elem(&self, ix: usize) -> Elem {
        assert!(ix < self.len(), "carrier index {ix} out of range");
        Elem {
            frame: self.0.id,
            ix: ix as u32,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.len()).map(move |i| self.elem(i))
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.frame == self.0.id && e.index() < self.len()
    }

    /// Carrier index of `e`, checking that it belongs here.
    pub fn index(&self, e: Elem) -> Result<usize> {
        if self.contains(e) {
            Ok(e.index())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    /// The downset behind carrier position `ix`.
    pub fn bits_of(&self, ix: usize) -> u128 {
        self.0.sets[ix]
    }

    /// Carrier position of a downset given as a bitset over the poset.
    pub fn ix_of_bits(&self, bits: u128) -> Option<usize> {
        self.0.index.get(&bits).map(|&i| i as usize)
    }

    pub fn le_ix(&self, a: usize, b: usize) -> bool {
        self.0.sets[a] & !self.0.sets[b] == 0
    }

    pub fn meet_ix(&self, a: usize, b: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.meet[a * self.len() + b] as usize,
            None => self.0.lookup(self.0.sets[a] & self.0.sets[b]) as usize,
        }
    }

    pub fn join_ix(&self, a: usize, b: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.join[a * self.len() + b] as usize,
            None => self.0.lookup(self.0.sets[a] | self.0.sets[b]) as usize,
        }
    }

    /// `a ⇒ b`, the largest `d` with `d ∧ a <= b`.
    pub fn implies_ix(&self, a: usize, b: usize) -> usize {
        match &self.0.tables {
            Some(t) => t.implies[a * self.len() + b] as usize,
            None => self.0.lookup(self.0.implies_bits(self.0.sets[a], self.0.sets[b])) as usize,
        }
    }

    pub fn neg_ix(&self, a: usize) -> usize {
        self.implies_ix(a, 0)
    }

    /// Meet of an arbitrary family; the empty meet is `⊤`.
    pub fn meet_all_ix<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(self.top_ix(), |acc, x| self.meet_ix(acc, x))
    }

    /// Join of an arbitrary family; the empty join is `⊥`.
    pub fn join_all_ix<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(0, |acc, x| self.join_ix(acc, x))
    }

    pub fn leq(&self, a: Elem, b: Elem) -> Result<bool> {
        Ok(self.le_ix(self.index(a)?, self.index(b)?))
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.heyting(HeytingOp::Meet, &[a, b])
    }

    pub fn join(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.heyting(HeytingOp::Join, &[a, b])
    }

    pub fn implies(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.heyting(HeytingOp::Implies, &[a, b])
    }

    pub fn neg(&self, a: Elem) -> Result<Elem> {
        self.heyting(HeytingOp::Neg, &[a])
    }

    /// Applies a Heyting operation. Meet and join take any number of
    /// arguments, implication exactly two and negation exactly one.
    pub fn heyting(&self, op: HeytingOp, args: &[Elem]) -> Result<Elem> {
        let ixs = args.iter().map(|&e| self.index(e)).collect::<Result<Vec<_>>>()?;
        let out = match op {
            HeytingOp::Meet => self.meet_all_ix(ixs),
            HeytingOp::Join => self.join_all_ix(ixs),
            HeytingOp::Implies => match ixs[..] {
                [a, b] => self.implies_ix(a, b),
                _ => {
                    return Err(Error::Arity {
                        op: "implies",
                        expected: "2",
                        got: ixs.len(),
                    })
                }
            },
            HeytingOp::Neg => match ixs[..] {
                [a] => self.neg_ix(a),
                _ => {
                    return Err(Error::Arity {
                        op: "neg",
                        expected: "1",
                        got: ixs.len(),
                    })
                }
            },
        };
        Ok(self.elem(out))
    }

    /// Sorted poset labels making up the downset at `ix`.
    pub fn labels_ix(&self, ix: usize) -> Vec<String> {
        let mut out: Vec<String> = bits(self.0.sets[ix])
            .map(|i| self.0.poset.label(i).to_string())
            .collect();
        out.sort();
        out
    }

    pub fn labels(&self, e: Elem) -> Result<Vec<String>> {
        Ok(self.labels_ix(self.index(e)?))
    }

    /// Set-style rendering such as `{p,q}`; `{}` is the bottom element.
    pub fn render_ix(&self, ix: usize) -> String {
        format!("{{{}}}", self.labels_ix(ix).join(","))
    }

    pub fn render(&self, e: Elem) -> Result<String> {
        Ok(self.render_ix(self.index(e)?))
    }

    /// Finds the element whose downset is exactly `labels`.
    pub fn elem_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Elem> {
        let mut bits = 0u128;
        for l in labels {
            let i = self
                .0
                .poset
                .index_of(l.as_ref())
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
            bits |= 1u128 << i;
        }
        self.ix_of_bits(bits).map(|i| self.elem(i)).ok_or_else(|| {
            let names: Vec<&str> = labels.iter().map(|l| l.as_ref()).collect();
            Error::Format(format!("[{}] is not a downset", names.join(",")))
        })
    }

    /// Parses `{p,q}`, `p,q`, a JSON label array, or the empty forms `{}` / `[]`.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        if t.starts_with('[') {
            let labels: Vec<String> = serde_json::from_str(t)?;
            return self.elem_of_labels(&labels);
        }
        let inner = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')).unwrap_or(t);
        let labels: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        self.elem_of_labels(&labels)
    }

    /// Exhaustively checks residuation, distributivity, and the lattice
    /// laws for meet and join. Cubic in the carrier size.
    pub fn check_laws(&self) -> Vec<LawFailure> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.meet_ix(a, b) != self.meet_ix(b, a) {
                    out.push(self.failure("meet commutative", &[a, b]));
                }
                if self.join_ix(a, b) != self.join_ix(b, a) {
                    out.push(self.failure("join commutative", &[a, b]));
                }
                if self.meet_ix(a, self.join_ix(a, b)) != a {
                    out.push(self.failure("absorption", &[a, b]));
                }
                for c in 0..n {
                    let lhs = self.le_ix(self.meet_ix(a, b), c);
                    let rhs = self.le_ix(a, self.implies_ix(b, c));
                    if lhs != rhs {
                        out.push(self.failure("residuation", &[a, b, c]));
                    }
                    let d1 = self.meet_ix(a, self.join_ix(b, c));
                    let d2 = self.join_ix(self.meet_ix(a, b), self.meet_ix(a, c));
                    if d1 != d2 {
                        out.push(self.failure("distributivity", &[a, b, c]));
                    }
                    if self.meet_ix(a, self.meet_ix(b, c)) != self.meet_ix(self.meet_ix(a, b), c) {
                        out.push(self.failure("meet associative", &[a, b, c]));
                    }
                    if self.join_ix(a, self.join_ix(b, c)) != self.join_ix(self.join_ix(a, b), c) {
                        out.push(self.failure("join associative", &[a, b, c]));
                    }
                }
            }
            if self.meet_ix(a, a) != a || self.join_ix(a, a) != a {
                out.push(self.failure("idempotence", &[a]));
            }
            if self.meet_ix(a, self.top_ix()) != a || self.join_ix(a, 0) != a {
                out.push(self.failure("units", &[a]));
            }
        }
        out
    }

    fn failure(&self, law: &'static str, ixs: &[usize]) -> LawFailure {
        LawFailure {
            law,
            witness: ixs.iter().map(|&i| self.render_ix(i)).collect(),
        }
    }
}

/// A violated frame law with the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawFailure {
    pub law: &'static str,
    pub witness: Vec<String>,
}

impl FrameData {
    fn lookup(&self, bits: u128) -> u32 {
        *self.index.get(&bits).expect("downsets are closed under the lattice operations")
    }

    fn implies_bits(&self, a: u128, b: u128) -> u128 {
        let mut out = 0u128;
        for x in 0..self.poset.len() {
            if self.poset.down(x) & a & !b == 0 {
                out |= 1u128 << x;
            }
        }
        out
    }
}

/// Indices of set bits, lowest first.
pub(crate) fn bits(mut s: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(i)
        }
    })
}

fn enumerate_downsets(
    poset: &Poset,
    order: &[usize],
    k: usize,
    current: u128,
    limit: usize,
    out: &mut Vec<u128>,
) -> Result<()> {
    if k == order.len() {
        if out.len() == limit {
            return Err(Error::SizeLimitExceeded {
                what: "frame carrier",
                limit,
                actual: limit + 1,
            });
        }
        out.push(current);
        return Ok(());
    }
    let x = order[k];
    enumerate_downsets(poset, order, k + 1, current, limit, out)?;
    let strictly_below = poset.down(x) & !(1u128 << x);
    if strictly_below & !current == 0 {
        enumerate_downsets(poset, order, k + 1, current | 1u128 << x, limit, out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega3() -> Frame {
        Frame::downsets(&Poset::from_relation(&["p", "q"], &[("p", "q")]).unwrap()).unwrap()
    }

    fn omega4() -> Frame {
        Frame::downsets(&Poset::antichain(2)).unwrap()
    }

    /// All subsets of the poset that are downward closed, by brute force.
    fn brute_downsets(p: &Poset) -> Vec<u128> {
        let n = p.len();
        let mut out = Vec::new();
        for s in 0u128..(1u128 << n) {
            let closed = (0..n).all(|x| s >> x & 1 == 0 || p.down(x) & !s == 0);
            if closed {
                out.push(s);
            }
        }
        out
    }

    /// Residual by scanning: the maximum `d` with `d ∧ b <= c`.
    fn brute_implies(f: &Frame, b: usize, c: usize) -> usize {
        let cands: Vec<usize> = (0..f.len()).filter(|&d| f.le_ix(f.meet_ix(d, b), c)).collect();
        let max: Vec<usize> = cands.iter().copied().filter(|&d| cands.iter().all(|&e| f.le_ix(e, d))).collect();
        assert_eq!(max.len(), 1);
        max[0]
    }

    #[test]
    fn small_frames_have_expected_shapes() {
        let one = Frame::downsets(&Poset::from_relation::<_, &str>(&["p"], &[]).unwrap()).unwrap();
        assert_eq!(one.len(), 2);
        let f3 = omega3();
        assert_eq!(f3.len(), 3);
        assert_eq!(f3.labels_ix(1), vec!["p"]);
        let f4 = omega4();
        assert_eq!(f4.len(), 4);
        assert!(!f4.le_ix(1, 2) && !f4.le_ix(2, 1));
        let empty = Frame::downsets(&Poset::from_relation::<&str, &str>(&[], &[]).unwrap()).unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty.bot(), empty.top());
    }

    #[test]
    fn carrier_matches_brute_force_downsets() {
        for p in [Poset::diamond(), Poset::chain(4), Poset::antichain(3), Poset::chain(0)] {
            let f = Frame::downsets(&p).unwrap();
            let mut expected = brute_downsets(&p);
            expected.sort();
            let mut got: Vec<u128> = (0..f.len()).map(|i| f.bits_of(i)).collect();
            got.sort();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn implication_examples() {
        let f3 = omega3();
        let m = f3.elem(1);
        assert_eq!(f3.implies(m, f3.bot()).unwrap(), f3.bot());
        let f4 = omega4();
        let (a, b) = (f4.elem(1), f4.elem(2));
        assert_eq!(f4.neg(a).unwrap(), b);
        assert_eq!(f4.neg(b).unwrap(), a);
        for x in f4.elements() {
            assert_eq!(f4.meet(f4.top(), x).unwrap(), x);
        }
    }

    #[test]
    fn implication_table_matches_scan() {
        for p in [Poset::diamond(), Poset::chain(3), Poset::antichain(3)] {
            let f = Frame::downsets(&p).unwrap();
            for b in 0..f.len() {
                for c in 0..f.len() {
                    assert_eq!(f.implies_ix(b, c), brute_implies(&f, b, c));
                }
            }
        }
    }

    #[test]
    fn untabled_frames_agree_with_tabled_ops() {
        // 10-antichain has 1024 downsets, beyond the table limit
        let big = Frame::downsets(&Poset::antichain(10)).unwrap();
        assert_eq!(big.len(), 1024);
        let x = big.parse_elem("{a1,a3}").unwrap().index();
        let y = big.parse_elem("{a3,a4}").unwrap().index();
        assert_eq!(big.render_ix(big.meet_ix(x, y)), "{a3}");
        assert_eq!(big.render_ix(big.join_ix(x, y)), "{a1,a3,a4}");
        let imp = big.implies_ix(x, y);
        assert_eq!(big.meet_ix(imp, x), big.meet_ix(x, y));
    }

    #[test]
    fn size_limit_is_enforced() {
        let err = Frame::downsets_with_limit(&Poset::antichain(4), 15).unwrap_err();
        assert!(matches!(err, Error::SizeLimitExceeded { .. }));
        assert!(Frame::downsets_with_limit(&Poset::antichain(4), 16).is_ok());
    }

    #[test]
    fn cross_frame_operations_are_rejected() {
        let f = omega3();
        let g = omega3();
        assert!(matches!(f.meet(f.top(), g.top()), Err(Error::FrameMismatch)));
        assert!(matches!(f.heyting(HeytingOp::Implies, &[f.top()]), Err(Error::Arity { .. })));
    }

    #[test]
    fn parse_and_render() {
        let f = Frame::downsets(&Poset::diamond()).unwrap();
        let e = f.parse_elem("[\"b\",\"l\"]").unwrap();
        assert_eq!(f.render(e).unwrap(), "{b,l}");
        assert_eq!(f.parse_elem("b, l").unwrap(), e);
        assert_eq!(f.parse_elem("{}").unwrap(), f.bot());
        assert!(f.parse_elem("{l}").is_err());
    }

    #[test]
    fn laws_hold_on_small_frames() {
        for p in labeled_posets(3) {
            let f = Frame::downsets(&p).unwrap();
            assert!(f.check_laws().is_empty(), "{p:?}");
        }
    }
}
