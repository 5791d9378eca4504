//! Oracle modalities computed two ways: as least fixed points by Kleene
//! iteration, and as meets of prefixed points.

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::nucleus::Nucleus;

use super::container::{PropContainer, Shape};

/// A monotone map on a frame that need not be a nucleus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrenucleusMap {
    frame: Frame,
    table: Vec<usize>,
}

impl PrenucleusMap {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn apply_ix(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table_ix(&self) -> &[usize] {
        &self.table
    }

    pub fn is_monotone(&self) -> bool {
        let n = self.frame.len();
        (0..n).all(|x| (0..n).all(|y| !self.frame.le_ix(x, y) || self.frame.le_ix(self.table[x], self.table[y])))
    }

    /// `self(x) <= j(x)` for all `x`.
    pub fn below(&self, j: &Nucleus) -> Result<bool> {
        if j.frame() != &self.frame {
            return Err(Error::FrameMismatch);
        }
        Ok((0..self.frame.len()).all(|x| self.frame.le_ix(self.table[x], j.apply_ix(x))))
    }
}

/// `⋁_a E(a) ∧ (P(a) ⇒ t)`: what follows from asking one query.
fn single_query(frame: &Frame, shapes: &[Shape], t: usize) -> usize {
    frame.join_all_ix(
        shapes
            .iter()
            .map(|s| frame.meet_ix(s.extent, frame.implies_ix(s.pred, t))),
    )
}

/// The map `t ↦ ⋁_a E(a) ∧ (P(a) ⇒ t)`.
pub fn instance_prenucleus(c: &PropContainer) -> PrenucleusMap {
    let frame = c.frame();
    let table = (0..frame.len()).map(|t| single_query(frame, c.shapes(), t)).collect();
    PrenucleusMap {
        frame: frame.clone(),
        table,
    }
}

/// The oracle modality of `c`.
///
/// For each `s` this iterates `t ↦ s ∨ ⋁_a E(a) ∧ (P(a) ⇒ t)` starting at
/// `s`. The map is monotone and above `s`, so the iterates increase and
/// reach the least fixed point within `|carrier|` steps.
pub fn oracle_modality(c: &PropContainer) -> Nucleus {
    let frame = c.frame();
    let table = (0..frame.len())
        .map(|s| {
            let mut t = s;
            loop {
                let next = frame.join_ix(s, single_query(frame, c.shapes(), t));
                if next == t {
                    break t;
                }
                t = next;
            }
        })
        .collect();
    Nucleus::trusted(frame, table)
}

/// `r` is a prefixed point for every `s <= r`: `E(a) ∧ (P(a) ⇒ r) <= r`.
fn is_prefixed(frame: &Frame, shapes: &[Shape], r: usize) -> bool {
    shapes
        .iter()
        .all(|a| frame.le_ix(frame.meet_ix(a.extent, frame.implies_ix(a.pred, r)), r))
}

/// The oracle modality as the meet of all prefixed points above each `s`.
/// Independent of the iteration in [`oracle_modality`].
pub fn oracle_modality_bruteforce(c: &PropContainer) -> Nucleus {
    let frame = c.frame();
    let n = frame.len();
    let prefixed: Vec<bool> = (0..n).map(|r| is_prefixed(frame, c.shapes(), r)).collect();
    let table = (0..n)
        .map(|s| frame.meet_all_ix((0..n).filter(|&r| prefixed[r] && frame.le_ix(s, r))))
        .collect();
    Nucleus::trusted(frame, table)
}

/// `j` forces `c` when `E(a) <= j(P(a))` for every shape.
pub fn forces(j: &Nucleus, c: &PropContainer) -> Result<bool> {
    if j.frame() != c.frame() {
        return Err(Error::FrameMismatch);
    }
    let f = c.frame();
    Ok(c.shapes().iter().all(|s| f.le_ix(s.extent, j.apply_ix(s.pred))))
}

/// The container of `j`-dense propositions: one shape per element `s`,
/// existing to the extent `j(s)` and answered by `s ∧ j(s)`.
pub fn pred_of_nucleus(j: &Nucleus) -> PropContainer {
    let f = j.frame();
    let shapes = (0..f.len())
        .map(|s| Shape {
            label: f.render_ix(s),
            extent: j.apply_ix(s),
            pred: f.meet_ix(s, j.apply_ix(s)),
        })
        .collect();
    PropContainer::from_shapes(f, shapes).expect("rendered labels are distinct")
}

/// `c` reduces to `d` by single queries: `E_c(a) <= ⋁_b E_d(b) ∧ (P_d(b) ⇒ P_c(a))`.
pub fn instance_reducible(c: &PropContainer, d: &PropContainer) -> Result<bool> {
    if c.frame() != d.frame() {
        return Err(Error::FrameMismatch);
    }
    let f = c.frame();
    Ok(c.shapes()
        .iter()
        .all(|a| f.le_ix(a.extent, single_query(f, d.shapes(), a.pred))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Poset;
    use crate::nucleus::{canonical_nucleus, enumerate_nuclei, validate_table, NucleusKind};
    use crate::oracle::container::all_containers;

    fn omega3() -> Frame {
        Frame::downsets(&Poset::chain(2)).unwrap()
    }

    fn omega4() -> Frame {
        Frame::downsets(&Poset::antichain(2)).unwrap()
    }

    #[test]
    fn prenucleus_examples() {
        let f = omega4();
        assert_eq!(instance_prenucleus(&PropContainer::empty(&f)).table_ix(), &[0, 0, 0, 0]);
        assert_eq!(instance_prenucleus(&PropContainer::realized(&f)).table_ix(), &[0, 1, 2, 3]);
        let c = PropContainer::global(&f, [("a0", f.elem(1))]).unwrap();
        let i = instance_prenucleus(&c);
        assert_eq!(i.apply_ix(0), 2);
        assert!(i.is_monotone());
    }

    #[test]
    fn trivial_oracles() {
        for f in [omega3(), omega4()] {
            let top = canonical_nucleus(&f, NucleusKind::Top).unwrap();
            let id = canonical_nucleus(&f, NucleusKind::Identity).unwrap();
            assert_eq!(oracle_modality(&PropContainer::counterexample(&f)), top);
            assert_eq!(oracle_modality_bruteforce(&PropContainer::counterexample(&f)), top);
            assert_eq!(oracle_modality(&PropContainer::realized(&f)), id);
            assert_eq!(oracle_modality_bruteforce(&PropContainer::empty(&f)), id);
        }
    }

    #[test]
    fn excluded_middle_gives_double_negation() {
        let f = omega3();
        let j = oracle_modality(&PropContainer::excluded_middle(&f));
        assert_eq!(j.table_ix(), &[0, 2, 2]);
        assert_eq!(j, canonical_nucleus(&f, NucleusKind::DoubleNegation).unwrap());
    }

    #[test]
    fn both_constructions_agree_on_chain() {
        let f = omega3();
        for k in 0..=2 {
            for c in all_containers(&f, k) {
                let j = oracle_modality(&c);
                assert_eq!(j, oracle_modality_bruteforce(&c), "{c:?}");
                assert!(validate_table(&f, j.table_ix()).unwrap().valid);
            }
        }
    }

    #[test]
    fn forcing_examples() {
        let f = omega3();
        let top = canonical_nucleus(&f, NucleusKind::Top).unwrap();
        let id = canonical_nucleus(&f, NucleusKind::Identity).unwrap();
        for c in all_containers(&f, 1) {
            assert!(forces(&top, &c).unwrap());
            let s = &c.shapes()[0];
            assert_eq!(forces(&id, &c).unwrap(), f.le_ix(s.extent, s.pred));
        }
        let dn = canonical_nucleus(&f, NucleusKind::DoubleNegation).unwrap();
        assert!(forces(&dn, &PropContainer::excluded_middle(&f)).unwrap());
        assert!(!forces(&id, &PropContainer::excluded_middle(&f)).unwrap());
    }

    #[test]
    fn pred_examples() {
        let f2 = Frame::downsets(&Poset::chain(1)).unwrap();
        let id = canonical_nucleus(&f2, NucleusKind::Identity).unwrap();
        let c = pred_of_nucleus(&id);
        let mut ep: Vec<(usize, usize)> = c.shapes().iter().map(|s| (s.extent, s.pred)).collect();
        ep.sort_by_key(|&(_, p)| p);
        assert_eq!(ep, vec![(0, 0), (1, 1)]);
        let top = canonical_nucleus(&f2, NucleusKind::Top).unwrap();
        let mut ep: Vec<(usize, usize)> = pred_of_nucleus(&top).shapes().iter().map(|s| (s.extent, s.pred)).collect();
        ep.sort_by_key(|&(_, p)| p);
        assert_eq!(ep, vec![(1, 0), (1, 1)]);

        let f = omega3();
        let closed = canonical_nucleus(&f, NucleusKind::Closed(f.elem(1))).unwrap();
        let c = pred_of_nucleus(&closed);
        let mut ep: Vec<(String, usize, usize)> =
            c.shapes().iter().map(|s| (s.label.clone(), s.extent, s.pred)).collect();
        ep.sort_by_key(|(_, _, p)| *p);
        assert_eq!(ep.iter().map(|(_, e, p)| (*e, *p)).collect::<Vec<_>>(), vec![(1, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn closed_nucleus_retracts_through_its_pred() {
        // the least fixed point at ⊥ is m, not ⊥
        let f = omega3();
        let closed = canonical_nucleus(&f, NucleusKind::Closed(f.elem(1))).unwrap();
        let back = oracle_modality(&pred_of_nucleus(&closed));
        assert_eq!(back.apply_ix(0), 1);
        assert_eq!(back, closed);
    }

    #[test]
    fn global_dense_elements_alone_do_not_retract() {
        // without extents only the global dense element ⊤ survives,
        // which yields the identity instead of the closed nucleus
        let f = omega3();
        let closed = canonical_nucleus(&f, NucleusKind::Closed(f.elem(1))).unwrap();
        let globals: Vec<(String, crate::frame::Elem)> = (0..f.len())
            .filter(|&s| closed.apply_ix(s) == f.top_ix())
            .map(|s| (f.render_ix(s), f.elem(s)))
            .collect();
        let c = PropContainer::global(&f, globals).unwrap();
        assert_eq!(oracle_modality(&c), canonical_nucleus(&f, NucleusKind::Identity).unwrap());
    }

    #[test]
    fn instance_reducibility_examples() {
        let f = omega4();
        let cx = PropContainer::counterexample(&f);
        let empty = PropContainer::empty(&f);
        for c in all_containers(&f, 1) {
            assert!(instance_reducible(&c, &c).unwrap());
            assert!(instance_reducible(&c, &cx).unwrap());
            assert!(instance_reducible(&empty, &c).unwrap());
        }
    }

    #[test]
    fn oracle_is_below_open_of_full_axiom() {
        let f = Frame::downsets(&Poset::diamond()).unwrap();
        for c in all_containers(&f, 2).into_iter().filter(|c| c.is_global()) {
            let axiom = f.meet_all_ix(c.shapes().iter().map(|s| s.pred));
            let open = canonical_nucleus(&f, NucleusKind::Open(f.elem(axiom))).unwrap();
            assert!(crate::nucleus::nucleus_leq(&oracle_modality(&c), &open).unwrap());
        }
    }

    #[test]
    fn instance_map_is_below_oracle_modality() {
        let f = omega4();
        for c in all_containers(&f, 2) {
            assert!(instance_prenucleus(&c).below(&oracle_modality(&c)).unwrap());
        }
        let _ = enumerate_nuclei(&f).unwrap();
    }
}
