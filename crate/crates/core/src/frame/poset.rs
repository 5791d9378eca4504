use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest poset accepted; downsets are stored as `u128` bitsets.
pub const MAX_POSET_ELEMENTS: usize = 128;

/// A finite poset on string labels.
///
/// The order is stored as one bitset per element holding its principal
/// downset, so `y <= x` iff bit `y` of `below[x]` is set.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    below: Vec<u128>,
}

/// The JSON shape of a poset file: `{"elements": [...], "le": [[a, b], ...]}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub le: Vec<(String, String)>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `pairs` over `labels`.
    ///
    /// A pair `(a, b)` reads `a <= b`. Non-transitive input is closed, a
    /// cycle through distinct labels is rejected.
    pub fn from_relation<S, P>(labels: &[S], pairs: &[(P, P)]) -> Result<Poset>
    where
        S: AsRef<str>,
        P: AsRef<str>,
    {
        if labels.len() > MAX_POSET_ELEMENTS {
            return Err(Error::SizeLimitExceeded {
                what: "poset",
                limit: MAX_POSET_ELEMENTS,
                actual: labels.len(),
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        let mut owned = Vec::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            let l = l.as_ref().to_string();
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l));
            }
            owned.push(l);
        }
        let n = owned.len();
        let mut below: Vec<u128> = (0..n).map(|i| 1u128 << i).collect();
        for (a, b) in pairs {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownLabel(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownLabel(b.as_ref().to_string()))?;
            below[ib] |= 1u128 << ia;
        }
        // Warshall on bitsets.
        for k in 0..n {
            let bk = below[k];
            for row in below.iter_mut() {
                if *row >> k & 1 == 1 {
                    *row |= bk;
                }
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if below[x] >> y & 1 == 1 && below[y] >> x & 1 == 1 {
                    return Err(Error::AntisymmetryViolation(owned[x].clone(), owned[y].clone()));
                }
            }
        }
        Ok(Poset {
            labels: owned,
            index,
            below,
        })
    }

    pub fn from_spec(spec: &PosetSpec) -> Result<Poset> {
        Poset::from_relation(&spec.elements, &spec.le)
    }

    /// Strict order pairs, in label-index order.
    pub fn to_spec(&self) -> PosetSpec {
        let mut le = Vec::new();
        for b in 0..self.len() {
            for a in 0..self.len() {
                if a != b && self.le(a, b) {
                    le.push((self.labels[a].clone(), self.labels[b].clone()));
                }
            }
        }
        PosetSpec {
            elements: self.labels.clone(),
            le,
        }
    }

    pub fn chain(n: usize) -> Poset {
        let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let pairs: Vec<(String, String)> = labels.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        Poset::from_relation(&labels, &pairs).expect("a chain is a poset")
    }

    pub fn antichain(n: usize) -> Poset {
        let labels: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        Poset::from_relation::<_, &str>(&labels, &[]).expect("an antichain is a poset")
    }

    /// Four elements `b < l, r < t`.
    pub fn diamond() -> Poset {
        Poset::from_relation(
            &["b", "l", "r", "t"],
            &[("b", "l"), ("b", "r"), ("l", "t"), ("r", "t")],
        )
        .expect("the diamond is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// `a <= b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.below[b] >> a & 1 == 1
    }

    /// Principal downset of `x` as a bitset.
    pub fn down(&self, x: usize) -> u128 {
        self.below[x]
    }

    /// Elements listed so that every element comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.below[x].count_ones(), x));
        order
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = self.to_spec();
        f.debug_struct("Poset")
            .field("elements", &spec.elements)
            .field("le", &spec.le)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_singleton() {
        let p = Poset::from_relation::<&str, &str>(&[], &[]).unwrap();
        assert!(p.is_empty());
        let p = Poset::from_relation::<_, &str>(&["p"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.le(0, 0));
    }

    #[test]
    fn chain_is_transitively_closed() {
        let p = Poset::from_relation(&["p", "q", "r"], &[("p", "q"), ("q", "r")]).unwrap();
        // brute-force closure oracle: iterate composition to a fixed point
        let mut rel = [[false; 3]; 3];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        rel[0][1] = true;
        rel[1][2] = true;
        loop {
            let mut changed = false;
            for a in 0..3 {
                for b in 0..3 {
                    for c in 0..3 {
                        if rel[a][b] && rel[b][c] && !rel[a][c] {
                            rel[a][c] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for (a, row) in rel.iter().enumerate() {
            for (b, &expected) in row.iter().enumerate() {
                assert_eq!(p.le(a, b), expected, "{a} <= {b}");
            }
        }
        assert!(p.le(0, 2));
    }

    #[test]
    fn rejects_cycles_and_unknown_labels() {
        let err = Poset::from_relation(&["p", "q"], &[("p", "q"), ("q", "p")]).unwrap_err();
        assert!(matches!(err, Error::AntisymmetryViolation(..)));
        let err = Poset::from_relation(&["p"], &[("p", "z")]).unwrap_err();
        assert!(matches!(err, Error::UnknownLabel(l) if l == "z"));
        let err = Poset::from_relation::<_, &str>(&["p", "p"], &[]).unwrap_err();
        assert!(matches!(err, Error::DuplicateLabel(_)));
    }

    #[test]
    fn longer_cycle_is_rejected() {
        let err = Poset::from_relation(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap_err();
        assert!(matches!(err, Error::AntisymmetryViolation(..)));
    }

    #[test]
    fn spec_round_trip() {
        let p = Poset::diamond();
        let q = Poset::from_spec(&p.to_spec()).unwrap();
        assert_eq!(p, q);
    }
}
