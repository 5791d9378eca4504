//! Sheaves for the oracle modality of a Boolean predicate on finite shapes.
//!
//! A finite type `X` of size `xsize` is a sheaf when there is a structure
//! map `d a h` taking a shape and an answer-indexed family `h : P a → X`
//! such that
//!   (i)   `d` exists,
//!   (ii)  `d a h = h u` for every answer `u : P a`,
//!   (iii) `(P a → x = y)` implies `x = y`.
//! With `P a` a proposition, a family `h` is a single value when `P a`
//! holds and the empty family otherwise.

use std::fmt;

use serde::Serialize;

/// A structure map as a table: `tables[a][h]` is `d a h`, where `h`
/// ranges over `0..xsize` when `p(a)` holds and over the single empty
/// family `0` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureMap {
    pub xsize: usize,
    pub tables: Vec<Vec<usize>>,
}

impl StructureMap {
    pub fn apply(&self, a: usize, h: usize) -> usize {
        self.tables[a][h]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafClass {
    /// Some shape has no answer; only one-element types are sheaves.
    SingletonsOnly,
    /// Every shape is answered; every type is a sheaf.
    AllTypes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SheafCondition {
    #[serde(rename = "i")]
    Existence,
    #[serde(rename = "ii")]
    FirstEquality,
    #[serde(rename = "iii")]
    SecondEquality,
}

impl fmt::Display for SheafCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SheafCondition::Existence => "(i) no structure map exists",
            SheafCondition::FirstEquality => "(ii) first sheaf equality fails",
            SheafCondition::SecondEquality => "(iii) second sheaf equality fails",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafVerdict {
    Sheaf(StructureMap),
    NotSheaf(SheafCondition),
}

impl SheafVerdict {
    pub fn structure(&self) -> Option<&StructureMap> {
        match self {
            SheafVerdict::Sheaf(d) => Some(d),
            SheafVerdict::NotSheaf(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: SheafClass,
    pub xsize: usize,
    pub verdict: SheafVerdict,
}

fn families(p: &[bool], xsize: usize) -> Vec<usize> {
    p.iter().map(|&pa| if pa { xsize } else { 1 }).collect()
}

/// Closed-form classification.
pub fn sheaf_classify(p: &[bool], xsize: usize) -> Classification {
    let all_answered = p.iter().all(|&b| b);
    let class = if all_answered {
        SheafClass::AllTypes
    } else {
        SheafClass::SingletonsOnly
    };
    let verdict = if all_answered {
        SheafVerdict::Sheaf(StructureMap {
            xsize,
            tables: p.iter().map(|_| (0..xsize).collect()).collect(),
        })
    } else {
        match xsize {
            0 => SheafVerdict::NotSheaf(SheafCondition::Existence),
            1 => SheafVerdict::Sheaf(StructureMap {
                xsize,
                tables: vec![vec![0]; p.len()],
            }),
            _ => SheafVerdict::NotSheaf(SheafCondition::SecondEquality),
        }
    };
    Classification { class, xsize, verdict }
}

/// Condition (ii) for a candidate structure map.
pub fn first_equality_holds(p: &[bool], d: &StructureMap) -> bool {
    p.iter()
        .enumerate()
        .all(|(a, &pa)| !pa || (0..d.xsize).all(|h| d.apply(a, h) == h))
}

/// Condition (iii), which does not depend on the structure map.
pub fn second_equality_holds(p: &[bool], xsize: usize) -> bool {
    p.iter().all(|&pa| {
        (0..xsize).all(|x| (0..xsize).all(|y| {
            let hypothesis = !pa || x == y;
            !hypothesis || x == y
        }))
    })
}

/// Every candidate structure map, in lexicographic order of tables.
pub fn candidate_structure_maps(p: &[bool], xsize: usize) -> Vec<StructureMap> {
    let dims = families(p, xsize);
    let entries: usize = dims.iter().sum();
    if xsize == 0 && entries > 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; entries];
    loop {
        let mut it = digits.iter().copied();
        let tables = dims.iter().map(|&n| it.by_ref().take(n).collect()).collect();
        out.push(StructureMap { xsize, tables });
        let mut i = entries;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < xsize {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Exhaustive classification by searching all candidate structure maps.
/// Independent of [`sheaf_classify`]. Also returns how many candidates
/// satisfy (ii).
pub fn sheaf_search(p: &[bool], xsize: usize) -> (SheafVerdict, usize) {
    let candidates = candidate_structure_maps(p, xsize);
    if candidates.is_empty() {
        return (SheafVerdict::NotSheaf(SheafCondition::Existence), 0);
    }
    let good: Vec<StructureMap> = candidates.into_iter().filter(|d| first_equality_holds(p, d)).collect();
    let count = good.len();
    let verdict = match good.into_iter().next() {
        None => SheafVerdict::NotSheaf(SheafCondition::FirstEquality),
        Some(_) if !second_equality_holds(p, xsize) => SheafVerdict::NotSheaf(SheafCondition::SecondEquality),
        Some(d) => SheafVerdict::Sheaf(d),
    };
    (verdict, count)
}

/// Every map `f : X → Y`, as value tables.
pub fn all_maps(xsize: usize, ysize: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..xsize {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..ysize).map(move |y| {
                    let mut g = f.clone();
                    g.push(y);
                    g
                })
            })
            .collect();
    }
    out
}

/// A counterexample `(f, a, h)` to `f (d_X a h) = d_Y a (f ∘ h)`.
pub fn homomorphism_failure(p: &[bool], dx: &StructureMap, dy: &StructureMap) -> Option<(Vec<usize>, usize, usize)> {
    for f in all_maps(dx.xsize, dy.xsize) {
        for (a, &pa) in p.iter().enumerate() {
            let hs = if pa { dx.xsize } else { 1 };
            for h in 0..hs {
                let composed = if pa { f[h] } else { 0 };
                if f[dx.apply(a, h)] != dy.apply(a, composed) {
                    return Some((f, a, h));
                }
            }
        }
    }
    None
}

/// Structure map on `X × Y`, index-wise; the pair `(x, y)` is encoded as
/// `x * |Y| + y`.
pub fn product_structure(p: &[bool], dx: &StructureMap, dy: &StructureMap) -> StructureMap {
    let (nx, ny) = (dx.xsize, dy.xsize);
    let tables = p
        .iter()
        .enumerate()
        .map(|(a, &pa)| {
            if pa {
                (0..nx * ny)
                    .map(|h| dx.apply(a, h / ny) * ny + dy.apply(a, h % ny))
                    .collect()
            } else {
                vec![dx.apply(a, 0) * ny + dy.apply(a, 0)]
            }
        })
        .collect();
    StructureMap {
        xsize: nx * ny,
        tables,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifier_examples() {
        let c = sheaf_classify(&[true, true], 3);
        assert_eq!(c.class, SheafClass::AllTypes);
        assert_eq!(c.verdict.structure().unwrap().apply(1, 2), 2);
        let c = sheaf_classify(&[true, false], 1);
        assert_eq!(c.class, SheafClass::SingletonsOnly);
        assert_eq!(c.verdict.structure().unwrap().tables, vec![vec![0], vec![0]]);
        let c = sheaf_classify(&[true, false], 2);
        assert_eq!(c.verdict, SheafVerdict::NotSheaf(SheafCondition::SecondEquality));
        assert_eq!(
            sheaf_classify(&[false], 0).verdict,
            SheafVerdict::NotSheaf(SheafCondition::Existence)
        );
        assert!(sheaf_classify(&[], 0).verdict.structure().is_some());
    }

    #[test]
    fn candidates_are_complete() {
        assert_eq!(candidate_structure_maps(&[true, false], 2).len(), 8);
        assert_eq!(candidate_structure_maps(&[false], 0).len(), 0);
        assert_eq!(candidate_structure_maps(&[true], 0).len(), 1);
        assert_eq!(all_maps(2, 3).len(), 9);
        assert_eq!(all_maps(0, 0).len(), 1);
    }

    #[test]
    fn search_agrees_and_structure_map_is_unique() {
        for n in 0..=3usize {
            for mask in 0..(1u32 << n) {
                let p: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                for xsize in 0..=2 {
                    let (v, count) = sheaf_search(&p, xsize);
                    assert_eq!(v, sheaf_classify(&p, xsize).verdict, "{p:?} {xsize}");
                    if v.structure().is_some() {
                        assert_eq!(count, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn products_of_sheaves() {
        let p = [true, true];
        let dx = sheaf_classify(&p, 2).verdict.structure().unwrap().clone();
        let dy = sheaf_classify(&p, 2).verdict.structure().unwrap().clone();
        let prod = product_structure(&p, &dx, &dy);
        assert!(first_equality_holds(&p, &prod));
        assert_eq!(Some(&prod), sheaf_classify(&p, 4).verdict.structure());
        assert!(homomorphism_failure(&p, &dx, &dy).is_none());
    }
}
