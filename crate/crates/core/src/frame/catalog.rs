//! Generators for families of small posets.

use std::collections::BTreeSet;

use rand::Rng;

use super::poset::Poset;

fn label(i: usize, n: usize) -> String {
    const NAMES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
    if n <= NAMES.len() {
        NAMES[i].to_string()
    } else {
        format!("x{i}")
    }
}

/// Every labeled poset on `0..=max` elements (labels `p, q, r, ...`).
///
/// Sizes grow fast: 1, 1, 3, 19, 219, 4231 for 0..=5 elements.
pub fn labeled_posets(max: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    for n in 0..=max {
        let labels: Vec<String> = (0..n).map(|i| label(i, n)).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        for mask in 0u64..(1u64 << pairs.len()) {
            let mut rel = vec![vec![false; n]; n];
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    rel[a][b] = true;
                }
            }
            let antisymmetric = (0..n).all(|a| (0..n).all(|b| !(rel[a][b] && rel[b][a])));
            let transitive = (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| !(rel[a][b] && rel[b][c]) || a == c || rel[a][c]))
            });
            if !antisymmetric || !transitive {
                continue;
            }
            let le: Vec<(String, String)> = pairs
                .iter()
                .filter(|&&(a, b)| rel[a][b])
                .map(|&(a, b)| (labels[a].clone(), labels[b].clone()))
                .collect();
            out.push(Poset::from_relation(&labels, &le).expect("checked above"));
        }
    }
    out
}

/// One poset per isomorphism class whose downset frame has at most
/// `max_carrier` elements. Output order is by element count, then by
/// canonical form.
pub fn posets_with_carrier_at_most(max_carrier: usize) -> Vec<Poset> {
    // Naturally labeled posets as principal-downset bitsets, grown one
    // maximal element at a time and deduplicated per level.
    let mut out = Vec::new();
    let mut level: BTreeSet<Vec<u128>> = BTreeSet::new();
    if max_carrier >= 1 {
        level.insert(Vec::new());
    }
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for below in &level {
            out.push(to_poset(below));
            let downs = downsets_of(below);
            let count = downs.len();
            for &d in &downs {
                let extra = downs.iter().filter(|&&s| s & d == d).count();
                if count + extra > max_carrier {
                    continue;
                }
                let mut grown = below.clone();
                grown.push(d | 1u128 << below.len());
                next.insert(canonical(&grown));
            }
        }
        level = next;
    }
    out
}

/// A random naturally labeled poset: each pair `i < j` is related with
/// probability `density` before transitive closure.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| label(i, n)).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(density) {
                pairs.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Poset::from_relation(&labels, &pairs).expect("natural labeling is acyclic")
}

fn to_poset(below: &[u128]) -> Poset {
    let n = below.len();
    let labels: Vec<String> = (0..n).map(|i| label(i, n)).collect();
    let mut pairs = Vec::new();
    for (j, &b) in below.iter().enumerate() {
        for i in 0..n {
            if i != j && b >> i & 1 == 1 {
                pairs.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Poset::from_relation(&labels, &pairs).expect("generated relation is a poset")
}

fn downsets_of(below: &[u128]) -> Vec<u128> {
    let mut out = vec![0u128];
    for (x, &bx) in below.iter().enumerate() {
        // elements are naturally labeled, so `x` extends only sets
        // already containing everything strictly below it
        let strict = bx & !(1u128 << x);
        let extended: Vec<u128> = out.iter().filter(|&&s| s & strict == strict).map(|&s| s | 1u128 << x).collect();
        out.extend(extended);
    }
    out
}

/// Minimal relabeling over all linear extensions.
fn canonical(below: &[u128]) -> Vec<u128> {
    let n = below.len();
    let mut best: Option<Vec<u128>> = None;
    let mut order = Vec::with_capacity(n);
    extensions(below, 0u128, &mut order, &mut |perm| {
        let mut pos = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            pos[old] = new;
        }
        let relabeled: Vec<u128> = perm
            .iter()
            .map(|&old| super::bits(below[old]).fold(0u128, |acc, i| acc | 1u128 << pos[i]))
            .collect();
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
    });
    best.unwrap_or_default()
}

fn extensions(below: &[u128], placed: u128, order: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if order.len() == below.len() {
        visit(order);
        return;
    }
    for x in 0..below.len() {
        let strict = below[x] & !(1u128 << x);
        if placed >> x & 1 == 0 && strict & !placed == 0 {
            order.push(x);
            extensions(below, placed | 1u128 << x, order, visit);
            order.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;

    #[test]
    fn labeled_counts() {
        // OEIS A001035
        let counts: Vec<usize> = (0..=4).map(|n| labeled_posets(n).len() - labeled_posets(n.saturating_sub(1)).len()).collect();
        assert_eq!(&counts[1..], &[1, 3, 19, 219]);
        assert_eq!(labeled_posets(0).len(), 1);
    }

    #[test]
    fn unlabeled_classes_with_small_frames() {
        let all = posets_with_carrier_at_most(8);
        for p in &all {
            assert!(Frame::downsets(p).unwrap().len() <= 8);
        }
        // up to 3 elements every unlabeled poset (1+1+2+5) has at most 8 downsets
        let small = all.iter().filter(|p| p.len() <= 3).count();
        assert_eq!(small, 9);
        // the only 7-element one is the chain
        assert_eq!(all.iter().filter(|p| p.len() == 7).count(), 1);
    }

    #[test]
    fn unlabeled_four_element_posets() {
        // all 16 unlabeled 4-element posets have at most 16 downsets
        let all = posets_with_carrier_at_most(16);
        assert_eq!(all.iter().filter(|p| p.len() == 4).count(), 16);
    }
}
