//! Seeded property suites for trees: monad laws, equifoliate
//! preservation, membership of binds, single members and descent.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

use super::{bind, delta, equifoliate, members, membership, CanonicalSheafElement, EquiTree, SetContainer, Tree};

/// Shape counts, arities and value counts used by the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub max_shapes: usize,
    pub max_positions: usize,
    pub max_values: usize,
    pub max_depth: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_shapes: 3,
            max_positions: 3,
            max_values: 3,
            max_depth: 4,
        }
    }
}

/// Container with `1..=max_shapes` shapes of `0..=max_positions` positions.
pub fn random_container<R: Rng + ?Sized>(rng: &mut R, g: &GenParams) -> SetContainer {
    let k = rng.random_range(1..=g.max_shapes.max(1));
    let arities: Vec<usize> = (0..k).map(|_| rng.random_range(0..=g.max_positions)).collect();
    SetContainer::with_arities(&arities)
}

/// Any well-formed tree of depth at most `depth` with values below `nvalues`.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, c: &SetContainer, depth: usize, nvalues: usize) -> Tree {
    if depth == 0 || c.is_empty() || rng.random_bool(0.4) {
        return Tree::Leaf(rng.random_range(0..nvalues));
    }
    let a = rng.random_range(0..c.len());
    let children = (0..c.arity(a)).map(|_| random_tree(rng, c, depth - 1, nvalues)).collect();
    Tree::node(a, children)
}

/// An equifoliate tree of depth at most `depth`. Over a nondegenerate
/// container every leaf carries the same value; over a degenerate one any
/// tree qualifies.
pub fn random_equi_tree<R: Rng + ?Sized>(rng: &mut R, c: &SetContainer, depth: usize, nvalues: usize) -> Tree {
    if c.is_degenerate() {
        return random_tree(rng, c, depth, nvalues);
    }
    let v = rng.random_range(0..nvalues);
    constant_tree(rng, c, depth, v)
}

fn constant_tree<R: Rng + ?Sized>(rng: &mut R, c: &SetContainer, depth: usize, v: usize) -> Tree {
    if depth == 0 || c.is_empty() || rng.random_bool(0.4) {
        return Tree::Leaf(v);
    }
    let a = rng.random_range(0..c.len());
    let children = (0..c.arity(a)).map(|_| constant_tree(rng, c, depth - 1, v)).collect();
    Tree::node(a, children)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeSuite {
    MonadLaws,
    EquiBind,
    MemBind,
    SingleMember,
    DeltaMembership,
    DeltaSurjective,
}

impl TreeSuite {
    pub const ALL: [TreeSuite; 6] = [
        TreeSuite::MonadLaws,
        TreeSuite::EquiBind,
        TreeSuite::MemBind,
        TreeSuite::SingleMember,
        TreeSuite::DeltaMembership,
        TreeSuite::DeltaSurjective,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TreeSuite::MonadLaws => "monad-laws",
            TreeSuite::EquiBind => "equi-bind",
            TreeSuite::MemBind => "mem-bind",
            TreeSuite::SingleMember => "single-member",
            TreeSuite::DeltaMembership => "delta-membership",
            TreeSuite::DeltaSurjective => "delta-surjective",
        }
    }
}

impl fmt::Display for TreeSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TreeSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<TreeSuite> {
        TreeSuite::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown tree suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: TreeSuite,
    pub cases: usize,
    pub failures: Vec<String>,
    pub seed: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `cases` seeded cases of `suite`.
pub fn run_suite(suite: TreeSuite, seed: u64, cases: usize, g: &GenParams) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite as u64);
    let mut failures = Vec::new();
    for case in 0..cases {
        let c = random_container(&mut rng, g);
        let nvalues = rng.random_range(1..=g.max_values.max(1));
        if let Err(msg) = run_case(suite, &mut rng, &c, nvalues, g.max_depth) {
            failures.push(format!("case {case}: {c:?}: {msg}"));
        }
    }
    SuiteReport {
        suite,
        cases,
        failures,
        seed,
    }
}

pub fn run_all(seed: u64, cases: usize, g: &GenParams) -> Vec<SuiteReport> {
    TreeSuite::ALL.iter().map(|&s| run_suite(s, seed, cases, g)).collect()
}

/// Leaf-indexed family of trees for `bind`, one per value.
fn family<R: Rng + ?Sized>(rng: &mut R, c: &SetContainer, depth: usize, nvalues: usize, equi: bool) -> Vec<Tree> {
    (0..nvalues)
        .map(|_| {
            if equi {
                random_equi_tree(rng, c, depth, nvalues)
            } else {
                random_tree(rng, c, depth, nvalues)
            }
        })
        .collect()
}

fn run_case(suite: TreeSuite, rng: &mut ChaCha8Rng, c: &SetContainer, nv: usize, depth: usize) -> std::result::Result<(), String> {
    // split the depth budget between the outer tree and grafted ones
    let outer = rng.random_range(0..=depth);
    let inner = depth - outer;
    match suite {
        TreeSuite::MonadLaws => {
            let t = random_tree(rng, c, outer, nv);
            let f = family(rng, c, inner / 2, nv, false);
            let g = family(rng, c, inner - inner / 2, nv, false);
            let x = rng.random_range(0..nv);
            if bind(&Tree::Leaf(x), &|v| f[v].clone()) != f[x] {
                return Err(format!("left unit fails at {x}"));
            }
            if bind(&t, &Tree::Leaf) != t {
                return Err(format!("right unit fails on {t:?}"));
            }
            let lhs = bind(&bind(&t, &|v| f[v].clone()), &|v| g[v].clone());
            let rhs = bind(&t, &|v| bind(&f[v], &|w| g[w].clone()));
            if lhs != rhs {
                return Err(format!("associativity fails on {t:?}"));
            }
        }
        TreeSuite::EquiBind => {
            let t = random_equi_tree(rng, c, outer, nv);
            let f = family(rng, c, inner, nv, true);
            for tree in std::iter::once(&t).chain(&f) {
                equifoliate(c, tree).map_err(|w| format!("generator produced non-equifoliate tree: {w}"))?;
            }
            let b = bind(&t, &|v| f[v].clone());
            if let Err(w) = equifoliate(c, &b) {
                return Err(format!("bind of {t:?} is not equifoliate: {w}"));
            }
        }
        TreeSuite::MemBind => {
            // the equivalence needs an equifoliate tree; the forward
            // implication holds for any tree
            let t = random_equi_tree(rng, c, outer, nv);
            let any = random_tree(rng, c, outer, nv);
            let f = family(rng, c, inner, nv, false);
            let b = bind(&t, &|v| f[v].clone());
            let b_any = bind(&any, &|v| f[v].clone());
            for y in 0..nv {
                let lhs = membership(c, y, &b);
                let rhs = (0..nv).all(|x| !membership(c, x, &t) || membership(c, y, &f[x]));
                if lhs != rhs {
                    return Err(format!("membership of {y} in bind of {t:?}: {lhs} vs {rhs}"));
                }
                let fwd = (0..nv).all(|x| !membership(c, x, &any) || membership(c, y, &f[x]));
                if membership(c, y, &b_any) && !fwd {
                    return Err(format!("{y} in bind of {any:?} without the pointwise condition"));
                }
            }
        }
        TreeSuite::SingleMember => {
            let t = random_equi_tree(rng, c, depth, nv);
            let set: Vec<usize> = (0..nv).filter(|&x| membership(c, x, &t)).collect();
            let ok = if c.is_degenerate() { set.len() == nv } else { set.len() == 1 };
            if !ok {
                return Err(format!("{t:?} has members {set:?}"));
            }
            if !c.is_degenerate() && members(c, &t).singleton() != Some(set[0]) {
                return Err(format!("symbolic member set of {t:?} disagrees"));
            }
        }
        TreeSuite::DeltaMembership => {
            let t = random_equi_tree(rng, c, depth, nv);
            let e = EquiTree::new(c, t.clone()).map_err(|e| format!("{e:?}"))?;
            let d = delta(c, &e).map_err(|e| e.to_string())?;
            for x in 0..nv {
                if membership(c, x, &t) != d.contains(x) {
                    return Err(format!("{x} in {t:?} vs {d:?}"));
                }
            }
        }
        TreeSuite::DeltaSurjective => {
            if c.is_degenerate() {
                let e = EquiTree::new(c, Tree::Leaf(0)).map_err(|e| format!("{e:?}"))?;
                if delta(c, &e).map_err(|e| e.to_string())? != CanonicalSheafElement::Collapsed {
                    return Err("degenerate descent is not collapsed".into());
                }
                return Ok(());
            }
            for x in 0..nv {
                let e = EquiTree::new(c, Tree::Leaf(x)).map_err(|e| format!("{e:?}"))?;
                if delta(c, &e).map_err(|e| e.to_string())? != CanonicalSheafElement::Pure(x) {
                    return Err(format!("leaf {x} does not descend to itself"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_are_reproducible() {
        let g = GenParams::default();
        let a = run_all(11, 150, &g);
        for r in &a {
            assert!(r.passed(), "{}: {:?}", r.suite, r.failures);
        }
        assert_eq!(a, run_all(11, 150, &g));
    }

    #[test]
    fn generators_respect_bounds() {
        let g = GenParams::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let c = random_container(&mut rng, &g);
            assert!((1..=3).contains(&c.len()));
            let t = random_tree(&mut rng, &c, 4, 3);
            t.check(&c).unwrap();
            assert!(t.depth() <= 4);
            assert!(t.leaf_values().iter().all(|&v| v < 3));
            let e = random_equi_tree(&mut rng, &c, 4, 3);
            assert!(equifoliate(&c, &e).is_ok());
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in TreeSuite::ALL {
            assert_eq!(s.name().parse::<TreeSuite>().unwrap(), s);
        }
    }
}
