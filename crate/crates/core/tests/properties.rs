//! Property tests over generated posets, containers, trees and terms.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oracle_modality::frame::{random_poset, Frame};
use oracle_modality::io::{tree_from, tree_json, TreeFile};
use oracle_modality::nucleus::{enumerate_nuclei, nucleus_leq, validate_table};
use oracle_modality::oracle::{forces, oracle_modality, oracle_modality_bruteforce, pred_of_nucleus, PropContainer};
use oracle_modality::pca::{EvalResult, Signature, Term};
use oracle_modality::trees::suite::{random_container, random_tree, GenParams};
use oracle_modality::trees::{members, membership, SetContainer, Tree};

fn small_frame(seed: u64, n: usize) -> Frame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Frame::downsets(&random_poset(&mut rng, n, 0.4)).unwrap()
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::S),
        Just(Term::K),
        Just(Term::constant("x")),
        Just(Term::constant("y")),
    ];
    leaf.prop_recursive(5, 24, 2, |inner| (inner.clone(), inner).prop_map(|(f, a)| Term::app(f, a)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn frames_satisfy_the_laws(seed in any::<u64>(), n in 0usize..5) {
        prop_assert!(small_frame(seed, n).check_laws().is_empty());
    }

    #[test]
    fn modality_is_a_nucleus_and_matches_brute_force(seed in any::<u64>(), n in 1usize..4, shapes in 0usize..4) {
        let f = small_frame(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let c = PropContainer::random(&mut rng, &f, shapes);
        let j = oracle_modality(&c);
        prop_assert!(validate_table(&f, j.table_ix()).unwrap().valid);
        prop_assert_eq!(&j, &oracle_modality_bruteforce(&c));
        prop_assert!(forces(&j, &c).unwrap());
    }

    #[test]
    fn forcing_is_being_above_the_modality(seed in any::<u64>(), n in 1usize..4) {
        let f = small_frame(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(7));
        let c = PropContainer::random(&mut rng, &f, 2);
        let oc = oracle_modality(&c);
        for j in enumerate_nuclei(&f).unwrap() {
            prop_assert_eq!(forces(&j, &c).unwrap(), nucleus_leq(&oc, &j).unwrap());
            prop_assert_eq!(oracle_modality(&pred_of_nucleus(&j)), j);
        }
    }

    #[test]
    fn symbolic_members_agree_with_membership(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = GenParams::default();
        let c = random_container(&mut rng, &g);
        let t = random_tree(&mut rng, &c, 4, 3);
        let m = members(&c, &t);
        for x in 0..5 {
            prop_assert_eq!(m.contains(x), membership(&c, x, &t));
        }
    }

    #[test]
    fn tree_files_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_container(&mut rng, &GenParams::default());
        let t = random_tree(&mut rng, &c, 3, 3);
        let labels: Vec<String> = (0..3).map(|i| format!("v{i}")).collect();
        let v = tree_json(&c, &t, &labels);
        let file: TreeFile = serde_json::from_value(v.clone()).unwrap();
        let back = tree_from(&c, &file).unwrap();
        prop_assert_eq!(tree_json(&c, &back.tree, &back.values), v);
    }

    #[test]
    fn evaluation_is_deterministic_and_monotone_in_fuel(t in term(), fuel in 0u64..200) {
        let sig = Signature::with_atoms(&["x", "y"]).unwrap();
        let a = sig.eval(&t, fuel);
        prop_assert_eq!(&a, &sig.eval(&t, fuel));
        if let EvalResult::Value(v) = &a {
            let more = sig.eval(&t, fuel + 500);
            prop_assert_eq!(more.value(), Some(v));
            // normal forms are fixed points
            let again = sig.eval(v, 0);
            prop_assert_eq!(again.value(), Some(v));
        }
    }

    #[test]
    fn combinator_axioms(x in term(), y in term(), z in term()) {
        let sig = Signature::with_atoms(&["x", "y"]).unwrap();
        let fuel = 2_000;
        let lhs = sig.eval(&Term::apply(Term::K, [x.clone(), y.clone()]), fuel);
        let rhs = sig.eval(&x, fuel);
        if let (EvalResult::Value(l), EvalResult::Value(r)) = (&lhs, &rhs) {
            prop_assert_eq!(l, r);
        }
        let lhs = sig.eval(&Term::apply(Term::S, [x.clone(), y.clone(), z.clone()]), fuel);
        let rhs = sig.eval(&Term::app(Term::app(x, z.clone()), Term::app(y, z)), fuel);
        if let (EvalResult::Value(l), EvalResult::Value(r)) = (&lhs, &rhs) {
            prop_assert_eq!(l, r);
        }
    }
}

#[test]
fn degenerate_containers_make_everything_a_member() {
    let c = SetContainer::with_arities(&[1, 0]);
    let t = Tree::node(0, vec![Tree::Leaf(2)]);
    assert!((0..10).all(|x| membership(&c, x, &t)));
}
