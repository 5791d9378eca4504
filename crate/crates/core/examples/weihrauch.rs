//! Checking supplied Weihrauch reducers on finite predicates.

use oracle_modality::pca::weihrauch::{check_weihrauch, compose_reducers, identity_reducers, ExtWeihrauchPredicate};
use oracle_modality::pca::{Signature, DEFAULT_FUEL};

fn main() -> oracle_modality::Result<()> {
    let sig = Signature::with_atoms(&["p", "q", "u", "v", "w"])?;
    let f = ExtWeihrauchPredicate::from_sources(
        &sig,
        DEFAULT_FUEL,
        &[("p", vec![vec!["u", "v"], vec!["w"]]), ("q", vec![vec!["u"]])],
    )?;
    let g = ExtWeihrauchPredicate::from_sources(
        &sig,
        DEFAULT_FUEL,
        &[("p", vec![vec!["u", "v"], vec!["w"], vec!["u", "v", "w"]]), ("q", vec![vec!["u"], vec!["v"]])],
    )?;

    let (l1, l2) = identity_reducers();
    let v = check_weihrauch(&sig, &f, &g, &l1, &l2, DEFAULT_FUEL);
    println!("f ≤ g by identity: {:?}", v.outcome);
    let w = check_weihrauch(&sig, &g, &f, &l1, &l2, DEFAULT_FUEL);
    println!("g ≤ f by identity: {:?}", w.outcome);

    let (n1, n2) = compose_reducers((&l1, &l2), (&l1, &l2));
    println!("composite reducers:\n  n1 = {n1}\n  n2 = {n2}");
    println!("f ≤ f by composite: {:?}", check_weihrauch(&sig, &f, &f, &n1, &n2, DEFAULT_FUEL).outcome);

    let bad = sig.parse("K (K w)")?;
    let v = check_weihrauch(&sig, &f, &g, &l1, &bad, DEFAULT_FUEL);
    println!("constant answers: {:?}", v.outcome);
    Ok(())
}
