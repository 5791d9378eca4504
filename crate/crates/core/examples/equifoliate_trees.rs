//! Trees over a set container: membership, the equifoliate check, and
//! descent to the canonical sheaf element.

use oracle_modality::trees::suite::{run_all, GenParams};
use oracle_modality::trees::{bind, delta, equifoliate, membership, EquiTree, SetContainer, Tree};

fn main() -> oracle_modality::Result<()> {
    let c = SetContainer::new([("ask", vec!["yes", "no"])])?;
    let same = Tree::node(0, vec![Tree::Leaf(1), Tree::node(0, vec![Tree::Leaf(1), Tree::Leaf(1)])]);
    let split = Tree::node(0, vec![Tree::Leaf(0), Tree::Leaf(1)]);

    let e = EquiTree::new(&c, same.clone()).expect("constant leaves");
    println!("equifoliate tree descends to {:?}", delta(&c, &e)?);
    match equifoliate(&c, &split) {
        Ok(_) => unreachable!(),
        Err(w) => println!("split tree: {w}"),
    }
    println!("0 ∈ split: {}, 1 ∈ split: {}", membership(&c, 0, &split), membership(&c, 1, &split));

    let grafted = bind(&same, &|v| Tree::node(0, vec![Tree::Leaf(v + 1), Tree::Leaf(v + 1)]));
    println!("bind keeps it equifoliate: {}", equifoliate(&c, &grafted).is_ok());

    let degenerate = SetContainer::with_arities(&[2, 0]);
    println!("over a degenerate container, 7 ∈ leaf 0: {}", membership(&degenerate, 7, &Tree::Leaf(0)));

    for r in run_all(1, 200, &GenParams::default()) {
        println!("{:<18} {} cases, {} failures", r.suite, r.cases, r.failures.len());
    }
    Ok(())
}
