//! The oracle modality of a container, computed two ways.

use oracle_modality::frame::{Frame, Poset};
use oracle_modality::nucleus::{canonical_nucleus, NucleusKind};
use oracle_modality::oracle::{oracle_modality, oracle_modality_bruteforce, PropContainer};

fn main() -> oracle_modality::Result<()> {
    let frame = Frame::downsets(&Poset::diamond())?;

    let lem = PropContainer::excluded_middle(&frame);
    let j = oracle_modality(&lem);
    assert_eq!(j, oracle_modality_bruteforce(&lem));
    assert_eq!(j, canonical_nucleus(&frame, NucleusKind::DoubleNegation)?);
    println!("excluded middle: {j:?}");

    println!("unanswerable query: {:?}", oracle_modality(&PropContainer::counterexample(&frame)));
    println!("always answered:    {:?}", oracle_modality(&PropContainer::realized(&frame)));

    // a query that only exists below `l`, with no answer
    let l = frame.elem(2);
    let partial = PropContainer::new(&frame, [("a0", l, frame.bot())])?;
    println!("partial query at {}: {:?}", frame.render(l)?, oracle_modality(&partial));
    Ok(())
}
