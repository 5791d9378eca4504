//! Every nucleus is the oracle modality of its own predicate.

use oracle_modality::frame::{labeled_posets, Frame};
use oracle_modality::nucleus::enumerate_nuclei;
use oracle_modality::oracle::{oracle_modality, pred_of_nucleus};

fn main() -> oracle_modality::Result<()> {
    let mut checked = 0;
    for poset in labeled_posets(3) {
        let frame = Frame::downsets(&poset)?;
        for j in enumerate_nuclei(&frame)? {
            let back = oracle_modality(&pred_of_nucleus(&j));
            assert_eq!(back, j, "retraction fails on {poset:?}");
            checked += 1;
        }
    }
    println!("retraction holds for {checked} nuclei on posets with at most 3 elements");
    Ok(())
}
