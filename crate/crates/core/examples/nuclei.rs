//! Enumerating nuclei and reading off their fixed-point frames.

use oracle_modality::frame::{Frame, Poset};
use oracle_modality::nucleus::{canonical_nucleus, enumerate_nuclei, fixed_points_frame, NucleusKind};

fn main() -> oracle_modality::Result<()> {
    let frame = Frame::downsets(&Poset::chain(2))?;
    let all = enumerate_nuclei(&frame)?;
    println!("{} nuclei on a {}-element chain frame", all.len(), frame.len());
    for j in &all {
        let fixed = fixed_points_frame(j);
        println!("  {:?}  fixed points: {}", j, fixed.inclusion().len());
    }

    let square = Frame::downsets(&Poset::antichain(2))?;
    let dn = canonical_nucleus(&square, NucleusKind::DoubleNegation)?;
    println!("double negation on the square: {dn:?}");
    println!("{} nuclei on the square", enumerate_nuclei(&square)?.len());
    Ok(())
}
