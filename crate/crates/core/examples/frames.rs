//! Downset frames of small posets and their Heyting operations.

use oracle_modality::frame::{Frame, HeytingOp, Poset};

fn main() -> oracle_modality::Result<()> {
    let diamond = Frame::downsets(&Poset::diamond())?;
    println!("diamond: {} downsets", diamond.len());
    for e in diamond.elements() {
        let neg = diamond.neg(e)?;
        println!("  {:<12} ¬ = {}", diamond.render(e)?, diamond.render(neg)?);
    }

    let l = diamond.parse_elem("{b,l}")?;
    let r = diamond.parse_elem("b,r")?;
    let imp = diamond.heyting(HeytingOp::Implies, &[l, r])?;
    println!("{} ⇒ {} = {}", diamond.render(l)?, diamond.render(r)?, diamond.render(imp)?);

    let chain = Frame::downsets(&Poset::chain(4))?;
    let failures = chain.check_laws();
    println!("4-chain: {} downsets, {} law failures", chain.len(), failures.len());
    Ok(())
}
