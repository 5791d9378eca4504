//! Combinatory evaluation with fuel, pairing, and bracket abstraction.

use oracle_modality::pca::encode::{abstract_var, fst, pair, snd, unpair};
use oracle_modality::pca::{Signature, Term, DEFAULT_FUEL};

fn main() -> oracle_modality::Result<()> {
    let sig = Signature::with_atoms(&["x", "y", "z"])?;
    for src in ["K x y", "S K K x", "S (K S) K x y z", "S I I (S I I)"] {
        let t = sig.parse(src)?;
        let (r, steps) = sig.eval_counting(&t, 1000);
        println!("{src:<18} ⇝ {:?} in {steps} steps", r.value());
    }

    let p = pair(Term::constant("x"), Term::constant("y"));
    println!("fst = {:?}", sig.eval(&Term::app(fst(), p.clone()), DEFAULT_FUEL).value());
    println!("snd = {:?}", sig.eval(&Term::app(snd(), p.clone()), DEFAULT_FUEL).value());
    println!("decoded: {:?}", unpair(&p));

    // swap = [v] pair (snd v) (fst v)
    let v = Term::var("v");
    let body = pair(Term::app(snd(), v.clone()), Term::app(fst(), v));
    let swap = abstract_var("v", &body);
    let out = sig.eval(&Term::app(swap, p), DEFAULT_FUEL);
    println!("swap ⇝ {:?}", out.value().and_then(unpair));
    Ok(())
}
