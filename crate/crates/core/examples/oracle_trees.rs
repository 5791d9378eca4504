//! Realizers of oracle-computation trees: membership, certificates and
//! mutations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oracle_modality::pca::membership::{check_oracle_membership_w, random_member_spec, verify_certificate};
use oracle_modality::pca::weihrauch::ExtWeihrauchPredicate;
use oracle_modality::pca::{Signature, Term, DEFAULT_FUEL};

fn main() -> oracle_modality::Result<()> {
    let base = Signature::with_atoms(&["a", "b", "p", "q", "u", "v", "w", "junk"])?;
    let f = ExtWeihrauchPredicate::from_sources(
        &base,
        DEFAULT_FUEL,
        &[("p", vec![vec!["u", "v"], vec!["w"]]), ("q", vec![vec!["u"], vec!["v"]])],
    )?;
    let s = [Term::constant("a"), Term::constant("b")];
    let junk = Term::constant("junk");

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let spec = random_member_spec(&mut rng, &f, &s, 3);
    let mut sig = base.clone();
    let t = spec.render(&mut sig, "case")?;
    let v = check_oracle_membership_w(&sig, &f, &s, &t, 8, DEFAULT_FUEL);
    let cert = v.certificate().expect("built trees are members");
    println!("member of depth {}: re-verifies = {}", cert.depth(), verify_certificate(&sig, &f, &s, &t, cert, DEFAULT_FUEL));

    let mutants = spec.mutations(&junk);
    let mut rejected = 0;
    for (i, m) in mutants.iter().enumerate() {
        let mut sig = base.clone();
        let t = m.render(&mut sig, &format!("m{i}_"))?;
        if !check_oracle_membership_w(&sig, &f, &s, &t, 8, DEFAULT_FUEL).is_member() {
            rejected += 1;
        }
    }
    println!("{rejected}/{} single-node mutations rejected", mutants.len());
    Ok(())
}
