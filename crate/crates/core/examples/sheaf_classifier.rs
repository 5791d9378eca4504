//! Which finite types are sheaves for a Boolean oracle.

use oracle_modality::trees::sheaf::{homomorphism_failure, product_structure, sheaf_classify, sheaf_search};

fn main() {
    for p in [vec![true, true], vec![true, false], vec![]] {
        for xsize in 0..=3 {
            let c = sheaf_classify(&p, xsize);
            let (searched, _) = sheaf_search(&p, xsize);
            assert_eq!(searched, c.verdict);
            let verdict = match c.verdict.structure() {
                Some(d) => format!("sheaf {:?}", d.tables),
                None => format!("{:?}", c.verdict),
            };
            println!("p = {p:?}, |X| = {xsize}: {:?}, {verdict}", c.class);
        }
    }

    let p = [true, true];
    let d2 = sheaf_classify(&p, 2).verdict.structure().cloned().expect("all answered");
    let d3 = sheaf_classify(&p, 3).verdict.structure().cloned().expect("all answered");
    println!("maps 2 → 3 are homomorphisms: {}", homomorphism_failure(&p, &d2, &d3).is_none());
    println!("product structure: {:?}", product_structure(&p, &d2, &d3).tables);
}
