//! The modality of a sum of containers is the join of their modalities.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use oracle_modality::frame::{Frame, Poset};
use oracle_modality::nucleus::sup_nuclei;
use oracle_modality::oracle::{container_sum, oracle_modality, PropContainer};

fn main() -> oracle_modality::Result<()> {
    let frame = Frame::downsets(&Poset::diamond())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let c = PropContainer::random(&mut rng, &frame, 2);
        let d = PropContainer::random(&mut rng, &frame, 2);
        let sum = oracle_modality(&container_sum(&frame, &[c.clone(), d.clone()])?);
        let sup = sup_nuclei(&frame, &[oracle_modality(&c), oracle_modality(&d)])?;
        assert_eq!(sum, sup);
        println!("{c:?} + {d:?}\n  ↦ {sum:?}");
    }
    Ok(())
}
