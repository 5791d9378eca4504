//! Propositional containers and the oracle modalities they generate.

pub mod container;
pub mod modality;
pub mod verify;

pub use container::{all_containers, container_sum, validate_container, PropContainer, Shape};
pub use modality::{
    forces, instance_prenucleus, instance_reducible, oracle_modality, oracle_modality_bruteforce,
    pred_of_nucleus, PrenucleusMap,
};

pub use verify::{verify_retraction_tables, verify_theorems, Budget, TheoremId, TheoremReport};
