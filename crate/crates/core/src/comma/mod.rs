//! The analytic coslice category, the synthetic comma category over posets,
//! the projection onto shapes and its fibers, and the lifted counterexample.

pub mod coslice;
pub mod fiber;
pub mod lift;
pub mod syn;

pub use coslice::{CoslMor, CoslObj, CosliceCat, Under, UnderMor};
pub use fiber::{
    cone_point_check, cone_to_point, fiber, fiber_as_coslice_check, over_identity_check,
    point_to_cone, ConePointReport, FiberCat, FiberReport, NatTrans,
};
pub use lift::{
    check_c1, check_c2, coproduct_nonpreservation_witness, lift_counterexample, proof_diagrams,
    CoproductWitness, LiftedBundle, ProofDiagrams,
};
pub use syn::{
    name_embedding, projection_s, projection_s_mor, CommaCat, Indexed, IndexedMor, SynMor, SynObj,
};
