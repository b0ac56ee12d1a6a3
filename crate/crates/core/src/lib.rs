//! Restricted sumsets `Σ^l(A_1, ..., A_k)` of finite sets of non-negative
//! integers: exact computation, Freiman-type lower bounds, and an exhaustive
//! verifier for those bounds and for each step of their inductive proof.

pub mod bounds;
pub mod error;
pub mod intset;
pub mod proof;
pub mod sumset;
pub mod verifier;
pub mod witness;

pub use bounds::{
    dgm_integer_bound, freiman_bound, kneser_integer_bound, lev_smeliansky_bound, main_bound,
    BoundReport,
};
pub use error::{Error, Result};
pub use intset::{
    canonicalize, gcd_of_set, multiplicity_profile, shift_to_zero, CanonicalizationLog, IntSet,
    MultiplicityProfile, SetSequence,
};
pub use sumset::{
    pairwise_sumset, sigma_all, sigma_l, sigma_l_bruteforce, sigma_max, Engine, SigmaTable,
};
pub use witness::RepresentationWitness;
