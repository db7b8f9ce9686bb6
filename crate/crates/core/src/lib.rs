//! Monoids of IG-type: submonoids `S = {(a, phi(a))}` of a semidirect product
//! `A x| G` of an affine monoid with a finite group.
//!
//! The crate builds such monoids from presentations, group actions and
//! cocycle tables, and decides torsion-freeness of `SS^-1`, the prime ideals
//! of `S`, and whether `S` is a maximal order.

pub mod analysis;
pub mod error;
pub mod examples;
pub mod igcore;
pub mod intlat;
pub mod itype;
pub mod monoid;
pub mod perm;

pub use analysis::{
    divisorial_torsion_crosscheck, finite_normal_subgroup_search, ideal_condition, is_maximal_order_s,
    is_periodic, is_torsion_free, localize_s, non_maximal_witness, primes_of_s, verify_witness,
    MaximalOrderReport, MaximalOrderVerdict, NormalSubgroupSearch, OrbitReport, PrimeOfS, SLocalization,
    TorsionReport, TorsionWitness, Witness,
};
pub use error::{Error, Result};
pub use igcore::{
    build_action, build_ig, verify_cocycle, CocycleReport, CosetCocycle, GenAction, GroupElement,
    IGElement, IGMonoid,
};
pub use intlat::{IntMatrix, Sublattice};
pub use itype::{
    build_rmap, derive_permutations, ig_cover, itype_to_ig, Cover, CoverReport, IRelations, ITypeMonoid,
    RMap, YbeReport,
};
pub use monoid::{AffineMonoid, Divisor, FacePrime, Membership, Presentation};
pub use perm::Permutation;
