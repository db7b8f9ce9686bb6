//! Decision procedures on a monoid of IG-type: torsion in `SS^-1`, prime
//! ideals of `S`, localization and the maximal-order verdict.

mod primes;
mod torsion;
mod witness;

pub use primes::{
    ideal_condition, is_maximal_order_s, localize_s, primes_of_s, MaximalOrderReport, MaximalOrderVerdict,
    OrbitReport, PrimeOfS, SLocalization,
};
pub use torsion::{divisorial_torsion_crosscheck, is_periodic, is_torsion_free, TorsionReport, TorsionWitness};
pub use witness::{finite_normal_subgroup_search, non_maximal_witness, verify_witness, NormalSubgroupSearch, Witness};

#[cfg(test)]
mod tests;
