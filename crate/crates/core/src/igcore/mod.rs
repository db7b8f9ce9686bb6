//! Group actions, the cocycle `phi` and the monoid of IG-type `S`.

mod action;
mod cocycle;
mod ig;

pub use action::{build_action, mat_mul, mat_vec, ActionSummary, GenAction, GroupElement, Mat, PermutationKind};
pub use cocycle::{verify_cocycle, CocycleReport, CosetCocycle};
pub use ig::{build_ig, IGElement, IGMonoid, NotITypeCertificate};

#[cfg(test)]
mod tests;
