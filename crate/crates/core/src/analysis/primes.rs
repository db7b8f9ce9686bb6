//! Prime ideals of `S` built from `G`-orbits of primes of `A`, and the
//! maximal-order criterion.

use std::collections::BTreeSet;

use serde::Serialize;

use super::torsion::is_torsion_free;
use crate::error::{Error, Result};
use crate::igcore::{GroupElement, IGMonoid};
use crate::monoid::{AffineMonoid, FacePrime};

/// `g(P)` for a face prime, as a facet set.
fn moved_facets(s: &IGMonoid, g: GroupElement, p: &FacePrime) -> BTreeSet<usize> {
    let pi = s.action().facet_permutation(s.base(), g);
    p.facets.iter().map(|&i| pi[i]).collect()
}

/// Whether `a phi(a)(Q_1 ∩ ... ∩ Q_n) ⊆ Q_1 ∩ ... ∩ Q_n` for every `a` in
/// `A`.
///
/// It is enough to test `a` in the orbit generating set `B`: if it holds for
/// `a` and `c`, then by `phi(a + phi(a)(c)) = phi(a) phi(c)` it holds for
/// their product in `S`, and every element of `S` is a product of
/// `(b, phi(b))` with `b` in `B`. For one `a` and one `Q` in the family, the
/// inclusion holds when `a` lies in `Q`; otherwise, by prime avoidance, it
/// holds iff `phi(a)(Q') ⊆ Q` for some `Q'` in the family.
pub fn ideal_condition(s: &IGMonoid, qs: &[FacePrime]) -> bool {
    let a = s.base();
    s.orbit_generators().iter().all(|b| {
        let g = s.phi_bar(b);
        let moved: Vec<BTreeSet<usize>> = qs.iter().map(|q| moved_facets(s, g, q)).collect();
        qs.iter().all(|q| {
            q.contains(a, b) || moved.iter().any(|m| m.iter().all(|i| q.facets.contains(i)))
        })
    })
}

/// A prime of `S`: the intersection of the listed primes of `A`, paired
/// with `phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeOfS {
    pub primes: Vec<FacePrime>,
    /// Positions of `primes` in the list of height-`height` primes of `A`.
    pub members: Vec<usize>,
    pub height: usize,
    pub orbit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub members: Vec<usize>,
    /// Inclusion-minimal subsets satisfying the ideal condition.
    pub blocks: Vec<Vec<usize>>,
    pub partition: bool,
    /// The whole orbit always satisfies the condition; set when the
    /// minimal subsets are smaller than it.
    pub readings_diverge: bool,
}

impl OrbitReport {
    pub fn full_orbit(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0] == self.members
    }
}

fn orbits(s: &IGMonoid, primes: &[FacePrime]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; primes.len()];
    let mut out = Vec::new();
    for start in 0..primes.len() {
        if seen[start] {
            continue;
        }
        let mut orbit: Vec<usize> = s
            .action()
            .elements()
            .map(|g| {
                let m = moved_facets(s, g, &primes[start]);
                primes.iter().position(|p| p.facets.iter().copied().collect::<BTreeSet<_>>() == m).expect("G permutes primes")
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        orbit.sort();
        for &i in &orbit {
            seen[i] = true;
        }
        out.push(orbit);
    }
    out
}

fn split_orbit(s: &IGMonoid, primes: &[FacePrime], orbit: &[usize]) -> OrbitReport {
    let k = orbit.len();
    let mut satisfying: Vec<u32> = Vec::new();
    for mask in 1u32..(1 << k) {
        let chosen: Vec<FacePrime> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| primes[orbit[b]].clone()).collect();
        if ideal_condition(s, &chosen) {
            satisfying.push(mask);
        }
    }
    let minimal: Vec<u32> = satisfying
        .iter()
        .copied()
        .filter(|&m| !satisfying.iter().any(|&o| o != m && o & m == o))
        .collect();
    let blocks: Vec<Vec<usize>> =
        minimal.iter().map(|&m| (0..k).filter(|b| m >> b & 1 == 1).map(|b| orbit[b]).collect()).collect();
    let union: u32 = minimal.iter().fold(0, |acc, m| acc | m);
    let disjoint = minimal.iter().map(|m| m.count_ones()).sum::<u32>() == union.count_ones();
    let partition = disjoint && union == (1 << k) - 1;
    let mut blocks = blocks;
    blocks.sort();
    let readings_diverge = !(blocks.len() == 1 && blocks[0] == orbit);
    OrbitReport { members: orbit.to_vec(), blocks, partition, readings_diverge }
}

fn analyse(s: &IGMonoid, primes: &[FacePrime]) -> Vec<OrbitReport> {
    orbits(s, primes).iter().map(|o| split_orbit(s, primes, o)).collect()
}

/// Primes of `S` of height `m`: minimal subsets of `G`-orbits of height-`m`
/// primes of `A` satisfying [`ideal_condition`]. Needs `SS^-1`
/// torsion-free.
pub fn primes_of_s(s: &IGMonoid, height: usize) -> Result<Vec<PrimeOfS>> {
    if !is_torsion_free(s).torsion_free {
        return Err(Error::TorsionPresent);
    }
    let primes = s.base().prime_spectrum(Some(height));
    let reports = analyse(s, &primes);
    let mut out = Vec::new();
    for (o, rep) in reports.iter().enumerate() {
        assert!(rep.partition, "minimal subsets must partition the orbit");
        for block in &rep.blocks {
            out.push(PrimeOfS {
                primes: block.iter().map(|&i| primes[i].clone()).collect(),
                members: block.clone(),
                height,
                orbit: o,
            });
        }
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MaximalOrderVerdict {
    Maximal,
    NotMaximal,
    /// The sufficient condition fails but `SS^-1` has torsion, so the
    /// converse is unavailable.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalOrderReport {
    pub verdict: MaximalOrderVerdict,
    pub torsion_free: bool,
    pub orbits: Vec<OrbitReport>,
}

impl MaximalOrderReport {
    pub fn is_maximal(&self) -> bool {
        self.verdict == MaximalOrderVerdict::Maximal
    }
}

fn require_normal_pointed(a: &AffineMonoid) -> Result<()> {
    if !a.is_maximal_order() {
        return Err(Error::PreconditionUnmet("the base monoid is not a maximal order".into()));
    }
    if !a.has_trivial_units() {
        return Err(Error::PreconditionUnmet("the base monoid has nontrivial units".into()));
    }
    Ok(())
}

/// `S` is a maximal order iff every minimal prime of `S` comes from a
/// whole `G`-orbit of minimal primes of `A`.
pub fn is_maximal_order_s(s: &IGMonoid) -> Result<MaximalOrderReport> {
    require_normal_pointed(s.base())?;
    let torsion_free = is_torsion_free(s).torsion_free;
    let orbits = analyse(s, &s.base().minimal_primes());
    let verdict = if orbits.iter().all(OrbitReport::full_orbit) {
        MaximalOrderVerdict::Maximal
    } else if torsion_free {
        MaximalOrderVerdict::NotMaximal
    } else {
        MaximalOrderVerdict::Inconclusive
    };
    Ok(MaximalOrderReport { verdict, torsion_free, orbits })
}

#[derive(Clone, Debug, Serialize)]
pub struct SLocalization {
    /// Generators of `A_{Q_1} ∩ ... ∩ A_{Q_n}`.
    pub generators: Vec<Vec<i64>>,
    /// Minimal primes of the localization as sets of minimal primes of `A`.
    pub minimal_primes: Vec<Vec<usize>>,
    pub unique_minimal_prime: bool,
}

/// Localization of `S` at a `G`-invariant minimal prime.
pub fn localize_s(s: &IGMonoid, p: &PrimeOfS) -> Result<SLocalization> {
    require_normal_pointed(s.base())?;
    if p.height != 1 {
        return Err(Error::PreconditionUnmet("localization is taken at minimal primes".into()));
    }
    let a = s.base();
    let qs: Vec<usize> = p.primes.iter().map(|q| q.facets[0]).collect();
    let invariant = s.action().elements().all(|g| {
        let pi = s.action().facet_permutation(a, g);
        qs.iter().all(|q| qs.contains(&pi[*q]))
    });
    if !invariant {
        return Err(Error::PreconditionUnmet("the prime is not G-invariant".into()));
    }
    let local = a.localize(&qs)?;
    let back: Vec<usize> = local
        .facets()
        .iter()
        .map(|f| a.facets().iter().position(|h| h == f).expect("localization keeps facets"))
        .collect();
    let generators = local.images().to_vec();
    let sl = s.rebase(local)?;
    let reports = analyse(&sl, &sl.base().minimal_primes());
    let mut minimal_primes: Vec<Vec<usize>> = reports
        .iter()
        .flat_map(|r| {
            r.blocks.iter().map(|b| {
                let mut v: Vec<usize> = b.iter().map(|&i| back[i]).collect();
                v.sort();
                v
            })
        })
        .collect();
    minimal_primes.sort();
    let unique_minimal_prime = minimal_primes.len() == 1;
    Ok(SLocalization { generators, minimal_primes, unique_minimal_prime })
}
