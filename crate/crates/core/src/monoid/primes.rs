//! Prime ideals of an affine monoid as complements of faces.

use std::collections::BTreeSet;

use serde::Serialize;

use super::cone::{dot, rank_of};
use super::AffineMonoid;

/// A prime `P = {x : sigma_i(x) > 0 for some i in facets}`; its complement
/// is the face cut out by the listed facet valuations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FacePrime {
    /// Facet indices vanishing on the face (a closed set).
    pub facets: Vec<usize>,
    /// Generators lying in the prime.
    pub generators: Vec<usize>,
    pub height: usize,
}

impl FacePrime {
    /// Whether a lattice point of `A` lies in the prime.
    pub fn contains(&self, a: &AffineMonoid, x: &[i64]) -> bool {
        self.facets.iter().any(|&i| a.valuation(i, x) > 0)
    }

    /// Linear form positive exactly on the prime, zero on the face.
    pub fn certificate(&self, a: &AffineMonoid) -> Vec<i64> {
        let mut l = vec![0; a.rank()];
        for &i in &self.facets {
            for (x, y) in l.iter_mut().zip(&a.facets()[i]) {
                *x += y;
            }
        }
        l
    }
}

impl AffineMonoid {
    fn face_generators(&self, t: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.generator_count())
            .filter(|&g| t.iter().all(|&i| self.valuation(i, self.image(g)) == 0))
            .collect()
    }

    fn closure(&self, t: &BTreeSet<usize>) -> BTreeSet<usize> {
        let face = self.face_generators(t);
        (0..self.facets().len())
            .filter(|&i| face.iter().all(|&g| self.valuation(i, self.image(g)) == 0))
            .collect()
    }

    fn prime_of(&self, t: &BTreeSet<usize>) -> FacePrime {
        let face = self.face_generators(t);
        let face_images: Vec<&Vec<i64>> = face.iter().map(|&g| &self.images[g]).collect();
        let height = self.rank() - rank_of(&face_images, self.rank());
        let generators = (0..self.generator_count()).filter(|g| !face.contains(g)).collect();
        FacePrime { facets: t.iter().copied().collect(), generators, height }
    }

    /// One prime per facet, in facet order (`Q1, Q2, ...`).
    pub fn minimal_primes(&self) -> Vec<FacePrime> {
        (0..self.facets().len()).map(|i| self.prime_of(&self.closure(&BTreeSet::from([i])))).collect()
    }

    /// All nonempty primes, by height then facet set; optionally filtered.
    pub fn prime_spectrum(&self, height: Option<usize>) -> Vec<FacePrime> {
        let faces = self.closed_facet_sets();
        let mut primes: Vec<FacePrime> =
            faces.iter().filter(|t| !t.is_empty()).map(|t| self.prime_of(t)).collect();
        primes.sort_by(|a, b| (a.height, &a.facets).cmp(&(b.height, &b.facets)));
        debug_assert!(primes.iter().all(|p| self.chain_height(p, &primes) == p.height));
        debug_assert!(primes.iter().all(|p| self.verify_prime(p)));
        match height {
            Some(h) => primes.into_iter().filter(|p| p.height == h).collect(),
            None => primes,
        }
    }

    fn closed_facet_sets(&self) -> BTreeSet<BTreeSet<usize>> {
        let start = self.closure(&BTreeSet::new());
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = vec![start];
        while let Some(t) = queue.pop() {
            for i in 0..self.facets().len() {
                if t.contains(&i) {
                    continue;
                }
                let mut bigger = t.clone();
                bigger.insert(i);
                let c = self.closure(&bigger);
                if seen.insert(c.clone()) {
                    queue.push(c);
                }
            }
        }
        seen
    }

    /// Length of the longest chain `0 = P_0 < ... < P` among `primes`.
    pub fn chain_height(&self, p: &FacePrime, primes: &[FacePrime]) -> usize {
        let below: Vec<&FacePrime> = primes
            .iter()
            .filter(|q| q.facets.len() < p.facets.len() && q.facets.iter().all(|i| p.facets.contains(i)))
            .collect();
        1 + below.iter().map(|q| self.chain_height(q, primes)).max().unwrap_or(0)
    }

    /// The face generators are exactly those where the certificate vanishes,
    /// and it is nonnegative on every generator.
    pub fn verify_prime(&self, p: &FacePrime) -> bool {
        let l = p.certificate(self);
        (0..self.generator_count()).all(|g| {
            let v = dot(&l, self.image(g));
            v >= 0 && (v > 0) == p.generators.contains(&g)
        })
    }
}
