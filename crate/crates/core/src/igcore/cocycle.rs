//! The map `phi` encoded on the finite quotient `Z^r / N`.

use std::collections::HashMap;

use serde::Serialize;

use super::action::{GenAction, GroupElement};
use crate::error::{Error, Result};
use crate::intlat::{big, left_kernel, small, solve_integer_system, IntMatrix, Sublattice};
use crate::monoid::AffineMonoid;

/// `phi-bar : Z^r -> G`, constant on the cosets of a finite-index lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCocycle {
    kernel: Sublattice,
    reps: Vec<Vec<i64>>,
    values: Vec<GroupElement>,
    lookup: HashMap<Vec<i64>, usize>,
}

impl CosetCocycle {
    /// From a lattice and one `(representative, value)` pair per coset.
    pub fn new(kernel: Sublattice, entries: &[(Vec<i64>, GroupElement)]) -> Result<Self> {
        let reps = kernel.quotient_cosets()?;
        let lookup: HashMap<Vec<i64>, usize> = reps.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut values = vec![None; reps.len()];
        for (v, g) in entries {
            if v.len() != kernel.ambient_rank() {
                return Err(Error::InvalidCocycle(format!("coset vector {v:?} has wrong length")));
            }
            let i = lookup[&kernel.reduce(v)];
            if values[i].replace(*g).is_some() {
                return Err(Error::InvalidCocycle(format!("coset of {v:?} listed twice")));
            }
        }
        let values = values
            .into_iter()
            .zip(&reps)
            .map(|(v, r)| v.ok_or_else(|| Error::InvalidCocycle(format!("no value for the coset of {r:?}"))))
            .collect::<Result<_>>()?;
        Ok(CosetCocycle { kernel, reps, values, lookup })
    }

    pub fn trivial(rank: usize) -> Self {
        CosetCocycle::new(Sublattice::full(rank), &[(vec![0; rank], 0)]).expect("full lattice")
    }

    /// `phi-bar(v) = values[f(v) mod m]` for a form `f` given by its values on
    /// the generators of `a`.
    pub fn from_grading(a: &AffineMonoid, weights: &[i64], modulus: i64, values: &[GroupElement]) -> Result<Self> {
        let n = a.generator_count();
        let r = a.rank();
        if weights.len() != n || modulus <= 0 || values.len() != modulus as usize {
            return Err(Error::InvalidCocycle("grading needs one weight per generator and one value per residue".into()));
        }
        // P f + m t = w over the integers
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let mut row = a.image(j).to_vec();
                row.extend((0..n).map(|k| if k == j { modulus } else { 0 }));
                row
            })
            .collect();
        let sol = solve_integer_system(&IntMatrix::from_rows(r + n, &rows), &big(weights))
            .ok_or_else(|| Error::NotIgType("grading is not well defined on the group of fractions".into()))?;
        let form = small(&sol[..r]);
        let mut col: Vec<Vec<i64>> = form.iter().map(|&x| vec![x]).collect();
        col.push(vec![modulus]);
        let gens: Vec<Vec<i64>> =
            left_kernel(&IntMatrix::from_rows(1, &col)).iter().map(|k| small(&k[..r])).collect();
        let kernel = Sublattice::from_generators(r, &gens);
        let reps = kernel.quotient_cosets()?;
        let entries: Vec<(Vec<i64>, GroupElement)> = reps
            .into_iter()
            .map(|v| {
                let s: i64 = form.iter().zip(&v).map(|(x, y)| x * y).sum();
                let g = values[s.rem_euclid(modulus) as usize];
                (v, g)
            })
            .collect();
        CosetCocycle::new(kernel, &entries)
    }

    /// Infers `phi` on `A` from its values on the generators by
    /// `phi(a + M_{phi(a)} u) = phi(a) phi(u)`, then reads off the kernel
    /// lattice and certifies the table on the quotient. Tries degrees
    /// `2..=max_degree`.
    pub fn infer(a: &AffineMonoid, action: &GenAction, gen_values: &[GroupElement], max_degree: usize) -> Result<Self> {
        if gen_values.len() != a.generator_count() {
            return Err(Error::InvalidCocycle("one value per generator is required".into()));
        }
        if action.generator_permutation(0).is_none() {
            return Err(Error::InvalidCocycle("inference needs an action permuting the generators".into()));
        }
        for degree in 2..=max_degree.max(2) {
            let known = propagate(a, action, gen_values, degree)?;
            if let Some(c) = Self::from_samples(a.rank(), action, &known) {
                return Ok(c);
            }
        }
        Err(Error::PeriodInferenceFailed(max_degree))
    }

    fn from_samples(rank: usize, action: &GenAction, known: &HashMap<Vec<i64>, GroupElement>) -> Option<Self> {
        let mut kernel_pts: Vec<Vec<i64>> = known.iter().filter(|(_, &g)| g == 0).map(|(p, _)| p.clone()).collect();
        kernel_pts.sort();
        let kernel = Sublattice::from_generators(rank, &kernel_pts);
        if !kernel.is_full_rank() {
            return None;
        }
        let mut entries: HashMap<Vec<i64>, GroupElement> = HashMap::new();
        for (p, &g) in known {
            let key = kernel.reduce(p);
            if entries.get(&key).is_some_and(|&h| h != g) {
                return None;
            }
            entries.insert(key, g);
        }
        let mut list: Vec<(Vec<i64>, GroupElement)> = entries.into_iter().collect();
        list.sort();
        let c = CosetCocycle::new(kernel, &list).ok()?;
        verify_cocycle(&c, action).valid().then_some(c)
    }

    /// Enlarges the kernel to `{v : phi-bar(v) = 1}`.
    pub fn normalized(&self) -> Result<Self> {
        let extra: Vec<Vec<i64>> =
            self.reps.iter().zip(&self.values).filter(|(_, &g)| g == 0).map(|(r, _)| r.clone()).collect();
        let mut gens = self.kernel.basis_i64();
        gens.extend(extra);
        let kernel = Sublattice::from_generators(self.kernel.ambient_rank(), &gens);
        if kernel == self.kernel {
            return Ok(self.clone());
        }
        let mut entries: HashMap<Vec<i64>, GroupElement> = HashMap::new();
        for (r, &g) in self.reps.iter().zip(&self.values) {
            let k = kernel.reduce(r);
            if entries.get(&k).is_some_and(|&h| h != g) {
                return Err(Error::InvalidCocycle("values are not constant on cosets of the kernel".into()));
            }
            entries.insert(k, g);
        }
        let mut list: Vec<(Vec<i64>, GroupElement)> = entries.into_iter().collect();
        list.sort();
        CosetCocycle::new(kernel, &list)
    }

    /// Same table with group elements renamed by `map`.
    pub fn relabeled(&self, map: impl Fn(GroupElement) -> GroupElement) -> Self {
        CosetCocycle { values: self.values.iter().map(|&g| map(g)).collect(), ..self.clone() }
    }

    pub fn kernel(&self) -> &Sublattice {
        &self.kernel
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Vec<i64>] {
        &self.reps
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    pub fn coset_of(&self, v: &[i64]) -> usize {
        self.lookup[&self.kernel.reduce(v)]
    }

    pub fn phi_bar(&self, v: &[i64]) -> GroupElement {
        self.values[self.coset_of(v)]
    }
}

fn propagate(
    a: &AffineMonoid,
    action: &GenAction,
    gen_values: &[GroupElement],
    degree: usize,
) -> Result<HashMap<Vec<i64>, GroupElement>> {
    let zero = vec![0; a.rank()];
    let mut known = HashMap::from([(zero.clone(), 0)]);
    let mut layer = vec![zero];
    for _ in 0..degree {
        let mut next = Vec::new();
        for p in &layer {
            let g = known[p];
            let perm = action.generator_permutation(g).expect("checked by caller");
            for (k, &gk) in gen_values.iter().enumerate() {
                let step = a.image(perm.apply(k));
                let q: Vec<i64> = p.iter().zip(step).map(|(x, y)| x + y).collect();
                let value = action.mul(g, gk);
                match known.get(&q) {
                    Some(&old) if old != value => {
                        return Err(Error::NotIgType(format!(
                            "phi takes the values {} and {} at {:?}",
                            action.label(old),
                            action.label(value),
                            q
                        )));
                    }
                    Some(_) => {}
                    None => {
                        known.insert(q.clone(), value);
                        next.push(q);
                    }
                }
            }
        }
        layer = next;
    }
    Ok(known)
}

/// Result of checking `phi(a)phi(b) = phi(a + M_{phi(a)} b)` on all coset
/// pairs, and `g N = N` for every group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub kernel_index: usize,
    pub checked_pairs: usize,
    pub violations: Vec<(Vec<i64>, Vec<i64>)>,
    pub kernel_invariant: bool,
    pub identity_at_zero: bool,
}

impl CocycleReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty() && self.kernel_invariant && self.identity_at_zero
    }
}

pub fn verify_cocycle(c: &CosetCocycle, g: &GenAction) -> CocycleReport {
    let kernel_invariant = g.elements().all(|h| {
        c.kernel.basis_i64().iter().all(|b| c.kernel.contains(&g.apply(h, b)))
    });
    let mut violations = Vec::new();
    for (alpha, &ga) in c.reps.iter().zip(&c.values) {
        for (beta, &gb) in c.reps.iter().zip(&c.values) {
            let moved = g.apply(ga, beta);
            let sum: Vec<i64> = alpha.iter().zip(&moved).map(|(x, y)| x + y).collect();
            if g.mul(ga, gb) != c.phi_bar(&sum) {
                violations.push((alpha.clone(), beta.clone()));
            }
        }
    }
    CocycleReport {
        kernel_index: c.index(),
        checked_pairs: c.index() * c.index(),
        violations,
        kernel_invariant,
        identity_at_zero: c.phi_bar(&vec![0; c.kernel.ambient_rank()]) == 0,
    }
}
