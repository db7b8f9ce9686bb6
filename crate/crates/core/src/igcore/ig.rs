//! `S = {(a, phi(a)) : a in A}` inside `A x| G` and its group of fractions.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::action::{GenAction, GroupElement};
use super::cocycle::{verify_cocycle, CosetCocycle};
use crate::error::{Error, Result};
use crate::monoid::AffineMonoid;

/// An element `(a, g)` of `Z^r x| G`. Elements of `SS^-1` have
/// `g = phi-bar(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IGElement {
    pub translation: Vec<i64>,
    pub g: GroupElement,
}

/// Evidence that `S` is not of I-type: fewer lattice dimensions than
/// indecomposables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotITypeCertificate {
    pub rank: usize,
    pub indecomposables: usize,
}

#[derive(Clone, Debug)]
pub struct IGMonoid {
    base: AffineMonoid,
    action: GenAction,
    cocycle: CosetCocycle,
    orbit: Vec<Vec<i64>>,
    notes: Vec<String>,
}

/// Validates the data and assembles `S`. The kernel is enlarged to
/// `{v : phi-bar(v) = 1}` and `G` is cut down to the subgroup generated by
/// the values of `phi`.
pub fn build_ig(a: AffineMonoid, g: GenAction, c: CosetCocycle) -> Result<IGMonoid> {
    if g.rank() != a.rank() || c.kernel().ambient_rank() != a.rank() {
        return Err(Error::InvalidCocycle("action, cocycle and monoid disagree on the rank".into()));
    }
    let report = verify_cocycle(&c, &g);
    if !report.valid() {
        let detail = if !report.identity_at_zero {
            "phi(0) is not the identity".to_string()
        } else if !report.kernel_invariant {
            "the kernel lattice is not invariant under the group".to_string()
        } else {
            format!("{} coset pairs violate the cocycle law, first {:?}", report.violations.len(), report.violations[0])
        };
        return Err(Error::InvalidCocycle(detail));
    }
    let c = c.normalized()?;
    let mut notes = Vec::new();
    let on_gens: Vec<GroupElement> = (0..a.generator_count()).map(|j| c.phi_bar(a.image(j))).collect();
    let sub = g.generated(&on_gens);
    let (g, c) = if sub.len() < g.order() {
        notes.push(format!("group reduced from order {} to the order {} subgroup of values of phi", g.order(), sub.len()));
        let relabel = |x: GroupElement| sub.iter().position(|&y| y == x).expect("phi values lie in the subgroup");
        (g.subgroup(&sub), c.relabeled(relabel))
    } else {
        (g, c)
    };
    if g.order() % c.index() != 0 {
        return Err(Error::NotIgType(format!("kernel index {} does not divide |G| = {}", c.index(), g.order())));
    }
    let orbit = orbit_closure(&a, &g);
    Ok(IGMonoid { base: a, action: g, cocycle: c, orbit, notes })
}

fn orbit_closure(a: &AffineMonoid, g: &GenAction) -> Vec<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut out = Vec::new();
    for img in a.images() {
        if seen.insert(img.clone()) {
            out.push(img.clone());
        }
    }
    let mut i = 0;
    while i < out.len() {
        for h in g.elements() {
            let y = g.apply(h, &out[i]);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

impl IGMonoid {
    /// The same action and cocycle over another `G`-invariant monoid with
    /// the same group of fractions.
    pub fn rebase(&self, base: AffineMonoid) -> Result<IGMonoid> {
        if base.rank() != self.rank() {
            return Err(Error::PreconditionUnmet("rebasing needs the same lattice".into()));
        }
        let action = self.action.without_generator_permutations();
        for h in action.elements() {
            if base.images().iter().any(|g| !base.in_cone(&action.apply(h, g))) {
                return Err(Error::PreconditionUnmet("the new monoid is not invariant under the group".into()));
            }
        }
        let orbit = orbit_closure(&base, &action);
        Ok(IGMonoid { base, action, cocycle: self.cocycle.clone(), orbit, notes: self.notes.clone() })
    }

    pub fn base(&self) -> &AffineMonoid {
        &self.base
    }

    pub fn action(&self) -> &GenAction {
        &self.action
    }

    pub fn cocycle(&self) -> &CosetCocycle {
        &self.cocycle
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn phi_bar(&self, a: &[i64]) -> GroupElement {
        self.cocycle.phi_bar(a)
    }

    /// The element `(a, phi-bar(a))` of `SS^-1`.
    pub fn element(&self, a: &[i64]) -> IGElement {
        IGElement { translation: a.to_vec(), g: self.phi_bar(a) }
    }

    pub fn identity(&self) -> IGElement {
        IGElement { translation: vec![0; self.rank()], g: 0 }
    }

    /// Product in `Z^r x| G`: `(a, g)(b, h) = (a + M_g b, gh)`.
    pub fn semidirect(&self, x: &IGElement, y: &IGElement) -> IGElement {
        let moved = self.action.apply(x.g, &y.translation);
        IGElement {
            translation: x.translation.iter().zip(&moved).map(|(a, b)| a + b).collect(),
            g: self.action.mul(x.g, y.g),
        }
    }

    /// Product of two elements of `SS^-1`; the result again has linear
    /// part `phi-bar` of its translation.
    pub fn multiply(&self, x: &IGElement, y: &IGElement) -> IGElement {
        let z = self.semidirect(x, y);
        assert_eq!(z.g, self.phi_bar(&z.translation), "product left the group of fractions");
        z
    }

    pub fn inverse(&self, x: &IGElement) -> IGElement {
        let gi = self.action.inv(x.g);
        IGElement { translation: self.action.apply(gi, &x.translation).iter().map(|v| -v).collect(), g: gi }
    }

    pub fn power(&self, x: &IGElement, k: usize) -> IGElement {
        (0..k).fold(self.identity(), |acc, _| self.semidirect(&acc, x))
    }

    pub fn is_identity(&self, x: &IGElement) -> bool {
        x.g == 0 && x.translation.iter().all(|&v| v == 0)
    }

    /// Whether `x` lies in `SS^-1`.
    pub fn in_fraction_group(&self, x: &IGElement) -> bool {
        x.g == self.phi_bar(&x.translation)
    }

    /// `k = [Z^r : N]`.
    pub fn kernel_index(&self) -> usize {
        self.cocycle.index()
    }

    /// `sum over g in G of g(b)`, a `G`-invariant element.
    pub fn g_norm(&self, b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for h in self.action.elements() {
            for (o, x) in out.iter_mut().zip(self.action.apply(h, b)) {
                *o += x;
            }
        }
        out
    }

    /// `B`: the generators of `A` closed under `G`; `S` is generated by
    /// `(b, phi(b))` for `b` in `B`.
    pub fn orbit_generators(&self) -> &[Vec<i64>] {
        &self.orbit
    }

    pub fn not_i_type_certificate(&self) -> Result<Option<NotITypeCertificate>> {
        let indecomposables = self.base.indecomposables()?.len();
        let rank = self.rank();
        Ok((rank < indecomposables).then_some(NotITypeCertificate { rank, indecomposables }))
    }

    /// `(a, g)` rendered as `(u3 u2^-1, (12)(34))`.
    pub fn format_element(&self, x: &IGElement) -> String {
        format!("({}, {})", self.base.format_monomial(&x.translation), self.action.label(x.g))
    }
}

impl fmt::Display for IGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, g{})", self.translation, self.g)
    }
}
