//! Bounded searches: elements enlarging the left order of an ideal, and
//! finite normal subgroups of `SS^-1`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::torsion::is_periodic;
use crate::error::{Error, Result};
use crate::igcore::{IGElement, IGMonoid};
use crate::intlat::{big, small, solve_integer_system, IntMatrix};
use crate::monoid::cone::{combinations, rank_of};
use crate::monoid::MembershipOracle;

/// `g I ⊆ I` for the ideal `I = S X S` and some `g` of `SS^-1` outside `S`,
/// so `S` is not a maximal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub element: IGElement,
    /// Translations of the ideal generators `X`.
    pub ideal: Vec<Vec<i64>>,
}

/// Elements `sum c_i u_i` with `0 <= c_i < k`. Every `s` in `A` is one of
/// these plus `k t` with `t` in `A`, and `k t` lies in the kernel of
/// `phi-bar`, so `phi(s)` only depends on that small part.
fn small_elements(s: &IGMonoid) -> Vec<Vec<i64>> {
    let k = s.kernel_index() as i64;
    let mut out: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; s.rank()]]);
    for g in s.base().images() {
        let current: Vec<Vec<i64>> = out.iter().cloned().collect();
        for p in current {
            for c in 1..k {
                out.insert(p.iter().zip(g).map(|(x, y)| x + c * y).collect());
            }
        }
    }
    out.into_iter().collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

struct IdealMembership<'a> {
    generators: Vec<Vec<i64>>,
    oracle: MembershipOracle<'a>,
}

impl IdealMembership<'_> {
    /// `y in J = union of (j + A)`.
    fn contains(&mut self, y: &[i64]) -> Result<bool> {
        for j in &self.generators {
            let d: Vec<i64> = y.iter().zip(j).map(|(a, b)| a - b).collect();
            match self.oracle.membership(&d) {
                crate::monoid::Membership::Member => return Ok(true),
                crate::monoid::Membership::NotMember => {}
                crate::monoid::Membership::Unknown => return Err(Error::MembershipUnknown),
            }
        }
        Ok(false)
    }
}

/// Generators of the translation set `J` of `S X S`, an ideal of `A`.
fn ideal_generators(s: &IGMonoid, x: &[Vec<i64>], small: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = BTreeSet::new();
    for s0 in small {
        let g = s.phi_bar(s0);
        for xk in x {
            out.insert(add(s0, &s.action().apply(g, xk)));
        }
    }
    out.into_iter().collect()
}

/// Exact test of `g I ⊆ I` for `I = S X S`, plus `g` outside `S`.
pub fn verify_witness(s: &IGMonoid, w: &Witness) -> Result<bool> {
    let a = s.base();
    if !s.in_fraction_group(&w.element) || a.contains(&w.element.translation)? {
        return Ok(false);
    }
    let small = small_elements(s);
    let mut ideal =
        IdealMembership { generators: ideal_generators(s, &w.ideal, &small), oracle: a.oracle() };
    check_left_multiplier(s, &w.element, &w.ideal, &small, &mut ideal)
}

fn check_left_multiplier(
    s: &IGMonoid,
    g: &IGElement,
    x: &[Vec<i64>],
    small: &[Vec<i64>],
    ideal: &mut IdealMembership<'_>,
) -> Result<bool> {
    let act = s.action();
    for s0 in small {
        let hs = act.mul(g.g, s.phi_bar(s0));
        let base = add(&g.translation, &act.apply(g.g, s0));
        for xk in x {
            if !ideal.contains(&add(&base, &act.apply(hs, xk)))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lattice points `v` outside `A` with `|sigma_i(v)| <= bound` for every
/// facet, ordered by total divisor size.
fn candidates(s: &IGMonoid, bound: i64) -> Result<Vec<Vec<i64>>> {
    let a = s.base();
    let r = a.rank();
    let facets = a.facets();
    let pick = combinations(facets.len(), r)
        .into_iter()
        .find(|c| rank_of(&c.iter().map(|&i| &facets[i]).collect::<Vec<_>>(), r) == r)
        .ok_or_else(|| Error::PreconditionUnmet("the cone is not pointed".into()))?;
    let m = IntMatrix::from_rows(r, &pick.iter().map(|&i| facets[i].clone()).collect::<Vec<_>>());
    let mut values: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..r {
        values = values.into_iter().flat_map(|v| (-bound..=bound).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    let mut out = Vec::new();
    for w in values {
        let Some(v) = solve_integer_system(&m, &big(&w)) else { continue };
        let v = small(&v);
        let div = a.divisor_of(&v).0;
        if div.iter().all(|d| d.abs() <= bound) && div.iter().any(|&d| d < 0) {
            out.push((div.iter().map(|d| d.abs()).sum::<i64>(), v));
        }
    }
    out.sort();
    Ok(out.into_iter().map(|(_, v)| v).collect())
}

/// Searches `g = (v, phi-bar(v))` with `v` outside `A` and divisor entries
/// bounded by `bound`, and ideals generated by one or two nonzero elements
/// of `A` of degree at most `bound`, with `g I ⊆ I`. `None` means nothing
/// was found within the bound.
pub fn non_maximal_witness(s: &IGMonoid, bound: usize) -> Result<Option<Witness>> {
    let a = s.base();
    let cands = candidates(s, bound as i64)?;
    let elements: Vec<Vec<i64>> = a
        .elements_up_to_degree(bound)
        .into_iter()
        .filter(|(p, d)| *d > 0 && p.iter().any(|&x| x != 0))
        .map(|(p, _)| p)
        .collect();
    let mut ideals: Vec<Vec<Vec<i64>>> = elements.iter().map(|e| vec![e.clone()]).collect();
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            ideals.push(vec![elements[i].clone(), elements[j].clone()]);
        }
    }
    let small = small_elements(s);
    let mut oracle = a.oracle();
    for x in &ideals {
        let mut ideal = IdealMembership { generators: ideal_generators(s, x, &small), oracle: a.oracle() };
        for v in &cands {
            let g = s.element(v);
            // s0 = 0 gives v + M_h x in A
            let quick = x.iter().all(|xk| {
                oracle.membership(&add(v, &s.action().apply(g.g, xk))) == crate::monoid::Membership::Member
            });
            if quick && check_left_multiplier(s, &g, x, &small, &mut ideal)? {
                return Ok(Some(Witness { element: g, ideal: x.clone() }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NormalSubgroupSearch {
    Found(Vec<IGElement>),
    NoneFoundUpToBound { bound: usize, periodic_elements: usize },
}

/// Closes each nontrivial periodic element with coordinates bounded by
/// `bound` under conjugation by the generators of `SS^-1` and under
/// products. A finite subgroup embeds in `G`, so closure aborts once it
/// exceeds `|G|` elements or meets an element of infinite order.
pub fn finite_normal_subgroup_search(s: &IGMonoid, bound: usize) -> NormalSubgroupSearch {
    let r = s.rank();
    let b = bound as i64;
    let mut points: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..r {
        points = points.into_iter().flat_map(|p| (-b..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    let periodic: Vec<IGElement> =
        points.iter().map(|p| s.element(p)).filter(|x| !s.is_identity(x) && is_periodic(s, x)).collect();
    let mut conjugators: Vec<IGElement> = Vec::new();
    for g in s.orbit_generators() {
        let x = s.element(g);
        conjugators.push(s.inverse(&x));
        conjugators.push(x);
    }
    let limit = s.action().order();
    for start in &periodic {
        if let Some(h) = close(s, start, &conjugators, limit) {
            return NormalSubgroupSearch::Found(h);
        }
    }
    NormalSubgroupSearch::NoneFoundUpToBound { bound, periodic_elements: periodic.len() }
}

fn close(s: &IGMonoid, start: &IGElement, conjugators: &[IGElement], limit: usize) -> Option<Vec<IGElement>> {
    let mut h: BTreeSet<IGElement> = BTreeSet::from([s.identity(), start.clone()]);
    loop {
        let current: Vec<IGElement> = h.iter().cloned().collect();
        let mut grew = false;
        let mut fresh = Vec::new();
        for x in &current {
            for c in conjugators {
                fresh.push(s.multiply(&s.multiply(c, x), &s.inverse(c)));
            }
            for y in &current {
                fresh.push(s.multiply(x, y));
            }
        }
        for y in fresh {
            if !is_periodic(s, &y) {
                return None;
            }
            if h.insert(y) {
                grew = true;
                if h.len() > limit {
                    return None;
                }
            }
        }
        if !grew {
            return Some(h.into_iter().collect());
        }
    }
}
