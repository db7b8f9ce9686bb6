//! Periodic elements of `SS^-1`.
//!
//! `(a, g)^d = (T_g a, 1)` with `d = ord(g)` and `T_g = 1 + M_g + ... +
//! M_g^(d-1)`, so `(a, g)` is periodic iff `T_g a = 0`. Within a coset
//! `alpha + N` this is the lattice problem `T_g n = -T_g alpha`, `n in N`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::igcore::{mat_mul, mat_vec, GroupElement, IGElement, IGMonoid, Mat};
use crate::intlat::{big, combination, small, solve_affine_fixed_point, solve_integer_system, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionWitness {
    pub element: IGElement,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub torsion_free: bool,
    pub witness: Option<TorsionWitness>,
    pub cosets_checked: usize,
}

pub(crate) fn norm_matrix(s: &IGMonoid, g: GroupElement) -> Mat {
    let act = s.action();
    let r = s.rank();
    let mut total = vec![vec![0i64; r]; r];
    let mut power: Mat = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..act.element_order(g) {
        for (t, p) in total.iter_mut().zip(&power) {
            for (x, y) in t.iter_mut().zip(p) {
                *x += y;
            }
        }
        power = mat_mul(&power, act.matrix(g));
    }
    total
}

/// Whether `x` has finite order, i.e. is the identity or has `T_g a = 0`.
pub fn is_periodic(s: &IGMonoid, x: &IGElement) -> bool {
    let t = norm_matrix(s, x.g);
    mat_vec(&t, &x.translation).iter().all(|&v| v == 0)
}

fn verified(s: &IGMonoid, element: IGElement) -> TorsionWitness {
    let order = s.action().element_order(element.g);
    let mut p = s.identity();
    for j in 1..=order {
        p = s.multiply(&p, &element);
        assert_eq!(s.is_identity(&p), j == order, "witness order mismatch");
    }
    TorsionWitness { element, order }
}

/// Small witnesses first: points of a box around 0 in the coset.
fn small_witness(s: &IGMonoid, g: GroupElement, alpha: &[i64], radius: i64) -> Option<Vec<i64>> {
    let r = s.rank();
    let t = norm_matrix(s, g);
    let mut box_pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..r {
        box_pts = box_pts
            .into_iter()
            .flat_map(|p| (-radius..=radius).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    box_pts.sort_by_key(|p| (p.iter().map(|x| x.abs()).sum::<i64>(), p.iter().rev().map(|x| -x).collect::<Vec<_>>()));
    let coset = s.cocycle().coset_of(alpha);
    box_pts
        .into_iter()
        .find(|p| s.cocycle().coset_of(p) == coset && mat_vec(&t, p).iter().all(|&v| v == 0))
}

/// Exact decision, with a witness of minimal size in its coset when one
/// exists close to the origin.
pub fn is_torsion_free(s: &IGMonoid) -> TorsionReport {
    let c = s.cocycle();
    let basis = c.kernel().basis_i64();
    let mut checked = 0;
    for (alpha, &g) in c.representatives().iter().zip(c.values()) {
        if g == 0 {
            continue;
        }
        checked += 1;
        let t = norm_matrix(s, g);
        let tn: Vec<Vec<_>> = basis.iter().map(|b| big(&mat_vec(&t, b))).collect();
        let target: Vec<i64> = mat_vec(&t, alpha).iter().map(|v| -v).collect();
        let Some(coeffs) = combination(&tn, &big(&target)) else { continue };
        let coeffs = small(&coeffs);
        let mut a = alpha.clone();
        for (k, b) in coeffs.iter().zip(&basis) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += k * y;
            }
        }
        let a = small_witness(s, g, alpha, 2).unwrap_or(a);
        let witness = verified(s, IGElement { translation: a, g });
        return TorsionReport { torsion_free: false, witness: Some(witness), cosets_checked: checked };
    }
    TorsionReport { torsion_free: true, witness: None, cosets_checked: checked }
}

/// `g` acting on divisor exponent vectors: `(P_g x)_{pi(i)} = x_i`.
pub(crate) fn divisor_matrix(s: &IGMonoid, g: GroupElement) -> IntMatrix {
    let pi = s.action().facet_permutation(s.base(), g);
    let f = pi.len();
    let mut rows = vec![vec![0i64; f]; f];
    for (i, &j) in pi.iter().enumerate() {
        rows[j][i] = 1;
    }
    IntMatrix::from_rows(f, &rows)
}

/// Decides torsion through divisorial ideals: `(a, g)` is periodic iff
/// `div(a) + P_g x = x` for an integral divisor `x`. Solved per coset as
/// `[P_g - I | D B^T] (x, c) = -div(alpha)`.
pub fn divisorial_torsion_crosscheck(s: &IGMonoid) -> Result<bool> {
    let a = s.base();
    if !a.is_maximal_order() {
        return Err(Error::PreconditionUnmet("the base monoid is not a maximal order".into()));
    }
    if !a.has_trivial_units() {
        return Err(Error::PreconditionUnmet("the base monoid has nontrivial units".into()));
    }
    let c = s.cocycle();
    let basis = c.kernel().basis_i64();
    let f = a.facets().len();
    for (alpha, &g) in c.representatives().iter().zip(c.values()) {
        if g == 0 {
            continue;
        }
        let pi = s.action().facet_permutation(a, g);
        let rows: Vec<Vec<i64>> = (0..f)
            .map(|i| {
                let mut row: Vec<i64> = (0..f).map(|j| i64::from(pi[j] == i) - i64::from(i == j)).collect();
                row.extend(basis.iter().map(|b| a.valuation(i, b)));
                row
            })
            .collect();
        let m = IntMatrix::from_rows(f + basis.len(), &rows);
        let rhs: Vec<i64> = (0..f).map(|i| -a.valuation(i, alpha)).collect();
        if let Some(sol) = solve_integer_system(&m, &big(&rhs)) {
            let sol = small(&sol);
            let mut point = alpha.clone();
            for (k, b) in sol[f..].iter().zip(&basis) {
                for (x, y) in point.iter_mut().zip(b) {
                    *x += k * y;
                }
            }
            let div = a.divisor_of(&point).0;
            assert!(solve_affine_fixed_point(&divisor_matrix(s, g), &big(&div)).is_some(), "fixed divisor must exist");
            return Ok(false);
        }
    }
    Ok(true)
}
