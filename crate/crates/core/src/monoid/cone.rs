//! Rational polyhedral cones in `Z^r`, exact and brute force.
//!
//! The same routine produces facets of a cone given by generators and rays
//! of a cone given by inequalities: both are the extreme elements of a dual
//! description.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::intlat::{big, left_kernel, IntMatrix, Sublattice};

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn primitive(v: &[BigInt]) -> Vec<i64> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    v.iter()
        .map(|x| if g.is_zero() { 0 } else { (x / &g).to_i64().expect("form exceeds i64") })
        .collect()
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub(crate) fn rank_of(vectors: &[&Vec<i64>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i64>> = vectors.iter().map(|v| (*v).clone()).collect();
    IntMatrix::from_rows(dim, &rows).rank()
}

/// Primitive integer forms `c` with `c . v >= 0` for every input vector and
/// whose zero set among the inputs has rank `dim - 1`.
///
/// Applied to the generators of a full-dimensional cone this yields its
/// facet normals; applied to inequality rows of a pointed cone it yields
/// its extreme rays. Output is sorted.
pub fn extreme_forms(vectors: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let distinct: Vec<Vec<i64>> = vectors
        .iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut found = BTreeSet::new();
    if dim == 0 {
        return vec![];
    }
    for subset in combinations(distinct.len(), dim - 1) {
        let rows: Vec<&Vec<i64>> = subset.iter().map(|&i| &distinct[i]).collect();
        if rank_of(&rows, dim) != dim - 1 {
            continue;
        }
        // c with v . c = 0 for the chosen v: left kernel of the transpose
        let kernel = if rows.is_empty() {
            vec![big(&[1])]
        } else {
            let m = IntMatrix::from_rows(dim, &rows.iter().map(|v| (*v).clone()).collect::<Vec<_>>());
            left_kernel(&m.transpose())
        };
        debug_assert_eq!(kernel.len(), 1);
        let c = primitive(&kernel[0]);
        let signs: Vec<i64> = distinct.iter().map(|v| dot(&c, v).signum()).collect();
        if signs.iter().all(|&s| s >= 0) {
            found.insert(c);
        } else if signs.iter().all(|&s| s <= 0) {
            found.insert(c.iter().map(|x| -x).collect());
        }
    }
    found.into_iter().collect()
}

/// Lattice points of the half-open parallelepiped spanned by linearly
/// independent `rays` (a full basis of `Q^r`).
pub fn parallelepiped_points(rays: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = rays.len();
    let lat = Sublattice::from_generators(r, rays);
    let reps = lat.quotient_cosets().expect("rays must be linearly independent");
    let rm = IntMatrix::from_rows(r, rays);
    let det = rm.det();
    let adj = adjugate(&rm);
    reps.into_iter()
        .map(|c| {
            // lambda = c * R^-1 = (c * adj) / det
            let scaled = adj.apply_left(&big(&c));
            let mut p: Vec<BigInt> = big(&c);
            for (i, s) in scaled.iter().enumerate() {
                let fl = s.div_floor(&det);
                if fl.is_zero() {
                    continue;
                }
                for (j, x) in p.iter_mut().enumerate() {
                    *x -= &fl * rays[i][j];
                }
            }
            p.iter().map(|x| x.to_i64().expect("point exceeds i64")).collect()
        })
        .collect()
}

fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        adj[(0, 0)] = BigInt::from(1);
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let minor_rows: Vec<Vec<BigInt>> = (0..n)
                .filter(|&a| a != i)
                .map(|a| (0..n).filter(|&b| b != j).map(|b| m[(a, b)].clone()).collect())
                .collect();
            let minor = IntMatrix::from_big_rows(n - 1, &minor_rows).det();
            let signed = if (i + j) % 2 == 0 { minor } else { -minor };
            adj[(j, i)] = signed;
        }
    }
    adj
}

/// Hilbert basis of `C ∩ Z^r` for a pointed full-dimensional cone given by
/// its extreme `rays` and facet `forms`.
pub fn hilbert_basis(rays: &[Vec<i64>], forms: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = forms.first().map_or(0, Vec::len);
    let mut candidates: BTreeSet<Vec<i64>> = rays.iter().cloned().collect();
    for subset in combinations(rays.len(), r) {
        let chosen: Vec<Vec<i64>> = subset.iter().map(|&i| rays[i].clone()).collect();
        if rank_of(&chosen.iter().collect::<Vec<_>>(), r) < r {
            continue;
        }
        candidates.extend(parallelepiped_points(&chosen).into_iter().filter(|p| p.iter().any(|&x| x != 0)));
    }
    let cands: Vec<Vec<i64>> = candidates.into_iter().collect();
    let in_cone = |v: &[i64]| forms.iter().all(|f| dot(f, v) >= 0);
    cands
        .iter()
        .filter(|x| {
            !cands.iter().any(|h| {
                h != *x && {
                    let diff: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
                    in_cone(&diff)
                }
            })
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 2)[0], vec![0, 1]);
    }

    #[test]
    fn orthant_facets_and_rays() {
        let gens = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(extreme_forms(&gens, 2), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(extreme_forms(&[vec![1], vec![-1]], 1), Vec::<Vec<i64>>::new());
    }

    #[test]
    fn parallelepiped_of_index_two() {
        let pts = parallelepiped_points(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(pts.len(), 2);
        assert!(pts.contains(&vec![0, 0]));
        assert!(pts.contains(&vec![1, 0]));
    }

    #[test]
    fn hilbert_basis_of_a_non_unimodular_cone() {
        // cone spanned by (1,0) and (1,2): Hilbert basis adds (1,1)
        let rays = vec![vec![1, 0], vec![1, 2]];
        let forms = extreme_forms(&rays, 2);
        let hb = hilbert_basis(&rays, &forms);
        assert_eq!(hb, vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
    }
}
