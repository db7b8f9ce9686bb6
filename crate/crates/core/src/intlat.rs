//! Exact integer lattice linear algebra.
//!
//! Matrices carry arbitrary-precision entries. Normal forms are row-style:
//! `hermite_normal_form` returns `(h, u)` with `u * m = h`, and
//! `smith_normal_form` returns `(d, u, v)` with `u * m * v = d`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows. All rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn from_big_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigInt> {
        self.row(i).to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `v * self` for a row vector `v`.
    pub fn apply_left(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += c * &self[(i, j)];
            }
        }
        out
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = factor * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -&self[(i, j)];
            self[(i, j)] = x;
        }
    }

    /// Exact determinant (fraction-free Bareiss elimination).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let (h, _) = hermite_normal_form(self);
        (0..h.rows).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
    }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `u * m = h`. Nonzero rows of `h` come first, in echelon form with positive
/// pivots; entries above each pivot are reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        loop {
            // smallest nonzero magnitude at or below the pivot row
            let best = (pivot_row..h.rows)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(best, pivot_row);
            u.swap_rows(best, pivot_row);
            let mut done = true;
            for i in pivot_row + 1..h.rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                let neg = -q;
                h.add_row_multiple(i, pivot_row, &neg);
                u.add_row_multiple(i, pivot_row, &neg);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
            if !q.is_zero() {
                let neg = -q;
                h.add_row_multiple(i, pivot_row, &neg);
                u.add_row_multiple(i, pivot_row, &neg);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(d, u, v)` with `u`, `v` unimodular,
/// `u * m * v = d` diagonal, non-negative, and `d_1 | d_2 | ...`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let steps = m.rows.min(m.cols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { return (d, u, v) };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..d.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..d.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: pull an offending row into row t and retry
            let offending = (t + 1..d.rows)
                .find(|&i| (t + 1..d.cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Left kernel `{y : y * m = 0}` as a list of basis rows.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (h, u) = hermite_normal_form(m);
    (0..h.rows)
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row_vec(i))
        .collect()
}

/// Solves `a * x = b` over the integers (`x` a column vector).
pub fn solve_integer_system(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let (d, u, v) = smith_normal_form(a);
    let ub = u.apply(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, rhs) in ub.iter().enumerate() {
        let di = if i < d.cols { d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
        } else {
            let (q, r) = rhs.div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(v.apply(&y))
}

/// Integer solution of `m * x + t = x`, if one exists.
pub fn solve_affine_fixed_point(m: &IntMatrix, t: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows, m.cols, "affine map needs a square linear part");
    let mut shifted = m.clone();
    for i in 0..m.rows {
        shifted[(i, i)] -= 1;
    }
    let rhs: Vec<BigInt> = t.iter().map(|x| -x).collect();
    solve_integer_system(&shifted, &rhs)
}

/// A subgroup of `Z^n`, stored by its Hermite basis so that equal lattices
/// compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Sublattice {
    pub fn from_generators(ambient_rank: usize, gens: &[Vec<i64>]) -> Self {
        Self::from_matrix(&IntMatrix::from_rows(ambient_rank, gens))
    }

    pub fn from_big_generators(ambient_rank: usize, gens: &[Vec<BigInt>]) -> Self {
        Self::from_matrix(&IntMatrix::from_big_rows(ambient_rank, gens))
    }

    /// Lattice spanned by the rows of `m`.
    pub fn from_matrix(m: &IntMatrix) -> Self {
        let (h, _) = hermite_normal_form(m);
        let rows: Vec<Vec<BigInt>> = (0..h.rows)
            .map(|i| h.row_vec(i))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        Sublattice { ambient_rank: m.cols, basis: IntMatrix::from_big_rows(m.cols, &rows) }
    }

    pub fn full(rank: usize) -> Self {
        Sublattice { ambient_rank: rank, basis: IntMatrix::identity(rank) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_i64(&self) -> Vec<Vec<i64>> {
        self.basis.to_i64_rows().expect("lattice basis exceeds i64")
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_rank
    }

    /// Index in the ambient lattice, `None` when infinite.
    pub fn index(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        Some((0..self.rank()).map(|i| self.basis[(i, i)].clone()).product())
    }

    pub fn coefficients(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_rank);
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        let mut col = 0;
        for i in 0..self.rank() {
            while self.basis[(i, col)].is_zero() {
                if !rest[col].is_zero() {
                    return None;
                }
                col += 1;
            }
            let (q, r) = rest[col].div_rem(&self.basis[(i, col)]);
            if !r.is_zero() {
                return None;
            }
            for (j, x) in rest.iter_mut().enumerate() {
                *x -= &q * &self.basis[(i, j)];
            }
            coeffs.push(q);
            col += 1;
        }
        if rest.iter().all(Zero::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.coefficients(&big).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Sublattice) -> bool {
        (0..self.rank()).all(|i| other.coefficients(self.basis.row(i)).is_some())
    }

    /// Canonical representative of `v` modulo a full-rank lattice, with
    /// `0 <= v_i < h_ii` in Hermite coordinates.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        assert!(self.is_full_rank(), "reduction needs a full-rank lattice");
        let mut out: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for i in 0..self.rank() {
            let q = out[i].div_floor(&self.basis[(i, i)]);
            if q.is_zero() {
                continue;
            }
            for (j, x) in out.iter_mut().enumerate() {
                *x -= &q * &self.basis[(i, j)];
            }
        }
        out.iter().map(|x| x.to_i64().expect("coset representative exceeds i64")).collect()
    }

    /// Coset representatives of the ambient lattice modulo `self`, each in
    /// the canonical box used by [`Sublattice::reduce`].
    pub fn quotient_cosets(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_full_rank() {
            return Err(Error::InfiniteIndex { rank: self.rank(), ambient: self.ambient_rank });
        }
        let bounds: Vec<i64> = (0..self.rank())
            .map(|i| self.basis[(i, i)].to_i64().expect("index exceeds i64"))
            .collect();
        let mut reps = vec![vec![]];
        for b in bounds {
            reps = reps
                .into_iter()
                .flat_map(|r: Vec<i64>| {
                    (0..b).map(move |x| {
                        let mut r = r.clone();
                        r.push(x);
                        r
                    })
                })
                .collect();
        }
        Ok(reps)
    }

    pub fn intersect(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let n = self.ambient_rank;
        let (a, b) = (self.rank(), other.rank());
        let mut stacked = IntMatrix::zeros(a + b, n);
        for i in 0..a {
            for j in 0..n {
                stacked[(i, j)] = self.basis[(i, j)].clone();
            }
        }
        for i in 0..b {
            for j in 0..n {
                stacked[(a + i, j)] = -&other.basis[(i, j)];
            }
        }
        let gens: Vec<Vec<BigInt>> = left_kernel(&stacked)
            .into_iter()
            .map(|y| self.basis.apply_left(&y[..a]))
            .collect();
        Sublattice::from_big_generators(n, &gens)
    }

    /// Image of the lattice under `x -> m * x` (column convention).
    pub fn image(&self, m: &IntMatrix) -> Sublattice {
        let gens: Vec<Vec<BigInt>> = (0..self.rank()).map(|i| m.apply(self.basis.row(i))).collect();
        Sublattice::from_big_generators(m.rows, &gens)
    }
}

/// Coefficients `c` with `c * basis = v`, or `None` when `v` is not in the lattice.
pub fn lattice_membership(l: &Sublattice, v: &[BigInt]) -> Option<Vec<BigInt>> {
    l.coefficients(v)
}

pub fn quotient_cosets(l: &Sublattice) -> Result<Vec<Vec<i64>>> {
    l.quotient_cosets()
}

/// Integer coefficients expressing `v` over an arbitrary (possibly
/// dependent) list of generators.
pub fn combination(gens: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    if gens.is_empty() {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    let a = IntMatrix::from_big_rows(v.len(), gens).transpose();
    solve_integer_system(&a, v)
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("value exceeds i64")).collect()
}
