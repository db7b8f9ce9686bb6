//! Finitely generated cancellative abelian monoids embedded in `Z^r`.
//!
//! A monoid is given either by a presentation (generators and binomial
//! relations) or by generator vectors in some ambient `Z^d`. In both cases
//! the group of fractions is identified with `Z^r`; when some `r` generators
//! form a lattice basis they become the unit vectors, so that for
//! `<u1..u4 | u1u2 = u3u4>` the images are `e1, e2, e3, e1+e2-e3`.

pub mod cone;
mod primes;

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlat::{big, left_kernel, small, smith_normal_form, solve_integer_system, IntMatrix, Sublattice};
use cone::{combinations, dot, extreme_forms, hilbert_basis, parallelepiped_points, rank_of};

pub use primes::FacePrime;

/// Default budget (memoized states) for exact membership search.
pub const DEFAULT_MEMBERSHIP_BUDGET: usize = 2_000_000;

/// Generators and binomial relations `lhs = rhs` on exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub names: Vec<String>,
    pub relations: Vec<(Vec<i64>, Vec<i64>)>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relations: Vec<(Vec<i64>, Vec<i64>)>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidPresentation("no generators".into()));
        }
        for (k, (l, r)) in relations.iter().enumerate() {
            if l.len() != n || r.len() != n {
                return Err(Error::InvalidPresentation(format!("relation {} has wrong arity", k + 1)));
            }
            if l.iter().chain(r).any(|&x| x < 0) {
                return Err(Error::InvalidPresentation(format!("relation {} has negative exponents", k + 1)));
            }
            if l.iter().chain(r).all(|&x| x == 0) {
                return Err(Error::InvalidPresentation(format!("relation {} is empty", k + 1)));
            }
        }
        Ok(Presentation { names, relations })
    }

    /// Free abelian monoid on `n` generators `u1..un`.
    pub fn free(n: usize) -> Self {
        Presentation { names: (1..=n).map(|i| format!("u{i}")).collect(), relations: vec![] }
    }
}

/// How the internal coordinates of `Z^r` relate to the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub dim: usize,
    /// Row `i` is the ambient vector of the `i`-th internal unit vector.
    pub basis: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Member,
    NotMember,
    /// The search budget ran out before a decision.
    Unknown,
}

/// Exponent vector over the minimal primes of a maximal-order monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Divisor(pub Vec<i64>);

#[derive(Clone, Debug)]
pub struct AffineMonoid {
    names: Vec<String>,
    rank: usize,
    images: Vec<Vec<i64>>,
    presentation: Option<Presentation>,
    ambient: Option<Ambient>,
    facets: Vec<Vec<i64>>,
    normal: OnceLock<bool>,
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.rank == other.rank && self.images == other.images
    }
}

impl AffineMonoid {
    /// Embeds a presented monoid into its group of fractions.
    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        let n = p.names.len();
        let diffs: Vec<Vec<i64>> =
            p.relations.iter().map(|(l, r)| l.iter().zip(r).map(|(a, b)| a - b).collect()).collect();
        let (images, _) = if diffs.is_empty() {
            ((0..n).map(|i| unit(n, i)).collect::<Vec<_>>(), ())
        } else {
            (quotient_images(n, &diffs)?, ())
        };
        let rank = images.first().map_or(0, Vec::len);
        if rank == 0 {
            return Err(Error::InvalidPresentation("group of fractions is trivial".into()));
        }
        let images = normalize_coordinates(&images, rank).0;
        Ok(Self::assemble(p.names.clone(), rank, images, Some(p.clone()), None))
    }

    /// Builds the submonoid of `Z^d` generated by `vectors`.
    pub fn from_ambient(names: Vec<String>, dim: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        if names.len() != vectors.len() || names.is_empty() {
            return Err(Error::InvalidPresentation("generator count mismatch".into()));
        }
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidPresentation(format!("vectors must have {dim} entries")));
        }
        let lattice = Sublattice::from_generators(dim, vectors);
        let rank = lattice.rank();
        if rank == 0 {
            return Err(Error::InvalidPresentation("generators span the zero lattice".into()));
        }
        let hb = lattice.basis_i64();
        let coords: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| small(&lattice.coefficients(&big(v)).expect("generator in its own lattice")))
            .collect();
        let (images, change) = normalize_coordinates(&coords, rank);
        // change: new basis vectors expressed in hermite coordinates
        let basis = change
            .iter()
            .map(|c| (0..dim).map(|j| c.iter().zip(&hb).map(|(a, row)| a * row[j]).sum()).collect())
            .collect();
        Ok(Self::assemble(names, rank, images, None, Some(Ambient { dim, basis })))
    }

    /// Submonoid of `Z^r` generated by `images`, which must span `Z^r`;
    /// coordinates are kept as given.
    pub fn from_lattice_points(names: Vec<String>, rank: usize, images: Vec<Vec<i64>>) -> Result<Self> {
        if Sublattice::from_generators(rank, &images) != Sublattice::full(rank) {
            return Err(Error::InvalidPresentation("generators do not span the lattice".into()));
        }
        Ok(Self::assemble(names, rank, images, None, None))
    }

    fn assemble(
        names: Vec<String>,
        rank: usize,
        images: Vec<Vec<i64>>,
        presentation: Option<Presentation>,
        ambient: Option<Ambient>,
    ) -> Self {
        let mut facets = extreme_forms(&images, rank);
        // order minimal primes by their generator sets
        facets.sort_by_key(|f| {
            let members: Vec<usize> = images.iter().enumerate().filter(|(_, g)| dot(f, g) > 0).map(|(i, _)| i).collect();
            (members, f.clone())
        });
        AffineMonoid { names, rank, images, presentation, ambient, facets, normal: OnceLock::new() }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &[i64] {
        &self.images[i]
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn ambient(&self) -> Option<&Ambient> {
        self.ambient.as_ref()
    }

    /// Primitive facet valuations of the cone, in minimal-prime order.
    pub fn facets(&self) -> &[Vec<i64>] {
        &self.facets
    }

    pub fn valuation(&self, facet: usize, v: &[i64]) -> i64 {
        dot(&self.facets[facet], v)
    }

    /// Lattice point of an exponent vector over the generators.
    pub fn point_of_exponents(&self, e: &[i64]) -> Vec<i64> {
        assert_eq!(e.len(), self.images.len());
        let mut out = vec![0; self.rank];
        for (c, g) in e.iter().zip(&self.images) {
            for (o, x) in out.iter_mut().zip(g) {
                *o += c * x;
            }
        }
        out
    }

    /// Internal coordinates of an ambient vector, if it lies in the lattice.
    pub fn point_of_ambient(&self, v: &[i64]) -> Option<Vec<i64>> {
        let amb = self.ambient.as_ref()?;
        let m = IntMatrix::from_rows(amb.dim, &amb.basis).transpose();
        solve_integer_system(&m, &big(v)).map(|x| small(&x))
    }

    pub fn ambient_of_point(&self, p: &[i64]) -> Option<Vec<i64>> {
        let amb = self.ambient.as_ref()?;
        Some((0..amb.dim).map(|j| p.iter().zip(&amb.basis).map(|(c, row)| c * row[j]).sum()).collect())
    }

    pub fn in_cone(&self, v: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(f, v) >= 0)
    }

    /// Generators of the unit group `A ∩ -A` (indices of unit generators).
    pub fn unit_generators(&self) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&i| self.facets.iter().all(|f| dot(f, &self.images[i]) == 0))
            .collect()
    }

    /// `U(A)` as lattice points; empty when the unit group is trivial.
    pub fn units(&self) -> Vec<Vec<i64>> {
        self.unit_generators()
            .into_iter()
            .map(|i| self.images[i].clone())
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn has_trivial_units(&self) -> bool {
        self.units().is_empty()
    }

    /// Positive grading: sum of facet valuations (strictly positive on
    /// nonzero elements of a pointed monoid).
    pub fn degree_form(&self) -> Vec<i64> {
        let mut l = vec![0; self.rank];
        for f in &self.facets {
            for (a, b) in l.iter_mut().zip(f) {
                *a += b;
            }
        }
        l
    }

    pub fn oracle(&self) -> MembershipOracle<'_> {
        MembershipOracle::new(self, DEFAULT_MEMBERSHIP_BUDGET)
    }

    pub fn membership(&self, v: &[i64]) -> Membership {
        self.oracle().membership(v)
    }

    /// Exact membership; errors only when the search budget runs out.
    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        match self.membership(v) {
            Membership::Member => Ok(true),
            Membership::NotMember => Ok(false),
            Membership::Unknown => Err(Error::MembershipUnknown),
        }
    }

    /// Generators that cannot be written as a sum of two non-units.
    pub fn indecomposables(&self) -> Result<Vec<usize>> {
        if !self.has_trivial_units() {
            return Err(Error::NontrivialUnits);
        }
        let mut oracle = self.oracle();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (i, g) in self.images.iter().enumerate() {
            if g.iter().all(|&x| x == 0) || !seen.insert(g.clone()) {
                continue;
            }
            let mut decomposable = false;
            for h in &self.images {
                if h == g || h.iter().all(|&x| x == 0) {
                    continue;
                }
                let rest: Vec<i64> = g.iter().zip(h).map(|(a, b)| a - b).collect();
                match oracle.membership(&rest) {
                    Membership::Member => {
                        decomposable = true;
                        break;
                    }
                    Membership::NotMember => {}
                    Membership::Unknown => return Err(Error::MembershipUnknown),
                }
            }
            if !decomposable {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Whether `A = Z^r ∩ cone(A)`, i.e. `A` is normal, equivalently a
    /// maximal order in its group of fractions.
    ///
    /// Every lattice point of the cone is a non-negative integer combination
    /// of some linearly independent generators plus a point of their
    /// half-open parallelepiped, so it suffices to test those points.
    pub fn is_maximal_order(&self) -> bool {
        *self.normal.get_or_init(|| self.check_normal())
    }

    fn check_normal(&self) -> bool {
        let distinct: Vec<Vec<i64>> = self
            .images
            .iter()
            .filter(|g| g.iter().any(|&x| x != 0))
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut oracle = self.oracle();
        let mut checked = BTreeSet::new();
        for subset in combinations(distinct.len(), self.rank) {
            let rays: Vec<Vec<i64>> = subset.iter().map(|&i| distinct[i].clone()).collect();
            if rank_of(&rays.iter().collect::<Vec<_>>(), self.rank) < self.rank {
                continue;
            }
            for p in parallelepiped_points(&rays) {
                if !checked.insert(p.clone()) {
                    continue;
                }
                if oracle.membership(&p) != Membership::Member {
                    return false;
                }
            }
        }
        true
    }

    /// Hilbert basis of `Z^r ∩ cone(A)` for a pointed cone.
    pub fn cone_hilbert_basis(&self) -> Result<Vec<Vec<i64>>> {
        if !self.has_trivial_units() {
            return Err(Error::NontrivialUnits);
        }
        let rays = extreme_forms(&self.facets, self.rank);
        Ok(hilbert_basis(&rays, &self.facets))
    }

    /// Exponents of `Ax` over the minimal primes: the facet valuations.
    pub fn divisorial_factorization(&self, x: &[i64]) -> Result<Divisor> {
        if !self.contains(x)? {
            return Err(Error::NotInMonoid(x.to_vec()));
        }
        if !self.is_maximal_order() {
            return Err(Error::NotMaximalOrder);
        }
        Ok(self.divisor_of(x))
    }

    /// Facet valuations of any lattice point (a fractional divisor).
    pub fn divisor_of(&self, x: &[i64]) -> Divisor {
        Divisor(self.facets.iter().map(|f| dot(f, x)).collect())
    }

    /// `{x in Z^r : sigma_i(x) >= 0 for i in qs}`, generated by a lattice
    /// basis of its unit group (both signs) and the Hilbert basis of the
    /// pointed quotient.
    pub fn localize(&self, qs: &[usize]) -> Result<AffineMonoid> {
        if qs.is_empty() || qs.iter().any(|&q| q >= self.facets.len()) {
            return Err(Error::PreconditionUnmet("localization needs a nonempty set of minimal primes".into()));
        }
        let r = self.rank;
        let forms: Vec<Vec<i64>> = qs.iter().map(|&q| self.facets[q].clone()).collect();
        // unit lattice: common kernel of the chosen forms (saturated)
        let lineality: Vec<Vec<i64>> =
            left_kernel(&IntMatrix::from_rows(r, &forms).transpose()).iter().map(|v| small(v)).collect();
        let l = lineality.len();
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for v in &lineality {
            gens.push(v.clone());
            gens.push(v.iter().map(|x| -x).collect());
        }
        if l < r {
            // coordinates y = x V with lineality = {y_i = 0 for i >= l}
            let (_, _, v) = smith_normal_form(&IntMatrix::from_rows(r, &lineality_or_empty(&lineality, r)));
            let v_inv = unimodular_inverse(&v);
            let q_forms: Vec<Vec<i64>> = forms
                .iter()
                .map(|f| small(&v_inv.apply(&big(f)))[l..].to_vec())
                .collect();
            let rays = extreme_forms(&q_forms, r - l);
            for h in hilbert_basis(&rays, &extreme_forms(&rays, r - l)) {
                let mut y = vec![0i64; l];
                y.extend(h);
                gens.push(small(&v_inv.apply_left(&big(&y))));
            }
        }
        let names = (1..=gens.len()).map(|i| format!("h{i}")).collect();
        AffineMonoid::from_lattice_points(names, r, gens)
    }

    /// Distinct lattice points reachable as sums of at most `max_degree`
    /// generators, each tagged with its smallest generator degree.
    pub fn elements_up_to_degree(&self, max_degree: usize) -> Vec<(Vec<i64>, usize)> {
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let zero = vec![0; self.rank];
        seen.insert(zero.clone(), 0);
        let mut out = vec![(zero.clone(), 0)];
        let mut layer = vec![zero];
        for d in 1..=max_degree {
            let mut next = Vec::new();
            for x in &layer {
                for g in &self.images {
                    let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| a + b).collect();
                    if !seen.contains_key(&y) {
                        seen.insert(y.clone(), d);
                        out.push((y.clone(), d));
                        next.push(y);
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// For each coordinate `i`, a generator whose image is `e_i`, if every
    /// coordinate has one.
    pub fn coordinate_generators(&self) -> Option<Vec<usize>> {
        (0..self.rank)
            .map(|i| self.images.iter().position(|g| g.iter().enumerate().all(|(j, &x)| x == i64::from(i == j))))
            .collect()
    }

    /// Laurent monomial in the coordinate generators, e.g. `u3 u2^-1`;
    /// falls back to a vector (ambient when embedded).
    pub fn format_monomial(&self, p: &[i64]) -> String {
        let Some(coords) = self.coordinate_generators() else {
            return format_vector(&self.ambient_of_point(p).unwrap_or_else(|| p.to_vec()));
        };
        let mut terms: Vec<(usize, i64)> = coords.into_iter().zip(p.iter().copied()).filter(|(_, e)| *e != 0).collect();
        terms.sort_by_key(|&(g, e)| (e < 0, g));
        if terms.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(g, e)| if e == 1 { self.names[g].clone() } else { format!("{}^{}", self.names[g], e) })
            .collect();
        parts.join(" ")
    }

    pub fn format_point(&self, p: &[i64]) -> String {
        format_vector(p)
    }

    /// Renders a generator subset as `(u1,u3)`.
    pub fn format_generators(&self, idx: &[usize]) -> String {
        let names: Vec<&str> = idx.iter().map(|&i| self.names[i].as_str()).collect();
        format!("({})", names.join(","))
    }
}

pub fn format_vector(p: &[i64]) -> String {
    let parts: Vec<String> = p.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn lineality_or_empty(rows: &[Vec<i64>], r: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        vec![vec![0; r]]
    } else {
        rows.to_vec()
    }
}

pub(crate) fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let cols: Vec<Vec<num_bigint::BigInt>> = (0..n)
        .map(|j| {
            let e = big(&unit(n, j));
            solve_integer_system(m, &e).expect("matrix must be unimodular")
        })
        .collect();
    IntMatrix::from_big_rows(n, &cols).transpose()
}

/// Images of the generators in `Z^n / <diffs>`, rejecting torsion.
fn quotient_images(n: usize, diffs: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let rel = IntMatrix::from_rows(n, diffs);
    let (d, _, v) = smith_normal_form(&rel);
    let steps = d.rows().min(d.cols());
    let invariants: Vec<num_bigint::BigInt> =
        (0..steps).map(|i| d[(i, i)].clone()).filter(|x| !x.is_zero()).collect();
    let torsion: Vec<String> = invariants.iter().filter(|x| !x.is_one()).map(|x| x.to_string()).collect();
    if !torsion.is_empty() {
        return Err(Error::TorsionQuotient(torsion));
    }
    let k = invariants.len();
    Ok((0..n)
        .map(|j| (k..n).map(|c| v[(j, c)].to_i64().expect("image exceeds i64")).collect())
        .collect())
}

/// Re-coordinatizes so that the lexicographically first `r` generators
/// forming a lattice basis become unit vectors. Returns the new images and
/// the new basis expressed in the old coordinates.
fn normalize_coordinates(images: &[Vec<i64>], r: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    for subset in combinations(images.len(), r) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| images[i].clone()).collect();
        let b = IntMatrix::from_rows(r, &rows);
        if !b.det().abs().is_one() {
            continue;
        }
        let b_inv = unimodular_inverse(&b);
        let new_images = images.iter().map(|g| small(&b_inv.apply_left(&big(g)))).collect();
        return (new_images, rows);
    }
    let identity = (0..r).map(|i| unit(r, i)).collect();
    (images.to_vec(), identity)
}

/// Exact membership by memoized descent along a positive grading.
///
/// Units are factored out first: points are reduced modulo the unit
/// lattice (keeping torsion residues), where the monoid is pointed.
pub struct MembershipOracle<'a> {
    monoid: &'a AffineMonoid,
    change: IntMatrix,
    unit_moduli: Vec<i64>,
    steps: Vec<Vec<i64>>,
    grading: Vec<i64>,
    memo: HashMap<Vec<i64>, bool>,
    budget: usize,
    exhausted: bool,
}

impl<'a> MembershipOracle<'a> {
    pub fn new(monoid: &'a AffineMonoid, budget: usize) -> Self {
        let r = monoid.rank;
        let units: Vec<Vec<i64>> = monoid.unit_generators().iter().map(|&i| monoid.images[i].clone()).collect();
        let (change, unit_moduli) = if units.iter().all(|u| u.iter().all(|&x| x == 0)) {
            (IntMatrix::identity(r), vec![])
        } else {
            let (d, _, v) = smith_normal_form(&IntMatrix::from_rows(r, &units));
            let k = (0..d.rows().min(d.cols())).filter(|&i| !d[(i, i)].is_zero()).count();
            (v, (0..k).map(|i| d[(i, i)].to_i64().expect("modulus exceeds i64")).collect())
        };
        let mut oracle = MembershipOracle {
            monoid,
            change,
            unit_moduli,
            steps: vec![],
            grading: vec![],
            memo: HashMap::new(),
            budget,
            exhausted: false,
        };
        let grading = monoid.degree_form();
        oracle.grading = grading.clone();
        oracle.steps = monoid
            .images
            .iter()
            .filter(|g| dot(&grading, g) > 0)
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        oracle
    }

    fn key(&self, v: &[i64]) -> Vec<i64> {
        let mut y = small(&self.change.apply_left(&big(v)));
        for (i, m) in self.unit_moduli.iter().enumerate() {
            y[i] = y[i].rem_euclid(*m);
        }
        y
    }

    pub fn membership(&mut self, v: &[i64]) -> Membership {
        assert_eq!(v.len(), self.monoid.rank);
        if !self.monoid.in_cone(v) {
            return Membership::NotMember;
        }
        self.exhausted = false;
        let found = self.search(v.to_vec());
        if self.exhausted {
            Membership::Unknown
        } else if found {
            Membership::Member
        } else {
            Membership::NotMember
        }
    }

    fn search(&mut self, v: Vec<i64>) -> bool {
        if !self.monoid.in_cone(&v) {
            return false;
        }
        let key = self.key(&v);
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        if dot(&self.grading, &v) == 0 {
            return key.iter().all(|&x| x == 0);
        }
        if self.memo.len() >= self.budget {
            self.exhausted = true;
            return false;
        }
        let mut found = false;
        for i in 0..self.steps.len() {
            let rest: Vec<i64> = v.iter().zip(&self.steps[i]).map(|(a, b)| a - b).collect();
            if self.search(rest) {
                found = true;
                break;
            }
        }
        if !self.exhausted {
            self.memo.insert(key, found);
        }
        found
    }
}

/// Fallback used by oracles in tests: all points that are sums of at most
/// `degree` generators.
pub fn brute_force_elements(images: &[Vec<i64>], degree: usize) -> BTreeSet<Vec<i64>> {
    let r = images.first().map_or(0, Vec::len);
    let mut all = BTreeSet::new();
    let mut layer = BTreeSet::from([vec![0i64; r]]);
    all.extend(layer.iter().cloned());
    for _ in 0..degree {
        let mut next = BTreeSet::new();
        for x in &layer {
            for g in images {
                next.insert(x.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<i64>>());
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}
