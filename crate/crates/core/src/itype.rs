//! Monoids of I-type: quadratic relation systems, the set-theoretic
//! Yang-Baxter equation, and the I-type cover of a monoid of IG-type.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::igcore::{build_action, build_ig, CosetCocycle, GroupElement, IGElement, IGMonoid};
use crate::intlat::{left_kernel, small, IntMatrix, Sublattice};
use crate::monoid::{AffineMonoid, Presentation};
use crate::perm::{generated_group, Permutation};

/// Relations `x_i x_j = x_k x_l` (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IRelations {
    n: usize,
    relations: Vec<((usize, usize), (usize, usize))>,
}

impl IRelations {
    pub fn new(n: usize, relations: Vec<((usize, usize), (usize, usize))>) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if relations.len() != expected {
            return Err(Error::WrongRelationCount { expected, found: relations.len() });
        }
        let mut words = BTreeSet::new();
        for &(l, r) in &relations {
            for (i, j) in [l, r] {
                if i >= n || j >= n {
                    return Err(Error::NotIType(format!("generator index {} out of range", i.max(j) + 1)));
                }
                if !words.insert((i, j)) {
                    return Err(Error::DuplicateWord(i + 1, j + 1));
                }
            }
        }
        Ok(IRelations { n, relations })
    }

    /// All `x_i x_j = x_j x_i`.
    pub fn commutative(n: usize) -> Self {
        let relations = (0..n).flat_map(|i| (i + 1..n).map(move |j| ((i, j), (j, i)))).collect();
        IRelations { n, relations }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &[((usize, usize), (usize, usize))] {
        &self.relations
    }
}

/// `r : X x X -> X x X` as a table indexed by `i * n + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMap {
    n: usize,
    table: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YbeReport {
    pub holds: bool,
    /// First triple (1-based) where `r1 r2 r1 != r2 r1 r2`.
    pub violation: Option<(usize, usize, usize)>,
}

impl RMap {
    pub fn from_table(n: usize, table: Vec<(usize, usize)>) -> Result<Self> {
        if table.len() != n * n || table.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(Error::NotBijective("table has wrong shape".into()));
        }
        let distinct: BTreeSet<&(usize, usize)> = table.iter().collect();
        if distinct.len() != table.len() {
            return Err(Error::NotBijective("two pairs share an image".into()));
        }
        Ok(RMap { n, table })
    }

    /// The flip `r(x, y) = (y, x)`.
    pub fn swap(n: usize) -> Self {
        RMap { n, table: (0..n * n).map(|k| (k % n, k / n)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply(&self, i: usize, j: usize) -> (usize, usize) {
        self.table[i * self.n + j]
    }

    pub fn check_ybe(&self) -> YbeReport {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let r1 = |(a, b, c): (usize, usize, usize)| {
                        let (p, q) = self.apply(a, b);
                        (p, q, c)
                    };
                    let r2 = |(a, b, c): (usize, usize, usize)| {
                        let (p, q) = self.apply(b, c);
                        (a, p, q)
                    };
                    if r1(r2(r1((x, y, z)))) != r2(r1(r2((x, y, z)))) {
                        return YbeReport { holds: false, violation: Some((x + 1, y + 1, z + 1)) };
                    }
                }
            }
        }
        YbeReport { holds: true, violation: None }
    }

    /// `(left, right)`: every `g_x(y) = p2 r(y, x)` bijective, every
    /// `f_x(y) = p1 r(x, y)` bijective.
    pub fn check_nondegeneracy(&self) -> (bool, bool) {
        let n = self.n;
        let bij = |f: &dyn Fn(usize) -> usize| (0..n).map(f).collect::<BTreeSet<_>>().len() == n;
        let left = (0..n).all(|x| bij(&|y| self.apply(y, x).1));
        let right = (0..n).all(|x| bij(&|y| self.apply(x, y).0));
        (left, right)
    }
}

/// `r(x_i, x_j) = (x_k, x_l)` and back for each relation; identity
/// elsewhere.
pub fn build_rmap(rel: &IRelations) -> Result<RMap> {
    let n = rel.n;
    let mut table: Vec<(usize, usize)> = (0..n * n).map(|k| (k / n, k % n)).collect();
    for &((i, j), (k, l)) in &rel.relations {
        table[i * n + j] = (k, l);
        table[k * n + l] = (i, j);
    }
    RMap::from_table(n, table)
}

/// `sigma_i(j) = p1 r(x_i, x_j)`, with the group they generate.
pub fn derive_permutations(rel: &IRelations) -> Result<(Vec<Permutation>, Vec<Permutation>)> {
    let r = build_rmap(rel)?;
    let n = rel.n;
    let sigmas = (0..n)
        .map(|i| {
            Permutation::from_images((0..n).map(|j| r.apply(i, j).0).collect())
                .map_err(|_| Error::NotPermutation(format!("sigma_{}", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    let group = generated_group(&sigmas, n);
    Ok((sigmas, group))
}

/// A monoid `{(a, psi(a)) : a in FaM_n}` together with `sigma_i = psi(u_i)`.
#[derive(Clone, Debug)]
pub struct ITypeMonoid {
    ig: IGMonoid,
    sigmas: Vec<Permutation>,
}

impl ITypeMonoid {
    pub fn ig(&self) -> &IGMonoid {
        &self.ig
    }

    pub fn sigmas(&self) -> &[Permutation] {
        &self.sigmas
    }

    /// `x_i = (u_i, sigma_i)`.
    pub fn generator(&self, i: usize) -> IGElement {
        self.ig.element(self.ig.base().image(i))
    }

    /// Distinct products of exactly `d` generators.
    pub fn products_of_length(&self, d: usize) -> BTreeSet<IGElement> {
        let n = self.sigmas.len();
        let mut layer = BTreeSet::from([self.ig.identity()]);
        for _ in 0..d {
            layer = layer
                .iter()
                .flat_map(|x| (0..n).map(move |i| (x, i)))
                .map(|(x, i)| self.ig.multiply(x, &self.generator(i)))
                .collect();
        }
        layer
    }

    /// Products of `d` generators hit every degree-`d` monomial exactly once.
    pub fn projection_bijective_up_to(&self, degree: usize) -> bool {
        (0..=degree).all(|d| {
            let prods = self.products_of_length(d);
            let translations: BTreeSet<&Vec<i64>> = prods.iter().map(|x| &x.translation).collect();
            translations.len() == prods.len()
                && prods.len() == binomial(self.sigmas.len() + d - 1, d)
                && translations.iter().all(|t| t.iter().all(|&c| c >= 0) && t.iter().sum::<i64>() == d as i64)
        })
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn free_monoid(n: usize) -> AffineMonoid {
    AffineMonoid::from_presentation(&Presentation::free(n)).expect("free monoid")
}

/// Largest degree used when inferring the period lattice of `psi`.
pub const INFERENCE_DEGREE: usize = 12;

/// The monoid of I-type defined by `rel`, as a monoid of IG-type over
/// `FaM_n`.
pub fn itype_to_ig(rel: &IRelations) -> Result<ITypeMonoid> {
    let r = build_rmap(rel)?;
    let ybe = r.check_ybe();
    if let Some((x, y, z)) = ybe.violation {
        return Err(Error::NotIType(format!("braid relation fails at (x{x}, x{y}, x{z})")));
    }
    if !r.check_nondegeneracy().0 {
        return Err(Error::NotIType("r is not left non-degenerate".into()));
    }
    let (sigmas, _) = derive_permutations(rel)?;
    let n = rel.n;
    let a = free_monoid(n);
    let named: Vec<(String, Permutation)> =
        sigmas.iter().enumerate().map(|(i, s)| (format!("s{}", i + 1), s.clone())).collect();
    let action = build_action(&a, &named)?;
    let values: Vec<GroupElement> =
        (0..n).map(|i| action.by_name(&format!("s{}", i + 1)).expect("named generator")).collect();
    let cocycle = CosetCocycle::infer(&a, &action, &values, INFERENCE_DEGREE)?;
    let ig = build_ig(a, action, cocycle)?;
    let t = ITypeMonoid { ig, sigmas };
    for &((i, j), (k, l)) in &rel.relations {
        let lhs = t.ig.multiply(&t.generator(i), &t.generator(j));
        let rhs = t.ig.multiply(&t.generator(k), &t.generator(l));
        if lhs != rhs {
            return Err(Error::NotIType(format!("x{}x{} != x{}x{} in the constructed monoid", i + 1, j + 1, k + 1, l + 1)));
        }
    }
    Ok(t)
}

/// Covering `TB/B ~ S` of a monoid of IG-type by a monoid of I-type.
#[derive(Clone, Debug)]
pub struct Cover {
    pub t: ITypeMonoid,
    /// `f(v_{g,i}) = g(u_i)`, indexed by `g * n + i`.
    pub images: Vec<Vec<i64>>,
    /// `B = ker f` on the group of fractions of the cover.
    pub kernel: Sublattice,
    pub report: CoverReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub generators: usize,
    pub kernel_rank: usize,
    pub kernel_invariant: bool,
    pub kernel_in_trivial_coset: bool,
    pub morphism_checked: usize,
    pub morphism_holds: bool,
    pub onto_up_to_degree: usize,
    pub onto: bool,
}

impl CoverReport {
    pub fn verified(&self) -> bool {
        self.kernel_invariant && self.kernel_in_trivial_coset && self.morphism_holds && self.onto
    }
}

/// `m = n|G|` generators `v_{g,i}` with `f(v_{g,i}) = g(u_i)` and
/// `psi(x)(v_{g,i}) = v_{phi(f(x)) g, i}`. Morphism and surjectivity are
/// checked on monomials up to `degree`.
pub fn ig_cover(s: &IGMonoid, degree: usize) -> Result<Cover> {
    let g = s.action();
    let base = s.base();
    let n = base.generator_count();
    let order = g.order();
    let m = n * order;
    let r = s.rank();
    let images: Vec<Vec<i64>> =
        (0..m).map(|k| g.apply(k / n, base.image(k % n))).collect();
    let t_monoid = free_monoid(m);
    let left_mult = |h: GroupElement| {
        Permutation::from_images((0..m).map(|k| g.mul(h, k / n) * n + k % n).collect()).expect("regular action")
    };
    let named: Vec<(String, Permutation)> = g.elements().map(|h| (format!("g{h}"), left_mult(h))).collect();
    let action = build_action(&t_monoid, &named)?;
    let relabel: Vec<GroupElement> = g.elements().map(|h| action.by_name(&format!("g{h}")).expect("named")).collect();
    let to_t = |h: GroupElement| relabel[h];
    // kernel of psi-bar: {x : F x in N}
    let n_basis = s.cocycle().kernel().basis_i64();
    let mut rows: Vec<Vec<i64>> = images.clone();
    rows.extend(n_basis.iter().map(|b| b.iter().map(|x| -x).collect()));
    let gens: Vec<Vec<i64>> =
        left_kernel(&IntMatrix::from_rows(r, &rows)).iter().map(|k| small(&k[..m])).collect();
    let psi_kernel = Sublattice::from_generators(m, &gens);
    let f = |x: &[i64]| -> Vec<i64> {
        let mut out = vec![0; r];
        for (c, im) in x.iter().zip(&images) {
            for (o, v) in out.iter_mut().zip(im) {
                *o += c * v;
            }
        }
        out
    };
    let entries: Vec<(Vec<i64>, GroupElement)> =
        psi_kernel.quotient_cosets()?.into_iter().map(|rep| (rep.clone(), to_t(s.phi_bar(&f(&rep))))).collect();
    let cocycle = CosetCocycle::new(psi_kernel, &entries)?;
    let ig = build_ig(t_monoid, action, cocycle)?;
    let sigmas: Vec<Permutation> = (0..m)
        .map(|k| ig.action().generator_permutation(ig.phi_bar(ig.base().image(k))).expect("permutation").clone())
        .collect();
    let t = ITypeMonoid { ig, sigmas };

    let b_gens: Vec<Vec<i64>> =
        left_kernel(&IntMatrix::from_rows(r, &images)).iter().map(|k| small(k)).collect();
    let kernel = Sublattice::from_generators(m, &b_gens);
    let kernel_invariant = t
        .ig
        .action()
        .elements()
        .all(|h| kernel.basis_i64().iter().all(|b| kernel.contains(&t.ig.action().apply(h, b))));
    let kernel_in_trivial_coset = kernel.basis_i64().iter().all(|b| t.ig.phi_bar(b) == 0);

    // f maps products to products
    let monomials = t.ig.base().elements_up_to_degree(degree);
    let mut morphism_holds = true;
    let mut morphism_checked = 0;
    for (x, dx) in &monomials {
        if *dx + 1 > degree {
            continue;
        }
        for k in 0..m {
            let tx = t.ig.element(x);
            let prod = t.ig.multiply(&tx, &t.generator(k));
            let lhs = s.element(&f(&prod.translation));
            let rhs = s.multiply(&s.element(&f(x)), &s.element(&images[k]));
            let linear_ok = to_t(lhs.g) == prod.g;
            morphism_holds &= lhs == rhs && linear_ok;
            morphism_checked += 1;
        }
    }
    let reached: BTreeSet<Vec<i64>> = monomials.iter().map(|(x, _)| f(x)).collect();
    let onto = base.elements_up_to_degree(degree).iter().all(|(a, _)| reached.contains(a));
    let report = CoverReport {
        generators: m,
        kernel_rank: kernel.rank(),
        kernel_invariant,
        kernel_in_trivial_coset,
        morphism_checked,
        morphism_holds,
        onto_up_to_degree: degree,
        onto,
    };
    Ok(Cover { t, images, kernel, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{and_ig, belvb};

    #[test]
    fn relation_validation() {
        assert_eq!(IRelations::new(3, vec![((0, 1), (1, 0))]), Err(Error::WrongRelationCount { expected: 3, found: 1 }));
        assert_eq!(
            IRelations::new(2, vec![((0, 1), (0, 1))]),
            Err(Error::DuplicateWord(1, 2))
        );
        assert_eq!(build_rmap(&IRelations::new(1, vec![]).unwrap()).unwrap().apply(0, 0), (0, 0));
    }

    #[test]
    fn belvb_rmap() {
        let r = build_rmap(&belvb()).unwrap();
        assert_eq!(r.apply(0, 1), (2, 2));
        assert_eq!(r.apply(1, 0), (3, 3));
        assert!(r.check_ybe().holds);
        assert_eq!(r.check_nondegeneracy(), (true, true));
    }

    #[test]
    fn swap_solution() {
        let r = RMap::swap(3);
        assert!(r.check_ybe().holds);
        assert_eq!(r.check_nondegeneracy(), (true, true));
        let id = RMap::from_table(2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert!(id.check_ybe().holds);
        assert!(RMap::from_table(2, vec![(0, 0); 4]).is_err());
    }

    #[test]
    fn ybe_failure_is_located() {
        // r(1,1) = (1,2), r(1,2) = (1,1): bijective but not braided
        let r = RMap::from_table(2, vec![(0, 1), (0, 0), (1, 1), (1, 0)]).unwrap();
        let rep = r.check_ybe();
        assert!(!rep.holds);
        assert!(rep.violation.is_some());
    }

    #[test]
    fn belvb_permutations() {
        let (s, group) = derive_permutations(&belvb()).unwrap();
        let shown: Vec<String> = s.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["(23)", "(14)", "(1243)", "(1342)"]);
        assert_eq!(group.len(), 8);
        let (t, _) = derive_permutations(&IRelations::commutative(3)).unwrap();
        assert!(t.iter().all(Permutation::is_identity));
    }

    #[test]
    fn belvb_as_ig() {
        let t = itype_to_ig(&belvb()).unwrap();
        assert_eq!(t.ig().action().order(), 8);
        assert_eq!(t.ig().action().label(t.generator(0).g), "(23)");
        assert!(t.projection_bijective_up_to(4));
        let k = t.ig().kernel_index();
        assert_eq!(8 % k, 0);
        let back: Vec<Permutation> =
            (0..4).map(|i| t.ig().action().generator_permutation(t.generator(i).g).unwrap().clone()).collect();
        assert_eq!(back, t.sigmas());
    }

    #[test]
    fn free_abelian_is_trivially_itype() {
        let t = itype_to_ig(&IRelations::commutative(3)).unwrap();
        assert_eq!(t.ig().kernel_index(), 1);
        assert_eq!(t.ig().action().order(), 1);
    }

    #[test]
    fn cover_of_and() {
        let s = and_ig();
        let c = ig_cover(&s, 3).unwrap();
        assert_eq!(c.report.generators, 8);
        assert!(c.report.verified());
        // f(v_{sigma,1}) = sigma(u1) = u2
        assert_eq!(c.images[4], s.base().image(1).to_vec());
        assert_eq!(c.kernel.rank(), 5);
    }

    #[test]
    fn cover_of_trivial_group_is_free_on_generators() {
        let s = crate::examples::trivial_ig(free_monoid(3));
        let c = ig_cover(&s, 3).unwrap();
        assert_eq!(c.report.generators, 3);
        assert_eq!(c.kernel.rank(), 0);
        assert!(c.report.verified());
    }
}
