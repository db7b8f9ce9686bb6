//! Finite groups acting on an affine monoid by lattice automorphisms.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlat::{big, small, solve_integer_system, IntMatrix};
use crate::monoid::AffineMonoid;
use crate::perm::Permutation;

/// Index of an element of a [`GenAction`]; `0` is the identity.
pub type GroupElement = usize;

pub type Mat = Vec<Vec<i64>>;

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn mat_vec(m: &Mat, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub(crate) fn identity_mat(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// A finite group of automorphisms of `Z^r` preserving the monoid.
///
/// Matrices act on column vectors and `M_{gh} = M_g M_h`. When the group
/// comes from permutations (of the generators, or of ambient coordinates)
/// those are kept alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenAction {
    rank: usize,
    matrices: Vec<Mat>,
    generator_perms: Option<Vec<Permutation>>,
    ambient_perms: Option<Vec<Permutation>>,
    labels: Vec<String>,
    table: Vec<Vec<GroupElement>>,
    inverses: Vec<GroupElement>,
    named: Vec<(String, GroupElement)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermutationKind {
    /// Permutations of the monoid generators.
    Generators,
    /// Permutations of the ambient coordinates of an embedded monoid.
    Ambient,
}

/// The group generated by the named generator permutations.
pub fn build_action(a: &AffineMonoid, perms: &[(String, Permutation)]) -> Result<GenAction> {
    GenAction::generate(a, perms, PermutationKind::Generators)
}

impl GenAction {
    pub fn trivial(a: &AffineMonoid) -> Self {
        let r = a.rank();
        GenAction {
            rank: r,
            matrices: vec![identity_mat(r)],
            generator_perms: Some(vec![Permutation::identity(a.generator_count())]),
            ambient_perms: a.ambient().map(|amb| vec![Permutation::identity(amb.dim)]),
            labels: vec!["()".into()],
            table: vec![vec![0]],
            inverses: vec![0],
            named: vec![],
        }
    }

    pub fn generate(a: &AffineMonoid, perms: &[(String, Permutation)], kind: PermutationKind) -> Result<Self> {
        let degree = match kind {
            PermutationKind::Generators => a.generator_count(),
            PermutationKind::Ambient => {
                a.ambient().ok_or_else(|| Error::InvalidPresentation("ambient action needs an embedded monoid".into()))?.dim
            }
        };
        let mut gens = Vec::new();
        for (name, p) in perms {
            if p.degree() != degree {
                return Err(Error::InvalidPermutation(format!("{name} must act on {degree} points")));
            }
            let m = match kind {
                PermutationKind::Generators => matrix_of_generator_perm(a, p),
                PermutationKind::Ambient => matrix_of_ambient_perm(a, p),
            }
            .ok_or_else(|| Error::RelationNotPreserved(format!("{name} = {p}")))?;
            gens.push((name.clone(), p.clone(), m));
        }
        let r = a.rank();
        let mut elems: Vec<(Mat, Permutation)> = vec![(identity_mat(r), Permutation::identity(degree))];
        let mut by_matrix: HashMap<Mat, usize> = HashMap::from([(identity_mat(r), 0)]);
        let mut i = 0;
        while i < elems.len() {
            for (_, p, m) in &gens {
                let nm = mat_mul(&elems[i].0, m);
                let np = elems[i].1.compose(p);
                match by_matrix.get(&nm) {
                    Some(&j) if elems[j].1 != np => {
                        return Err(Error::NotFaithful(format!("{} and {} act identically", elems[j].1, np)));
                    }
                    Some(_) => {}
                    None => {
                        by_matrix.insert(nm.clone(), elems.len());
                        elems.push((nm, np));
                    }
                }
            }
            i += 1;
        }
        let matrices: Vec<Mat> = elems.iter().map(|e| e.0.clone()).collect();
        let perm_list: Vec<Permutation> = elems.into_iter().map(|e| e.1).collect();
        let (generator_perms, ambient_perms) = match kind {
            PermutationKind::Generators => (Some(perm_list.clone()), None),
            PermutationKind::Ambient => {
                let induced: Option<Vec<Permutation>> =
                    matrices.iter().map(|m| generator_permutation_of(a, m)).collect();
                (induced, Some(perm_list.clone()))
            }
        };
        let labels = perm_list.iter().map(Permutation::to_string).collect();
        let named = gens.iter().map(|(n, _, m)| (n.clone(), by_matrix[m])).collect();
        Ok(Self::assemble(r, matrices, generator_perms, ambient_perms, labels, named))
    }

    fn assemble(
        rank: usize,
        matrices: Vec<Mat>,
        generator_perms: Option<Vec<Permutation>>,
        ambient_perms: Option<Vec<Permutation>>,
        labels: Vec<String>,
        named: Vec<(String, GroupElement)>,
    ) -> Self {
        let index: HashMap<&Mat, usize> = matrices.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let table: Vec<Vec<usize>> = matrices
            .iter()
            .map(|a| matrices.iter().map(|b| index[&mat_mul(a, b)]).collect())
            .collect();
        let inverses = table.iter().map(|row| row.iter().position(|&x| x == 0).expect("group")).collect();
        GenAction { rank, matrices, generator_perms, ambient_perms, labels, table, inverses, named }
    }

    /// Restriction to a subgroup given by element indices (identity first).
    pub fn subgroup(&self, elements: &[GroupElement]) -> GenAction {
        let pick = |v: &Option<Vec<Permutation>>| v.as_ref().map(|ps| elements.iter().map(|&g| ps[g].clone()).collect());
        let named = self
            .named
            .iter()
            .filter_map(|(n, g)| elements.iter().position(|x| x == g).map(|i| (n.clone(), i)))
            .collect();
        Self::assemble(
            self.rank,
            elements.iter().map(|&g| self.matrices[g].clone()).collect(),
            pick(&self.generator_perms),
            pick(&self.ambient_perms),
            elements.iter().map(|&g| self.labels[g].clone()).collect(),
            named,
        )
    }

    /// The same group, forgetting how it permutes the generators.
    pub fn without_generator_permutations(&self) -> GenAction {
        GenAction { generator_perms: None, ..self.clone() }
    }

    /// Subgroup generated by `gens`, identity first, in closure order.
    pub fn generated(&self, gens: &[GroupElement]) -> Vec<GroupElement> {
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let x = self.table[out[i]][g];
                if !out.contains(&x) {
                    out.push(x);
                }
            }
            i += 1;
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn elements(&self) -> std::ops::Range<GroupElement> {
        0..self.matrices.len()
    }

    pub fn matrix(&self, g: GroupElement) -> &Mat {
        &self.matrices[g]
    }

    pub fn apply(&self, g: GroupElement, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrices[g], v)
    }

    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.table[g][h]
    }

    pub fn inv(&self, g: GroupElement) -> GroupElement {
        self.inverses[g]
    }

    pub fn pow(&self, g: GroupElement, k: usize) -> GroupElement {
        (0..k).fold(0, |acc, _| self.table[acc][g])
    }

    pub fn element_order(&self, g: GroupElement) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.table[x][g];
            k += 1;
        }
        k
    }

    pub fn label(&self, g: GroupElement) -> &str {
        &self.labels[g]
    }

    pub fn named(&self) -> &[(String, GroupElement)] {
        &self.named
    }

    pub fn by_name(&self, name: &str) -> Option<GroupElement> {
        self.named.iter().find(|(n, _)| n == name).map(|(_, g)| *g)
    }

    pub fn by_label(&self, label: &str) -> Option<GroupElement> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn by_matrix(&self, m: &Mat) -> Option<GroupElement> {
        self.matrices.iter().position(|x| x == m)
    }

    pub fn generator_permutation(&self, g: GroupElement) -> Option<&Permutation> {
        self.generator_perms.as_ref().map(|ps| &ps[g])
    }

    pub fn ambient_permutation(&self, g: GroupElement) -> Option<&Permutation> {
        self.ambient_perms.as_ref().map(|ps| &ps[g])
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|g| self.elements().all(|h| self.table[g][h] == self.table[h][g]))
    }

    /// `g` maps facet `i` to facet `result[i]`: `sigma_j = sigma_i o M_g^-1`.
    pub fn facet_permutation(&self, a: &AffineMonoid, g: GroupElement) -> Vec<usize> {
        let inv = &self.matrices[self.inverses[g]];
        a.facets()
            .iter()
            .map(|f| {
                let moved: Vec<i64> = (0..self.rank).map(|j| (0..self.rank).map(|k| f[k] * inv[k][j]).sum()).collect();
                a.facets().iter().position(|h| *h == moved).expect("action permutes facets")
            })
            .collect()
    }

    /// Evaluates a word of named elements, read left to right; `e` is the
    /// identity.
    pub fn word(&self, word: &[String]) -> Result<GroupElement> {
        let mut g = 0;
        for w in word {
            let x = if w == "e" || w == "1" {
                0
            } else {
                self.by_name(w).ok_or_else(|| Error::InvalidPermutation(format!("unknown group element `{w}`")))?
            };
            g = self.table[g][x];
        }
        Ok(g)
    }
}

/// `M` with `M image_j = image_{p(j)}`, if integral.
fn matrix_of_generator_perm(a: &AffineMonoid, p: &Permutation) -> Option<Mat> {
    let r = a.rank();
    let n = a.generator_count();
    let src = IntMatrix::from_rows(r, a.images());
    let mut m = Vec::with_capacity(r);
    for k in 0..r {
        let target: Vec<i64> = (0..n).map(|j| a.image(p.apply(j))[k]).collect();
        m.push(small(&solve_integer_system(&src, &big(&target))?));
    }
    (0..n).all(|j| mat_vec(&m, a.image(j)) == a.image(p.apply(j))).then_some(m)
}

fn matrix_of_ambient_perm(a: &AffineMonoid, p: &Permutation) -> Option<Mat> {
    let amb = a.ambient()?;
    let r = a.rank();
    let mut cols = Vec::with_capacity(r);
    for b in &amb.basis {
        let mut moved = vec![0; amb.dim];
        for (k, x) in b.iter().enumerate() {
            moved[p.apply(k)] = *x;
        }
        cols.push(a.point_of_ambient(&moved)?);
    }
    let m: Mat = (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect();
    let det = IntMatrix::from_rows(r, &m).det();
    if det != 1.into() && det != (-1).into() {
        return None;
    }
    // the monoid itself must be preserved
    a.images().iter().all(|g| a.images().contains(&mat_vec(&m, g))).then_some(m)
}

fn generator_permutation_of(a: &AffineMonoid, m: &Mat) -> Option<Permutation> {
    let images: Option<Vec<usize>> =
        a.images().iter().map(|g| a.images().iter().position(|h| *h == mat_vec(m, g))).collect();
    Permutation::from_images(images?).ok()
}

#[derive(Serialize)]
pub struct ActionSummary {
    pub order: usize,
    pub elements: Vec<String>,
}

impl GenAction {
    pub fn summary(&self) -> ActionSummary {
        ActionSummary { order: self.order(), elements: self.labels.clone() }
    }
}
