//! The worked examples: the monoids `and`, `final`, the dihedral examples
//! and the Veronese submonoid, built through the public constructors.

use crate::igcore::{build_action, build_ig, CosetCocycle, GenAction, IGMonoid, PermutationKind};
use crate::itype::{itype_to_ig, IRelations};
use crate::monoid::{AffineMonoid, Presentation};
use crate::perm::Permutation;

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

fn perm(s: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(s, n).expect("example data is valid")
}

/// `<u1..u4 | u1u2 = u3u4>`.
pub fn and_monoid() -> AffineMonoid {
    let p = Presentation::new(names(4), vec![(vec![1, 1, 0, 0], vec![0, 0, 1, 1])]).expect("example data is valid");
    AffineMonoid::from_presentation(&p).expect("example data is valid")
}

/// `<u1..u4 | u1u2u3 = u4^2>`.
pub fn final_monoid() -> AffineMonoid {
    let p = Presentation::new(names(4), vec![(vec![1, 1, 1, 0], vec![0, 0, 0, 2])]).expect("example data is valid");
    AffineMonoid::from_presentation(&p).expect("example data is valid")
}

/// Example monoid with `sigma = (12)(34)` on odd total degree.
pub fn and_ig() -> IGMonoid {
    let a = and_monoid();
    let g = build_action(&a, &[("s".into(), perm("(12)(34)", 4))]).expect("example data is valid");
    let c = CosetCocycle::from_grading(&a, &[1, 1, 1, 1], 2, &[0, 1]).expect("example data is valid");
    build_ig(a, g, c).expect("example data is valid")
}

/// `(12)` on odd degree in `u4`.
pub fn final_ig() -> IGMonoid {
    let a = final_monoid();
    let g = build_action(&a, &[("t".into(), perm("(12)", 4))]).expect("example data is valid");
    let c = CosetCocycle::from_grading(&a, &[0, 0, 0, 1], 2, &[0, 1]).expect("example data is valid");
    build_ig(a, g, c).expect("example data is valid")
}

/// `x_i = (u_i, sigma_i)` over the same monoid with a dihedral group.
pub fn torsionex_ig() -> IGMonoid {
    let a = and_monoid();
    let g = build_action(&a, &[("a".into(), perm("(1324)", 4)), ("b".into(), perm("(12)", 4))]).expect("example data is valid");
    let values: Vec<usize> =
        ["(1324)", "(12)", "(1423)", "(34)"].iter().map(|s| g.by_label(s).expect("example data is valid")).collect();
    let c = CosetCocycle::infer(&a, &g, &values, 8).expect("example data is valid");
    build_ig(a, g, c).expect("example data is valid")
}

/// `Z` with `sigma(1) = -1` on odd elements.
pub fn dinfty_ig() -> IGMonoid {
    let p = Presentation::new(vec!["p".into(), "m".into()], vec![(vec![1, 1], vec![0, 0])]).expect("example data is valid");
    let a = AffineMonoid::from_presentation(&p).expect("example data is valid");
    let g = build_action(&a, &[("s".into(), perm("(12)", 2))]).expect("example data is valid");
    let c = CosetCocycle::from_grading(&a, &[1, -1], 2, &[0, 1]).expect("example data is valid");
    build_ig(a, g, c).expect("example data is valid")
}

pub fn trivial_ig(a: AffineMonoid) -> IGMonoid {
    let g = GenAction::trivial(&a);
    let c = CosetCocycle::trivial(a.rank());
    build_ig(a, g, c).expect("example data is valid")
}

/// `x1x2 = x3x3, x2x1 = x4x4, x1x3 = x2x4, x1x4 = x4x2, x2x3 = x3x1, x3x2 = x4x1`.
pub fn belvb() -> IRelations {
    let rel = [((1, 2), (3, 3)), ((2, 1), (4, 4)), ((1, 3), (2, 4)), ((1, 4), (4, 2)), ((2, 3), (3, 1)), ((3, 2), (4, 1))];
    IRelations::new(4, rel.iter().map(|&((a, b), (c, d))| ((a - 1, b - 1), (c - 1, d - 1))).collect()).expect("example data is valid")
}

/// Degree-3 monomials in four variables.
pub fn veronese_points() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in (0..=3).rev() {
        for b in (0..=3 - a).rev() {
            for c in (0..=3 - a - b).rev() {
                out.push(vec![a, b, c, 3 - a - b - c]);
            }
        }
    }
    out
}

/// The degree-3 Veronese submonoid of `FaM_4` with `phi` restricted from
/// the monoid of I-type of [`belvb`].
pub fn veronese_ig() -> IGMonoid {
    let t = itype_to_ig(&belvb()).expect("example data is valid");
    let points = veronese_points();
    let a = AffineMonoid::from_ambient(names(points.len()), 4, &points).expect("example data is valid");
    let named: Vec<(String, Permutation)> =
        t.sigmas().iter().enumerate().map(|(i, s)| (format!("s{}", i + 1), s.clone())).collect();
    let g = GenAction::generate(&a, &named, PermutationKind::Ambient).expect("example data is valid");
    let values: Vec<usize> =
        points.iter().map(|p| g.by_label(t.ig().action().label(t.ig().phi_bar(p))).expect("example data is valid")).collect();
    let c = CosetCocycle::infer(&a, &g, &values, 8).expect("example data is valid");
    build_ig(a, g, c).expect("example data is valid")
}
