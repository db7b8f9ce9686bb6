use super::*;
use crate::error::Error;
use crate::examples::*;
use crate::perm::Permutation;

#[test]
fn and_action_matrix() {
    let s = and_ig();
    assert_eq!(s.action().order(), 2);
    assert_eq!(s.action().matrix(1), &vec![vec![0, 1, 1], vec![1, 0, 1], vec![0, 0, -1]]);
    assert_eq!(s.kernel_index(), 2);
    assert_eq!(s.orbit_generators(), s.base().images());
}

#[test]
fn identity_permutation_gives_identity_matrix() {
    let a = and_monoid();
    let g = build_action(&a, &[("e".into(), Permutation::identity(4))]).unwrap();
    assert_eq!(g.order(), 1);
    assert_eq!(g.matrix(0), &vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
}

#[test]
fn relation_breaking_permutation_is_rejected() {
    let a = and_monoid();
    let p = Permutation::parse_cycles("(13)", 4).unwrap();
    assert!(matches!(build_action(&a, &[("x".into(), p)]), Err(Error::RelationNotPreserved(_))));
}

#[test]
fn duplicate_images_make_the_action_unfaithful() {
    let p = crate::monoid::Presentation::new(
        vec!["x".into(), "y".into(), "z".into()],
        vec![(vec![1, 0, 0], vec![0, 1, 0])],
    )
    .unwrap();
    let a = crate::monoid::AffineMonoid::from_presentation(&p).unwrap();
    let swap = Permutation::parse_cycles("(12)", 3).unwrap();
    assert!(matches!(build_action(&a, &[("s".into(), swap)]), Err(Error::NotFaithful(_))));
}

#[test]
fn dihedral_action() {
    let s = torsionex_ig();
    assert_eq!(s.action().order(), 8);
    assert!(!s.action().is_abelian());
}

#[test]
fn cocycle_reports() {
    let s = and_ig();
    let report = verify_cocycle(s.cocycle(), s.action());
    assert!(report.valid());
    assert_eq!(report.checked_pairs, 4);
    let trivial = CosetCocycle::trivial(3);
    assert!(verify_cocycle(&trivial, &GenAction::trivial(s.base())).valid());
}

#[test]
fn flipped_entry_is_flagged_on_its_pairs() {
    let s = and_ig();
    // same cocycle on the finer lattice 2Z^3, then one coset flipped
    let fine = crate::intlat::Sublattice::from_generators(3, &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
    let reps = fine.quotient_cosets().unwrap();
    let flip = vec![1, 1, 0];
    let entries: Vec<(Vec<i64>, usize)> = reps
        .iter()
        .map(|r| {
            let g = s.phi_bar(r);
            (r.clone(), if *r == flip { 1 - g } else { g })
        })
        .collect();
    let good: Vec<(Vec<i64>, usize)> = reps.iter().map(|r| (r.clone(), s.phi_bar(r))).collect();
    assert!(verify_cocycle(&CosetCocycle::new(fine.clone(), &good).unwrap(), s.action()).valid());
    let bad = CosetCocycle::new(fine.clone(), &entries).unwrap();
    let report = verify_cocycle(&bad, s.action());
    assert!(!report.violations.is_empty());
    for (x, y) in &report.violations {
        let moved = s.action().apply(bad.phi_bar(x), y);
        let sum: Vec<i64> = x.iter().zip(&moved).map(|(a, b)| a + b).collect();
        assert!(*x == flip || *y == flip || fine.reduce(&sum) == flip);
    }
    assert!(build_ig(s.base().clone(), s.action().clone(), bad).is_err());
}

#[test]
fn multiplication_and_norm() {
    let s = and_ig();
    let u: Vec<IGElement> = (0..4).map(|i| s.element(s.base().image(i))).collect();
    assert_eq!(s.multiply(&s.identity(), &u[2]), u[2]);
    assert_eq!(s.g_norm(&[1, 0, 0]), vec![1, 1, 0]);
    assert_eq!(s.g_norm(&[0, 0, 0]), vec![0, 0, 0]);
    for b in s.orbit_generators() {
        let n = s.g_norm(b);
        for h in s.action().elements() {
            assert_eq!(s.action().apply(h, &n), n);
        }
    }
    for x in &u {
        for y in &u {
            for z in &u {
                assert_eq!(s.multiply(&s.multiply(x, y), z), s.multiply(x, &s.multiply(y, z)));
            }
        }
        let p = s.power(x, s.action().order());
        assert_eq!(p.g, 0);
        assert!(s.is_identity(&s.multiply(x, &s.inverse(x))));
    }
}

#[test]
fn torsionex_product_from_the_example() {
    let s = torsionex_ig();
    let a = s.base();
    let x3 = s.element(a.image(2));
    let neg_u1: Vec<i64> = a.image(0).iter().map(|v| -v).collect();
    let y = s.inverse(&s.element(a.image(0)));
    assert_eq!(y.translation, s.action().apply(y.g, &neg_u1));
    let z = s.multiply(&x3, &y);
    let expect: Vec<i64> = a.image(2).iter().zip(a.image(1)).map(|(p, q)| p - q).collect();
    assert_eq!(z.translation, expect);
    assert_eq!(s.action().label(z.g), "(12)(34)");
    assert_eq!(s.format_element(&z), "(u3 u2^-1, (12)(34))");
}

#[test]
fn not_i_type_certificate() {
    let s = and_ig();
    let cert = s.not_i_type_certificate().unwrap().unwrap();
    assert_eq!((cert.rank, cert.indecomposables), (3, 4));
    let t = trivial_ig(crate::monoid::AffineMonoid::from_presentation(&crate::monoid::Presentation::free(3)).unwrap());
    assert_eq!(t.not_i_type_certificate().unwrap(), None);
    assert_eq!(t.kernel_index(), 1);
}

#[test]
fn dinfty_kernel_index() {
    let s = dinfty_ig();
    assert_eq!(s.rank(), 1);
    assert_eq!(s.kernel_index(), 2);
    assert_eq!(s.action().matrix(1), &vec![vec![-1]]);
}

#[test]
fn phi_bar_is_constant_on_kernel_cosets() {
    let s = torsionex_ig();
    let basis = s.cocycle().kernel().basis_i64();
    for (p, _) in s.base().elements_up_to_degree(3) {
        for n in &basis {
            let q: Vec<i64> = p.iter().zip(n).map(|(a, b)| a + b).collect();
            assert_eq!(s.phi_bar(&p), s.phi_bar(&q));
        }
    }
}

#[test]
fn grading_must_be_well_defined() {
    let a = final_monoid();
    // u1u2u3 = u4^2 has degree 3 on the left and 2 on the right
    assert!(matches!(CosetCocycle::from_grading(&a, &[1, 1, 1, 1], 2, &[0, 0]), Err(Error::NotIgType(_))));
}
