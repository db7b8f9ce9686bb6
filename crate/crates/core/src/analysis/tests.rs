use super::*;
use crate::examples::*;
use crate::monoid::FacePrime;

/// `a phi(a) x` stays in the intersection for all small `a` and `x`.
fn ideal_condition_by_enumeration(s: &crate::igcore::IGMonoid, qs: &[FacePrime], degree: usize) -> bool {
    let a = s.base();
    let elements = a.elements_up_to_degree(degree);
    let inside = |x: &[i64]| qs.iter().all(|q| q.contains(a, x));
    elements.iter().all(|(p, _)| {
        let g = s.phi_bar(p);
        elements.iter().filter(|(x, _)| inside(x)).all(|(x, _)| {
            let y: Vec<i64> = p.iter().zip(s.action().apply(g, x)).map(|(u, v)| u + v).collect();
            inside(&y)
        })
    })
}

#[test]
fn and_is_torsion_free_both_ways() {
    let s = and_ig();
    let t = is_torsion_free(&s);
    assert!(t.torsion_free);
    assert_eq!(t.cosets_checked, 1);
    assert!(divisorial_torsion_crosscheck(&s).unwrap());
}

#[test]
fn and_primes_pair_opposite_facets() {
    let s = and_ig();
    let ps = primes_of_s(&s, 1).unwrap();
    let members: Vec<Vec<usize>> = ps.iter().map(|p| p.members.clone()).collect();
    assert_eq!(members, vec![vec![0, 3], vec![1, 2]]);
    let r = is_maximal_order_s(&s).unwrap();
    assert_eq!(r.verdict, MaximalOrderVerdict::Maximal);
    assert!(r.orbits.iter().all(|o| o.partition && !o.readings_diverge));
}

#[test]
fn and_localization_has_one_minimal_prime() {
    let s = and_ig();
    for p in primes_of_s(&s, 1).unwrap() {
        let l = localize_s(&s, &p).unwrap();
        assert!(l.unique_minimal_prime);
        assert_eq!(l.minimal_primes, vec![p.members.clone()]);
    }
}

#[test]
fn height_two_primes_of_and() {
    let s = and_ig();
    let ps = primes_of_s(&s, 2).unwrap();
    assert!(!ps.is_empty());
    for p in &ps {
        assert!(ideal_condition(&s, &p.primes));
    }
}

#[test]
fn final_example_splits_into_singletons() {
    let s = final_ig();
    assert!(is_torsion_free(&s).torsion_free);
    assert!(divisorial_torsion_crosscheck(&s).unwrap());
    let r = is_maximal_order_s(&s).unwrap();
    assert_eq!(r.verdict, MaximalOrderVerdict::NotMaximal);
    let swapped = r.orbits.iter().find(|o| o.members.len() == 2).unwrap();
    assert_eq!(swapped.blocks, vec![vec![swapped.members[0]], vec![swapped.members[1]]]);
    assert!(swapped.partition && swapped.readings_diverge);
}

#[test]
fn final_example_has_a_witness() {
    let s = final_ig();
    let w = non_maximal_witness(&s, 2).unwrap().expect("a witness within bound 2");
    assert!(verify_witness(&s, &w).unwrap());
    assert!(!s.base().contains(&w.element.translation).unwrap());
    // the witness from the text: u1 + u3 - u4 against I = ((u1, 1), (u4, (12)))
    let a = s.base();
    let v: Vec<i64> = (0..a.rank()).map(|i| a.image(0)[i] + a.image(2)[i] - a.image(3)[i]).collect();
    assert_eq!(a.divisor_of(&v).0, vec![1, -1, 1]);
    let text = Witness { element: s.element(&v), ideal: vec![a.image(0).to_vec(), a.image(3).to_vec()] };
    assert!(verify_witness(&s, &text).unwrap());
}

#[test]
fn members_of_s_are_not_witnesses() {
    let s = final_ig();
    let a = s.base();
    let w = Witness { element: s.element(a.image(0)), ideal: vec![a.image(3).to_vec()] };
    assert!(!verify_witness(&s, &w).unwrap());
}

#[test]
fn maximal_and_has_no_small_witness() {
    let s = and_ig();
    assert_eq!(non_maximal_witness(&s, 1).unwrap(), None);
}

#[test]
fn dihedral_example_has_torsion() {
    let s = torsionex_ig();
    let t = is_torsion_free(&s);
    assert!(!t.torsion_free);
    let w = t.witness.unwrap();
    assert_eq!(w.order, 2);
    assert_eq!(s.format_element(&w.element), "(u3 u2^-1, (12)(34))");
    assert!(!divisorial_torsion_crosscheck(&s).unwrap());
    assert!(matches!(primes_of_s(&s, 1), Err(crate::error::Error::TorsionPresent)));
    assert!(matches!(
        finite_normal_subgroup_search(&s, 2),
        NormalSubgroupSearch::NoneFoundUpToBound { .. }
    ));
}

#[test]
fn infinite_dihedral_group() {
    let s = dinfty_ig();
    let t = is_torsion_free(&s);
    assert!(!t.torsion_free);
    let b = t.witness.unwrap().element;
    assert_eq!(b.translation, vec![1]);
    let a = s.element(&[2]);
    assert_eq!(a.g, 0);
    let conj = s.multiply(&s.multiply(&b, &a), &s.inverse(&b));
    assert_eq!(conj, s.inverse(&a));
    assert!(s.is_identity(&s.multiply(&b, &b)));
    match finite_normal_subgroup_search(&s, 3) {
        NormalSubgroupSearch::NoneFoundUpToBound { periodic_elements, .. } => assert!(periodic_elements > 0),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn trivial_action_on_a_free_monoid() {
    let s = trivial_ig(crate::monoid::AffineMonoid::from_presentation(&crate::monoid::Presentation::free(2)).unwrap());
    assert!(is_torsion_free(&s).torsion_free);
    assert!(is_maximal_order_s(&s).unwrap().is_maximal());
}

#[test]
fn ideal_condition_matches_enumeration() {
    for s in [and_ig(), final_ig()] {
        for h in 1..=2 {
            let primes = s.base().prime_spectrum(Some(h));
            for mask in 1u32..(1 << primes.len()) {
                let qs: Vec<FacePrime> =
                    (0..primes.len()).filter(|b| mask >> b & 1 == 1).map(|b| primes[b].clone()).collect();
                assert_eq!(ideal_condition(&s, &qs), ideal_condition_by_enumeration(&s, &qs, 4), "{mask:b}");
            }
        }
    }
}

#[test]
fn crosscheck_needs_a_normal_base() {
    let p = crate::monoid::Presentation::new(vec!["x".into(), "y".into()], vec![(vec![3, 0], vec![0, 2])]).unwrap();
    let s = trivial_ig(crate::monoid::AffineMonoid::from_presentation(&p).unwrap());
    assert!(divisorial_torsion_crosscheck(&s).is_err());
    assert!(is_maximal_order_s(&s).is_err());
}

#[test]
fn veronese_is_a_maximal_order() {
    let s = veronese_ig();
    let a = s.base();
    assert_eq!(a.indecomposables().unwrap().len(), 20);
    assert!(a.is_maximal_order());
    let cert = s.not_i_type_certificate().unwrap().unwrap();
    assert_eq!((cert.rank, cert.indecomposables), (4, 20));
    assert_eq!(s.action().order(), 8);
    let r = is_maximal_order_s(&s).unwrap();
    assert_eq!(r.verdict, MaximalOrderVerdict::Maximal);
}
