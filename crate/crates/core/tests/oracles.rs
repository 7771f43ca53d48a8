//! Hand-derived values checked against the library, each computed here by
//! a route that does not go through the code under test.

use std::collections::BTreeMap;

use hodgekit::linalg::scalar::{gq, rat};
use hodgekit::loci::can_lift;
use hodgekit::mhs::functors::{direct_sum, dual, end, hom, tate, tensor, unit};
use hodgekit::mhs::Direction;
use hodgekit::radical::{ext_class_rep, mt_lie_upper_bound, splits_mod};
use hodgekit::triple::Triple;
use hodgekit::{Filtration, GaussRat, Matrix, Mhs, Rat, Scalar, Subspace};
use num_traits::{One, Zero};

fn kummer(z: GaussRat) -> Mhs {
    let mut w = BTreeMap::new();
    w.insert(-2, Subspace::coordinate(2, &[0]));
    w.insert(0, Subspace::full(2));
    let mut f = BTreeMap::new();
    f.insert(-1, Subspace::full(2));
    f.insert(0, Subspace::span(2, vec![vec![z, GaussRat::one()]]).unwrap());
    Mhs::new(
        2,
        Filtration::new(2, Direction::Increasing, w).unwrap(),
        Filtration::new(2, Direction::Decreasing, f).unwrap(),
    )
    .unwrap()
}

fn g(a: i64, b: i64, c: i64, d: i64) -> GaussRat {
    gq(a, b, c, d)
}

#[test]
fn tate_objects_have_the_expected_filtrations() {
    for k in -2..=3 {
        let t = tate(k);
        assert_eq!(t.dim(), 1);
        assert_eq!(t.weight().jumps(), vec![-2 * k]);
        assert!(t.f(-k).is_full());
        assert!(t.f(-k + 1).is_zero());
    }
    assert!(dual(&tate(1)).same_as(&tate(-1)));
    assert!(tensor(&tate(1), &tate(2)).same_as(&tate(3)));
}

#[test]
fn hom_from_the_unit_is_the_identity_functor() {
    let m = kummer(g(1, 3, 2, 5));
    assert!(hom(&unit(), &m).same_as(&m));
}

#[test]
fn kummer_sub_and_quotient() {
    let m = kummer(g(0, 1, 1, 1));
    // span(e2) picks up F^0 = 0 on Gr_0
    assert!(m.sub(&Subspace::coordinate(2, &[1])).is_err());
    assert!(m.sub(&Subspace::zero(2)).is_ok());
    let q = m.quotient(&Subspace::coordinate(2, &[0])).unwrap();
    assert!(q.same_as(&tate(0)));
    assert_eq!(m.quotient(&Subspace::full(2)).unwrap().dim(), 0);
}

#[test]
fn kummer_hodge_classes_follow_rationality_of_z() {
    for (z, rational) in [(g(0, 1, 1, 1), false), (g(1, 2, 0, 1), true), (g(3, 1, 0, 1), true)] {
        let h = kummer(z.clone()).hodge_classes();
        if rational {
            // e2 + z·e1
            let v = vec![z.as_rat().unwrap(), Rat::one()];
            assert_eq!(h, Subspace::span(2, vec![v]).unwrap());
        } else {
            assert!(h.is_zero());
        }
    }
    assert!(direct_sum(&unit(), &unit()).hodge_classes().is_full());
    assert!(tate(1).hodge_classes().is_zero());
}

#[test]
fn kummer_bigrading_and_splitting() {
    for z in [g(0, 1, 1, 1), g(1, 2, -1, 3), g(2, 1, 0, 1)] {
        let m = kummer(z.clone());
        let big = m.bigrading();
        let v = vec![z.clone(), GaussRat::one()];
        assert_eq!(big.get(0, 0), Subspace::span(2, vec![v]).unwrap());
        assert_eq!(big.get(-1, -1), Subspace::coordinate(2, &[0]));
        assert_eq!(big.components.len(), 2);
        // a_M: e1 ↦ ē1, e2 + z·e1 ↦ ē2, so e2 ↦ ē2 - z·ē1
        let expected = Matrix::from_rows(
            vec![vec![GaussRat::one(), -z.clone()], vec![GaussRat::zero(), GaussRat::one()]],
            2,
        )
        .unwrap();
        assert_eq!(m.deligne_splitting(), expected);
    }
}

#[test]
fn deligne_splitting_restricts_to_weight_steps() {
    let m = kummer(g(1, 1, 1, 1));
    let a = m.deligne_splitting();
    let sub = m.weight_sub(-2);
    assert_eq!(sub.deligne_splitting(), Matrix::from_rows(vec![vec![a.get(0, 0).clone()]], 1).unwrap());
}

#[test]
fn dimension_of_s_for_tate_triples() {
    let two = Triple::of(&direct_sum(&tate(0), &tate(1)));
    assert_eq!(two.dim_s(), 1);
    let three = Triple::of(&direct_sum(&direct_sum(&tate(0), &tate(1)), &tate(3)));
    assert_eq!(three.dim_s(), 3);
    let pure = Triple::of(&direct_sum(&tate(1), &tate(1)));
    assert_eq!(pure.dim_s(), 0);
}

#[test]
fn kummer_point_from_a_section() {
    let mu = Triple::of(&direct_sum(&tate(1), &tate(0)));
    let z = g(0, 1, 1, 1);
    let mut params = BTreeMap::new();
    params.insert((-2, 0), Matrix::from_rows(vec![vec![z.clone()]], 1).unwrap());
    let alpha = mu.point_from_params(&params).unwrap();
    assert!(mu.build(&alpha).unwrap().same_as(&kummer(z.clone())));
    let back = mu.sections_from_mhs(&kummer(z.clone())).unwrap();
    assert_eq!(back, alpha);
    let other = mu.point_from_params(&BTreeMap::new()).unwrap();
    assert!(!mu.equal_in_s(&alpha, &other).unwrap());
}

fn split_point(mu: &Triple) -> Mhs {
    mu.build(&mu.identity_point()).unwrap()
}

#[test]
fn truncation_and_fiber_dimensions() {
    let three = Triple::of(&direct_sum(&direct_sum(&tate(0), &tate(1)), &tate(3)));
    let tr = three.truncate(-2);
    assert_eq!(tr.sub.graded().keys().copied().collect::<Vec<_>>(), vec![-6, -2]);
    assert_eq!(tr.quot.graded().keys().copied().collect::<Vec<_>>(), vec![0]);
    let x = split_point(&tr.sub);
    let y = split_point(&tr.quot);
    // Hom(ℚ(0), ℚ(1) ⊕ ℚ(3)) has F^0 = 0
    assert_eq!(three.fiber_dim(&tr, &x, &y).unwrap(), 2);
    let kt = Triple::of(&direct_sum(&tate(1), &tate(0)));
    let tr = kt.truncate(-2);
    assert_eq!(kt.fiber_dim(&tr, &split_point(&tr.sub), &split_point(&tr.quot)).unwrap(), 1);
    let tr = kt.truncate(5);
    assert_eq!(kt.fiber_dim(&tr, &split_point(&tr.sub), &split_point(&tr.quot)).unwrap(), 0);
}

#[test]
fn kummer_fiber_point_matches_the_formula() {
    let kt = Triple::of(&direct_sum(&tate(1), &tate(0)));
    let tr = kt.truncate(-2);
    let z = g(-2, 3, 1, 2);
    let psi = Matrix::from_rows(vec![vec![z.clone()], vec![GaussRat::one()]], 1).unwrap();
    let m = kt.fiber_point(&tr, &tate(1), &tate(0), &psi).unwrap();
    assert!(m.same_as(&kummer(z)));
}

#[test]
fn kummer_lifts_by_exhaustive_search() {
    let gr0 = Subspace::coordinate(2, &[1]);
    for z in [g(0, 1, 0, 1), g(1, 2, 0, 1), g(0, 1, 1, 1), g(1, 1, 1, 1)] {
        let m = kummer(z.clone());
        // candidates span(e2 + c·e1), c = a/b with |a|, b ≤ 4
        let mut found = Vec::new();
        for a in -4..=4 {
            for b in 1..=4 {
                let cand = Subspace::span(2, vec![vec![rat(a, b), Rat::one()]]).unwrap();
                if m.sub(&cand).is_ok() && !found.contains(&cand) {
                    found.push(cand);
                }
            }
        }
        let lift = can_lift(&m, &gr0).unwrap();
        assert_eq!(lift.is_some(), z.as_rat().is_some());
        assert_eq!(found.len(), usize::from(lift.is_some()));
        if let Some(a) = lift {
            assert_eq!(found[0], a);
        }
    }
}

#[test]
fn kummer_extension_class_is_minus_z() {
    for z in [g(0, 1, 1, 1), g(3, 4, -1, 2), g(2, 1, 0, 1)] {
        let (_, rep) = ext_class_rep(&kummer(z.clone()), -2).unwrap();
        // H = Hom(ℚ ē2, ℚ e1) is one-dimensional
        assert_eq!(rep.e, vec![-z.clone()]);
        assert_eq!(splits_mod(&kummer(z.clone()), -2, &Subspace::zero(1)).unwrap(), z.as_rat().is_some());
    }
}

#[test]
fn mt_bound_for_kummer() {
    let w1 = end(&kummer(g(0, 1, 1, 1))).w(-1);
    let generic = mt_lie_upper_bound(&kummer(g(0, 1, 1, 1)), 2).unwrap();
    assert!(generic.contains_subspace(&w1));
    let split = mt_lie_upper_bound(&kummer(g(1, 2, 0, 1)), 2).unwrap();
    assert!(split.intersect(&w1).unwrap().is_zero());
    // e2* is a Hodge class of M^∨, so a derivation has vanishing second row
    for row in generic.basis() {
        assert!(row[1].is_zero() && row[3].is_zero());
    }
}
