mod common;

use std::collections::BTreeSet;

use common::choose;
use hypertree_lab::complex::{boundary_complex, induced, skeleton, star_costar};
use hypertree_lab::io::{emit_complex, parse_complex};
use hypertree_lab::random::{random_closure, random_skeleton};
use hypertree_lab::{AnyComplex, Complex, GeneralComplex, Simplex, SkeletonComplex};
use proptest::prelude::*;

fn faces_of<C: Complex + ?Sized>(x: &C) -> BTreeSet<Simplex> {
    (-1..=x.dim()).flat_map(|j| x.faces(j)).collect()
}

fn facet_lists() -> impl Strategy<Value = (usize, Vec<Simplex>)> {
    (2usize..=7).prop_flat_map(|n| {
        let facet = proptest::collection::btree_set(0..n as u32, 1..=4.min(n)).prop_map(|s| Simplex::new(s).unwrap());
        (Just(n), proptest::collection::vec(facet, 1..6))
    })
}

proptest! {
    #[test]
    fn star_meets_costar_in_join((n, facets) in facet_lists(), pick in any::<proptest::sample::Index>()) {
        let x = GeneralComplex::closure(facets, n).unwrap();
        let all: Vec<Simplex> = faces_of(&x).into_iter().filter(|s| !s.is_empty()).collect();
        let tau = pick.get(&all).clone();
        let (star, costar) = star_costar(&x, &tau).unwrap();
        let lk = x.link(&tau).unwrap();
        let join = boundary_complex(&tau, n).join(&lk);
        prop_assert_eq!(faces_of(&star.intersection(&costar)), faces_of(&join));
    }

    #[test]
    fn link_of_link((n, facets) in facet_lists(), pick in any::<proptest::sample::Index>()) {
        let x = GeneralComplex::closure(facets, n).unwrap();
        let edges = x.faces(1);
        prop_assume!(!edges.is_empty());
        let e = pick.get(&edges).clone();
        let (a, b) = (Simplex::from([e.vertices()[0]]), Simplex::from([e.vertices()[1]]));
        let inner = x.link(&a).unwrap().link(&b).unwrap();
        prop_assert_eq!(faces_of(&inner), faces_of(&x.link(&e).unwrap()));
        prop_assert_eq!(inner.ground(), x.link(&e).unwrap().ground());
    }

    #[test]
    fn file_round_trip((n, facets) in facet_lists()) {
        let g: AnyComplex = GeneralComplex::closure(facets, n).unwrap().into();
        let text = emit_complex(&g);
        let back = parse_complex(&text).unwrap().complex;
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(emit_complex(&back), text);
    }

    #[test]
    fn skeleton_round_trip(n in 2usize..=8, k in 0usize..=3, q in 0.0f64..=1.0, seed in any::<u64>()) {
        prop_assume!(k < n);
        let x: AnyComplex = random_skeleton(n, k, q, seed, 0).into();
        let text = emit_complex(&x);
        prop_assert_eq!(parse_complex(&text).unwrap().complex, x);
    }
}

#[test]
fn skeleton_face_counts() {
    for i in 0..40 {
        let x = random_skeleton(7, 2, 0.5, 17, i);
        assert_eq!(x.count(-1), 1);
        assert_eq!(x.count(0), 7);
        assert_eq!(x.count(1), 21);
        assert_eq!(x.count(2), x.f_top());
        assert_eq!(faces_of(&x), faces_of(&x.to_general()));
    }
}

#[test]
fn skeleton_link_matches_general_link() {
    for i in 0..30 {
        let x = random_skeleton(7, 3, 0.3, 5, i);
        let g = x.to_general();
        for j in 0..3 {
            for tau in x.faces(j) {
                let a = x.link(&tau).unwrap();
                let b = g.link(&tau).unwrap();
                assert_eq!(a, b, "tau = {tau}");
            }
        }
    }
}

#[test]
fn coface_double_count() {
    // Σ_τ f_{k-ℓ-1}(lk τ) over ℓ-faces = C(k+1, ℓ+1) f_k
    for i in 0..40 {
        let x = random_skeleton(8, 3, 0.4, 6, i);
        for ell in 0..3isize {
            let total: usize = x.faces(ell).iter().map(|t| x.link(t).unwrap().count(3 - ell - 1)).sum();
            assert_eq!(total as u128, choose(4, ell as u64 + 1) * x.f_top() as u128);
        }
    }
}

#[test]
fn induced_and_skeleton() {
    let x = random_closure(7, 3, 2, 9);
    let sub = induced(&x, &[0, 2, 4]);
    for f in faces_of(&sub) {
        assert!(x.contains(&f) && f.vertices().iter().all(|v| [0, 2, 4].contains(v)));
    }
    let sk = skeleton(&x, 1);
    assert!(sk.dim() <= 1);
    assert_eq!(sk.faces(1), x.faces(1));
}

#[test]
fn simplex_and_skeleton_basics() {
    let full = SkeletonComplex::full(6, 2).unwrap();
    assert_eq!(full.f_top() as u128, choose(6, 3));
    let bare = SkeletonComplex::skeleton_only(6, 2).unwrap();
    assert_eq!(bare.dim(), 1);
    assert!(SkeletonComplex::from_top_faces(3, 3, vec![]).is_err());
    let x = SkeletonComplex::from_top_faces(5, 2, vec![Simplex::from([0, 1, 2])]).unwrap();
    assert!(x.remove_top_face(&Simplex::from([0, 1, 3])).is_err());
    assert_eq!(x.remove_top_face(&Simplex::from([0, 1, 2])).unwrap().f_top(), 0);
}
