mod common;

use common::{closure_masks, mask_vertices, oracle_betti};
use hypertree_lab::collapse::collapse;
use hypertree_lab::constructions::{build_j, fano_complex};
use hypertree_lab::homology::{apply_boundary, betti_with, boundary_matrix, cycle_basis, is_hypertree};
use hypertree_lab::field::{PrimeField, Scalar};
use hypertree_lab::linalg::Elimination;
use hypertree_lab::random::{random_closure, random_skeleton, rng_for};
use hypertree_lab::{betti, betti_report, Complex, Error, FieldSpec, GeneralComplex, Simplex, SkeletonComplex};
use rand::Rng;

fn s<const N: usize>(v: [u32; N]) -> Simplex {
    Simplex::from(v)
}

fn masks_of(x: &GeneralComplex) -> Vec<u32> {
    x.iter().map(|f| f.vertices().iter().fold(0u32, |m, v| m | 1 << v)).collect()
}

#[test]
fn boundary_squares_to_zero() {
    for i in 0..100 {
        let x = random_closure(7, 4, 21, i);
        for j in 0..=x.dim() {
            let d1 = boundary_matrix(&x, j).matrix;
            let d2 = boundary_matrix(&x, j + 1).matrix;
            if d1.ncols == 0 || d2.ncols == 0 {
                continue;
            }
            assert!(d1.mul(&d2).is_zero(), "complex {i}, j = {j}");
        }
    }
}

#[test]
fn augmentation_row() {
    let x = GeneralComplex::closure(vec![s([0]), s([1]), s([2])], 3).unwrap();
    let d0 = boundary_matrix(&x, 0).matrix;
    assert_eq!((d0.nrows, d0.ncols), (1, 3));
    assert!((0..3).all(|c| d0.get(0, c) == 1));
    let e = GeneralComplex::closure(vec![s([0, 1])], 2).unwrap();
    let d1 = boundary_matrix(&e, 1).matrix;
    assert_eq!((d1.get(0, 0), d1.get(1, 0)), (-1, 1));
}

#[test]
fn matches_independent_oracle() {
    // random facets drawn here, closed and reduced without the library
    let mut rng = rng_for(99, 0);
    for _ in 0..120 {
        let n = rng.random_range(1..=7u32);
        let count = rng.random_range(0..=6);
        let facets: Vec<u32> = (0..count).map(|_| rng.random_range(1..1u32 << n)).collect();
        let masks = closure_masks(&facets);
        let simplices: Vec<Simplex> = facets.iter().map(|&m| Simplex::new(mask_vertices(m)).unwrap()).collect();
        let x = GeneralComplex::closure(simplices, n as usize).unwrap();
        assert_eq!(masks_of(&x).len(), masks.len());
        for j in -1..=x.dim() + 1 {
            for (field, p) in [(FieldSpec::GF2, 2), (FieldSpec::prime(3).unwrap(), 3), (FieldSpec::Rational, 0)] {
                let expected = oracle_betti(&masks, j, p);
                assert_eq!(betti_with(&x, j, field, Elimination::Row), expected, "{x:?} j = {j} {field}");
                assert_eq!(betti_with(&x, j, field, Elimination::Column), expected, "{x:?} j = {j} {field}");
            }
        }
    }
}

#[test]
fn minus_one_conventions() {
    let only_empty = GeneralComplex::new(2, vec![Simplex::empty()]).unwrap();
    assert_eq!(betti(&only_empty, -1, FieldSpec::GF2), 1);
    let void = GeneralComplex::void(2);
    assert_eq!(betti(&void, -1, FieldSpec::GF2), 0);
    let point = GeneralComplex::closure(vec![s([0])], 1).unwrap();
    assert_eq!(betti(&point, -1, FieldSpec::GF2), 0);
    assert_eq!(betti(&point, 0, FieldSpec::GF2), 0);
}

#[test]
fn four_cycle_and_skeleton() {
    let c4 = GeneralComplex::closure(vec![s([0, 1]), s([1, 2]), s([2, 3]), s([0, 3])], 4).unwrap();
    for f in [FieldSpec::GF2, FieldSpec::prime(7).unwrap(), FieldSpec::Rational] {
        assert_eq!(betti(&c4, 1, f), 1);
        assert_eq!(betti(&c4, 0, f), 0);
    }
    // Δ_4^{(1)} = K_4 has C(4,2) - 3 = 3 independent cycles; Δ_5^{(1)} has 6
    assert_eq!(betti(&SkeletonComplex::full(4, 1).unwrap(), 1, FieldSpec::GF2), 3);
    assert_eq!(betti(&SkeletonComplex::full(5, 1).unwrap(), 1, FieldSpec::GF2), 6);
}

#[test]
fn euler_relation_on_random_complexes() {
    for i in 0..60 {
        let x = random_closure(7, 3, 4, i);
        for f in [FieldSpec::GF2, FieldSpec::Rational] {
            let r = betti_report(&x, f);
            assert!(r.euler_relation_holds(true));
        }
    }
}

#[test]
fn cycle_bases_have_betti_size_and_are_cycles() {
    let gf2 = PrimeField::new(2);
    for i in 0..100 {
        let x = random_skeleton(6, 2, 0.4, 8, i);
        for j in 0..=2 {
            let basis = cycle_basis(&x, j, FieldSpec::GF2);
            assert_eq!(basis.len() as u64, betti(&x, j, FieldSpec::GF2));
            for z in &basis {
                let chain: Vec<(Simplex, u32)> = z
                    .terms
                    .iter()
                    .map(|(sgm, c)| match c {
                        Scalar::Mod(v) => (sgm.clone(), *v),
                        Scalar::Rat(_) => unreachable!(),
                    })
                    .collect();
                assert!(apply_boundary(&gf2, &chain).is_empty());
            }
        }
    }
    let hollow = GeneralComplex::closure(vec![s([0, 1]), s([1, 2]), s([0, 2])], 3).unwrap();
    let basis = cycle_basis(&hollow, 1, FieldSpec::GF2);
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0].support(), vec![s([0, 1]), s([0, 2]), s([1, 2])]);
}

#[test]
fn fano_has_eight_cycles() {
    let x = fano_complex();
    for f in [FieldSpec::GF2, FieldSpec::prime(3).unwrap(), FieldSpec::Rational] {
        assert_eq!(betti(&x, 1, f), 8);
        assert_eq!(betti(&x, 2, f), 0);
    }
    assert_eq!(cycle_basis(&x, 1, FieldSpec::Rational).len(), 8);
}

#[test]
fn hypertree_examples() {
    let j52 = build_j(5, 2).unwrap();
    let lk = j52.link(&s([0])).unwrap();
    let d = is_hypertree(&lk, 1, FieldSpec::GF2).unwrap();
    assert!(d.is_hypertree && d.f_count_ok() && d.vertices == 4);

    let j63 = build_j(6, 3).unwrap();
    let d = is_hypertree(&j63.link(&s([0])).unwrap(), 2, FieldSpec::Rational).unwrap();
    assert!(d.is_hypertree && d.vertices == 5);

    let full = SkeletonComplex::full(5, 2).unwrap().to_general();
    let d = is_hypertree(&full, 2, FieldSpec::GF2).unwrap();
    assert!(!d.is_hypertree && !d.f_count_ok());

    let partial = GeneralComplex::closure(vec![s([0, 1, 2])], 4).unwrap();
    assert!(matches!(is_hypertree(&partial, 2, FieldSpec::GF2), Err(Error::NotSandwiched(_))));
}

#[test]
fn collapsible_means_acyclic() {
    let mut seen = 0;
    for i in 0..200 {
        let x = random_closure(6, 3, 13, i);
        let out = collapse(&x);
        if out.is_point() {
            seen += 1;
            for f in [FieldSpec::GF2, FieldSpec::Rational] {
                assert!((-1..=x.dim()).all(|j| betti(&x, j, f) == 0), "{x:?}");
            }
        }
        // collapses preserve homology
        for j in -1..=x.dim() {
            assert_eq!(betti(&out.result, j, FieldSpec::GF2), betti(&x, j, FieldSpec::GF2));
        }
    }
    assert!(seen > 10, "only {seen} collapsible samples");
}

#[test]
fn projective_plane_torsion() {
    // six-vertex RP^2
    let tris = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
    ];
    let x = GeneralComplex::closure(tris.iter().map(|t| Simplex::from(*t)), 6).unwrap();
    assert_eq!(betti(&x, 1, FieldSpec::GF2), 1);
    assert_eq!(betti(&x, 2, FieldSpec::GF2), 1);
    assert_eq!(betti(&x, 1, FieldSpec::prime(3).unwrap()), 0);
    assert_eq!(betti(&x, 1, FieldSpec::Rational), 0);
    let masks = masks_of(&x);
    assert_eq!(oracle_betti(&masks, 1, 2), 1);
    assert_eq!(oracle_betti(&masks, 1, 0), 0);
}
