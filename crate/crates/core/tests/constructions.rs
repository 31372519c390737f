mod common;

use std::collections::BTreeSet;

use common::{check_identities, choose};
use hypertree_lab::collapse::collapse;
use hypertree_lab::complex::induced;
use hypertree_lab::constructions::{
    build_j, build_x_nkl, completions_within_cap, steiner_complex, sum_complex, sum_complex_betti_formula,
    CandidateOrder, SumComplexSpec,
};
use hypertree_lab::homology::is_hypertree;
use hypertree_lab::io::parse_complex;
use hypertree_lab::{betti, Complex, FieldSpec, Simplex, Vertex};

fn faces_of<C: Complex + ?Sized>(x: &C) -> BTreeSet<Simplex> {
    (-1..=x.dim()).flat_map(|j| x.faces(j)).collect()
}

#[test]
fn j_families_have_hypertree_links() {
    for (n, k) in [(10, 1), (12, 1), (5, 2), (8, 2), (11, 2), (6, 3), (8, 3)] {
        let x = build_j(n, k).unwrap();
        check_identities(&x, FieldSpec::GF2);
        // (1/(k+1)) C(n-2, k) for k >= 2, n/2 - 1 for the matching
        let expected = choose(n as u64 - 2, k as u64) / (k as u128 + 1);
        let expected = if k == 1 { n as u128 / 2 - 1 } else { expected };
        assert_eq!(betti(&x, k as isize - 1, FieldSpec::Rational) as u128, expected, "J_{n},{k}");
        if k >= 2 {
            for v in 0..n as Vertex {
                let lk = x.link(&Simplex::from([v])).unwrap();
                assert!(is_hypertree(&lk, k as isize - 1, FieldSpec::GF2).unwrap().is_hypertree, "J_{n},{k} at {v}");
            }
        }
    }
}

#[test]
fn j3_vertex_links_collapse() {
    for n in [6, 8, 10] {
        let x = build_j(n, 3).unwrap();
        let lk = x.link(&Simplex::from([0])).unwrap();
        assert!(collapse(&lk).is_point(), "n = {n}");
    }
}

#[test]
fn j3_face_count() {
    // F_{n,3,0} = n C(n-2, 2) / 4
    for n in [6u64, 8, 10] {
        assert_eq!(build_j(n as usize, 3).unwrap().f_top() as u128, n as u128 * choose(n - 2, 2) / 4);
    }
}

#[test]
fn sum_complex_links_are_shifted_sum_complexes() {
    for n in [5usize, 7] {
        for k in 1..=n - 2 {
            for ell in 0..k {
                let b: Vec<u64> = (0..(k - ell) as u64).collect();
                let y = sum_complex(&SumComplexSpec::new(n, b.clone(), k).unwrap()).unwrap();
                for tau in y.faces(ell as isize) {
                    let shift: u64 = tau.vertices().iter().map(|&v| v as u64).sum();
                    let c: Vec<u64> = b.iter().map(|x| (x + n as u64 * 4 - shift % n as u64) % n as u64).collect();
                    let yc = sum_complex(&SumComplexSpec::new(n, c, k - ell - 1).unwrap()).unwrap();
                    let rest: Vec<Vertex> = (0..n as Vertex).filter(|v| !tau.contains_vertex(*v)).collect();
                    let lk = y.link(&tau).unwrap();
                    let ind = induced(&yc, &rest);
                    assert_eq!(faces_of(&lk), faces_of(&ind), "n = {n}, k = {k}, tau = {tau}");
                }
            }
        }
    }
}

#[test]
fn sums_are_equidistributed() {
    for n in [5usize, 7, 11] {
        for s in 0..=3.min(n - 2) {
            for a in 0..n as u64 {
                let y = sum_complex(&SumComplexSpec::new(n, [a], s).unwrap()).unwrap();
                assert_eq!(y.f_top() as u128 * n as u128, choose(n as u64, s as u64 + 1), "n = {n}, s = {s}");
            }
        }
    }
}

#[test]
fn interval_sum_complexes_small() {
    for n in [5usize, 7] {
        for s in 0..=3.min(n - 2) {
            for r in 0..n {
                let spec = SumComplexSpec::interval(n, 2, r, s).unwrap();
                let y = sum_complex(&spec).unwrap();
                check_identities(&y, FieldSpec::GF2);
                for i in -1..=s as isize {
                    assert_eq!(betti(&y, i, FieldSpec::GF2), sum_complex_betti_formula(n, r, s, i).unwrap());
                }
            }
        }
    }
}

#[test]
fn x_7_2_0() {
    let rep = build_x_nkl(7, 2, 0, FieldSpec::GF2, CandidateOrder::Lexicographic).unwrap();
    // (ℓ+1)/(k+1) C(n-1, k) = C(6,2)/3 before completion
    assert_eq!(rep.base_top_betti, Some(5));
    assert_eq!(rep.lambda_km2, Some(0));
    assert!(completions_within_cap(&rep));
    assert!(rep.tb_km1 as i64 >= 5 - rep.total_added() as i64);
    check_identities(&rep.complex, FieldSpec::GF2);
    let shuffled = build_x_nkl(7, 2, 0, FieldSpec::GF2, CandidateOrder::Shuffled(3)).unwrap();
    assert_eq!(shuffled.lambda_km2, Some(0));
    let again = build_x_nkl(7, 2, 0, FieldSpec::GF2, CandidateOrder::Shuffled(3)).unwrap();
    assert_eq!(shuffled.complex, again.complex);
}

#[test]
fn steiner_from_file() {
    let text = "skeleton 7 2\n0 1 3\n1 2 4\n2 3 5\n3 4 6\n0 4 5\n1 5 6\n0 2 6\n";
    let x = parse_complex(text).unwrap().complex;
    let blocks = x.faces(2);
    let (y, v) = steiner_complex(blocks.clone(), 7, 2).unwrap();
    assert!(v.is_steiner);
    assert_eq!(betti(&y, 1, FieldSpec::Rational), 8);
    let (_, v) = steiner_complex(blocks[..6].to_vec(), 7, 2).unwrap();
    assert!(!v.is_steiner);
    assert_eq!(v.uncovered, 3);
}
