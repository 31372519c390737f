//! Oracles shared by the integration suites. None of them call the library's
//! rank or boundary code.

#![allow(dead_code)]

use hypertree_lab::bounds::link_betti_sum;
use hypertree_lab::{betti, Complex, FieldSpec, SkeletonComplex};

pub fn choose(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Downward closure of facet bitmasks, as sorted bitmasks (the empty set included).
pub fn closure_masks(facets: &[u32]) -> Vec<u32> {
    let mut out = std::collections::BTreeSet::new();
    for &f in facets {
        // enumerate submasks of f
        let mut s = f;
        loop {
            out.insert(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & f;
        }
    }
    out.into_iter().collect()
}

pub fn mask_vertices(m: u32) -> Vec<u32> {
    (0..32).filter(|i| m >> i & 1 == 1).collect()
}

/// Rank of a dense integer matrix reduced mod `p`.
pub fn dense_rank_mod(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    for r in rows.iter_mut() {
        for v in r.iter_mut() {
            *v = v.rem_euclid(p);
        }
    }
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = mod_pow(rows[rank][c], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for cc in 0..ncols {
                    rows[r][cc] = (rows[r][cc] - f * rows[rank][cc]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank over the reals by singular values.
pub fn float_rank(rows: &[Vec<i64>]) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return 0;
    }
    let m = nalgebra::DMatrix::from_fn(nrows, ncols, |r, c| rows[r][c] as f64);
    m.rank(1e-8)
}

/// Boundary matrix `∂_j` of a face list given as bitmasks, sign `(-1)^i` for the i-th vertex.
pub fn mask_boundary(faces: &[u32], j: isize) -> Vec<Vec<i64>> {
    let size = |m: &u32| m.count_ones() as isize;
    let rows: Vec<u32> = faces.iter().copied().filter(|m| size(m) == j).collect();
    let cols: Vec<u32> = faces.iter().copied().filter(|m| size(m) == j + 1).collect();
    let mut out = vec![vec![0i64; cols.len()]; rows.len()];
    for (c, &sigma) in cols.iter().enumerate() {
        for (i, v) in mask_vertices(sigma).into_iter().enumerate() {
            let face = sigma & !(1 << v);
            let r = rows.iter().position(|&x| x == face).expect("closed face list");
            out[r][c] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    out
}

/// Reduced Betti number from bitmask faces; `p = 0` means the rationals.
pub fn oracle_betti(faces: &[u32], j: isize, p: i64) -> u64 {
    let f_j = faces.iter().filter(|m| m.count_ones() as isize == j + 1).count();
    let rank = |m: Vec<Vec<i64>>| if p == 0 { float_rank(&m) } else { dense_rank_mod(m, p) };
    let r_down = rank(mask_boundary(faces, j));
    let r_up = rank(mask_boundary(faces, j + 1));
    (f_j - r_down - r_up) as u64
}

/// Exact-sequence identity `tb_k = tb_{k-1} + f_k - C(n-1,k)` and the link
/// double count `λ_{ℓ,k-ℓ-1} - λ_{ℓ,k-ℓ-2} = C(k+1,ℓ+1) f_k - C(n,ℓ+1)C(n-ℓ-2,k-ℓ-1)`
/// for every `0 <= ℓ < k`.
pub fn check_identities(x: &SkeletonComplex, field: FieldSpec) {
    let (n, k) = (x.n() as u64, x.k() as u64);
    let ki = k as isize;
    let tb_k = betti(x, ki, field) as i128;
    let tb_km1 = betti(x, ki - 1, field) as i128;
    let f_k = x.f_top() as i128;
    assert_eq!(tb_k, tb_km1 + f_k - choose(n - 1, k) as i128, "exact sequence identity fails for {x:?}");
    for ell in 0..k {
        let li = ell as isize;
        let mut lam_hi = 0i128;
        let mut lam_lo = 0i128;
        for tau in x.faces(li) {
            let lk = x.link(&tau).unwrap();
            lam_hi += betti(&lk, ki - li - 1, field) as i128;
            lam_lo += betti(&lk, ki - li - 2, field) as i128;
        }
        assert_eq!(lam_hi, link_betti_sum(x, li, ki - li - 1, field) as i128);
        let rhs = choose(k + 1, ell + 1) as i128 * f_k - (choose(n, ell + 1) * choose(n - ell - 2, k - ell - 1)) as i128;
        assert_eq!(lam_hi - lam_lo, rhs, "link double count fails for ell = {ell} on {x:?}");
    }
}
