//! Explicit complexes: sum complexes, link-completed sum complexes, the
//! `J_{n,k}` families and Steiner-system complexes.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{link_betti_cap, link_betti_sum};
use crate::complex::{Complex, SkeletonComplex};
use crate::error::{Error, Result};
use crate::field::{is_prime, Field, FieldSpec, PrimeField, Rationals};
use crate::homology::{betti, boundary_matrix};
use crate::linalg::{to_field_vec, ColumnReducer};
use crate::simplex::{binomial, subsets_of, Simplex, Vertex};

/// Parameters of the sum complex `Y_{A,s+1}` on `Z_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumComplexSpec {
    pub n: usize,
    pub a: BTreeSet<u64>,
    pub s: usize,
}

impl SumComplexSpec {
    pub fn new(n: usize, a: impl IntoIterator<Item = u64>, s: usize) -> Result<Self> {
        if !is_prime(n as u64) {
            return Err(Error::NotPrime(n as u64));
        }
        let a: BTreeSet<u64> = a.into_iter().map(|x| x % n as u64).collect();
        if a.is_empty() {
            return Err(Error::ParameterOutOfRange("A must be nonempty".into()));
        }
        if s + 2 > n {
            return Err(Error::ParameterOutOfRange(format!("s = {s} must be at most n - 2 = {}", n as i64 - 2)));
        }
        Ok(SumComplexSpec { n, a, s })
    }

    /// The cyclic interval `{t, t+1, ..., t+r}`.
    pub fn interval(n: usize, t: u64, r: usize, s: usize) -> Result<Self> {
        Self::new(n, (0..=r as u64).map(|i| t + i), s)
    }

    /// `Some(r)` when `A` is a cyclic interval of size `r + 1`.
    pub fn interval_length(&self) -> Option<usize> {
        let n = self.n as u64;
        let size = self.a.len();
        if size == self.n {
            return Some(size - 1);
        }
        // an interval has exactly one start: an element whose predecessor is missing
        let starts: Vec<u64> = self.a.iter().copied().filter(|x| !self.a.contains(&((x + n - 1) % n))).collect();
        (starts.len() == 1).then_some(size - 1)
    }
}

/// `Y_{A,s+1}`: the full `(s-1)`-skeleton on `Z_n` plus every `(s+1)`-set whose sum lies in `A`.
pub fn sum_complex(spec: &SumComplexSpec) -> Result<SkeletonComplex> {
    let all: Vec<Vertex> = (0..spec.n as Vertex).collect();
    let tops = subsets_of(&all, spec.s + 1).filter(|f| spec.a.contains(&f.sum_mod(spec.n as u64)));
    SkeletonComplex::from_top_faces(spec.n, spec.s, tops.collect::<Vec<_>>())
}

/// Closed form for `tb_i(Y_{A,s+1})` when `A` is an interval of size `r + 1`.
pub fn sum_complex_betti_formula(n: usize, r: usize, s: usize, i: isize) -> Result<u64> {
    if !is_prime(n as u64) {
        return Err(Error::NotPrime(n as u64));
    }
    if r + 1 > n || s + 2 > n {
        return Err(Error::ParameterOutOfRange(format!("need r <= n-1 and s <= n-2, got n = {n}, r = {r}, s = {s}")));
    }
    let c = binomial(n as u64 - 1, s as u64);
    let (num, applies) = if i == s as isize - 1 && r <= s {
        ((s - r) as u64 * c, true)
    } else if i == s as isize && r >= s {
        ((r - s) as u64 * c, true)
    } else {
        (0, false)
    };
    if !applies {
        return Ok(0);
    }
    assert_eq!(num % (s as u64 + 1), 0, "closed form is not integral for n = {n}, r = {r}, s = {s}");
    Ok(num / (s as u64 + 1))
}

/// Candidate order when completing links.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateOrder {
    Lexicographic,
    /// Per-face shuffle seeded from `(seed, face index)`.
    Shuffled(u64),
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkCompletion {
    pub tau: Simplex,
    /// `tb_{k-ℓ-2}(lk(Y_{B,k+1}, τ))` before completion.
    pub initial_betti: u64,
    /// The faces `η` added to the link.
    pub added: Vec<Simplex>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub ell: Option<usize>,
    pub field: FieldSpec,
    #[serde(skip)]
    pub complex: SkeletonComplex,
    pub completions: Vec<LinkCompletion>,
    /// `tb_{k-1}` of the starting sum complex.
    pub base_top_betti: Option<u64>,
    /// `tb_{k-1}` and `tb_k` of the result.
    pub tb_km1: u64,
    pub tb_k: u64,
    /// `λ_{ℓ,k-ℓ-2}` of the result.
    pub lambda_km2: Option<u64>,
    pub elapsed_ms: u128,
}

impl ConstructionReport {
    pub fn total_added(&self) -> u64 {
        self.completions.iter().map(|c| c.added.len() as u64).sum()
    }

    pub fn max_added(&self) -> u64 {
        self.completions.iter().map(|c| c.added.len() as u64).max().unwrap_or(0)
    }
}

/// Builds `X_{n,k,ℓ}`: the sum complex `Y_{B,k+1}` with `B = {0..k-ℓ-1}`, plus
/// for every `ℓ`-face `τ` a set `S_τ` of faces that kills `H̃_{k-ℓ-2}` of its link.
///
/// Each `S_τ` is chosen greedily from the `(k-ℓ-1)`-subsets of `[n] - τ`,
/// keeping a candidate iff its boundary is independent of the link's boundary
/// image so far.
pub fn build_x_nkl(n: usize, k: usize, ell: usize, field: FieldSpec, order: CandidateOrder) -> Result<ConstructionReport> {
    if !is_prime(n as u64) {
        return Err(Error::NotPrime(n as u64));
    }
    if n <= k || ell + 2 > k {
        return Err(Error::ParameterOutOfRange(format!("need n > k and l <= k - 2, got n = {n}, k = {k}, l = {ell}")));
    }
    let start = Instant::now();
    let b_spec = SumComplexSpec::interval(n, 0, k - ell - 1, k)?;
    let y = sum_complex(&b_spec)?;
    let faces = subsets_of(&(0..n as Vertex).collect::<Vec<_>>(), ell + 1).collect::<Vec<_>>();
    let completions: Vec<LinkCompletion> = faces
        .par_iter()
        .enumerate()
        .map(|(idx, tau)| complete_link(&y, tau, k, field, order, idx as u64))
        .collect::<Result<_>>()?;

    let mut tops: BTreeSet<Simplex> = y.top_faces().clone();
    for c in &completions {
        tops.extend(c.added.iter().map(|eta| eta.union(&c.tau)));
    }
    let x = SkeletonComplex::from_top_faces(n, k, tops)?;
    let li = ell as isize;
    let lambda = link_betti_sum(&x, li, k as isize - li - 2, field);
    let report = ConstructionReport {
        name: "xnkl".into(),
        n,
        k,
        ell: Some(ell),
        field,
        base_top_betti: Some(betti(&y, k as isize - 1, field)),
        tb_km1: betti(&x, k as isize - 1, field),
        tb_k: betti(&x, k as isize, field),
        lambda_km2: Some(lambda),
        completions,
        complex: x,
        elapsed_ms: start.elapsed().as_millis(),
    };
    Ok(report)
}

fn complete_link(
    y: &SkeletonComplex,
    tau: &Simplex,
    k: usize,
    field: FieldSpec,
    order: CandidateOrder,
    index: u64,
) -> Result<LinkCompletion> {
    match field {
        FieldSpec::Prime(p) => complete_link_in(y, tau, k, &PrimeField::new(p), field, order, index),
        FieldSpec::Rational => complete_link_in(y, tau, k, &Rationals, field, order, index),
    }
}

fn complete_link_in<F: Field>(
    y: &SkeletonComplex,
    tau: &Simplex,
    k: usize,
    f: &F,
    field: FieldSpec,
    order: CandidateOrder,
    index: u64,
) -> Result<LinkCompletion> {
    let link = y.link(tau)?;
    let top_dim = (k - tau.len()) as isize;
    let initial_betti = betti(&link, top_dim - 1, field);
    let rows = link.faces(top_dim - 1);
    let mut span = ColumnReducer::new(f);
    for col in &boundary_matrix(&link, top_dim).matrix.cols {
        span.insert(to_field_vec(f, col));
    }
    let present: BTreeSet<Simplex> = link.faces(top_dim).into_iter().collect();
    let ground = link.ground();
    let mut candidates: Vec<Simplex> = subsets_of(&ground, top_dim as usize + 1).filter(|s| !present.contains(s)).collect();
    if let CandidateOrder::Shuffled(seed) = order {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        candidates.shuffle(&mut rng);
    }
    let mut added = Vec::new();
    for eta in candidates {
        if added.len() as u64 == initial_betti {
            break;
        }
        let col: Vec<(usize, i64)> = {
            let mut c: Vec<(usize, i64)> =
                eta.boundary().map(|(g, sign)| (rows.binary_search(&g).expect("full lower skeleton"), sign)).collect();
            c.sort_unstable_by_key(|&(r, _)| r);
            c
        };
        if span.insert(to_field_vec(f, &col)) {
            added.push(eta);
        }
    }
    Ok(LinkCompletion { tau: tau.clone(), initial_betti, added })
}

/// Checks the per-face cap `|S_τ| <= c_{k,ℓ} n^{k-ℓ-2}`.
pub fn completions_within_cap(report: &ConstructionReport) -> bool {
    let Some(ell) = report.ell else { return true };
    let cap = link_betti_cap(report.n, report.k, ell);
    report
        .completions
        .iter()
        .all(|c| num_rational::BigRational::from_integer((c.added.len() as u64).into()) <= cap)
}

/// The `J_{n,k}` complexes for `k = 1, 2, 3`.
pub fn build_j(n: usize, k: usize) -> Result<SkeletonComplex> {
    let nn = n as Vertex;
    let tops: Vec<Simplex> = match k {
        1 => {
            if n < 2 || n % 2 != 0 {
                return Err(Error::ParameterMismatch(format!("J_(n,1) needs even n >= 2, got {n}")));
            }
            (0..nn / 2).map(|i| Simplex::from([2 * i, 2 * i + 1])).collect()
        }
        2 => {
            if n < 5 || n % 3 != 2 {
                return Err(Error::ParameterMismatch(format!("J_(n,2) needs n = 3t + 2 >= 5, got {n}")));
            }
            let t = (nn - 2) / 3;
            let mut set = BTreeSet::new();
            for i in 0..nn {
                for j in 0..t {
                    set.insert(Simplex::new([i, (i + 3 * j + 1) % nn, (i + 3 * j + 2) % nn])?);
                }
            }
            set.into_iter().collect()
        }
        3 => {
            if n < 4 || n % 2 != 0 {
                return Err(Error::ParameterMismatch(format!("J_(n,3) needs even n >= 4, got {n}")));
            }
            let h = nn / 2;
            let mut set = BTreeSet::new();
            for i in 0..h {
                for alpha in 1..h {
                    for alpha2 in 1..h {
                        set.insert(Simplex::new([i, (i + alpha) % nn, i + h, (i + h + alpha2) % nn])?);
                    }
                }
            }
            set.into_iter().collect()
        }
        _ => return Err(Error::ParameterMismatch(format!("J_(n,k) is defined for k in 1..=3, got {k}"))),
    };
    SkeletonComplex::from_top_faces(n, k, tops)
}

/// How well a block family covers the `k`-subsets.
#[derive(Clone, Debug, Serialize)]
pub struct SteinerValidity {
    pub is_steiner: bool,
    pub uncovered: usize,
    pub multiply_covered: usize,
}

pub fn steiner_complex(blocks: impl IntoIterator<Item = Simplex>, n: usize, k: usize) -> Result<(SkeletonComplex, SteinerValidity)> {
    let x = SkeletonComplex::from_top_faces(n, k, blocks)?;
    let validity = steiner_validity(&x);
    Ok((x, validity))
}

/// Whether every `k`-subset of `[n]` lies in exactly one top face.
pub fn steiner_validity(x: &SkeletonComplex) -> SteinerValidity {
    let k = x.k();
    let mut uncovered = 0;
    let mut multiply_covered = 0;
    for f in x.faces(k as isize - 1) {
        let cover = x.top_faces().iter().filter(|b| f.is_subset_of(b)).count();
        match cover {
            0 => uncovered += 1,
            1 => {}
            _ => multiply_covered += 1,
        }
    }
    SteinerValidity { is_steiner: k >= 1 && uncovered == 0 && multiply_covered == 0, uncovered, multiply_covered }
}

/// The seven lines of the Fano plane on `{0..6}`.
pub fn fano_blocks() -> Vec<Simplex> {
    (0..7u32).map(|i| Simplex::new([i, (i + 1) % 7, (i + 3) % 7]).unwrap()).collect()
}

pub fn fano_complex() -> SkeletonComplex {
    SkeletonComplex::from_top_faces(7, 2, fano_blocks()).unwrap()
}

/// Report for a construction with no link completion step.
pub fn plain_report(name: &str, x: SkeletonComplex, ell: Option<usize>, field: FieldSpec) -> ConstructionReport {
    let start = Instant::now();
    let k = x.k();
    let lambda = ell.map(|l| link_betti_sum(&x, l as isize, k as isize - l as isize - 2, field));
    ConstructionReport {
        name: name.into(),
        n: x.n(),
        k,
        ell,
        field,
        completions: Vec::new(),
        base_top_betti: None,
        tb_km1: betti(&x, k as isize - 1, field),
        tb_k: betti(&x, k as isize, field),
        lambda_km2: lambda,
        complex: x,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FVector;

    fn s<const N: usize>(v: [u32; N]) -> Simplex {
        Simplex::from(v)
    }

    #[test]
    fn sum_complex_small_cases() {
        let y = sum_complex(&SumComplexSpec::new(5, [0], 1).unwrap()).unwrap();
        assert_eq!(y.top_faces().iter().cloned().collect::<Vec<_>>(), vec![s([1, 4]), s([2, 3])]);
        let y = sum_complex(&SumComplexSpec::new(5, [0, 1], 1).unwrap()).unwrap();
        assert_eq!(
            y.top_faces().iter().cloned().collect::<Vec<_>>(),
            vec![s([0, 1]), s([1, 4]), s([2, 3]), s([2, 4])]
        );
        let y = sum_complex(&SumComplexSpec::new(5, [0], 2).unwrap()).unwrap();
        assert_eq!(y.f_top(), 2);
    }

    #[test]
    fn sum_complex_errors() {
        assert!(matches!(SumComplexSpec::new(6, [0], 1), Err(Error::NotPrime(6))));
        assert!(matches!(SumComplexSpec::new(5, [0], 4), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(SumComplexSpec::new(5, [], 1), Err(Error::ParameterOutOfRange(_))));
    }

    #[test]
    fn interval_detection() {
        assert_eq!(SumComplexSpec::new(7, [5, 6, 0], 2).unwrap().interval_length(), Some(2));
        assert_eq!(SumComplexSpec::new(7, [1, 3], 2).unwrap().interval_length(), None);
        assert_eq!(SumComplexSpec::new(5, 0..5, 2).unwrap().interval_length(), Some(4));
    }

    #[test]
    fn formula_values() {
        assert_eq!(sum_complex_betti_formula(5, 0, 1, 0).unwrap(), 2);
        assert_eq!(sum_complex_betti_formula(7, 1, 2, 1).unwrap(), 5);
        for i in -1..3 {
            assert_eq!(sum_complex_betti_formula(5, 1, 1, i).unwrap(), 0);
        }
        assert!(sum_complex_betti_formula(9, 1, 1, 0).is_err());
    }

    #[test]
    fn j_families() {
        assert_eq!(build_j(10, 1).unwrap().f_top(), 5);
        assert_eq!(build_j(8, 2).unwrap().f_vector(), FVector(vec![8, 28, 16]));
        assert_eq!(build_j(6, 3).unwrap().f_top(), 9);
        assert!(matches!(build_j(7, 1), Err(Error::ParameterMismatch(_))));
        assert!(matches!(build_j(9, 2), Err(Error::ParameterMismatch(_))));
        assert!(matches!(build_j(7, 3), Err(Error::ParameterMismatch(_))));
        assert!(matches!(build_j(8, 4), Err(Error::ParameterMismatch(_))));
    }

    #[test]
    fn fano_is_steiner() {
        let (x, v) = steiner_complex(fano_blocks(), 7, 2).unwrap();
        assert!(v.is_steiner);
        assert_eq!(x.f_vector(), FVector(vec![7, 21, 7]));
        let (_, v) = steiner_complex(SkeletonComplex::full(6, 2).unwrap().top_faces().clone(), 6, 2).unwrap();
        assert!(!v.is_steiner);
        assert_eq!(v.multiply_covered, 15);
    }

    #[test]
    fn perfect_matching_is_s_1_2_n() {
        let x = build_j(10, 1).unwrap();
        let v = steiner_validity(&x);
        // every vertex lies in exactly one edge
        assert!(v.is_steiner);
        assert_eq!(v.uncovered, 0);
    }
}
