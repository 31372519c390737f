//! Reduced homology over a field.
//!
//! All computations use the augmented chain complex: `C_{-1}` is spanned by
//! the empty face and `∂_0` sends every vertex to it with coefficient `+1`.
//! So `{∅}` has `tb_{-1} = 1` while the void complex has no homology at all.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{Complex, FVector, GeneralComplex};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals, Scalar};
use crate::linalg::{rank_with, to_field_vec, ColumnReducer, Elimination, SparseMatrix, SparseVec};
use crate::simplex::{binomial, subsets_of, Simplex};

/// `∂_j : C_j -> C_{j-1}` with its row and column faces.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub j: isize,
    pub rows: Vec<Simplex>,
    pub cols: Vec<Simplex>,
    pub matrix: SparseMatrix,
}

/// Matrix of `∂_j` with sign `(-1)^i` for dropping the `i`-th vertex.
pub fn boundary_matrix<C: Complex + ?Sized>(x: &C, j: isize) -> BoundaryMatrix {
    let rows = x.faces(j - 1);
    let cols = x.faces(j);
    let columns = cols
        .iter()
        .map(|s| {
            let mut col: Vec<(usize, i64)> = s
                .boundary()
                .map(|(f, sign)| {
                    let r = rows.binary_search(&f).expect("complex is not closed under faces");
                    (r, sign)
                })
                .collect();
            col.sort_unstable_by_key(|&(r, _)| r);
            col
        })
        .collect();
    let matrix = SparseMatrix::from_columns(rows.len(), columns);
    BoundaryMatrix { j, rows, cols, matrix }
}

pub fn boundary_rank<C: Complex + ?Sized>(x: &C, j: isize, field: FieldSpec, route: Elimination) -> usize {
    if x.count(j) == 0 || x.count(j - 1) == 0 {
        return 0;
    }
    rank_with(&boundary_matrix(x, j).matrix, field, route)
}

/// Reduced Betti number `tb_j = f_j - rank ∂_j - rank ∂_{j+1}`.
pub fn betti<C: Complex + ?Sized>(x: &C, j: isize, field: FieldSpec) -> u64 {
    betti_with(x, j, field, Elimination::Row)
}

pub fn betti_with<C: Complex + ?Sized>(x: &C, j: isize, field: FieldSpec, route: Elimination) -> u64 {
    if j < -1 {
        return 0;
    }
    let fj = x.count(j);
    if fj == 0 {
        return 0;
    }
    let r_down = boundary_rank(x, j, field, route);
    let r_up = boundary_rank(x, j + 1, field, route);
    (fj - r_down - r_up) as u64
}

/// Reduced Betti numbers `tb_{-1} .. tb_dim` and the f-vector of one complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub field: FieldSpec,
    /// `betti[i]` is `tb_{i-1}`.
    pub betti: Vec<u64>,
    pub f_vector: FVector,
}

impl BettiReport {
    pub fn get(&self, j: isize) -> u64 {
        if j < -1 {
            return 0;
        }
        self.betti.get((j + 1) as usize).copied().unwrap_or(0)
    }

    /// `Σ (-1)^j f_j` over `j >= -1` equals `Σ (-1)^j tb_j`.
    pub fn euler_relation_holds(&self, has_empty_face: bool) -> bool {
        let mut lhs: i64 = if has_empty_face { -1 } else { 0 };
        for (j, f) in self.f_vector.0.iter().enumerate() {
            lhs += if j % 2 == 0 { *f as i64 } else { -(*f as i64) };
        }
        let rhs: i64 = self
            .betti
            .iter()
            .enumerate()
            .map(|(i, b)| if i % 2 == 0 { -(*b as i64) } else { *b as i64 })
            .sum();
        lhs == rhs
    }
}

pub fn betti_report<C: Complex + ?Sized>(x: &C, field: FieldSpec) -> BettiReport {
    let dim = x.dim();
    // reuse each boundary rank for the two Betti numbers it enters
    let ranks: Vec<usize> = (-1..=dim + 1).map(|j| boundary_rank(x, j, field, Elimination::Row)).collect();
    let betti = (-1..=dim)
        .map(|j| {
            let i = (j + 1) as usize;
            (x.count(j) - ranks[i] - ranks[i + 1]) as u64
        })
        .collect();
    BettiReport { field, betti, f_vector: x.f_vector() }
}

/// A chain: faces with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub terms: BTreeMap<Simplex, Scalar>,
}

impl Chain {
    pub fn support(&self) -> Vec<Simplex> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Chains whose classes form a basis of `H̃_j(X; field)`.
///
/// Cycles come from a kernel basis of `∂_j`; each is kept when it is
/// independent of the boundaries and of the cycles kept before it.
pub fn cycle_basis<C: Complex + ?Sized>(x: &C, j: isize, field: FieldSpec) -> Vec<Chain> {
    match field {
        FieldSpec::Prime(p) => cycle_basis_in(x, j, &PrimeField::new(p)),
        FieldSpec::Rational => cycle_basis_in(x, j, &Rationals),
    }
}

fn cycle_basis_in<C: Complex + ?Sized, F: Field>(x: &C, j: isize, field: &F) -> Vec<Chain> {
    if j < -1 || x.count(j) == 0 {
        return Vec::new();
    }
    let cols = x.faces(j);
    let kernel = kernel_basis(&boundary_matrix(x, j).matrix, field);

    let mut span = ColumnReducer::new(field);
    for col in &boundary_matrix(x, j + 1).matrix.cols {
        span.insert(to_field_vec(field, col));
    }
    kernel
        .into_iter()
        .filter(|z| span.insert(z.clone()))
        .map(|z| Chain { terms: z.iter().map(|(i, e)| (cols[*i].clone(), field.to_scalar(e))).collect() })
        .collect()
}

/// Kernel basis of a matrix by column reduction with a tracked transform.
pub(crate) fn kernel_basis<F: Field>(m: &SparseMatrix, field: &F) -> Vec<SparseVec<F::Elem>> {
    let mut pivots: BTreeMap<usize, usize> = BTreeMap::new();
    let mut reduced: Vec<SparseVec<F::Elem>> = Vec::new();
    let mut transforms: Vec<SparseVec<F::Elem>> = Vec::new();
    let mut kernel = Vec::new();
    for (c, col) in m.cols.iter().enumerate() {
        let mut v = to_field_vec(field, col);
        let mut t: SparseVec<F::Elem> = vec![(c, field.one())];
        while let Some((low, lv)) = v.last().cloned() {
            let Some(&idx) = pivots.get(&low) else { break };
            let coef = field.div(&lv, &reduced[idx].last().unwrap().1);
            v = crate::linalg::axpy(field, &v, &coef, &reduced[idx]);
            t = crate::linalg::axpy(field, &t, &coef, &transforms[idx]);
        }
        match v.last() {
            None => kernel.push(t),
            Some(&(low, _)) => {
                pivots.insert(low, reduced.len());
                reduced.push(v);
                transforms.push(t);
            }
        }
    }
    kernel
}

/// Applies `∂_j` to a chain given as face coefficients over a field.
pub fn apply_boundary<F: Field>(field: &F, chain: &[(Simplex, F::Elem)]) -> BTreeMap<Simplex, F::Elem> {
    let mut out: BTreeMap<Simplex, F::Elem> = BTreeMap::new();
    for (s, c) in chain {
        for (f, sign) in s.boundary() {
            let term = field.mul(c, &field.from_i64(sign));
            let e = out.entry(f).or_insert_with(|| field.zero());
            *e = field.add(e, &term);
        }
    }
    out.retain(|_, v| !field.is_zero(v));
    out
}

/// Which hypertree conditions a complex satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypertreeDiagnosis {
    pub r: isize,
    pub vertices: usize,
    pub f_r: u64,
    pub expected_f_r: u64,
    pub tb_r_minus_1: u64,
    pub tb_r: u64,
    pub is_hypertree: bool,
}

impl HypertreeDiagnosis {
    pub fn f_count_ok(&self) -> bool {
        self.f_r == self.expected_f_r
    }
}

/// Tests whether `y` is an `r`-hypertree on its ground set `V`.
///
/// `y` must satisfy `Δ(V)^{(r-1)} ⊆ y ⊆ Δ(V)^{(r)}`; otherwise `NotSandwiched`.
pub fn is_hypertree(y: &GeneralComplex, r: isize, field: FieldSpec) -> Result<HypertreeDiagnosis> {
    if r < 0 {
        return Err(Error::ParameterOutOfRange(format!("hypertree dimension {r} must be non-negative")));
    }
    let ground = y.ground();
    let m = ground.len();
    if y.dim() > r {
        return Err(Error::NotSandwiched(format!("face of dimension {} above r = {r}", y.dim())));
    }
    for s in y.iter() {
        if s.vertices().iter().any(|v| ground.binary_search(v).is_err()) {
            return Err(Error::NotSandwiched(format!("face {s} leaves the vertex set")));
        }
    }
    for j in -1..r {
        let expected = binomial(m as u64, (j + 1) as u64) as usize;
        if y.count(j) != expected {
            let missing = subsets_of(&ground, (j + 1) as usize).find(|s| !y.contains(s));
            return Err(Error::NotSandwiched(format!(
                "{}-skeleton of the vertex set is incomplete (missing {})",
                r - 1,
                missing.map_or_else(|| "?".into(), |s| s.to_string())
            )));
        }
    }
    let f_r = y.count(r) as u64;
    let expected_f_r = if m == 0 { 0 } else { binomial(m as u64 - 1, r as u64) };
    let tb_r_minus_1 = betti(y, r - 1, field);
    let tb_r = betti(y, r, field);
    let is_hypertree = (-1..=r).all(|j| betti(y, j, field) == 0) && m > 0;
    Ok(HypertreeDiagnosis { r, vertices: m, f_r, expected_f_r, tb_r_minus_1, tb_r, is_hypertree })
}
