//! Exact sparse elimination.
//!
//! Rank is available through two independent routes. Row reduction picks the
//! shortest remaining row as pivot (a row-count Markowitz rule); over the
//! rationals it runs fraction-free on big integers. Column reduction is the
//! left-to-right pivot-lookup scheme used for persistence, generic over any
//! [`Field`]. The two share no elimination code.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, FieldSpec, PrimeField, Rationals};

/// Integer matrix stored by columns, each column sorted by row with no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn from_columns(nrows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        let cols: Vec<Vec<(usize, i64)>> = cols
            .into_iter()
            .map(|mut c| {
                c.retain(|&(_, v)| v != 0);
                c.sort_unstable_by_key(|&(r, _)| r);
                c
            })
            .collect();
        debug_assert!(cols.iter().flatten().all(|&(r, _)| r < nrows));
        SparseMatrix { nrows, ncols: cols.len(), cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|c| (0..nrows).filter(|&r| rows[r][c] != 0).map(|r| (r, rows[r][c])).collect())
            .collect();
        SparseMatrix { nrows, ncols, cols }
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.cols[col].binary_search_by_key(&row, |&(r, _)| r).map_or(0, |i| self.cols[col][i].1)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                cols[r].push((c, v));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, cols }
    }

    /// Dense product `self * other`, for small sanity checks.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows);
        let cols = other
            .cols
            .iter()
            .map(|oc| {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(k, b) in oc {
                    for &(r, a) in &self.cols[k] {
                        *acc.entry(r).or_insert(0) += a * b;
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        SparseMatrix::from_columns(self.nrows, cols)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }
}

/// Which elimination scheme computes a rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elimination {
    Row,
    Column,
}

/// Sparse vector over a field: sorted `(index, value)` pairs with no zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

pub fn to_field_vec<F: Field>(field: &F, col: &[(usize, i64)]) -> SparseVec<F::Elem> {
    col.iter()
        .map(|&(r, v)| (r, field.from_i64(v)))
        .filter(|(_, e)| !field.is_zero(e))
        .collect()
}

/// `a - c * b`.
pub fn axpy<F: Field>(field: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.neg(&field.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental column reduction keyed by lowest (largest-index) nonzero.
///
/// Every stored column has a distinct low; a new vector is reduced against
/// them until its low is free or it vanishes.
pub struct ColumnReducer<'f, F: Field> {
    field: &'f F,
    pivots: HashMap<usize, usize>,
    columns: Vec<SparseVec<F::Elem>>,
}

impl<'f, F: Field> ColumnReducer<'f, F> {
    pub fn new(field: &'f F) -> Self {
        ColumnReducer { field, pivots: HashMap::new(), columns: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn reduce(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        while let Some((low, lv)) = v.last().cloned() {
            let Some(&idx) = self.pivots.get(&low) else { break };
            let p = &self.columns[idx];
            let c = self.field.div(&lv, &p.last().unwrap().1);
            v = axpy(self.field, &v, &c, p);
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let r = self.reduce(v);
        match r.last() {
            None => false,
            Some(&(low, _)) => {
                self.pivots.insert(low, self.columns.len());
                self.columns.push(r);
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank by left-to-right column reduction over any field.
pub fn rank_by_columns<F: Field>(m: &SparseMatrix, field: &F) -> usize {
    let mut reducer = ColumnReducer::new(field);
    for col in &m.cols {
        reducer.insert(to_field_vec(field, col));
    }
    reducer.rank()
}

/// Rank by row reduction over a field, pivoting on the shortest remaining row.
pub fn rank_by_rows<F: Field>(m: &SparseMatrix, field: &F) -> usize {
    let t = m.transpose();
    let mut rows: Vec<SparseVec<F::Elem>> =
        t.cols.iter().map(|r| to_field_vec(field, r)).filter(|r| !r.is_empty()).collect();
    let mut rank = 0;
    while !rows.is_empty() {
        let (pi, _) = rows.iter().enumerate().min_by_key(|(_, r)| r.len()).unwrap();
        let pivot = rows.swap_remove(pi);
        rank += 1;
        let (pc, pv) = pivot[0].clone();
        let pinv = field.inv(&pv);
        rows = rows
            .into_iter()
            .filter_map(|r| match r.binary_search_by_key(&pc, |(c, _)| *c) {
                Ok(pos) => {
                    let c = field.mul(&r[pos].1, &pinv);
                    let out = axpy(field, &r, &c, &pivot);
                    (!out.is_empty()).then_some(out)
                }
                Err(_) => Some(r),
            })
            .collect();
    }
    rank
}

/// Rank over the rationals by fraction-free row reduction on big integers.
///
/// Each update is `r <- p * r - r_c * pivot` followed by division by the row
/// content, so entries stay integral and small.
pub fn rank_fraction_free(m: &SparseMatrix) -> usize {
    let t = m.transpose();
    let mut rows: Vec<Vec<(usize, BigInt)>> = t
        .cols
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
        .collect();
    let mut rank = 0;
    while !rows.is_empty() {
        let (pi, _) = rows.iter().enumerate().min_by_key(|(_, r)| r.len()).unwrap();
        let pivot = rows.swap_remove(pi);
        rank += 1;
        let (pc, pv) = pivot[0].clone();
        rows = rows
            .into_iter()
            .filter_map(|r| match r.binary_search_by_key(&pc, |(c, _)| *c) {
                Ok(pos) => {
                    let rc = r[pos].1.clone();
                    let out = int_combine(&pv, &r, &rc, &pivot);
                    (!out.is_empty()).then_some(out)
                }
                Err(_) => Some(r),
            })
            .collect();
    }
    rank
}

/// `a * x - b * y`, divided through by the gcd of its entries.
fn int_combine(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    let g = out.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.abs().is_one() {
        for (_, v) in &mut out {
            *v = &*v / &g;
        }
    }
    out
}

/// Exact rank over `field` using the default route (row reduction).
pub fn rank(m: &SparseMatrix, field: FieldSpec) -> usize {
    rank_with(m, field, Elimination::Row)
}

pub fn rank_with(m: &SparseMatrix, field: FieldSpec, route: Elimination) -> usize {
    match (field, route) {
        (FieldSpec::Prime(p), Elimination::Row) => rank_by_rows(m, &PrimeField::new(p)),
        (FieldSpec::Prime(p), Elimination::Column) => rank_by_columns(m, &PrimeField::new(p)),
        (FieldSpec::Rational, Elimination::Row) => rank_fraction_free(m),
        (FieldSpec::Rational, Elimination::Column) => rank_by_columns(m, &Rationals),
    }
}
