//! Simplices as strictly increasing vertex lists.

use std::fmt;

use itertools::Itertools;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A face of a simplicial complex: a strictly increasing list of vertex ids.
///
/// The derived ordering is lexicographic on the vertex list, which is the
/// order every face enumeration in this crate uses.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(SmallVec<[Vertex; 6]>);

impl serde::Serialize for Simplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

impl Simplex {
    pub fn empty() -> Self {
        Simplex(SmallVec::new())
    }

    /// Builds a simplex from vertices in any order. Repeated vertices are rejected.
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Result<Self> {
        let mut v: SmallVec<[Vertex; 6]> = vertices.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        Ok(Simplex(v))
    }

    /// Caller guarantees the slice is strictly increasing.
    pub fn from_sorted(vertices: &[Vertex]) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(SmallVec::from_slice(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension, with the empty simplex at -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let v: SmallVec<[Vertex; 6]> = self.0.iter().merge(other.0.iter()).dedup().copied().collect();
        Simplex(v)
    }

    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains_vertex(*v)).collect())
    }

    /// The face obtained by dropping the vertex at position `i`.
    pub fn without_index(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    pub fn with_vertex(&self, v: Vertex) -> Simplex {
        let mut out = self.0.clone();
        match out.binary_search(&v) {
            Ok(_) => {}
            Err(pos) => out.insert(pos, v),
        }
        Simplex(out)
    }

    /// Codimension-one faces paired with the sign `(-1)^i` of dropping vertex `i`.
    pub fn boundary(&self) -> impl Iterator<Item = (Simplex, i64)> + '_ {
        (0..self.len()).map(move |i| (self.without_index(i), if i % 2 == 0 { 1 } else { -1 }))
    }

    /// All subsets with exactly `size` vertices, in lexicographic order.
    pub fn subsets(&self, size: usize) -> impl Iterator<Item = Simplex> + '_ {
        self.0.iter().copied().combinations(size).map(|c| Simplex(c.into_iter().collect()))
    }

    /// Every face including the empty one and the simplex itself.
    pub fn all_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..=self.len()).flat_map(move |m| self.subsets(m))
    }

    /// Sum of the vertex ids reduced modulo `n`.
    pub fn sum_mod(&self, n: u64) -> u64 {
        self.0.iter().map(|&v| v as u64).sum::<u64>() % n
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&[Vertex]> for Simplex {
    fn from(v: &[Vertex]) -> Self {
        Simplex::new(v.iter().copied()).expect("repeated vertex")
    }
}

impl<const N: usize> From<[Vertex; N]> for Simplex {
    fn from(v: [Vertex; N]) -> Self {
        Simplex::new(v).expect("repeated vertex")
    }
}

/// Binomial coefficient with saturating overflow handling at desk scale.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

/// All `size`-subsets of `vertices` (assumed sorted) as simplices, in lexicographic order.
pub fn subsets_of(vertices: &[Vertex], size: usize) -> impl Iterator<Item = Simplex> + '_ {
    vertices.iter().copied().combinations(size).map(|c| Simplex(c.into_iter().collect()))
}
