//! Simplicial complexes and the local operators on them.
//!
//! Two representations share the [`Complex`] trait. [`SkeletonComplex`]
//! stores only the top faces of a complex that contains the full
//! `(k-1)`-skeleton of the simplex on `[n]`; lower faces are enumerated on
//! demand. [`GeneralComplex`] stores an explicit downward-closed face set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplex::{binomial, subsets_of, Simplex, Vertex};

/// Face counts `f_0, f_1, ..., f_dim`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn get(&self, j: isize) -> u64 {
        if j < 0 {
            return 0;
        }
        self.0.get(j as usize).copied().unwrap_or(0)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub trait Complex: Sync {
    /// Size of the ambient vertex range; every vertex id is below it.
    fn n(&self) -> usize;

    /// The vertex set the complex is considered on. For a link this is `[n] - tau`.
    fn ground(&self) -> Vec<Vertex> {
        (0..self.n() as Vertex).collect()
    }

    /// Largest face dimension; `-1` for both `{∅}` and the void complex.
    fn dim(&self) -> isize;

    fn is_void(&self) -> bool;

    /// `k` when the complex is stored as `Δ_n^{(k-1)}` plus `k`-faces.
    fn skeleton_k(&self) -> Option<usize> {
        None
    }

    /// The `j`-dimensional faces in lexicographic order. Out-of-range `j` gives nothing.
    fn faces(&self, j: isize) -> Vec<Simplex>;

    fn count(&self, j: isize) -> usize {
        self.faces(j).len()
    }

    fn contains(&self, s: &Simplex) -> bool;

    fn f_vector(&self) -> FVector {
        FVector((0..=self.dim()).map(|j| self.count(j) as u64).collect())
    }

    /// Materializes every face into an explicit complex.
    fn to_general(&self) -> GeneralComplex {
        let by_dim = (-1..=self.dim()).map(|j| self.faces(j)).collect();
        GeneralComplex::from_parts(self.n(), self.ground(), by_dim)
    }

    /// `lk(X, tau)`: faces disjoint from `tau` whose union with it lies in `X`.
    fn link(&self, tau: &Simplex) -> Result<GeneralComplex> {
        if !self.contains(tau) {
            return Err(Error::FaceNotInComplex(tau.clone()));
        }
        let ground: Vec<Vertex> = self.ground().into_iter().filter(|v| !tau.contains_vertex(*v)).collect();
        let mut by_dim = Vec::new();
        for j in tau.dim()..=self.dim() {
            let layer: Vec<Simplex> = self
                .faces(j)
                .into_iter()
                .filter(|s| tau.is_subset_of(s))
                .map(|s| s.difference(tau))
                .collect();
            if layer.is_empty() {
                break;
            }
            by_dim.push(layer);
        }
        Ok(GeneralComplex::from_parts(self.n(), ground, by_dim))
    }
}

/// A complex `X` with `Δ_n^{(k-1)} ⊆ X ⊆ Δ_n^{(k)}`, stored as its `k`-faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonComplex {
    n: usize,
    k: usize,
    top: BTreeSet<Simplex>,
}

impl SkeletonComplex {
    pub fn from_top_faces<I: IntoIterator<Item = Simplex>>(n: usize, k: usize, faces: I) -> Result<Self> {
        if n < k + 1 {
            return Err(Error::ParameterOutOfRange(format!("n = {n} must be at least k + 1 = {}", k + 1)));
        }
        let mut top = BTreeSet::new();
        for f in faces {
            if f.dim() != k as isize {
                return Err(Error::DimensionMismatch { expected: k as isize, found: f.dim(), face: f });
            }
            check_vertices(&f, n)?;
            top.insert(f);
        }
        Ok(SkeletonComplex { n, k, top })
    }

    /// The full `(k-1)`-skeleton with no `k`-faces.
    pub fn skeleton_only(n: usize, k: usize) -> Result<Self> {
        Self::from_top_faces(n, k, std::iter::empty())
    }

    /// `Δ_n^{(k)}`: every `(k+1)`-subset of `[n]`.
    pub fn full(n: usize, k: usize) -> Result<Self> {
        let all: Vec<Vertex> = (0..n as Vertex).collect();
        Self::from_top_faces(n, k, subsets_of(&all, k + 1).collect::<Vec<_>>())
    }

    /// Reads a general complex on `[n]` as `Δ_n^{(d-1)}` plus its `d`-faces,
    /// `d = dim`, when its lower faces form the full skeleton.
    pub fn from_general(x: &GeneralComplex) -> Option<Self> {
        let d = x.dim();
        let n = x.n();
        if d < 0 || x.ground().len() != n || d as usize >= n {
            return None;
        }
        let full = (-1..d).all(|j| x.count(j) as u64 == binomial(n as u64, (j + 1) as u64));
        full.then(|| SkeletonComplex::from_top_faces(n, d as usize, x.faces(d)).expect("faces of x lie in [n]"))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn top_faces(&self) -> &BTreeSet<Simplex> {
        &self.top
    }

    pub fn f_top(&self) -> usize {
        self.top.len()
    }

    /// `X - sigma` for a top face `sigma`.
    pub fn remove_top_face(&self, sigma: &Simplex) -> Result<Self> {
        if !self.top.contains(sigma) {
            return Err(Error::FaceNotInComplex(sigma.clone()));
        }
        let mut out = self.clone();
        out.top.remove(sigma);
        Ok(out)
    }

    pub fn add_top_face(&self, sigma: Simplex) -> Result<Self> {
        if sigma.dim() != self.k as isize {
            return Err(Error::DimensionMismatch { expected: self.k as isize, found: sigma.dim(), face: sigma });
        }
        check_vertices(&sigma, self.n)?;
        let mut out = self.clone();
        out.top.insert(sigma);
        Ok(out)
    }

    fn all_vertices(&self) -> Vec<Vertex> {
        (0..self.n as Vertex).collect()
    }
}

impl Complex for SkeletonComplex {
    fn n(&self) -> usize {
        self.n
    }

    fn dim(&self) -> isize {
        if self.top.is_empty() {
            self.k as isize - 1
        } else {
            self.k as isize
        }
    }

    fn is_void(&self) -> bool {
        false
    }

    fn skeleton_k(&self) -> Option<usize> {
        Some(self.k)
    }

    fn faces(&self, j: isize) -> Vec<Simplex> {
        if j < -1 || j > self.k as isize {
            Vec::new()
        } else if j == self.k as isize {
            self.top.iter().cloned().collect()
        } else {
            subsets_of(&self.all_vertices(), (j + 1) as usize).collect()
        }
    }

    fn count(&self, j: isize) -> usize {
        if j < -1 || j > self.k as isize {
            0
        } else if j == self.k as isize {
            self.top.len()
        } else {
            binomial(self.n as u64, (j + 1) as u64) as usize
        }
    }

    fn contains(&self, s: &Simplex) -> bool {
        if s.max_vertex().is_some_and(|v| v as usize >= self.n) {
            return false;
        }
        match s.len().cmp(&(self.k + 1)) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => self.top.contains(s),
            std::cmp::Ordering::Greater => false,
        }
    }

    fn link(&self, tau: &Simplex) -> Result<GeneralComplex> {
        if !self.contains(tau) {
            return Err(Error::FaceNotInComplex(tau.clone()));
        }
        let ground: Vec<Vertex> = self.all_vertices().into_iter().filter(|v| !tau.contains_vertex(*v)).collect();
        let top_size = self.k + 1 - tau.len();
        let mut by_dim: Vec<Vec<Simplex>> = (0..top_size).map(|m| subsets_of(&ground, m).collect()).collect();
        let mut top: Vec<Simplex> = self
            .top
            .iter()
            .filter(|s| tau.is_subset_of(s))
            .map(|s| s.difference(tau))
            .collect();
        top.sort();
        by_dim.push(top);
        Ok(GeneralComplex::from_parts(self.n, ground, by_dim))
    }
}

/// An explicit downward-closed face set on a ground set of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralComplex {
    n: usize,
    ground: Vec<Vertex>,
    /// `by_dim[j + 1]` holds the sorted `j`-faces.
    by_dim: Vec<Vec<Simplex>>,
}

impl GeneralComplex {
    /// The void complex: no faces at all.
    pub fn void(n: usize) -> Self {
        GeneralComplex { n, ground: (0..n as Vertex).collect(), by_dim: Vec::new() }
    }

    /// Builds a complex from a face set, checking it is closed under subsets.
    pub fn new<I: IntoIterator<Item = Simplex>>(n: usize, faces: I) -> Result<Self> {
        let set: BTreeSet<Simplex> = faces.into_iter().collect();
        for f in &set {
            check_vertices(f, n)?;
            for (g, _) in f.boundary() {
                if !set.contains(&g) {
                    return Err(Error::NotClosed { missing: g });
                }
            }
        }
        Ok(Self::from_set(n, (0..n as Vertex).collect(), set))
    }

    /// Downward closure of `facets`. No facets gives the void complex.
    pub fn closure<I: IntoIterator<Item = Simplex>>(facets: I, n: usize) -> Result<Self> {
        let mut set = BTreeSet::new();
        for f in facets {
            check_vertices(&f, n)?;
            if set.contains(&f) {
                continue;
            }
            set.extend(f.all_faces());
        }
        Ok(Self::from_set(n, (0..n as Vertex).collect(), set))
    }

    pub(crate) fn from_parts(n: usize, ground: Vec<Vertex>, mut by_dim: Vec<Vec<Simplex>>) -> Self {
        while by_dim.last().is_some_and(Vec::is_empty) {
            by_dim.pop();
        }
        GeneralComplex { n, ground, by_dim }
    }

    fn from_set(n: usize, ground: Vec<Vertex>, set: BTreeSet<Simplex>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for f in set {
            let idx = f.len();
            if by_dim.len() <= idx {
                by_dim.resize_with(idx + 1, Vec::new);
            }
            by_dim[idx].push(f);
        }
        Self::from_parts(n, ground, by_dim)
    }

    /// Replaces the ground set. Every face must lie inside it.
    pub fn with_ground(mut self, ground: Vec<Vertex>) -> Result<Self> {
        let mut ground = ground;
        ground.sort_unstable();
        ground.dedup();
        for f in self.iter() {
            if let Some(v) = f.vertices().iter().find(|v| ground.binary_search(v).is_err()) {
                return Err(Error::VertexOutOfRange { vertex: *v as u64, n: self.n });
            }
        }
        self.ground = ground;
        Ok(self)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn num_faces(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// Faces not properly contained in any other face.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (idx, layer) in self.by_dim.iter().enumerate() {
            let above: BTreeSet<Simplex> = self
                .by_dim
                .get(idx + 1)
                .map(|up| up.iter().flat_map(|s| s.boundary().map(|(g, _)| g)).collect())
                .unwrap_or_default();
            out.extend(layer.iter().filter(|s| !above.contains(*s)).cloned());
        }
        out.sort();
        out
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets().iter().all(|f| f.dim() == d)
    }

    pub fn union(&self, other: &GeneralComplex) -> GeneralComplex {
        let set: BTreeSet<Simplex> = self.iter().chain(other.iter()).cloned().collect();
        let mut ground = self.ground.clone();
        ground.extend(other.ground.iter().copied());
        ground.sort_unstable();
        ground.dedup();
        Self::from_set(self.n.max(other.n), ground, set)
    }

    pub fn intersection(&self, other: &GeneralComplex) -> GeneralComplex {
        let set: BTreeSet<Simplex> = self.iter().filter(|s| other.contains(s)).cloned().collect();
        let ground = self.ground.iter().copied().filter(|v| other.ground.binary_search(v).is_ok()).collect();
        Self::from_set(self.n.max(other.n), ground, set)
    }

    /// Simplicial join with a complex on a disjoint vertex set.
    pub fn join(&self, other: &GeneralComplex) -> GeneralComplex {
        let mut set = BTreeSet::new();
        for a in self.iter() {
            for b in other.iter() {
                set.insert(a.union(b));
            }
        }
        let mut ground = self.ground.clone();
        ground.extend(other.ground.iter().copied());
        ground.sort_unstable();
        ground.dedup();
        Self::from_set(self.n.max(other.n), ground, set)
    }
}

impl Complex for GeneralComplex {
    fn n(&self) -> usize {
        self.n
    }

    fn ground(&self) -> Vec<Vertex> {
        self.ground.clone()
    }

    fn dim(&self) -> isize {
        (self.by_dim.len() as isize - 2).max(-1)
    }

    fn is_void(&self) -> bool {
        self.by_dim.is_empty()
    }

    fn faces(&self, j: isize) -> Vec<Simplex> {
        if j < -1 {
            return Vec::new();
        }
        self.by_dim.get((j + 1) as usize).cloned().unwrap_or_default()
    }

    fn count(&self, j: isize) -> usize {
        if j < -1 {
            return 0;
        }
        self.by_dim.get((j + 1) as usize).map_or(0, Vec::len)
    }

    fn contains(&self, s: &Simplex) -> bool {
        self.by_dim.get(s.len()).is_some_and(|layer| layer.binary_search(s).is_ok())
    }

    fn to_general(&self) -> GeneralComplex {
        self.clone()
    }
}

/// Either representation, as produced by file parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyComplex {
    Skeleton(SkeletonComplex),
    General(GeneralComplex),
}

impl AnyComplex {
    pub fn as_skeleton(&self) -> Option<&SkeletonComplex> {
        match self {
            AnyComplex::Skeleton(s) => Some(s),
            AnyComplex::General(_) => None,
        }
    }

    fn inner(&self) -> &dyn Complex {
        match self {
            AnyComplex::Skeleton(s) => s,
            AnyComplex::General(g) => g,
        }
    }
}

impl Complex for AnyComplex {
    fn n(&self) -> usize {
        self.inner().n()
    }
    fn ground(&self) -> Vec<Vertex> {
        self.inner().ground()
    }
    fn dim(&self) -> isize {
        self.inner().dim()
    }
    fn is_void(&self) -> bool {
        self.inner().is_void()
    }
    fn skeleton_k(&self) -> Option<usize> {
        self.inner().skeleton_k()
    }
    fn faces(&self, j: isize) -> Vec<Simplex> {
        self.inner().faces(j)
    }
    fn count(&self, j: isize) -> usize {
        self.inner().count(j)
    }
    fn contains(&self, s: &Simplex) -> bool {
        self.inner().contains(s)
    }
    fn link(&self, tau: &Simplex) -> Result<GeneralComplex> {
        self.inner().link(tau)
    }
}

impl From<SkeletonComplex> for AnyComplex {
    fn from(s: SkeletonComplex) -> Self {
        AnyComplex::Skeleton(s)
    }
}

impl From<GeneralComplex> for AnyComplex {
    fn from(g: GeneralComplex) -> Self {
        AnyComplex::General(g)
    }
}

fn check_vertices(f: &Simplex, n: usize) -> Result<()> {
    match f.max_vertex() {
        Some(v) if v as usize >= n => Err(Error::VertexOutOfRange { vertex: v as u64, n }),
        _ => Ok(()),
    }
}

/// Star and costar of `tau`: `{σ : σ ∪ τ ∈ X}` and `{σ : σ ⊉ τ}`.
pub fn star_costar<C: Complex + ?Sized>(x: &C, tau: &Simplex) -> Result<(GeneralComplex, GeneralComplex)> {
    if !x.contains(tau) {
        return Err(Error::FaceNotInComplex(tau.clone()));
    }
    let mut star = Vec::new();
    let mut costar = Vec::new();
    for j in -1..=x.dim() {
        for s in x.faces(j) {
            if !tau.is_subset_of(&s) {
                costar.push(s.clone());
            }
            if x.contains(&s.union(tau)) {
                star.push(s);
            }
        }
    }
    let ground = x.ground();
    let n = x.n();
    Ok((
        GeneralComplex::from_set(n, ground.clone(), star.into_iter().collect()),
        GeneralComplex::from_set(n, ground, costar.into_iter().collect()),
    ))
}

/// The induced subcomplex `X[V']`.
pub fn induced<C: Complex + ?Sized>(x: &C, vertices: &[Vertex]) -> GeneralComplex {
    let mut keep: Vec<Vertex> = vertices.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let ground: Vec<Vertex> = x.ground().into_iter().filter(|v| keep.binary_search(v).is_ok()).collect();
    let mut by_dim = Vec::new();
    for j in -1..=x.dim() {
        by_dim.push(
            x.faces(j)
                .into_iter()
                .filter(|s| s.vertices().iter().all(|v| keep.binary_search(v).is_ok()))
                .collect(),
        );
    }
    GeneralComplex::from_parts(x.n(), ground, by_dim)
}

/// `X^{(j)}`: all faces of dimension at most `j`.
pub fn skeleton<C: Complex + ?Sized>(x: &C, j: isize) -> GeneralComplex {
    let by_dim = (-1..=j.min(x.dim())).map(|d| x.faces(d)).collect();
    GeneralComplex::from_parts(x.n(), x.ground(), by_dim)
}

/// The boundary complex `∂τ` of a simplex (all proper faces).
pub fn boundary_complex(tau: &Simplex, n: usize) -> GeneralComplex {
    let faces: BTreeSet<Simplex> = tau.all_faces().filter(|f| f.len() < tau.len()).collect();
    GeneralComplex::from_set(n, tau.vertices().to_vec(), faces)
}

/// Multiplicity table `face -> number of top faces containing it` over a list of top faces.
pub(crate) fn coface_counts<'a, I: IntoIterator<Item = &'a Simplex>>(tops: I) -> BTreeMap<Simplex, u64> {
    let mut counts = BTreeMap::new();
    for t in tops {
        for f in t.all_faces() {
            *counts.entry(f).or_insert(0) += 1;
        }
    }
    counts
}
