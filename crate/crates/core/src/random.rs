//! Seeded random complexes for sweeps.
//!
//! Every generator takes a 64-bit seed and a stream index, so item `i` of a
//! sweep can be regenerated alone without replaying items `0..i`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{GeneralComplex, SkeletonComplex};
use crate::simplex::{subsets_of, Simplex, Vertex};

/// Inclusion probabilities used by the sweeps.
pub const DENSITIES: [f64; 3] = [0.2, 0.5, 0.8];

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn bernoulli_faces(rng: &mut ChaCha8Rng, n: usize, size: usize, q: f64) -> Vec<Simplex> {
    let all: Vec<Vertex> = (0..n as Vertex).collect();
    subsets_of(&all, size).filter(|_| rng.random_bool(q)).collect()
}

/// Full `(k-1)`-skeleton on `[n]` plus each `k`-face independently with probability `q`.
pub fn random_skeleton(n: usize, k: usize, q: f64, seed: u64, stream: u64) -> SkeletonComplex {
    let mut rng = rng_for(seed, stream);
    let tops = bernoulli_faces(&mut rng, n, k + 1, q);
    SkeletonComplex::from_top_faces(n, k, tops).expect("generated faces are valid")
}

/// Pure `k`-complex: downward closure of random `k`-faces (at least one).
pub fn random_pure(n: usize, k: usize, q: f64, seed: u64, stream: u64) -> GeneralComplex {
    let mut rng = rng_for(seed, stream);
    let mut tops = bernoulli_faces(&mut rng, n, k + 1, q);
    if tops.is_empty() {
        tops.push(Simplex::from_sorted(&(0..=k as Vertex).collect::<Vec<_>>()));
    }
    GeneralComplex::closure(tops, n).expect("generated faces are valid")
}

/// Downward closure of a handful of random facets of mixed dimension.
pub fn random_closure(n: usize, max_dim: usize, seed: u64, stream: u64) -> GeneralComplex {
    let mut rng = rng_for(seed, stream);
    let count = rng.random_range(1..=2 * n);
    let facets: Vec<Simplex> = (0..count)
        .map(|_| {
            let size = rng.random_range(1..=(max_dim + 1).min(n));
            let mut verts: Vec<Vertex> = (0..n as Vertex).collect();
            for i in 0..size {
                let j = rng.random_range(i..n);
                verts.swap(i, j);
            }
            Simplex::new(verts[..size].iter().copied()).unwrap()
        })
        .collect();
    GeneralComplex::closure(facets, n).expect("generated faces are valid")
}

/// Item `index` of a sweep: `k` in `1..=k_max`, `n` in `k+1..=n_max` and a
/// density from [`DENSITIES`], all drawn from the item's own stream.
pub fn sweep_sample(seed: u64, index: u64, n_max: usize, k_max: usize) -> (SkeletonComplex, f64) {
    assert!(n_max >= 2 && k_max >= 1, "sweep needs n_max >= 2 and k_max >= 1");
    let mut rng = rng_for(seed, 2 * index);
    let k = rng.random_range(1..=k_max.min(n_max - 1));
    let n = rng.random_range(k + 1..=n_max);
    let q = DENSITIES[rng.random_range(0..DENSITIES.len())];
    (random_skeleton(n, k, q, seed, 2 * index + 1), q)
}

/// Parameters of one random sandwiched complex as written on the command line:
/// `random(seed=7,n=7,k=2,q=0.5)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomSpec {
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub q: f64,
}

impl RandomSpec {
    pub fn parse(s: &str) -> Option<Self> {
        let body = s.trim().strip_prefix("random(")?.strip_suffix(')')?;
        let mut spec = RandomSpec { seed: 0, n: 0, k: 0, q: 0.5 };
        let mut seen_n = false;
        let mut seen_k = false;
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=')?;
            match key.trim() {
                "seed" => spec.seed = value.trim().parse().ok()?,
                "n" => {
                    spec.n = value.trim().parse().ok()?;
                    seen_n = true;
                }
                "k" => {
                    spec.k = value.trim().parse().ok()?;
                    seen_k = true;
                }
                "q" => spec.q = value.trim().parse().ok()?,
                _ => return None,
            }
        }
        (seen_n && seen_k && (0.0..=1.0).contains(&spec.q) && spec.n > spec.k).then_some(spec)
    }

    pub fn generate(&self) -> SkeletonComplex {
        random_skeleton(self.n, self.k, self.q, self.seed, 0)
    }
}
