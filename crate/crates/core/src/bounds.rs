//! Link Betti sums and the local-to-global inequalities built on them.
//!
//! Everything here takes a [`SkeletonComplex`] `Δ_n^{(k-1)} ⊆ X ⊆ Δ_n^{(k)}`,
//! so every `ℓ`-face of the simplex with `ℓ < k` is a face of `X` and link
//! sums run over all of `Δ_n(ℓ)`. Comparisons against the rational bounds
//! are cleared of denominators by multiplying through by `C(k+1, ℓ+1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Complex, SkeletonComplex};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::homology::{betti, is_hypertree};
use crate::simplex::{binomial, subsets_of, Simplex, Vertex};

pub fn big_binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn check_nkl(n: usize, k: usize, ell: isize) -> Result<()> {
    if ell < 0 || ell as usize >= k || k >= n {
        return Err(Error::ParameterOutOfRange(format!("need 0 <= l < k < n, got n = {n}, k = {k}, l = {ell}")));
    }
    Ok(())
}

/// `C(n-1, ℓ) C(n-ℓ-2, k-ℓ)`, the bound scaled by `C(k+1, ℓ+1)`.
pub fn scaled_bound_b(n: usize, k: usize, ell: usize) -> BigInt {
    let (n, k, l) = (n as i64, k as i64, ell as i64);
    big_binomial(n - 1, l) * big_binomial(n - l - 2, k - l)
}

/// `B_{n,k,ℓ} = C(n-1, ℓ) C(n-ℓ-2, k-ℓ) / C(k+1, ℓ+1)`.
pub fn bound_b(n: usize, k: usize, ell: usize) -> Result<BigRational> {
    check_nkl(n, k, ell as isize)?;
    Ok(BigRational::new(scaled_bound_b(n, k, ell), big_binomial(k as i64 + 1, ell as i64 + 1)))
}

/// `F_{n,k,ℓ} = C(n, ℓ+1) C(n-ℓ-2, k-ℓ-1) / C(k+1, ℓ+1)`.
pub fn bound_f(n: usize, k: usize, ell: usize) -> Result<BigRational> {
    check_nkl(n, k, ell as isize)?;
    let (ni, ki, l) = (n as i64, k as i64, ell as i64);
    let num = big_binomial(ni, l + 1) * big_binomial(ni - l - 2, ki - l - 1);
    Ok(BigRational::new(num, big_binomial(ki + 1, l + 1)))
}

/// `Σ_{τ ∈ Δ_n(ℓ)} tb_j(lk(X, τ))`, allowing `ℓ = -1` (the empty face).
pub fn link_betti_sum(x: &SkeletonComplex, ell: isize, j: isize, field: FieldSpec) -> u64 {
    link_bettis(x, ell, j, field).iter().map(|(_, b)| b).sum()
}

/// Per-face link Betti numbers, in lexicographic face order.
pub fn link_bettis(x: &SkeletonComplex, ell: isize, j: isize, field: FieldSpec) -> Vec<(Simplex, u64)> {
    let faces: Vec<Simplex> = if ell < -1 { Vec::new() } else { x.faces(ell) };
    faces
        .into_par_iter()
        .map(|tau| {
            let lk = x.link(&tau).expect("face of X");
            let b = betti(&lk, j, field);
            (tau, b)
        })
        .collect()
}

/// `λ_{ℓ,j}(X)`.
pub fn lambda(x: &SkeletonComplex, ell: isize, j: isize, field: FieldSpec) -> Result<u64> {
    check_nkl(x.n(), x.k(), ell)?;
    if j < -1 {
        return Err(Error::ParameterOutOfRange(format!("j = {j} must be at least -1")));
    }
    Ok(link_betti_sum(x, ell, j, field))
}

/// Serialized exact rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for Fraction {
    fn from(r: &BigRational) -> Self {
        Fraction { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrichotomyFlags {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl TrichotomyFlags {
    pub fn all_equal(&self) -> bool {
        self.a == self.b && self.b == self.c
    }
}

/// Everything computed when checking the upper bound for one `(X, ℓ)`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCertificate {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub field: FieldSpec,
    /// `λ_{ℓ,k-ℓ-2}(X)`.
    pub lambda_km2: u64,
    /// `λ_{ℓ,k-ℓ-1}(X)`.
    pub lambda_km1: u64,
    pub tb_km1: u64,
    pub tb_k: u64,
    pub f_k: u64,
    #[serde(skip)]
    pub bound_b: BigRational,
    #[serde(skip)]
    pub bound_f: BigRational,
    /// `tb_{k-1} <= λ_{ℓ,k-ℓ-2} / C(k+1,ℓ+1) + B`.
    pub eq1_holds: bool,
    /// When `λ_{ℓ,k-ℓ-2} = 0`, whether `tb_{k-1} <= B`.
    pub corollary_holds: Option<bool>,
    /// `C(k+1,ℓ+1) tb_k <= λ_{ℓ,k-ℓ-1}`.
    pub eq5_holds: bool,
    /// `tb_k = tb_{k-1} + f_k - C(n-1,k)`.
    pub eq6_holds: bool,
    /// `λ_{ℓ,k-ℓ-1} = λ_{ℓ,k-ℓ-2} + C(k+1,ℓ+1)(f_k - F)`.
    pub eq8_holds: bool,
    pub trichotomy: TrichotomyFlags,
}

impl BoundCertificate {
    /// Every checked relation holds, and the trichotomy flags agree when `λ = 0`.
    pub fn all_hold(&self) -> bool {
        self.eq1_holds
            && self.corollary_holds.unwrap_or(true)
            && self.eq5_holds
            && self.eq6_holds
            && self.eq8_holds
            && (self.lambda_km2 != 0 || self.trichotomy.all_equal())
    }
}

/// Evaluates the three equality conditions without the `λ = 0` precondition.
pub fn trichotomy_flags(x: &SkeletonComplex, ell: usize, field: FieldSpec) -> Result<TrichotomyFlags> {
    let (n, k) = (x.n(), x.k());
    check_nkl(n, k, ell as isize)?;
    let c = big_binomial(k as i64 + 1, ell as i64 + 1);
    let tb_km1 = betti(x, k as isize - 1, field);
    let tb_k = betti(x, k as isize, field);
    let a = BigInt::from(tb_km1) * &c == scaled_bound_b(n, k, ell);
    let f = bound_f(n, k, ell)?;
    let b = tb_k == 0 && BigRational::from_integer(BigInt::from(x.f_top())) == f;
    let r = k as isize - ell as isize - 1;
    let faces: Vec<Simplex> = x.faces(ell as isize);
    let c_flag = faces
        .par_iter()
        .map(|tau| {
            let lk = x.link(tau)?;
            Ok(is_hypertree(&lk, r, field)?.is_hypertree)
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|h| h);
    Ok(TrichotomyFlags { a, b, c: c_flag })
}

/// Checks the upper bound and the identities around it for one `ℓ`.
pub fn verify_upper_bound(x: &SkeletonComplex, ell: usize, field: FieldSpec) -> Result<BoundCertificate> {
    let (n, k) = (x.n(), x.k());
    check_nkl(n, k, ell as isize)?;
    let ki = k as isize;
    let li = ell as isize;
    let c = big_binomial(k as i64 + 1, ell as i64 + 1);
    let lambda_km2 = link_betti_sum(x, li, ki - li - 2, field);
    let lambda_km1 = link_betti_sum(x, li, ki - li - 1, field);
    let tb_km1 = betti(x, ki - 1, field);
    let tb_k = betti(x, ki, field);
    let f_k = x.f_top() as u64;
    let bb = bound_b(n, k, ell)?;
    let ff = bound_f(n, k, ell)?;

    let lhs1 = BigInt::from(tb_km1) * &c;
    let rhs1 = BigInt::from(lambda_km2) + scaled_bound_b(n, k, ell);
    let eq1_holds = lhs1 <= rhs1;
    let corollary_holds = (lambda_km2 == 0).then(|| lhs1 <= scaled_bound_b(n, k, ell));
    let eq5_holds = BigInt::from(tb_k) * &c <= BigInt::from(lambda_km1);
    let eq6_holds = tb_k as i128 == tb_km1 as i128 + f_k as i128 - binomial(n as u64 - 1, k as u64) as i128;
    // C(k+1,ℓ+1) F is C(n,ℓ+1) C(n-ℓ-2,k-ℓ-1), an integer
    let scaled_f = (&ff * BigRational::from_integer(c.clone())).to_integer();
    let eq8_holds =
        BigInt::from(lambda_km1) == BigInt::from(lambda_km2) + &c * BigInt::from(f_k) - scaled_f;
    let trichotomy = trichotomy_flags(x, ell, field)?;
    Ok(BoundCertificate {
        n,
        k,
        ell,
        field,
        lambda_km2,
        lambda_km1,
        tb_km1,
        tb_k,
        f_k,
        bound_b: bb,
        bound_f: ff,
        eq1_holds,
        corollary_holds,
        eq5_holds,
        eq6_holds,
        eq8_holds,
        trichotomy,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DualBoundVerdict {
    pub ell: isize,
    /// `C(k+1, ℓ+1) · tb_k(X)`.
    pub lhs: u64,
    /// `Σ_{τ ∈ X(ℓ)} tb_{k-ℓ-1}(lk(X, τ))`.
    pub rhs: u64,
    pub holds: bool,
}

/// `C(k+1, ℓ+1) tb_k(X) <= Σ_τ tb_{k-ℓ-1}(lk(X, τ))` for `-1 <= ℓ < k`.
pub fn verify_dual_bound(x: &SkeletonComplex, ell: isize, field: FieldSpec) -> Result<DualBoundVerdict> {
    let k = x.k() as isize;
    if ell < -1 || ell >= k {
        return Err(Error::ParameterOutOfRange(format!("need -1 <= l < k, got l = {ell}, k = {k}")));
    }
    let c = binomial(k as u64 + 1, (ell + 1) as u64);
    let lhs = c * betti(x, k, field);
    let rhs = link_betti_sum(x, ell, k - ell - 1, field);
    Ok(DualBoundVerdict { ell, lhs, rhs, holds: lhs <= rhs })
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityVerdict {
    pub sigma: Simplex,
    pub lambda_before: u64,
    pub lambda_after: u64,
    pub tb_before: u64,
    pub tb_after: u64,
    /// `λ(X-σ) - λ(X) <= C(k+1,ℓ+1)(tb_{k-1}(X-σ) - tb_{k-1}(X))`.
    pub inequality_holds: bool,
    /// `tb_{k-1}(X) <= tb_{k-1}(X-σ) <= tb_{k-1}(X) + 1`.
    pub global_bracket_holds: bool,
    /// The per-link bracket for every `τ ⊆ σ` with `|τ| = ℓ+1`.
    pub link_bracket_holds: bool,
    /// Links of `ℓ`-faces outside `σ` are unchanged.
    pub other_links_unchanged: bool,
}

impl MonotonicityVerdict {
    pub fn holds(&self) -> bool {
        self.inequality_holds && self.global_bracket_holds && self.link_bracket_holds && self.other_links_unchanged
    }
}

/// Compares `X` and `X - σ` for a top face `σ`.
pub fn monotonicity_check(x: &SkeletonComplex, sigma: &Simplex, ell: usize, field: FieldSpec) -> Result<MonotonicityVerdict> {
    let (n, k) = (x.n(), x.k());
    check_nkl(n, k, ell as isize)?;
    let smaller = x.remove_top_face(sigma)?;
    let li = ell as isize;
    let j = k as isize - li - 2;
    let before = link_bettis(x, li, j, field);
    let after = link_bettis(&smaller, li, j, field);
    let lambda_before: u64 = before.iter().map(|(_, b)| b).sum();
    let lambda_after: u64 = after.iter().map(|(_, b)| b).sum();
    let tb_before = betti(x, k as isize - 1, field);
    let tb_after = betti(&smaller, k as isize - 1, field);
    let c = binomial(k as u64 + 1, ell as u64 + 1) as i128;
    let inequality_holds = lambda_after as i128 - lambda_before as i128 <= c * (tb_after as i128 - tb_before as i128);
    let global_bracket_holds = tb_before <= tb_after && tb_after <= tb_before + 1;
    let mut link_bracket_holds = true;
    let mut other_links_unchanged = true;
    for ((tau, b0), (_, b1)) in before.iter().zip(after.iter()) {
        if tau.is_subset_of(sigma) {
            link_bracket_holds &= *b0 <= *b1 && *b1 <= b0 + 1;
        } else {
            other_links_unchanged &= x.link(tau)? == smaller.link(tau)? && b0 == b1;
        }
    }
    Ok(MonotonicityVerdict {
        sigma: sigma.clone(),
        lambda_before,
        lambda_after,
        tb_before,
        tb_after,
        inequality_holds,
        global_bracket_holds,
        link_bracket_holds,
        other_links_unchanged,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TrichotomyVerdict {
    pub flags: TrichotomyFlags,
    pub equivalent: bool,
}

/// The three equality conditions, under the precondition `λ_{ℓ,k-ℓ-2}(X) = 0`.
pub fn equality_trichotomy(x: &SkeletonComplex, ell: usize, field: FieldSpec) -> Result<TrichotomyVerdict> {
    check_nkl(x.n(), x.k(), ell as isize)?;
    let lam = link_betti_sum(x, ell as isize, x.k() as isize - ell as isize - 2, field);
    if lam != 0 {
        return Err(Error::PreconditionLambdaNonzero(lam));
    }
    let flags = trichotomy_flags(x, ell, field)?;
    Ok(TrichotomyVerdict { flags, equivalent: flags.all_equal() })
}

/// `c_{k,ℓ} n^{k-ℓ-2}` with `c_{k,ℓ} = (ℓ+1)(k-ℓ)/(k-ℓ-1)!`, as an exact rational.
pub fn link_betti_cap(n: usize, k: usize, ell: usize) -> BigRational {
    let fact: u64 = (1..=(k - ell - 1) as u64).product();
    let num = BigInt::from((ell + 1) * (k - ell)) * BigInt::from(n).pow((k - ell - 2) as u32);
    BigRational::new(num, BigInt::from(fact))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Every `(ℓ+1)`-subset of `[n]`.
pub fn ell_faces(n: usize, ell: usize) -> Vec<Simplex> {
    let all: Vec<Vertex> = (0..n as Vertex).collect();
    subsets_of(&all, ell + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bound_values() {
        for n in 3..12 {
            assert_eq!(bound_b(n, 1, 0).unwrap(), rat(n as i64 - 2, 2));
        }
        assert_eq!(bound_b(7, 2, 1).unwrap(), rat(8, 1));
        // (n/(k+1) - 1) C(n-1, k-1)
        assert_eq!(bound_b(7, 2, 1).unwrap(), (rat(7, 3) - rat(1, 1)) * rat(6, 1));
        assert_eq!(bound_f(6, 2, 0).unwrap(), rat(8, 1));
        assert_eq!(bound_b(6, 2, 0).unwrap(), rat(2, 1));
        assert!(matches!(bound_b(5, 2, 2), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(bound_b(3, 3, 0), Err(Error::ParameterOutOfRange(_))));
    }

    #[test]
    fn b_plus_f_is_binomial() {
        for n in 2..14usize {
            for k in 1..n.min(6) {
                for l in 0..k {
                    let sum = bound_b(n, k, l).unwrap() + bound_f(n, k, l).unwrap();
                    assert_eq!(sum, BigRational::from_integer(big_binomial(n as i64 - 1, k as i64)), "{n} {k} {l}");
                }
            }
        }
    }

    #[test]
    fn lambda_of_complete_graph() {
        // each vertex link of K_6 is 5 points with tb_0 = 4
        let x = SkeletonComplex::full(6, 1).unwrap();
        assert_eq!(lambda(&x, 0, 0, FieldSpec::GF2).unwrap(), 6 * 4);
        let k5 = SkeletonComplex::full(5, 1).unwrap();
        assert_eq!(lambda(&k5, 0, 0, FieldSpec::GF2).unwrap(), 15);
    }

    #[test]
    fn lambda_parameter_checks() {
        let x = SkeletonComplex::full(5, 1).unwrap();
        assert!(lambda(&x, 1, 0, FieldSpec::GF2).is_err());
        assert!(lambda(&x, 0, -2, FieldSpec::GF2).is_err());
    }

    #[test]
    fn empty_top_level_is_tight() {
        for (n, k, l) in [(6, 2, 0), (6, 2, 1), (7, 3, 1), (5, 1, 0)] {
            let x = SkeletonComplex::skeleton_only(n, k).unwrap();
            let cert = verify_upper_bound(&x, l, FieldSpec::GF2).unwrap();
            assert_eq!(cert.tb_km1, binomial(n as u64 - 1, k as u64));
            let c = big_binomial(k as i64 + 1, l as i64 + 1);
            assert_eq!(
                BigInt::from(cert.tb_km1) * c,
                BigInt::from(cert.lambda_km2) + scaled_bound_b(n, k, l)
            );
            assert!(cert.all_hold());
        }
    }

    #[test]
    fn dual_bound_at_minus_one_is_trivial() {
        let x = SkeletonComplex::full(6, 2).unwrap();
        let v = verify_dual_bound(&x, -1, FieldSpec::GF2).unwrap();
        assert_eq!(v.lhs, v.rhs);
        assert!(v.holds);
    }

    #[test]
    fn link_cap_values() {
        // c_{2,0} = 2, c_{3,0} = 3/2 · n, c_{3,1} = 4
        assert_eq!(link_betti_cap(7, 2, 0), rat(2, 1));
        assert_eq!(link_betti_cap(7, 3, 0), rat(21, 2));
        assert_eq!(link_betti_cap(11, 3, 1), rat(4, 1));
    }
}
