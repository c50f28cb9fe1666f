//! The lifted p-gonal automorphism acting on the homology group `F_q^n`.
//!
//! Coordinates run block by block, `(a_{1,1}, ..., a_{1,p-1}, a_{2,1}, ...)`,
//! with the dependent generator of each block eliminated through
//! `a_{j,p} = -(a_{j,1} + ... + a_{j,p-1})`. On each block the action is the
//! companion matrix of `1 + x + ... + x^{p-1}`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fq::{decode, is_normalized, kernel, FqMatrix, Subspace};
use crate::params::CoverParams;
use crate::poly::FqPoly;

pub use crate::params::order_mod;

/// Largest `q^{s0}` the exhaustive factor search will scan.
pub const FACTOR_SEARCH_LIMIT: u64 = 1 << 24;

/// Default ambient-size guard for brute-force invariant subspace enumeration.
pub const INVARIANT_ENUMERATION_CAP: u128 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedAction {
    params: CoverParams,
    matrix: FqMatrix,
    inverse: FqMatrix,
}

/// Companion matrix of the p-th cyclotomic polynomial over `F_q`:
/// `e_i -> e_{i+1}` for `i < p-1`, `e_{p-1} -> -(e_1 + ... + e_{p-1})`.
pub fn companion_block(p: u32, q: u32) -> FqMatrix {
    let d = (p - 1) as usize;
    let mut c = FqMatrix::zeros(d, d, q);
    for i in 0..d - 1 {
        c.set(i + 1, i, 1);
    }
    for k in 0..d {
        c.set(k, d - 1, q - 1);
    }
    c
}

pub fn build_action(params: &CoverParams) -> AdaptedAction {
    let block = companion_block(params.p(), params.q());
    let matrix = FqMatrix::block_diagonal(&vec![block; params.blocks()]);
    let inverse = matrix.pow(params.p() as u64 - 1);
    AdaptedAction { params: params.clone(), matrix, inverse }
}

impl AdaptedAction {
    pub fn params(&self) -> &CoverParams {
        &self.params
    }

    pub fn matrix(&self) -> &FqMatrix {
        &self.matrix
    }

    /// `T^{-1} = T^{p-1}`.
    pub fn inverse(&self) -> &FqMatrix {
        &self.inverse
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn q(&self) -> u32 {
        self.matrix.modulus()
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.apply(v)
    }

    /// `T^k v` for `k` taken mod `p`.
    pub fn apply_power(&self, v: &[u32], k: u32) -> Vec<u32> {
        let mut out = v.to_vec();
        for _ in 0..k % self.params.p() {
            out = self.matrix.apply(&out);
        }
        out
    }

    /// Smallest `T`-invariant subspace containing `v`.
    pub fn cyclic_span(&self, v: &[u32]) -> Subspace {
        let p = self.params.p() as usize;
        let mut vecs = Vec::with_capacity(p - 1);
        let mut cur = v.to_vec();
        for _ in 0..p - 1 {
            let next = self.apply(&cur);
            vecs.push(cur);
            cur = next;
        }
        Subspace::span(&vecs, self.n(), self.q())
    }
}

/// Distinct irreducible factors of `1 + x + ... + x^{p-1}` over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub p: u32,
    pub q: u32,
    pub s0: u32,
    pub factors: Vec<FqPoly>,
}

impl CyclotomicFactorization {
    pub fn product(&self) -> FqPoly {
        self.factors.iter().fold(FqPoly::one(self.q), |acc, f| acc.mul(f))
    }
}

/// Every irreducible factor has degree `s0 = ord_p(q)` and the polynomial is
/// squarefree, so every monic divisor of degree `s0` is one of the factors.
/// The search scans all `q^{s0}` monic candidates.
pub fn cyclotomic_factor(p: u32, q: u32) -> Result<CyclotomicFactorization> {
    if !crate::fq::is_prime(p) || !crate::fq::is_prime(q) || p == q {
        return Err(Error::InvalidParameters(format!("p={p}, q={q} must be distinct primes")));
    }
    let s0 = order_mod(q, p)?;
    let phi = FqPoly::cyclotomic_prime(p, q);
    if s0 == p - 1 {
        return Ok(CyclotomicFactorization { p, q, s0, factors: vec![phi] });
    }
    let candidates = (q as u64).checked_pow(s0).unwrap_or(u64::MAX);
    if candidates > FACTOR_SEARCH_LIMIT {
        return Err(Error::CapExceeded { required: candidates as u128, cap: FACTOR_SEARCH_LIMIT as u128 });
    }
    let want = ((p - 1) / s0) as usize;
    let mut factors = Vec::with_capacity(want);
    for cand in FqPoly::monic_of_degree(s0 as usize, q) {
        if phi.div_rem(&cand).1.is_zero() {
            factors.push(cand);
            if factors.len() == want {
                break;
            }
        }
    }
    let out = CyclotomicFactorization { p, q, s0, factors };
    if out.factors.len() != want || out.product() != phi {
        return Err(Error::IdentityFailure(format!(
            "cyclotomic factorization of degree {} over F_{q} did not reconstruct",
            p - 1
        )));
    }
    Ok(out)
}

/// A `T`-invariant subspace of dimension exactly `s`, built as a direct sum of
/// kernels `ker f_i(C)` on individual blocks.
pub fn invariant_subspace_of_dim(action: &AdaptedAction, s: usize) -> Result<Subspace> {
    let params = action.params();
    let (n, q) = (action.n(), action.q());
    if s > n {
        return Err(Error::NoInvariantSubspace { dim: s, reason: format!("exceeds ambient dimension {n}") });
    }
    let s0 = params.s0() as usize;
    if !s.is_multiple_of(s0) {
        return Err(Error::NoInvariantSubspace {
            dim: s,
            reason: format!("q^{s} is not 1 mod {}; dimensions must be multiples of {s0}", params.p()),
        });
    }
    let pieces = s / s0;
    if pieces == 0 {
        return Ok(Subspace::zero(n, q));
    }
    let fact = cyclotomic_factor(params.p(), q)?;
    let block = companion_block(params.p(), q);
    let d = block.rows();
    let block_kernels: Vec<Subspace> = fact.factors.iter().map(|f| kernel(&f.eval_matrix(&block))).collect();
    let mut vectors = Vec::with_capacity(s);
    // (block, factor) pairs in order, each contributing s0 dimensions
    for idx in 0..pieces {
        let (j, i) = (idx / fact.factors.len(), idx % fact.factors.len());
        for b in block_kernels[i].basis() {
            let mut v = vec![0u32; n];
            v[j * d..(j + 1) * d].copy_from_slice(b);
            vectors.push(v);
        }
    }
    let out = Subspace::span(&vectors, n, q);
    debug_assert_eq!(out.dim(), s);
    debug_assert!(out.is_invariant_under(action.matrix()).unwrap_or(false));
    Ok(out)
}

/// Every `T`-invariant subspace of `F_q^n`, sorted by dimension then basis.
///
/// Builds the lattice upward from zero: each invariant `W` is `V + <v>_T` for
/// any invariant `V` inside it and any `v` in `W \ V`.
pub fn enumerate_invariant_subspaces(action: &AdaptedAction, max_ambient: u128) -> Result<Vec<Subspace>> {
    let (n, q) = (action.n(), action.q());
    let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > max_ambient {
        return Err(Error::CapExceeded { required: size, cap: max_ambient });
    }
    let normals: Vec<Vec<u32>> = (1..size as u64).map(|c| decode(c, n, q)).filter(|v| is_normalized(v)).collect();
    let cyclic: Vec<Subspace> = normals.iter().map(|v| action.cyclic_span(v)).collect();

    let mut found: BTreeSet<(usize, Subspace)> = BTreeSet::new();
    let zero = Subspace::zero(n, q);
    found.insert((0, zero.clone()));
    let mut frontier = vec![zero];
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for v in &frontier {
            for (w, c) in normals.iter().zip(&cyclic) {
                if v.contains(w)? {
                    continue;
                }
                let bigger = v.sum(c)?;
                if !found.contains(&(bigger.dim(), bigger.clone())) {
                    next.insert(bigger);
                }
            }
        }
        for s in &next {
            found.insert((s.dim(), s.clone()));
        }
        frontier = next.into_iter().collect();
    }
    Ok(found.into_iter().map(|(_, s)| s).collect())
}
