//! Maximal subgroups of the homology group and their orbits under the
//! p-gonal action.
//!
//! A maximal subgroup of `F_q^n` is a hyperplane, stored by its normal vector
//! (first nonzero entry 1). The lifted automorphism `T` moves the hyperplane
//! `ker(v)` to `T ker(v) = ker(v T^{-1})`; the intersection of a p-orbit is the
//! core, which fixes the Galois closure of the composite cover.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::action::AdaptedAction;
use crate::error::{Error, Result};
use crate::fq::{decode, encode, is_normalized, kernel, normalize, FqMatrix, Subspace};
use crate::params::{big_pow, CoverParams};

/// Default ambient-size guard, `3^13`.
pub const DEFAULT_ATLAS_CAP: u128 = 1_594_323;

/// Default guard for the brute-force subspace oracle.
pub const BRUTE_FORCE_CAP: u128 = 4096;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<u32>,
    modulus: u32,
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyperplane{:?}", self.normal)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.normal.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Hyperplane {
    /// Normalizes `normal`; fails on the zero vector.
    pub fn from_normal(normal: &[u32], modulus: u32) -> Result<Self> {
        let reduced: Vec<u32> = normal.iter().map(|&x| x % modulus).collect();
        if reduced.iter().all(|&x| x == 0) {
            return Err(Error::NotAHyperplane { dim: normal.len(), ambient: normal.len() });
        }
        Ok(Self { normal: normalize(&reduced, modulus), modulus })
    }

    pub fn from_subspace(s: &Subspace) -> Result<Self> {
        let n = s.ambient_dim();
        if n == 0 || s.dim() + 1 != n {
            return Err(Error::NotAHyperplane { dim: s.dim(), ambient: n });
        }
        let ann = s.annihilator();
        Self::from_normal(&ann.basis()[0], s.modulus())
    }

    pub fn normal(&self) -> &[u32] {
        &self.normal
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn ambient_dim(&self) -> usize {
        self.normal.len()
    }

    pub fn kernel(&self) -> Subspace {
        kernel(&FqMatrix::from_rows(std::slice::from_ref(&self.normal), self.normal.len(), self.modulus))
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let q = self.modulus as u64;
        let s: u64 = self.normal.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
        s.is_multiple_of(q)
    }

    /// Hyperplane with normal `v M`.
    pub fn transform_normal(&self, m: &FqMatrix) -> Hyperplane {
        Self { normal: normalize(&m.apply_left(&self.normal), self.modulus), modulus: self.modulus }
    }

    fn code(&self) -> u64 {
        encode(&self.normal, self.modulus)
    }
}

fn ambient_size(n: usize, q: u32) -> u128 {
    (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

fn check_cap(n: usize, q: u32, cap: u128) -> Result<u128> {
    let size = ambient_size(n, q);
    if size > cap {
        return Err(Error::CapExceeded { required: size, cap });
    }
    Ok(size)
}

/// All maximal subgroups in lexicographic order of their normals.
pub fn enumerate_hyperplanes(params: &CoverParams, cap: u128) -> Result<impl Iterator<Item = Hyperplane>> {
    let (n, q) = (params.n(), params.q());
    let size = check_cap(n, q, cap)? as u64;
    Ok((1..size)
        .map(move |c| decode(c, n, q))
        .filter(|v| is_normalized(v))
        .map(move |normal| Hyperplane { normal, modulus: q }))
}

/// The hyperplane whose kernel is `T ker(h)`.
pub fn conjugate_hyperplane(h: &Hyperplane, action: &AdaptedAction) -> Hyperplane {
    h.transform_normal(action.inverse())
}

/// The `p` conjugates `h, Th, ..., T^{p-1}h` (with repeats if `h` is invariant).
pub fn conjugates(h: &Hyperplane, action: &AdaptedAction) -> Vec<Hyperplane> {
    let p = action.params().p() as usize;
    let mut out = Vec::with_capacity(p);
    let mut cur = h.clone();
    for _ in 0..p {
        let next = conjugate_hyperplane(&cur, action);
        out.push(cur);
        cur = next;
    }
    out
}

/// Intersection of all conjugates of `h`.
pub fn core(h: &Hyperplane, action: &AdaptedAction) -> Subspace {
    core_of_members(&conjugates(h, action))
}

fn core_of_members(members: &[Hyperplane]) -> Subspace {
    let n = members[0].ambient_dim();
    let rows: Vec<Vec<u32>> = members.iter().map(|h| h.normal.clone()).collect();
    kernel(&FqMatrix::from_rows(&rows, n, members[0].modulus))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClass {
    pub representative: Hyperplane,
    /// Members in conjugation order starting at the representative.
    pub members: Vec<Hyperplane>,
    pub core: Subspace,
}

impl OrbitClass {
    pub fn core_dim(&self) -> usize {
        self.core.dim()
    }
}

/// Lower bounds on the core dimension: `(p-1)(r-3)` and `n - p`.
pub fn core_dim_lower_bounds(params: &CoverParams) -> (usize, usize) {
    let n = params.n();
    let p = params.p() as usize;
    ((p - 1) * (params.r() as usize - 3), n.saturating_sub(p))
}

/// Partition of all hyperplanes into conjugation orbits, ordered by
/// representative (the lexicographically least member).
pub fn orbit_classes(action: &AdaptedAction, cap: u128) -> Result<Vec<OrbitClass>> {
    let params = action.params();
    let (n, q, p) = (params.n(), params.q(), params.p() as usize);
    if !params.is_coprime() {
        return Err(Error::InvalidParameters(format!("orbit classification needs gcd(p, q-1) = 1 (p={p}, q={q})")));
    }
    let size = check_cap(n, q, cap)? as usize;
    let mut seen = vec![false; size];
    let mut orbits: Vec<Vec<Hyperplane>> = Vec::new();
    for code in 1..size {
        if seen[code] {
            continue;
        }
        let v = decode(code as u64, n, q);
        if !is_normalized(&v) {
            continue;
        }
        let h = Hyperplane { normal: v, modulus: q };
        let members = conjugates(&h, action);
        for m in &members {
            let c = m.code() as usize;
            if seen[c] {
                return Err(Error::InvariantHyperplane { normal: h.normal.clone() });
            }
            seen[c] = true;
        }
        debug_assert_eq!(members.len(), p);
        orbits.push(members);
    }
    Ok(map_classes(orbits))
}

#[cfg(feature = "parallel")]
fn map_classes(orbits: Vec<Vec<Hyperplane>>) -> Vec<OrbitClass> {
    use rayon::prelude::*;
    orbits.into_par_iter().map(class_from_members).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_classes(orbits: Vec<Vec<Hyperplane>>) -> Vec<OrbitClass> {
    orbits.into_iter().map(class_from_members).collect()
}

fn class_from_members(members: Vec<Hyperplane>) -> OrbitClass {
    let core = core_of_members(&members);
    OrbitClass { representative: members[0].clone(), members, core }
}

/// Galois-closure data for the composite cover `Y -> X -> P^1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisReport {
    pub params: CoverParams,
    pub hyperplane: Hyperplane,
    pub is_composite_galois: bool,
    pub core_dim: usize,
    /// Rank `k = n - core_dim` of the translation part of the closure group.
    pub k: usize,
    pub congruence_holds: bool,
    /// Set when `k > p - 1`.
    pub exceeds_p_minus_one: bool,
}

impl GaloisReport {
    pub fn descriptor(&self) -> String {
        format!("Z_{}^{} ⋊ Z_{}", self.params.q(), self.k, self.params.p())
    }

    pub fn core_order(&self) -> BigUint {
        big_pow(self.params.q(), self.core_dim)
    }

    /// `p q^k`.
    pub fn group_order(&self) -> BigUint {
        big_pow(self.params.q(), self.k) * self.params.p()
    }
}

pub fn galois_closure(h: &Hyperplane, action: &AdaptedAction) -> Result<GaloisReport> {
    let params = action.params();
    if !params.is_coprime() {
        return Err(Error::InvalidParameters(format!(
            "Galois closure needs gcd(p, q-1) = 1 (p={}, q={})",
            params.p(),
            params.q()
        )));
    }
    if h.ambient_dim() != params.n() || h.modulus() != params.q() {
        return Err(Error::AmbientMismatch { expected: params.n(), found: h.ambient_dim() });
    }
    if conjugate_hyperplane(h, action) == *h {
        return Err(Error::InvariantHyperplane { normal: h.normal.clone() });
    }
    let core_dim = core(h, action).dim();
    let k = params.n() - core_dim;
    let congruence_holds = params.is_invariant_dim(k);
    if !congruence_holds {
        return Err(Error::IdentityFailure(format!("q^{k} is not 1 mod {}", params.p())));
    }
    Ok(GaloisReport {
        params: params.clone(),
        hyperplane: h.clone(),
        is_composite_galois: false,
        core_dim,
        k,
        congruence_holds,
        exceeds_p_minus_one: k > params.p() as usize - 1,
    })
}

/// Number of `k`-dimensional subspaces of `F_q^n`:
/// `prod_{j<k} (q^{n-j} - 1) / prod_{j<k} (q^{k-j} - 1)`.
pub fn gaussian_count(n: usize, k: usize, q: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..k {
        num *= big_pow(q, n - j) - 1u32;
        den *= big_pow(q, k - j) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Every subspace of `F_q^n` up to dimension `max_dim`, found by closing
/// member sets under `S -> S + <v>` and deduplicating on the member set
/// itself. Does not use row reduction for identification.
fn brute_levels(n: usize, q: u32, max_dim: usize, cap: u128) -> Result<Vec<Vec<Subspace>>> {
    let size = check_cap(n, q, cap)? as usize;
    let words = size.div_ceil(64);
    let digits: Vec<Vec<u32>> = (0..size as u64).map(|c| decode(c, n, q)).collect();
    let add = |a: usize, b: usize| -> usize {
        let s: Vec<u32> = digits[a].iter().zip(&digits[b]).map(|(&x, &y)| (x + y) % q).collect();
        encode(&s, q) as usize
    };
    let table: Option<Vec<u16>> = (size <= 2048).then(|| {
        let mut t = vec![0u16; size * size];
        for a in 0..size {
            for b in 0..size {
                t[a * size + b] = add(a, b) as u16;
            }
        }
        t
    });
    let plus = |a: usize, b: usize| match &table {
        Some(t) => t[a * size + b] as usize,
        None => add(a, b),
    };
    let generators: Vec<usize> = (1..size).filter(|&c| is_normalized(&digits[c])).collect();

    struct Node {
        members: Vec<usize>,
        gens: Vec<usize>,
    }
    let mut levels: Vec<Vec<Node>> = vec![vec![Node { members: vec![0], gens: vec![] }]];
    for _ in 0..max_dim.min(n) {
        let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut next: Vec<Node> = Vec::new();
        for node in levels.last().unwrap() {
            let mut bits = vec![0u64; words];
            for &m in &node.members {
                bits[m / 64] |= 1 << (m % 64);
            }
            for &v in &generators {
                if bits[v / 64] >> (v % 64) & 1 == 1 {
                    continue;
                }
                let mut members = node.members.clone();
                let mut mult = v;
                for _ in 1..q {
                    members.extend(node.members.iter().map(|&m| plus(m, mult)));
                    mult = plus(mult, v);
                }
                let mut key = vec![0u64; words];
                for &m in &members {
                    key[m / 64] |= 1 << (m % 64);
                }
                if index.contains_key(&key) {
                    continue;
                }
                index.insert(key, next.len());
                let mut gens = node.gens.clone();
                gens.push(v);
                next.push(Node { members, gens });
            }
        }
        levels.push(next);
    }
    Ok(levels
        .into_iter()
        .map(|level| {
            let mut subs: Vec<Subspace> = level
                .into_iter()
                .map(|node| {
                    let gens: Vec<Vec<u32>> = node.gens.iter().map(|&g| digits[g].clone()).collect();
                    Subspace::span(&gens, n, q)
                })
                .collect();
            subs.sort();
            subs
        })
        .collect())
}

/// All `k`-dimensional subspaces of `F_q^n` by exhaustive closure.
pub fn enumerate_subgroups_brute(n: usize, k: usize, q: u32, cap: u128) -> Result<Vec<Subspace>> {
    if k > n {
        return Ok(Vec::new());
    }
    Ok(brute_levels(n, q, k, cap)?.pop().unwrap_or_default())
}

/// Every subspace of `F_q^n`, all dimensions, by exhaustive closure.
pub fn all_subspaces_brute(n: usize, q: u32, cap: u128) -> Result<Vec<Subspace>> {
    Ok(brute_levels(n, q, n, cap)?.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::build_action;
    use std::collections::BTreeSet;

    fn act(p: u32, q: u32, r: u32) -> AdaptedAction {
        build_action(&CoverParams::oracle(p, q, r).unwrap())
    }

    #[test]
    fn hyperplane_counts() {
        let c = CoverParams::new(3, 2, 4).unwrap();
        let hs: Vec<_> = enumerate_hyperplanes(&c, DEFAULT_ATLAS_CAP).unwrap().collect();
        assert_eq!(hs.len(), 15);
        assert!(hs.windows(2).all(|w| w[0] < w[1]));
        let c = CoverParams::new(5, 2, 3).unwrap();
        assert_eq!(enumerate_hyperplanes(&c, DEFAULT_ATLAS_CAP).unwrap().count(), 15);
        let c = CoverParams::new(13, 3, 3).unwrap();
        assert_eq!(enumerate_hyperplanes(&c, DEFAULT_ATLAS_CAP).unwrap().count(), 265_720);
        assert!(matches!(enumerate_hyperplanes(&c, 1000), Err(Error::CapExceeded { required: 531_441, cap: 1000 })));
    }

    #[test]
    fn conjugation_moves_kernels_by_t() {
        for (p, q, r) in [(3, 2, 4), (5, 2, 3), (5, 3, 3)] {
            let a = act(p, q, r);
            for h in enumerate_hyperplanes(a.params(), DEFAULT_ATLAS_CAP).unwrap() {
                let c = conjugate_hyperplane(&h, &a);
                assert_eq!(c.kernel(), h.kernel().image(a.matrix()).unwrap());
                let mut back = h.clone();
                for _ in 0..p {
                    back = conjugate_hyperplane(&back, &a);
                }
                assert_eq!(back, h);
                assert_ne!(c, h);
            }
        }
    }

    #[test]
    fn orbit_of_first_coordinate_functional() {
        let a = act(3, 2, 4);
        let h = Hyperplane::from_normal(&[1, 0, 0, 0], 2).unwrap();
        let orbit: BTreeSet<_> = conjugates(&h, &a).into_iter().collect();
        assert_eq!(orbit.len(), 3);
    }

    #[test]
    fn invariant_hyperplane_when_gcd_fails() {
        // p=3, q=7: the action has eigenvalues in F_7, so invariant hyperplanes exist
        let params = CoverParams::with_policy(3, 7, 3, crate::params::Policy::RELAXED).unwrap();
        let a = build_action(&params);
        let fixed: Vec<_> = enumerate_hyperplanes(&params, DEFAULT_ATLAS_CAP)
            .unwrap()
            .filter(|h| conjugate_hyperplane(h, &a) == *h)
            .collect();
        assert!(!fixed.is_empty());
        assert!(orbit_classes(&a, DEFAULT_ATLAS_CAP).is_err());
        assert!(galois_closure(&fixed[0], &a).is_err());
    }

    #[test]
    fn orbit_class_examples() {
        let a = act(5, 2, 3);
        let classes = orbit_classes(&a, DEFAULT_ATLAS_CAP).unwrap();
        assert_eq!(classes.len(), 3);
        assert!(classes.iter().all(|c| c.core_dim() == 0));

        let a = act(3, 2, 4);
        let classes = orbit_classes(&a, DEFAULT_ATLAS_CAP).unwrap();
        assert_eq!(classes.len(), 5);
        for c in &classes {
            assert_eq!(c.core_dim(), 2);
            assert_eq!(c.members.len(), 3);
            assert_eq!(c.representative, *c.members.iter().min().unwrap());
            let g = galois_closure(&c.representative, &a).unwrap();
            assert_eq!(g.k, 2);
            assert_eq!(g.descriptor(), "Z_2^2 ⋊ Z_3");
            assert_eq!(g.group_order(), BigUint::from(12u32));
        }
        assert!(classes.windows(2).all(|w| w[0].representative < w[1].representative));
    }

    #[test]
    fn every_core_in_small_sweep_is_invariant_and_bounded() {
        for (p, q, r) in [(3, 2, 3), (3, 2, 4), (3, 2, 5), (5, 2, 3), (5, 2, 4), (3, 5, 4), (7, 2, 3), (5, 3, 3)] {
            let a = act(p, q, r);
            let params = a.params().clone();
            let classes = orbit_classes(&a, DEFAULT_ATLAS_CAP).unwrap();
            let total: usize = classes.iter().map(|c| c.members.len()).sum();
            assert_eq!(BigUint::from(total), params.m());
            assert_eq!(Some(BigUint::from(classes.len())), params.t());
            let (bound, _) = core_dim_lower_bounds(&params);
            for c in &classes {
                assert_eq!(c.members.len(), p as usize);
                assert!(c.core.is_invariant_under(a.matrix()).unwrap());
                assert_eq!(c.core_dim() % params.s0() as usize, 0);
                assert!(c.core_dim() >= bound);
                assert!(c.core_dim() + p as usize >= params.n());
                assert_eq!(core(&c.members[1], &a), c.core);
            }
        }
    }

    #[test]
    fn opposite_convention_gives_same_orbits_and_cores() {
        for (p, q, r) in [(3, 2, 4), (5, 2, 3), (5, 3, 3)] {
            let a = act(p, q, r);
            let ours: BTreeSet<(BTreeSet<Hyperplane>, Subspace)> = orbit_classes(&a, DEFAULT_ATLAS_CAP)
                .unwrap()
                .into_iter()
                .map(|c| (c.members.into_iter().collect(), c.core))
                .collect();
            let theirs: BTreeSet<(BTreeSet<Hyperplane>, Subspace)> =
                enumerate_hyperplanes(a.params(), DEFAULT_ATLAS_CAP)
                    .unwrap()
                    .map(|h| {
                        let mut members = BTreeSet::new();
                        let mut cur = h;
                        for _ in 0..p {
                            let next = cur.transform_normal(a.matrix());
                            members.insert(cur);
                            cur = next;
                        }
                        let core = core_of_members(&members.iter().cloned().collect::<Vec<_>>());
                        (members, core)
                    })
                    .collect();
            assert_eq!(ours, theirs);
        }
    }

    #[test]
    fn orbit_classes_are_deterministic() {
        let a = act(5, 3, 3);
        assert_eq!(orbit_classes(&a, DEFAULT_ATLAS_CAP).unwrap(), orbit_classes(&a, DEFAULT_ATLAS_CAP).unwrap());
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_count(4, 0, 2), BigUint::one());
        assert_eq!(gaussian_count(4, 1, 2), BigUint::from(15u32));
        assert_eq!(gaussian_count(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_count(12, 11, 3), BigUint::from(265_720u32));
        assert_eq!(gaussian_count(3, 4, 2), BigUint::zero());
    }

    #[test]
    fn brute_examples() {
        assert_eq!(enumerate_subgroups_brute(4, 4, 2, BRUTE_FORCE_CAP).unwrap(), vec![Subspace::full(4, 2)]);
        assert_eq!(enumerate_subgroups_brute(4, 2, 2, BRUTE_FORCE_CAP).unwrap().len(), 35);
        assert_eq!(enumerate_subgroups_brute(4, 1, 3, BRUTE_FORCE_CAP).unwrap().len(), 40);
        assert_eq!(enumerate_subgroups_brute(4, 0, 3, BRUTE_FORCE_CAP).unwrap(), vec![Subspace::zero(4, 3)]);
        assert!(matches!(enumerate_subgroups_brute(13, 2, 2, BRUTE_FORCE_CAP), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn gaussian_matches_brute_force_small() {
        for (n, q) in [(1usize, 2u32), (2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (4, 3), (2, 5), (3, 5)] {
            let all = all_subspaces_brute(n, q, BRUTE_FORCE_CAP).unwrap();
            for k in 0..=n {
                let count = all.iter().filter(|s| s.dim() == k).count();
                assert_eq!(BigUint::from(count), gaussian_count(n, k, q), "n={n} k={k} q={q}");
            }
        }
    }

    #[test]
    fn hyperplane_count_duality() {
        for n in 1..8usize {
            for q in [2u32, 3, 5, 7] {
                let m = (big_pow(q, n) - 1u32) / (q - 1);
                assert_eq!(gaussian_count(n, n - 1, q), m);
                assert_eq!(gaussian_count(n, 1, q), m);
            }
        }
    }

    #[test]
    fn from_subspace_round_trip() {
        let h = Hyperplane::from_normal(&[0, 2, 1, 0], 3).unwrap();
        assert_eq!(h.normal(), &[0, 1, 2, 0]);
        assert_eq!(Hyperplane::from_subspace(&h.kernel()).unwrap(), h);
        assert!(Hyperplane::from_subspace(&Subspace::full(4, 3)).is_err());
        assert!(Hyperplane::from_normal(&[0, 0], 3).is_err());
    }
}
