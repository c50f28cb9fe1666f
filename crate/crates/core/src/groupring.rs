//! Group-ring identities for `G~ = N~ ⋊ <Phi>` checked on the regular module.
//!
//! `G~` acts on `Q[G~]` by left multiplication, which is faithful, so an
//! operator identity verified there holds in the group ring and therefore on
//! any module, in particular on the Jacobian of the cover. For a maximal
//! subgroup `L` of `N~` and an element `n` outside it, the subspace
//!
//! ```text
//! A_L = { z : h z = z for h in L,  (1 + n + ... + n^{q-1}) z = 0 }
//! ```
//!
//! has dimension `p(q-1)`, and on it `(sum_{h in L} h)(sum_k Phi^k)` acts as
//! `|L| = q^{n-1}` while every cross term `(sum_h h) Phi^k`, `k >= 1`, is zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::action::build_action;
use crate::atlas::{enumerate_hyperplanes, Hyperplane};
use crate::error::{Error, Result};
use crate::fq::{decode, encode};
use crate::params::{big_pow, CoverParams};

/// Largest `p q^n` handled by default.
pub const DEFAULT_GROUP_CAP: u128 = 512;
pub const ASSOCIATIVITY_SEED: u64 = 0x6f6e_616c;
pub const ASSOCIATIVITY_SAMPLES: usize = 4096;

/// `(translation, twist)` standing for `translation * Phi^twist`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub translation: Vec<u32>,
    pub twist: u32,
}

/// Multiplication table of `G~`. Element `(v, e)` has index `e q^n + code(v)`.
#[derive(Debug, Clone)]
pub struct SemidirectGroup {
    params: CoverParams,
    kernel_order: usize,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

pub fn build_group(params: &CoverParams, cap: u128) -> Result<SemidirectGroup> {
    let required = params.ambient_size().and_then(|s| s.checked_mul(params.p() as u128)).unwrap_or(u128::MAX);
    if required > cap {
        return Err(Error::CapExceeded { required, cap });
    }
    let (n, q, p) = (params.n(), params.q(), params.p() as usize);
    let action = build_action(params);
    let kn = required as usize / p;
    let order = required as usize;

    let vecs: Vec<Vec<u32>> = (0..kn).map(|c| decode(c as u64, n, q)).collect();
    // twisted[e][c] = code(T^e v_c)
    let twisted: Vec<Vec<usize>> =
        (0..p as u32).map(|e| vecs.iter().map(|v| encode(&action.apply_power(v, e), q) as usize).collect()).collect();
    let mut add = vec![0usize; kn * kn];
    for (a, va) in vecs.iter().enumerate() {
        for (b, vb) in vecs.iter().enumerate() {
            let s: Vec<u32> = va.iter().zip(vb).map(|(x, y)| (x + y) % q).collect();
            add[a * kn + b] = encode(&s, q) as usize;
        }
    }
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let (e, v) = (x / kn, x % kn);
        for y in 0..order {
            let (f, w) = (y / kn, y % kn);
            let prod = ((e + f) % p) * kn + add[v * kn + twisted[e][w]];
            table[x * order + y] = prod as u32;
        }
    }
    let mut inverse = vec![u32::MAX; order];
    for x in 0..order {
        inverse[x] = (0..order)
            .find(|&y| table[x * order + y] == 0)
            .ok_or_else(|| Error::VerificationFailure(format!("element {x} has no right inverse")))?
            as u32;
    }
    let group = SemidirectGroup { params: params.clone(), kernel_order: kn, order, table, inverse };
    group.check_axioms()?;
    Ok(group)
}

impl SemidirectGroup {
    pub fn params(&self) -> &CoverParams {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `|N~| = q^n`.
    pub fn kernel_order(&self) -> usize {
        self.kernel_order
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.twist as usize % self.params.p() as usize * self.kernel_order
            + encode(&g.translation, self.params.q()) as usize
    }

    pub fn element(&self, x: usize) -> GroupElement {
        GroupElement {
            translation: decode((x % self.kernel_order) as u64, self.params.n(), self.params.q()),
            twist: (x / self.kernel_order) as u32,
        }
    }

    pub fn translation(&self, v: &[u32]) -> usize {
        encode(v, self.params.q()) as usize
    }

    /// `Phi^k`.
    pub fn phi_power(&self, k: u32) -> usize {
        (k % self.params.p()) as usize * self.kernel_order
    }

    fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    /// Identity and inverses exhaustively, associativity on seeded random triples.
    fn check_axioms(&self) -> Result<()> {
        for x in 0..self.order {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::VerificationFailure(format!("(0,0) is not an identity for {:?}", self.element(x))));
            }
            if self.mul(self.inv(x), x) != 0 {
                return Err(Error::VerificationFailure(format!("left inverse fails for {:?}", self.element(x))));
            }
        }
        let mut rng = StdRng::seed_from_u64(ASSOCIATIVITY_SEED);
        for _ in 0..ASSOCIATIVITY_SAMPLES {
            let (a, b, c) =
                (rng.random_range(0..self.order), rng.random_range(0..self.order), rng.random_range(0..self.order));
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::VerificationFailure(format!(
                    "associativity fails for {:?}, {:?}, {:?}",
                    self.element(a),
                    self.element(b),
                    self.element(c)
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub order: usize,
    pub kernel_order: usize,
    pub nontrivial_kernel_elements: usize,
    pub orbit_count: usize,
    pub orbit_size: usize,
}

/// Every element outside `N~` has order `p`, `Phi` centralizes no nontrivial
/// translation, and `Phi`-conjugation orbits on `N~ \ {1}` all have size `p`.
pub fn frobenius_check(group: &SemidirectGroup) -> Result<FrobeniusReport> {
    let p = group.params.p() as usize;
    let kn = group.kernel_order;
    for x in kn..group.order {
        if group.pow(x, p) != 0 {
            return Err(Error::VerificationFailure(format!("{:?} does not have order p", group.element(x))));
        }
    }
    let phi = group.phi_power(1);
    let phi_inv = group.inv(phi);
    let conj = |x: usize| group.mul(group.mul(phi, x), phi_inv);
    for x in 1..kn {
        if conj(x) == x {
            return Err(Error::VerificationFailure(format!("Phi centralizes {:?}", group.element(x))));
        }
    }
    let mut seen = vec![false; kn];
    let mut orbit_count = 0;
    for x in 1..kn {
        if seen[x] {
            continue;
        }
        let mut y = x;
        let mut size = 0;
        loop {
            seen[y] = true;
            size += 1;
            y = conj(y);
            if y == x {
                break;
            }
        }
        if size != p {
            return Err(Error::VerificationFailure(format!(
                "orbit of {:?} has size {size}, expected {p}",
                group.element(x)
            )));
        }
        orbit_count += 1;
    }
    Ok(FrobeniusReport {
        order: group.order,
        kernel_order: kn,
        nontrivial_kernel_elements: kn - 1,
        orbit_count,
        orbit_size: p,
    })
}

/// A finitely supported element of `Z[G~]`, keyed by element index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingOperator {
    terms: BTreeMap<usize, BigInt>,
}

impl GroupRingOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn element(x: usize) -> Self {
        Self::sum_of([x])
    }

    /// Sum of the given elements, each with coefficient one.
    pub fn sum_of(elements: impl IntoIterator<Item = usize>) -> Self {
        let mut out = Self::zero();
        for x in elements {
            out.add_term(x, BigInt::one());
        }
        out
    }

    fn add_term(&mut self, x: usize, c: BigInt) {
        let entry = self.terms.entry(x).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn terms(&self) -> &BTreeMap<usize, BigInt> {
        &self.terms
    }

    /// Convolution `self * other`.
    pub fn compose(&self, other: &Self, group: &SemidirectGroup) -> Self {
        let mut out = Self::zero();
        for (&g, a) in &self.terms {
            for (&h, b) in &other.terms {
                out.add_term(group.mul(g, h), a * b);
            }
        }
        out
    }

    /// Left action on the regular module.
    pub fn apply(&self, group: &SemidirectGroup, z: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); z.len()];
        for (&g, c) in &self.terms {
            let c = BigRational::from_integer(c.clone());
            for (x, zx) in z.iter().enumerate() {
                if !zx.is_zero() {
                    out[group.mul(g, x)] += &c * zx;
                }
            }
        }
        out
    }
}

/// `Q[G~]` with basis indexed by group elements; `g` sends `e_x` to `e_{gx}`.
#[derive(Debug, Clone, Copy)]
pub struct RegularModule<'a> {
    group: &'a SemidirectGroup,
}

impl<'a> RegularModule<'a> {
    pub fn new(group: &'a SemidirectGroup) -> Self {
        Self { group }
    }

    pub fn dim(&self) -> usize {
        self.group.order
    }

    pub fn act(&self, g: usize, z: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); z.len()];
        for (x, zx) in z.iter().enumerate() {
            out[self.group.mul(g, x)] = zx.clone();
        }
        out
    }

    /// Permutation `x -> gx` of basis indices.
    pub fn permutation(&self, g: usize) -> Vec<usize> {
        (0..self.dim()).map(|x| self.group.mul(g, x)).collect()
    }
}

/// Subspace of the regular module held as its canonical null-space basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSubspace {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<BigRational>>,
}

impl RationalSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Incrementally reduced row space; rows are kept in reduced echelon form.
struct Reducer {
    cols: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Reducer {
    fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    fn push(&mut self, mut row: Vec<BigRational>) {
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if !row[pc].is_zero() {
                let f = row[pc].clone();
                for (a, b) in row.iter_mut().zip(r) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
        }
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else { return };
        let lead = row[pc].clone();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &lead;
            }
        }
        for r in self.rows.iter_mut() {
            if !r[pc].is_zero() {
                let f = r[pc].clone();
                for (a, b) in r.iter_mut().zip(&row) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(pc);
    }

    fn null_space(&self) -> Vec<Vec<BigRational>> {
        let mut is_pivot = vec![None; self.cols];
        for (i, &pc) in self.pivots.iter().enumerate() {
            is_pivot[pc] = Some(i);
        }
        (0..self.cols)
            .filter(|&f| is_pivot[f].is_none())
            .map(|f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &pc) in self.rows.iter().zip(&self.pivots) {
                    if !r[f].is_zero() {
                        v[pc] = -r[f].clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Rows of the integer matrix of `op` acting on the regular module.
fn operator_rows(op: &GroupRingOperator, group: &SemidirectGroup) -> Vec<Vec<BigRational>> {
    let n = group.order;
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (&g, c) in op.terms() {
        for x in 0..n {
            m[group.mul(g, x)][x] += BigRational::from_integer(c.clone());
        }
    }
    m
}

fn check_hyperplane(group: &SemidirectGroup, l: &Hyperplane) -> Result<()> {
    if l.ambient_dim() != group.params.n() || l.modulus() != group.params.q() {
        return Err(Error::AmbientMismatch { expected: group.params.n(), found: l.ambient_dim() });
    }
    Ok(())
}

/// Translations lying in `L`.
fn subgroup_elements(group: &SemidirectGroup, l: &Hyperplane) -> Vec<usize> {
    l.kernel().elements().iter().map(|v| group.translation(v)).collect()
}

/// `A_L` for the transversal `n`, computed as an exact null space.
pub fn fixed_subspace(group: &SemidirectGroup, l: &Hyperplane, transversal: &[u32]) -> Result<RationalSubspace> {
    check_hyperplane(group, l)?;
    if transversal.len() != group.params.n() {
        return Err(Error::AmbientMismatch { expected: group.params.n(), found: transversal.len() });
    }
    if l.contains(transversal) {
        return Err(Error::InvalidTransversal);
    }
    let q = group.params.q();
    let mut reducer = Reducer::new(group.order);
    for h in l.kernel().basis() {
        let mut op = GroupRingOperator::element(group.translation(h));
        op.add_term(0, -BigInt::one());
        for row in operator_rows(&op, group) {
            reducer.push(row);
        }
    }
    let powers = (0..q).map(|j| {
        let v: Vec<u32> = transversal.iter().map(|&x| x * j % q).collect();
        group.translation(&v)
    });
    for row in operator_rows(&GroupRingOperator::sum_of(powers), group) {
        reducer.push(row);
    }
    Ok(RationalSubspace { ambient_dim: group.order, basis: reducer.null_space() })
}

/// First nonzero vector outside `L` in lexicographic order.
pub fn default_transversal(l: &Hyperplane) -> Vec<u32> {
    let n = l.ambient_dim();
    (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .find(|v| !l.contains(v))
        .expect("a hyperplane misses some basis vector")
}

/// `(sum_{h in L} h)(sum_{k<p} Phi^k)`.
pub fn prop_operator(group: &SemidirectGroup, l: &Hyperplane) -> GroupRingOperator {
    let sum_l = GroupRingOperator::sum_of(subgroup_elements(group, l));
    let sum_phi = GroupRingOperator::sum_of((0..group.params.p()).map(|k| group.phi_power(k)));
    sum_l.compose(&sum_phi, group)
}

fn scale(z: &[BigRational], c: &BigInt) -> Vec<BigRational> {
    let c = BigRational::from_integer(c.clone());
    z.iter().map(|x| x * &c).collect()
}

fn witness(z: &[BigRational]) -> String {
    let support: Vec<String> =
        z.iter().enumerate().filter(|(_, x)| !x.is_zero()).take(8).map(|(i, x)| format!("{i}:{x}")).collect();
    format!("[{}]", support.join(", "))
}

/// Checks the operator acts as `q^{n-1}` on every basis vector of `A_L`, both
/// as one convolved element and as two operators applied in turn. Returns the
/// verified scalar.
pub fn verify_scalar_identity(group: &SemidirectGroup, l: &Hyperplane) -> Result<BigInt> {
    check_hyperplane(group, l)?;
    let a = fixed_subspace(group, l, &default_transversal(l))?;
    verify_on(group, l, &a)
}

fn verify_on(group: &SemidirectGroup, l: &Hyperplane, a: &RationalSubspace) -> Result<BigInt> {
    if a.dim() == 0 {
        return Err(Error::VerificationFailure(format!("A_L is zero for {l}")));
    }
    let scalar = BigInt::from(big_pow(group.params.q(), group.params.n() - 1));
    let composed = prop_operator(group, l);
    let sum_l = GroupRingOperator::sum_of(subgroup_elements(group, l));
    let sum_phi = GroupRingOperator::sum_of((0..group.params.p()).map(|k| group.phi_power(k)));
    for z in &a.basis {
        let expected = scale(z, &scalar);
        let direct = composed.apply(group, z);
        let sequential = sum_l.apply(group, &sum_phi.apply(group, z));
        if direct != expected || sequential != expected {
            return Err(Error::VerificationFailure(format!("operator is not {scalar} on {l}; witness {}", witness(z))));
        }
    }
    Ok(scalar)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossTermReport {
    pub hyperplane: Hyperplane,
    pub a_dim: usize,
    /// Every `k` checked; all annihilate `A_L`.
    pub ks: Vec<u32>,
}

/// `(sum_{h in L} h) Phi^k` kills `A_L` for each `k = 1 .. p-1`.
pub fn verify_cross_terms(group: &SemidirectGroup, l: &Hyperplane) -> Result<CrossTermReport> {
    check_hyperplane(group, l)?;
    let a = fixed_subspace(group, l, &default_transversal(l))?;
    cross_terms_on(group, l, &a)
}

fn cross_terms_on(group: &SemidirectGroup, l: &Hyperplane, a: &RationalSubspace) -> Result<CrossTermReport> {
    let sum_l = GroupRingOperator::sum_of(subgroup_elements(group, l));
    let ks: Vec<u32> = (1..group.params.p()).collect();
    for &k in &ks {
        let op = sum_l.compose(&GroupRingOperator::element(group.phi_power(k)), group);
        for z in &a.basis {
            let image = op.apply(group, z);
            if image.iter().any(|x| !x.is_zero()) {
                return Err(Error::VerificationFailure(format!(
                    "cross term k={k} does not vanish on {l}; image {}",
                    witness(&image)
                )));
            }
        }
    }
    Ok(CrossTermReport { hyperplane: l.clone(), a_dim: a.dim(), ks })
}

/// Outcome for one hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneVerification {
    pub hyperplane: Hyperplane,
    pub a_dim: usize,
    pub scalar: BigInt,
    pub cross_terms_vanish: bool,
    /// Number of transversal elements whose `A_L` was compared.
    pub transversals_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingSummary {
    pub params: CoverParams,
    pub frobenius: FrobeniusReport,
    pub hyperplanes: Vec<HyperplaneVerification>,
    /// `q^{n-1}`, the scalar verified on each `A_L`.
    pub scalar: BigInt,
    /// Expected `dim A_L = p(q-1)`.
    pub expected_a_dim: usize,
    /// The precise claim certified.
    pub claim: String,
}

/// How many transversals to compare per hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transversals {
    One,
    All,
}

/// One hyperplane: `A_L` for the chosen transversals, the scalar identity and
/// the cross terms.
pub fn verify_hyperplane(
    group: &SemidirectGroup,
    l: &Hyperplane,
    transversals: Transversals,
) -> Result<HyperplaneVerification> {
    let first = default_transversal(l);
    let a = fixed_subspace(group, l, &first)?;
    let mut checked = 1;
    if transversals == Transversals::All {
        let (n, q) = (group.params.n(), group.params.q());
        for code in 1..group.kernel_order as u64 {
            let v = decode(code, n, q);
            if l.contains(&v) || v == first {
                continue;
            }
            if fixed_subspace(group, l, &v)? != a {
                return Err(Error::VerificationFailure(format!("A_L for {l} depends on the transversal {v:?}")));
            }
            checked += 1;
        }
    }
    let scalar = verify_on(group, l, &a)?;
    cross_terms_on(group, l, &a)?;
    Ok(HyperplaneVerification {
        hyperplane: l.clone(),
        a_dim: a.dim(),
        scalar,
        cross_terms_vanish: true,
        transversals_checked: checked,
    })
}

/// Every hyperplane of `N~`, with the Frobenius check first.
pub fn verify_all(group: &SemidirectGroup, transversals: Transversals) -> Result<GroupRingSummary> {
    let params = group.params.clone();
    let frobenius = frobenius_check(group)?;
    let hs: Vec<Hyperplane> = enumerate_hyperplanes(&params, u128::MAX)?.collect();
    let hyperplanes = map_hyperplanes(group, hs, transversals)?;
    let expected_a_dim = (params.p() * (params.q() - 1)) as usize;
    if let Some(bad) = hyperplanes.iter().find(|h| h.a_dim != expected_a_dim) {
        return Err(Error::VerificationFailure(format!(
            "dim A_L = {} for {}, expected {expected_a_dim}",
            bad.a_dim, bad.hyperplane
        )));
    }
    let scalar = BigInt::from(big_pow(params.q(), params.n() - 1));
    Ok(GroupRingSummary {
        frobenius,
        hyperplanes,
        scalar: scalar.clone(),
        expected_a_dim,
        claim: format!(
            "in Z[G~], (sum over L)(sum of Phi^k) acts as {scalar} on A_L and each cross term is 0, \
             checked on the faithful regular module for all {} maximal subgroups L",
            params.m()
        ),
        params,
    })
}

#[cfg(feature = "parallel")]
fn map_hyperplanes(
    group: &SemidirectGroup,
    hs: Vec<Hyperplane>,
    transversals: Transversals,
) -> Result<Vec<HyperplaneVerification>> {
    use rayon::prelude::*;
    hs.par_iter().map(|h| verify_hyperplane(group, h, transversals)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_hyperplanes(
    group: &SemidirectGroup,
    hs: Vec<Hyperplane>,
    transversals: Transversals,
) -> Result<Vec<HyperplaneVerification>> {
    hs.iter().map(|h| verify_hyperplane(group, h, transversals)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::conjugate_hyperplane;

    fn group(p: u32, q: u32, r: u32) -> SemidirectGroup {
        build_group(&CoverParams::oracle(p, q, r).unwrap(), DEFAULT_GROUP_CAP).unwrap()
    }

    fn hyperplanes(g: &SemidirectGroup) -> Vec<Hyperplane> {
        enumerate_hyperplanes(g.params(), u128::MAX).unwrap().collect()
    }

    #[test]
    fn orders() {
        assert_eq!(group(5, 2, 3).order(), 80);
        assert_eq!(group(3, 2, 4).order(), 48);
        assert_eq!(group(3, 2, 3).order(), 12);
        assert_eq!(group(5, 3, 3).order(), 405);
        let too_big = CoverParams::new(7, 2, 4).unwrap();
        assert!(matches!(
            build_group(&too_big, DEFAULT_GROUP_CAP),
            Err(Error::CapExceeded { required: 28_672, cap: 512 })
        ));
    }

    #[test]
    fn element_round_trip() {
        let g = group(3, 2, 4);
        for x in 0..g.order() {
            assert_eq!(g.index_of(&g.element(x)), x);
        }
        let phi = g.phi_power(1);
        assert_eq!(g.element(phi), GroupElement { translation: vec![0; 4], twist: 1 });
        // Phi (v, 0) Phi^-1 = (T v, 0)
        let v = g.translation(&[1, 0, 0, 0]);
        let c = g.mul(g.mul(phi, v), g.inv(phi));
        assert_eq!(g.element(c).translation, vec![0, 1, 0, 0]);
    }

    #[test]
    fn frobenius_examples() {
        let r = frobenius_check(&group(5, 2, 3)).unwrap();
        assert_eq!((r.nontrivial_kernel_elements, r.orbit_count, r.orbit_size), (15, 3, 5));
        let r = frobenius_check(&group(3, 2, 4)).unwrap();
        assert_eq!((r.nontrivial_kernel_elements, r.orbit_count, r.orbit_size), (15, 5, 3));
        let r = frobenius_check(&group(3, 2, 3)).unwrap();
        assert_eq!((r.nontrivial_kernel_elements, r.orbit_count), (3, 1));
    }

    #[test]
    fn fixed_subspace_dimension_and_errors() {
        let g = group(5, 2, 3);
        let hs = hyperplanes(&g);
        assert_eq!(hs.len(), 15);
        for h in &hs {
            let a = fixed_subspace(&g, h, &default_transversal(h)).unwrap();
            assert_eq!(a.dim(), 5);
            let moved = conjugate_hyperplane(h, &build_action(g.params()));
            assert_eq!(fixed_subspace(&g, &moved, &default_transversal(&moved)).unwrap().dim(), a.dim());
        }
        let h = &hs[0];
        let inside = h.kernel().basis()[0].clone();
        assert_eq!(fixed_subspace(&g, h, &inside), Err(Error::InvalidTransversal));
        assert_eq!(fixed_subspace(&g, h, &[0, 0, 0, 0]), Err(Error::InvalidTransversal));
    }

    #[test]
    fn prop_scalars() {
        for (p, q, r, want) in [(5, 2, 3, 8), (3, 2, 4, 8), (3, 2, 3, 2)] {
            let g = group(p, q, r);
            for h in hyperplanes(&g) {
                assert_eq!(verify_scalar_identity(&g, &h).unwrap(), BigInt::from(want));
                let report = verify_cross_terms(&g, &h).unwrap();
                assert_eq!(report.ks, (1..p).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn cross_terms_kill_zero() {
        let g = group(5, 2, 3);
        let h = &hyperplanes(&g)[0];
        let sum_l = GroupRingOperator::sum_of(subgroup_elements(&g, h));
        let zero = vec![BigRational::zero(); g.order()];
        for k in 0..5 {
            let op = sum_l.compose(&GroupRingOperator::element(g.phi_power(k)), &g);
            assert!(op.apply(&g, &zero).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn operator_outside_a_l_is_not_scalar() {
        // the identity fails off A_L: on the group-sum vector it is p q^{n-1}
        let g = group(3, 2, 4);
        let h = &hyperplanes(&g)[0];
        let ones = vec![BigRational::one(); g.order()];
        let image = prop_operator(&g, h).apply(&g, &ones);
        assert!(image.iter().all(|x| *x == BigRational::from_integer(BigInt::from(24))));
    }

    #[test]
    fn convolution_matches_sequential_application() {
        let g = group(3, 2, 4);
        let a = GroupRingOperator::sum_of([1, 5, g.phi_power(1)]);
        let b = GroupRingOperator::sum_of([2, g.phi_power(2) + 3]);
        let z: Vec<BigRational> =
            (0..g.order()).map(|i| BigRational::from_integer(BigInt::from(i as i64 * 7 % 11 - 5))).collect();
        assert_eq!(a.compose(&b, &g).apply(&g, &z), a.apply(&g, &b.apply(&g, &z)));
        assert_eq!(a.compose(&b, &g).terms().values().sum::<BigInt>(), BigInt::from(6));
    }

    #[test]
    fn regular_module_is_a_permutation_action() {
        let g = group(3, 2, 4);
        let m = RegularModule::new(&g);
        assert_eq!(m.dim(), 48);
        for x in 0..g.order() {
            let mut perm = m.permutation(x);
            perm.sort_unstable();
            assert_eq!(perm, (0..48).collect::<Vec<_>>());
        }
        let e0: Vec<BigRational> =
            (0..48).map(|i| if i == 0 { BigRational::one() } else { BigRational::zero() }).collect();
        let moved = m.act(7, &e0);
        assert!(moved[7].is_one());
    }

    #[test]
    fn full_verification_with_every_transversal() {
        for (p, q, r) in [(5, 2, 3), (3, 2, 4), (3, 2, 3)] {
            let g = group(p, q, r);
            let s = verify_all(&g, Transversals::All).unwrap();
            assert_eq!(s.hyperplanes.len(), (g.kernel_order() - 1) / (q as usize - 1));
            for h in &s.hyperplanes {
                assert_eq!(h.a_dim, (p * (q - 1)) as usize);
                assert_eq!(h.transversals_checked, g.kernel_order() - g.kernel_order() / q as usize);
            }
        }
    }
}
