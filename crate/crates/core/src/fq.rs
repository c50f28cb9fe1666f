//! Dense linear algebra over a prime field `F_q`.
//!
//! Vectors are plain residue slices; matrices and subspaces carry their modulus
//! and every binary operation checks it. A [`Subspace`] is stored as the unique
//! reduced row-echelon basis of its row space, so two subspaces are equal
//! exactly when their bases are equal.

use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `base^exp mod modulus`.
pub fn pow_mod(base: u32, mut exp: u64, modulus: u32) -> u32 {
    let m = modulus as u64;
    let mut b = base as u64 % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

/// Multiplicative inverse of a nonzero residue, via `a^(q-2)`.
pub fn inv_mod(a: u32, q: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(q), "inverse of zero");
    pow_mod(a, q as u64 - 2, q)
}

/// A residue together with its prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u32,
    modulus: u32,
}

impl FieldScalar {
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::InvalidParameters(format!("modulus {modulus} is not prime")));
        }
        Ok(Self { value: value.rem_euclid(modulus as i64) as u32, modulus })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    fn check(self, other: Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        Ok(())
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { value: (self.value + other.value) % self.modulus, modulus: self.modulus })
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { value: (self.value + self.modulus - other.value) % self.modulus, modulus: self.modulus })
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        self.check(other)?;
        let v = self.value as u64 * other.value as u64 % self.modulus as u64;
        Ok(Self { value: v as u32, modulus: self.modulus })
    }

    /// `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| Self { value: inv_mod(self.value, self.modulus), modulus: self.modulus })
    }
}

/// Row-major dense matrix over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    modulus: u32,
    data: Vec<u32>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix {}x{} over F_{}", self.rows, self.cols, self.modulus)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u32) -> Self {
        Self { rows, cols, modulus, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, modulus: u32) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        m
    }

    /// Entries are reduced mod `modulus`; panics if `data.len() != rows * cols`.
    pub fn from_data(rows: usize, cols: usize, modulus: u32, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        let m = modulus as i64;
        Self { rows, cols, modulus, data: data.into_iter().map(|x| x.rem_euclid(m) as u32).collect() }
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize, modulus: u32) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend(r.iter().map(|&x| x % modulus));
        }
        Self { rows: rows.len(), cols, modulus, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        self.data[r * self.cols + c] = value % self.modulus;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows, self.modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_modulus(self.modulus, other.modulus)?;
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch { expected: self.cols, found: other.rows });
        }
        let q = self.modulus as u64;
        let mut out = Self::zeros(self.rows, other.cols, self.modulus);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % q) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_modulus(self.modulus, other.modulus)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::AmbientMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let q = self.modulus;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % q).collect();
        Ok(Self { data, ..*self })
    }

    pub fn scale(&self, c: u32) -> Self {
        let q = self.modulus as u64;
        let data = self.data.iter().map(|&a| (a as u64 * c as u64 % q) as u32).collect();
        Self { data, ..*self }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        assert_eq!(self.rows, self.cols, "pow of non-square matrix");
        let mut acc = Self::identity(self.rows, self.modulus);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("square");
            }
            base = base.mul(&base).expect("square");
            exp >>= 1;
        }
        acc
    }

    /// Column vector product `M x`.
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols, "vector length");
        let q = self.modulus as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(x).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % q) as u32
            })
            .collect()
    }

    /// Row vector product `x M`.
    pub fn apply_left(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.rows, "vector length");
        let q = self.modulus as u64;
        let mut acc = vec![0u64; self.cols];
        for (r, &xr) in x.iter().enumerate() {
            if xr == 0 {
                continue;
            }
            for (c, a) in acc.iter_mut().enumerate() {
                *a += xr as u64 * self.get(r, c) as u64;
            }
        }
        acc.into_iter().map(|a| (a % q) as u32).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.modulus);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        check_modulus(self.modulus, other.modulus)?;
        if self.cols != other.cols {
            return Err(Error::AmbientMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, modulus: self.modulus, data })
    }

    /// Block-diagonal sum of square blocks.
    pub fn block_diagonal(blocks: &[FqMatrix]) -> Self {
        let modulus = blocks.first().map_or(2, |b| b.modulus);
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(n, n, modulus);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.data[(off + r) * n + off + c] = b.get(r, c);
                }
            }
            off += b.rows;
        }
        out
    }
}

fn check_modulus(a: u32, b: u32) -> Result<()> {
    if a != b {
        return Err(Error::ModulusMismatch { left: a, right: b });
    }
    Ok(())
}

/// Reduced row-echelon form with zero rows kept at the bottom, plus rank.
pub fn rref(m: &FqMatrix) -> (FqMatrix, usize) {
    let mut out = m.clone();
    let rank = rref_in_place(&mut out);
    (out, rank)
}

fn rref_in_place(m: &mut FqMatrix) -> usize {
    let (rows, cols, q) = (m.rows, m.cols, m.modulus as u64);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(sel) = (pivot_row..rows).find(|&r| m.data[r * cols + col] != 0) else {
            continue;
        };
        if sel != pivot_row {
            for c in 0..cols {
                m.data.swap(sel * cols + c, pivot_row * cols + c);
            }
        }
        let inv = inv_mod(m.data[pivot_row * cols + col], m.modulus) as u64;
        for c in col..cols {
            let idx = pivot_row * cols + c;
            m.data[idx] = (m.data[idx] as u64 * inv % q) as u32;
        }
        for r in 0..rows {
            if r == pivot_row {
                continue;
            }
            let factor = m.data[r * cols + col] as u64;
            if factor == 0 {
                continue;
            }
            let neg = q - factor;
            for c in col..cols {
                let p = m.data[pivot_row * cols + c] as u64;
                if p != 0 {
                    let idx = r * cols + c;
                    m.data[idx] = ((m.data[idx] as u64 + neg * p) % q) as u32;
                }
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

pub fn rank(m: &FqMatrix) -> usize {
    rref(m).1
}

/// Null space `{x : m x = 0}` as a canonical subspace of `F_q^cols`.
pub fn kernel(m: &FqMatrix) -> Subspace {
    let (r, rank) = rref(m);
    let cols = m.cols;
    let q = m.modulus;
    let mut pivots = Vec::with_capacity(rank);
    for i in 0..rank {
        let lead = r.row(i).iter().position(|&x| x != 0).expect("nonzero pivot row");
        pivots.push(lead);
    }
    let mut basis = Vec::with_capacity(cols - rank);
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; cols];
        v[free] = 1 % q;
        for (i, &pc) in pivots.iter().enumerate() {
            let a = r.get(i, free);
            v[pc] = (q - a) % q;
        }
        basis.push(v);
    }
    Subspace::span(&basis, cols, q)
}

/// Subgroup of `F_q^n`, identified by its canonical reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    modulus: u32,
    basis: Vec<Vec<u32>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in F_{}^{}: {:?})", self.dim(), self.modulus, self.ambient_dim, self.basis)
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize, modulus: u32) -> Self {
        Self { ambient_dim, modulus, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize, modulus: u32) -> Self {
        let basis = FqMatrix::identity(ambient_dim, modulus).row_vecs();
        Self { ambient_dim, modulus, basis }
    }

    /// Span of arbitrary vectors (entries reduced mod `modulus`).
    pub fn span(vectors: &[Vec<u32>], ambient_dim: usize, modulus: u32) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim, modulus);
        }
        Self::from_matrix(&FqMatrix::from_rows(vectors, ambient_dim, modulus))
    }

    pub fn from_matrix(m: &FqMatrix) -> Self {
        let (r, rank) = rref(m);
        let basis = (0..rank).map(|i| r.row(i).to_vec()).collect();
        Self { ambient_dim: m.cols, modulus: m.modulus, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> FqMatrix {
        FqMatrix::from_rows(&self.basis, self.ambient_dim, self.modulus)
    }

    /// Number of elements, `q^dim`.
    pub fn order(&self) -> num_bigint::BigUint {
        num_bigint::BigUint::from(self.modulus).pow(self.dim() as u32)
    }

    fn check(&self, other: &Self) -> Result<()> {
        check_modulus(self.modulus, other.modulus)?;
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        Ok(())
    }

    /// Annihilator `{w : w . v = 0 for all v}`.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Self::full(self.ambient_dim, self.modulus);
        }
        kernel(&self.basis_matrix())
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::AmbientMismatch { expected: self.ambient_dim, found: v.len() });
        }
        let q = self.modulus as u64;
        // reduce against the echelon basis
        let mut w: Vec<u64> = v.iter().map(|&x| (x % self.modulus) as u64).collect();
        for row in &self.basis {
            let lead = row.iter().position(|&x| x != 0).expect("nonzero basis row");
            let c = w[lead];
            if c != 0 {
                for (wi, &ri) in w.iter_mut().zip(row) {
                    *wi = (*wi + (q - c) * ri as u64) % q;
                }
            }
        }
        Ok(w.iter().all(|&x| x == 0))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        let stacked: Vec<Vec<u32>> = a.basis.iter().chain(&b.basis).cloned().collect();
        if stacked.is_empty() {
            return Ok(Self::full(self.ambient_dim, self.modulus));
        }
        Ok(kernel(&FqMatrix::from_rows(&stacked, self.ambient_dim, self.modulus)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let all: Vec<Vec<u32>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::span(&all, self.ambient_dim, self.modulus))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image under the linear map `x -> M x`.
    pub fn image(&self, m: &FqMatrix) -> Result<Self> {
        check_modulus(self.modulus, m.modulus())?;
        if m.cols() != self.ambient_dim {
            return Err(Error::AmbientMismatch { expected: self.ambient_dim, found: m.cols() });
        }
        let imgs: Vec<Vec<u32>> = self.basis.iter().map(|v| m.apply(v)).collect();
        Ok(Self::span(&imgs, m.rows(), self.modulus))
    }

    /// `M V = V` for square `M`.
    pub fn is_invariant_under(&self, m: &FqMatrix) -> Result<bool> {
        for v in &self.basis {
            if !self.contains(&m.apply(v))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All `q^dim` members, in no particular order.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let q = self.modulus;
        let mut out = vec![vec![0u32; self.ambient_dim]];
        for b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * q as usize);
            for v in &out {
                for c in 0..q {
                    next.push(v.iter().zip(b).map(|(&x, &y)| (x + c * y) % q).collect());
                }
            }
            out = next;
        }
        out
    }
}

/// Encode a vector as a base-`q` integer with the first coordinate most
/// significant, so integer order equals lexicographic order.
pub fn encode(v: &[u32], q: u32) -> u64 {
    v.iter().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

pub fn decode(mut code: u64, n: usize, q: u32) -> Vec<u32> {
    let mut v = vec![0u32; n];
    for slot in v.iter_mut().rev() {
        *slot = (code % q as u64) as u32;
        code /= q as u64;
    }
    v
}

/// Scale so the first nonzero entry is 1. Zero vectors are returned unchanged.
pub fn normalize(v: &[u32], q: u32) -> Vec<u32> {
    match v.iter().find(|&&x| x != 0) {
        None => v.to_vec(),
        Some(&lead) => {
            let inv = inv_mod(lead, q) as u64;
            v.iter().map(|&x| (x as u64 * inv % q as u64) as u32).collect()
        }
    }
}

pub fn is_normalized(v: &[u32]) -> bool {
    v.iter().find(|&&x| x != 0) == Some(&1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: usize, cols: usize, q: u32, data: &[i64]) -> FqMatrix {
        FqMatrix::from_data(rows, cols, q, data.to_vec())
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = FqMatrix::identity(3, 2);
        assert_eq!(rref(&id), (id.clone(), 3));
        let z = FqMatrix::zeros(2, 4, 3);
        assert_eq!(rref(&z), (z.clone(), 0));
        let empty = FqMatrix::zeros(0, 3, 5);
        assert_eq!(rref(&empty).1, 0);
    }

    #[test]
    fn rref_dependent_rows_over_f2() {
        let a = m(3, 3, 2, &[1, 1, 0, 0, 1, 1, 1, 0, 1]);
        let (r, rank) = rref(&a);
        assert_eq!(rank, 2);
        assert_eq!(r, m(3, 3, 2, &[1, 0, 1, 0, 1, 1, 0, 0, 0]));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&FqMatrix::zeros(1, 4, 2));
        assert_eq!(k, Subspace::full(4, 2));

        let k = kernel(&m(1, 4, 2, &[1, 0, 0, 0]));
        assert_eq!(k.dim(), 3);
        assert_eq!(k, Subspace::span(&[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]], 4, 2));

        let k = kernel(&m(1, 4, 3, &[1, 1, 1, 1]));
        assert_eq!(k.dim(), 3);
        for b in k.basis() {
            assert_eq!(b.iter().sum::<u32>() % 3, 0);
        }
    }

    #[test]
    fn intersect_examples() {
        let a = kernel(&m(1, 4, 2, &[1, 0, 0, 0]));
        assert_eq!(a.intersect(&a).unwrap(), a);
        let b = kernel(&m(1, 4, 2, &[0, 1, 0, 0]));
        assert_eq!(a.intersect(&b).unwrap().dim(), 2);
        let c = Subspace::zero(3, 2);
        assert!(matches!(a.intersect(&c), Err(Error::AmbientMismatch { .. })));
        let d = Subspace::zero(4, 3);
        assert!(matches!(a.intersect(&d), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn contains_examples() {
        let s = Subspace::span(&[vec![1, 0, 1, 0]], 4, 2);
        assert!(s.contains(&[0, 0, 0, 0]).unwrap());
        assert!(!s.contains(&[1, 0, 1, 1]).unwrap());
        assert!(s.contains(&[1, 0, 1, 0]).unwrap());
        assert!(Subspace::full(4, 2).contains(&[1, 0, 1, 1]).unwrap());
        assert!(s.contains(&[1, 0]).is_err());
    }

    #[test]
    fn scalar_ops_check_modulus() {
        let a = FieldScalar::new(2, 3).unwrap();
        let b = FieldScalar::new(-1, 3).unwrap();
        assert_eq!(b.value(), 2);
        assert_eq!(a.checked_mul(b).unwrap().value(), 1);
        assert_eq!(a.checked_add(b).unwrap().value(), 1);
        assert_eq!(a.checked_sub(b).unwrap().value(), 0);
        assert_eq!(a.inverse().unwrap().value(), 2);
        assert!(FieldScalar::new(0, 3).unwrap().inverse().is_none());
        assert!(a.checked_add(FieldScalar::new(1, 5).unwrap()).is_err());
        assert!(FieldScalar::new(1, 4).is_err());
    }

    /// Brute-force closure of a set of generators under addition and scaling.
    fn member_set(gens: &[Vec<u32>], n: usize, q: u32) -> std::collections::BTreeSet<Vec<u32>> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(vec![0u32; n]);
        for g in gens {
            let cur: Vec<Vec<u32>> = set.iter().cloned().collect();
            for v in cur {
                for c in 1..q {
                    set.insert(v.iter().zip(g).map(|(&a, &b)| (a + c * b) % q).collect());
                }
            }
        }
        set
    }

    #[test]
    fn intersection_matches_membership_exhaustively() {
        // small random-ish families, exhaustive vector check
        for &(n, q) in &[(4usize, 2u32), (5, 2), (6, 2), (3, 3), (4, 3)] {
            let total = (q as u64).pow(n as u32);
            let vecs: Vec<Vec<u32>> = (0..total).map(|c| decode(c, n, q)).collect();
            let step = (total / 7).max(1) as usize;
            for i in (1..vecs.len()).step_by(step) {
                for j in (1..vecs.len()).step_by(step + 1) {
                    let a = Subspace::span(&[vecs[i].clone(), vecs[(i * 3) % vecs.len()].clone()], n, q);
                    let b = Subspace::span(&[vecs[j].clone(), vecs[(j * 5 + 1) % vecs.len()].clone()], n, q);
                    let ab = a.intersect(&b).unwrap();
                    let sa = member_set(a.basis(), n, q);
                    let sb = member_set(b.basis(), n, q);
                    for v in &vecs {
                        let both = sa.contains(v) && sb.contains(v);
                        assert_eq!(ab.contains(v).unwrap(), both, "{a:?} {b:?} {v:?}");
                    }
                    assert!(ab.dim() + n >= a.dim() + b.dim());
                }
            }
        }
    }

    #[test]
    fn distinct_hyperplanes_meet_in_codim_two_with_shared_transversal() {
        for &(n, q) in &[(2usize, 2u32), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3)] {
            let total = (q as u64).pow(n as u32);
            let normals: Vec<Vec<u32>> = (1..total).map(|c| decode(c, n, q)).filter(|v| is_normalized(v)).collect();
            let all: Vec<Vec<u32>> = (0..total).map(|c| decode(c, n, q)).collect();
            for (i, a) in normals.iter().enumerate() {
                let l1 = kernel(&FqMatrix::from_rows(std::slice::from_ref(a), n, q));
                for b in &normals[i + 1..] {
                    let l2 = kernel(&FqMatrix::from_rows(std::slice::from_ref(b), n, q));
                    let meet = l1.intersect(&l2).unwrap();
                    assert_eq!(meet.dim(), n - 2);
                    // any n2 in L2 \ L1 generates a transversal of L1 in F_q^n and of meet in L2
                    let n2 = all.iter().find(|v| l2.contains(v).unwrap() && !l1.contains(v).unwrap()).unwrap();
                    let reps: Vec<Vec<u32>> = (0..q).map(|j| n2.iter().map(|&x| x * j % q).collect()).collect();
                    for (x, rx) in reps.iter().enumerate() {
                        for ry in &reps[x + 1..] {
                            let diff: Vec<u32> = rx.iter().zip(ry).map(|(&u, &w)| (u + q - w) % q).collect();
                            assert!(!l1.contains(&diff).unwrap());
                            assert!(!meet.contains(&diff).unwrap());
                        }
                        assert!(l2.contains(rx).unwrap());
                    }
                }
            }
        }
    }

    fn arb_matrix() -> impl Strategy<Value = FqMatrix> {
        (prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], 0usize..6, 1usize..7).prop_flat_map(|(q, r, c)| {
            proptest::collection::vec(0i64..q as i64, r * c).prop_map(move |d| FqMatrix::from_data(r, c, q, d))
        })
    }

    proptest! {
        #[test]
        fn kernel_plus_rank_is_cols(a in arb_matrix()) {
            let k = kernel(&a);
            prop_assert_eq!(k.dim() + rank(&a), a.cols());
            for v in k.basis() {
                prop_assert!(a.apply(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rref_is_invariant_under_row_operations(a in arb_matrix(), seed in any::<u64>()) {
            // random invertible row operations: swaps, scalings, and additions
            let mut b = a.clone();
            let q = a.modulus();
            let mut s = seed;
            for _ in 0..8 {
                if b.rows() < 1 { break; }
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let i = (s >> 33) as usize % b.rows();
                let j = (s >> 13) as usize % b.rows();
                let c = 1 + (s >> 50) as u32 % (q - 1);
                match (s >> 5) % 3 {
                    0 => for col in 0..b.cols() { let (x, y) = (b.get(i, col), b.get(j, col)); b.set(i, col, y); b.set(j, col, x); },
                    1 => for col in 0..b.cols() { let x = b.get(i, col); b.set(i, col, x * c); },
                    _ => if i != j { for col in 0..b.cols() { let x = b.get(i, col) + c * b.get(j, col); b.set(i, col, x); } },
                }
            }
            prop_assert_eq!(rref(&a), rref(&b));
        }
    }
}
