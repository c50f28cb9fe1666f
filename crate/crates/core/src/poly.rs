//! Univariate polynomials over `F_q`, coefficients stored lowest degree first.

use std::fmt;

use crate::fq::{inv_mod, FqMatrix};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqPoly {
    modulus: u32,
    coeffs: Vec<u32>,
}

impl FqPoly {
    pub fn new(coeffs: Vec<u32>, modulus: u32) -> Self {
        let mut p = Self { modulus, coeffs: coeffs.into_iter().map(|c| c % modulus).collect() };
        p.trim();
        p
    }

    pub fn zero(modulus: u32) -> Self {
        Self { modulus, coeffs: Vec::new() }
    }

    pub fn one(modulus: u32) -> Self {
        Self::new(vec![1], modulus)
    }

    /// `1 + x + ... + x^(p-1)`.
    pub fn cyclotomic_prime(p: u32, modulus: u32) -> Self {
        Self::new(vec![1; p as usize], modulus)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "polynomial modulus mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        let q = self.modulus as u64;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % q;
            }
        }
        Self::new(out.into_iter().map(|x| x as u32).collect(), self.modulus)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert_eq!(self.modulus, divisor.modulus, "polynomial modulus mismatch");
        let dd = divisor.degree().expect("division by zero polynomial");
        let q = self.modulus as u64;
        let lead_inv = inv_mod(divisor.coeffs[dd], self.modulus) as u64;
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        let Some(nd) = self.degree().filter(|&d| d >= dd) else {
            return (Self::zero(self.modulus), self.clone());
        };
        let mut quot = vec![0u64; nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let c = rem[shift + dd] * lead_inv % q;
            quot[shift] = c;
            if c == 0 {
                continue;
            }
            for (k, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] = (rem[shift + k] + (q - c) * d as u64) % q;
            }
        }
        rem.truncate(dd);
        (
            Self::new(quot.into_iter().map(|x| x as u32).collect(), self.modulus),
            Self::new(rem.into_iter().map(|x| x as u32).collect(), self.modulus),
        )
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &FqMatrix) -> FqMatrix {
        assert_eq!(self.modulus, m.modulus(), "polynomial modulus mismatch");
        let n = m.rows();
        let mut acc = FqMatrix::zeros(n, n, self.modulus);
        let id = FqMatrix::identity(n, self.modulus);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m).expect("square").add(&id.scale(c)).expect("same shape");
        }
        acc
    }

    /// Monic polynomials of exactly `degree`, in lexicographic order of their
    /// lower coefficients (constant term varies slowest).
    pub fn monic_of_degree(degree: usize, modulus: u32) -> impl Iterator<Item = Self> {
        let count = (modulus as u64).pow(degree as u32);
        (0..count).map(move |code| {
            let mut coeffs = crate::fq::decode(code, degree, modulus);
            coeffs.push(1);
            Self::new(coeffs, modulus)
        })
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}
