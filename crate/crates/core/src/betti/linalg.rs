//! Field specification and exact rank computation.
//!
//! Boundary matrices arrive as sparse `(row, col, sign)` triplets with
//! entries in `{+1, -1}`. Ranks are computed by dense Gaussian elimination,
//! either modulo a prime or over exact rationals.

use num::rational::BigRational;
use num::{BigInt, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime characteristic must fit in 31 bits, got {0}")]
    TooLarge(u64),
}

/// Coefficient field: exact rationals (characteristic 0) or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    /// `0` selects the rationals; any other value must be prime.
    pub fn from_characteristic(c: u64) -> Result<Self, FieldError> {
        if c == 0 {
            return Ok(FieldSpec::Rationals);
        }
        if c > (1 << 31) {
            return Err(FieldError::TooLarge(c));
        }
        if !is_prime(c) {
            return Err(FieldError::NotPrime(c));
        }
        Ok(FieldSpec::Prime(c as u32))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => u64::from(*p),
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(32003)
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A signed unit entry of a boundary matrix.
#[derive(Debug, Clone, Copy)]
pub struct Entry {
    pub row: u32,
    pub col: u32,
    pub sign: i8,
}

pub fn rank(rows: usize, cols: usize, entries: &[Entry], field: FieldSpec) -> usize {
    if rows == 0 || cols == 0 || entries.is_empty() {
        return 0;
    }
    match field {
        FieldSpec::Prime(p) => rank_mod_p(rows, cols, entries, u64::from(p)),
        FieldSpec::Rationals => rank_rational(rows, cols, entries),
    }
}

fn rank_mod_p(rows: usize, cols: usize, entries: &[Entry], p: u64) -> usize {
    let mut m = vec![0u64; rows * cols];
    for e in entries {
        let v = if e.sign >= 0 { 1 } else { p - 1 };
        m[e.row as usize * cols + e.col as usize] = v;
    }
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| m[r * cols + col] != 0);
        let Some(pivot) = pivot else { continue };
        m.swap_chunks(pivot, rank, cols);
        let inv = mod_inverse(m[rank * cols + col], p);
        for c in col..cols {
            m[rank * cols + c] = m[rank * cols + c] * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r * cols + col] != 0 {
                let factor = m[r * cols + col];
                for c in col..cols {
                    let sub = factor * m[rank * cols + c] % p;
                    m[r * cols + c] = (m[r * cols + c] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl SwapChunks for Vec<u64> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (left, right) = self.split_at_mut(hi * width);
        left[lo * width..(lo + 1) * width].swap_with_slice(&mut right[..width]);
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn rank_rational(rows: usize, cols: usize, entries: &[Entry]) -> usize {
    let zero = BigRational::zero();
    let mut m = vec![vec![zero.clone(); cols]; rows];
    for e in entries {
        m[e.row as usize][e.col as usize] = BigRational::from(BigInt::from(e.sign));
    }
    let mut rank = 0usize;
    for col in 0..cols {
        // Prefer a unit pivot to limit coefficient growth.
        let pivot = (rank..rows)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| {
                let v = &m[r][col];
                (v.numer().abs() != BigInt::from(1) || v.denom() != &BigInt::from(1)) as u8
            });
        let Some(pivot) = pivot else { continue };
        m.swap(pivot, rank);
        let inv = m[rank][col].recip();
        for c in col..cols {
            let v = std::mem::replace(&mut m[rank][c], zero.clone());
            m[rank][c] = v * inv.clone();
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let delta = factor.clone() * m[rank][c].clone();
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(row: u32, col: u32, sign: i8) -> Entry {
        Entry { row, col, sign }
    }

    #[test]
    fn field_validation() {
        assert_eq!(
            FieldSpec::from_characteristic(0).unwrap(),
            FieldSpec::Rationals
        );
        assert_eq!(
            FieldSpec::from_characteristic(32003).unwrap(),
            FieldSpec::Prime(32003)
        );
        assert!(matches!(
            FieldSpec::from_characteristic(32004),
            Err(FieldError::NotPrime(_))
        ));
    }

    #[test]
    fn rank_simple() {
        // [[1, -1], [-1, 1]] has rank 1 in any characteristic.
        let entries = [e(0, 0, 1), e(0, 1, -1), e(1, 0, -1), e(1, 1, 1)];
        for field in [FieldSpec::Prime(2), FieldSpec::Prime(32003), FieldSpec::Rationals] {
            assert_eq!(rank(2, 2, &entries, field), 1, "{field}");
        }
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1, 1], [1, -1]] has determinant -2: rank 2 except in char 2.
        let entries = [e(0, 0, 1), e(0, 1, 1), e(1, 0, 1), e(1, 1, -1)];
        assert_eq!(rank(2, 2, &entries, FieldSpec::Prime(2)), 1);
        assert_eq!(rank(2, 2, &entries, FieldSpec::Prime(32003)), 2);
        assert_eq!(rank(2, 2, &entries, FieldSpec::Rationals), 2);
    }

    #[test]
    fn rank_of_empty_is_zero() {
        assert_eq!(rank(0, 0, &[], FieldSpec::default()), 0);
        assert_eq!(rank(3, 2, &[], FieldSpec::default()), 0);
    }
}
