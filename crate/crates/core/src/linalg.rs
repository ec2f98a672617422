//! Exact rank computation over the rationals and over prime fields.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Coefficient field for homology ranks.  Betti numbers can depend on the
/// characteristic; the rationals are the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientField {
    #[default]
    Rationals,
    Prime(u32),
}

impl CoefficientField {
    /// A prime field GF(p) with p < 2^31 (products fit in u64).
    pub fn prime(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::InvalidArgument(format!(
                "prime {} too large, need p < 2^31",
                p
            )));
        }
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{} is not a prime", p)));
        }
        Ok(CoefficientField::Prime(p))
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank of an integer matrix over the chosen field.
pub fn rank(matrix: &[Vec<i64>], field: CoefficientField) -> usize {
    match field {
        CoefficientField::Rationals => rank_rational(matrix),
        CoefficientField::Prime(p) => rank_mod_p(matrix, p as u64),
    }
}

/// Rank over Q by fraction-free (Bareiss) elimination; falls back to big
/// integers if the i128 fast path overflows.
pub fn rank_rational(matrix: &[Vec<i64>]) -> usize {
    match rank_bareiss_i128(matrix) {
        Some(r) => r,
        None => rank_bareiss_bigint(matrix),
    }
}

fn rank_bareiss_i128(matrix: &[Vec<i64>]) -> Option<usize> {
    let rows = matrix.len();
    if rows == 0 {
        return Some(0);
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0usize;
    let mut prev: i128 = 1;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let a = m[rank][col].checked_mul(m[i][j])?;
                let b = m[i][col].checked_mul(m[rank][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn rank_bareiss_bigint(matrix: &[Vec<i64>]) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let zero = BigInt::from(0);
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut rank = 0usize;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| m[i][col] != zero) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = (&m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = zero.clone();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn rank_mod_p(matrix: &[Vec<i64>], p: u64) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<u64>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| m[i][col] % p != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = mod_inverse(m[rank][col], p);
        for j in col..cols {
            m[rank][j] = m[rank][j] * inv % p;
        }
        for i in 0..rows {
            if i != rank && m[i][col] != 0 {
                let factor = m[i][col];
                for j in col..cols {
                    let sub = factor * m[rank][j] % p;
                    m[i][j] = (m[i][j] + p - sub) % p;
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

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p for prime p.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
