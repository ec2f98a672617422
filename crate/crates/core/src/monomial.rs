use std::cmp::Ordering;
use std::fmt;

use crate::ring::Ring;

/// A monomial x^a, stored as a dense exponent vector over its ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    ring: Ring,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(ring: &Ring, exps: Vec<u32>) -> Self {
        assert_eq!(
            exps.len(),
            ring.total_vars(),
            "exponent vector length must match the ring"
        );
        Monomial {
            ring: ring.clone(),
            exps,
        }
    }

    /// The monomial 1.
    pub fn one(ring: &Ring) -> Self {
        Monomial::new(ring, vec![0; ring.total_vars()])
    }

    /// The variable with flat index `var`.
    pub fn variable(ring: &Ring, var: usize) -> Self {
        let mut exps = vec![0; ring.total_vars()];
        exps[var] = 1;
        Monomial::new(ring, exps)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.ring, other.ring);
        Monomial {
            ring: self.ring.clone(),
            exps: mul_exps(&self.exps, &other.exps),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            ring: self.ring.clone(),
            exps: self
                .exps
                .iter()
                .map(|&e| e.checked_mul(k).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.ring, other.ring);
        divides(&self.exps, &other.exps)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            ring: self.ring.clone(),
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| b - a)
                .collect(),
        })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.ring, other.ring);
        Monomial {
            ring: self.ring.clone(),
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.ring, other.ring);
        Monomial {
            ring: self.ring.clone(),
            exps: lcm_exps(&self.exps, &other.exps),
        }
    }

    /// Lexicographic comparison with x_{11} > x_{12} > ... > x_{21} > ...
    /// (the earlier variable with the larger exponent wins).
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        lex_cmp(&self.exps, &other.exps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.ring.var_name(i))?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// Raw exponent-vector helpers used by the hot loops.

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x <= y)
}

pub(crate) fn lcm_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

pub(crate) fn mul_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_add(y).expect("exponent overflow"))
        .collect()
}

pub(crate) fn degree(a: &[u32]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}

pub(crate) fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ring: &Ring, exps: &[u32]) -> Monomial {
        Monomial::new(ring, exps.to_vec())
    }

    #[test]
    fn arithmetic() {
        let r = Ring::plain(3);
        let a = m(&r, &[1, 2, 0]);
        let b = m(&r, &[0, 1, 1]);
        assert_eq!(a.mul(&b).exponents(), &[1, 3, 1]);
        assert_eq!(a.lcm(&b).exponents(), &[1, 2, 1]);
        assert_eq!(a.gcd(&b).exponents(), &[0, 1, 0]);
        assert_eq!(a.degree(), 3);
        assert!(m(&r, &[1, 1, 0]).divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(b.quotient_of(&a), None);
        assert_eq!(
            m(&r, &[1, 1, 0]).quotient_of(&a).unwrap().exponents(),
            &[0, 1, 0]
        );
    }

    #[test]
    fn lex_order_prefers_earlier_variables() {
        let r = Ring::plain(2);
        let x1x2 = m(&r, &[1, 1]);
        let x2sq = m(&r, &[0, 2]);
        assert_eq!(x1x2.lex_cmp(&x2sq), Ordering::Greater);
        assert_eq!(x2sq.lex_cmp(&x1x2), Ordering::Less);
    }

    #[test]
    fn display_blocked() {
        let r = Ring::new(vec![2, 2]);
        let u = m(&r, &[2, 1, 0, 2]);
        assert_eq!(u.to_string(), "x11^2*x12*x22^2");
        assert_eq!(Monomial::one(&r).to_string(), "1");
    }
}
