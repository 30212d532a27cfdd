//! The prime field F_q, q an odd prime.

use crate::error::{Error, Result};

/// Context for the base field F_q. Elements are residues in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldCtx {
    q: u32,
}

impl FieldCtx {
    /// Builds the context, rejecting 2, composites and anything that does not
    /// fit comfortably in 32 bits.
    pub fn new(q: u64) -> Result<Self> {
        if q < 3 || q.is_multiple_of(2) || q > u64::from(u16::MAX) || !is_prime(q) {
            return Err(Error::InvalidField(q));
        }
        Ok(Self { q: q as u32 })
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q
    }

    /// Reduces an arbitrary signed integer into `0..q`.
    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(i64::from(self.q)) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.q)) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    ///
    /// Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.q), "inverse of zero in F_{}", self.q);
        self.pow(a, u64::from(self.q) - 2)
    }

    /// Quadratic character of F_q: 0, +1 or -1.
    pub fn quadratic_character(self, a: u32) -> i8 {
        let a = a % self.q;
        if a == 0 {
            return 0;
        }
        if self.pow(a, u64::from((self.q - 1) / 2)) == 1 {
            1
        } else {
            -1
        }
    }

    pub fn is_square(self, a: u32) -> bool {
        self.quadratic_character(a) >= 0
    }

    /// Smallest non-square of F_q^×.
    pub fn non_square(self) -> u32 {
        (2..self.q)
            .find(|&a| self.quadratic_character(a) == -1)
            .expect("odd prime field has non-squares")
    }

    /// Smallest generator of the cyclic group F_q^×.
    pub fn primitive_root(self) -> u32 {
        let order = u64::from(self.q - 1);
        let mut primes = Vec::new();
        let mut n = order;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                primes.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        (1..self.q)
            .find(|&g| primes.iter().all(|&r| self.pow(g, order / r) != 1))
            .expect("F_q^× is cyclic")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_and_composite() {
        assert!(FieldCtx::new(2).is_err());
        assert!(FieldCtx::new(9).is_err());
        assert!(FieldCtx::new(15).is_err());
        assert!(FieldCtx::new(1).is_err());
        assert_eq!(FieldCtx::new(7).unwrap().q(), 7);
    }

    #[test]
    fn quadratic_character_mod_3_and_5() {
        let f3 = FieldCtx::new(3).unwrap();
        assert_eq!(f3.quadratic_character(1), 1);
        assert_eq!(f3.quadratic_character(2), -1);
        let f5 = FieldCtx::new(5).unwrap();
        let squares: Vec<u32> = (1..5).filter(|&a| f5.is_square(a)).collect();
        assert_eq!(squares, vec![1, 4]);
        assert_eq!(f5.non_square(), 2);
        assert_eq!(f5.primitive_root(), 2);
    }

    #[test]
    fn inverses() {
        let f = FieldCtx::new(11).unwrap();
        for a in 1..11 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
