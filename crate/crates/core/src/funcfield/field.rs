use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime constant field `F_p`, `p >= 5`.
///
/// Elements are plain `u64` residues in `0..p`. The modulus is kept below
/// `2^31` so products of two residues fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstantField {
    p: u64,
}

const MAX_MODULUS: u64 = 1 << 31;

impl ConstantField {
    pub fn new(p: u64) -> Result<Self> {
        if !(5..MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(p));
        }
        Ok(ConstantField { p })
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
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

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn is_square(&self, a: u64) -> bool {
        a == 0 || self.pow(a, (self.p - 1) / 2) == 1
    }

    /// Square root by Tonelli-Shanks, `None` for non-residues.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r.min(p - r))
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
    fn rejects_small_and_composite_characteristics() {
        for p in [0, 1, 2, 3, 4, 9, 25] {
            assert!(ConstantField::new(p).is_err(), "p = {p}");
        }
        assert!(ConstantField::new(5).is_ok());
        assert!(ConstantField::new(7).is_ok());
    }

    #[test]
    fn inverse_and_sqrt() {
        let f = ConstantField::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            if let Some(r) = f.sqrt(a) {
                assert_eq!(f.mul(r, r), a);
            } else {
                assert!(!f.is_square(a));
            }
        }
        let f5 = ConstantField::new(5).unwrap();
        assert_eq!(f5.sqrt(4), Some(2));
        assert_eq!(f5.sqrt(2), None);
    }
}
