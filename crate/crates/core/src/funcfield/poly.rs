use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::ConstantField;

/// Dense univariate polynomial over a prime field.
///
/// Coefficients are stored lowest degree first with no trailing zeros, so
/// the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: ConstantField,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn from_coeffs(field: ConstantField, mut coeffs: Vec<u64>) -> Self {
        let p = field.characteristic();
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: ConstantField, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.reduce_i64(c)).collect())
    }

    pub fn zero(field: ConstantField) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: ConstantField) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: ConstantField, c: u64) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// The monomial `c * x^n`.
    pub fn monomial(field: ConstantField, c: u64, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Self::from_coeffs(field, v)
    }

    pub fn x(field: ConstantField) -> Self {
        Self::monomial(field, 1, 1)
    }

    #[inline]
    pub fn field(&self) -> ConstantField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`; handy in valuation code.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading_coeff());
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; n];
        v.extend_from_slice(&self.coeffs);
        Poly { field: self.field, coeffs: v }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let p = f.characteristic();
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, i as u64 % p))
            .collect();
        Poly::from_coeffs(f, v)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut r = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        r
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.field;
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let dl = d.coeffs.len();
        let inv = f.inv(d.leading_coeff());
        let mut r = self.coeffs.clone();
        let mut q = vec![0; r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dl - 1], inv);
            q[i] = c;
            if c != 0 {
                for j in 0..dl {
                    r[i + j] = f.sub(r[i + j], f.mul(c, d.coeffs[j]));
                }
            }
        }
        r.truncate(dl - 1);
        (Poly::from_coeffs(f, q), Poly::from_coeffs(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics in debug builds when the remainder is nonzero.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.leading_coeff());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        if g.is_one() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut r = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        r
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(self.field, c);
        }
        acc
    }

    /// Multiplicity of the irreducible `q` in `self` together with the cofactor.
    pub fn split_power(&self, q: &Poly) -> (u32, Poly) {
        let mut n = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return (0, cur);
        }
        loop {
            let (quo, r) = cur.div_rem(q);
            if !r.is_zero() {
                return (n, cur);
            }
            cur = quo;
            n += 1;
        }
    }

    /// Square root of a perfect square, `None` otherwise.
    pub fn sqrt(&self) -> Option<Poly> {
        let f = self.field;
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.degree().unwrap();
        if n % 2 == 1 {
            return None;
        }
        let lead_root = f.sqrt(self.leading_coeff())?;
        let m = n / 2;
        // Determine the root top-down: coefficient r_{m-k} from the x^{n-k} term.
        let mut r = vec![0u64; m + 1];
        r[m] = lead_root;
        let inv2l = f.inv(f.mul(2, lead_root));
        for k in 1..=m {
            let mut acc = self.coeff(n - k);
            for i in 1..k {
                acc = f.sub(acc, f.mul(r[m - i], r[m - (k - i)]));
            }
            r[m - k] = f.mul(acc, inv2l);
        }
        let root = Poly::from_coeffs(f, r);
        if &(&root * &root) == self {
            Some(root)
        } else {
            None
        }
    }

    /// Render with the given variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                c.to_string()
            } else if c == 1 {
                mono
            } else {
                format!("{c}*{mono}")
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F_{}]({})", self.field.characteristic(), self.display_with("x"))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(f, v)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(f, v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let p = f.characteristic();
        let mut v = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + a * b) % p;
            }
        }
        Poly::from_coeffs(f, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> ConstantField {
        ConstantField::new(5).unwrap()
    }

    #[test]
    fn division_identity() {
        let f = f5();
        let a = Poly::from_i64(f, &[1, 2, 3, 4, 1]);
        let b = Poly::from_i64(f, &[3, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg_i64() < b.deg_i64());
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = f5();
        let a = Poly::from_i64(f, &[-1, 0, 1]);
        let b = Poly::from_i64(f, &[-1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, Poly::from_i64(f, &[-1, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn sqrt_of_square() {
        let f = ConstantField::new(7).unwrap();
        let a = Poly::from_i64(f, &[3, 1, 0, 2]);
        let sq = &a * &a;
        let r = sq.sqrt().unwrap();
        assert!(r == a || r == -&a);
        assert!(Poly::from_i64(f, &[1, 0, 3]).sqrt().is_none());
    }

    #[test]
    fn display() {
        let f = f5();
        assert_eq!(Poly::from_i64(f, &[1, 0, 1]).display_with("t"), "t^2 + 1");
        assert_eq!(Poly::from_i64(f, &[-2, 3]).display_with("s"), "3*s + 3");
    }
}
