use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::field::ConstantField;
use super::poly::Poly;
use crate::error::{Error, Result};

/// An element `num/den` of `F_p(t)` in canonical form: `den` monic and
/// coprime to `num`. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Build from an arbitrary pair, reducing to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let field = num.field();
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one(field) };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = d.leading_coeff();
        if lc != 1 {
            let inv = field.inv(lc);
            n = n.scale(inv);
            d = d.scale(inv);
        }
        RationalFunction { num: n, den: d }
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field();
        RationalFunction { num: p, den: Poly::one(field) }
    }

    pub fn zero(field: ConstantField) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: ConstantField) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn constant(field: ConstantField, c: u64) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn from_i64(field: ConstantField, c: i64) -> Self {
        Self::constant(field, field.reduce_i64(c))
    }

    /// The generator of the function field.
    pub fn var(field: ConstantField) -> Self {
        Self::from_poly(Poly::x(field))
    }

    #[inline]
    pub fn field(&self) -> ConstantField {
        self.num.field()
    }

    #[inline]
    pub fn numer(&self) -> &Poly {
        &self.num
    }

    #[inline]
    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, if this function is constant.
    pub fn as_constant(&self) -> Option<u64> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `max(deg num, deg den)`: the degree of the function as a map to P^1.
    pub fn degree(&self) -> u64 {
        if self.is_zero() {
            return 0;
        }
        self.num.deg_i64().max(self.den.deg_i64()) as u64
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(RationalFunction { num: self.num.pow(e as u64), den: self.den.pow(e as u64) })
    }

    /// Integer power for nonzero elements or nonnegative exponents; panics otherwise.
    pub fn powi(&self, e: i64) -> Self {
        self.pow(e).expect("negative power of zero")
    }

    /// Substitute `g` for the variable: the pull-back `f o g`.
    pub fn compose(&self, g: &RationalFunction) -> RationalFunction {
        let field = self.field();
        let horner = |p: &Poly| {
            let mut acc = RationalFunction::zero(field);
            for &c in p.coeffs().iter().rev() {
                acc = &(&acc * g) + &RationalFunction::constant(field, c);
            }
            acc
        };
        &horner(&self.num) / &horner(&self.den)
    }

    pub fn display_with(&self, var: &str) -> String {
        let wrap = |p: &Poly| {
            let s = p.display_with(var);
            if s.contains(' ') {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            self.num.display_with(var)
        } else {
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction[F_{}]({})", self.field().characteristic(), self.display_with("t"))
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::reduce(n, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.field());
        }
        // cross-cancel first to keep degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let d = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        RationalFunction::reduce(n, d)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::checked_div`] for
    /// untrusted input.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
