use std::cmp::Ordering;
use std::fmt;

use super::factor;
use super::field::ConstantField;
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// A place of the rational function field `F_p(t)`: a monic irreducible
/// polynomial or the point at infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinite,
}

impl Place {
    /// Checked constructor for a finite place.
    pub fn finite(pi: Poly) -> Result<Self> {
        if !pi.is_monic() || !factor::is_irreducible(&pi) {
            return Err(Error::InvalidPlace(format!("{pi:?} is not monic irreducible")));
        }
        Ok(Place::Finite(pi))
    }

    /// Residue degree.
    pub fn degree(&self) -> u64 {
        match self {
            Place::Finite(pi) => pi.degree().unwrap_or(0) as u64,
            Place::Infinite => 1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }

    /// A uniformizer: `pi` itself, or `1/t` at infinity.
    pub fn uniformizer(&self, field: ConstantField) -> RationalFunction {
        match self {
            Place::Finite(pi) => RationalFunction::from_poly(pi.clone()),
            Place::Infinite => RationalFunction::var(field).inv().expect("t is nonzero"),
        }
    }

    pub fn residue_field(&self, field: ConstantField) -> ResidueField {
        match self {
            Place::Finite(pi) => ResidueField { modulus: pi.clone() },
            Place::Infinite => ResidueField { modulus: Poly::x(field) },
        }
    }

    pub fn display_with(&self, var: &str) -> String {
        match self {
            Place::Finite(pi) => pi.display_with(var),
            Place::Infinite => "infinity".to_string(),
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinite, Place::Infinite) => Ordering::Equal,
            (Place::Infinite, _) => Ordering::Greater,
            (_, Place::Infinite) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev())),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({})", self.display_with("t"))
    }
}

/// Multiplicity of the place in a nonzero polynomial.
pub fn poly_order(p: &Poly, v: &Place) -> i64 {
    match v {
        Place::Finite(pi) => p.split_power(pi).0 as i64,
        Place::Infinite => -p.deg_i64(),
    }
}

/// `ord_v(f)`; zero has no order.
pub fn order_at(f: &RationalFunction, v: &Place) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::OrderOfZero);
    }
    Ok(poly_order(f.numer(), v) - poly_order(f.denom(), v))
}

/// `ord_v(f)` with zero mapped to `i64::MAX`, for valuation comparisons.
pub fn order_or_inf(f: &RationalFunction, v: &Place) -> i64 {
    order_at(f, v).unwrap_or(i64::MAX)
}

/// The image of `f` in the residue field of `v`.
pub fn residue(f: &RationalFunction, v: &Place) -> Result<Poly> {
    let field = f.field();
    if f.is_zero() {
        return Ok(Poly::zero(field));
    }
    let ord = order_at(f, v)?;
    if ord < 0 {
        return Err(Error::PoleAtPlace);
    }
    if ord > 0 {
        return Ok(Poly::zero(field));
    }
    match v {
        Place::Finite(pi) => {
            let n = f.numer().rem(pi);
            let d = f.denom().rem(pi);
            let dinv = d.inv_mod(pi).expect("unit denominator at place");
            Ok(n.mul_mod(&dinv, pi))
        }
        Place::Infinite => {
            // equal degrees: ratio of leading coefficients
            let c = field.mul(f.numer().leading_coeff(), field.inv(f.denom().leading_coeff()));
            Ok(Poly::constant(field, c))
        }
    }
}

/// Places in the support of a nonzero rational function (zeros and poles),
/// finite ones first, infinity included when its order is nonzero.
pub fn support(f: &RationalFunction) -> Result<Vec<Place>> {
    let mut out: Vec<Place> = factor::irreducible_factors(f.numer())?
        .into_iter()
        .chain(factor::irreducible_factors(f.denom())?)
        .map(Place::Finite)
        .collect();
    if order_at(f, &Place::Infinite)? != 0 {
        out.push(Place::Infinite);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `F_p[t]/(pi)`, with elements stored as reduced polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    modulus: Poly,
}

impl ResidueField {
    pub fn degree(&self) -> u64 {
        self.modulus.degree().unwrap_or(0) as u64
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        (a + b).rem(&self.modulus)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        (a - b).rem(&self.modulus)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(b, &self.modulus)
    }

    pub fn inv(&self, a: &Poly) -> Option<Poly> {
        a.inv_mod(&self.modulus)
    }

    pub fn scalar(&self, c: i64) -> Poly {
        let f = self.modulus.field();
        Poly::constant(f, f.reduce_i64(c))
    }
}
