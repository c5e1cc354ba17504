#![allow(dead_code)]

use ffheights::elliptic::{CurveModel, CurvePoint};
use ffheights::funcfield::{ConstantField, Poly, RationalFunction};
use proptest::prelude::*;

pub fn field(p: u64) -> ConstantField {
    ConstantField::new(p).unwrap()
}

pub fn poly(p: u64, c: &[u64]) -> RationalFunction {
    RationalFunction::from_poly(Poly::from_coeffs(field(p), c.to_vec()))
}

pub fn coeffs(max_deg: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..1000, 0..=max_deg + 1)
}

pub fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![5u64, 7, 11])
}

/// A short curve through the point `(x, y)`: `B = y^2 - x^3 - A x`.
pub fn curve_through(p: u64, a: &[u64], x: &[u64], y: &[u64]) -> Option<(CurveModel, CurvePoint)> {
    let (a, x, y) = (poly(p, a), poly(p, x), poly(p, y));
    let b = &(&(&y * &y) - &(&(&x * &x) * &x)) - &(&a * &x);
    let e = CurveModel::short(a, b).ok()?;
    if e.is_isotrivial() {
        return None;
    }
    Some((e, CurvePoint::affine(x, y)))
}

/// A short curve through two points with different `x`.
pub fn curve_through_two(
    p: u64,
    x1: &[u64],
    y1: &[u64],
    x2: &[u64],
    y2: &[u64],
) -> Option<(CurveModel, CurvePoint, CurvePoint)> {
    let (x1, y1, x2, y2) = (poly(p, x1), poly(p, y1), poly(p, x2), poly(p, y2));
    let dx = &x1 - &x2;
    if dx.is_zero() {
        return None;
    }
    let g = |x: &RationalFunction, y: &RationalFunction| &(y * y) - &(&(x * x) * x);
    let a = &(&g(&x1, &y1) - &g(&x2, &y2)) / &dx;
    let b = &g(&x1, &y1) - &(&a * &x1);
    let e = CurveModel::short(a, b).ok()?;
    if e.is_isotrivial() {
        return None;
    }
    Some((e, CurvePoint::affine(x1, y1), CurvePoint::affine(x2, y2)))
}

/// A non-isotrivial curve with a point on it.
pub fn triple() -> impl Strategy<Value = (CurveModel, CurvePoint)> {
    (prime(), coeffs(2), coeffs(2), coeffs(3))
        .prop_filter_map("degenerate curve", |(p, a, x, y)| curve_through(p, &a, &x, &y))
}

/// A non-isotrivial curve with two points on it.
pub fn pair() -> impl Strategy<Value = (CurveModel, CurvePoint, CurvePoint)> {
    (prime(), coeffs(1), coeffs(2), coeffs(1), coeffs(2))
        .prop_filter_map("degenerate curve", |(p, x1, y1, x2, y2)| curve_through_two(p, &x1, &y1, &x2, &y2))
}
