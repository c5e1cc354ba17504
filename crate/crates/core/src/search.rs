//! Brute-force search for points with polynomial `x`-coordinate.

use crate::elliptic::{CurveModel, CurvePoint};
use crate::funcfield::{Poly, RationalFunction};

/// Square root of a rational function whose numerator and denominator are
/// both squares in `F_p[t]`.
pub fn sqrt_rational(f: &RationalFunction) -> Option<RationalFunction> {
    let n = f.numer().sqrt()?;
    let d = f.denom().sqrt()?;
    RationalFunction::new(n, d).ok()
}

/// Affine points `(x, y)` in short coordinates with `x` a polynomial of
/// degree at most `max_deg`, one `y` per `x` (the other is `-y`). Stops after
/// `limit` points. Enumeration order is deterministic.
pub fn find_points(e: &CurveModel, max_deg: usize, limit: usize) -> Vec<CurvePoint> {
    let field = e.field();
    let p = field.characteristic();
    let mut out = Vec::new();
    let count = p.pow(max_deg as u32 + 1);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(max_deg + 1);
        let mut rest = idx;
        for _ in 0..=max_deg {
            coeffs.push(rest % p);
            rest /= p;
        }
        let x = RationalFunction::from_poly(Poly::from_coeffs(field, coeffs));
        if let Some(y) = sqrt_rational(&e.rhs(&x)) {
            out.push(CurvePoint::affine(x, y));
            if out.len() >= limit {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn finds_the_catalog_point_on_e3() {
        let e = catalog::e3();
        let pts = find_points(&e, 1, usize::MAX);
        let p = catalog::e3_point();
        assert!(pts.iter().any(|q| q == &p || q == &e.negate(&p)));
        assert!(pts.iter().all(|q| e.contains(q)));
    }
}
