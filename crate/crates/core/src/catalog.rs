//! Curves and points used throughout the tests and examples.

use crate::elliptic::{CurveModel, CurvePoint};
use crate::funcfield::{parse_rational_function, ConstantField, ExtensionMap, RationalFunction};

fn rf(p: u64, s: &str) -> RationalFunction {
    parse_rational_function(s, "t", ConstantField::new(p).expect("catalog primes are valid"))
        .expect("catalog expressions parse")
}

fn short(p: u64, a: &str, b: &str) -> CurveModel {
    CurveModel::short(rf(p, a), rf(p, b)).expect("catalog curves are nonsingular")
}

/// `y^2 = x^3 + x + t` over `F_5(t)`.
pub fn e1() -> CurveModel {
    short(5, "1", "t")
}

/// `y^2 = x^3 + x - t^3 + t^2 - t` over `F_5(t)`.
pub fn e3() -> CurveModel {
    short(5, "1", "-t^3+t^2-t")
}

pub fn e3_point() -> CurvePoint {
    CurvePoint::affine(rf(5, "t"), rf(5, "t"))
}

/// `y^2 = x(x-1)(x-t)`.
pub fn legendre(p: u64) -> CurveModel {
    CurveModel::new([rf(p, "0"), rf(p, "-t-1"), rf(p, "0"), rf(p, "t"), rf(p, "0")]).expect("nonsingular")
}

/// `y^2 = x(x-d)(x-dt)`, the twist of the Legendre curve by `d`.
pub fn legendre_twist(p: u64, d: &str) -> CurveModel {
    let d = rf(p, d);
    let t = rf(p, "t");
    let z = RationalFunction::zero(d.field());
    let a2 = -&(&d * &(&t + &RationalFunction::one(d.field())));
    let a4 = &(&d * &d) * &t;
    CurveModel::new([z.clone(), a2, z.clone(), a4, z]).expect("nonsingular")
}

/// The 2-torsion points of a Legendre twist, in short coordinates.
pub fn legendre_two_torsion(e: &CurveModel, d: &str) -> Vec<CurvePoint> {
    let p = e.field().characteristic();
    let d = rf(p, d);
    let t = rf(p, "t");
    let z = RationalFunction::zero(d.field());
    [z.clone(), d.clone(), &d * &t]
        .into_iter()
        .map(|x| e.point_from_input(x, z.clone()).expect("2-torsion point lies on the curve"))
        .collect()
}

/// `y^2 = x^3 - 3t^2 x + 2t^3(1 + t^M)`, with `I_M^*` reduction at `t`.
pub fn e_m(p: u64, m: u32) -> CurveModel {
    short(p, "-3t^2", &format!("2t^3(1+t^{m})"))
}

/// Over `F_7` with `M` odd: a point on the `alpha` component at `t`.
pub fn e_m_alpha_point(m: u32) -> CurvePoint {
    assert!(m % 2 == 1, "M must be odd");
    CurvePoint::affine(rf(7, "-2t"), rf(7, &format!("3t^{}", (m + 3) / 2)))
}

/// Over `F_7` with `M` odd: a point on the `beta` component at `t`.
pub fn e_m_beta_point(m: u32) -> CurvePoint {
    assert!(m % 2 == 1, "M must be odd");
    CurvePoint::affine(rf(7, "t"), rf(7, &format!("3t^{}", (m + 3) / 2)))
}

/// `y^2 = x(x+1)(x+t)` over `F_5(s)` with `t = s^6`, together with the
/// points `(s^5, s^5 (s+1)^3)` and `(-s^5, -s^5 (1-s)^3)`, which are
/// orthogonal of height `5/36` each.
pub fn legendre_sextic() -> (CurveModel, Vec<CurvePoint>) {
    let f = ConstantField::new(5).expect("5 is prime");
    let s = |e: &str| parse_rational_function(e, "s", f).expect("catalog expressions parse");
    let ext = ExtensionMap::new(s("s^6")).expect("nonconstant");
    let e = legendre_twist(5, "-1").base_change(&ext).expect("nonsingular");
    let pts = [("s^5", "s^5(s+1)^3"), ("-s^5", "-s^5(1-s)^3")]
        .iter()
        .map(|(x, y)| e.point_from_input(s(x), s(y)).expect("point lies on the curve"))
        .collect();
    (e, pts)
}

/// `y^2 = x^3 + t`, isotrivial with `j = 0`.
pub fn isotrivial(p: u64) -> CurveModel {
    short(p, "0", "t")
}
