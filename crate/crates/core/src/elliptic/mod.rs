//! Weierstrass models over `F_p(s)`, the group law, and division polynomials.
//!
//! Every curve is carried internally in short form `y^2 = x^3 + A x + B`;
//! general input is converted on entry and the change of coordinates is
//! kept so points can be moved between the two models.

pub mod division;

use crate::error::{Error, Result};
use crate::funcfield::{ConstantField, ExtensionMap, RationalFunction};

pub use division::{division_polynomial, psi_at, DivisionPolynomial, XPoly};

/// `x = X + r`, `y = Y + s X + t` from short coordinates `(X, Y)` back to
/// the input model (the scaling `u` is always 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortChange {
    pub r: RationalFunction,
    pub s: RationalFunction,
    pub t: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    ext: Option<ExtensionMap>,
    input: [RationalFunction; 5],
    change: ShortChange,
    a: RationalFunction,
    b: RationalFunction,
    b_inv: [RationalFunction; 4],
    c4: RationalFunction,
    c6: RationalFunction,
    disc: RationalFunction,
    j: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: RationalFunction, y: RationalFunction },
}

impl CurvePoint {
    pub fn affine(x: RationalFunction, y: RationalFunction) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&RationalFunction> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&RationalFunction> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }

    pub fn display_with(&self, var: &str) -> String {
        match self {
            CurvePoint::Infinity => "O".into(),
            CurvePoint::Affine { x, y } => format!("({}, {})", x.display_with(var), y.display_with(var)),
        }
    }
}

fn c(field: ConstantField, v: i64) -> RationalFunction {
    RationalFunction::from_i64(field, v)
}

impl CurveModel {
    /// A curve from general Weierstrass coefficients `[a1, a2, a3, a4, a6]`.
    pub fn new(a: [RationalFunction; 5]) -> Result<Self> {
        Self::build(a, None)
    }

    /// The curve `y^2 = x^3 + A x + B`.
    pub fn short(a: RationalFunction, b: RationalFunction) -> Result<Self> {
        let field = a.field();
        let z = RationalFunction::zero(field);
        Self::build([z.clone(), z.clone(), z.clone(), a, b], None)
    }

    fn build(input: [RationalFunction; 5], ext: Option<ExtensionMap>) -> Result<Self> {
        let field = input[0].field();
        let k = |v| c(field, v);
        let [a1, a2, a3, a4, a6] = &input;
        let b2 = &(a1 * a1) + &(&k(4) * a2);
        let b4 = &(&k(2) * a4) + &(a1 * a3);
        let b6 = &(a3 * a3) + &(&k(4) * a6);
        let b8 = &(&(&(&(a1 * a1) * a6) + &(&(&k(4) * a2) * a6)) - &(&(a1 * a3) * a4))
            + &(&(&(a2 * a3) * a3) - &(a4 * a4));
        let c4 = &(&b2 * &b2) - &(&k(24) * &b4);
        let c6 = &(&(&(&k(36) * &b2) * &b4) - &b2.powi(3)) - &(&k(216) * &b6);
        let disc = &(&(&(-&(&b2 * &b2)) * &b8) - &(&k(8) * &b4.powi(3)))
            + &(&(&(&(&k(9) * &b2) * &b4) * &b6) - &(&k(27) * &(&b6 * &b6)));
        if disc.is_zero() {
            return Err(Error::Singular);
        }
        let j = &c4.powi(3) / &disc;
        let a = &(-&c4) / &k(48);
        let b = &(-&c6) / &k(864);
        let r = &(-&b2) / &k(12);
        let s = &(-a1) / &k(2);
        let t = &(-&(&(a1 * &r) + a3)) / &k(2);
        Ok(CurveModel {
            ext,
            change: ShortChange { r, s, t },
            a,
            b,
            b_inv: [b2, b4, b6, b8],
            c4,
            c6,
            disc,
            j,
            input,
        })
    }

    /// Base change along `t = phi(s)`. Applied to a curve that is already
    /// over an extension, the towers compose.
    pub fn base_change(&self, ext: &ExtensionMap) -> Result<Self> {
        let input = self.input.clone().map(|f| ext.pull_back(&f));
        let total = match &self.ext {
            Some(old) => old.then(ext),
            None => ext.clone(),
        };
        Self::build(input, Some(total))
    }

    pub fn base_change_point(&self, ext: &ExtensionMap, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(ext.pull_back(x), ext.pull_back(y)),
        }
    }

    pub fn field(&self) -> ConstantField {
        self.a.field()
    }

    pub fn extension(&self) -> Option<&ExtensionMap> {
        self.ext.as_ref()
    }

    /// `[K:F]`; 1 when the curve lives over the base field.
    pub fn degree(&self) -> u64 {
        self.ext.as_ref().map_or(1, |e| e.degree())
    }

    pub fn a(&self) -> &RationalFunction {
        &self.a
    }

    pub fn b(&self) -> &RationalFunction {
        &self.b
    }

    pub fn a_invariants(&self) -> &[RationalFunction; 5] {
        &self.input
    }

    /// `[b2, b4, b6, b8]` of the input model.
    pub fn b_invariants(&self) -> &[RationalFunction; 4] {
        &self.b_inv
    }

    pub fn c4(&self) -> &RationalFunction {
        &self.c4
    }

    pub fn c6(&self) -> &RationalFunction {
        &self.c6
    }

    pub fn discriminant(&self) -> &RationalFunction {
        &self.disc
    }

    pub fn j_invariant(&self) -> &RationalFunction {
        &self.j
    }

    pub fn is_isotrivial(&self) -> bool {
        self.j.is_constant()
    }

    pub fn change(&self) -> &ShortChange {
        &self.change
    }

    /// `x^3 + A x + B`.
    pub fn rhs(&self, x: &RationalFunction) -> RationalFunction {
        &(&(&(x * x) * x) + &(&self.a * x)) + &self.b
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => (y * y) == self.rhs(x),
        }
    }

    /// A point given in short-form coordinates.
    pub fn point(&self, x: RationalFunction, y: RationalFunction) -> Result<CurvePoint> {
        let p = CurvePoint::affine(x, y);
        if !self.contains(&p) {
            return Err(Error::NotOnCurve);
        }
        Ok(p)
    }

    /// A point given in coordinates of the input model.
    pub fn point_from_input(&self, x: RationalFunction, y: RationalFunction) -> Result<CurvePoint> {
        let ShortChange { r, s, t } = &self.change;
        let xs = &x - r;
        let ys = &(&y - &(s * &xs)) - t;
        self.point(xs, ys)
    }

    pub fn to_input(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let ShortChange { r, s, t } = &self.change;
                CurvePoint::affine(x + r, &(y + &(s * x)) + t)
            }
        }
    }

    fn check(&self, p: &CurvePoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn negate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.clone(), -y),
        }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let field = self.field();
        let slope = if x1 == x2 {
            if y1 == &-y2 {
                return CurvePoint::Infinity;
            }
            &(&(&c(field, 3) * &(x1 * x1)) + &self.a) / &(&c(field, 2) * y1)
        } else {
            &(y2 - y1) / &(x2 - x1)
        };
        let x3 = &(&(&slope * &slope) - x1) - x2;
        let y3 = &(&slope * &(x1 - &x3)) - y1;
        CurvePoint::affine(x3, y3)
    }

    pub fn sub(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        self.add(p, &self.negate(q))
    }

    pub fn double(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.add(p, p)
    }

    /// `m P` by double-and-add; negative `m` negates.
    pub fn multiply(&self, m: i64, p: &CurvePoint) -> Result<CurvePoint> {
        self.check(p)?;
        Ok(self.multiply_unchecked(m, p))
    }

    pub(crate) fn multiply_unchecked(&self, m: i64, p: &CurvePoint) -> CurvePoint {
        let mut base = if m < 0 { self.negate(p) } else { p.clone() };
        let mut n = m.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        acc
    }

    /// The integer combination `sum m_i P_i`.
    pub fn combination(&self, coeffs: &[i64], points: &[CurvePoint]) -> Result<CurvePoint> {
        let mut acc = CurvePoint::Infinity;
        for (m, p) in coeffs.iter().zip(points) {
            acc = self.add_unchecked(&acc, &self.multiply(*m, p)?);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{parse_rational_function, weil_height};

    fn f5() -> ConstantField {
        ConstantField::new(5).unwrap()
    }

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s, "t", f5()).unwrap()
    }

    fn e3() -> CurveModel {
        CurveModel::short(rf("1"), rf("-t^3+t^2-t")).unwrap()
    }

    fn legendre() -> CurveModel {
        CurveModel::new([rf("0"), rf("-t-1"), rf("0"), rf("t"), rf("0")]).unwrap()
    }

    #[test]
    fn invariants_of_x3_plus_x_plus_t() {
        let e = CurveModel::short(rf("1"), rf("t")).unwrap();
        assert_eq!(e.discriminant(), &rf("-16*(4+27t^2)"));
        assert_eq!(e.j_invariant(), &(&rf("6912") / &rf("4+27t^2")));
        assert_eq!(weil_height(e.j_invariant(), None), num_rational::BigRational::from_integer(2.into()));
        let lhs = &e.c4().powi(3) - &e.c6().powi(2);
        assert_eq!(lhs, &rf("1728") * e.discriminant());
    }

    #[test]
    fn legendre_form() {
        let e = legendre();
        assert_eq!(e.discriminant(), &rf("16 t^2 (t-1)^2"));
        assert!(!e.is_isotrivial());
        let p = e.point_from_input(rf("0"), rf("0")).unwrap();
        assert_eq!(e.to_input(&p), CurvePoint::affine(rf("0"), rf("0")));
        assert_eq!(e.double(&p).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn j_1728_is_isotrivial() {
        assert!(CurveModel::short(rf("t"), rf("0")).unwrap().is_isotrivial());
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(CurveModel::short(rf("0"), rf("0")), Err(Error::Singular)));
        assert!(matches!(CurveModel::short(rf("-3t^2"), rf("2t^3")), Err(Error::Singular)));
    }

    #[test]
    fn group_law_basics() {
        let e = e3();
        let p = e.point(rf("t"), rf("t")).unwrap();
        assert_eq!(e.add(&p, &CurvePoint::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &e.negate(&p)).unwrap(), CurvePoint::Infinity);
        let p2 = e.double(&p).unwrap();
        assert!(e.contains(&p2));
        assert_eq!(e.multiply(0, &p).unwrap(), CurvePoint::Infinity);
        assert_eq!(e.multiply(-3, &p).unwrap(), e.negate(&e.multiply(3, &p).unwrap()));
        let p3 = e.add(&p2, &p).unwrap();
        assert_eq!(e.add(&p, &p2).unwrap(), p3);
        assert_eq!(e.multiply(3, &p).unwrap(), p3);
    }

    #[test]
    fn off_curve_rejected() {
        let e = e3();
        assert!(e.point(rf("t"), rf("t+1")).is_err());
        let bad = CurvePoint::affine(rf("1"), rf("1"));
        assert!(e.add(&bad, &CurvePoint::Infinity).is_err());
    }

    #[test]
    fn base_change_composes() {
        let e = e3();
        let s = |x: &str| parse_rational_function(x, "s", f5()).unwrap();
        let k = ExtensionMap::new(s("s^2")).unwrap();
        let l = ExtensionMap::new(s("s^3+s")).unwrap();
        let ek = e.base_change(&k).unwrap();
        let ekl = ek.base_change(&l).unwrap();
        assert_eq!(ekl.degree(), 6);
        let p = e.point(rf("t"), rf("t")).unwrap();
        let pk = ek.base_change_point(&k, &p);
        assert!(ek.contains(&pk));
        assert!(ekl.contains(&ekl.base_change_point(&l, &pk)));
    }
}
