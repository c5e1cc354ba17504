//! Local and global canonical heights.
//!
//! Local heights are computed in the units of `ord_w` on the field the curve
//! lives over. The global height is normalized to the base field:
//! `h(P) = (1/D) sum_w deg(w) lambda_w(P)`.
//!
//! Three interchangeable methods compute a local height; they are exposed
//! through [`LocalHeightMethod`] and looked up by name in a
//! [`MethodRegistry`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::elliptic::{psi_at, CurveModel, CurvePoint};
use crate::error::{Error, Result};
use crate::fibers::{build_fiber, correction_for};
use crate::funcfield::{order_at, support, weil_height, Place, RationalFunction};
use crate::reduction::{bad_places, component_of, localize, twelfth, ComponentLabel, Kodaira, LocalData};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    MultiplyIn,
    IntersectionCorrection,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::MultiplyIn => "multiply_in",
            Method::IntersectionCorrection => "intersection_correction",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalHeight {
    pub value: BigRational,
    pub method: Method,
}

/// A way of computing `lambda_w(P)`. `Ok(None)` means the method does not
/// apply to this point; callers fall back to [`ClosedForm`].
pub trait LocalHeightMethod: Send + Sync {
    fn method(&self) -> Method;

    fn compute(&self, e: &CurveModel, local: &LocalData, p: &CurvePoint) -> Result<Option<BigRational>>;

    fn name(&self) -> &'static str {
        self.method().name()
    }
}

/// `lambda = max(-ord x, 0)/2 + vDelta/12` on the identity component, using
/// the minimal model.
fn identity_height(local: &LocalData, p: &CurvePoint) -> Result<BigRational> {
    let x = local.minimal_point(p).x().cloned().ok_or(Error::PointAtInfinity)?;
    let pole = if x.is_zero() { 0 } else { (-order_at(&x, &local.place)?).max(0) };
    Ok(q(pole, 2) + twelfth(local.v_disc))
}

/// Values read straight off the component label.
pub struct ClosedForm;

impl LocalHeightMethod for ClosedForm {
    fn method(&self) -> Method {
        Method::ClosedForm
    }

    fn compute(&self, _e: &CurveModel, local: &LocalData, p: &CurvePoint) -> Result<Option<BigRational>> {
        let value = match component_of(local, p)? {
            ComponentLabel::Identity(_) => identity_height(local, p)?,
            ComponentLabel::Cycle(n) => {
                let Kodaira::I(big_n) = local.kodaira else { unreachable!("cycle label off I_N") };
                let (n, big_n) = (n as i64, big_n as i64);
                // B2(n/N) N / 2
                q(big_n, 12) - q(n * (big_n - n), 2 * big_n)
            }
            ComponentLabel::Alpha => twelfth(local.vj_inv),
            ComponentLabel::Beta => q(-local.vj_inv, 24),
            ComponentLabel::SimpleNonIdentity => {
                let corr = match local.kodaira {
                    Kodaira::III => q(-1, 4),
                    Kodaira::IV => q(-1, 3),
                    Kodaira::IStar(0) => q(-1, 2),
                    Kodaira::IVStar => q(-2, 3),
                    Kodaira::IIIStar => q(-3, 4),
                    k => return Err(Error::Inconsistency(format!("no simple correction for {k}"))),
                };
                twelfth(local.v_disc) + corr
            }
        };
        Ok(Some(value))
    }
}

/// Push `P` into the identity component with `m P` and undo the scaling:
/// `lambda(mP) = m^2 lambda(P) + ord psi_m(P) - (m^2 - 1) vDelta / 12`.
pub struct MultiplyIn {
    /// Largest multiple of the component-group exponent tried.
    pub max_multiple: u64,
}

impl Default for MultiplyIn {
    fn default() -> Self {
        MultiplyIn { max_multiple: 4 }
    }
}

impl LocalHeightMethod for MultiplyIn {
    fn method(&self) -> Method {
        Method::MultiplyIn
    }

    fn compute(&self, e: &CurveModel, local: &LocalData, p: &CurvePoint) -> Result<Option<BigRational>> {
        let exponent = local.component_group().exponent;
        let pm = local.minimal_point(p);
        let CurvePoint::Affine { x, y } = &pm else { return Err(Error::PointAtInfinity) };
        for k in 1..=self.max_multiple {
            let m = exponent * k;
            if m < 2 {
                continue;
            }
            let mp = e.multiply_unchecked(m as i64, p);
            if mp.is_infinity() {
                continue;
            }
            if !matches!(component_of(local, &mp)?, ComponentLabel::Identity(_)) {
                return Err(Error::Inconsistency(format!("{m}P is off the identity component at {:?}", local.place)));
            }
            let psi = psi_at(&local.a_min, &local.b_min, x, y, m);
            let m2 = (m * m) as i64;
            let value = (identity_height(local, &mp)? - BigRational::from_integer(order_at(&psi, &local.place)?.into())
                + q((m2 - 1) * local.v_disc, 12))
                / BigRational::from_integer(m2.into());
            return Ok(Some(value));
        }
        Ok(None)
    }
}

/// `vDelta/12 + (A_red^{-1})_{cc}/2` from the fibre's intersection matrix.
pub struct IntersectionCorrection;

impl LocalHeightMethod for IntersectionCorrection {
    fn method(&self) -> Method {
        Method::IntersectionCorrection
    }

    fn compute(&self, _e: &CurveModel, local: &LocalData, p: &CurvePoint) -> Result<Option<BigRational>> {
        let label = component_of(local, p)?;
        if let ComponentLabel::Identity(_) = label {
            return Ok(Some(identity_height(local, p)?));
        }
        let g = build_fiber(local.kodaira);
        let idx = g
            .component_index(label)
            .ok_or_else(|| Error::Inconsistency(format!("{label} is not a component of {}", local.kodaira)))?;
        Ok(Some(twelfth(local.v_disc) + correction_for(&g, idx)?))
    }
}

/// Named local-height methods, selectable at run time.
pub struct MethodRegistry {
    entries: Vec<Box<dyn LocalHeightMethod>>,
}

impl Default for MethodRegistry {
    fn default() -> Self {
        let mut r = MethodRegistry { entries: Vec::new() };
        r.register(Box::new(ClosedForm));
        r.register(Box::new(MultiplyIn::default()));
        r.register(Box::new(IntersectionCorrection));
        r
    }
}

impl MethodRegistry {
    /// Add a method; a later registration under an existing name replaces it.
    pub fn register(&mut self, m: Box<dyn LocalHeightMethod>) {
        self.entries.retain(|e| e.name() != m.name());
        self.entries.push(m);
    }

    pub fn get(&self, name: &str) -> Option<&dyn LocalHeightMethod> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn LocalHeightMethod> {
        self.entries.iter().map(|b| b.as_ref())
    }
}

/// `lambda_w(P)` with the given method, falling back to the closed form.
pub fn local_height_with(
    method: &dyn LocalHeightMethod,
    e: &CurveModel,
    local: &LocalData,
    p: &CurvePoint,
) -> Result<LocalHeight> {
    if p.is_infinity() {
        return Err(Error::PointAtInfinity);
    }
    if let Some(value) = method.compute(e, local, p)? {
        return Ok(LocalHeight { value, method: method.method() });
    }
    let value = ClosedForm.compute(e, local, p)?.expect("closed form always applies");
    Ok(LocalHeight { value, method: Method::ClosedForm })
}

pub fn local_height(e: &CurveModel, w: &Place, p: &CurvePoint) -> Result<LocalHeight> {
    if !e.contains(p) {
        return Err(Error::NotOnCurve);
    }
    local_height_with(&ClosedForm, e, &localize(e, w)?, p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub place: Place,
    pub degree: u64,
    pub e: u64,
    /// Local height normalized so that `ord_w` restricted to the base field
    /// is the base valuation: the `ord_w` value divided by `e(w)`.
    pub lambda: BigRational,
    pub method: Method,
    pub kodaira: Kodaira,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightBreakdown {
    pub global: BigRational,
    pub ledger: Vec<LedgerEntry>,
    pub degree: u64,
    pub isotrivial: bool,
}

/// Places where `lambda_w(P)` can be nonzero.
pub fn contributing_places(e: &CurveModel, p: &CurvePoint) -> Result<Vec<Place>> {
    let mut places = bad_places(e)?;
    if let Some(x) = p.x() {
        if !x.is_zero() {
            places.extend(support(x)?);
        }
    }
    places.sort();
    places.dedup();
    Ok(places)
}

pub fn global_height(e: &CurveModel, p: &CurvePoint) -> Result<HeightBreakdown> {
    global_height_with(&ClosedForm, e, p)
}

pub fn global_height_with(method: &dyn LocalHeightMethod, e: &CurveModel, p: &CurvePoint) -> Result<HeightBreakdown> {
    if !e.contains(p) {
        return Err(Error::NotOnCurve);
    }
    let degree = e.degree();
    let mut out = HeightBreakdown {
        global: BigRational::zero(),
        ledger: Vec::new(),
        degree,
        isotrivial: e.is_isotrivial(),
    };
    if p.is_infinity() {
        return Ok(out);
    }
    let mut sum = BigRational::zero();
    for w in contributing_places(e, p)? {
        let local = localize(e, &w)?;
        let lh = local_height_with(method, e, &local, p)?;
        sum += &lh.value * BigRational::from_integer(w.degree().into());
        out.ledger.push(LedgerEntry {
            degree: w.degree(),
            e: local.e,
            lambda: lh.value / BigRational::from_integer(local.e.into()),
            method: lh.method,
            kodaira: local.kodaira,
            place: w,
        });
    }
    out.global = sum / BigRational::from_integer(degree.into());
    Ok(out)
}

pub fn canonical_height(e: &CurveModel, p: &CurvePoint) -> Result<BigRational> {
    Ok(global_height(e, p)?.global)
}

/// `4^{-n} h(x(2^n P))` for `n = 0..=n_max`, stopping early if `2^n P` is
/// the identity. Here `h` is the base-normalized Weil height, and the
/// sequence converges to `2 h(P)` in the normalization of [`global_height`].
pub fn height_limit_oracle(e: &CurveModel, p: &CurvePoint, n_max: u32) -> Result<Vec<BigRational>> {
    if !e.contains(p) {
        return Err(Error::NotOnCurve);
    }
    let mut out = Vec::new();
    let Some(mut x) = p.x().cloned() else { return Ok(out) };
    let (a, b) = (e.a(), e.b());
    let field = e.field();
    let c = |v: i64| RationalFunction::from_i64(field, v);
    let mut scale = BigInt::one();
    for n in 0..=n_max {
        out.push(weil_height(&x, e.extension()) / BigRational::from_integer(scale.clone()));
        if n == n_max {
            break;
        }
        // x(2P) = (x^4 - 2A x^2 - 8B x + A^2) / (4 (x^3 + A x + B))
        let x2 = &x * &x;
        let den = &c(4) * &e.rhs(&x);
        if den.is_zero() {
            break;
        }
        let num = &(&(&x2 * &x2) - &(&(&c(2) * a) * &x2)) - &(&(&(&c(8) * b) * &x) - &(a * a));
        x = &num / &den;
        scale *= 4;
    }
    Ok(out)
}

/// `<P, Q> = (h(P+Q) - h(P) - h(Q)) / 2`.
pub fn height_pairing(e: &CurveModel, p: &CurvePoint, q2: &CurvePoint) -> Result<BigRational> {
    let s = e.add(p, q2)?;
    Ok((canonical_height(e, &s)? - canonical_height(e, p)? - canonical_height(e, q2)?) / q(2, 1))
}

pub fn is_torsion(e: &CurveModel, p: &CurvePoint) -> Result<bool> {
    if e.is_isotrivial() {
        return Err(Error::Isotrivial);
    }
    let h = canonical_height(e, p)?;
    if h.is_negative() {
        return Err(Error::Inconsistency(format!("negative canonical height {h}")));
    }
    Ok(h.is_zero())
}
