//! Minimal models, Kodaira types and component identification at a place.
//!
//! In residue characteristic at least 5 Tate's algorithm reduces to reading
//! the pair `(ord c4, ord Delta)` of a minimal model, which is what
//! [`localize`] does.

use std::fmt;

use num_rational::BigRational;

use crate::elliptic::{CurveModel, CurvePoint};
use crate::error::{Error, Result};
use crate::funcfield::{order_at, residue, support, Place, RationalFunction, ResidueField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kodaira {
    Good,
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Parse names like `I0`, `I4`, `II`, `I2*`, `IV*`; `IStar` takes `m`.
    pub fn parse(name: &str, m: Option<u32>) -> Result<Self> {
        let bad = || Error::Input(format!("unknown Kodaira type {name:?}"));
        let k = match name {
            "Good" | "I0" => Kodaira::Good,
            "II" => Kodaira::II,
            "III" => Kodaira::III,
            "IV" => Kodaira::IV,
            "IV*" | "IVStar" => Kodaira::IVStar,
            "III*" | "IIIStar" => Kodaira::IIIStar,
            "II*" | "IIStar" => Kodaira::IIStar,
            "IStar" | "I*" => Kodaira::IStar(m.ok_or_else(|| Error::Input("IStar needs M".into()))?),
            "I" | "IN" => Kodaira::I(m.ok_or_else(|| Error::Input("I needs N".into()))?),
            s if s.starts_with('I') && s.ends_with('*') => Kodaira::IStar(s[1..s.len() - 1].parse().map_err(|_| bad())?),
            s if s.starts_with('I') => match s[1..].parse().map_err(|_| bad())? {
                0 => Kodaira::Good,
                n => Kodaira::I(n),
            },
            _ => return Err(bad()),
        };
        Ok(k)
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self, Kodaira::I(_))
    }

    pub fn is_additive(&self) -> bool {
        !matches!(self, Kodaira::Good | Kodaira::I(_))
    }

    pub fn component_group(&self) -> ComponentGroup {
        let (order, exponent) = match *self {
            Kodaira::Good | Kodaira::II | Kodaira::IIStar => (1, 1),
            Kodaira::I(n) => (n as u64, n as u64),
            Kodaira::III | Kodaira::IIIStar => (2, 2),
            Kodaira::IV | Kodaira::IVStar => (3, 3),
            Kodaira::IStar(m) if m % 2 == 0 => (4, 2),
            Kodaira::IStar(_) => (4, 4),
        };
        ComponentGroup { order, exponent }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::Good => write!(f, "I0"),
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(m) => write!(f, "I{m}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

/// `E(K_w)/E_0(K_w)`, described by its order and exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentGroup {
    pub order: u64,
    pub exponent: u64,
}

impl fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, _) => write!(f, "0"),
            (4, 2) => write!(f, "Z/2 x Z/2"),
            (_, n) => write!(f, "Z/{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub place: Place,
    pub degree: u64,
    /// Local index over the base place (1 without an extension).
    pub e: u64,
    /// The place of the base field below, when the curve is over an extension.
    pub below: Option<Place>,
    /// The model was scaled by `u = pi^scale`.
    pub scale: i64,
    pub a_min: RationalFunction,
    pub b_min: RationalFunction,
    pub v_disc: i64,
    /// `None` when `c4 = 0`.
    pub v_c4: Option<i64>,
    pub kodaira: Kodaira,
    pub vj_inv: i64,
    pub j_w: i64,
}

impl LocalData {
    pub fn component_group(&self) -> ComponentGroup {
        self.kodaira.component_group()
    }

    pub fn uniformizer(&self) -> RationalFunction {
        self.place.uniformizer(self.a_min.field())
    }

    /// `P` in the coordinates of the minimal model.
    pub fn minimal_point(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let pi = self.uniformizer();
                CurvePoint::affine(x * &pi.powi(-2 * self.scale), y * &pi.powi(-3 * self.scale))
            }
        }
    }

    pub fn order(&self, f: &RationalFunction) -> Result<i64> {
        order_at(f, &self.place)
    }
}

fn ord_or_none(f: &RationalFunction, w: &Place) -> Option<i64> {
    order_at(f, w).ok()
}

pub fn localize(e: &CurveModel, w: &Place) -> Result<LocalData> {
    let field = e.field();
    let (a, b) = (e.a(), e.b());
    let va = ord_or_none(a, w);
    let vb = ord_or_none(b, w);
    let scale = match (va, vb) {
        (Some(x), Some(y)) => x.div_euclid(4).min(y.div_euclid(6)),
        (Some(x), None) => x.div_euclid(4),
        (None, Some(y)) => y.div_euclid(6),
        (None, None) => return Err(Error::Singular),
    };
    let pi = w.uniformizer(field);
    let a_min = a * &pi.powi(-4 * scale);
    let b_min = b * &pi.powi(-6 * scale);
    let v_disc = order_at(e.discriminant(), w)? - 12 * scale;
    let v_c4 = ord_or_none(e.c4(), w).map(|v| v - 4 * scale);
    if v_disc >= 12 && v_c4.is_none_or(|v| v >= 4) {
        return Err(Error::Inconsistency(format!("model at {w:?} is not minimal")));
    }
    let kodaira = match (v_c4, v_disc) {
        (_, 0) => Kodaira::Good,
        (Some(0), n) => Kodaira::I(n as u32),
        (Some(2), n) if n >= 6 => Kodaira::IStar((n - 6) as u32),
        (_, 2) => Kodaira::II,
        (_, 3) => Kodaira::III,
        (_, 4) => Kodaira::IV,
        (_, 6) => Kodaira::IStar(0),
        (_, 8) => Kodaira::IVStar,
        (_, 9) => Kodaira::IIIStar,
        (_, 10) => Kodaira::IIStar,
        (vc, vd) => {
            return Err(Error::Inconsistency(format!("no Kodaira type for ord c4 = {vc:?}, ord disc = {vd}")))
        }
    };
    // ord j = 3 ord c4 - ord disc; j = 0 when c4 = 0
    let vj_inv = v_c4.map_or(0, |vc| (v_disc - 3 * vc).max(0));
    let (e_w, below) = match e.extension() {
        Some(ext) => {
            let d = ext.place_below(w)?;
            (d.e, Some(d.v))
        }
        None => (1, None),
    };
    Ok(LocalData {
        place: w.clone(),
        degree: w.degree(),
        e: e_w,
        below,
        scale,
        a_min,
        b_min,
        v_disc,
        v_c4,
        kodaira,
        vj_inv,
        j_w: vj_inv,
    })
}

/// Places where the short model is not integral with unit discriminant,
/// together with the infinite place.
pub fn bad_places(e: &CurveModel) -> Result<Vec<Place>> {
    let mut out = support(e.discriminant())?;
    for f in [e.a(), e.b()] {
        if !f.is_zero() {
            out.extend(support(f)?);
        }
    }
    out.push(Place::Infinite);
    out.sort();
    out.dedup();
    Ok(out)
}

/// Degree of the minimal discriminant divisor, `sum deg(w) ord_w(D_min)`.
pub fn minimal_discriminant_degree(e: &CurveModel) -> Result<i64> {
    let mut total = 0;
    for w in bad_places(e)? {
        total += w.degree() as i64 * localize(e, &w)?.v_disc;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentLabel {
    /// On the identity component, in the filtration level `nu`.
    Identity(i64),
    /// Component `n` (up to sign) of an `I_N` cycle.
    Cycle(u32),
    Alpha,
    Beta,
    SimpleNonIdentity,
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Identity(nu) => write!(f, "identity(nu={nu})"),
            ComponentLabel::Cycle(n) => write!(f, "cycle({n})"),
            ComponentLabel::Alpha => write!(f, "alpha"),
            ComponentLabel::Beta => write!(f, "beta"),
            ComponentLabel::SimpleNonIdentity => write!(f, "simple"),
        }
    }
}

fn affine_min(local: &LocalData, p: &CurvePoint) -> Result<(RationalFunction, RationalFunction)> {
    match local.minimal_point(p) {
        CurvePoint::Infinity => Err(Error::PointAtInfinity),
        CurvePoint::Affine { x, y } => Ok((x, y)),
    }
}

/// `Some(nu)` when `P` reduces to a nonsingular point of the special fibre.
pub fn is_identity_component(local: &LocalData, p: &CurvePoint) -> Result<Option<i64>> {
    let (x, y) = affine_min(local, p)?;
    let w = &local.place;
    if !x.is_zero() {
        let vx = order_at(&x, w)?;
        if vx < 0 {
            return Ok(Some(-vx / 2));
        }
    }
    let ybar = residue(&y, w)?;
    if !ybar.is_zero() {
        return Ok(Some(0));
    }
    let xbar = residue(&x, w)?;
    let abar = residue(&local.a_min, w)?;
    let k = residue_field(local);
    let three = k.scalar(3);
    let slope = k.add(&k.mul(&three, &k.mul(&xbar, &xbar)), &abar);
    Ok(if slope.is_zero() { None } else { Some(0) })
}

fn residue_field(local: &LocalData) -> ResidueField {
    local.place.residue_field(local.a_min.field())
}

pub fn component_of(local: &LocalData, p: &CurvePoint) -> Result<ComponentLabel> {
    if let Some(nu) = is_identity_component(local, p)? {
        return Ok(ComponentLabel::Identity(nu));
    }
    let (x, y) = affine_min(local, p)?;
    let w = &local.place;
    match local.kodaira {
        Kodaira::I(n) => {
            let half = (n / 2) as i64;
            let vy = if y.is_zero() { half } else { order_at(&y, w)? };
            let c = vy.min(half);
            if c < 1 {
                return Err(Error::Inconsistency(format!("I{n}: singular point with ord y = {vy}")));
            }
            Ok(ComponentLabel::Cycle(c as u32))
        }
        Kodaira::IStar(m) if m >= 1 => {
            let field = x.field();
            let pi = local.uniformizer();
            let k = residue_field(local);
            let a_bar = residue(&(&(-&local.a_min) / &(&RationalFunction::from_i64(field, 3) * &pi.powi(2))), w)?;
            let b_bar = residue(&(&local.b_min / &(&RationalFunction::from_i64(field, 2) * &pi.powi(3))), w)?;
            let inv = k.inv(&a_bar).ok_or_else(|| Error::Inconsistency("I*: a is not a unit".into()))?;
            let double_root = k.mul(&b_bar, &inv);
            let x_bar = residue(&(&x / &pi), w)?;
            let simple_root = k.mul(&k.scalar(-2), &double_root);
            if x_bar == double_root {
                Ok(ComponentLabel::Beta)
            } else if x_bar == simple_root {
                Ok(ComponentLabel::Alpha)
            } else {
                Err(Error::Inconsistency(format!("I{m}*: x/pi reduces to neither root")))
            }
        }
        Kodaira::III | Kodaira::IV | Kodaira::IStar(0) | Kodaira::IVStar | Kodaira::IIIStar => {
            Ok(ComponentLabel::SimpleNonIdentity)
        }
        k => Err(Error::Inconsistency(format!("{k}: singular reduction where the component group is trivial"))),
    }
}

/// `vDelta / 12` as an exact rational.
pub fn twelfth(v: i64) -> BigRational {
    BigRational::new(v.into(), 12.into())
}
