//! JSON input files and report schemas.
//!
//! Exact rationals are written as `"p/q"` strings (integers as `"p"`).
//! Floating values appear only in optimizer output and sit next to an
//! `"approx": true` marker.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::elliptic::{CurveModel, CurvePoint};
use crate::error::{Error, Result};
use crate::fibers::{correction_table, reduced_inverse, FiberGraph, QMatrix};
use crate::funcfield::{parse_rational_function, ConstantField, ExtensionMap, Place, RationalFunction};
use crate::heights::HeightBreakdown;
use crate::lehmer::{BoundReport, InequalityInstance, InequalityReport, IsotrivialCheck};
use crate::reduction::LocalData;

pub fn rational_to_string(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = num_bigint::BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = num_bigint::BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d == 0.into() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let n = num_bigint::BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num_bigint::BigInt::from(10).pow(frac.len() as u32);
        return Ok(BigRational::new(n, d));
    }
    Ok(BigRational::from_integer(num_bigint::BigInt::from_str(s).map_err(|_| bad())?))
}

fn default_var() -> String {
    "t".into()
}

fn default_ext_var() -> String {
    "s".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSpec {
    pub phi: String,
    #[serde(default = "default_ext_var")]
    pub var: String,
}

/// A curve file: either `a` (five a-invariants) or `A` and `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    #[serde(default = "default_var")]
    pub var: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<[String; 5]>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub short_a: Option<String>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub short_b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionSpec>,
}

impl CurveSpec {
    pub fn field(&self) -> Result<ConstantField> {
        ConstantField::new(self.field.p)
    }

    /// The variable points on this curve are written in.
    pub fn point_var(&self) -> &str {
        self.extension.as_ref().map_or(&self.var, |x| &x.var)
    }

    pub fn build(&self) -> Result<CurveModel> {
        let f = self.field()?;
        let parse = |s: &str| parse_rational_function(s, &self.var, f);
        let e = match (&self.a, &self.short_a, &self.short_b) {
            (Some(a), None, None) => {
                let v: Vec<RationalFunction> = a.iter().map(|s| parse(s)).collect::<Result<_>>()?;
                CurveModel::new(v.try_into().expect("five entries"))?
            }
            (None, Some(a), Some(b)) => CurveModel::short(parse(a)?, parse(b)?)?,
            _ => return Err(Error::Input("curve needs either \"a\" or both \"A\" and \"B\"".into())),
        };
        match &self.extension {
            None => Ok(e),
            Some(x) => {
                if x.var == self.var {
                    return Err(Error::Input("extension variable must differ from the base variable".into()));
                }
                let ext = ExtensionMap::new(parse_rational_function(&x.phi, &x.var, f)?)?;
                e.base_change(&ext)
            }
        }
    }
}

/// `{"x": ..., "y": ...}` in the coordinates of the curve file, or the
/// string `"infinity"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Affine { x: String, y: String },
    Named(String),
}

impl PointSpec {
    pub fn build(&self, spec: &CurveSpec, e: &CurveModel) -> Result<CurvePoint> {
        match self {
            PointSpec::Named(s) if s == "infinity" => Ok(CurvePoint::Infinity),
            PointSpec::Named(s) => Err(Error::Input(format!("unknown point {s:?}"))),
            PointSpec::Affine { x, y } => {
                let f = spec.field()?;
                let var = spec.point_var();
                let x = parse_rational_function(x, var, f)?;
                let y = parse_rational_function(y, var, f)?;
                e.point_from_input(x, y)
            }
        }
    }

    /// Serialize a point back in the coordinates of the curve file.
    pub fn from_point(e: &CurveModel, p: &CurvePoint, var: &str) -> Self {
        match e.to_input(p) {
            CurvePoint::Infinity => PointSpec::Named("infinity".into()),
            CurvePoint::Affine { x, y } => PointSpec::Affine { x: x.display_with(var), y: y.display_with(var) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PlaceSpec {
    Finite { poly: String },
    Infinite,
}

impl PlaceSpec {
    pub fn from_place(w: &Place, var: &str) -> Self {
        match w {
            Place::Finite(pi) => PlaceSpec::Finite { poly: pi.display_with(var) },
            Place::Infinite => PlaceSpec::Infinite,
        }
    }

    pub fn build(&self, field: ConstantField, var: &str) -> Result<Place> {
        match self {
            PlaceSpec::Infinite => Ok(Place::Infinite),
            PlaceSpec::Finite { poly } => {
                let f = parse_rational_function(poly, var, field)?;
                if !f.is_polynomial() {
                    return Err(Error::InvalidPlace(poly.clone()));
                }
                Place::finite(f.numer().clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSummary {
    pub p: u64,
    pub degree: u64,
    pub a: String,
    pub b: String,
    pub discriminant: String,
    pub j: String,
    pub h_j: String,
    pub isotrivial: bool,
}

impl CurveSummary {
    pub fn new(e: &CurveModel, var: &str) -> Self {
        CurveSummary {
            p: e.field().characteristic(),
            degree: e.degree(),
            a: e.a().display_with(var),
            b: e.b().display_with(var),
            discriminant: e.discriminant().display_with(var),
            j: e.j_invariant().display_with(var),
            h_j: rational_to_string(&crate::funcfield::weil_height(e.j_invariant(), e.extension())),
            isotrivial: e.is_isotrivial(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceRow {
    pub place: PlaceSpec,
    pub degree: u64,
    pub e: u64,
    #[serde(rename = "type")]
    pub kodaira: String,
    pub v_disc: i64,
    pub v_c4: Option<i64>,
    pub j_w: i64,
    pub component_group: String,
}

impl PlaceRow {
    pub fn new(l: &LocalData, var: &str) -> Self {
        PlaceRow {
            place: PlaceSpec::from_place(&l.place, var),
            degree: l.degree,
            e: l.e,
            kodaira: l.kodaira.to_string(),
            v_disc: l.v_disc,
            v_c4: l.v_c4,
            j_w: l.j_w,
            component_group: l.component_group().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub curve: CurveSummary,
    pub places: Vec<PlaceRow>,
    pub minimal_discriminant_degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub place: PlaceSpec,
    pub degree: u64,
    pub e: u64,
    #[serde(rename = "type")]
    pub kodaira: String,
    pub lambda: String,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightReport {
    pub point: PointSpec,
    pub hhat: String,
    pub degree: u64,
    pub isotrivial: bool,
    pub ledger: Vec<LedgerRow>,
    /// Half of `4^{-n} h(x(2^n P))` for `n = 0, 1, ...`, which tends to
    /// `hhat`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<String>>,
}

impl HeightReport {
    pub fn new(point: PointSpec, h: &HeightBreakdown, var: &str) -> Self {
        HeightReport {
            point,
            hhat: rational_to_string(&h.global),
            degree: h.degree,
            isotrivial: h.isotrivial,
            ledger: h
                .ledger
                .iter()
                .map(|l| LedgerRow {
                    place: PlaceSpec::from_place(&l.place, var),
                    degree: l.degree,
                    e: l.e,
                    kodaira: l.kodaira.to_string(),
                    lambda: rational_to_string(&l.lambda),
                    method: l.method.name().to_string(),
                })
                .collect(),
            oracle: None,
        }
    }
}

/// One place of `local-heights`: the value of every registered method.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalRow {
    pub place: PlaceSpec,
    #[serde(rename = "type")]
    pub kodaira: String,
    pub component: String,
    pub values: Vec<MethodValue>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodValue {
    pub method: String,
    pub lambda: String,
    /// The method declined and the closed form was used.
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalHeightsReport {
    pub point: PointSpec,
    pub rows: Vec<LocalRow>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCheckRow {
    pub index: usize,
    pub hhat: String,
    pub excluded: bool,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LehmerReport {
    pub h_j: String,
    pub degree: u64,
    pub bound: String,
    pub large_regime: bool,
    pub large_bound: String,
    pub points: Vec<PointCheckRow>,
    pub passes: bool,
}

impl From<&BoundReport> for LehmerReport {
    fn from(r: &BoundReport) -> Self {
        LehmerReport {
            h_j: rational_to_string(&r.h_j),
            degree: r.degree,
            bound: rational_to_string(&r.bound),
            large_regime: r.large_regime,
            large_bound: rational_to_string(&r.large_bound),
            points: r
                .points
                .iter()
                .map(|c| PointCheckRow {
                    index: c.index,
                    hhat: rational_to_string(&c.hhat),
                    excluded: c.torsion,
                    passes: c.passes,
                })
                .collect(),
            passes: r.passes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotrivialReport {
    pub discriminant_degree: i64,
    pub degree: u64,
    pub bound: String,
    pub split: bool,
    pub points: Vec<PointCheckRow>,
    pub passes: bool,
}

impl From<&IsotrivialCheck> for IsotrivialReport {
    fn from(r: &IsotrivialCheck) -> Self {
        IsotrivialReport {
            discriminant_degree: r.discriminant_degree,
            degree: r.degree,
            bound: rational_to_string(&r.bound),
            split: r.split,
            points: r
                .points
                .iter()
                .map(|c| PointCheckRow {
                    index: c.index,
                    hhat: rational_to_string(&c.hhat),
                    excluded: c.twelve_torsion,
                    passes: c.passes,
                })
                .collect(),
            passes: r.passes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizeReport {
    pub approx: bool,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub grid: u32,
    pub delta: f64,
    pub eps: f64,
    pub value: f64,
    pub reciprocal: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingReport {
    pub approx: bool,
    pub delta: f64,
    pub eps: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub count_bound: f64,
    pub n_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountSmallReport {
    #[serde(rename = "B")]
    pub bound: String,
    pub gram: Vec<Vec<String>>,
    pub lattice_points: u64,
    pub torsion: u64,
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem2: Option<CountingReport>,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionRow {
    pub component: String,
    pub index: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberTableReport {
    #[serde(rename = "type")]
    pub kodaira: String,
    pub components: Vec<String>,
    pub multiplicities: Vec<i64>,
    pub matrix: Vec<Vec<String>>,
    pub reduced_inverse: Option<Vec<Vec<String>>>,
    pub det: Option<String>,
    pub kernel: Vec<Vec<String>>,
    pub corrections: Vec<CorrectionRow>,
}

pub fn matrix_strings(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.size())
        .map(|i| (0..m.size()).map(|j| rational_to_string(m.get(i, j))).collect())
        .collect()
}

impl FiberTableReport {
    pub fn new(g: &FiberGraph) -> Self {
        let red = reduced_inverse(g).ok();
        FiberTableReport {
            kodaira: g.kodaira.to_string(),
            components: g.names.clone(),
            multiplicities: g.multiplicities.clone(),
            matrix: matrix_strings(&g.matrix),
            reduced_inverse: red.as_ref().map(|(inv, _)| matrix_strings(inv)),
            det: red.as_ref().map(|(_, d)| rational_to_string(d)),
            kernel: g.matrix.kernel().iter().map(|v| v.iter().map(rational_to_string).collect()).collect(),
            corrections: correction_table(g)
                .into_iter()
                .map(|c| CorrectionRow { component: c.component, index: c.index, value: rational_to_string(&c.value) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityJson {
    pub alpha: String,
    pub beta: String,
    pub e: Vec<String>,
    pub constant: String,
    pub lhs: String,
    pub lhs_cubed: String,
    pub rhs_cubed: String,
    pub holds: bool,
    pub refined_rhs_cubed: String,
    pub refined_holds: bool,
}

impl InequalityJson {
    pub fn new(inst: &InequalityInstance, constant: &BigRational, r: &InequalityReport) -> Self {
        InequalityJson {
            alpha: rational_to_string(&inst.alpha),
            beta: rational_to_string(&inst.beta),
            e: inst.e.iter().map(rational_to_string).collect(),
            constant: rational_to_string(constant),
            lhs: rational_to_string(&r.lhs),
            lhs_cubed: rational_to_string(&r.lhs_cubed),
            rhs_cubed: rational_to_string(&r.rhs_cubed),
            holds: r.holds,
            refined_rhs_cubed: rational_to_string(&r.refined_rhs_cubed),
            refined_holds: r.refined_holds,
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::fibers::build_fiber;
    use crate::heights::global_height;
    use crate::reduction::Kodaira;

    fn round_trip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(v: &T) {
        let s = serde_json::to_string(v).unwrap();
        let back: T = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, v);
    }

    #[test]
    fn rationals() {
        let q = parse_rational("-6/4").unwrap();
        assert_eq!(rational_to_string(&q), "-3/2");
        assert_eq!(parse_rational("0.125").unwrap(), BigRational::new(1.into(), 8.into()));
        assert_eq!(rational_to_string(&parse_rational("7").unwrap()), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn curve_files() {
        let spec: CurveSpec = read_json(r#"{"field":{"p":5},"A":"1","B":"-t^3+t^2-t"}"#).unwrap();
        assert_eq!(spec.build().unwrap(), catalog::e3());
        let spec: CurveSpec =
            read_json(r#"{"field":{"p":5},"var":"t","a":["0","-t-1","0","t","0"]}"#).unwrap();
        assert_eq!(spec.build().unwrap(), catalog::legendre(5));
        let spec: CurveSpec = read_json(r#"{"field":{"p":5},"A":"1","B":"t","extension":{"phi":"s^2"}}"#).unwrap();
        assert_eq!(spec.build().unwrap().degree(), 2);
        round_trip(&spec);
        let bad: CurveSpec = read_json(r#"{"field":{"p":5},"A":"1"}"#).unwrap();
        assert!(bad.build().is_err());
        assert!(read_json::<CurveSpec>("{").is_err());
    }

    #[test]
    fn points_and_places() {
        let spec: CurveSpec = read_json(r#"{"field":{"p":5},"A":"1","B":"-t^3+t^2-t"}"#).unwrap();
        let e = spec.build().unwrap();
        let pts: Vec<PointSpec> = read_json(r#"[{"x":"t","y":"t"},"infinity"]"#).unwrap();
        assert_eq!(pts[0].build(&spec, &e).unwrap(), catalog::e3_point());
        assert_eq!(pts[1].build(&spec, &e).unwrap(), CurvePoint::Infinity);
        assert_eq!(PointSpec::from_point(&e, &catalog::e3_point(), "t"), pts[0]);
        let off: PointSpec = read_json(r#"{"x":"t","y":"1"}"#).unwrap();
        assert!(matches!(off.build(&spec, &e), Err(Error::NotOnCurve)));
        let w: PlaceSpec = read_json(r#"{"kind":"finite","poly":"t^2 + 2"}"#).unwrap();
        let place = w.build(e.field(), "t").unwrap();
        assert_eq!(PlaceSpec::from_place(&place, "t"), w);
        assert_eq!(serde_json::to_string(&PlaceSpec::Infinite).unwrap(), r#"{"kind":"infinite"}"#);
    }

    #[test]
    fn reports_round_trip() {
        let e = catalog::e3();
        let p = catalog::e3_point();
        let h = HeightReport::new(PointSpec::from_point(&e, &p, "t"), &global_height(&e, &p).unwrap(), "t");
        assert_eq!(h.hhat, "1/2");
        round_trip(&h);
        round_trip(&FiberTableReport::new(&build_fiber(Kodaira::IStar(3))));
        round_trip(&FiberTableReport::new(&build_fiber(Kodaira::II)));
        round_trip(&OptimizeReport { approx: true, j: 1.0, d: 1.0, grid: 2, delta: 0.5, eps: 0.5, value: 1e-5, reciprocal: 1e5 });
    }
}
