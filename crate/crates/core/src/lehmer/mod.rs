//! Lower bounds for canonical heights and counts of small points.
//!
//! [`theorem1_bound`] checks `h(P) >= 1/(10500 h(j)^2 D^2)` on concrete
//! points, [`theorem2_bound`] and [`sigma_count`] compare the counting bound
//! against lattice enumeration, and [`isotrivial_bound_check`] handles the
//! case of constant `j`. The lemmas feeding the proofs live in [`lemmas`],
//! the optimized constant in [`constants`], and the elementary inequality in
//! [`inequality`].

pub mod constants;
pub mod inequality;
pub mod lemmas;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::elliptic::{CurveModel, CurvePoint};
use crate::error::{Error, Result};
use crate::fibers::QMatrix;
use crate::funcfield::weil_height;
use crate::heights::{canonical_height, height_pairing, is_torsion};
use crate::reduction::minimal_discriminant_degree;

pub use constants::{c4_constant, optimize_constant_grid, GridOptimum};
pub use inequality::{inequality_check, inequality_infimum, InequalityInstance, InequalityReport};
pub use lemmas::{parallelogram_check, select_spread_subset, spread_sum_bound, ParallelogramReport, SpreadReport};

/// The constant of the general lower bound.
pub const THEOREM1_CONSTANT: i64 = 10500;
/// The constant once `h(j)^{3/2} D >= 50000`.
pub const LARGE_REGIME_CONSTANT: i64 = 4108;
pub const LARGE_REGIME_THRESHOLD: i64 = 50000;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointCheck {
    pub index: usize,
    pub hhat: BigRational,
    /// Torsion points are reported but excluded from the verdict.
    pub torsion: bool,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub h_j: BigRational,
    pub degree: u64,
    pub bound: BigRational,
    /// `h(j)^{3/2} D >= 50000`.
    pub large_regime: bool,
    pub large_bound: BigRational,
    pub points: Vec<PointCheck>,
    pub passes: bool,
}

/// `1/(c h^2 D^2)`; `None` when `h = 0`.
pub fn lower_bound(h_j: &BigRational, degree: u64, c: i64) -> Option<BigRational> {
    if h_j.is_zero() {
        return None;
    }
    let d = rat(degree as i64);
    Some((rat(c) * h_j * h_j * &d * &d).recip())
}

/// `h^{3/2} D >= 50000`, decided exactly as `h^3 D^2 >= 50000^2`.
pub fn is_large_regime(h_j: &BigRational, degree: u64) -> bool {
    let d = rat(degree as i64);
    h_j * h_j * h_j * &d * &d >= rat(LARGE_REGIME_THRESHOLD * LARGE_REGIME_THRESHOLD)
}

pub fn theorem1_bound(e: &CurveModel, points: &[CurvePoint]) -> Result<BoundReport> {
    if e.is_isotrivial() {
        return Err(Error::Isotrivial);
    }
    let h_j = weil_height(e.j_invariant(), e.extension());
    let degree = e.degree();
    let bound = lower_bound(&h_j, degree, THEOREM1_CONSTANT).ok_or(Error::Isotrivial)?;
    let large_bound = lower_bound(&h_j, degree, LARGE_REGIME_CONSTANT).ok_or(Error::Isotrivial)?;
    let large_regime = is_large_regime(&h_j, degree);
    let applicable = if large_regime { &large_bound } else { &bound };
    let mut checks = Vec::new();
    for (index, p) in points.iter().enumerate() {
        let hhat = canonical_height(e, p)?;
        let torsion = is_torsion(e, p)?;
        let passes = torsion || &hhat >= applicable;
        checks.push(PointCheck { index, hhat, torsion, passes });
    }
    let passes = checks.iter().all(|c| c.passes);
    Ok(BoundReport { h_j, degree, bound, large_regime, large_bound, points: checks, passes })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountingBound {
    pub delta: f64,
    pub eps: f64,
    pub degree: u64,
    pub h_j: f64,
    /// `(1 - delta)/2 (1/(32 (1 + eps) D))^{2/3}`.
    pub b: f64,
    /// `max{12/eps, (h/delta) (32 (1 + eps) D)^{2/3}}`.
    pub count_bound: f64,
    /// `h/(12 delta) (32 (1 + eps) D)^{2/3}`, the bound on `N + 1` inside
    /// the proof.
    pub n_bound: f64,
}

pub fn theorem2_bound(delta: f64, eps: f64, degree: u64, h_j: f64) -> Result<CountingBound> {
    if !(delta > 0.0 && delta < 1.0 && eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta}, eps = {eps} must lie in (0, 1)")));
    }
    if degree == 0 || h_j < 0.0 {
        return Err(Error::InvalidParameter("need D >= 1 and h(j) >= 0".into()));
    }
    let scale = (32.0 * (1.0 + eps) * degree as f64).powf(2.0 / 3.0);
    Ok(CountingBound {
        delta,
        eps,
        degree,
        h_j,
        b: (1.0 - delta) / 2.0 / scale,
        count_bound: (12.0 / eps).max(h_j / delta * scale),
        n_bound: h_j / (12.0 * delta) * scale,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaCount {
    pub gram: QMatrix,
    /// Lattice vectors `m` with `m^T G m <= B`.
    pub lattice_points: u64,
    /// Distinct torsion points, the identity included.
    pub torsion: u64,
    pub count: u64,
}

/// Points of `<generators> + torsion` with canonical height at most `bound`.
pub fn sigma_count(
    e: &CurveModel,
    generators: &[CurvePoint],
    torsion: &[CurvePoint],
    bound: &BigRational,
) -> Result<SigmaCount> {
    let r = generators.len();
    if r > 3 {
        return Err(Error::RankTooLarge(r));
    }
    let mut gram = QMatrix::zeros(r);
    for i in 0..r {
        for j in i..r {
            let v = if i == j {
                canonical_height(e, &generators[i])?
            } else {
                height_pairing(e, &generators[i], &generators[j])?
            };
            gram.set(i, j, v.clone());
            gram.set(j, i, v);
        }
    }
    let mut tors: Vec<CurvePoint> = vec![CurvePoint::Infinity];
    for t in torsion {
        if !canonical_height(e, t)?.is_zero() {
            return Err(Error::InvalidParameter("a supplied torsion point has positive height".into()));
        }
        if !tors.contains(t) {
            tors.push(t.clone());
        }
    }
    let torsion_count = tors.len() as u64;
    if bound.is_negative() {
        return Ok(SigmaCount { gram, lattice_points: 0, torsion: torsion_count, count: 0 });
    }
    if r == 0 {
        return Ok(SigmaCount { gram, lattice_points: 1, torsion: torsion_count, count: torsion_count });
    }
    if !gram.det().is_positive() {
        return Err(Error::DependentGenerators);
    }
    let inv = gram.inverse().ok_or(Error::DependentGenerators)?;
    let boxes: Vec<i64> = (0..r)
        .map(|i| {
            let v = (bound * inv.get(i, i)).to_f64().unwrap_or(0.0).max(0.0);
            v.sqrt().floor() as i64 + 1
        })
        .collect();
    let mut lattice_points = 0u64;
    let mut m: Vec<i64> = boxes.iter().map(|b| -b).collect();
    loop {
        let mv: Vec<BigRational> = m.iter().map(|&c| rat(c)).collect();
        let q = gram.mul_vec(&mv).iter().zip(&mv).fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
        if &q <= bound {
            lattice_points += 1;
        }
        let mut k = 0;
        loop {
            if k == r {
                let count = lattice_points * torsion_count;
                return Ok(SigmaCount { gram, lattice_points, torsion: torsion_count, count });
            }
            if m[k] < boxes[k] {
                m[k] += 1;
                break;
            }
            m[k] = -boxes[k];
            k += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsotrivialCheck {
    pub discriminant_degree: i64,
    pub degree: u64,
    /// `deg(D_min)/(1728 D)`.
    pub bound: BigRational,
    /// Everywhere good reduction; the bound is vacuous.
    pub split: bool,
    pub points: Vec<IsotrivialPoint>,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsotrivialPoint {
    pub index: usize,
    /// `12 P` is the identity; such points are excluded.
    pub twelve_torsion: bool,
    pub hhat: BigRational,
    pub passes: bool,
}

pub fn isotrivial_bound_check(e: &CurveModel, points: &[CurvePoint]) -> Result<IsotrivialCheck> {
    if !e.is_isotrivial() {
        return Err(Error::NotIsotrivial);
    }
    let discriminant_degree = minimal_discriminant_degree(e)?;
    let degree = e.degree();
    let bound = BigRational::new(BigInt::from(discriminant_degree), BigInt::from(1728 * degree));
    let mut checks = Vec::new();
    for (index, p) in points.iter().enumerate() {
        let hhat = canonical_height(e, p)?;
        let twelve_torsion = e.multiply(12, p)?.is_infinity();
        let passes = twelve_torsion || hhat >= bound;
        checks.push(IsotrivialPoint { index, twelve_torsion, hhat, passes });
    }
    let passes = checks.iter().all(|c| c.passes);
    Ok(IsotrivialCheck {
        discriminant_degree,
        degree,
        bound,
        split: discriminant_degree == 0,
        points: checks,
        passes,
    })
}
