//! The inequality `a e0 + b sum_{i>=1} 1/e_i >= (c a^2 b sum e_i)^{1/3}`
//! and the infimum of its left side over the admissible region.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityInstance {
    pub alpha: BigRational,
    pub beta: BigRational,
    /// `e[0]` must be the largest entry.
    pub e: Vec<BigRational>,
}

impl InequalityInstance {
    pub fn new(alpha: BigRational, beta: BigRational, e: Vec<BigRational>) -> Result<Self> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::InvalidParameter("alpha and beta must be positive".into()));
        }
        if e.is_empty() || e.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidParameter("e must be a nonempty list of positive numbers".into()));
        }
        if e.iter().any(|v| v > &e[0]) {
            return Err(Error::InvalidParameter("e[0] must be the largest entry".into()));
        }
        Ok(InequalityInstance { alpha, beta, e })
    }

    pub fn r(&self) -> usize {
        self.e.len() - 1
    }

    pub fn lhs(&self) -> BigRational {
        let tail = self.e[1..].iter().fold(BigRational::zero(), |acc, v| acc + v.recip());
        &self.alpha * &self.e[0] + &self.beta * tail
    }

    /// `alpha^2 beta sum e_i`.
    pub fn core(&self) -> BigRational {
        let sum = self.e.iter().fold(BigRational::zero(), |acc, v| acc + v);
        &self.alpha * &self.alpha * &self.beta * sum
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityReport {
    pub lhs: BigRational,
    pub lhs_cubed: BigRational,
    /// `constant * alpha^2 beta sum e_i`, the cube of the right side.
    pub rhs_cubed: BigRational,
    pub holds: bool,
    /// The right side multiplied by `r/(r+1)`.
    pub refined_rhs_cubed: BigRational,
    pub refined_holds: bool,
}

pub fn inequality_check(inst: &InequalityInstance, constant: &BigRational) -> InequalityReport {
    let lhs = inst.lhs();
    let lhs_cubed = &lhs * &lhs * &lhs;
    let rhs_cubed = constant * inst.core();
    let r = inst.r() as i64;
    let refined_rhs_cubed = &rhs_cubed * BigRational::new(r.into(), (r + 1).into());
    InequalityReport {
        holds: lhs_cubed >= rhs_cubed,
        refined_holds: lhs_cubed >= refined_rhs_cubed,
        lhs,
        lhs_cubed,
        rhs_cubed,
        refined_rhs_cubed,
    }
}

pub fn default_constant() -> BigRational {
    BigRational::new(27.into(), 4.into())
}

/// `(x*, inf)` with `x* = sqrt(2 beta r / alpha)` and
/// `inf = 3 * 2^{-2/3} (alpha^2 beta / (1 + 1/r))^{1/3}`.
pub fn inequality_infimum(alpha: f64, beta: f64, r: u32) -> Result<(f64, f64)> {
    if alpha <= 0.0 || beta <= 0.0 || r < 1 {
        return Err(Error::InvalidParameter("need alpha, beta > 0 and r >= 1".into()));
    }
    let r = r as f64;
    let x = (2.0 * beta * r / alpha).sqrt();
    let inf = 3.0 * 2f64.powf(-2.0 / 3.0) * (alpha * alpha * beta / (1.0 + 1.0 / r)).cbrt();
    Ok((x, inf))
}

/// `(alpha x0 + beta sum 1/x_i) / (sum x_i)^{1/3}`.
pub fn objective(alpha: f64, beta: f64, x: &[f64]) -> f64 {
    let num = alpha * x[0] + beta * x[1..].iter().map(|v| 1.0 / v).sum::<f64>();
    num / x.iter().sum::<f64>().cbrt()
}

fn golden<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > rel_tol * hi.abs().max(1e-300) {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    if fc <= fd {
        c
    } else {
        d
    }
}

/// Numerically minimize the objective over `{0 < x_i <= x_0}` by block
/// coordinate descent from a random admissible point: each `x_i` is
/// line-searched on `(0, x_0]`, then `x_0` together with the coordinates
/// pinned at it is line-searched on a log scale.
pub fn minimize_region<R: Rng>(alpha: f64, beta: f64, r: u32, rng: &mut R) -> (Vec<f64>, f64) {
    let n = r as usize + 1;
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
    let top = x.iter().cloned().fold(0.0, f64::max);
    x[0] = top;
    let mut prev = f64::INFINITY;
    for _ in 0..200 {
        for i in 1..n {
            let x0 = x[0];
            let mut trial = x.clone();
            let best = golden(
                |v| {
                    trial[i] = v;
                    objective(alpha, beta, &trial)
                },
                x0 * 1e-9,
                x0,
                1e-14,
            );
            x[i] = if best > x0 * (1.0 - 1e-8) { x0 } else { best };
        }
        let pinned: Vec<usize> = (0..n).filter(|&i| x[i] == x[0]).collect();
        let floor = (0..n).filter(|i| !pinned.contains(i)).map(|i| x[i]).fold(1e-12, f64::max);
        let eval = |lt: f64| {
            let mut y = x.clone();
            for &i in &pinned {
                y[i] = lt.exp();
            }
            objective(alpha, beta, &y)
        };
        let mut hi = x[0].ln() + 1.0;
        while eval(hi + 1.0) < eval(hi) {
            hi += 1.0;
        }
        let lt = golden(eval, floor.ln(), hi + 1.0, 1e-15);
        for &i in &pinned {
            x[i] = lt.exp();
        }
        let val = objective(alpha, beta, &x);
        if (prev - val).abs() <= 1e-15 * val {
            return (x, val);
        }
        prev = val;
    }
    let val = objective(alpha, beta, &x);
    (x, val)
}

/// Exact rational from a float, for building instances from samples.
pub fn rational_from_f64(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap_or_else(BigRational::one)
}

pub fn to_f64(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}
