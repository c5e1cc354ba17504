//! The constant `C4(delta, eps, J, D)` behind the Lehmer-type lower bound and
//! its grid maximization.

use crate::error::{Error, Result};

/// Relative slack used when comparing floating constants against published
/// decimal values.
pub const FLOAT_SLACK: f64 = 1e-12;

fn check_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {v} must lie in (0, 1)")))
    }
}

/// The two branches of the minimum, before the common prefactor.
pub fn c4_branches(delta: f64, eps: f64, j: f64, d: f64) -> (f64, f64) {
    let first = eps * eps * j * j * d.powf(4.0 / 3.0) / (12.0 + eps).powi(2);
    let denom = 2f64.powf(10.0 / 3.0) * (1.0 + eps).powf(2.0 / 3.0) + delta / (j * d.powf(2.0 / 3.0));
    let second = delta * delta / (denom * denom);
    (first, second)
}

pub fn c4_prefactor(delta: f64, eps: f64) -> f64 {
    (1.0 - delta) / (2f64.powf(7.0 / 3.0) * (1.0 + eps).powf(2.0 / 3.0))
}

pub fn c4_constant(delta: f64, eps: f64, j: f64, d: f64) -> Result<f64> {
    check_unit("delta", delta)?;
    check_unit("eps", eps)?;
    if j < 1.0 || d < 1.0 {
        return Err(Error::InvalidParameter(format!("J = {j} and D = {d} must be at least 1")));
    }
    let (a, b) = c4_branches(delta, eps, j, d);
    Ok(c4_prefactor(delta, eps) * a.min(b))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridOptimum {
    pub delta: f64,
    pub eps: f64,
    pub value: f64,
    pub grid_n: u32,
}

/// Maximize `C4(., ., J, D)` over `{i/n : 0 < i < n}^2`; ties go to the
/// smallest `delta`, then the smallest `eps`.
pub fn optimize_constant_grid(j: f64, d: f64, grid_n: u32) -> Result<GridOptimum> {
    if grid_n < 2 {
        return Err(Error::InvalidParameter("grid size must be at least 2".into()));
    }
    let n = grid_n as f64;
    let mut best = GridOptimum { delta: 0.0, eps: 0.0, value: f64::NEG_INFINITY, grid_n };
    for i in 1..grid_n {
        let delta = i as f64 / n;
        for k in 1..grid_n {
            let eps = k as f64 / n;
            let v = c4_constant(delta, eps, j, d)?;
            if v > best.value {
                best = GridOptimum { delta, eps, value: v, grid_n };
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_of_two_is_the_midpoint() {
        let g = optimize_constant_grid(1.0, 1.0, 2).unwrap();
        assert_eq!((g.delta, g.eps), (0.5, 0.5));
        assert_eq!(g.value, c4_constant(0.5, 0.5, 1.0, 1.0).unwrap());
    }

    #[test]
    fn vanishes_as_delta_tends_to_one() {
        let v = c4_constant(1.0 - 1e-9, 0.5, 1.0, 1.0).unwrap();
        assert!(v < 1e-12);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(c4_constant(0.0, 0.5, 1.0, 1.0).is_err());
        assert!(c4_constant(0.5, 1.0, 1.0, 1.0).is_err());
        assert!(c4_constant(0.5, 0.5, 0.5, 1.0).is_err());
    }

    #[test]
    fn dominated_by_larger_j_and_d() {
        for (delta, eps) in [(0.1, 0.9), (0.561, 0.508), (2.0 / 3.0, 0.02)] {
            let base = c4_constant(delta, eps, 1.0, 1.0).unwrap();
            for (j, d) in [(1.0, 2.0), (3.0, 1.0), (10.0, 7.0)] {
                assert!(c4_constant(delta, eps, j, d).unwrap() >= base);
            }
        }
    }
}
