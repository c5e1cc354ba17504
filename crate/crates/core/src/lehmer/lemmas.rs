//! The parallelogram inequality and the two local lemmas on spread-out
//! points.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::elliptic::{CurveModel, CurvePoint};
use crate::error::{Error, Result};
use crate::funcfield::Place;
use crate::heights::{canonical_height, local_height_with, ClosedForm};
use crate::reduction::{localize, LocalData};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelogramReport {
    /// `max h(P_i)`.
    pub lhs: BigRational,
    /// `sum_{j != k} h(P_j - P_k) / (2 (N+1)^2)`.
    pub rhs: BigRational,
    /// `mean h(P_i) - h(sum P_i)/(N+1)^2`, which equals `rhs`.
    pub identity_rhs: BigRational,
    pub holds: bool,
    pub equality: bool,
    /// All heights equal and the sum of the points torsion.
    pub analytic_equality: bool,
}

pub fn parallelogram_check(e: &CurveModel, points: &[CurvePoint]) -> Result<ParallelogramReport> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter("need at least two points".into()));
    }
    let n1 = rat(points.len() as i64);
    let hs: Vec<BigRational> = points.iter().map(|p| canonical_height(e, p)).collect::<Result<_>>()?;
    let lhs = hs.iter().max().cloned().unwrap_or_else(BigRational::zero);
    let mut sum = BigRational::zero();
    for (j, pj) in points.iter().enumerate() {
        for (k, pk) in points.iter().enumerate() {
            if j != k {
                sum += canonical_height(e, &e.sub(pj, pk)?)?;
            }
        }
    }
    let rhs = sum / (rat(2) * &n1 * &n1);
    let total = e.combination(&vec![1; points.len()], points)?;
    let h_total = canonical_height(e, &total)?;
    let mean = hs.iter().fold(BigRational::zero(), |a, h| a + h) / &n1;
    let identity_rhs = mean - &h_total / (&n1 * &n1);
    let analytic_equality = hs.iter().all(|h| h == &hs[0]) && h_total.is_zero();
    Ok(ParallelogramReport {
        holds: lhs >= rhs,
        equality: lhs == rhs,
        analytic_equality,
        lhs,
        rhs,
        identity_rhs,
    })
}

/// `lambda_w` in the normalization of the base place: `ord_w`-valued local
/// height divided by the local index.
pub fn normalized_local_height(e: &CurveModel, local: &LocalData, p: &CurvePoint) -> Result<BigRational> {
    Ok(local_height_with(&ClosedForm, e, local, p)?.value / rat(local.e as i64))
}

/// `ord_w(1/j)` divided by the local index, clamped at zero.
pub fn normalized_vj_inv(local: &LocalData) -> BigRational {
    BigRational::new(local.vj_inv.into(), (local.e as i64).into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadReport {
    pub place: Place,
    pub v_j_inv: BigRational,
    pub j_w: i64,
    /// `sum_{j != k} lambda_w(P_j - P_k)`.
    pub lhs: BigRational,
    /// `(1/12)((N+1)/J_w)^2 v - (N+1) v/12`.
    pub rhs: BigRational,
    pub holds: bool,
    /// At additive places, the same expression with `J_w` replaced by 2,
    /// `(N+1)(N-3) v/48`. It is weaker than `rhs` only when `J_w = 1`, where
    /// `rhs` can fail (a difference on the `beta` component of `I_1^*`).
    pub additive_rhs: Option<BigRational>,
    /// `lhs >= rhs`, or `lhs >= additive_rhs` where that is smaller.
    pub holds_weakest: bool,
}

pub fn spread_sum_bound(e: &CurveModel, w: &Place, points: &[CurvePoint]) -> Result<SpreadReport> {
    let local = localize(e, w)?;
    let (v, j_w) = (normalized_vj_inv(&local), local.j_w);
    if !v.is_positive() {
        return Err(Error::InvalidParameter(format!("ord(1/j) is not positive at {w:?}")));
    }
    let n1 = rat(points.len() as i64);
    let mut lhs = BigRational::zero();
    for (j, pj) in points.iter().enumerate() {
        for (k, pk) in points.iter().enumerate() {
            if j == k {
                continue;
            }
            let d = e.sub(pj, pk)?;
            if d.is_infinity() {
                return Err(Error::InvalidParameter("points must be distinct".into()));
            }
            lhs += normalized_local_height(e, &local, &d)?;
        }
    }
    let bound = |j: i64| {
        let ratio = &n1 / rat(j);
        &ratio * &ratio * &v / rat(12) - &n1 * &v / rat(12)
    };
    let rhs = bound(j_w);
    let additive_rhs = local.kodaira.is_additive().then(|| bound(2));
    let weakest = additive_rhs.iter().fold(rhs.clone(), |a, b| a.min(b.clone()));
    Ok(SpreadReport {
        place: w.clone(),
        holds: lhs >= rhs,
        holds_weakest: lhs >= weakest,
        additive_rhs,
        v_j_inv: v,
        j_w,
        lhs,
        rhs,
    })
}

/// `(1 - 1/A)/12 max(v(1/j), 0)`.
pub fn spread_threshold(v_j_inv: &BigRational, a: u32) -> BigRational {
    let a = rat(a as i64);
    let v = if v_j_inv.is_positive() { v_j_inv.clone() } else { BigRational::zero() };
    (rat(1) - a.recip()) / rat(12) * v
}

/// Indices of `N + 1` candidates whose pairwise differences all have local
/// height at least [`spread_threshold`] at `w`.
pub fn select_spread_subset(
    e: &CurveModel,
    w: &Place,
    candidates: &[CurvePoint],
    a: u32,
    n: usize,
) -> Result<Vec<usize>> {
    if a < 1 {
        return Err(Error::InvalidParameter("A must be at least 1".into()));
    }
    if candidates.len() < 6 * a as usize * n + 1 {
        return Err(Error::InvalidParameter(format!(
            "need at least {} candidates, got {}",
            6 * a as usize * n + 1,
            candidates.len()
        )));
    }
    let local = localize(e, w)?;
    let threshold = spread_threshold(&normalized_vj_inv(&local), a);
    let m = candidates.len();
    let mut adj = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let d = e.sub(&candidates[i], &candidates[j])?;
            if d.is_infinity() {
                return Err(Error::InvalidParameter("candidates must be distinct".into()));
            }
            let ok = normalized_local_height(e, &local, &d)? >= threshold;
            adj[i][j] = ok;
            adj[j][i] = ok;
        }
    }
    let mut chosen = Vec::new();
    if clique(&adj, n + 1, 0, &mut chosen) {
        Ok(chosen)
    } else {
        Err(Error::Infeasible)
    }
}

fn clique(adj: &[Vec<bool>], size: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == size {
        return true;
    }
    for i in start..adj.len() {
        if adj.len() - i < size - chosen.len() {
            return false;
        }
        if chosen.iter().all(|&c| adj[c][i]) {
            chosen.push(i);
            if clique(adj, size, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::funcfield::{parse_rational_function, ConstantField};

    fn place(p: u64, s: &str) -> Place {
        let f = ConstantField::new(p).unwrap();
        Place::finite(parse_rational_function(s, "t", f).unwrap().numer().clone()).unwrap()
    }

    #[test]
    fn opposite_pair_is_an_equality_case() {
        let e = catalog::e3();
        let p = catalog::e3_point();
        let r = parallelogram_check(&e, &[p.clone(), e.negate(&p)]).unwrap();
        assert_eq!(r.lhs, BigRational::new(1.into(), 2.into()));
        assert_eq!(r.rhs, r.lhs);
        assert!(r.equality && r.analytic_equality);
        let r = parallelogram_check(&e, &[p.clone(), e.double(&p).unwrap()]).unwrap();
        assert!(r.holds && !r.equality && !r.analytic_equality);
        assert_eq!(r.rhs, r.identity_rhs);
    }

    #[test]
    fn equal_points_give_zero() {
        let e = catalog::e3();
        let p = catalog::e3_point();
        let r = parallelogram_check(&e, &[p.clone(), p.clone(), p]).unwrap();
        assert!(r.rhs.is_zero());
        assert!(r.holds);
    }

    #[test]
    fn single_point_spread() {
        let e = catalog::e1();
        let w = place(5, "t^2+2");
        let r = spread_sum_bound(&e, &w, &[CurvePoint::Infinity]).unwrap();
        assert!(r.lhs.is_zero());
        assert!(!r.rhs.is_positive());
    }

    #[test]
    fn beta_difference_on_i1_star() {
        let e = catalog::e_m(7, 1);
        let (a, b) = (catalog::e_m_alpha_point(1), catalog::e_m_beta_point(1));
        let r = spread_sum_bound(&e, &place(7, "t"), &[a, b]).unwrap();
        assert_eq!(r.j_w, 1);
        assert_eq!(r.lhs, BigRational::new((-1).into(), 12.into()));
        assert_eq!(r.rhs, BigRational::new(1.into(), 6.into()));
        assert_eq!(r.additive_rhs, Some(r.lhs.clone()));
        assert!(!r.holds && r.holds_weakest);
    }

    #[test]
    fn good_place_rejected_by_spread_bound() {
        let e = catalog::e1();
        assert!(spread_sum_bound(&e, &place(5, "t"), &[]).is_err());
    }

    #[test]
    fn threshold_vanishes_for_a_one() {
        assert!(spread_threshold(&rat(3), 1).is_zero());
        assert!(spread_threshold(&rat(-3), 5).is_zero());
        assert_eq!(spread_threshold(&rat(1), 2), BigRational::new(1.into(), 24.into()));
    }
}
