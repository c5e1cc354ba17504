//! Division polynomials of `y^2 = x^3 + A x + B`.
//!
//! With `psi_m = f_m` for odd `m` and `psi_m = 2y f_m` for even `m`, the
//! `f_m` are polynomials in `x` alone and satisfy
//!
//! ```text
//! f_{2k+1} = F^2 f_{k+2} f_k^3 - f_{k-1} f_{k+1}^3      (k even)
//! f_{2k+1} = f_{k+2} f_k^3 - F^2 f_{k-1} f_{k+1}^3      (k odd)
//! f_{2k}   = f_k (f_{k+2} f_{k-1}^2 - f_{k-2} f_{k+1}^2)
//! ```
//!
//! where `F = 4(x^3 + A x + B) = psi_2^2`.

use std::collections::BTreeMap;

use super::CurveModel;
use crate::funcfield::RationalFunction;

/// A polynomial in `x` with coefficients in the function field, low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly(Vec<RationalFunction>);

impl XPoly {
    pub fn new(mut coeffs: Vec<RationalFunction>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &RationalFunction, zero: &RationalFunction) -> RationalFunction {
        self.0.iter().rev().fold(zero.clone(), |acc, c| &(&acc * x) + c)
    }

    fn add(&self, o: &XPoly) -> XPoly {
        let n = self.0.len().max(o.0.len());
        let z = self.0.first().or(o.0.first()).map(|c| RationalFunction::zero(c.field()));
        let Some(z) = z else { return XPoly(vec![]) };
        XPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    fn neg(&self) -> XPoly {
        XPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, o: &XPoly) -> XPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return XPoly(vec![]);
        }
        let z = RationalFunction::zero(self.0[0].field());
        let mut out = vec![z; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        XPoly::new(out)
    }
}

/// `psi_m`: `poly` for odd `m`, `psi_2 * poly` when `times_psi2` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionPolynomial {
    pub m: u64,
    pub poly: XPoly,
    pub times_psi2: bool,
}

impl DivisionPolynomial {
    /// `psi_m(x, y)` at an affine point.
    pub fn eval(&self, x: &RationalFunction, y: &RationalFunction) -> RationalFunction {
        let field = x.field();
        let v = self.poly.eval(x, &RationalFunction::zero(field));
        if self.times_psi2 {
            &(&RationalFunction::from_i64(field, 2) * y) * &v
        } else {
            v
        }
    }
}

/// Generic recurrence for `f_m` over any ring-like carrier.
fn f_rec<T: Clone>(
    m: u64,
    memo: &mut BTreeMap<u64, T>,
    big_f_sq: &T,
    mul: &dyn Fn(&T, &T) -> T,
    sub: &dyn Fn(&T, &T) -> T,
) -> T {
    if let Some(v) = memo.get(&m) {
        return v.clone();
    }
    let k = m / 2;
    let f = |i: u64, memo: &mut BTreeMap<u64, T>| f_rec(i, memo, big_f_sq, mul, sub);
    let cube = |v: &T| mul(&mul(v, v), v);
    let v = if m % 2 == 1 {
        let (fk2, fk, fk1m, fk1p) = (f(k + 2, memo), f(k, memo), f(k - 1, memo), f(k + 1, memo));
        let left = mul(&fk2, &cube(&fk));
        let right = mul(&fk1m, &cube(&fk1p));
        if k.is_multiple_of(2) {
            sub(&mul(big_f_sq, &left), &right)
        } else {
            sub(&left, &mul(big_f_sq, &right))
        }
    } else {
        let (fk, fk2, fk1m, fk2m, fk1p) = (f(k, memo), f(k + 2, memo), f(k - 1, memo), f(k - 2, memo), f(k + 1, memo));
        let inner = sub(&mul(&fk2, &mul(&fk1m, &fk1m)), &mul(&fk2m, &mul(&fk1p, &fk1p)));
        mul(&fk, &inner)
    };
    memo.insert(m, v.clone());
    v
}

fn seeds<T>(f3: T, f4: T, zero: T, one: T) -> BTreeMap<u64, T>
where
    T: Clone,
{
    BTreeMap::from([(0, zero), (1, one.clone()), (2, one), (3, f3), (4, f4)])
}

/// The `m`-th division polynomial of the short model of `e`.
pub fn division_polynomial(e: &CurveModel, m: u64) -> DivisionPolynomial {
    assert!(m >= 1, "division polynomials are indexed from 1");
    let field = e.field();
    let k = |v: i64| RationalFunction::from_i64(field, v);
    let (a, b) = (e.a(), e.b());
    let a2 = a * a;
    let f3 = XPoly::new(vec![-&a2, &k(12) * b, &k(6) * a, RationalFunction::zero(field), k(3)]);
    // 2(x^6 + 5A x^4 + 20B x^3 - 5A^2 x^2 - 4AB x - 8B^2 - A^3)
    let f4 = XPoly::new(
        vec![
            &(&k(-8) * &(b * b)) - &(&a2 * a),
            &k(-4) * &(a * b),
            &k(-5) * &a2,
            &k(20) * b,
            &k(5) * a,
            RationalFunction::zero(field),
            k(1),
        ]
        .into_iter()
        .map(|c| &k(2) * &c)
        .collect(),
    );
    let big_f = XPoly::new(vec![&k(4) * b, &k(4) * a, RationalFunction::zero(field), k(4)]);
    let big_f_sq = big_f.mul(&big_f);
    let mut memo = seeds(f3, f4, XPoly(vec![]), XPoly::new(vec![k(1)]));
    let poly = f_rec(m, &mut memo, &big_f_sq, &|p, q| p.mul(q), &|p, q| p.add(&q.neg()));
    DivisionPolynomial { m, poly, times_psi2: m.is_multiple_of(2) }
}

/// `psi_m(P)` for an affine point `(x, y)` on `y^2 = x^3 + a x + b`, by
/// running the recurrence on values.
pub fn psi_at(
    a: &RationalFunction,
    b: &RationalFunction,
    x: &RationalFunction,
    y: &RationalFunction,
    m: u64,
) -> RationalFunction {
    let field = x.field();
    let k = |v: i64| RationalFunction::from_i64(field, v);
    let x2 = x * x;
    let a2 = a * a;
    let f3 = &(&(&(&k(3) * &(&x2 * &x2)) + &(&(&k(6) * a) * &x2)) + &(&(&k(12) * b) * x)) - &a2;
    let f4 = {
        let x3 = &x2 * x;
        let terms = [
            &x3 * &x3,
            &(&k(5) * a) * &(&x2 * &x2),
            &(&k(20) * b) * &x3,
            &(&k(-5) * &a2) * &x2,
            &(&k(-4) * &(a * b)) * x,
            &k(-8) * &(b * b),
            -&(&a2 * a),
        ];
        &k(2) * &terms.iter().fold(k(0), |acc, t| &acc + t)
    };
    let psi2 = &k(2) * y;
    let big_f = &psi2 * &psi2;
    let big_f_sq = &big_f * &big_f;
    let mut memo = seeds(f3, f4, k(0), k(1));
    let f = f_rec(m, &mut memo, &big_f_sq, &|p, q| p * q, &|p, q| p - q);
    if m.is_multiple_of(2) {
        &psi2 * &f
    } else {
        f
    }
}
