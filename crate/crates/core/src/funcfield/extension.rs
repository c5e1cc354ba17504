use num_bigint::BigInt;
use num_rational::BigRational;

use super::factor;
use super::field::ConstantField;
use super::place::{order_at, residue, Place};
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// The extension `K = k(s)` of `F = k(t)` given by `t = phi(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionMap {
    phi: RationalFunction,
    degree: u64,
}

/// A place `w` of `K` over the place `v` of `F` with local index `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceOverData {
    pub w: Place,
    pub v: Place,
    pub e: u64,
}

impl ExtensionMap {
    pub fn new(phi: RationalFunction) -> Result<Self> {
        if phi.is_constant() {
            return Err(Error::InvalidExtension("phi must be nonconstant".into()));
        }
        let degree = phi.degree();
        Ok(ExtensionMap { phi, degree })
    }

    /// The trivial extension `t = s`.
    pub fn identity(field: ConstantField) -> Self {
        ExtensionMap { phi: RationalFunction::var(field), degree: 1 }
    }

    pub fn phi(&self) -> &RationalFunction {
        &self.phi
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Pull an element of `F` back to `K`.
    pub fn pull_back(&self, f: &RationalFunction) -> RationalFunction {
        f.compose(&self.phi)
    }

    /// The tower `F -> K -> L` where `L` is given over `K` by `s = inner(u)`.
    pub fn then(&self, inner: &ExtensionMap) -> ExtensionMap {
        ExtensionMap { phi: self.phi.compose(&inner.phi), degree: self.degree * inner.degree }
    }

    /// All places of `K` above `v`, with their local indices.
    pub fn places_over(&self, v: &Place) -> Result<Vec<PlaceOverData>> {
        let field = self.phi.field();
        let pulled = match v {
            Place::Finite(pi) => self.pull_back(&RationalFunction::from_poly(pi.clone())),
            Place::Infinite => self.phi.inv()?,
        };
        let mut out = Vec::new();
        for q in factor::irreducible_factors(pulled.numer())? {
            let w = Place::Finite(q);
            let e = order_at(&pulled, &w)? as u64;
            out.push(PlaceOverData { w, v: v.clone(), e });
        }
        let at_inf = order_at(&pulled, &Place::Infinite)?;
        if at_inf > 0 {
            out.push(PlaceOverData { w: Place::Infinite, v: v.clone(), e: at_inf as u64 });
        }
        debug_assert_eq!(
            out.iter().map(|d| d.e * d.w.degree()).sum::<u64>(),
            self.degree * v.degree(),
            "local degrees over {v:?} do not sum to [K:F] deg(v) over F_{}",
            field.characteristic()
        );
        Ok(out)
    }

    /// The place of `F` below `w` and the local index `e(w)`.
    pub fn place_below(&self, w: &Place) -> Result<PlaceOverData> {
        let field = self.phi.field();
        let ord_phi = order_at(&self.phi, w)?;
        if ord_phi < 0 {
            return Ok(PlaceOverData { w: w.clone(), v: Place::Infinite, e: (-ord_phi) as u64 });
        }
        let r = residue(&self.phi, w)?;
        let modulus = match w {
            Place::Finite(q) => q.clone(),
            Place::Infinite => Poly::x(field),
        };
        let mu = minimal_polynomial(&r, &modulus);
        let e = order_at(&self.pull_back(&RationalFunction::from_poly(mu.clone())), w)? as u64;
        Ok(PlaceOverData { w: w.clone(), v: Place::Finite(mu), e })
    }
}

/// Minimal polynomial over `F_p` of `r` in `F_p[s]/(modulus)`.
pub fn minimal_polynomial(r: &Poly, modulus: &Poly) -> Poly {
    let field = r.field();
    let d = modulus.degree().unwrap_or(0).max(1);
    // Row-reduce the powers 1, r, r^2, ... until one is dependent.
    let mut basis: Vec<(Vec<u64>, Vec<u64>)> = Vec::new(); // (reduced vector, combination)
    let mut pow = Poly::one(field);
    for k in 0..=d {
        let mut vec: Vec<u64> = (0..d).map(|i| pow.coeff(i)).collect();
        let mut comb = vec![0u64; d + 1];
        comb[k] = 1;
        for (bv, bc) in &basis {
            let pivot = bv.iter().position(|&c| c != 0).unwrap();
            if vec[pivot] != 0 {
                let m = field.mul(vec[pivot], field.inv(bv[pivot]));
                for i in 0..d {
                    vec[i] = field.sub(vec[i], field.mul(m, bv[i]));
                }
                for i in 0..=d {
                    comb[i] = field.sub(comb[i], field.mul(m, bc[i]));
                }
            }
        }
        if vec.iter().all(|&c| c == 0) {
            return Poly::from_coeffs(field, comb).monic();
        }
        basis.push((vec, comb));
        pow = pow.mul_mod(r, modulus);
    }
    unreachable!("d+1 vectors in a d-dimensional space are dependent")
}

/// The `F`-normalized Weil height: `h_K(f) / [K:F]` where `h_K(f)` is the
/// degree of `f` as a map to the projective line.
pub fn weil_height(f: &RationalFunction, ext: Option<&ExtensionMap>) -> BigRational {
    let d = ext.map_or(1, |e| e.degree());
    BigRational::new(BigInt::from(f.degree()), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::parse::parse_rational_function;

    fn f5() -> ConstantField {
        ConstantField::new(5).unwrap()
    }

    fn rf(s: &str, var: &str) -> RationalFunction {
        parse_rational_function(s, var, f5()).unwrap()
    }

    fn ext(s: &str) -> ExtensionMap {
        ExtensionMap::new(rf(s, "s")).unwrap()
    }

    #[test]
    fn square_map_over_t() {
        let e = ext("s^2");
        let over = e.places_over(&Place::Finite(rf("t", "t").numer().clone())).unwrap();
        assert_eq!(over.len(), 1);
        assert_eq!(over[0].w, Place::Finite(rf("s", "s").numer().clone()));
        assert_eq!(over[0].e, 2);
    }

    #[test]
    fn square_map_over_t_plus_one_splits() {
        let e = ext("s^2");
        let over = e.places_over(&Place::Finite(rf("t+1", "t").numer().clone())).unwrap();
        let ws: Vec<_> = over.iter().map(|d| (d.w.clone(), d.e)).collect();
        assert_eq!(
            ws,
            vec![
                (Place::Finite(rf("s+2", "s").numer().clone()), 1),
                (Place::Finite(rf("s-2", "s").numer().clone()), 1)
            ]
        );
    }

    #[test]
    fn square_map_over_infinity() {
        let over = ext("s^2").places_over(&Place::Infinite).unwrap();
        assert_eq!(over, vec![PlaceOverData { w: Place::Infinite, v: Place::Infinite, e: 2 }]);
    }

    #[test]
    fn place_below_inverts_places_over() {
        for phi in ["s^2", "s^3", "s^2+s", "(s^2+1)/(s-2)", "s^5"] {
            let e = ext(phi);
            for v in [
                Place::Infinite,
                Place::Finite(rf("t", "t").numer().clone()),
                Place::Finite(rf("t^2+2", "t").numer().clone()),
                Place::Finite(rf("t-3", "t").numer().clone()),
            ] {
                for d in e.places_over(&v).unwrap() {
                    assert_eq!(e.place_below(&d.w).unwrap(), d, "phi = {phi}");
                }
            }
        }
    }

    #[test]
    fn weil_heights() {
        assert_eq!(weil_height(&rf("t", "t"), None), BigRational::from_integer(1.into()));
        assert_eq!(weil_height(&rf("(t^3+1)/(t-2)", "t"), None), BigRational::from_integer(3.into()));
        let e = ext("s^2");
        assert_eq!(weil_height(&rf("s^2", "s"), Some(&e)), BigRational::from_integer(1.into()));
        assert_eq!(weil_height(&rf("3", "t"), None), BigRational::from_integer(0.into()));
    }
}
