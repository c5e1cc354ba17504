//! Factorization of polynomials over prime fields.
//!
//! Squarefree decomposition, distinct-degree splitting and randomized
//! equal-degree splitting (Cantor-Zassenhaus). Randomness comes from an
//! explicitly seeded ChaCha stream, so results are reproducible.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::ConstantField;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

static SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

/// Change the seed used by [`factor`]. Factorizations are returned in a
/// canonical order, so the seed affects running time but not results.
pub fn set_seed(seed: u64) {
    SEED.store(seed, Ordering::Relaxed);
}

pub fn seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}

/// `lc * prod(f_i ^ m_i)` with every `f_i` monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u64,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: ConstantField) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (f, m)| &acc * &f.pow(*m as u64))
    }
}

pub fn factor(f: &Poly) -> Result<Factorization> {
    factor_with_seed(f, seed())
}

pub fn factor_with_seed(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading_coeff();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (g, m) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                factors.push((irr, m));
            }
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().iter().rev().cmp(b.0.coeffs().iter().rev()))
    });
    Ok(Factorization { unit, factors })
}

/// Monic irreducible factors without multiplicities.
pub fn irreducible_factors(f: &Poly) -> Result<Vec<Poly>> {
    Ok(factor(f)?.factors.into_iter().map(|(g, _)| g).collect())
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with the
/// `g` squarefree, pairwise coprime, and `f = prod g^m`.
pub fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field();
    let p = field.characteristic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w);
    }
    if !c.is_one() {
        // c is a p-th power: c(x) = r(x^p) and r has p-th-root coefficients
        // equal to themselves over F_p.
        let root = Poly::from_coeffs(field, c.coeffs().iter().step_by(p as usize).copied().collect());
        for (g, m) in squarefree(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree splitting of a monic squarefree polynomial.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let p = field.characteristic() as u128;
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.deg_i64() >= 2 * d as i64 {
        h = h.pow_mod(p, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg_i64() > 0 {
        let n = rest.degree().unwrap();
        out.push((rest, n));
    }
    out
}

/// Split a monic squarefree product of degree-`d` irreducibles.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let p = field.characteristic();
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let a = Poly::from_coeffs(field, coeffs);
        if a.is_constant() {
            continue;
        }
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        let mut norm = Poly::one(field);
        let mut frob = a.rem(f);
        for _ in 0..d {
            norm = norm.mul_mod(&frob, f);
            frob = frob.pow_mod(p as u128, f);
        }
        let b = &norm.pow_mod(((p - 1) / 2) as u128, f) - &Poly::one(field);
        let g = b.gcd(f);
        if !g.is_one() && g.degree() != f.degree() {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.exact_div(&g), d, rng));
            return out;
        }
    }
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let field = f.field();
    let p = field.characteristic() as u128;
    let m = f.monic();
    let x = Poly::x(field);
    let frob_iter = |k: usize| -> Poly {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.pow_mod(p, &m);
        }
        h
    };
    if frob_iter(n) != x.rem(&m) {
        return false;
    }
    prime_divisors(n).into_iter().all(|q| (&frob_iter(n / q) - &x).gcd(&m).is_one())
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> ConstantField {
        ConstantField::new(5).unwrap()
    }

    #[test]
    fn s_squared_plus_one_splits_mod_5() {
        let f = f5();
        let fac = factor(&Poly::from_i64(f, &[1, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(Poly::from_i64(f, &[2, 1]), 1), (Poly::from_i64(f, &[-2, 1]), 1)]
        );
    }

    #[test]
    fn t_squared_plus_two_is_irreducible_mod_5() {
        let f = f5();
        // -2 = 3 is not among the squares {1, 4} mod 5
        let g = Poly::from_i64(f, &[2, 0, 1]);
        assert!(is_irreducible(&g));
        assert_eq!(factor(&g).unwrap().factors, vec![(g, 1)]);
    }

    #[test]
    fn cube_of_linear() {
        let f = f5();
        let l = Poly::from_i64(f, &[-1, 1]);
        let fac = factor(&l.pow(3)).unwrap();
        assert_eq!(fac.factors, vec![(l, 3)]);
    }

    #[test]
    fn pth_powers_and_mixed_multiplicities() {
        let f = f5();
        let a = Poly::from_i64(f, &[1, 1]);
        let b = Poly::from_i64(f, &[2, 0, 1]);
        let c = Poly::from_i64(f, &[1, 1, 0, 1]);
        let prod = &(&a.pow(5) * &b.pow(2)) * &c.pow(7);
        let fac = factor(&prod.scale(3)).unwrap();
        assert_eq!(fac.unit, 3);
        assert_eq!(fac.expand(f), prod.scale(3));
        for (g, _) in &fac.factors {
            assert!(is_irreducible(g));
        }
    }

    #[test]
    fn seed_does_not_change_the_result() {
        let f = f5();
        let g = Poly::from_i64(f, &[1, 0, 0, 0, 0, 0, 0, 0, -1]);
        let base = factor_with_seed(&g, DEFAULT_SEED).unwrap();
        for s in [1, 2, 99, u64::MAX] {
            assert_eq!(factor_with_seed(&g, s).unwrap(), base);
        }
        assert_eq!(base.factors.len(), 6);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(factor(&Poly::zero(f5())), Err(Error::ZeroPolynomial)));
    }
}
