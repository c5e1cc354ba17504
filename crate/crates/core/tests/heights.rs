use ffheights::catalog;
use ffheights::elliptic::{CurveModel, CurvePoint};
use ffheights::funcfield::{parse_rational_function, ConstantField, ExtensionMap};
use ffheights::heights::{canonical_height, global_height_with, height_limit_oracle, height_pairing, MethodRegistry};
use ffheights::search::find_points;
use num_rational::BigRational;
use num_traits::Signed;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ext(p: u64, phi: &str) -> ExtensionMap {
    ExtensionMap::new(parse_rational_function(phi, "s", ConstantField::new(p).unwrap()).unwrap()).unwrap()
}

#[test]
fn e3_golden_value() {
    let e = catalog::e3();
    let p = catalog::e3_point();
    assert_eq!(canonical_height(&e, &p).unwrap(), q(1, 2));
    // 4^{-n} h(x(2^n P)) is exactly 1 for this point
    let seq = height_limit_oracle(&e, &p, 5).unwrap();
    assert!(seq.iter().all(|v| v == &q(1, 1)), "{seq:?}");
    for m in 1..=5 {
        assert_eq!(canonical_height(&e, &e.multiply(m, &p).unwrap()).unwrap(), q(m * m, 2));
    }
}

#[test]
fn every_method_gives_the_same_global_height() {
    let registry = MethodRegistry::default();
    let cases: Vec<(CurveModel, CurvePoint)> = vec![
        (catalog::e3(), catalog::e3_point()),
        (catalog::e_m(7, 1), catalog::e_m_alpha_point(1)),
        (catalog::e_m(7, 5), catalog::e_m_beta_point(5)),
        (catalog::legendre_sextic().0, catalog::legendre_sextic().1[0].clone()),
    ];
    for (e, p) in cases {
        let hs: Vec<BigRational> = registry.iter().map(|m| global_height_with(m, &e, &p).unwrap().global).collect();
        assert!(hs.iter().all(|h| h == &hs[0]), "{hs:?}");
    }
}

/// Doubling sequence, halved: converges to the canonical height with error
/// `O(4^{-n})`.
#[test]
fn limit_oracle_converges_to_the_decomposition() {
    let mut cases = vec![(catalog::e3(), catalog::e3_point())];
    let tw = catalog::legendre_twist(5, "t+2");
    for p in find_points(&tw, 2, 8) {
        cases.push((tw.clone(), p));
    }
    for m in [1, 3] {
        cases.push((catalog::e_m(7, m), catalog::e_m_alpha_point(m)));
        cases.push((catalog::e_m(7, m), catalog::e_m_beta_point(m)));
    }
    for (e, p) in cases {
        let h = canonical_height(&e, &p).unwrap();
        let seq = height_limit_oracle(&e, &p, 4).unwrap();
        if seq.len() < 5 {
            assert_eq!(h, q(0, 1), "torsion point has height zero");
            continue;
        }
        let err = |n: usize| (&seq[n] / q(2, 1) - &h).abs();
        assert!(err(4) <= err(2), "{}: {:?} vs {h}", p.display_with("t"), seq);
        assert!(err(4) * q(256, 1) <= q(6, 1), "error bound");
    }
}

#[test]
fn base_change_preserves_the_height() {
    let cases: Vec<(CurveModel, CurvePoint)> = vec![
        (catalog::e3(), catalog::e3_point()),
        (catalog::e_m(7, 3), catalog::e_m_alpha_point(3)),
        (catalog::e_m(7, 3), catalog::e_m_beta_point(3)),
    ];
    for (e, p) in cases {
        let pf = e.field().characteristic();
        let h = canonical_height(&e, &p).unwrap();
        for phi in ["s", "s^2", "s^3", "s^2+s"] {
            let x = ext(pf, phi);
            let ek = e.base_change(&x).unwrap();
            let pk = e.base_change_point(&x, &p);
            assert_eq!(canonical_height(&ek, &pk).unwrap(), h, "phi = {phi}");
        }
        // a tower agrees with the composite extension
        let (a, b) = (ext(pf, "s^2"), ext(pf, "s^3+s"));
        let step = e.base_change(&a).unwrap();
        let tower = step.base_change(&b).unwrap();
        let direct = e.base_change(&a.then(&b)).unwrap();
        let pt = step.base_change_point(&b, &e.base_change_point(&a, &p));
        assert_eq!(tower.degree(), 6);
        assert_eq!(canonical_height(&tower, &pt).unwrap(), h);
        assert_eq!(canonical_height(&direct, &pt).unwrap(), h);
    }
}

#[test]
fn pairing_is_bilinear_on_the_rank_two_example() {
    let (e, g) = catalog::legendre_sextic();
    assert_eq!(canonical_height(&e, &g[0]).unwrap(), q(5, 36));
    assert_eq!(height_pairing(&e, &g[0], &g[1]).unwrap(), q(0, 1));
    let p = e.combination(&[2, -3], &g).unwrap();
    assert_eq!(canonical_height(&e, &p).unwrap(), q(5 * 13, 36));
    let seq = height_limit_oracle(&e, &g[0], 3).unwrap();
    let err = (&seq[3] / q(2, 1) - q(5, 36)).abs();
    assert!(err < q(1, 20), "{seq:?}");
}

#[test]
fn torsion_has_height_zero() {
    let e = catalog::legendre(5);
    for t in catalog::legendre_two_torsion(&e, "1") {
        assert_eq!(canonical_height(&e, &t).unwrap(), q(0, 1));
        assert!(ffheights::heights::is_torsion(&e, &t).unwrap());
    }
    assert!(!ffheights::heights::is_torsion(&catalog::e3(), &catalog::e3_point()).unwrap());
}
