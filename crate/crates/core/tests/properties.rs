use duursma_core::exact::{int, mod_p_residue, padic_valuation, parse_rational, rat, rational_to_string};
use duursma_core::group::{is_invariant_under, substitute};
use duursma_core::poly::compose_t_over_one_minus_t;
use duursma_core::theta::th_map_poly;
use duursma_core::{
    h1, load_enumerator, normalized_eisenstein, store_enumerator, zeta_via_linear_system,
    zeta_via_series, FormalWeightEnumerator, GaussianRational, HomogBivariate, Rational,
    TruncatedSeries, UniPoly, Valuation,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=30).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn poly(max_len: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(UniPoly::new)
}

fn enumerator() -> impl Strategy<Value = FormalWeightEnumerator> {
    (1usize..=10)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(rational(), n), 1..=n, nonzero_rational()))
        .prop_map(|(n, mut rest, d, lead)| {
            rest[d - 1] = lead;
            let mut coeffs = vec![int(1)];
            coeffs.extend(rest);
            debug_assert_eq!(coeffs.len(), n + 1);
            FormalWeightEnumerator::new(coeffs).unwrap()
        })
}

const PRIMES: [u64; 5] = [2, 3, 5, 7, 97];

proptest! {
    #[test]
    fn valuation_is_additive(x in nonzero_rational(), y in nonzero_rational(), k in 0usize..5) {
        let p = PRIMES[k];
        let vx = padic_valuation(&x, p).unwrap().finite().unwrap();
        let vy = padic_valuation(&y, p).unwrap().finite().unwrap();
        prop_assert_eq!(padic_valuation(&(&x * &y), p).unwrap(), Valuation::Finite(vx + vy));
    }

    #[test]
    fn valuation_is_ultrametric(x in rational(), y in rational(), k in 0usize..5) {
        let p = PRIMES[k];
        let vx = padic_valuation(&x, p).unwrap();
        let vy = padic_valuation(&y, p).unwrap();
        prop_assert!(padic_valuation(&(&x + &y), p).unwrap() >= vx.min(vy));
    }

    #[test]
    fn reduction_is_a_ring_map(x in rational(), y in rational(), k in 1usize..5) {
        let p = PRIMES[k];
        if let (Ok(a), Ok(b)) = (mod_p_residue(&x, p), mod_p_residue(&y, p)) {
            prop_assert_eq!(mod_p_residue(&(&x + &y), p).unwrap(), (a + b) % p);
            prop_assert_eq!(mod_p_residue(&(&x * &y), p).unwrap(), (a * b) % p);
        }
    }

    #[test]
    fn rational_strings_round_trip(x in rational()) {
        prop_assert_eq!(parse_rational(&rational_to_string(&x)).unwrap(), x);
    }

    #[test]
    fn gaussian_norm_is_multiplicative(a in gaussian(), b in gaussian()) {
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(&a * &inv, GaussianRational::one());
        }
    }

    #[test]
    fn series_inverse(p in poly(8), c in nonzero_rational(), order in 0usize..12) {
        let mut coeffs = p.to_series(order).coeffs().to_vec();
        coeffs[0] = c;
        let s = TruncatedSeries::new(coeffs, order);
        let inv = s.invert().unwrap();
        prop_assert_eq!(&s * &inv, TruncatedSeries::constant(Rational::one(), order));
    }

    #[test]
    fn poly_and_series_products_agree(a in poly(7), b in poly(7), order in 0usize..16) {
        let prod = (&a * &b).to_series(order);
        prop_assert_eq!(prod, &a.to_series(order) * &b.to_series(order));
    }

    #[test]
    fn composition_is_linear(a in poly(7), b in poly(7), order in 0usize..12) {
        let lhs = compose_t_over_one_minus_t(&(&a + &b), order);
        let rhs = &compose_t_over_one_minus_t(&a, order) + &compose_t_over_one_minus_t(&b, order);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_matches_horner(a in poly(6), order in 0usize..10) {
        let mut sub = vec![Rational::one(); order + 1];
        sub[0] = Rational::zero();
        let sub = TruncatedSeries::new(sub, order);
        let mut power = TruncatedSeries::constant(Rational::one(), order);
        let mut expected = TruncatedSeries::zero(order);
        for c in a.coeffs() {
            expected = &expected + &power.scale(c);
            power = &power * &sub;
        }
        prop_assert_eq!(compose_t_over_one_minus_t(&a, order), expected);
    }

    #[test]
    fn division_identity(a in poly(9), b in poly(5)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn zeta_routes_agree(f in enumerator(), qn in 2i64..6, qd in 1i64..3) {
        let q = rat(qn, qd);
        prop_assume!(q != int(1));
        let a = zeta_via_linear_system(&f, &q).unwrap();
        let b = zeta_via_series(&f, &q).unwrap();
        prop_assert_eq!(a.poly, b.poly);
    }

    #[test]
    fn enumerator_documents_round_trip(f in enumerator()) {
        prop_assert_eq!(load_enumerator(&store_enumerator(&f)).unwrap(), f);
    }

    #[test]
    fn theta_map_is_multiplicative(a in prop::collection::vec(-5i64..=5, 1..5), b in prop::collection::vec(-5i64..=5, 1..5)) {
        let fa = HomogBivariate::from_ints(&a).unwrap();
        let fb = HomogBivariate::from_ints(&b).unwrap();
        let order = 30;
        let lhs = th_map_poly(&(&fa * &fb), order);
        let (ta, tb) = (th_map_poly(&fa, order), th_map_poly(&fb, order));
        let product = &TruncatedSeries::new(ta.coeffs().to_vec(), order)
            * &TruncatedSeries::new(tb.coeffs().to_vec(), order);
        prop_assert_eq!(lhs.coeffs(), product.coeffs());
    }
}

#[test]
fn eisenstein_polynomials_are_invariant() {
    let g = h1();
    for ell in [8, 12, 16, 24] {
        let f = normalized_eisenstein(ell).unwrap();
        for m in g.elements() {
            assert!(is_invariant_under(f.as_bivariate(), m), "ell={ell}");
        }
    }
    let probe = HomogBivariate::from_ints(&[1, 1, 0, 0]).unwrap();
    assert!(g.elements().iter().any(|m| !is_invariant_under(&probe, m)));
    assert_eq!(substitute(&probe, &g.elements()[0]).len(), 4);
}
