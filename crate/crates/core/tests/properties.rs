use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use superdensity::cohomology::{build_ansatz, bi_from_coords};
use superdensity::contact::{contact_bracket, field_apply};
use superdensity::densities::lie_derivative;
use superdensity::diffop::BiDiffOp;
use superdensity::parse::parse_superpoly;
use superdensity::scalars::{AlgebraicScalar, ParamPoly, QuadraticField, Rational, Ring, UPoly};
use superdensity::superpoly::{monomials, Mono, SuperPoly};

fn big(r: &Rational) -> BigRational {
    r.to_string().parse().unwrap()
}

fn rat() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(a, b)| Rational::frac(a, b))
}

fn wide_rat() -> impl Strategy<Value = (i64, i64)> {
    (any::<i64>(), any::<i64>().prop_filter("nonzero", |d| *d != 0))
}

/// A parity-homogeneous polynomial with x-degree ≤ 3.
fn homogeneous(n: u8, odd: bool) -> impl Strategy<Value = SuperPoly<Rational>> {
    let mons: Vec<Mono> = monomials(n, 3).into_iter().filter(|m| (m.parity() == 1) == odd).collect();
    let k = mons.len();
    prop::collection::vec((0..k, rat()), 1..4)
        .prop_map(move |ts| SuperPoly::from_terms(n, ts.into_iter().map(|(i, c)| (mons[i], c)).collect()))
}

fn any_homogeneous() -> impl Strategy<Value = (u8, bool, bool, bool)> {
    (0u8..=2, any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(n, a, b, c)| (n, n > 0 && a, n > 0 && b, n > 0 && c))
}

fn triple() -> impl Strategy<Value = (SuperPoly<Rational>, SuperPoly<Rational>, SuperPoly<Rational>)> {
    any_homogeneous().prop_flat_map(|(n, a, b, c)| (homogeneous(n, a), homogeneous(n, b), homogeneous(n, c)))
}

fn sgn(p: SuperPoly<Rational>, odd: bool) -> SuperPoly<Rational> {
    if odd {
        p.neg()
    } else {
        p
    }
}

fn par(p: &SuperPoly<Rational>) -> u32 {
    p.parity().bit().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rational_arithmetic_matches_bigrational((a, b) in wide_rat(), (c, d) in wide_rat()) {
        let (x, y) = (Rational::frac(a, b), Rational::frac(c, d));
        let (bx, by) = (BigRational::new(BigInt::from(a), BigInt::from(b)), BigRational::new(BigInt::from(c), BigInt::from(d)));
        prop_assert_eq!(big(&(&x + &y)), &bx + &by);
        prop_assert_eq!(big(&(&x - &y)), &bx - &by);
        prop_assert_eq!(big(&(&x * &y)), &bx * &by);
        if c != 0 {
            prop_assert_eq!(big(&(&x / &y)), &bx / &by);
        }
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
    }

    #[test]
    fn quadratic_inverse(a in rat(), b in rat()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let f = QuadraticField::new(&UPoly::from_ints(&[3, 10, 2])).unwrap();
        let v = AlgebraicScalar::new(&f, a, b);
        let one = v.checked_mul(&v.checked_inv().unwrap()).unwrap();
        prop_assert_eq!(one, AlgebraicScalar::rational(Rational::ONE));
    }

    #[test]
    fn supercommutative_product((f, g, _) in triple()) {
        let lhs = f.mul(&g).unwrap();
        let rhs = sgn(g.mul(&f).unwrap(), par(&f) * par(&g) == 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eta_squares_to_minus_dx((f, _, _) in triple()) {
        for i in 1..=f.n() {
            prop_assert_eq!(f.eta(i).unwrap().eta(i).unwrap(), f.d_x().neg());
        }
    }

    #[test]
    fn bracket_antisymmetry((f, g, _) in triple()) {
        let lhs = contact_bracket(&f, &g).unwrap();
        let rhs = sgn(contact_bracket(&g, &f).unwrap(), par(&f) * par(&g) == 0);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_jacobi((f, g, h) in triple()) {
        let lhs = contact_bracket(&f, &contact_bracket(&g, &h).unwrap()).unwrap();
        let a = contact_bracket(&contact_bracket(&f, &g).unwrap(), &h).unwrap();
        let b = sgn(contact_bracket(&g, &contact_bracket(&f, &h).unwrap()).unwrap(), par(&f) * par(&g) == 1);
        prop_assert_eq!(lhs, a.add(&b).unwrap());
    }

    #[test]
    fn fields_represent_the_bracket((f, g, h) in triple()) {
        let fg = contact_bracket(&f, &g).unwrap();
        let lhs = field_apply(&fg, &h).unwrap();
        let rhs = field_apply(&f, &field_apply(&g, &h).unwrap()).unwrap()
            .sub(&sgn(field_apply(&g, &field_apply(&f, &h).unwrap()).unwrap(), par(&f) * par(&g) == 1)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn density_action_is_a_representation((f, g, p) in triple(), lam in rat()) {
        let ld = |a: &SuperPoly<Rational>, b: &SuperPoly<Rational>| lie_derivative(&lam, a, b).unwrap();
        let lhs = ld(&f, &ld(&g, &p)).sub(&sgn(ld(&g, &ld(&f, &p)), par(&f) * par(&g) == 1)).unwrap();
        prop_assert_eq!(lhs, ld(&contact_bracket(&f, &g).unwrap(), &p));
    }

    #[test]
    fn print_parse_round_trip((f, _, _) in triple()) {
        let p = f.map_coeffs(|c| ParamPoly::constant(c.clone()));
        prop_assert_eq!(parse_superpoly(&p.to_text(), Some(p.n())).unwrap(), p);
    }

    #[test]
    fn operator_json_round_trip(n in 0u8..=2, twice in 0u32..6, seed in prop::collection::vec(-5i64..5, 64)) {
        let a = build_ansatz(n, twice, n as u32).unwrap();
        let coords: Vec<ParamPoly> = (0..a.len()).map(|i| ParamPoly::from_int(seed[i % seed.len()])).collect();
        let lam = ParamPoly::named("lambda");
        let mu = lam.add_ref(&ParamPoly::from_int(1));
        let j = BiDiffOp::new(bi_from_coords(&a, &coords), ParamPoly::from_int(-1), lam, mu);
        let text = serde_json::to_string(&j.to_json()).unwrap();
        let back = BiDiffOp::<ParamPoly>::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, j);
    }
}
