use proptest::prelude::*;

use galilei::expr::{parse_field_expr, parse_parameter_expr};
use galilei::weyl::Weyl;
use galilei::{sym, Poly, Ring, SMatrix, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3)
        .prop_map(|(a, b, c, d)| Scalar::complex(Scalar::ratio(a, b), Scalar::ratio(c, d)))
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(a, b)| Scalar::ratio(a, b))
}

/// Laurent polynomials in three symbols with rational coefficients.
fn laurent() -> impl Strategy<Value = Poly> {
    let term = (rational(), -2i32..=3, -2i32..=2, 0i32..=2);
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        ts.into_iter().fold(Poly::zero(), |acc, (c, a, b, k)| {
            let mono =
                &(&Poly::var_pow(sym("nu"), a) * &Poly::var_pow(sym("mu"), b)) * &Poly::var_pow(sym("lambda1"), k);
            &acc + &mono.scale(&c)
        })
    })
}

fn coordinate_poly() -> impl Strategy<Value = Poly> {
    let term = (rational(), 0i32..=2, 0i32..=2, 0i32..=1);
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        ts.into_iter().fold(Poly::zero(), |acc, (c, a, b, k)| {
            let mono = &(&Poly::var_pow(sym("x1"), a) * &Poly::var_pow(sym("x2"), b)) * &Poly::var_pow(sym("x3"), k);
            &acc + &mono.scale(&c)
        })
    })
}

/// Small Weyl elements: sums of x^a p^b words with rational weights.
fn weyl() -> impl Strategy<Value = Weyl> {
    let word = (rational(), 0usize..3, 0u32..=2, 0usize..3, 0u32..=2);
    prop::collection::vec(word, 0..4).prop_map(|ws| {
        ws.into_iter().fold(Weyl::zero(), |acc, (c, xa, xe, pb, pe)| {
            let mut w = Weyl::scalar(c);
            for _ in 0..xe {
                w = &w * &Weyl::x(xa);
            }
            for _ in 0..pe {
                w = &w * &Weyl::p(pb);
            }
            &acc + &w
        })
    })
}

fn matrix(n: usize) -> impl Strategy<Value = SMatrix> {
    prop::collection::vec(scalar(), n * n).prop_map(move |v| SMatrix::from_fn(n, n, |r, c| v[r * n + c].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars_form_a_field(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn scalar_display_round_trips(a in scalar()) {
        prop_assert_eq!(Scalar::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn derivative_is_a_derivation(a in laurent(), b in laurent()) {
        let s = sym("nu");
        prop_assert_eq!((&a * &b).deriv(s), &(&a.deriv(s) * &b) + &(&a * &b.deriv(s)));
    }

    #[test]
    fn substitution_is_a_homomorphism(a in laurent(), b in laurent(), v in coordinate_poly()) {
        let s = sym("lambda1");
        prop_assert_eq!((&a * &b).subs(s, &v).unwrap(), &a.subs(s, &v).unwrap() * &b.subs(s, &v).unwrap());
    }

    #[test]
    fn parameter_expressions_round_trip(a in laurent()) {
        prop_assert_eq!(parse_parameter_expr(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn field_expressions_round_trip(a in coordinate_poly()) {
        prop_assert_eq!(parse_field_expr(&a.to_string(), 5).unwrap(), a);
    }

    #[test]
    fn weyl_products_associate(a in weyl(), b in weyl(), c in weyl()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn weyl_commutator_obeys_jacobi(a in weyl(), b in weyl(), c in weyl()) {
        let j = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a))) + &c.commutator(&a.commutator(&b));
        prop_assert!(j.is_zero());
        prop_assert_eq!(a.commutator(&b), -&b.commutator(&a));
    }

    #[test]
    fn momentum_acts_as_derivative(f in coordinate_poly(), a in 0usize..3) {
        // [p_a, f(x)] = −i ∂_a f
        let w = Weyl::from_field(&f).unwrap();
        let expect = Weyl::from_field(&f.deriv(sym(&format!("x{}", a + 1))).scale(&-Scalar::i())).unwrap();
        prop_assert_eq!(Weyl::p(a).commutator(&w), expect);
    }

    #[test]
    fn matrix_products_associate(a in matrix(3), b in matrix(3), c in matrix(3)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).adjoint(), b.adjoint().mul(&a.adjoint()));
        prop_assert_eq!(a.mul(&b).trace(), b.mul(&a).trace());
    }

    #[test]
    fn inverse_when_full_rank(a in matrix(3)) {
        match a.inverse() {
            Some(inv) => prop_assert_eq!(a.mul(&inv), SMatrix::identity(3)),
            None => prop_assert!(a.rank() < 3),
        }
    }

    #[test]
    fn ring_scalars_embed(a in scalar(), b in scalar()) {
        let (pa, pb) = (Poly::constant(a.clone()), Poly::constant(b.clone()));
        prop_assert_eq!(&pa * &pb, Poly::constant(&a * &b));
        prop_assert_eq!(<Poly as Ring>::one(), Poly::one());
    }
}
