use galilei::catalog::{bispinor_lambda, d311, levy_leblond};
use galilei::interaction::*;
use galilei::weyl::{normal_order, FieldConfig, Gen, TruncationSpec, Weyl};
use galilei::{sym, Poly, SMatrix, Scalar};

fn p(name: &str) -> Poly {
    Poly::sym(name)
}

fn q(n: i64, d: i64) -> Poly {
    Poly::constant(Scalar::ratio(n, d))
}

fn spinor() -> galilei::beta::BetaSystem {
    levy_leblond(&Poly::zero(), &Poly::zero()).unwrap()
}

fn fields() -> FieldConfig {
    FieldConfig::symbolic(true)
}

/// `Λ = νβ₀ + μχ` on the bispinor carrier.
fn spinor_coupling(fc: &FieldConfig, l1: &Poly, l2: &Poly) -> CoupledOperator {
    let ll = spinor();
    let lam = ll.beta0().rmul(&p("nu")).add(&bispinor_lambda().to_poly().rmul(&p("mu")));
    couple_anomalous(&ll, fc, &lam, l1, l2).unwrap()
}

fn vector_coupling(nu: &Poly, l1: &Poly, l2: &Poly) -> CoupledOperator {
    let d = d311(nu).unwrap();
    couple_anomalous(&d, &fields(), d.beta0(), l1, l2).unwrap()
}

fn none() -> TruncationSpec {
    TruncationSpec::none()
}

#[test]
fn normal_ordering_moves_momenta_right() {
    let w = normal_order(&[Gen::P(0), Gen::X(0)]);
    let expect = &(&Weyl::x(0) * &Weyl::p(0)) - &Weyl::scalar(Scalar::i());
    assert_eq!(w, expect);
    assert_eq!(Weyl::p(0).commutator(&Weyl::x(0)), Weyl::scalar(-Scalar::i()));
    assert!(Weyl::p0().commutator(&Weyl::x(2)).is_zero());
}

#[test]
fn momentum_commutators_give_field_tensor() {
    let fc = fields();
    let ef = field_commutators(&fc).unwrap();
    let f = fc.field_tensor();
    for m in 0..5 {
        for n in 0..5 {
            let expect = Weyl::from_field(&(&fc.charge * f.get(m, n))).unwrap();
            assert_eq!(*ef.get(m, n), expect, "entry ({m},{n})");
        }
    }
}

#[test]
fn zero_charge_decouples() {
    let neutral = couple_minimal(&spinor(), &fields().with_charge(Poly::zero())).unwrap();
    let free = couple_minimal(&spinor(), &FieldConfig::free()).unwrap();
    assert_eq!(neutral.operator, free.operator);
}

#[test]
fn vanishing_pauli_constants_leave_minimal_coupling() {
    let fc = fields();
    let anomalous = spinor_coupling(&fc, &Poly::zero(), &Poly::zero());
    assert_eq!(anomalous.operator, couple_minimal(&spinor(), &fc).unwrap().operator);
}

#[test]
fn inadmissible_lambda_is_rejected() {
    let ll = spinor();
    let lam = SMatrix::identity(4).to_poly();
    let err = couple_anomalous(&ll, &fields(), &lam, &p("lambda1"), &p("lambda2")).unwrap_err();
    assert!(err.to_string().contains("Lambda"));
}

#[test]
fn spinor_minimal_coupling_gives_g_two() {
    let r = reduce(&couple_minimal(&spinor(), &fields()).unwrap(), None, &none()).unwrap();
    assert!(r.exact);
    assert_eq!(r.kept, vec![0, 1]);
    assert_eq!(r.fit.get("schrodinger"), Poly::one());
    assert_eq!(r.g(), Poly::int(2));
    for name in ["spin_electric", "spin_orbit", "darwin", "magnetic_square"] {
        assert!(r.fit.get(name).is_zero(), "{name}");
    }
}

#[test]
fn spinor_anomalous_coupling_is_exact_and_affine() {
    let r = reduce(&spinor_coupling(&fields(), &p("lambda1"), &p("lambda2")), None, &none()).unwrap();
    assert!(r.exact);
    let l3 = &p("mu") * &p("lambda2");
    let g = &Poly::int(2) + &(&(&p("mu") * &p("lambda1")) + &(&p("nu") * &p("lambda2"))).scale(&Scalar::int(2));
    assert_eq!(r.g(), g);
    // −(eλ₃/2m)σ·F with F = E + (Π×H − H×Π)/2m
    assert_eq!(r.fit.get("spin_electric"), -&l3);
    assert_eq!(r.fit.get("spin_magnetic_orbit"), -&l3);
    assert_eq!(r.fit.get("magnetic_square"), &(&l3 * &l3) * &q(-1, 8));
}

#[test]
fn spinor_anomalous_g_matches_quoted_affine_law() {
    let r = reduce(&spinor_coupling(&fields(), &p("lambda1"), &p("lambda2")), None, &none()).unwrap();
    let quoted = &Poly::int(2) + &(&(&p("mu") * &p("lambda1")) + &(&p("nu") * &p("lambda2")));
    assert_eq!(r.g(), quoted);
}

#[test]
fn vector_anomalous_coupling_coefficients() {
    let nu = p("nu");
    let r = reduce(&vector_coupling(&nu, &p("lambda1"), &p("lambda2")), None, &none()).unwrap();
    assert!(r.exact);
    assert_eq!(r.kept, vec![0, 1, 2]);
    let inv = Poly::var_pow(sym("nu"), -1);
    assert_eq!(r.fit.get("rest_energy"), &(&nu * &nu) * &q(-1, 2));
    assert_eq!(r.g(), &(&Poly::one() - &(&p("lambda1") * &inv)) + &p("lambda2").scale(&Scalar::int(2)));
    let half_q = &(&p("lambda2") - &Poly::one()) * &(&inv * &q(1, 2));
    assert_eq!(r.fit.get("spin_electric"), half_q);
    assert_eq!(r.fit.get("spin_magnetic_orbit"), half_q);
    let inv2 = &inv * &inv;
    assert_eq!(r.fit.get("magnetic_square"), &inv2 * &q(-1, 2));
    assert_eq!(r.fit.get("spin_magnetic_square"), &inv2 * &q(1, 2));
}

#[test]
fn vector_anomalous_g_and_q_match_quoted_values() {
    let nu = p("nu");
    let r = reduce(&vector_coupling(&nu, &p("lambda1"), &p("lambda2")), None, &none()).unwrap();
    let g = &(&Poly::one() + &p("lambda1").scale(&Scalar::int(2))) + &p("lambda2").scale(&Scalar::int(2));
    assert_eq!(r.g(), g);
    // Hamiltonian term +(qe/νm)s·E with q = 1 − λ₂
    let qv = &Poly::one() - &p("lambda2");
    assert_eq!(r.fit.get("spin_electric"), -&(&qv * &Poly::var_pow(sym("nu"), -1)));
}

#[test]
fn constant_fields_have_no_derivative_terms() {
    let fc = FieldConfig::symbolic(false);
    let d = d311(&p("nu")).unwrap();
    let r =
        reduce(&couple_anomalous(&d, &fc, d.beta0(), &p("lambda1"), &p("lambda2")).unwrap(), None, &none()).unwrap();
    assert!(r.exact);
    for name in ["darwin", "electric_quadrupole", "magnetic_quadrupole"] {
        assert!(r.fit.get(name).is_zero(), "{name}");
    }
}

/// `λ̃₁ + λ̃₂ = −1` with `λ₃ = μλ₂` kept symbolic.
fn spinor_orbit_slice() -> SpinOrbitReport {
    let (mu, nu, l3) = (p("mu"), p("nu"), p("lambda3"));
    let minv = Poly::var_pow(sym("mu"), -1);
    let l2 = &l3 * &minv;
    let l1 = -&(&(&Poly::one() + &(&nu * &l2)) * &minv);
    let co = spinor_coupling(&fields(), &l1, &l2);
    assert_eq!(&mu * &l2, l3);
    spin_orbit_expand(&co, None, &TruncationSpec::new(&[("lambda3", 2), ("e", 1)])).unwrap()
}

#[test]
fn spinor_slice_gives_spin_orbit_and_darwin() {
    let r = spinor_orbit_slice();
    assert!(r.exact);
    let l3sq = &p("lambda3") * &p("lambda3");
    assert!(r.reduction.g().is_zero());
    assert_eq!(r.kappa, -&p("lambda3"));
    assert!(r.fit.get("spin_electric").is_zero());
    // −(eλ₃²/8m²)σ·(π×E − E×π) with π = −Π
    assert_eq!(r.fit.get("spin_orbit"), &l3sq * &q(1, 4));
    assert!(!r.fit.get("darwin").is_zero());
    // Darwin over spin-orbit is −(2/3)s(s+1)
    assert_eq!(r.fit.get("darwin"), &l3sq * &q(-1, 8));
}

#[test]
fn spinor_slice_darwin_sign_matches_quoted() {
    let r = spinor_orbit_slice();
    let l3sq = &p("lambda3") * &p("lambda3");
    assert_eq!(r.fit.get("darwin"), &l3sq * &q(1, 8));
}

#[test]
fn spin_orbit_expansion_requires_truncation() {
    let co = spinor_coupling(&fields(), &p("lambda1"), &p("lambda2"));
    assert!(spin_orbit_expand(&co, None, &none()).is_err());
}

fn inverse_nu() -> Poly {
    Poly::var_pow(sym("nuinv"), -1)
}

fn vector_slice(l1: Poly, l2: Poly) -> SpinOrbitReport {
    let co = vector_coupling(&inverse_nu(), &l1, &l2);
    spin_orbit_expand(&co, None, &TruncationSpec::new(&[("nuinv", 2), ("e", 1)])).unwrap()
}

#[test]
fn vector_quadrupole_slice() {
    let r = vector_slice(q(1, 2), Poly::int(-1));
    assert!(r.exact);
    let e2 = &p("nuinv") * &p("nuinv");
    assert!(r.fit.get("spin_electric").is_zero());
    let so = r.fit.get("spin_orbit");
    let quad = r.fit.get("electric_quadrupole");
    assert!(!quad.is_zero());
    assert_eq!(so, &e2 * &q(1, 4));
    assert_eq!(quad, &e2 * &q(-1, 4));
    // the 4/3 div E companion
    assert_eq!(r.fit.get("darwin"), &so * &q(-4, 3));
}

#[test]
fn vector_quadrupole_slice_matches_quoted_coefficients() {
    let r = vector_slice(q(1, 2), Poly::int(-1));
    let e2 = &p("nuinv") * &p("nuinv");
    assert_eq!(r.fit.get("spin_orbit"), e2.scale(&Scalar::int(2)));
    assert_eq!(r.fit.get("electric_quadrupole"), e2.scale(&Scalar::int(-2)));
    assert_eq!(r.fit.get("darwin"), &e2 * &q(-8, 3));
}

#[test]
fn vector_electric_free_slice_quoted_values() {
    let r = vector_slice(q(-1, 2), Poly::one());
    assert!(r.kappa.is_zero());
    assert!(r.fit.get("spin_electric").is_zero());
    assert_eq!(r.reduction.g(), Poly::int(2));
}

#[test]
fn vector_electric_free_slice_with_g_two() {
    // q = 0 needs λ₂ = 1; g = 2 then fixes λ₁ = ν
    let r = vector_slice(inverse_nu(), Poly::one());
    assert!(r.exact);
    assert!(r.kappa.is_zero());
    assert_eq!(r.reduction.g(), Poly::int(2));
    for name in ["spin_electric", "spin_orbit", "darwin", "electric_quadrupole"] {
        assert!(r.fit.get(name).is_zero(), "{name}");
    }
}

#[test]
fn proca_with_constant_fields_gives_g_two() {
    let r = proca_interacting(&p("lambda"), &FieldConfig::symbolic(false)).unwrap();
    assert!(r.psi4_vanishes);
    assert!(r.reduction.exact);
    assert_eq!(r.g(), Poly::int(2));
    assert_eq!(r.reduction.fit.get("schrodinger"), Poly::one());
    for name in ["spin_electric", "spin_orbit", "spin_magnetic_orbit", "magnetic_square"] {
        assert!(r.reduction.fit.get(name).is_zero(), "{name}");
    }
    // π_mŴᵐ = λm²ψ⁴
    let lm2 = &p("lambda") * &(&p("m") * &p("m"));
    for (k, d) in r.divergence.iter().enumerate() {
        let expect = if k == 4 { Weyl::central(lm2.clone()) } else { Weyl::zero() };
        assert_eq!(*d, expect, "column {k}");
    }
}

#[test]
fn proca_with_field_gradient_keeps_g_two() {
    let r = proca_interacting(&p("lambda"), &fields()).unwrap();
    assert!(r.psi4_vanishes);
    assert_eq!(r.g(), Poly::int(2));
}

#[test]
fn proca_needs_a_mass_term() {
    assert!(proca_interacting(&Poly::zero(), &fields()).is_err());
}

#[test]
fn reports_serialize_deterministically() {
    let r = reduce(&couple_minimal(&spinor(), &fields()).unwrap(), None, &none()).unwrap();
    assert_eq!(r.to_json().to_string(), r.to_json().to_string());
    assert!(r.to_json().get("g").is_some());
}
