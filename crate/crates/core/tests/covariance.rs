use galilei::beta::verify_conditions;
use galilei::catalog::{self, d311, levy_leblond, NAMES};
use galilei::covariance::*;
use galilei::reps::{build, RepLabel};
use galilei::{PMatrix, Poly, SMatrix, Scalar};

fn v() -> [Poly; 3] {
    velocity()
}

fn neg(v: &[Poly; 3]) -> [Poly; 3] {
    [0, 1, 2].map(|a| -&v[a])
}

#[test]
fn spinor_boost_is_linear() {
    let rep = build(RepLabel::Spinor(2)).unwrap();
    let t = group_element(&rep, &BoostParams::boost(v())).unwrap();
    let expect = PMatrix::identity(4).add(&rep.eta_dot(&v()).rmul(&Poly::constant(Scalar::i())));
    assert_eq!(t, expect);
}

#[test]
fn zero_parameters_give_identity() {
    for l in RepLabel::all_base() {
        let rep = build(l).unwrap();
        let z = [Poly::zero(), Poly::zero(), Poly::zero()];
        assert_eq!(group_element(&rep, &BoostParams::boost(z)).unwrap(), PMatrix::identity(rep.dim()));
    }
}

#[test]
fn vector_carrier_boost_is_five_vector_law() {
    let rep = build(RepLabel::vector(1, 2, 1)).unwrap();
    let g = group_element(&rep, &BoostParams::boost(v())).unwrap();
    // (x1, x2, x3, s1, s2) <-> (p1, p2, p3, p4, -p0)
    let mut p = SMatrix::zeros(5, 5);
    for a in 0..3 {
        p.set(a, a + 1, Scalar::one());
    }
    p.set(3, 4, Scalar::one());
    p.set(4, 0, Scalar::int(-1));
    let p = p.to_poly();
    assert_eq!(g.mul(&p), p.mul(&five_vector_transform(&v())));
}

#[test]
fn group_law_and_inverse() {
    let w = ["w1", "w2", "w3"].map(Poly::sym);
    let vw = [0, 1, 2].map(|a| &v()[a] + &w[a]);
    for l in [RepLabel::vector(3, 1, 1), RepLabel::Spinor(2), RepLabel::vector(2, 2, 1)] {
        let rep = build(l).unwrap();
        let t = |x: &[Poly; 3]| group_element(&rep, &BoostParams::boost(x.clone())).unwrap();
        assert_eq!(t(&v()).mul(&t(&w)), t(&vw));
        assert_eq!(t(&v()).mul(&t(&neg(&v()))), PMatrix::identity(rep.dim()));
    }
    let t5 = |x: &[Poly; 3]| five_vector_transform(x);
    assert_eq!(t5(&v()).mul(&t5(&w)), t5(&vw));
    assert_eq!(t5(&v()).mul(&t5(&neg(&v()))), PMatrix::identity(5));
}

#[test]
fn five_vector_law_preserves_square() {
    let g = catalog::galilean_metric().to_poly();
    let t = five_vector_transform(&v());
    assert_eq!(t.transpose().mul(&g).mul(&t), g);
    let p = catalog::five_momentum();
    let sq = PMatrix::from_fn(1, 1, |_, _| catalog::five_square(&p));
    assert_eq!(boost_momentum(&sq, &v()).unwrap(), sq);
}

#[test]
fn potential_uses_the_same_law() {
    // A⁰ → A⁰ + v·A + v²A⁴/2, A → A + vA⁴, A⁴ → A⁴
    let a: Vec<Poly> = ["A0", "A1", "A2", "A3", "A4"].iter().map(|n| Poly::sym(n)).collect();
    let col = PMatrix::column_vector(a.clone());
    let out = five_vector_transform(&v()).mul(&col);
    let v2 = v().iter().fold(Poly::zero(), |acc, x| &acc + &(x * x));
    let mut expect0 = &a[0] + &(&v2 * &a[4]).scale(&Scalar::ratio(1, 2));
    for k in 0..3 {
        expect0 = &expect0 + &(&v()[k] * &a[k + 1]);
    }
    assert_eq!(out.get(0, 0), &expect0);
    assert_eq!(out.get(2, 0), &(&a[2] + &(&v()[1] * &a[4])));
}

#[test]
fn catalog_covariant_symbolically() {
    for name in NAMES {
        let r = covariance_symbolic(&catalog_case(name).unwrap()).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }
}

#[test]
fn catalog_covariant_at_samples() {
    for name in NAMES {
        let r = covariance_sampled(&catalog_case(name).unwrap(), 0, 20).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }
}

#[test]
fn covariant_systems_satisfy_conditions() {
    // finite covariance and the infinitesimal conditions agree
    for name in ["levy_leblond", "D110", "D210", "D221", "D311", "dkp_spin0"] {
        let case = catalog_case(name).unwrap();
        let finite = covariance_symbolic(&case).unwrap().pass;
        let catalog::Canonical::Beta(bs) = catalog::canonical(name, &Default::default()).unwrap() else { panic!() };
        assert_eq!(finite, verify_conditions(&bs).pass(), "{name}");
    }
}

#[test]
fn corrupted_system_fails() {
    let mut bs = levy_leblond(&Poly::zero(), &Poly::zero()).unwrap();
    bs.beta[1] = bs.beta[1].scale(&Scalar::int(2));
    assert!(!finite_boost_covariance(&bs).unwrap().pass);
    let case = bhabha_case(&bs).unwrap();
    let r = covariance_sampled(&case, 7, 20).unwrap();
    assert!(!r.pass);
    assert!(r.failure.is_some());
    assert_eq!(r.seed, Some(7));
}

#[test]
fn sampled_reports_are_deterministic() {
    let case = catalog_case("D311").unwrap();
    assert_eq!(covariance_sampled(&case, 3, 5).unwrap(), covariance_sampled(&case, 3, 5).unwrap());
}

#[test]
fn lambda_space_on_bispinors() {
    let rep = build(RepLabel::Spinor(2)).unwrap();
    let space = find_lambda_space(&rep);
    assert_eq!(space.dim(), 2);
    let ll = levy_leblond(&Poly::zero(), &Poly::zero()).unwrap();
    let b0 = ll.beta0().eval(&Default::default()).unwrap();
    assert!(space.contains(&b0.vectorize()));
    let chi = catalog::bispinor_lambda();
    assert!(space.contains(&chi.vectorize()));
    assert_eq!(chi.adjoint(), chi);
}

#[test]
fn lambda_space_with_printed_hermitizer() {
    let rep = build(RepLabel::Spinor(2)).unwrap();
    assert!(find_lambda_space(&rep).contains(&catalog::bispinor_hermitizer().vectorize()));
}

#[test]
fn lambda_space_small_carriers() {
    assert_eq!(find_lambda_space(&build(RepLabel::Spinor(1)).unwrap()).dim(), 1);
    let rep = build(RepLabel::vector(3, 1, 1)).unwrap();
    let b0 = d311(&Poly::sym("nu")).unwrap().beta0().eval(&Default::default()).unwrap();
    assert!(find_lambda_space(&rep).contains(&b0.vectorize()));
}

#[test]
fn pauli_terms_invariant() {
    let rep = build(RepLabel::Spinor(2)).unwrap();
    for lam in lambda_basis(&rep) {
        assert!(pauli_term_invariance(&rep, &lam.to_poly()).unwrap().pass());
    }
    let rep = build(RepLabel::vector(3, 1, 1)).unwrap();
    let b0 = d311(&Poly::sym("nu")).unwrap().beta0().clone();
    assert!(pauli_term_invariance(&rep, &b0).unwrap().pass());
}

#[test]
fn pauli_terms_on_every_carrier() {
    for l in RepLabel::all_base() {
        let rep = build(l).unwrap();
        for lam in lambda_basis(&rep) {
            assert!(pauli_term_invariance(&rep, &lam.to_poly()).unwrap().pass(), "{l}");
        }
    }
}

#[test]
fn spin_matrix_rejected_as_lambda() {
    let rep = build(RepLabel::Spinor(2)).unwrap();
    let err = pauli_term_invariance(&rep, &rep.s[2].to_poly()).unwrap_err();
    assert!(err.to_string().contains("eta"));
}

#[test]
fn axis_rotations() {
    for l in RepLabel::all_base() {
        let rep = build(l).unwrap();
        for axis in 0..3 {
            let rot = AxisRotation::symbolic(axis);
            assert!(rotation_acts_on_spin(&rep, &rot).unwrap());
            let t = rotation_matrix(&rep, &rot).unwrap();
            let u = t.mul(&t.adjoint()).map(reduce_half_angle);
            assert_eq!(u, PMatrix::identity(rep.dim()));
        }
    }
    let rep = build(RepLabel::Spinor(1)).unwrap();
    // θ = π about z: c = 0, s = 1 gives exp(iπσ3/2) = iσ3
    let t = rotation_matrix(&rep, &AxisRotation { axis: 2, c: Poly::zero(), s: Poly::one() }).unwrap();
    let i_sigma3 = galilei::reps::pauli()[2].scale(&Scalar::i()).to_poly();
    assert_eq!(t, i_sigma3);
}

#[test]
fn boost_with_rotation() {
    let rep = build(RepLabel::Spinor(2)).unwrap();
    let bp = BoostParams { v: v(), rotation: Some(AxisRotation::symbolic(0)) };
    let g = group_element(&rep, &bp).unwrap();
    let expect = group_element(&rep, &BoostParams::boost(v()))
        .unwrap()
        .mul(&rotation_matrix(&rep, &AxisRotation::symbolic(0)).unwrap())
        .map(reduce_half_angle);
    assert_eq!(g, expect);
    assert!(rotation_matrix(&rep, &AxisRotation { axis: 3, c: Poly::one(), s: Poly::zero() }).is_err());
}
