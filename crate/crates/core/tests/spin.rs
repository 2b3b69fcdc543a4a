use std::collections::BTreeSet;

use galilei::beta::BetaSystem;
use galilei::catalog::{d110, d210, d221, d311, dkp_spin0, levy_leblond};
use galilei::reps::{build, build_sum, RepLabel};
use galilei::spin::*;
use galilei::{PMatrix, Poly, SMatrix, Scalar};

fn spins(list: &[&str]) -> BTreeSet<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn nu() -> Poly {
    Poly::sym("nu")
}

fn spinor() -> BetaSystem {
    levy_leblond(&Poly::zero(), &Poly::zero()).unwrap()
}

#[test]
fn casimirs_central_on_base_reps() {
    for l in RepLabel::all_base() {
        let r = casimir_report(&build(l).unwrap()).unwrap();
        assert!(r.pass(), "{}", r.to_json());
    }
}

#[test]
fn casimir_diagonalized_on_base_reps() {
    for l in RepLabel::all_base() {
        let r = diagonalize_casimir(&build(l).unwrap()).unwrap();
        assert!(r.pass(), "{}", r.to_json());
    }
}

#[test]
fn casimir_diagonalized_on_sums() {
    let rep = build_sum(&[RepLabel::vector(3, 1, 1), RepLabel::vector(1, 2, 1), RepLabel::Spinor(2)]).unwrap();
    assert!(diagonalize_casimir(&rep).unwrap().pass());
    assert!(casimir_report(&rep).unwrap().pass());
}

#[test]
fn casimir_small_cases() {
    let m2 = Poly::sym("m").pow(2);
    let s1 = casimirs(&build(RepLabel::Spinor(1)).unwrap());
    assert_eq!(s1.c3, PMatrix::identity(2).rmul(&m2.scale(&Scalar::ratio(3, 4))));
    let scalar = casimirs(&build(RepLabel::vector(0, 1, 0)).unwrap());
    assert!(scalar.c3.is_zero());
    let v = casimirs(&build(RepLabel::vector(1, 2, 1)).unwrap());
    let p1 = galilei::sym("p1");
    assert!(v.c3.entries().iter().any(|e| e.max_exp(p1) == 2));
}

#[test]
fn spin_of_first_vector_system() {
    let r = spin_content(&d110().unwrap()).unwrap();
    assert_eq!(r.spins(), spins(&["1"]), "{}", r.to_json());
}

#[test]
fn first_vector_system_spin_one_conditions() {
    let v = check_particle_conditions(&d110().unwrap(), 2).unwrap();
    assert!(v.iter().any(|x| x.pass()));
}

#[test]
fn first_vector_system_is_spin_zero() {
    let r = spin_content(&d110().unwrap()).unwrap();
    assert_eq!(r.spins(), spins(&["0"]));
    assert_eq!(r.cas11, Some(true));
}

#[test]
fn spin_of_second_vector_system() {
    let r = spin_content(&d210().unwrap()).unwrap();
    assert_eq!(r.spins(), spins(&["1"]));
    assert_eq!(r.branches[0].mult, 3);
    assert_eq!(r.cas10, Some(true));
}

#[test]
fn mixed_spin_system() {
    let bs = d221().unwrap();
    let r = spin_content(&bs).unwrap();
    assert_eq!(r.spins(), spins(&["0", "1"]));
    assert_eq!(r.cas10, Some(false));
    assert_eq!(r.cas11, Some(false));
}

#[test]
fn spin_one_system_internal_energy() {
    let r = spin_content(&d311(&nu()).unwrap()).unwrap();
    assert_eq!(r.spins(), spins(&["1"]));
    assert_eq!(r.branches[0].epsilon, Energy::Value(nu().pow(2)));
    assert_eq!(r.cas10, Some(true));
}

#[test]
fn dkp_scalar_is_spin_zero() {
    let bs = dkp_spin0().unwrap();
    let r = spin_content(&bs).unwrap();
    assert_eq!(r.spins(), spins(&["0"]));
    assert!(check_particle_conditions(&bs, 0).unwrap().iter().any(|v| v.pass()));
}

#[test]
fn spinor_content() {
    let r = spin_content(&spinor()).unwrap();
    assert_eq!(r.branches.len(), 1);
    let b = &r.branches[0];
    assert_eq!((b.spin().as_str(), b.mult), ("1/2", 2));
    assert_eq!(b.epsilon, Energy::Value(Poly::zero()));
    assert_eq!(r.cas10, None);
}

#[test]
fn spinor_energy_with_parameters() {
    let (k, w) = (Poly::sym("kappa"), Poly::sym("omega"));
    let r = spin_content(&levy_leblond(&k, &w).unwrap()).unwrap();
    assert_eq!(r.branches[0].epsilon, Energy::Value(&(&w * &w) - &k.scale(&Scalar::int(2))));
}

#[test]
fn two_routes_agree() {
    let systems = [d110(), d210(), d221(), d311(&nu()), Ok(spinor())];
    for bs in systems {
        let bs = bs.unwrap();
        let r = spin_content(&bs).unwrap();
        assert!(r.w_identity, "{}", bs.name);
        assert!(r.routes_agree(), "{}", r.to_json());
        assert!(r.total_multiplicity() <= bs.dim());
        for b in &r.branches {
            assert_eq!(b.mult as u32, b.two_s + 1, "{}", r.to_json());
        }
    }
}

#[test]
fn rest_pencil_shape() {
    let bs = d210().unwrap();
    let p = rest_pencil(&bs).unwrap();
    assert_eq!(p.shape(), (7, 7));
    let hw = highest_weight_basis(&bs.rep, 2);
    assert_eq!(hw.cols(), 2);
    assert!(restrict(&p, &hw).is_some());
    assert_eq!(highest_weight_basis(&bs.rep, 1), SMatrix::zeros(7, 0));
}

#[test]
fn roots_of_products() {
    let e = Poly::var(epsilon_sym());
    let f = &(&(&e - &Poly::int(4)) * &(&e + &Poly::constant(Scalar::ratio(1, 2)))) * &(&e * &e);
    let r = roots_in(&f, epsilon_sym()).unwrap();
    let mut got: Vec<(String, usize)> = r.roots.iter().map(|(p, k)| (p.to_string(), *k)).collect();
    got.sort();
    assert_eq!(got, vec![("-1/2".into(), 1), ("0".into(), 2), ("4".into(), 1)]);
    assert!(roots_in(&Poly::zero(), epsilon_sym()).unwrap().identically_zero);
}
