use std::collections::BTreeMap;

use galilei::beta::{normalize_equivalence, verify_conditions};
use galilei::catalog::*;
use galilei::linalg::nullspace;
use galilei::{PMatrix, Poly, SMatrix, Scalar};

fn sym(n: &str) -> Poly {
    Poly::sym(n)
}

fn polys<const N: usize>(m: [SMatrix; N]) -> Vec<PMatrix> {
    m.iter().map(|x| x.to_poly()).collect()
}

#[test]
fn canonical_systems_satisfy_conditions() {
    let systems = [
        d110().unwrap(),
        d210().unwrap(),
        d221().unwrap(),
        d311(&sym("nu")).unwrap(),
        levy_leblond(&sym("kappa"), &sym("omega")).unwrap(),
    ];
    for bs in systems {
        let r = verify_conditions(&bs);
        assert!(r.pass(), "{}: {}", bs.name, r.summary());
    }
}

#[test]
fn zeroed_beta4_fails_family_one() {
    let mut bs = d210().unwrap();
    bs.beta[4] = PMatrix::zeros(7, 7);
    let r = verify_conditions(&bs);
    assert!(r.families().contains(&1));
}

// The printed spin-zero set is expected to satisfy the invariance conditions
// up to equivalence; it does not (the printed fifth matrix is inconsistent).
#[test]
fn dkp_spin0_satisfies_conditions() {
    let bs = dkp_spin0().unwrap();
    let r = verify_conditions(&bs);
    assert!(r.pass(), "{}", r.summary());
}

#[test]
fn clifford_set_passes() {
    let r = check_clifford(&polys(gamma_hat()), &galilean_metric()).unwrap();
    assert_eq!(r.checked, 25);
    assert!(r.pass(), "{:?}", r.failures);
}

#[test]
fn printed_clifford_blocks_fail() {
    let r = check_clifford(&polys(gamma_hat_printed()), &galilean_metric()).unwrap();
    assert_eq!(r.failures.len(), 12);
}

#[test]
fn minkowski_gammas_fail_against_galilean_metric() {
    let sig = galilei::reps::pauli();
    let (z, i2) = (SMatrix::zeros(2, 2), SMatrix::identity(2));
    let blk = |a: &SMatrix, b: &SMatrix, c: &SMatrix, d: &SMatrix| {
        SMatrix::vstack(&[SMatrix::hstack(&[a.clone(), b.clone()]), SMatrix::hstack(&[c.clone(), d.clone()])])
    };
    let g0 = blk(&i2, &z, &z, &i2.scale(&Scalar::int(-1)));
    let ga = |a: usize| blk(&z, &sig[a], &sig[a].scale(&Scalar::int(-1)), &z);
    let set = [g0.clone(), ga(0), ga(1), ga(2), g0];
    assert!(!check_clifford(&polys(set), &galilean_metric()).unwrap().pass());
}

#[test]
fn clifford_square_of_slash() {
    let g = gamma_hat();
    let p = five_momentum();
    let slash = (0..5).fold(PMatrix::zeros(4, 4), |acc, n| acc.add(&g[n].to_poly().rmul(&p[n])));
    assert_eq!(slash.mul(&slash), PMatrix::identity(4).rmul(&five_square(&p)));
}

#[test]
fn dkp_from_spin_one_system() {
    let b = dkp_from_d311(&sym("nu")).unwrap();
    let r = check_galilean_dkp(&b, &galilean_metric(), &Scalar::one()).unwrap();
    assert_eq!(r.checked, 125);
    assert!(r.pass(), "{:?}", &r.failures[..r.failures.len().min(5)]);
}

// Printed normalization (factor 2) of the triple relation.
#[test]
fn dkp_from_spin_one_system_printed_factor() {
    let b = dkp_from_d311(&sym("nu")).unwrap();
    assert!(check_galilean_dkp(&b, &galilean_metric(), &Scalar::int(2)).unwrap().pass());
}

#[test]
fn dkp_spin0_set_is_dkp() {
    let r = check_galilean_dkp(&polys(dkp_spin0_matrices()), &galilean_metric(), &Scalar::one()).unwrap();
    assert!(r.pass(), "{} of 125 triples fail", r.failures.len());
}

#[test]
fn dkp_spin0_first_four_are_dkp() {
    let b = polys(dkp_spin0_matrices());
    let r = check_galilean_dkp(&b, &galilean_metric(), &Scalar::one()).unwrap();
    assert!(r.failures.iter().all(|t| t.contains(&4)));
}

#[test]
fn first_vector_system_is_not_dkp() {
    let bs = d110().unwrap();
    assert!(!check_galilean_dkp(&bs.beta, &galilean_metric(), &Scalar::one()).unwrap().pass());
}

#[test]
fn spinor_normalization_removes_omega_and_kappa() {
    let ll = levy_leblond(&sym("kappa"), &sym("omega")).unwrap();
    let n = normalize_equivalence(&ll);
    assert_eq!(n.removed_by_transform, vec!["omega".to_string()]);
    assert_eq!(n.removed_by_phase, vec!["kappa".to_string()]);
    assert!(n.system.symbols().is_empty());
    assert!(verify_conditions(&n.system).pass());
    let plain = levy_leblond(&Poly::zero(), &Poly::zero()).unwrap();
    assert_eq!(n.system.beta, plain.beta);
}

#[test]
fn spinor_printed_transform_removes_omega() {
    let ll = levy_leblond(&Poly::zero(), &sym("omega")).unwrap();
    let i2 = PMatrix::identity(2);
    let mut u = PMatrix::identity(4);
    u.put(0, 2, &i2.rmul(&(&Poly::constant(Scalar::i()) * &sym("omega"))));
    let t = ll.transform(&u);
    assert!(!t.symbols().contains(&galilei::sym("omega")), "{}", t.beta[4]);
}

#[test]
fn canonical_spin_one_normalization_is_identity() {
    let n = normalize_equivalence(&d311(&sym("nu")).unwrap());
    assert!(n.is_identity());
}

#[test]
fn proca_report() {
    let r = proca_check(&sym("lambda"), 0, 10).unwrap();
    assert!(r.pass(), "{}", r.to_json());
}

#[test]
fn proca_rejects_zero_lambda() {
    assert!(proca_operator(&Poly::zero(), &five_momentum()).is_err());
}

#[test]
fn rarita_schwinger_report() {
    let r = rarita_schwinger_check(&Scalar::int(3), 0, 10).unwrap();
    assert!(r.pass(), "{}", r.to_json());
    assert_eq!(r.samples.len(), 10);
}

#[test]
fn rarita_schwinger_printed_projector_has_solutions() {
    let m = rs_projector_constraint(&(Scalar::ratio(-1, 2) * Scalar::i()));
    assert!(nullspace(&m).dim() > 0);
}

#[test]
fn contraction_reproduces_galilean_system() {
    let r = dkp_contraction();
    assert_eq!(r.lines.len(), 10);
    assert!(r.pass(), "{}", r.to_json());
}

#[test]
fn canonical_lookup() {
    let params = BTreeMap::new();
    for n in NAMES {
        canonical(n, &params).unwrap();
    }
    assert!(canonical("nope", &params).is_err());
    let mut ps = BTreeMap::new();
    ps.insert("kappa".to_string(), Poly::zero());
    ps.insert("omega".to_string(), Poly::zero());
    match canonical("levy_leblond", &ps).unwrap() {
        Canonical::Beta(bs) => assert!(bs.params.is_empty()),
        _ => panic!(),
    }
}
