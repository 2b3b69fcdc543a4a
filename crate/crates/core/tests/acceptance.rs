//! One verdict line per acceptance criterion. Exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::seq::SliceRandom;

use galilei::appendix::reproduce_appendix;
use galilei::beta::{verify_conditions, BetaSystem};
use galilei::catalog::{self, d110, d210, d221, d311, dkp_spin0, levy_leblond, NAMES};
use galilei::classify::{classify_bruteforce, table_signatures};
use galilei::covariance::{catalog_case, covariance_symbolic, lambda_basis, pauli_term_invariance};
use galilei::interaction::{
    couple_anomalous, couple_minimal, proca_interacting, reduce, spin_orbit_expand, SpinOrbitReport,
};
use galilei::reps::{build, build_sum, table_triple, verify_hg, RepLabel};
use galilei::spin::{casimir_report, spin_content};
use galilei::weyl::{FieldConfig, TruncationSpec};
use galilei::{sym, Poly, Result, Scalar};

type Criterion = (&'static str, fn() -> Result<Verdict>);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict { pass, detail: detail.into() })
}

fn p(name: &str) -> Poly {
    Poly::sym(name)
}

fn q(n: i64, d: i64) -> Poly {
    Poly::constant(Scalar::ratio(n, d))
}

const TABLE: [(usize, usize, usize); 10] =
    [(0, 1, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 2, 1), (2, 0, 0), (2, 1, 0), (2, 1, 1), (2, 2, 1), (3, 1, 1)];

fn random_sums(seed: u64, count: usize) -> Vec<Vec<RepLabel>> {
    let mut rng = galilei::sample::rng(seed);
    let base = RepLabel::all_base();
    (0..count).map(|k| base.choose_multiple(&mut rng, 2 + k % 2).copied().collect()).collect()
}

fn table_and_reps() -> Result<Verdict> {
    let mut bad = Vec::new();
    for &(n, m, l) in &TABLE {
        if !table_triple(n, m, l)?.check() {
            bad.push(format!("triple ({n},{m},{l})"));
        }
    }
    let mut carriers = RepLabel::all_base().into_iter().map(|l| vec![l]).collect::<Vec<_>>();
    carriers.extend(random_sums(0, 5));
    for labels in &carriers {
        if !verify_hg(&build_sum(labels)?).pass() {
            bad.push(galilei::reps::format_label_sum(labels));
        }
    }
    verdict(bad.is_empty(), format!("{} triples, {} carriers; failing: {bad:?}", TABLE.len(), carriers.len()))
}

fn appendix() -> Result<Verdict> {
    let r = reproduce_appendix()?;
    verdict(r.pass(), format!("{}/{} cells match", r.matched(), r.cells.len()))
}

fn beta_systems() -> Result<Vec<BetaSystem>> {
    Ok(vec![levy_leblond(&Poly::zero(), &Poly::zero())?, d110()?, d210()?, d221()?, d311(&p("nu"))?, dkp_spin0()?])
}

fn identities() -> Result<Verdict> {
    let metric = catalog::galilean_metric();
    let mut bad = Vec::new();
    for bs in beta_systems()? {
        if !verify_conditions(&bs).pass() {
            bad.push(bs.name.clone());
        }
    }
    let gammas: Vec<_> = catalog::gamma_hat().iter().map(|g| g.to_poly()).collect();
    if !catalog::check_clifford(&gammas, &metric)?.pass() {
        bad.push("clifford".into());
    }
    if !catalog::check_galilean_dkp(&catalog::dkp_from_d311(&p("nu"))?, &metric, &Scalar::one())?.pass() {
        bad.push("dkp from D311".into());
    }
    let spin0: Vec<_> = catalog::dkp_spin0_matrices().iter().map(|m| m.to_poly()).collect();
    if !catalog::check_galilean_dkp(&spin0, &metric, &Scalar::one())?.pass() {
        bad.push("dkp spin0".into());
    }
    verdict(bad.is_empty(), format!("failing: {bad:?}"))
}

fn casimirs() -> Result<Verdict> {
    let mut bad = Vec::new();
    let mut carriers: Vec<Vec<RepLabel>> = RepLabel::all_base().into_iter().map(|l| vec![l]).collect();
    carriers.extend(random_sums(1, 3));
    for labels in &carriers {
        if !casimir_report(&build_sum(labels)?)?.pass() {
            bad.push(galilei::reps::format_label_sum(labels));
        }
    }
    verdict(bad.is_empty(), format!("{} carriers; failing: {bad:?}", carriers.len()))
}

fn spin_contents() -> Result<Verdict> {
    let expected = [
        ("levy_leblond", vec!["1/2"]),
        ("D110", vec!["1"]),
        ("D210", vec!["1"]),
        ("D221", vec!["0", "1"]),
        ("D311", vec!["1"]),
        ("dkp_spin0", vec!["0"]),
    ];
    let mut bad = Vec::new();
    for (bs, (name, want)) in beta_systems()?.iter().zip(expected) {
        let r = spin_content(bs)?;
        let want: BTreeSet<String> = want.iter().map(|s| s.to_string()).collect();
        let mixed_ok = name != "D221" || (r.cas10 == Some(false) && r.cas11 == Some(false));
        if r.spins() != want || !r.routes_agree() || !mixed_ok {
            bad.push(format!("{name} gave {:?}, routes agree {}", r.spins(), r.routes_agree()));
        }
    }
    verdict(bad.is_empty(), format!("failing: {bad:?}"))
}

fn covariance() -> Result<Verdict> {
    let mut bad = Vec::new();
    for name in NAMES {
        if !covariance_symbolic(&catalog_case(name)?)?.pass {
            bad.push(name.to_string());
        }
    }
    let ll = build(RepLabel::Spinor(2))?;
    let mut lambdas = lambda_basis(&ll).into_iter().map(|l| (ll.clone(), l.to_poly())).collect::<Vec<_>>();
    lambdas.push((ll.clone(), catalog::bispinor_lambda().to_poly()));
    lambdas.push((build(RepLabel::vector(3, 1, 1))?, d311(&p("nu"))?.beta0().clone()));
    for (rep, lam) in &lambdas {
        if !pauli_term_invariance(rep, lam)?.pass() {
            bad.push(format!("Pauli term on {}", rep.label_text()));
        }
    }
    verdict(bad.is_empty(), format!("{} systems, {} Pauli couplings; failing: {bad:?}", NAMES.len(), lambdas.len()))
}

fn spinor_coupling(fc: &FieldConfig, l1: &Poly, l2: &Poly) -> Result<galilei::interaction::CoupledOperator> {
    let ll = levy_leblond(&Poly::zero(), &Poly::zero())?;
    let lam = ll.beta0().rmul(&p("nu")).add(&catalog::bispinor_lambda().to_poly().rmul(&p("mu")));
    couple_anomalous(&ll, fc, &lam, l1, l2)
}

fn vector_slice(l1: Poly, l2: Poly) -> Result<SpinOrbitReport> {
    let d = d311(&Poly::var_pow(sym("nuinv"), -1))?;
    let co = couple_anomalous(&d, &FieldConfig::symbolic(true), d.beta0(), &l1, &l2)?;
    spin_orbit_expand(&co, None, &TruncationSpec::new(&[("nuinv", 2), ("e", 1)]))
}

fn interaction() -> Result<Verdict> {
    let fc = FieldConfig::symbolic(true);
    let none = TruncationSpec::none();
    let (l1, l2, mu, nu) = (p("lambda1"), p("lambda2"), p("mu"), p("nu"));
    let mut checks: BTreeMap<&str, bool> = BTreeMap::new();

    let ll = levy_leblond(&Poly::zero(), &Poly::zero())?;
    checks.insert("spinor minimal g=2", reduce(&couple_minimal(&ll, &fc)?, None, &none)?.g() == Poly::int(2));

    let r = reduce(&spinor_coupling(&fc, &l1, &l2)?, None, &none)?;
    let quoted = &Poly::int(2) + &(&(&mu * &l1) + &(&nu * &l2));
    checks.insert("spinor anomalous g", r.g() == quoted);

    let d = d311(&nu)?;
    let r = reduce(&couple_anomalous(&d, &fc, d.beta0(), &l1, &l2)?, None, &none)?;
    let g = &(&Poly::one() + &l1.scale(&Scalar::int(2))) + &l2.scale(&Scalar::int(2));
    let qe = -&(&(&Poly::one() - &l2) * &Poly::var_pow(sym("nu"), -1));
    checks.insert("vector anomalous g", r.g() == g);
    checks.insert("vector anomalous q", r.fit.get("spin_electric") == qe);

    let proca = proca_interacting(&p("lambda"), &FieldConfig::symbolic(false))?;
    checks.insert("proca g=2", proca.psi4_vanishes && proca.reduction.exact && proca.g() == Poly::int(2));

    let r = vector_slice(q(-1, 2), Poly::one())?;
    checks.insert("vector slice without s.E", r.kappa.is_zero() && r.fit.get("spin_electric").is_zero());
    checks.insert("vector slice g=2", r.reduction.g() == Poly::int(2));

    let minv = Poly::var_pow(sym("mu"), -1);
    let l3 = p("lambda3");
    let sl2 = &l3 * &minv;
    let sl1 = -&(&(&Poly::one() + &(&nu * &sl2)) * &minv);
    let r =
        spin_orbit_expand(&spinor_coupling(&fc, &sl1, &sl2)?, None, &TruncationSpec::new(&[("lambda3", 2), ("e", 1)]))?;
    let l3sq = &l3 * &l3;
    checks.insert("spinor spin-orbit", r.fit.get("spin_orbit") == &l3sq * &q(1, 4));
    checks.insert("spinor darwin", r.fit.get("darwin") == &l3sq * &q(1, 8));

    let r = vector_slice(q(1, 2), Poly::int(-1))?;
    let e2 = &p("nuinv") * &p("nuinv");
    checks.insert(
        "vector quadrupole",
        r.fit.get("spin_orbit") == e2.scale(&Scalar::int(2))
            && r.fit.get("electric_quadrupole") == e2.scale(&Scalar::int(-2)),
    );

    let failing: Vec<_> = checks.iter().filter(|(_, ok)| !**ok).map(|(k, _)| *k).collect();
    verdict(
        failing.is_empty(),
        format!("{}/{} checks; failing: {failing:?}", checks.len() - failing.len(), checks.len()),
    )
}

fn contraction() -> Result<Verdict> {
    let r = catalog::dkp_contraction();
    verdict(r.pass(), format!("{} lines", r.lines.len()))
}

fn free_higher_spin() -> Result<Verdict> {
    let proca = catalog::proca_check(&p("lambda"), 0, 10)?;
    let rs = catalog::rarita_schwinger_check(&Scalar::int(3), 0, 10)?;
    verdict(proca.pass() && rs.pass(), format!("proca {}, rarita-schwinger {}", proca.pass(), rs.pass()))
}

fn classification() -> Result<Verdict> {
    let entries = [-1, 0, 1].map(Scalar::int);
    let r = classify_bruteforce(3, 2, &entries, 1 << 40)?;
    let found = r.signatures();
    let expected = table_signatures();
    let missing = expected.difference(&found).count();
    let extra = found.difference(&expected).count();
    verdict(missing == 0 && extra == 0, format!("{} classes; missing {missing}, extra {extra}", found.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("indecomposable triples and representations", table_and_reps),
        ("β₄ solution spaces against the tables", appendix),
        ("canonical systems and identities", identities),
        ("Casimir operators", casimirs),
        ("spin content", spin_contents),
        ("finite-boost covariance and Pauli terms", covariance),
        ("interaction reductions", interaction),
        ("DKP contraction", contraction),
        ("free Proca and Rarita-Schwinger", free_higher_spin),
        ("brute-force classification", classification),
    ];
    let mut failures = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match check() {
            Ok(v) => (v.pass, v.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failures += usize::from(!ok);
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {:>2}: {} {title} ({detail}) [{secs:.2}s]", k + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("{}/{} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
