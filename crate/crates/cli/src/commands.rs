//! Verb implementations. Each returns a JSON report and an overall verdict.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use galilei::appendix::reproduce_appendix;
use galilei::beta::{assemble_pair, solve_beta4_space, verify_conditions, BetaSystem};
use galilei::catalog::{self, Canonical};
use galilei::classify::{classify_bruteforce, table_signatures};
use galilei::covariance::{catalog_case, covariance_sampled, covariance_symbolic, lambda_basis, pauli_term_invariance};
use galilei::expr::{parse_field_expr, parse_parameter_expr};
use galilei::interaction::{self, couple_anomalous, couple_minimal, proca_interacting, spin_orbit_expand};
use galilei::reps::{build, build_sum, parse_label_sum, verify_hg, RepLabel};
use galilei::spin::{casimir_report, spin_content};
use galilei::weyl::{FieldConfig, TruncationSpec};
use galilei::{Error, Poly, Result, Scalar};

use crate::{Cli, Command, Coupling, CovMode, FieldArgs, ParamArgs, Table};

pub struct Outcome {
    pub command: &'static str,
    pub pass: bool,
    pub report: Value,
}

/// Canonical systems with a β-matrix form.
const BETA_SYSTEMS: [&str; 6] = ["levy_leblond", "D110", "D210", "D221", "D311", "dkp_spin0"];

pub fn run(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed;
    match &cli.command {
        Command::VerifyRep { rep } => verify_rep(rep.as_deref()),
        Command::Classify { n_max, m_max, entries, limit } => classify(*n_max, *m_max, entries, *limit),
        Command::SolveBeta { left, right } => solve_beta(left, right),
        Command::Appendix { table } => appendix(*table),
        Command::Catalog { system, params, samples } => catalog_verb(system, params, seed, *samples),
        Command::Spin { system, params, expect } => spin(system, params, expect.as_deref()),
        Command::Covariance { system, mode, trials } => covariance(system, *mode, seed, *trials),
        Command::Reduce { system, params, coupling, lambda1, lambda2, nu, mu, field, truncate } => {
            let couplings = Couplings { kind: *coupling, lambda1, lambda2, nu, mu };
            reduce(system, params, &couplings, field, truncate.as_deref())
        }
        Command::Proca { lambda, field, samples } => proca(lambda, field, seed, *samples),
        Command::ContractDkp => {
            let r = catalog::dkp_contraction();
            Ok(Outcome { command: "contract-dkp", pass: r.pass(), report: r.to_json() })
        }
    }
}

fn parse_params(args: &ParamArgs) -> Result<BTreeMap<String, Poly>> {
    let mut out = BTreeMap::new();
    for item in &args.param {
        let (name, value) =
            item.split_once('=').ok_or_else(|| Error::Parse(format!("parameter '{item}' needs NAME=VALUE")))?;
        out.insert(name.trim().to_string(), parse_parameter_expr(value)?);
    }
    Ok(out)
}

fn beta_system(name: &str, params: &BTreeMap<String, Poly>) -> Result<BetaSystem> {
    match catalog::canonical(name, params)? {
        Canonical::Beta(bs) => Ok(bs),
        _ => Err(Error::Invalid(format!("'{name}' is not a β-system"))),
    }
}

fn names<'a>(system: &'a str, all: &[&'a str]) -> Vec<&'a str> {
    if system == "all" {
        all.to_vec()
    } else {
        vec![system]
    }
}

fn verify_rep(text: Option<&str>) -> Result<Outcome> {
    let carriers: Vec<Vec<RepLabel>> = match text {
        Some(t) => vec![parse_label_sum(t)?],
        None => RepLabel::all_base().into_iter().map(|l| vec![l]).collect(),
    };
    let mut pass = true;
    let mut reports = Vec::new();
    for labels in carriers {
        let rep = if labels.len() == 1 { build(labels[0])? } else { build_sum(&labels)? };
        let hg = verify_hg(&rep);
        let cas = casimir_report(&rep)?;
        pass &= hg.pass() && cas.pass();
        reports.push(json!({
            "carrier": rep.label_text(),
            "dim": rep.dim(),
            "relations": hg.to_json(),
            "casimirs": cas.to_json(),
            "nilpotency_index": galilei::reps::nilpotency_index(&rep),
        }));
    }
    Ok(Outcome { command: "verify-rep", pass, report: json!({ "carriers": reports }) })
}

fn classify(n_max: usize, m_max: usize, entries: &str, limit: u128) -> Result<Outcome> {
    let set = entries
        .split(',')
        .map(|t| {
            parse_parameter_expr(t)?.as_constant().ok_or_else(|| Error::Parse(format!("entry '{t}' is not a number")))
        })
        .collect::<Result<Vec<Scalar>>>()?;
    let r = classify_bruteforce(n_max, m_max, &set, limit)?;
    let found = r.signatures();
    let expected: BTreeSet<_> = table_signatures().into_iter().filter(|s| s.n <= n_max && s.m <= m_max).collect();
    let missing: Vec<Value> = expected.difference(&found).map(|s| s.to_json()).collect();
    let extra: Vec<Value> = found.difference(&expected).map(|s| s.to_json()).collect();
    let pass = missing.is_empty() && extra.is_empty();
    let mut report = r.to_json();
    report["expected"] = json!(expected.len());
    report["missing"] = json!(missing);
    report["extra"] = json!(extra);
    report["box"] =
        json!({ "n_max": n_max, "m_max": m_max, "entries": set.iter().map(|s| s.to_string()).collect::<Vec<_>>() });
    Ok(Outcome { command: "classify", pass, report })
}

fn solve_beta(left: &str, right: &str) -> Result<Outcome> {
    let (q, q2): (RepLabel, RepLabel) = (left.parse()?, right.parse()?);
    let space = solve_beta4_space(q, q2)?;
    let mut pass = true;
    let mut checks = Vec::new();
    for (r, e) in space.pairs() {
        let ok = assemble_pair(q, q2, &r, &e).map(|bs| verify_conditions(&bs).pass()).unwrap_or(false);
        pass &= ok;
        checks.push(ok);
    }
    let mut report = space.to_json();
    report["conditions"] = json!(checks);
    Ok(Outcome { command: "solve-beta", pass, report })
}

fn appendix(table: Table) -> Result<Outcome> {
    let mut r = reproduce_appendix()?;
    let pick = match table {
        Table::All => None,
        Table::Two => Some(2),
        Table::Three => Some(3),
        Table::Four => Some(4),
    };
    if let Some(t) = pick {
        r.cells.retain(|c| c.table == t);
    }
    Ok(Outcome { command: "appendix", pass: r.pass(), report: r.to_json() })
}

fn catalog_verb(system: &str, args: &ParamArgs, seed: u64, samples: usize) -> Result<Outcome> {
    let params = parse_params(args)?;
    let metric = catalog::galilean_metric();
    let mut pass = true;
    let mut systems = Vec::new();
    for name in names(system, &catalog::NAMES) {
        let (checks, ok) = match catalog::canonical(name, &params)? {
            Canonical::Beta(bs) => {
                let cond = verify_conditions(&bs);
                let mut ok = cond.pass();
                let mut checks = json!({ "conditions": cond.to_json() });
                let dkp = match name {
                    "D311" => {
                        Some(catalog::dkp_from_d311(&params.get("nu").cloned().unwrap_or(Poly::sym("nu")))?.to_vec())
                    }
                    "dkp_spin0" => Some(catalog::dkp_spin0_matrices().iter().map(|m| m.to_poly()).collect()),
                    _ => None,
                };
                if let Some(b) = dkp {
                    let r = catalog::check_galilean_dkp(&b, &metric, &Scalar::one())?;
                    ok &= r.pass();
                    checks["dkp"] = r.to_json();
                }
                (checks, ok)
            }
            Canonical::Gammas { gammas, metric } => {
                let polys: Vec<_> = gammas.iter().map(|g| g.to_poly()).collect();
                let r = catalog::check_clifford(&polys, &metric)?;
                (json!({ "clifford": r.to_json() }), r.pass())
            }
            Canonical::Operator { name, .. } if name == "proca" => {
                let lam = params.get("lambda").cloned().unwrap_or(Poly::sym("lambda"));
                let r = catalog::proca_check(&lam, seed, samples)?;
                (json!({ "proca": r.to_json() }), r.pass())
            }
            Canonical::Operator { .. } => {
                let lam = match params.get("lambda") {
                    Some(p) => p
                        .as_constant()
                        .ok_or_else(|| Error::Invalid("rarita_schwinger needs a numeric lambda".into()))?,
                    None => Scalar::int(3),
                };
                let r = catalog::rarita_schwinger_check(&lam, seed, samples)?;
                (json!({ "rarita_schwinger": r.to_json() }), r.pass())
            }
        };
        pass &= ok;
        systems.push(json!({ "system": name, "checks": checks, "pass": ok }));
    }
    Ok(Outcome { command: "catalog", pass, report: json!({ "systems": systems }) })
}

fn spin(system: &str, args: &ParamArgs, expect: Option<&str>) -> Result<Outcome> {
    let params = parse_params(args)?;
    let expected: Option<BTreeSet<String>> =
        expect.map(|e| e.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
    let mut pass = true;
    let mut reports = Vec::new();
    for name in names(system, &BETA_SYSTEMS) {
        let r = spin_content(&beta_system(name, &params)?)?;
        let mut ok = r.routes_agree() && r.unresolved.is_empty();
        if let Some(e) = &expected {
            ok &= r.spins() == *e;
        }
        pass &= ok;
        let mut j = r.to_json();
        j["spins"] = json!(r.spins());
        j["pass"] = json!(ok);
        reports.push(j);
    }
    Ok(Outcome { command: "spin", pass, report: json!({ "systems": reports, "expected": expected }) })
}

fn covariance(system: &str, mode: CovMode, seed: u64, trials: usize) -> Result<Outcome> {
    let mut pass = true;
    let mut reports = Vec::new();
    for name in names(system, &catalog::NAMES) {
        let case = catalog_case(name)?;
        let r = match mode {
            CovMode::Symbolic => covariance_symbolic(&case)?,
            CovMode::Sampled => covariance_sampled(&case, seed, trials)?,
        };
        let mut ok = r.pass;
        let mut j = r.to_json();
        if BETA_SYSTEMS.contains(&name) {
            let bs = beta_system(name, &BTreeMap::new())?;
            let mut pauli = Vec::new();
            for lam in lambda_basis(&bs.rep) {
                let inv = pauli_term_invariance(&bs.rep, &lam.to_poly())?;
                ok &= inv.pass();
                pauli.push(inv.to_json());
            }
            j["pauli_terms"] = json!(pauli);
        }
        pass &= ok;
        reports.push(j);
    }
    Ok(Outcome { command: "covariance", pass, report: json!({ "systems": reports }) })
}

fn field_config(args: &FieldArgs) -> Result<FieldConfig> {
    if args.a0.is_none() && args.a.is_none() {
        return Ok(FieldConfig::symbolic(!args.constant));
    }
    let a0 = match &args.a0 {
        Some(t) => parse_field_expr(t, args.degree_cap)?,
        None => Poly::zero(),
    };
    let a = match &args.a {
        Some(t) => {
            let parts = t.split(';').map(|p| parse_field_expr(p, args.degree_cap)).collect::<Result<Vec<_>>>()?;
            <[Poly; 3]>::try_from(parts)
                .map_err(|_| Error::Parse("--A needs three components separated by ';'".into()))?
        }
        None => [Poly::zero(), Poly::zero(), Poly::zero()],
    };
    FieldConfig::magnetic(a0, a, args.degree_cap)
}

struct Couplings<'a> {
    kind: Coupling,
    lambda1: &'a str,
    lambda2: &'a str,
    nu: &'a str,
    mu: &'a str,
}

fn reduce(system: &str, args: &ParamArgs, c: &Couplings, field: &FieldArgs, truncate: Option<&str>) -> Result<Outcome> {
    let mut params = parse_params(args)?;
    if system == "levy_leblond" {
        // the interacting spinor equation is taken at κ = ω = 0
        for k in ["kappa", "omega"] {
            params.entry(k.to_string()).or_insert_with(Poly::zero);
        }
    }
    let bs = beta_system(system, &params)?;
    let fc = field_config(field)?;
    let co = match c.kind {
        Coupling::Minimal => couple_minimal(&bs, &fc)?,
        Coupling::Anomalous => {
            let lam = if matches!(bs.rep.labels[..], [RepLabel::Spinor(_)]) {
                let chi = catalog::bispinor_lambda().to_poly();
                bs.beta0().rmul(&parse_parameter_expr(c.nu)?).add(&chi.rmul(&parse_parameter_expr(c.mu)?))
            } else {
                bs.beta0().clone()
            };
            couple_anomalous(&bs, &fc, &lam, &parse_parameter_expr(c.lambda1)?, &parse_parameter_expr(c.lambda2)?)?
        }
    };
    let (report, pass) = match truncate {
        Some(t) => {
            let r = spin_orbit_expand(&co, None, &TruncationSpec::parse(t)?)?;
            (r.to_json(), r.exact)
        }
        None => {
            let r = interaction::reduce(&co, None, &TruncationSpec::none())?;
            (r.to_json(), r.exact)
        }
    };
    Ok(Outcome { command: "reduce", pass, report })
}

fn proca(lambda: &str, field: &FieldArgs, seed: u64, samples: usize) -> Result<Outcome> {
    let lam = parse_parameter_expr(lambda)?;
    let free = catalog::proca_check(&lam, seed, samples)?;
    let coupled = proca_interacting(&lam, &field_config(field)?)?;
    let g_two = coupled.g() == Poly::int(2);
    let pass = free.pass() && coupled.psi4_vanishes && coupled.reduction.exact && g_two;
    let report = json!({ "free": free.to_json(), "interacting": coupled.to_json(), "g_is_two": g_two });
    Ok(Outcome { command: "proca", pass, report })
}
