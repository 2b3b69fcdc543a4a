//! Solving the invariance conditions for β-matrices on vector/scalar carriers,
//! assembling full systems, and checking them.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{nullspace, SubspaceBasis};
use crate::matrix::{Matrix, PMatrix, SMatrix};
use crate::poly::{Poly, Sym};
use crate::reps::{build, build_sum, k_rows, spin_one, table_triple, RepLabel, Representation, Triple};
use crate::scalar::Scalar;

/// `β0, β1, β2, β3, β4` on a carrier, with free-parameter names.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaSystem {
    pub name: String,
    pub rep: Representation,
    pub beta: [PMatrix; 5],
    pub params: Vec<String>,
}

impl BetaSystem {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn beta0(&self) -> &PMatrix {
        &self.beta[0]
    }

    pub fn beta4(&self) -> &PMatrix {
        &self.beta[4]
    }

    /// `β0 p0 + β_a p_a + β4 p4`.
    pub fn operator(&self, p: &[Poly; 5]) -> PMatrix {
        (0..5).fold(PMatrix::zeros(self.dim(), self.dim()), |acc, k| acc.add(&self.beta[k].rmul(&p[k])))
    }

    pub fn subs(&self, s: Sym, v: &Poly) -> Result<BetaSystem> {
        let mut out = self.clone();
        for b in out.beta.iter_mut() {
            *b = b.subs(s, v)?;
        }
        Ok(out)
    }

    /// `β → U† β U`.
    pub fn transform(&self, u: &PMatrix) -> BetaSystem {
        let ud = u.adjoint();
        let mut out = self.clone();
        for b in out.beta.iter_mut() {
            *b = ud.mul(b).mul(u);
        }
        out
    }

    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.beta.iter().flat_map(|b| b.symbols()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "carrier": self.rep.label_text(),
            "params": self.params,
            "beta": self.beta.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// `(b2)` solution space for the block between `q` (rows) and `q'` (columns).
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSpace {
    pub left: RepLabel,
    pub right: RepLabel,
    /// `R` is `n × n'`, `E` is `m × m'`.
    pub shape: (usize, usize, usize, usize),
    pub basis: SubspaceBasis,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn pair_from_vector(&self, v: &[Scalar]) -> (SMatrix, SMatrix) {
        let (n, n2, m, m2) = self.shape;
        let r = SMatrix::from_fn(n, n2, |i, j| v[i * n2 + j].clone());
        let e = SMatrix::from_fn(m, m2, |i, j| v[n * n2 + i * m2 + j].clone());
        (r, e)
    }

    pub fn pairs(&self) -> Vec<(SMatrix, SMatrix)> {
        self.basis.vectors().iter().map(|v| self.pair_from_vector(v)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pair": [self.left.to_string(), self.right.to_string()],
            "dim": self.dim(),
            "basis": self.pairs().iter().map(|(r, e)| json!({"R": r.to_json(), "E": e.to_json()})).collect::<Vec<_>>(),
        })
    }
}

fn vector_triple(q: RepLabel) -> Result<Triple> {
    match q {
        RepLabel::Vector { n, m, l } => table_triple(n, m, l),
        RepLabel::Spinor(_) => {
            Err(Error::Invalid(format!("{q}: spinor carriers have the closed-form solution and are not solved here")))
        }
    }
}

/// Coefficient matrix of `(R, E) ↦ (A†)²R + R A'² − A†RA' + C†EC'`.
fn b2_map(t: &Triple, t2: &Triple) -> SMatrix {
    let (n, m, n2, m2) = (t.n(), t.m(), t2.n(), t2.m());
    let unknowns = n * n2 + m * m2;
    let ad = t.a.adjoint();
    let ad2 = ad.mul(&ad);
    let a2sq = t2.a.mul(&t2.a);
    let cd = t.c.adjoint();
    let image = |r: &SMatrix, e: &SMatrix| -> Vec<Scalar> {
        let lhs = ad2.mul(r).add(&r.mul(&a2sq)).sub(&ad.mul(r).mul(&t2.a)).add(&cd.mul(e).mul(&t2.c));
        lhs.vectorize()
    };
    let cols: Vec<Vec<Scalar>> = (0..unknowns)
        .map(|k| {
            let mut v = vec![Scalar::zero(); unknowns];
            v[k] = Scalar::one();
            let r = SMatrix::from_fn(n, n2, |i, j| v[i * n2 + j].clone());
            let e = SMatrix::from_fn(m, m2, |i, j| v[n * n2 + i * m2 + j].clone());
            image(&r, &e)
        })
        .collect();
    let rows = n * n2;
    SMatrix::from_fn(rows, unknowns, |i, j| cols[j][i].clone())
}

pub fn solve_beta4_space(q: RepLabel, q2: RepLabel) -> Result<SolutionSpace> {
    let (t, t2) = (vector_triple(q)?, vector_triple(q2)?);
    let shape = (t.n(), t2.n(), t.m(), t2.m());
    let unknowns = shape.0 * shape.1 + shape.2 * shape.3;
    let map = b2_map(&t, &t2);
    let basis = if map.rows() == 0 {
        SubspaceBasis::span(unknowns, &(0..unknowns).map(|k| unit(unknowns, k)).collect::<Vec<_>>())
    } else {
        nullspace(&map)
    };
    Ok(SolutionSpace { left: q, right: q2, shape, basis })
}

fn unit(n: usize, k: usize) -> Vec<Scalar> {
    (0..n).map(|j| if j == k { Scalar::one() } else { Scalar::zero() }).collect()
}

/// β-matrices from `(R, E)` on a vector/scalar carrier (`A' = A`).
pub fn assemble_raw(t: &Triple, r: &PMatrix, e: &PMatrix) -> [PMatrix; 5] {
    let (n, m) = (t.n(), t.m());
    let (a, b, c) = (t.a.to_poly(), t.b.to_poly(), t.c.to_poly());
    let (ad, bd, cd) = (a.adjoint(), b.adjoint(), c.adjoint());
    let h = ad.mul(r).sub(&r.mul(&a));
    let mm = cd.mul(e).sub(&r.mul(&b));
    let nn = bd.mul(r).sub(&e.mul(&c));
    let f = cd.mul(e).mul(&c).add(&ad.mul(r).mul(&a));
    let g = bd.mul(r).mul(&b).scale(&Scalar::int(2)).sub(&bd.mul(&cd).mul(e)).sub(&e.mul(&c).mul(&b));
    let i3 = PMatrix::identity(3);
    let s1 = spin_one().map(|s| s.to_poly());
    let k = k_rows().map(|x| x.to_poly());
    let beta4 = Matrix::block_diag(&[r.kron(&i3), e.clone()]);
    let beta0 = Matrix::block_diag(&[f.kron(&i3), g]);
    let dim = 3 * n + m;
    let ii = Poly::constant(Scalar::i());
    let ba = [0, 1, 2].map(|x| {
        let mut out = PMatrix::zeros(dim, dim);
        out.put(0, 0, &h.kron(&s1[x]));
        out.put(0, 3 * n, &mm.kron(&k[x].adjoint()));
        out.put(3 * n, 0, &nn.kron(&k[x]));
        out.lmul(&ii)
    });
    let [b1, b2, b3] = ba;
    [beta0, b1, b2, b3, beta4]
}

/// Assembles and verifies; a violated condition is an internal fault.
pub fn assemble(rep: &Representation, r: &PMatrix, e: &PMatrix, name: &str, params: &[&str]) -> Result<BetaSystem> {
    let t = rep.triple.as_ref().ok_or_else(|| Error::Invalid("assembly needs a vector/scalar carrier".into()))?;
    if r.shape() != (t.n(), t.n()) || e.shape() != (t.m(), t.m()) {
        return Err(Error::Shape(format!(
            "R must be {0}x{0} and E {1}x{1} for carrier {2}",
            t.n(),
            t.m(),
            rep.label_text()
        )));
    }
    let bs = BetaSystem {
        name: name.to_string(),
        rep: rep.clone(),
        beta: assemble_raw(t, r, e),
        params: params.iter().map(|s| s.to_string()).collect(),
    };
    let report = verify_conditions(&bs);
    if !report.pass() {
        return Err(Error::Internal(format!("assembled system violates invariance: {}", report.summary())));
    }
    Ok(bs)
}

/// Assembles a `(q, q')` solution pair on the carrier `q ⊕ q'`, with only the
/// `(q, q')` blocks of `β4` nonzero. For `q = q'` the carrier is `q` itself.
pub fn assemble_pair(q: RepLabel, q2: RepLabel, r: &SMatrix, e: &SMatrix) -> Result<BetaSystem> {
    if q == q2 {
        let rep = build(q)?;
        return assemble(&rep, &r.to_poly(), &e.to_poly(), &format!("{q}x{q2}"), &[]);
    }
    let rep = build_sum(&[q, q2])?;
    let t = rep.triple.clone().expect("vector carrier");
    let (n, m) = (q.nm().unwrap().0, q.nm().unwrap().1);
    let mut rf = SMatrix::zeros(t.n(), t.n());
    rf.put(0, n, r);
    let mut ef = SMatrix::zeros(t.m(), t.m());
    ef.put(0, m, e);
    assemble(&rep, &rf.to_poly(), &ef.to_poly(), &format!("{q}x{q2}"), &[])
}

#[derive(Clone, Debug, PartialEq)]
pub struct CondFailure {
    /// 1: `η†β4 − β4η = −iβ_a`; 2: `η_a†β_b − β_bη_a = −iδ_ab β0`;
    /// 3: `η†β0 − β0η = 0`; 4: `[β0,S] = [β4,S] = 0`.
    pub family: u8,
    pub a: usize,
    pub b: usize,
    pub entry: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct CondReport {
    pub failures: Vec<CondFailure>,
}

impl CondReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn families(&self) -> BTreeSet<u8> {
        self.failures.iter().map(|f| f.family).collect()
    }

    pub fn summary(&self) -> String {
        match self.failures.first() {
            None => "all conditions hold".into(),
            Some(f) => format!(
                "{} failures, first in family {} (a={}, b={}) at entry {:?}",
                self.failures.len(),
                f.family,
                f.a + 1,
                f.b + 1,
                f.entry
            ),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass(),
            "failures": self.failures.iter().map(|f| json!({
                "family": f.family, "a": f.a + 1, "b": f.b + 1, "entry": [f.entry.0, f.entry.1]
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn verify_conditions(bs: &BetaSystem) -> CondReport {
    let eta: Vec<PMatrix> = bs.rep.eta.iter().map(|e| e.to_poly()).collect();
    let etad: Vec<PMatrix> = bs.rep.eta.iter().map(|e| e.adjoint().to_poly()).collect();
    let s: Vec<PMatrix> = bs.rep.s.iter().map(|e| e.to_poly()).collect();
    let mi = Poly::constant(-Scalar::i());
    let d = bs.dim();
    let mut report = CondReport::default();
    let mut check = |family: u8, a: usize, b: usize, lhs: PMatrix, rhs: PMatrix| {
        if let Some(entry) = lhs.first_difference(&rhs) {
            report.failures.push(CondFailure { family, a, b, entry });
        }
    };
    let [b0, b1, b2, b3, b4] = &bs.beta;
    let ba = [b1, b2, b3];
    for a in 0..3 {
        check(1, a, a, etad[a].mul(b4).sub(&b4.mul(&eta[a])), ba[a].lmul(&mi));
        for b in 0..3 {
            let rhs = if a == b { b0.lmul(&mi) } else { PMatrix::zeros(d, d) };
            check(2, a, b, etad[a].mul(ba[b]).sub(&ba[b].mul(&eta[a])), rhs);
        }
        check(3, a, a, etad[a].mul(b0).sub(&b0.mul(&eta[a])), PMatrix::zeros(d, d));
        check(4, a, 0, b0.commutator(&s[a]), PMatrix::zeros(d, d));
        check(4, a, 4, b4.commutator(&s[a]), PMatrix::zeros(d, d));
    }
    report
}

/// Independent oracle: dimension of the space of `(R, E)` (block form of a
/// rotation-scalar `β4`) for which the invariance conditions admit β0, β_a.
/// `β_a` is read off family 1 and `β0` off family 2; the remaining relations
/// are imposed as linear constraints.
pub fn invariance_space(rep: &Representation) -> Result<SubspaceBasis> {
    let t = rep.triple.as_ref().ok_or_else(|| Error::Invalid("vector carrier required".into()))?;
    let (n, m) = (t.n(), t.m());
    let unknowns = n * n + m * m;
    let d = rep.dim();
    let eta = &rep.eta;
    let etad: Vec<SMatrix> = eta.iter().map(|e| e.adjoint()).collect();
    let i3 = SMatrix::identity(3);
    let residual = |k: usize| -> Vec<Scalar> {
        let v = unit(unknowns, k);
        let r = SMatrix::from_fn(n, n, |i, j| v[i * n + j].clone());
        let e = SMatrix::from_fn(m, m, |i, j| v[n * n + i * m + j].clone());
        let b4 = Matrix::block_diag(&[r.kron(&i3), e]);
        let ba: Vec<SMatrix> = (0..3).map(|a| etad[a].mul(&b4).sub(&b4.mul(&eta[a])).scale(&Scalar::i())).collect();
        let b0 = etad[0].mul(&ba[0]).sub(&ba[0].mul(&eta[0])).scale(&Scalar::i());
        let mut out = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                let lhs = etad[a].mul(&ba[b]).sub(&ba[b].mul(&eta[a]));
                let rhs = if a == b { b0.scale(&-Scalar::i()) } else { SMatrix::zeros(d, d) };
                out.extend(lhs.sub(&rhs).vectorize());
            }
            out.extend(etad[a].mul(&b0).sub(&b0.mul(&eta[a])).vectorize());
            out.extend(b0.commutator(&rep.s[a]).vectorize());
        }
        out
    };
    let cols: Vec<Vec<Scalar>> = (0..unknowns).map(residual).collect();
    let rows = cols.first().map_or(0, |c| c.len());
    let map = SMatrix::from_fn(rows, unknowns, |i, j| cols[j][i].clone());
    Ok(nullspace(&map))
}

/// Solution space of `(b2)` on a whole (possibly reducible) carrier.
pub fn solve_beta4_carrier(rep: &Representation) -> Result<SubspaceBasis> {
    let t = rep.triple.as_ref().ok_or_else(|| Error::Invalid("vector carrier required".into()))?;
    let map = b2_map(t, t);
    let unknowns = t.n() * t.n() + t.m() * t.m();
    if map.rows() == 0 {
        return Ok(SubspaceBasis::span(unknowns, &(0..unknowns).map(|k| unit(unknowns, k)).collect::<Vec<_>>()));
    }
    Ok(nullspace(&map))
}

/// Record of an equivalence normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization {
    pub system: BetaSystem,
    /// Accumulated `U` with `β → U† β U`.
    pub transform: PMatrix,
    /// `c` in `β4 → β4 − c β0`, removable by the phase `ψ → exp(i c m t) ψ`.
    pub phase: Poly,
    pub removed_by_transform: Vec<String>,
    pub removed_by_phase: Vec<String>,
}

impl Normalization {
    pub fn is_identity(&self) -> bool {
        self.transform == PMatrix::identity(self.transform.rows()) && self.phase.is_zero()
    }
}

/// Matrices commuting with every `S_a` and `η_a`.
pub fn boost_commutant(rep: &Representation) -> SubspaceBasis {
    let d = rep.dim();
    let unknowns = d * d;
    let gens: Vec<&SMatrix> = rep.s.iter().chain(rep.eta.iter()).collect();
    let cols: Vec<Vec<Scalar>> = (0..unknowns)
        .map(|k| {
            let x = SMatrix::from_fn(d, d, |i, j| if i * d + j == k { Scalar::one() } else { Scalar::zero() });
            gens.iter().flat_map(|g| x.commutator(g).vectorize()).collect()
        })
        .collect();
    let rows = cols[0].len();
    nullspace(&SMatrix::from_fn(rows, unknowns, |i, j| cols[j][i].clone()))
}

fn param_symbols(bs: &BetaSystem) -> BTreeSet<Sym> {
    let names: BTreeSet<&str> = bs.params.iter().map(|s| s.as_str()).collect();
    bs.symbols().into_iter().filter(|s| names.contains(s.name().as_str())).collect()
}

/// Removes the `β0`-proportional part of `β4` that the phase can absorb.
fn phase_part(bs: &BetaSystem) -> Poly {
    let (b0, b4) = (bs.beta0(), bs.beta4());
    for k in 0..b0.rows() {
        if let Some(c) = b0.get(k, k).as_constant().filter(|c| !c.is_zero()) {
            let ratio = b4.get(k, k).scale(&c.inv().unwrap());
            if !ratio.is_zero() && ratio.as_constant().is_none() {
                return ratio;
            }
        }
    }
    Poly::zero()
}

/// Greedy search: for nilpotent `N` in the boost commutant, `U = I + τN` or
/// `I + iτN` with real `τ` solving one linear entry of `β4'`; a step is kept only
/// if it reduces the set of free parameters (after phase absorption).
pub fn normalize_equivalence(bs: &BetaSystem) -> Normalization {
    let d = bs.dim();
    let tau = Poly::sym("tau");
    let tau_sym = crate::poly::sym("tau");
    let mut current = bs.clone();
    let mut transform = PMatrix::identity(d);
    let mut removed_t = Vec::new();
    let commutant = boost_commutant(&bs.rep);
    let nilpotents: Vec<SMatrix> = commutant
        .vectors()
        .iter()
        .map(|v| SMatrix::from_fn(d, d, |i, j| v[i * d + j].clone()))
        .filter(|x| !x.is_zero() && x.mul(x).is_zero())
        .collect();
    let absorb = |sys: &BetaSystem| -> (BetaSystem, Poly) {
        let c = phase_part(sys);
        let mut out = sys.clone();
        out.beta[4] = sys.beta4().sub(&sys.beta0().rmul(&c));
        (out, c)
    };
    'outer: loop {
        let before = param_symbols(&absorb(&current).0);
        for nmat in &nilpotents {
            for unit_factor in [Scalar::one(), Scalar::i()] {
                let u = PMatrix::identity(d).add(&nmat.to_poly().rmul(&Poly::constant(unit_factor.clone())).rmul(&tau));
                let trial = current.transform(&u);
                let b4 = trial.beta4();
                for idx in 0..d * d {
                    let entry = b4.get(idx / d, idx % d);
                    if entry.max_exp(tau_sym) != 1 || entry.min_exp(tau_sym) < 0 {
                        continue;
                    }
                    let coef = entry.coeff_of(tau_sym, 1);
                    let rest = entry.coeff_of(tau_sym, 0);
                    let Some(inv) = coef.inv_unit() else { continue };
                    if rest.is_zero() {
                        continue;
                    }
                    let value = -&(&rest * &inv);
                    if value.terms().any(|(_, c)| !c.is_real()) {
                        continue;
                    }
                    let Ok(cand) = trial.subs(tau_sym, &value) else { continue };
                    let after = param_symbols(&absorb(&cand).0);
                    if after.len() < before.len() && after.is_subset(&before) {
                        for s in before.difference(&after) {
                            removed_t.push(s.name());
                        }
                        let uval = u.subs(tau_sym, &value).expect("polynomial substitution");
                        transform = transform.mul(&uval);
                        current = cand;
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    let before_phase = param_symbols(&current);
    let (system, phase) = absorb(&current);
    let after_phase = param_symbols(&system);
    let removed_p: Vec<String> = before_phase.difference(&after_phase).map(|s| s.name()).collect();
    let removed_p = removed_p.into_iter().filter(|s| !removed_t.contains(s)).collect();
    Normalization { system, transform, phase, removed_by_transform: removed_t, removed_by_phase: removed_p }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_solution_assembles_to_zero() {
        let rep = build(RepLabel::vector(3, 1, 1)).unwrap();
        let bs = assemble(&rep, &PMatrix::zeros(3, 3), &PMatrix::zeros(1, 1), "zero", &[]).unwrap();
        assert!(bs.beta.iter().all(|b| b.is_zero()));
    }

    #[test]
    fn spinor_rejected() {
        assert!(solve_beta4_space(RepLabel::Spinor(2), RepLabel::Spinor(2)).is_err());
    }
}
