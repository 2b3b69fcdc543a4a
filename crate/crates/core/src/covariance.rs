//! Finite Galilei transformations: boosts and axis rotations on a carrier, the
//! five-vector law, finite-boost covariance of the catalog equations and the
//! invariance of the Pauli-type terms.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::beta::BetaSystem;
use crate::catalog::{self, Canonical};
use crate::error::{Error, Result};
use crate::linalg::{nilpotent_exp, nullspace, SubspaceBasis};
use crate::matrix::{PMatrix, SMatrix};
use crate::poly::{sym, Poly, Sym};
use crate::reps::{build, RepLabel, Representation};
use crate::sample;
use crate::scalar::Scalar;

pub fn velocity() -> [Poly; 3] {
    ["v1", "v2", "v3"].map(Poly::sym)
}

/// Rotation about a coordinate axis by `θ`, with `c = cos(θ/2)`, `s = sin(θ/2)`
/// subject to `c² + s² = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisRotation {
    pub axis: usize,
    pub c: Poly,
    pub s: Poly,
}

impl AxisRotation {
    pub fn symbolic(axis: usize) -> Self {
        AxisRotation { axis, c: Poly::sym("c"), s: Poly::sym("s") }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoostParams {
    pub v: [Poly; 3],
    pub rotation: Option<AxisRotation>,
}

impl BoostParams {
    pub fn boost(v: [Poly; 3]) -> Self {
        BoostParams { v, rotation: None }
    }
}

/// Rewrites `s² → 1 − c²` for the half-angle symbols.
pub fn reduce_half_angle(p: &Poly) -> Poly {
    let (c, s) = (sym("c"), sym("s"));
    let one_minus_c2 = &Poly::one() - &Poly::var_pow(c, 2);
    let mut out = Poly::zero();
    for (mono, coef) in p.terms() {
        let k = mono.exp(s);
        if k < 2 {
            out = &out + &Poly::term(coef.clone(), mono.clone());
            continue;
        }
        let rest = Poly::term(coef.clone(), mono.with_exp(s, k % 2));
        out = &out + &(&rest * &one_minus_c2.pow((k / 2) as u32));
    }
    out
}

fn reduce_matrix(m: &PMatrix) -> PMatrix {
    m.map(reduce_half_angle)
}

/// `exp(iθ S_axis)` through the eigenprojectors of `S_axis`, in half-angle form.
pub fn rotation_matrix(rep: &Representation, rot: &AxisRotation) -> Result<PMatrix> {
    if rot.axis > 2 {
        return Err(Error::Invalid(format!("rotation axis {} out of range", rot.axis + 1)));
    }
    let d = rep.dim();
    let s = &rep.s[rot.axis];
    let spectrum: Vec<i64> =
        (-4..=4).filter(|&t| nullspace(&s.sub(&SMatrix::identity(d).scale(&Scalar::ratio(t, 2)))).dim() > 0).collect();
    let up = &rot.c + &rot.s.scale(&Scalar::i());
    let down = &rot.c - &rot.s.scale(&Scalar::i());
    let mut out = PMatrix::zeros(d, d);
    for &t in &spectrum {
        let mut proj = SMatrix::identity(d);
        for &u in spectrum.iter().filter(|&&u| u != t) {
            let shifted = s.sub(&SMatrix::identity(d).scale(&Scalar::ratio(u, 2)));
            proj = proj.mul(&shifted).scale(&Scalar::ratio(2, t - u));
        }
        let phase = if t >= 0 { up.pow(t as u32) } else { down.pow((-t) as u32) };
        out = out.add(&proj.to_poly().rmul(&phase));
    }
    Ok(reduce_matrix(&out))
}

/// `exp(i η·v) · exp(i θ S_axis)`.
pub fn group_element(rep: &Representation, bp: &BoostParams) -> Result<PMatrix> {
    let boost = nilpotent_exp(&rep.eta_dot(&bp.v).rmul(&Poly::constant(Scalar::i())), &Poly::one())?;
    match &bp.rotation {
        None => Ok(boost),
        Some(r) => Ok(reduce_matrix(&boost.mul(&rotation_matrix(rep, r)?))),
    }
}

/// `exp(i η†·v)`, the inverse adjoint of the boost.
fn dual_boost(rep: &Representation, v: &[Poly; 3]) -> Result<PMatrix> {
    let d = rep.dim();
    let x = (0..3).fold(PMatrix::zeros(d, d), |acc, a| acc.add(&rep.eta[a].adjoint().to_poly().rmul(&v[a])));
    nilpotent_exp(&x.rmul(&Poly::constant(Scalar::i())), &Poly::one())
}

/// `p̃ = T p` for upper five-vectors: `p̃⁰ = p⁰ + v·p + v²p⁴/2`, `p̃ = p + v p⁴`.
pub fn five_vector_transform(v: &[Poly; 3]) -> PMatrix {
    let mut t = PMatrix::identity(5);
    let v2 = v.iter().fold(Poly::zero(), |acc, x| &acc + &(x * x));
    for a in 0..3 {
        t.set(0, a + 1, v[a].clone());
        t.set(a + 1, 4, v[a].clone());
    }
    t.set(0, 4, v2.scale(&Scalar::ratio(1, 2)));
    t
}

/// Substitutes `pⁿ → p̃ⁿ` in a matrix over the five-momentum symbols.
pub fn boost_momentum(m: &PMatrix, v: &[Poly; 3]) -> Result<PMatrix> {
    let p = catalog::five_momentum();
    let t = five_vector_transform(v);
    let tilde: Vec<Poly> = (0..5).map(|i| (0..5).fold(Poly::zero(), |acc, j| &acc + &(t.get(i, j) * &p[j]))).collect();
    let syms: Vec<Sym> = ["p0", "p1", "p2", "p3", "m"].iter().map(|n| sym(n)).collect();
    // spatial components first: p̃⁰ contains p¹..p³
    let order = [1, 2, 3, 0, 4];
    m.try_map(|e| {
        let mut out = e.clone();
        for &k in &order {
            out = out.subs(syms[k], &tilde[k])?;
        }
        Ok(out)
    })
}

/// Equation `O(p) ψ = 0` together with the field transform `A(v)` and the
/// transform `B(v)` of its rows: covariance is `O(p̃) A = B O(p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceCase {
    pub name: String,
    pub operator: PMatrix,
    pub field: PMatrix,
    pub rows: PMatrix,
}

pub fn bhabha_case(bs: &BetaSystem) -> Result<CovarianceCase> {
    let v = velocity();
    Ok(CovarianceCase {
        name: bs.name.clone(),
        operator: bs.operator(&catalog::five_momentum()),
        field: group_element(&bs.rep, &BoostParams::boost(v.clone()))?,
        rows: dual_boost(&bs.rep, &v)?,
    })
}

fn slash(gammas: &[SMatrix; 5], p: &[Poly; 5]) -> PMatrix {
    (0..5).fold(PMatrix::zeros(4, 4), |acc, n| acc.add(&gammas[n].to_poly().rmul(&p[n])))
}

/// `exp(η·v)` on the bispinor carrier: the boost acting on the Clifford set,
/// `T γ̂_m T⁻¹` following the five-vector law.
pub fn clifford_boost(v: &[Poly; 3]) -> Result<PMatrix> {
    nilpotent_exp(&build(RepLabel::Spinor(2))?.eta_dot(v), &Poly::one())
}

/// `γ̂·p` with the bispinor boost on both sides.
pub fn clifford_case(gammas: &[SMatrix; 5]) -> Result<CovarianceCase> {
    let t = clifford_boost(&velocity())?;
    Ok(CovarianceCase {
        name: "gamma_hat".into(),
        operator: slash(gammas, &catalog::five_momentum()),
        field: t.clone(),
        rows: t,
    })
}

pub fn catalog_case(name: &str) -> Result<CovarianceCase> {
    let v = velocity();
    let t5 = five_vector_transform(&v);
    match catalog::canonical(name, &Default::default())? {
        Canonical::Beta(bs) => bhabha_case(&bs),
        Canonical::Gammas { gammas, .. } => clifford_case(&gammas),
        Canonical::Operator { matrix, .. } if name == "proca" => {
            Ok(CovarianceCase { name: name.into(), operator: matrix, field: t5.clone(), rows: t5 })
        }
        Canonical::Operator { matrix, .. } => {
            let a = t5.kron(&clifford_boost(&v)?);
            Ok(CovarianceCase { name: name.into(), operator: matrix, field: a.clone(), rows: a })
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceReport {
    pub name: String,
    pub mode: String,
    pub seed: Option<u64>,
    pub trials: usize,
    pub pass: bool,
    /// First failing sample (symbol → value) or, symbolically, the failing entry.
    pub failure: Option<Value>,
}

impl CovarianceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "system": self.name,
            "mode": self.mode,
            "seed": self.seed,
            "trials": self.trials,
            "pass": self.pass,
            "failure": self.failure,
        })
    }
}

fn sides(case: &CovarianceCase) -> Result<(PMatrix, PMatrix)> {
    let lhs = boost_momentum(&case.operator, &velocity())?.mul(&case.field);
    let rhs = case.rows.mul(&case.operator);
    Ok((lhs, rhs))
}

/// Identity in `v`, `p` and all parameters.
pub fn covariance_symbolic(case: &CovarianceCase) -> Result<CovarianceReport> {
    let (lhs, rhs) = sides(case)?;
    let failure = lhs.first_difference(&rhs).map(|(i, j)| json!({"entry": [i, j]}));
    Ok(CovarianceReport {
        name: case.name.clone(),
        mode: "symbolic".into(),
        seed: None,
        trials: 0,
        pass: failure.is_none(),
        failure,
    })
}

/// `trials` seeded rational points for `v`, `p` and every free parameter.
pub fn covariance_sampled(case: &CovarianceCase, seed: u64, trials: usize) -> Result<CovarianceReport> {
    let mut rng = sample::rng(seed);
    let p = catalog::five_momentum();
    let v = velocity();
    let t5 = five_vector_transform(&v);
    let mut symbols = case.operator.symbols();
    symbols.extend(case.field.symbols());
    symbols.extend(case.rows.symbols());
    let points: Vec<HashMap<Sym, Scalar>> =
        (0..trials).map(|_| symbols.iter().map(|&s| (s, sample::rational(&mut rng, 9, 4))).collect()).collect();
    let check = |pt: &HashMap<Sym, Scalar>| -> Result<bool> {
        let tilde: Vec<Poly> =
            (0..5).map(|i| (0..5).fold(Poly::zero(), |acc, j| &acc + &(t5.get(i, j) * &p[j]))).collect();
        let mut shifted = pt.clone();
        for (k, name) in ["p0", "p1", "p2", "p3", "m"].iter().enumerate() {
            if let Ok(val) = tilde[k].eval(pt) {
                shifted.insert(sym(name), val);
            }
        }
        let op_t = case.operator.eval(&shifted)?;
        let lhs = op_t.mul(&case.field.eval(pt)?);
        let rhs = case.rows.eval(pt)?.mul(&case.operator.eval(pt)?);
        Ok(lhs == rhs)
    };
    let results = crate::par::map(&points, |pt| check(pt));
    let mut failure = None;
    for (pt, r) in points.iter().zip(results) {
        if !r? {
            let mut named: Vec<(String, String)> = pt.iter().map(|(k, v)| (k.name(), v.to_string())).collect();
            named.sort();
            failure = Some(json!(named.into_iter().collect::<std::collections::BTreeMap<_, _>>()));
            break;
        }
    }
    Ok(CovarianceReport {
        name: case.name.clone(),
        mode: "sampled".into(),
        seed: Some(seed),
        trials,
        pass: failure.is_none(),
        failure,
    })
}

/// Finite-boost covariance of a β-system, symbolically.
pub fn finite_boost_covariance(bs: &BetaSystem) -> Result<CovarianceReport> {
    covariance_symbolic(&bhabha_case(bs)?)
}

// ---------------------------------------------------------------------------

/// Solutions of `S_a Λ = Λ S_a`, `η_a† Λ = Λ η_a`, as row-major vectors.
pub fn find_lambda_space(rep: &Representation) -> SubspaceBasis {
    let d = rep.dim();
    let id = SMatrix::identity(d);
    let mut blocks = Vec::new();
    for a in 0..3 {
        // vec(XΛ − ΛY) = (X ⊗ I − I ⊗ Yᵀ) vec(Λ), row-major
        blocks.push(rep.s[a].kron(&id).sub(&id.kron(&rep.s[a].transpose())));
        blocks.push(rep.eta[a].adjoint().kron(&id).sub(&id.kron(&rep.eta[a].transpose())));
    }
    nullspace(&SMatrix::vstack(&blocks))
}

pub fn lambda_from_vector(d: usize, v: &[Scalar]) -> SMatrix {
    SMatrix::from_fn(d, d, |i, j| v[i * d + j].clone())
}

pub fn lambda_basis(rep: &Representation) -> Vec<SMatrix> {
    find_lambda_space(rep).vectors().iter().map(|v| lambda_from_vector(rep.dim(), v)).collect()
}

/// Which of the conditions on `Λ` fail, as `"S_a"` / `"eta_a"` labels.
pub fn lambda_violations(rep: &Representation, lambda: &PMatrix) -> Vec<String> {
    let mut out = Vec::new();
    for a in 0..3 {
        let s = rep.s[a].to_poly();
        if s.mul(lambda) != lambda.mul(&s) {
            out.push(format!("S{}", a + 1));
        }
        if rep.eta[a].adjoint().to_poly().mul(lambda) != lambda.mul(&rep.eta[a].to_poly()) {
            out.push(format!("eta{}", a + 1));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliInvariance {
    pub f1: bool,
    pub f2: bool,
}

impl PauliInvariance {
    pub fn pass(&self) -> bool {
        self.f1 && self.f2
    }

    pub fn to_json(&self) -> Value {
        json!({"f1_invariant": self.f1, "f2_invariant": self.f2, "pass": self.pass()})
    }
}

fn field_symbols(prefix: &str) -> [Poly; 3] {
    [1, 2, 3].map(|a| Poly::sym(&format!("{prefix}{a}")))
}

fn cross(u: &[Poly; 3], w: &[Poly; 3]) -> [Poly; 3] {
    [0, 1, 2].map(|c| {
        let (i, j) = ((c + 1) % 3, (c + 2) % 3);
        &(&u[i] * &w[j]) - &(&u[j] * &w[i])
    })
}

pub(crate) fn dot_matrices(ms: &[SMatrix; 3], f: &[Poly; 3]) -> PMatrix {
    let d = ms[0].rows();
    (0..3).fold(PMatrix::zeros(d, d), |acc, a| acc.add(&ms[a].to_poly().rmul(&f[a])))
}

/// `F1 = Λ(S·H − η·E)`, `F2 = Λ η·H`.
pub fn pauli_terms(rep: &Representation, lambda: &PMatrix, e: &[Poly; 3], h: &[Poly; 3]) -> (PMatrix, PMatrix) {
    let f1 = lambda.mul(&dot_matrices(&rep.s, h).sub(&dot_matrices(&rep.eta, e)));
    let f2 = lambda.mul(&dot_matrices(&rep.eta, h));
    (f1, f2)
}

/// With symbolic `v`, `E`, `H`: `exp(iη†·v) F(E − v×H, H) exp(−iη·v) = F(E, H)`.
pub fn pauli_term_invariance(rep: &Representation, lambda: &PMatrix) -> Result<PauliInvariance> {
    let bad = lambda_violations(rep, lambda);
    if !bad.is_empty() {
        return Err(Error::Invalid(format!("Lambda violates the commutation conditions: {}", bad.join(", "))));
    }
    let v = velocity();
    let (e, h) = (field_symbols("E"), field_symbols("H"));
    let vxh = cross(&v, &h);
    let e2 = [0, 1, 2].map(|a| &e[a] - &vxh[a]);
    let left = dual_boost(rep, &v)?;
    let right = nilpotent_exp(&rep.eta_dot(&v).rmul(&Poly::constant(-Scalar::i())), &Poly::one())?;
    let (f1, f2) = pauli_terms(rep, lambda, &e, &h);
    let (g1, g2) = pauli_terms(rep, lambda, &e2, &h);
    Ok(PauliInvariance { f1: left.mul(&g1).mul(&right) == f1, f2: left.mul(&g2).mul(&right) == f2 })
}

/// Rotation of a three-vector by `θ` about `axis` in half-angle form.
pub fn rotation_3x3(rot: &AxisRotation) -> PMatrix {
    let two = Scalar::int(2);
    let cos = &(&rot.c * &rot.c) - &(&rot.s * &rot.s);
    let sin = (&rot.c * &rot.s).scale(&two);
    let (i, j) = ((rot.axis + 1) % 3, (rot.axis + 2) % 3);
    let mut r = PMatrix::identity(3);
    r.set(i, i, cos.clone());
    r.set(j, j, cos);
    r.set(i, j, -&sin);
    r.set(j, i, sin);
    reduce_matrix(&r)
}

/// `T S_a T⁻¹ = Σ_b R_ab S_b` for the rotation factor alone: `exp(iθS)` acts on
/// the vector index as a rotation by `−θ`.
pub fn rotation_acts_on_spin(rep: &Representation, rot: &AxisRotation) -> Result<bool> {
    let t = rotation_matrix(rep, rot)?;
    // c, s are real, so the unitary inverse is the adjoint
    let inv = t.adjoint();
    let r = rotation_3x3(rot);
    let s: Vec<PMatrix> = rep.s.iter().map(|x| x.to_poly()).collect();
    for a in 0..3 {
        let lhs = reduce_matrix(&t.mul(&s[a]).mul(&inv));
        let rhs = (0..3).fold(PMatrix::zeros(rep.dim(), rep.dim()), |acc, b| acc.add(&s[b].rmul(r.get(a, b))));
        if reduce_matrix(&rhs) != lhs {
            return Ok(false);
        }
    }
    Ok(true)
}
