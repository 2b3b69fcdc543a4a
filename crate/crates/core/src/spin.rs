//! Casimir operators of the Galilei algebra, their diagonalization, plane-wave
//! spin content and the rank conditions for a single particle.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::beta::BetaSystem;
use crate::error::{Error, Result};
use crate::linalg::{det_expansion, nilpotent_exp, nullspace, rank};
use crate::matrix::{Matrix, PMatrix, SMatrix};
use crate::poly::{sym, Poly, Sym};
use crate::reps::{levi_civita, Representation};
use crate::scalar::Scalar;
use crate::weyl::Weyl;

fn m_sym() -> Poly {
    Poly::sym("m")
}

fn momentum3() -> [Poly; 3] {
    ["p1", "p2", "p3"].map(Poly::sym)
}

pub fn epsilon_sym() -> Sym {
    sym("epsilon")
}

/// `C1 = m I`, `C2 = 2 m p0 − p²`, `C3` as a matrix polynomial in `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct CasimirSet {
    pub c1: PMatrix,
    pub c2: Poly,
    pub c3: PMatrix,
}

pub fn c2_poly() -> Poly {
    let p = momentum3();
    let p2 = p.iter().fold(Poly::zero(), |acc, x| &acc + &(x * x));
    &(&m_sym() * &Poly::sym("p0")).scale(&Scalar::int(2)) - &p2
}

/// `C3 = m²S² + m(S×η)·p − m(η×S)·p + p²η² − (p·η)²`.
pub fn casimirs(rep: &Representation) -> CasimirSet {
    let d = rep.dim();
    let m = m_sym();
    let p = momentum3();
    let s: Vec<PMatrix> = rep.s.iter().map(|x| x.to_poly()).collect();
    let eta: Vec<PMatrix> = rep.eta.iter().map(|x| x.to_poly()).collect();
    let mut c3 = rep.spin_squared().to_poly().rmul(&(&m * &m));
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let e = levi_civita(a, b, c);
                if e == 0 {
                    continue;
                }
                // (S×η)_a p_a and (η×S)_a p_a
                let coef = (&m * &p[a]).scale(&Scalar::int(e));
                let diff = s[b].mul(&eta[c]).sub(&eta[b].mul(&s[c]));
                c3 = c3.add(&diff.rmul(&coef));
            }
        }
    }
    let p2 = p.iter().fold(Poly::zero(), |acc, x| &acc + &(x * x));
    let eta2 = (0..3).fold(PMatrix::zeros(d, d), |acc, a| acc.add(&eta[a].mul(&eta[a])));
    let eta_p = rep.eta_dot(&p);
    c3 = c3.add(&eta2.rmul(&p2)).sub(&eta_p.mul(&eta_p));
    CasimirSet { c1: PMatrix::identity(d).rmul(&m), c2: c2_poly(), c3 }
}

/// The ten generators as matrices of operators. `G_a` is split as
/// `t·P_a + g_a` with `g_a = −m x_a + η_a`.
struct Generators {
    p0: Matrix<Weyl>,
    p: [Matrix<Weyl>; 3],
    mass: Matrix<Weyl>,
    j: [Matrix<Weyl>; 3],
    g: [Matrix<Weyl>; 3],
}

fn weyl_of(m: &SMatrix) -> Matrix<Weyl> {
    m.map(|c| Weyl::scalar(c.clone()))
}

fn weyl_identity(d: usize, w: Weyl) -> Matrix<Weyl> {
    Matrix::scalar_identity(d, w)
}

fn generators(rep: &Representation) -> Generators {
    let d = rep.dim();
    let m = Weyl::central(m_sym());
    let j = [0, 1, 2].map(|a| {
        let mut orb = Weyl::zero();
        for b in 0..3 {
            for c in 0..3 {
                let e = levi_civita(a, b, c);
                if e != 0 {
                    orb = &orb + &(&Weyl::x(b) * &Weyl::p(c)).map_coeffs(|k| k.scale(&Scalar::int(e)));
                }
            }
        }
        weyl_identity(d, orb).add(&weyl_of(&rep.s[a]))
    });
    let g = [0, 1, 2].map(|a| weyl_identity(d, -&(&m * &Weyl::x(a))).add(&weyl_of(&rep.eta[a])));
    Generators {
        p0: weyl_identity(d, Weyl::p0()),
        p: [0, 1, 2].map(|a| weyl_identity(d, Weyl::p(a))),
        mass: weyl_identity(d, m),
        j,
        g,
    }
}

/// `∂/∂p0` of every entry; `[A, t] = i ∂A/∂p0` since `[p0, t] = i`.
fn d_dp0(a: &Matrix<Weyl>) -> Matrix<Weyl> {
    a.map(|w| {
        let mut out = Weyl::zero();
        for (k, c) in w.terms() {
            if k.p0 > 0 {
                let mut k2 = *k;
                k2.p0 -= 1;
                out.add_term(k2, c.scale(&Scalar::int(k.p0 as i64)));
            }
        }
        out
    })
}

/// Names of generators that fail to commute with `c`.
fn non_commuting(c: &Matrix<Weyl>, gens: &Generators) -> Vec<String> {
    let mut bad = Vec::new();
    let mut check = |name: String, comm: Matrix<Weyl>| {
        if !comm.is_zero() {
            bad.push(name);
        }
    };
    check("P0".into(), c.commutator(&gens.p0));
    check("M".into(), c.commutator(&gens.mass));
    for a in 0..3 {
        check(format!("P{}", a + 1), c.commutator(&gens.p[a]));
        check(format!("J{}", a + 1), c.commutator(&gens.j[a]));
        // [C, t P_a + g_a] = t [C, P_a] + i (∂C/∂p0) P_a + [C, g_a]
        let time_part = d_dp0(c).mul(&gens.p[a]).map(|w| w.map_coeffs(|k| k.scale(&Scalar::i())));
        let rest = c.commutator(&gens.g[a]).add(&time_part);
        let comm_t = c.commutator(&gens.p[a]);
        check(format!("G{}", a + 1), if comm_t.is_zero() { rest } else { comm_t });
    }
    bad
}

/// `C3` rebuilt from `(mJ − P×G)²` with normal ordering.
fn c3_from_generators(gens: &Generators, d: usize) -> Matrix<Weyl> {
    let k = [0, 1, 2].map(|a| {
        let mut acc = gens.mass.mul(&gens.j[a]);
        for b in 0..3 {
            for c in 0..3 {
                let e = levi_civita(a, b, c);
                if e != 0 {
                    let term = gens.p[b].mul(&gens.g[c]);
                    acc = acc.sub(&term.map(|w| w.map_coeffs(|x| x.scale(&Scalar::int(e)))));
                }
            }
        }
        acc
    });
    (0..3).fold(Matrix::zeros(d, d), |acc, a| acc.add(&k[a].mul(&k[a])))
}

fn to_weyl(m: &PMatrix) -> Result<Matrix<Weyl>> {
    m.try_map(Weyl::from_poly)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CasimirReport {
    pub carrier: String,
    pub c3_matches_generators: bool,
    pub c2_noncommuting: Vec<String>,
    pub c3_noncommuting: Vec<String>,
}

impl CasimirReport {
    pub fn pass(&self) -> bool {
        self.c3_matches_generators && self.c2_noncommuting.is_empty() && self.c3_noncommuting.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "carrier": self.carrier,
            "c3_matches_generators": self.c3_matches_generators,
            "c2_noncommuting": self.c2_noncommuting,
            "c3_noncommuting": self.c3_noncommuting,
            "pass": self.pass(),
        })
    }
}

/// Checks the assembled `C3` against the generators and the centrality of `C2`, `C3`.
pub fn casimir_report(rep: &Representation) -> Result<CasimirReport> {
    let d = rep.dim();
    let cs = casimirs(rep);
    let gens = generators(rep);
    let c3 = to_weyl(&cs.c3)?;
    let c2 = weyl_identity(d, Weyl::from_poly(&cs.c2)?);
    Ok(CasimirReport {
        carrier: rep.label_text(),
        c3_matches_generators: c3_from_generators(&gens, d) == c3,
        c2_noncommuting: non_commuting(&c2, &gens),
        c3_noncommuting: non_commuting(&c3, &gens),
    })
}

/// `W = exp((i/m) η·p)`.
pub fn casimir_transform(rep: &Representation, sign: i64) -> Result<PMatrix> {
    let x = rep.eta_dot(&momentum3()).rmul(&Poly::constant(Scalar::imag(sign)).div_unit(&m_sym()).unwrap());
    nilpotent_exp(&x, &Poly::one())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalReport {
    pub carrier: String,
    pub c1_invariant: bool,
    pub c2_invariant: bool,
    pub c3_diagonal: bool,
    pub c3_prime: PMatrix,
}

impl DiagonalReport {
    pub fn pass(&self) -> bool {
        self.c1_invariant && self.c2_invariant && self.c3_diagonal
    }

    pub fn to_json(&self) -> Value {
        json!({
            "carrier": self.carrier,
            "c1_invariant": self.c1_invariant,
            "c2_invariant": self.c2_invariant,
            "c3_diagonal": self.c3_diagonal,
            "pass": self.pass(),
        })
    }
}

/// Conjugates the Casimirs by `W` and compares `C3′` with `m²S²`.
pub fn diagonalize_casimir(rep: &Representation) -> Result<DiagonalReport> {
    let cs = casimirs(rep);
    let w = casimir_transform(rep, 1)?;
    let winv = casimir_transform(rep, -1)?;
    let conj = |c: &PMatrix| w.mul(c).mul(&winv);
    let d = rep.dim();
    let m2 = &m_sym() * &m_sym();
    let c3_prime = conj(&cs.c3);
    let c2m = PMatrix::identity(d).rmul(&cs.c2);
    Ok(DiagonalReport {
        carrier: rep.label_text(),
        c1_invariant: conj(&cs.c1) == cs.c1,
        c2_invariant: conj(&c2m) == c2m,
        c3_diagonal: c3_prime == rep.spin_squared().to_poly().rmul(&m2),
        c3_prime,
    })
}

// ---------------------------------------------------------------------------
// Roots of a polynomial in one symbol with polynomial coefficients.

/// Internal energy: a value, or the whole line when a block is identically singular.
#[derive(Clone, Debug, PartialEq)]
pub enum Energy {
    Value(Poly),
    Any,
}

impl Energy {
    fn key(&self) -> String {
        match self {
            Energy::Value(p) => p.to_string(),
            Energy::Any => "any".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Roots {
    pub roots: Vec<(Poly, usize)>,
    /// Factor left over without a rational or symbolic linear root.
    pub unresolved: Option<Poly>,
    pub identically_zero: bool,
}

fn coefficients(p: &Poly, x: Sym) -> Result<Vec<Poly>> {
    let map = p.collect_in(x);
    if map.keys().any(|&k| k < 0) {
        return Err(Error::Invalid(format!("negative power of {} in determinant", x.name())));
    }
    let deg = map.keys().copied().max().unwrap_or(0) as usize;
    Ok((0..=deg).map(|k| map.get(&(k as i32)).cloned().unwrap_or_default()).collect())
}

fn horner(c: &[Poly], r: &Poly) -> Poly {
    c.iter().rev().fold(Poly::zero(), |acc, k| &(&acc * r) + k)
}

/// Divides by `(x − r)`; assumes `r` is a root.
fn deflate(c: &[Poly], r: &Poly) -> Vec<Poly> {
    let n = c.len() - 1;
    let mut q = vec![Poly::zero(); n];
    let mut carry = Poly::zero();
    for k in (1..=n).rev() {
        carry = &c[k] + &(&carry * r);
        q[k - 1] = carry.clone();
    }
    q
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Rational roots of a polynomial with rational constant coefficients.
fn rational_candidates(c: &[Poly]) -> Vec<Scalar> {
    let mut vals = Vec::new();
    for k in c {
        match k.as_constant() {
            Some(s) if s.is_real() => vals.push(s.re.clone()),
            _ => return Vec::new(),
        }
    }
    let lcm = vals.iter().fold(num_bigint::BigInt::from(1), |acc, v| num_integer::Integer::lcm(&acc, v.denom()));
    let ints: Vec<num_bigint::BigInt> =
        vals.iter().map(|v| (v * num_rational::BigRational::from(lcm.clone())).to_integer()).collect();
    let (lead, tail) = (ints.last().unwrap(), &ints[0]);
    let (Some(l), Some(t)) = (lead.abs().to_i64(), tail.abs().to_i64()) else { return Vec::new() };
    if tail.is_zero() || l > 1_000_000 || t > 1_000_000 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for num in divisors(t) {
        for den in divisors(l) {
            for sgn in [1, -1] {
                out.push(Scalar::ratio(sgn * num, den));
            }
        }
    }
    out
}

/// Finds roots of `p` in `x`: zero roots, repeated-linear-factor candidates
/// `−c_{d−1}/(d c_d)`, and rational roots of constant-coefficient factors.
pub fn roots_in(p: &Poly, x: Sym) -> Result<Roots> {
    if p.is_zero() {
        return Ok(Roots { identically_zero: true, ..Roots::default() });
    }
    let mut c = coefficients(p, x)?;
    let mut found: BTreeMap<String, (Poly, usize)> = BTreeMap::new();
    let mut push = |r: Poly| {
        found.entry(r.to_string()).or_insert((r, 0)).1 += 1;
    };
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
        push(Poly::zero());
    }
    'outer: while c.len() > 1 {
        let d = c.len() - 1;
        let mut candidates = Vec::new();
        let lead = &c[d];
        if let Some(r) = c[d - 1].div_unit(&lead.scale(&Scalar::int(d as i64))) {
            candidates.push(-&r);
        }
        if d == 1 {
            if let Some(r) = c[0].div_unit(lead) {
                candidates.push(-&r);
            }
        }
        candidates.extend(rational_candidates(&c).into_iter().map(Poly::constant));
        for r in candidates {
            if horner(&c, &r).is_zero() {
                c = deflate(&c, &r);
                push(r);
                continue 'outer;
            }
        }
        break;
    }
    let unresolved = if c.len() > 1 {
        let rebuilt =
            c.iter().enumerate().fold(Poly::zero(), |acc, (k, ck)| &acc + &(ck * &Poly::var_pow(x, k as i32)));
        Some(rebuilt)
    } else {
        None
    };
    Ok(Roots { roots: found.into_values().collect(), unresolved, identically_zero: false })
}

// ---------------------------------------------------------------------------
// Reduction to spin multiplicity spaces.

/// Columns spanning vectors with `S3 = s` annihilated by `S1 + i S2`.
pub fn highest_weight_basis(rep: &Representation, two_s: u32) -> SMatrix {
    let d = rep.dim();
    let s3 = rep.s[2].sub(&SMatrix::identity(d).scale(&Scalar::ratio(two_s as i64, 2)));
    let raise = rep.s[0].add(&rep.s[1].scale(&Scalar::i()));
    nullspace(&SMatrix::vstack(&[s3, raise])).as_columns()
}

fn spins_present(rep: &Representation) -> Vec<u32> {
    (0..=6).filter(|&t| highest_weight_basis(rep, t).cols() > 0).collect()
}

/// `P` restricted to the highest-weight space of spin `s`, or `None` when `P`
/// does not preserve it.
pub fn restrict(p: &PMatrix, basis: &SMatrix) -> Option<PMatrix> {
    let bd = basis.adjoint();
    let left = bd.mul(basis).inverse()?.mul(&bd);
    let b = basis.to_poly();
    let r = left.to_poly().mul(p).mul(&b);
    (p.mul(&b) == b.mul(&r)).then_some(r)
}

fn det(p: &PMatrix) -> Result<Poly> {
    if p.rows() > 8 {
        return Err(Error::Limit(format!("determinant of a {}x{} polynomial matrix", p.rows(), p.rows())));
    }
    if p.rows() == 0 {
        return Ok(Poly::one());
    }
    det_expansion(p)
}

fn spin_text(two_s: u32) -> String {
    if two_s.is_multiple_of(2) {
        (two_s / 2).to_string()
    } else {
        format!("{two_s}/2")
    }
}

/// Distinct nonzero rationals for free parameters (other than the sweep symbol).
fn generic_point(symbols: &BTreeSet<Sym>) -> HashMap<Sym, Scalar> {
    const VALUES: [i64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];
    symbols.iter().zip(VALUES.iter().cycle()).map(|(&s, &v)| (s, Scalar::int(v))).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinBranch {
    pub two_s: u32,
    pub epsilon: Energy,
    pub mult: usize,
}

impl SpinBranch {
    pub fn spin(&self) -> String {
        spin_text(self.two_s)
    }

    pub fn to_json(&self) -> Value {
        let eps = match &self.epsilon {
            Energy::Value(v) => json!(v.to_string()),
            Energy::Any => json!("any"),
        };
        json!({"s": self.spin(), "epsilon": eps, "mult": self.mult})
    }
}

/// Branches of the pencil `a·x + b` (`x` the sweep symbol), evaluated at the
/// generic point for any remaining parameters.
struct PencilAnalysis {
    roots: Vec<Poly>,
    unresolved: Vec<String>,
    branches: Vec<SpinBranch>,
    spin_preserving: bool,
}

fn analyse_pencil(rep: &Representation, pencil: &PMatrix, x: Sym, scale: &Scalar) -> Result<PencilAnalysis> {
    let d = rep.dim();
    let mut roots: BTreeMap<String, Poly> = BTreeMap::new();
    let mut unresolved = Vec::new();
    let mut any_spins = Vec::new();
    let mut spin_preserving = true;
    let mut dets = Vec::new();
    for two_s in spins_present(rep) {
        match restrict(pencil, &highest_weight_basis(rep, two_s)) {
            Some(r) => dets.push((Some(two_s), det(&r)?)),
            None => spin_preserving = false,
        }
    }
    if !spin_preserving {
        dets = vec![(None, det(pencil)?)];
    }
    for (two_s, dt) in &dets {
        let rs = roots_in(dt, x)?;
        if rs.identically_zero {
            any_spins.push(*two_s);
        }
        for (r, _) in rs.roots {
            roots.insert(r.to_string(), r);
        }
        if let Some(u) = rs.unresolved {
            unresolved.push(u.to_string());
        }
    }
    let mut symbols = pencil.symbols();
    symbols.remove(&x);
    let point = generic_point(&symbols);
    let s2 = rep.spin_squared();
    let eigen = |two_s: u32| {
        let t = two_s as i64;
        nullspace(&s2.sub(&SMatrix::identity(d).scale(&Scalar::ratio(t * (t + 2), 4))))
    };
    let mut branches = Vec::new();
    for r in roots.values() {
        let mut at = point.clone();
        at.insert(x, r.eval(&point)?);
        let ns = nullspace(&pencil.eval(&at)?);
        for two_s in 0..=6 {
            let mult = ns.intersection(&eigen(two_s)).dim();
            if mult > 0 {
                let eps = r.scale(scale);
                branches.push(SpinBranch { two_s, epsilon: Energy::Value(eps), mult });
            }
        }
    }
    for two_s in any_spins {
        let (two_s, mult) = match two_s {
            Some(t) => (t, eigen(t).dim()),
            None => (0, d),
        };
        branches.push(SpinBranch { two_s, epsilon: Energy::Any, mult });
    }
    branches.sort_by(|a, b| (b.two_s, a.epsilon.key()).cmp(&(a.two_s, b.epsilon.key())));
    Ok(PencilAnalysis { roots: roots.into_values().collect(), unresolved, branches, spin_preserving })
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct ParticleVerdict {
    pub two_s: u32,
    pub epsilon: String,
    pub vector_rank: usize,
    pub vector_expected: usize,
    pub scalar_rank: usize,
    pub scalar_expected: usize,
}

impl ParticleVerdict {
    pub fn pass(&self) -> bool {
        self.vector_rank == self.vector_expected && self.scalar_rank == self.scalar_expected
    }

    pub fn to_json(&self) -> Value {
        json!({
            "s": spin_text(self.two_s),
            "epsilon": self.epsilon,
            "vector_rank": self.vector_rank,
            "vector_expected": self.vector_expected,
            "scalar_rank": self.scalar_rank,
            "scalar_expected": self.scalar_expected,
            "pass": self.pass(),
        })
    }
}

/// Rest-frame pencil at `m = 1`: `β0 ε + 2 β4`.
pub fn rest_pencil(bs: &BetaSystem) -> Result<PMatrix> {
    let one = Poly::one();
    let eps = Poly::var(epsilon_sym());
    let b0 = bs.beta0().subs(sym("m"), &one)?;
    let b4 = bs.beta4().subs(sym("m"), &one)?;
    Ok(b0.rmul(&eps).add(&b4.scale(&Scalar::int(2))))
}

/// Rank conditions `Rank‖εF + 2m²R‖`, `Rank‖εG + 2m²E‖` at each energy where
/// the system has solutions; `s = 1` expects `(n − 1, m)`, `s = 0` expects `(n, m − 1)`.
pub fn check_particle_conditions(bs: &BetaSystem, two_s: u32) -> Result<Vec<ParticleVerdict>> {
    let t =
        bs.rep.triple.as_ref().ok_or_else(|| Error::Invalid("rank conditions need a vector/scalar carrier".into()))?;
    let (n, m) = (t.n(), t.m());
    let (vector_expected, scalar_expected) = match two_s {
        2 => (n.saturating_sub(1), m),
        0 => (n, m.saturating_sub(1)),
        _ => return Err(Error::Invalid("rank conditions are stated for spin 0 and 1".into())),
    };
    let pencil = rest_pencil(bs)?;
    let analysis = analyse_pencil(&bs.rep, &pencil, epsilon_sym(), &Scalar::one())?;
    let mut symbols = pencil.symbols();
    symbols.remove(&epsilon_sym());
    let point = generic_point(&symbols);
    let vec_idx: Vec<usize> = (0..n).map(|i| 3 * i).collect();
    let sca_idx: Vec<usize> = (0..m).map(|i| 3 * n + i).collect();
    let mut out = Vec::new();
    for r in &analysis.roots {
        let mut at = point.clone();
        at.insert(epsilon_sym(), r.eval(&point)?);
        let p = pencil.eval(&at)?;
        out.push(ParticleVerdict {
            two_s,
            epsilon: r.to_string(),
            vector_rank: rank(&p.select(&vec_idx, &vec_idx)),
            vector_expected,
            scalar_rank: rank(&p.select(&sca_idx, &sca_idx)),
            scalar_expected,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinContentReport {
    pub system: String,
    /// `(W⁻¹)† 2m L W⁻¹ = β0 C2 + 2m² β4` holds identically.
    pub w_identity: bool,
    pub spin_preserving: bool,
    pub branches: Vec<SpinBranch>,
    pub direct_branches: Vec<SpinBranch>,
    /// Nullity of `L(p)` at moving momenta on each energy shell equals the
    /// rest-frame count.
    pub boosted_agree: bool,
    pub unresolved: Vec<String>,
    pub generic_point: BTreeMap<String, String>,
    pub cas10: Option<bool>,
    pub cas11: Option<bool>,
}

impl SpinContentReport {
    pub fn routes_agree(&self) -> bool {
        self.branches == self.direct_branches && self.boosted_agree
    }

    pub fn spins(&self) -> BTreeSet<String> {
        self.branches.iter().map(|b| b.spin()).collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.branches.iter().map(|b| b.mult).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "system": self.system,
            "branches": self.branches.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
            "direct_branches": self.direct_branches.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
            "w_identity": self.w_identity,
            "spin_preserving": self.spin_preserving,
            "boosted_agree": self.boosted_agree,
            "routes_agree": self.routes_agree(),
            "unresolved": self.unresolved,
            "generic_point": self.generic_point,
            "cas10": self.cas10,
            "cas11": self.cas11,
        })
    }
}

/// The operator takes contravariant `pᵃ = −P_a`, so `W⁻¹` of the Casimir
/// transform reads `exp((i/m) η·pᵃ)` in these symbols.
fn w_identity(bs: &BetaSystem) -> Result<bool> {
    let p = crate::catalog::five_momentum();
    let winv = casimir_transform(&bs.rep, 1)?;
    let m = m_sym();
    let lhs = winv.adjoint().mul(&bs.operator(&p)).mul(&winv).rmul(&m.scale(&Scalar::int(2)));
    let rhs = bs.beta0().rmul(&c2_poly()).add(&bs.beta4().rmul(&(&m * &m).scale(&Scalar::int(2))));
    Ok(lhs == rhs)
}

const BOOSTS: [[i64; 3]; 3] = [[1, 0, 0], [1, -2, 1], [0, 3, 2]];

fn boosted_nullities_agree(bs: &BetaSystem, branches: &[SpinBranch], point: &HashMap<Sym, Scalar>) -> Result<bool> {
    let p = crate::catalog::five_momentum();
    let op = bs.operator(&p);
    let mut by_energy: BTreeMap<String, (Poly, usize)> = BTreeMap::new();
    for b in branches {
        if let Energy::Value(e) = &b.epsilon {
            by_energy.entry(e.to_string()).or_insert((e.clone(), 0)).1 += b.mult;
        }
    }
    for (e, total) in by_energy.into_values() {
        let eps = e.eval(point)?;
        for k in BOOSTS {
            let mut at = point.clone();
            let p2: i64 = k.iter().map(|v| v * v).sum();
            at.insert(sym("m"), Scalar::one());
            at.insert(sym("p0"), &(&eps + &Scalar::int(p2)) * &Scalar::ratio(1, 2));
            for a in 0..3 {
                at.insert(sym(["p1", "p2", "p3"][a]), Scalar::int(k[a]));
            }
            if nullspace(&op.eval(&at)?).dim() != total {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Plane-wave content: ε-roots of the `W`-reduced pencil at rest, nullspaces
/// split by `S²`, compared against the untransformed operator.
pub fn spin_content(bs: &BetaSystem) -> Result<SpinContentReport> {
    let pencil = rest_pencil(bs)?;
    let w = analyse_pencil(&bs.rep, &pencil, epsilon_sym(), &Scalar::one())?;
    // direct route: L at p = 0, m = 1 is β0 p0 + β4; ε = 2 p0
    let p0 = sym("p0");
    let direct_op = bs.operator(&crate::catalog::five_momentum()).try_map(|e| {
        let mut v = e.clone();
        for (s, val) in [("p1", 0), ("p2", 0), ("p3", 0), ("m", 1)] {
            v = v.subs(sym(s), &Poly::int(val))?;
        }
        Ok(v)
    })?;
    let direct = analyse_pencil(&bs.rep, &direct_op, p0, &Scalar::int(2))?;
    let mut symbols = pencil.symbols();
    symbols.remove(&epsilon_sym());
    let point = generic_point(&symbols);
    let boosted_agree = boosted_nullities_agree(bs, &w.branches, &point)?;
    let (cas10, cas11) = if bs.rep.triple.is_some() {
        let any = |two_s| -> Result<bool> { Ok(check_particle_conditions(bs, two_s)?.iter().any(|v| v.pass())) };
        (Some(any(2)?), Some(any(0)?))
    } else {
        (None, None)
    };
    let mut unresolved = w.unresolved;
    unresolved.extend(direct.unresolved);
    Ok(SpinContentReport {
        system: bs.name.clone(),
        w_identity: w_identity(bs)?,
        spin_preserving: w.spin_preserving,
        branches: w.branches,
        direct_branches: direct.branches,
        boosted_agree,
        unresolved,
        generic_point: point.iter().map(|(k, v)| (k.name(), v.to_string())).collect(),
        cas10,
        cas11,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cubic() {
        let e = Poly::var(epsilon_sym());
        let nu = Poly::sym("nu");
        // nu (e − nu²)² e
        let f = &(&nu * &(&e - &(&nu * &nu)).pow(2)) * &e;
        let r = roots_in(&f, epsilon_sym()).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.unresolved.is_none());
        let g = &(&e - &Poly::int(2)) * &(&e.scale(&Scalar::int(3)) + &Poly::int(1));
        let r = roots_in(&g, epsilon_sym()).unwrap();
        assert_eq!(r.roots.len(), 2);
    }

    #[test]
    fn irrational_roots_unresolved() {
        let e = Poly::var(epsilon_sym());
        let f = &(&e * &e) - &Poly::int(2);
        assert!(roots_in(&f, epsilon_sym()).unwrap().unresolved.is_some());
    }
}
