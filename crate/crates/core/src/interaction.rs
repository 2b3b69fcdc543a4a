//! Minimal and Pauli couplings of β-systems to static external fields, the
//! similarity reduction to the physical block with a fixed term dictionary,
//! the spin-orbit expansion, and the interacting Proca system.
//!
//! Operator conventions: `P_a = −i∂_a` is the Weyl momentum, `Π_a = P_a − e𝒜_a`
//! the kinetic momentum with the physical potential `𝒜`, and the contravariant
//! slots of a β-system receive `πᵃ = −Π_a`, `π⁰ = p0 − eA⁰`, `π⁴ = m`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::beta::BetaSystem;
use crate::covariance::{dot_matrices, lambda_violations};
use crate::error::{Error, Result};
use crate::linalg::{nilpotent_exp, rank};
use crate::matrix::{Matrix, PMatrix, SMatrix};
use crate::poly::{sym, Monomial, Poly, Sym};
use crate::reps::Representation;
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::weyl::{p0_sym, p_sym, pi_operator, x_sym, FieldConfig, TruncationSpec, WKey, Weyl};

pub type WMatrix = Matrix<Weyl>;

fn m_poly() -> Poly {
    Poly::sym("m")
}

fn inv_m() -> Poly {
    m_poly().inv_unit().unwrap()
}

/// Entries may depend on `x`; everything else is a central coefficient.
pub fn to_weyl(m: &PMatrix) -> Result<WMatrix> {
    m.try_map(Weyl::from_field)
}

fn truncate_matrix(m: &WMatrix, t: &TruncationSpec) -> WMatrix {
    m.map(|w| w.truncate(t))
}

/// `Π_a = P_a − e𝒜_a`.
pub fn kinetic_momentum(fc: &FieldConfig) -> Result<[Weyl; 3]> {
    Ok([pi_operator(fc, 1)?, pi_operator(fc, 2)?, pi_operator(fc, 3)?])
}

/// Contravariant five-vector `(π⁰, −Π, π⁴)` fed into `β_μπ^μ + β₄π⁴`.
pub fn contravariant_pi(fc: &FieldConfig) -> Result<[Weyl; 5]> {
    let k = kinetic_momentum(fc)?;
    Ok([pi_operator(fc, 0)?, -&k[0], -&k[1], -&k[2], pi_operator(fc, 4)?])
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoupledOperator {
    pub system: String,
    pub operator: WMatrix,
    pub rep: Representation,
    pub field: FieldConfig,
    pub beta0: PMatrix,
    /// Coupling constants in insertion order, e.g. `lambda1`, `lambda2`.
    pub couplings: Vec<(String, Poly)>,
}

impl CoupledOperator {
    pub fn dim(&self) -> usize {
        self.operator.rows()
    }

    /// Substitutes a central symbol everywhere (used for parameter slices).
    pub fn subs(&self, s: Sym, v: &Poly) -> Result<CoupledOperator> {
        let mut out = self.clone();
        out.operator = self.operator.try_map(|w| w.subs(s, v))?;
        out.beta0 = self.beta0.subs(s, v)?;
        for (_, c) in out.couplings.iter_mut() {
            *c = c.subs(s, v)?;
        }
        Ok(out)
    }
}

/// `β_μπ^μ + β₄π⁴`.
pub fn couple_minimal(bs: &BetaSystem, fc: &FieldConfig) -> Result<CoupledOperator> {
    let pi = contravariant_pi(fc)?;
    let d = bs.dim();
    let mut op = WMatrix::zeros(d, d);
    for (beta, p) in bs.beta.iter().zip(pi.iter()) {
        for i in 0..d {
            for j in 0..d {
                let c = beta.get(i, j);
                if !c.is_zero() {
                    let e = op.get(i, j) + &p.mul_central(c);
                    op.set(i, j, e);
                }
            }
        }
    }
    Ok(CoupledOperator {
        system: bs.name.clone(),
        operator: op,
        rep: bs.rep.clone(),
        field: fc.clone(),
        beta0: bs.beta0().clone(),
        couplings: Vec::new(),
    })
}

/// Pauli terms `(e/m) Λ (λ1 η·H + λ2 (S·H − η·E))` added to the minimal coupling.
pub fn pauli_matrix(rep: &Representation, fc: &FieldConfig, lambda: &PMatrix, l1: &Poly, l2: &Poly) -> PMatrix {
    let (e, h) = (fc.electric_field(), fc.magnetic_field());
    let f2 = dot_matrices(&rep.eta, &h);
    let f1 = dot_matrices(&rep.s, &h).sub(&dot_matrices(&rep.eta, &e));
    let inner = f2.rmul(l1).add(&f1.rmul(l2));
    lambda.mul(&inner).rmul(&(&fc.charge * &inv_m()))
}

pub fn couple_anomalous(
    bs: &BetaSystem,
    fc: &FieldConfig,
    lambda: &PMatrix,
    l1: &Poly,
    l2: &Poly,
) -> Result<CoupledOperator> {
    let bad = lambda_violations(&bs.rep, lambda);
    if !bad.is_empty() {
        return Err(Error::Invalid(format!("Lambda violates the commutation conditions: {}", bad.join(", "))));
    }
    let mut co = couple_minimal(bs, fc)?;
    co.operator = co.operator.add(&to_weyl(&pauli_matrix(&bs.rep, fc, lambda, l1, l2))?);
    co.couplings = vec![("lambda1".into(), l1.clone()), ("lambda2".into(), l2.clone())];
    Ok(co)
}

/// `W = exp(−i η·Π/m)`; `L' = W† L W`.
pub fn similarity_transform(co: &CoupledOperator, t: &TruncationSpec) -> Result<WMatrix> {
    let k = kinetic_momentum(&co.field)?;
    let d = co.dim();
    let factor = &Poly::constant(-Scalar::i()) * &inv_m();
    let mut x = WMatrix::zeros(d, d);
    for a in 0..3 {
        let g = k[a].mul_central(&factor);
        x = x.add(&co.rep.eta[a].to_poly().map(|c| g.mul_central(c)));
    }
    let w = nilpotent_exp(&x, &Weyl::one())?;
    Ok(truncate_matrix(&w.adjoint().mul(&co.operator).mul(&w), t))
}

/// Admissible pivot: a central unit free of the charge and of field symbols.
fn central_unit(w: &Weyl, field_syms: &BTreeSet<Sym>) -> Option<Poly> {
    let c = w.as_central().filter(|c| !c.is_zero())?;
    if c.symbols().iter().any(|s| field_syms.contains(s) && *s != sym("m")) {
        return None;
    }
    c.inv_unit()
}

/// One eliminated component: `ψ_j = Σ coeff_k ψ_k` over the components left at
/// that stage.
#[derive(Clone, Debug, PartialEq)]
struct Elimination {
    column: usize,
    row: usize,
    coeffs: Vec<(usize, Weyl)>,
}

/// Result of eliminating auxiliary components with central pivots.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockReduction {
    pub kept: Vec<usize>,
    /// Remaining equations on the kept components.
    pub block: WMatrix,
    /// `ψ = expression · ψ_kept` for every component.
    pub expression: WMatrix,
    /// Original row indices used as pivots, in elimination order.
    pub pivot_rows: Vec<usize>,
}

/// Gaussian elimination over operators, pivoting only on central units.
/// With `keep = None` columns are eliminated from the highest index down while
/// a central pivot exists.
pub fn eliminate(op: &WMatrix, keep: Option<&[usize]>, fc: &FieldConfig, t: &TruncationSpec) -> Result<BlockReduction> {
    let field_syms = coordinate_symbols(fc);
    let n = op.rows();
    let mut m = op.clone();
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut steps: Vec<Elimination> = Vec::new();
    loop {
        let mut pick = None;
        'search: for &j in cols.iter().rev() {
            if keep.is_some_and(|k| k.contains(&j)) {
                continue;
            }
            for &i in &rows {
                if let Some(inv) = central_unit(m.get(i, j), &field_syms) {
                    pick = Some((i, j, Some(inv)));
                    break 'search;
                }
            }
            // a nonzero central entry alone in its row forces ψ_j = 0
            for &i in &rows {
                let alone = cols.iter().all(|&k| k == j || m.get(i, k).is_zero());
                if alone && m.get(i, j).as_central().is_some_and(|c| !c.is_zero()) {
                    pick = Some((i, j, None));
                    break 'search;
                }
            }
        }
        let Some((i, j, inv)) = pick else { break };
        let coeffs: Vec<(usize, Weyl)> = match inv {
            Some(inv) => cols
                .iter()
                .filter(|&&k| k != j && !m.get(i, k).is_zero())
                .map(|&k| (k, m.get(i, k).mul_central(&-&inv).truncate(t)))
                .collect(),
            None => Vec::new(),
        };
        for &r in rows.iter().filter(|&&r| r != i) {
            let lrj = m.get(r, j).clone();
            if lrj.is_zero() {
                continue;
            }
            for (k, c) in &coeffs {
                let v = (m.get(r, *k) + &(&lrj * c)).truncate(t);
                m.set(r, *k, v);
            }
            m.set(r, j, Weyl::zero());
        }
        rows.retain(|&r| r != i);
        cols.retain(|&c| c != j);
        steps.push(Elimination { column: j, row: i, coeffs });
    }
    if let Some(k) = keep {
        let mut want: Vec<usize> = k.to_vec();
        want.sort_unstable();
        if want != cols {
            return Err(Error::Invalid(format!(
                "components {:?} cannot be eliminated with central pivots",
                cols.iter().filter(|c| !want.contains(c)).collect::<Vec<_>>()
            )));
        }
    }
    let block = WMatrix::from_fn(rows.len(), cols.len(), |r, c| m.get(rows[r], cols[c]).clone());
    // back substitution, last elimination first
    let mut expr: BTreeMap<usize, Vec<Weyl>> = BTreeMap::new();
    for (pos, &c) in cols.iter().enumerate() {
        let mut row = vec![Weyl::zero(); cols.len()];
        row[pos] = Weyl::one();
        expr.insert(c, row);
    }
    for step in steps.iter().rev() {
        let mut row = vec![Weyl::zero(); cols.len()];
        for (k, c) in &step.coeffs {
            for (slot, e) in row.iter_mut().zip(&expr[k]) {
                *slot = (&*slot + &(c * e)).truncate(t);
            }
        }
        expr.insert(step.column, row);
    }
    let expression = WMatrix::from_fn(n, cols.len(), |r, c| expr[&r][c].clone());
    Ok(BlockReduction { kept: cols, block, expression, pivot_rows: steps.iter().map(|s| s.row).collect() })
}

/// Coefficient of `p0` in every entry, if all entries are central there.
fn p0_coefficients(m: &WMatrix) -> PMatrix {
    let key = WKey { p0: 1, ..WKey::default() };
    m.map(|w| w.coeff(&key))
}

// ---------------------------------------------------------------------------
// Term dictionary

/// Spin matrices of the kept block, `s_a = S_a` restricted.
fn restricted_spin(rep: &Representation, kept: &[usize]) -> [SMatrix; 3] {
    [0, 1, 2].map(|a| rep.s[a].select(kept, kept))
}

fn wsum(ws: impl IntoIterator<Item = Weyl>) -> Weyl {
    ws.into_iter().fold(Weyl::zero(), |acc, w| &acc + &w)
}

fn times(m: &SMatrix, w: &Weyl) -> WMatrix {
    m.map(|c| w.scale(c))
}

fn dot_spin(s: &[SMatrix; 3], v: &[Weyl; 3]) -> WMatrix {
    let d = s[0].rows();
    (0..3).fold(WMatrix::zeros(d, d), |acc, a| acc.add(&times(&s[a], &v[a])))
}

/// `u × w − w × u` with operator ordering kept.
fn cross_antisym(u: &[Weyl; 3], w: &[Weyl; 3]) -> [Weyl; 3] {
    [0, 1, 2].map(|c| {
        let (i, j) = ((c + 1) % 3, (c + 2) % 3);
        let uw = &(&u[i] * &w[j]) - &(&u[j] * &w[i]);
        let wu = &(&w[i] * &u[j]) - &(&w[j] * &u[i]);
        &uw - &wu
    })
}

/// `Q_ab = s_a s_b + s_b s_a − (2/3) s(s+1) δ_ab` on a block with `s² = s(s+1)`.
pub fn quadrupole(s: &[SMatrix; 3]) -> [[SMatrix; 3]; 3] {
    let d = s[0].rows();
    let s2 = (0..3).fold(SMatrix::zeros(d, d), |acc, a| acc.add(&s[a].mul(&s[a])));
    let casimir = if d == 0 { Scalar::zero() } else { s2.get(0, 0).clone() };
    let trace_part = SMatrix::identity(d).scale(&(&casimir * &Scalar::ratio(2, 3)));
    [0, 1, 2].map(|a| {
        [0, 1, 2].map(|b| {
            let sym = s[a].mul(&s[b]).add(&s[b].mul(&s[a]));
            if a == b {
                sym.sub(&trace_part)
            } else {
                sym
            }
        })
    })
}

/// Names of the dictionary entries, in fitting order.
pub const TERM_NAMES: [&str; 11] = [
    "schrodinger",
    "rest_energy",
    "spin_magnetic",
    "spin_electric",
    "spin_magnetic_orbit",
    "spin_orbit",
    "darwin",
    "electric_quadrupole",
    "magnetic_quadrupole",
    "magnetic_square",
    "spin_magnetic_square",
];

/// The dictionary on a block with spin matrices `s`:
///
/// | name | shape |
/// |---|---|
/// | schrodinger | `π⁰ − Π²/2m` |
/// | rest_energy | `m` |
/// | spin_magnetic | `(e/2m) s·H` (coefficient = g) |
/// | spin_electric | `(e/m) s·E` |
/// | spin_magnetic_orbit | `(e/2m²) s·(Π×H − H×Π)` |
/// | spin_orbit | `(e/m²) s·(Π×E − E×Π)` |
/// | darwin | `(e/m²) div E` |
/// | electric_quadrupole | `(e/m²) Q_ab ∂E_a/∂x_b` |
/// | magnetic_quadrupole | `(e/m²) Q_ab ∂H_a/∂x_b` |
/// | magnetic_square | `(e²/m³) H²` |
/// | spin_magnetic_square | `(e²/m³) (s·H)²` |
pub fn term_dictionary(fc: &FieldConfig, s: &[SMatrix; 3]) -> Result<Vec<(String, WMatrix)>> {
    let d = s[0].rows();
    let id = SMatrix::identity(d);
    let e = &fc.charge;
    let (m1, m2, m3) = (inv_m(), inv_m().pow(2), inv_m().pow(3));
    let half = Scalar::ratio(1, 2);
    let pi = kinetic_momentum(fc)?;
    let ef = fc.electric_field();
    let hf = fc.magnetic_field();
    let ew: [Weyl; 3] = [0, 1, 2].map(|a| Weyl::from_field(&ef[a]).unwrap());
    let hw: [Weyl; 3] = [0, 1, 2].map(|a| Weyl::from_field(&hf[a]).unwrap());
    let pi_sq = wsum((0..3).map(|a| &pi[a] * &pi[a]));
    let schr = &pi_operator(fc, 0)? - &pi_sq.mul_central(&m1.scale(&half));
    let sh = dot_spin(s, &hw);
    let div_e = Weyl::from_field(&(0..3).fold(Poly::zero(), |acc, a| &acc + &ef[a].deriv(x_sym(a))))?;
    let q = quadrupole(s);
    let grad_contract = |f: &[Poly; 3]| -> Result<WMatrix> {
        let mut acc = WMatrix::zeros(d, d);
        for a in 0..3 {
            for b in 0..3 {
                acc = acc.add(&times(&q[a][b], &Weyl::from_field(&f[a].deriv(x_sym(b)))?));
            }
        }
        Ok(acc)
    };
    let h_sq = wsum((0..3).map(|a| &hw[a] * &hw[a]));
    let e_m1 = e * &m1;
    let e_m2 = e * &m2;
    let e2_m3 = &(e * e) * &m3;
    let c = |w: &WMatrix, k: &Poly| w.map(|x| x.mul_central(k));
    Ok(vec![
        ("schrodinger".into(), times(&id, &schr)),
        ("rest_energy".into(), times(&id, &Weyl::central(m_poly()))),
        ("spin_magnetic".into(), c(&sh, &e_m1.scale(&half))),
        ("spin_electric".into(), c(&dot_spin(s, &ew), &e_m1)),
        ("spin_magnetic_orbit".into(), c(&dot_spin(s, &cross_antisym(&pi, &hw)), &e_m2.scale(&half))),
        ("spin_orbit".into(), c(&dot_spin(s, &cross_antisym(&pi, &ew)), &e_m2)),
        ("darwin".into(), times(&id, &div_e.mul_central(&e_m2))),
        ("electric_quadrupole".into(), c(&grad_contract(&ef)?, &e_m2)),
        ("magnetic_quadrupole".into(), c(&grad_contract(&hf)?, &e_m2)),
        ("magnetic_square".into(), times(&id, &h_sq.mul_central(&e2_m3))),
        ("spin_magnetic_square".into(), c(&sh.mul(&sh), &e2_m3)),
    ])
}

/// Symbols that index the coordinates of the fit (everything that is not a
/// coupling constant): `x`, `p`, `p0`, `e`, `m` and the field symbols.
fn coordinate_symbols(fc: &FieldConfig) -> BTreeSet<Sym> {
    let mut out: BTreeSet<Sym> = [p0_sym(), sym("e"), sym("m")].into_iter().collect();
    for a in 0..3 {
        out.insert(x_sym(a));
        out.insert(p_sym(a));
    }
    for p in std::iter::once(&fc.a0).chain(fc.a.iter()).chain(std::iter::once(&fc.a4)) {
        out.extend(p.symbols());
    }
    out.extend(fc.charge.symbols());
    out
}

type Coord = (usize, usize, Monomial);

/// Splits each entry into `coupling polynomial × coordinate monomial`.
fn coordinates(m: &WMatrix, coord_syms: &BTreeSet<Sym>) -> BTreeMap<Coord, Poly> {
    let mut out: BTreeMap<Coord, Poly> = BTreeMap::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            for (mono, c) in m.get(i, j).to_poly().terms() {
                let mut coord = Monomial::one();
                let mut rest = Monomial::one();
                for (s, e) in mono.factors() {
                    let f = Monomial::var(s, e);
                    if coord_syms.contains(&s) {
                        coord = coord.mul(&f);
                    } else {
                        rest = rest.mul(&f);
                    }
                }
                let slot = out.entry((i, j, coord)).or_default();
                *slot = &*slot + &Poly::term(c.clone(), rest);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct TermFit {
    /// Coefficient of each dictionary term that is independent of the earlier ones.
    pub coefficients: Vec<(String, Poly)>,
    /// Terms that vanish on the block or are dependent on earlier entries.
    pub dependent: Vec<String>,
    pub residual: WMatrix,
}

impl TermFit {
    pub fn coefficient(&self, name: &str) -> Option<&Poly> {
        self.coefficients.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    /// Coefficient, with dependent or absent terms reading as zero.
    pub fn get(&self, name: &str) -> Poly {
        self.coefficient(name).cloned().unwrap_or_default()
    }

    pub fn residual_is_zero(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Exact orthogonal projection onto the span of the dictionary (Hermitian
/// inner product on coordinates), coefficients in the coupling constants.
pub fn fit_terms(op: &WMatrix, dictionary: &[(String, WMatrix)], fc: &FieldConfig) -> Result<TermFit> {
    let cs = coordinate_symbols(fc);
    let target = coordinates(op, &cs);
    let mut chosen: Vec<(String, WMatrix, BTreeMap<Coord, Scalar>)> = Vec::new();
    let mut dependent = Vec::new();
    for (name, shape) in dictionary {
        let coords = coordinates(shape, &cs);
        let mut vec = BTreeMap::new();
        for (k, v) in coords {
            let c = v
                .as_constant()
                .ok_or_else(|| Error::Internal(format!("term '{name}' carries a coupling constant: {v}")))?;
            vec.insert(k, c);
        }
        let mut trial: Vec<&BTreeMap<Coord, Scalar>> = chosen.iter().map(|c| &c.2).collect();
        trial.push(&vec);
        if vec.is_empty() || rank(&gram(&trial)) < trial.len() {
            dependent.push(name.clone());
        } else {
            chosen.push((name.clone(), shape.clone(), vec));
        }
    }
    let vecs: Vec<&BTreeMap<Coord, Scalar>> = chosen.iter().map(|c| &c.2).collect();
    let g_inv = gram(&vecs).inverse().ok_or_else(|| Error::Internal("singular Gram matrix".into()))?;
    let proj: Vec<Poly> = vecs
        .iter()
        .map(|v| {
            v.iter().fold(Poly::zero(), |acc, (k, c)| match target.get(k) {
                Some(t) => &acc + &t.scale(&c.conj()),
                None => acc,
            })
        })
        .collect();
    let mut coefficients = Vec::new();
    let mut residual = op.clone();
    for (k, (name, shape, _)) in chosen.iter().enumerate() {
        let coef = (0..proj.len()).fold(Poly::zero(), |acc, l| &acc + &proj[l].scale(g_inv.get(k, l)));
        residual = residual.sub(&shape.map(|w| w.mul_central(&coef)));
        coefficients.push((name.clone(), coef));
    }
    Ok(TermFit { coefficients, dependent, residual })
}

fn gram(vs: &[&BTreeMap<Coord, Scalar>]) -> SMatrix {
    SMatrix::from_fn(vs.len(), vs.len(), |i, j| {
        vs[i].iter().fold(Scalar::zero(), |acc, (k, a)| match vs[j].get(k) {
            Some(b) => acc + &a.conj() * b,
            None => acc,
        })
    })
}

// ---------------------------------------------------------------------------
// Reduction

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionReport {
    pub system: String,
    pub kept: Vec<usize>,
    /// Central factor divided out so that `p0` enters with unit coefficient.
    pub normalization: Poly,
    /// Normalized operator on the kept components.
    pub block: WMatrix,
    pub fit: TermFit,
    /// `ψ = expression · ψ_kept`.
    pub expression: WMatrix,
    /// `block = Σ coefficient · term + residual`, re-checked entrywise.
    pub exact: bool,
    pub truncation: TruncationSpec,
}

impl ReductionReport {
    pub fn g(&self) -> Poly {
        self.fit.get("spin_magnetic")
    }

    pub fn to_json(&self) -> Value {
        let terms: serde_json::Map<String, Value> = self
            .fit
            .coefficients
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (n.clone(), Value::String(c.to_string())))
            .collect();
        let residual: Vec<Value> = nonzero_entries(&self.fit.residual);
        let aux: Vec<Value> = (0..self.expression.rows())
            .filter(|r| !self.kept.contains(r))
            .map(|r| {
                json!({
                    "component": r,
                    "in_terms_of_kept": (0..self.expression.cols())
                        .map(|c| self.expression.get(r, c).to_string())
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "system": self.system,
            "kept": self.kept,
            "normalization": self.normalization.to_string(),
            "g": self.g().to_string(),
            "terms": terms,
            "dependent_terms": self.fit.dependent,
            "residual": residual,
            "auxiliary": aux,
            "exact": self.exact,
            "truncation": self.truncation.caps.iter().map(|(s, c)| json!([s.name(), c])).collect::<Vec<_>>(),
        })
    }
}

fn nonzero_entries(m: &WMatrix) -> Vec<Value> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_zero() {
                out.push(json!({"entry": [i, j], "value": m.get(i, j).to_string()}));
            }
        }
    }
    out
}

fn normalize(block: &WMatrix) -> Result<(Poly, WMatrix)> {
    let p0 = p0_coefficients(block);
    let d = block.rows();
    if d == 0 || block.cols() != d {
        return Err(Error::Internal(format!("kept block is {}x{}", block.rows(), block.cols())));
    }
    let c = p0.get(0, 0).clone();
    if p0 != PMatrix::identity(d).rmul(&c) {
        return Err(Error::Internal("p0 does not enter the kept block as a multiple of the identity".into()));
    }
    let inv = c.inv_unit().ok_or_else(|| Error::Internal(format!("p0 coefficient {c} is not invertible")))?;
    Ok((c, block.map(|w| w.mul_central(&inv))))
}

fn finish(
    system: &str,
    red: BlockReduction,
    s: &[SMatrix; 3],
    fc: &FieldConfig,
    t: &TruncationSpec,
) -> Result<ReductionReport> {
    let (normalization, block) = normalize(&red.block)?;
    let dict: Vec<(String, WMatrix)> =
        term_dictionary(fc, s)?.into_iter().map(|(n, m)| (n, truncate_matrix(&m, t))).collect();
    let fit = fit_terms(&block, &dict, fc)?;
    let exact = resum(&fit, &dict) == block;
    Ok(ReductionReport {
        system: system.to_string(),
        kept: red.kept,
        normalization,
        block,
        fit,
        expression: red.expression,
        exact,
        truncation: t.clone(),
    })
}

/// Similarity transform, elimination of auxiliary components, normalization
/// and term fit.
pub fn reduce(co: &CoupledOperator, keep: Option<&[usize]>, t: &TruncationSpec) -> Result<ReductionReport> {
    let transformed = similarity_transform(co, t)?;
    let red = eliminate(&transformed, keep, &co.field, t)?;
    let s = restricted_spin(&co.rep, &red.kept);
    finish(&co.system, red, &s, &co.field, t)
}

fn resum(fit: &TermFit, dict: &[(String, WMatrix)]) -> WMatrix {
    let mut total = fit.residual.clone();
    for (name, coef) in &fit.coefficients {
        let shape = &dict.iter().find(|(n, _)| n == name).unwrap().1;
        total = total.add(&shape.map(|w| w.mul_central(coef)));
    }
    total
}

// ---------------------------------------------------------------------------
// Spin-orbit expansion

#[derive(Clone, Debug, PartialEq)]
pub struct SpinOrbitReport {
    pub reduction: ReductionReport,
    /// `κ` in `U = exp(−iκ s·Π/m)`; equal to the `spin_electric` coefficient so
    /// that the first-order `s·E` term cancels.
    pub kappa: Poly,
    pub transformed: WMatrix,
    pub fit: TermFit,
    pub exact: bool,
    /// Coefficients of the transformed block with `λ₃² → −1`, when `lambda3` occurs.
    pub imaginary_lambda3: Option<Vec<(String, Poly)>>,
}

impl SpinOrbitReport {
    pub fn to_json(&self) -> Value {
        let terms: serde_json::Map<String, Value> = self
            .fit
            .coefficients
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (n.clone(), Value::String(c.to_string())))
            .collect();
        let imag = self.imaginary_lambda3.as_ref().map(|v| {
            v.iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(n, c)| (n.clone(), Value::String(c.to_string())))
                .collect::<serde_json::Map<String, Value>>()
        });
        json!({
            "reduction": self.reduction.to_json(),
            "kappa": self.kappa.to_string(),
            "terms": terms,
            "g": self.fit.get("spin_magnetic").to_string(),
            "residual": nonzero_entries(&self.fit.residual),
            "exact": self.exact,
            "imaginary_lambda3": imag,
        })
    }
}

/// `Σ_k ad_X^k(K)/k!`, truncated after every step; the truncation has to make
/// the series terminate.
pub fn conjugate_series(k: &WMatrix, x: &WMatrix, t: &TruncationSpec, max_order: usize) -> Result<WMatrix> {
    let mut total = k.clone();
    let mut term = k.clone();
    for order in 1..=max_order {
        let comm = x.mul(&term).sub(&term.mul(x));
        term = truncate_matrix(&comm.scale(&Scalar::ratio(1, order as i64)), t);
        if term.is_zero() {
            return Ok(total);
        }
        total = total.add(&term);
    }
    Err(Error::Invalid(format!("truncation does not terminate the conjugation series after {max_order} orders")))
}

/// Reduces, then removes the first-order `s·E` coupling with
/// `U = exp(−iκ s·Π/m)` under the truncation: `K' = U K U⁻¹`.
pub fn spin_orbit_expand(co: &CoupledOperator, keep: Option<&[usize]>, t: &TruncationSpec) -> Result<SpinOrbitReport> {
    if t.caps.is_empty() {
        return Err(Error::Invalid("the spin-orbit expansion needs a truncation".into()));
    }
    let transformed = similarity_transform(co, t)?;
    let red = eliminate(&transformed, keep, &co.field, t)?;
    let s = restricted_spin(&co.rep, &red.kept);
    let reduction = finish(&co.system, red, &s, &co.field, t)?;
    let kappa = reduction.fit.get("spin_electric");
    let pi = kinetic_momentum(&co.field)?;
    let gen = dot_spin(&s, &pi).map(|w| w.mul_central(&(&Poly::constant(-Scalar::i()) * &(&kappa * &inv_m()))));
    let block = conjugate_series(&reduction.block, &truncate_matrix(&gen, t), t, 12)?;
    let dict: Vec<(String, WMatrix)> =
        term_dictionary(&co.field, &s)?.into_iter().map(|(n, m)| (n, truncate_matrix(&m, t))).collect();
    let fit = fit_terms(&block, &dict, &co.field)?;
    let exact = resum(&fit, &dict) == block;
    let l3 = sym("lambda3");
    let imaginary_lambda3 = if fit.coefficients.iter().any(|(_, c)| c.contains(l3)) {
        Some(fit.coefficients.iter().map(|(n, c)| (n.clone(), imaginary_square(c, l3))).collect())
    } else {
        None
    };
    Ok(SpinOrbitReport { reduction, kappa, transformed: block, fit, exact, imaginary_lambda3 })
}

/// Replaces `λ²` by `−1` (odd powers keep one factor of `λ`).
fn imaginary_square(p: &Poly, l: Sym) -> Poly {
    let mut out = Poly::zero();
    for (k, c) in p.collect_in(l) {
        let (q, r) = (k.div_euclid(2), k.rem_euclid(2));
        let sign = if q.rem_euclid(2) == 0 { Scalar::one() } else { Scalar::int(-1) };
        out = &out + &(&c * &Poly::var_pow(l, r)).scale(&sign);
    }
    out
}

// ---------------------------------------------------------------------------
// Interacting Proca system

#[derive(Clone, Debug, PartialEq)]
pub struct ProcaInteraction {
    /// `Ŵᵐ` acting on `ψ̂ⁿ`.
    pub operator: WMatrix,
    /// `ψ̂ = V ψ`: the five-vector law with velocity `π/m`.
    pub substitution: WMatrix,
    /// Rows of `Ŵ V`.
    pub substituted: WMatrix,
    pub reduction: ReductionReport,
    /// `ψ⁴` in terms of the vector components.
    /// `π_mŴᵐ`, one entry per column.
    pub divergence: Vec<Weyl>,
    pub psi4_vanishes: bool,
}

impl ProcaInteraction {
    pub fn g(&self) -> Poly {
        self.reduction.g()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "reduction": self.reduction.to_json(),
            "psi4_vanishes": self.psi4_vanishes,
            "g": self.g().to_string(),
        })
    }
}

/// `eF^{mn} = −i[πᵐ, πⁿ]` from the contravariant five-vector.
pub fn field_commutators(fc: &FieldConfig) -> Result<WMatrix> {
    let pi = contravariant_pi(fc)?;
    Ok(WMatrix::from_fn(5, 5, |m, n| pi[m].commutator(&pi[n]).scale(&-Scalar::i())))
}

/// `ψ̂⁰ = ψ⁰ + u·ψ/m + u²ψ⁴/2m²`, `ψ̂ᵃ = ψᵃ + uᵃψ⁴/m`, `ψ̂⁴ = ψ⁴` with `uᵃ = πᵃ`.
pub fn proca_substitution(fc: &FieldConfig) -> Result<WMatrix> {
    let pi = contravariant_pi(fc)?;
    let im = inv_m();
    let mut v = WMatrix::identity(5);
    let mut u_sq = Weyl::zero();
    for a in 1..4 {
        v.set(0, a, pi[a].mul_central(&im));
        v.set(a, 4, pi[a].mul_central(&im));
        u_sq = &u_sq + &(&pi[a] * &pi[a]);
    }
    v.set(0, 4, u_sq.mul_central(&(&im * &im).scale(&Scalar::ratio(1, 2))));
    Ok(v)
}

/// `Ŵᵐ = π_nπⁿ ψ̂ᵐ + 2ieF^{mn}ψ̂_n − πᵐπ_nψ̂ⁿ + λδ^{m0} m ψ̂⁴` with the
/// substitution above, the gauge components eliminated, and the vector block
/// matched against the term dictionary.
pub fn proca_interacting(lambda: &Poly, fc: &FieldConfig) -> Result<ProcaInteraction> {
    if lambda.is_zero() {
        return Err(Error::Invalid("the Proca mass term needs lambda != 0".into()));
    }
    let g = crate::catalog::galilean_metric();
    let up = contravariant_pi(fc)?;
    let low: Vec<Weyl> =
        (0..5).map(|n| wsum((0..5).filter(|&k| !g.get(n, k).is_zero()).map(|k| up[k].scale(g.get(n, k))))).collect();
    let square = wsum((0..5).map(|n| &low[n] * &up[n]));
    let ef = field_commutators(fc)?;
    let two_i = Scalar::imag(2);
    let mut w = WMatrix::zeros(5, 5);
    for m in 0..5 {
        for k in 0..5 {
            let mut e = &up[m] * &low[k];
            e = -&e;
            if m == k {
                e = &e + &square;
            }
            // 2i eF^{mn} ĝ_{nk}
            for n in 0..5 {
                if !g.get(n, k).is_zero() {
                    e = &e + &ef.get(m, n).scale(&(&two_i * g.get(n, k)));
                }
            }
            w.set(m, k, e);
        }
    }
    let corner = w.get(0, 4) + &Weyl::central(lambda * &m_poly());
    w.set(0, 4, corner);
    let v = proca_substitution(fc)?;
    let substituted = w.mul(&v);
    // Row 0 enters π_mŴᵐ through the central unit ĝ_{0n}πⁿ; swapping it for the
    // divergence keeps the system equivalent and exposes the ψ⁴ constraint.
    let divergence: Vec<Weyl> = (0..5).map(|k| wsum((0..5).map(|n| &low[n] * substituted.get(n, k)))).collect();
    let lead = low[0].as_central().and_then(|c| c.as_unit());
    if lead.is_none() {
        return Err(Error::Internal("the divergence row does not contain row 0 invertibly".into()));
    }
    let mut system = substituted.clone();
    for (k, d) in divergence.iter().enumerate() {
        system.set(0, k, d.clone());
    }
    let t = TruncationSpec::none();
    let red = eliminate(&system, Some(&[1, 2, 3]), fc, &t)?;
    let psi4_vanishes = (0..3).all(|c| red.expression.get(4, c).is_zero());
    let s = crate::reps::spin_one();
    let reduction = finish("proca", red, &s, fc, &t)?;
    Ok(ProcaInteraction { operator: w, substitution: v, substituted, divergence, reduction, psi4_vanishes })
}
