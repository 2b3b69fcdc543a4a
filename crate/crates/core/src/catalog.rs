//! Canonical β-systems, Galilean Clifford and DKP sets, the five-vector Proca and
//! Rarita-Schwinger operators, and the DKP contraction check.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::beta::BetaSystem;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, SubspaceBasis};
use crate::matrix::{Matrix, PMatrix, SMatrix};
use crate::poly::{sym, Poly};
use crate::reps::{build, build_sum, k_rows, levi_civita, pauli, spin_one, RepLabel};
use crate::scalar::Scalar;

pub const NAMES: [&str; 9] =
    ["levy_leblond", "D110", "D210", "D221", "D311", "dkp_spin0", "gamma_hat", "proca", "rarita_schwinger"];

/// `ĝ`: `ĝ04 = ĝ40 = 1`, `ĝaa = −1`.
pub fn galilean_metric() -> SMatrix {
    SMatrix::from_fn(5, 5, |i, j| match (i, j) {
        (0, 4) | (4, 0) => Scalar::one(),
        (a, b) if a == b && (1..=3).contains(&a) => Scalar::int(-1),
        _ => Scalar::zero(),
    })
}

/// Five-momentum `(p0, p1, p2, p3, m)` as symbols.
pub fn five_momentum() -> [Poly; 5] {
    ["p0", "p1", "p2", "p3", "m"].map(Poly::sym)
}

pub fn lower(p: &[Poly; 5]) -> [Poly; 5] {
    let g = galilean_metric();
    [0, 1, 2, 3, 4].map(|i| (0..5).fold(Poly::zero(), |acc, j| &acc + &p[j].scale(g.get(i, j))))
}

/// `p_n pⁿ = 2 p⁰ p⁴ − Σ (pᵃ)²`.
pub fn five_square(p: &[Poly; 5]) -> Poly {
    let l = lower(p);
    (0..5).fold(Poly::zero(), |acc, i| &acc + &(&l[i] * &p[i]))
}

fn blocks2(a: &SMatrix, b: &SMatrix, c: &SMatrix, d: &SMatrix) -> SMatrix {
    SMatrix::vstack(&[SMatrix::hstack(&[a.clone(), b.clone()]), SMatrix::hstack(&[c.clone(), d.clone()])])
}

/// Clifford set used throughout: `γ̂0 = [[0,0],[I,0]]`, `γ̂a = −i diag(σa, −σa)`,
/// `γ̂4 = [[0,2I],[0,0]]`.
pub fn gamma_hat() -> [SMatrix; 5] {
    let (z, i2) = (SMatrix::zeros(2, 2), SMatrix::identity(2));
    let sig = pauli();
    let mi = -Scalar::i();
    let sp = |a: usize| Matrix::block_diag(&[sig[a].clone(), sig[a].scale(&Scalar::int(-1))]).scale(&mi);
    [blocks2(&z, &z, &i2, &z), sp(0), sp(1), sp(2), blocks2(&z, &i2.scale(&Scalar::int(2)), &z, &z)]
}

/// The block form as printed, with `γ̂a = [[0, −σa],[σa, 0]]`.
pub fn gamma_hat_printed() -> [SMatrix; 5] {
    let (z, i2) = (SMatrix::zeros(2, 2), SMatrix::identity(2));
    let sig = pauli();
    let sp = |a: usize| blocks2(&z, &sig[a].scale(&Scalar::int(-1)), &sig[a], &z);
    [blocks2(&z, &z, &i2, &z), sp(0), sp(1), sp(2), blocks2(&z, &i2.scale(&Scalar::int(2)), &z, &z)]
}

/// Hermitizer `[[0, I],[I, 0]]` of the bispinor system.
pub fn bispinor_hermitizer() -> SMatrix {
    let (z, i2) = (SMatrix::zeros(2, 2), SMatrix::identity(2));
    blocks2(&z, &i2, &i2, &z)
}

/// Hermitian `[[0, −iI],[iI, 0]]`; with `β₀` it spans the bispinor Pauli-term space.
pub fn bispinor_lambda() -> SMatrix {
    let (z, i2) = (SMatrix::zeros(2, 2), SMatrix::identity(2));
    blocks2(&z, &i2.scale(&Scalar::imag(-1)), &i2.scale(&Scalar::i()), &z)
}

/// Invertible 10×10 matrix relating the D(3,1,1) system to a DKP set.
pub fn dkp_hermitizer() -> SMatrix {
    let mut h = SMatrix::zeros(10, 10);
    let i3 = SMatrix::identity(3);
    h.put(0, 6, &i3);
    h.put(3, 3, &i3);
    h.put(6, 0, &i3);
    h.set(9, 9, Scalar::int(-1));
    h
}

fn beta_from_blocks(
    name: &str,
    label: RepLabel,
    b0: SMatrix,
    ba: [SMatrix; 3],
    b4: PMatrix,
    params: &[&str],
) -> Result<BetaSystem> {
    let ii = Scalar::i();
    let [b1, b2, b3] = ba.map(|b| b.scale(&ii).to_poly());
    Ok(BetaSystem {
        name: name.to_string(),
        rep: build(label)?,
        beta: [b0.to_poly(), b1, b2, b3, b4],
        params: params.iter().map(|s| s.to_string()).collect(),
    })
}

/// Spinor system on the bispinor carrier.
pub fn levy_leblond(kappa: &Poly, omega: &Poly) -> Result<BetaSystem> {
    let (z, i2) = (SMatrix::zeros(2, 2), SMatrix::identity(2));
    let sig = pauli();
    let b0 = blocks2(&i2, &z, &z, &z).to_poly();
    let ba = [0, 1, 2].map(|a| blocks2(&z, &sig[a], &sig[a], &z).to_poly());
    let ip = Poly::constant(Scalar::i());
    let mut b4 = PMatrix::zeros(4, 4);
    for k in 0..2 {
        b4.set(k, k, kappa.clone());
        b4.set(k, k + 2, -&(&ip * omega));
        b4.set(k + 2, k, &ip * omega);
        b4.set(k + 2, k + 2, Poly::int(2));
    }
    let [b1, b2, b3] = ba;
    Ok(BetaSystem {
        name: "levy_leblond".into(),
        rep: build(RepLabel::Spinor(2))?,
        beta: [b0, b1, b2, b3, b4],
        params: symbol_names(&[kappa, omega]),
    })
}

fn symbol_names(ps: &[&Poly]) -> Vec<String> {
    let mut out: Vec<String> = ps.iter().flat_map(|p| p.symbols()).map(|s| s.name()).collect();
    out.sort();
    out.dedup();
    out
}

struct Layout {
    offsets: Vec<usize>,
    dim: usize,
}

impl Layout {
    /// Block sizes: `vectors` 3-blocks then `scalars` 1-blocks.
    fn new(vectors: usize, scalars: usize) -> Self {
        let mut offsets: Vec<usize> = (0..vectors).map(|k| 3 * k).collect();
        offsets.extend((0..scalars).map(|k| 3 * vectors + k));
        Layout { offsets, dim: 3 * vectors + scalars }
    }

    fn zeros(&self) -> SMatrix {
        SMatrix::zeros(self.dim, self.dim)
    }
}

/// Sign-tagged block entries for `β_a / i`.
enum Blk {
    S(i64),
    K(i64),
    Kd(i64),
}

fn beta_a_blocks(lay: &Layout, entries: &[(usize, usize, Blk)]) -> [SMatrix; 3] {
    let s = spin_one();
    let k = k_rows();
    [0, 1, 2].map(|a| {
        let mut m = lay.zeros();
        for (r, c, b) in entries {
            let (blk, sg) = match b {
                Blk::S(g) => (s[a].clone(), *g),
                Blk::K(g) => (k[a].clone(), *g),
                Blk::Kd(g) => (k[a].adjoint(), *g),
            };
            m.put(lay.offsets[*r], lay.offsets[*c], &blk.scale(&Scalar::int(sg)));
        }
        m
    })
}

fn diag_blocks(lay: &Layout, entries: &[(usize, usize, i64)]) -> SMatrix {
    let mut m = lay.zeros();
    for &(r, c, v) in entries {
        let size = if is_vector(lay, r) { 3 } else { 1 };
        m.put(lay.offsets[r], lay.offsets[c], &SMatrix::identity(size).scale(&Scalar::int(v)));
    }
    m
}

fn is_vector(lay: &Layout, r: usize) -> bool {
    let next = lay.offsets.get(r + 1).copied().unwrap_or(lay.dim);
    next - lay.offsets[r] == 3
}

/// First vector system; built on the carrier where it satisfies the invariance
/// conditions (`B = 1, C = 0`).
pub fn d110() -> Result<BetaSystem> {
    let lay = Layout::new(1, 1);
    let b4 = diag_blocks(&lay, &[(0, 0, 1)]);
    let b0 = diag_blocks(&lay, &[(1, 1, 2)]);
    let ba = beta_a_blocks(&lay, &[(0, 1, Blk::Kd(-1)), (1, 0, Blk::K(1))]);
    beta_from_blocks("D110", RepLabel::vector(1, 1, 1), b0, ba, b4.to_poly(), &[])
}

pub fn d210() -> Result<BetaSystem> {
    let lay = Layout::new(2, 1);
    let b4 = diag_blocks(&lay, &[(1, 1, 1), (2, 2, 1)]);
    let b0 = diag_blocks(&lay, &[(0, 0, 2)]);
    let ba = beta_a_blocks(&lay, &[(0, 1, Blk::S(1)), (0, 2, Blk::Kd(1)), (1, 0, Blk::S(-1)), (2, 0, Blk::K(-1))]);
    beta_from_blocks("D210", RepLabel::vector(2, 1, 0), b0, ba, b4.to_poly(), &[])
}

pub fn d221() -> Result<BetaSystem> {
    let lay = Layout::new(2, 2);
    let b4 = diag_blocks(&lay, &[(1, 1, 1), (3, 3, 1)]);
    let b0 = diag_blocks(&lay, &[(0, 0, 2), (2, 2, 2)]);
    let ba = beta_a_blocks(
        &lay,
        &[
            (0, 1, Blk::S(1)),
            (0, 3, Blk::Kd(1)),
            (1, 0, Blk::S(-1)),
            (1, 2, Blk::Kd(-1)),
            (2, 1, Blk::K(1)),
            (3, 0, Blk::K(-1)),
        ],
    );
    beta_from_blocks("D221", RepLabel::vector(2, 2, 1), b0, ba, b4.to_poly(), &[])
}

/// Spin-one system with the free internal-energy parameter `nu`.
pub fn d311(nu: &Poly) -> Result<BetaSystem> {
    let lay = Layout::new(3, 1);
    let one = diag_blocks(&lay, &[(1, 2, 1), (2, 1, 1)]).to_poly();
    let with_nu = diag_blocks(&lay, &[(0, 2, 1), (1, 1, 1), (2, 0, 1), (3, 3, -1)]).to_poly();
    let b4 = one.add(&with_nu.rmul(nu));
    let b0 = diag_blocks(&lay, &[(0, 1, 1), (1, 0, 1)]);
    let ba = beta_a_blocks(&lay, &[(0, 2, Blk::S(1)), (1, 3, Blk::Kd(-1)), (2, 0, Blk::S(-1)), (3, 1, Blk::K(1))]);
    beta_from_blocks(
        "D311",
        RepLabel::vector(3, 1, 1),
        b0,
        ba,
        b4,
        &symbol_names(&[nu]).iter().map(|s| s.as_str()).collect::<Vec<_>>(),
    )
}

fn e6(a: usize, b: usize) -> SMatrix {
    SMatrix::from_fn(6, 6, |i, j| if i + 1 == a && j + 1 == b { Scalar::one() } else { Scalar::zero() })
}

/// The 6×6 spin-zero set `(β⁰, β¹, β², β³, β⁴)` in the `e_ab` basis, as printed.
pub fn dkp_spin0_matrices() -> [SMatrix; 5] {
    let b0 = e6(5, 6).add(&e6(6, 1)).scale(&Scalar::int(-1));
    let ba = [1, 2, 3].map(|a| e6(6, 1 + a).sub(&e6(1 + a, 6)));
    let b4 = [e6(1, 5), e6(5, 1), e6(6, 6), e6(1, 6), e6(6, 5)]
        .iter()
        .fold(SMatrix::zeros(6, 6), |acc, x| acc.add(x))
        .sub(&e6(2, 2))
        .sub(&e6(3, 3))
        .sub(&e6(4, 4));
    let [b1, b2, b3] = ba;
    [b0, b1, b2, b3, b4]
}

/// The spin-zero set as a system on `D(1,2,1) ⊕ D(0,1,0)`, with components
/// reordered so the vector `(e2, e3, e4)` comes first, then `e1, e5, e6`.
pub fn dkp_spin0() -> Result<BetaSystem> {
    let order = [1usize, 2, 3, 0, 4, 5];
    let p = SMatrix::from_fn(6, 6, |old, new| if order[new] == old { Scalar::one() } else { Scalar::zero() });
    let pt = p.transpose();
    let [b0, b1, b2, b3, b4] = dkp_spin0_matrices().map(|b| pt.mul(&b).mul(&p).to_poly());
    Ok(BetaSystem {
        name: "dkp_spin0".into(),
        rep: build_sum(&[RepLabel::vector(1, 2, 1), RepLabel::vector(0, 1, 0)])?,
        beta: [b0, b1, b2, b3, b4],
        params: Vec::new(),
    })
}

/// `β̃μ = η βμ`, `β̃4 = η β4 − ν I` from the D(3,1,1) system.
pub fn dkp_from_d311(nu: &Poly) -> Result<[PMatrix; 5]> {
    let bs = d311(nu)?;
    let h = dkp_hermitizer().to_poly();
    let mut out = bs.beta.clone().map(|b| h.mul(&b));
    out[4] = out[4].sub(&PMatrix::identity(10).rmul(nu));
    Ok(out)
}

/// Failures of an index-pattern identity.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<Vec<usize>>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({ "checked": self.checked, "failed": self.failures.len(), "failures": self.failures, "pass": self.pass() })
    }
}

/// `γn γm + γm γn = 2 ĝnm I` for all 25 ordered pairs.
pub fn check_clifford(gammas: &[PMatrix], metric: &SMatrix) -> Result<IdentityReport> {
    if gammas.len() != 5 {
        return Err(Error::Shape(format!("expected 5 matrices, got {}", gammas.len())));
    }
    let d = gammas[0].rows();
    let mut rep = IdentityReport::default();
    for n in 0..5 {
        for m in 0..5 {
            rep.checked += 1;
            let lhs = gammas[n].anticommutator(&gammas[m]);
            let rhs = PMatrix::identity(d).scale(&(metric.get(n, m) * &Scalar::int(2)));
            if lhs != rhs {
                rep.failures.push(vec![n, m]);
            }
        }
    }
    Ok(rep)
}

/// `βμβνβσ + βσβνβμ = c (ĝμν βσ + ĝσν βμ)` for all 125 triples. The standard
/// normalization is `c = 1`.
pub fn check_galilean_dkp(betas: &[PMatrix], metric: &SMatrix, factor: &Scalar) -> Result<IdentityReport> {
    if betas.len() != 5 {
        return Err(Error::Shape(format!("expected 5 matrices, got {}", betas.len())));
    }
    let mut rep = IdentityReport::default();
    for mu in 0..5 {
        for nu in 0..5 {
            let mn = betas[mu].mul(&betas[nu]);
            for sg in 0..5 {
                rep.checked += 1;
                let lhs = mn.mul(&betas[sg]).add(&betas[sg].mul(&betas[nu]).mul(&betas[mu]));
                let rhs = betas[sg]
                    .scale(&(metric.get(mu, nu) * factor))
                    .add(&betas[mu].scale(&(metric.get(sg, nu) * factor)));
                if lhs != rhs {
                    rep.failures.push(vec![mu, nu, sg]);
                }
            }
        }
    }
    Ok(rep)
}

/// `Wᵐ = (p_n pⁿ) ψᵐ − pᵐ (p_n ψⁿ) + λ δ^{m0} m ψ⁴` as a 5×5 matrix.
pub fn proca_operator(lambda: &Poly, p: &[Poly; 5]) -> Result<PMatrix> {
    if lambda.is_zero() {
        return Err(Error::Invalid("the Proca mass term needs lambda != 0".into()));
    }
    let l = lower(p);
    let sq = five_square(p);
    let mut w = PMatrix::from_fn(5, 5, |m, k| {
        let diag = if m == k { sq.clone() } else { Poly::zero() };
        &diag - &(&p[m] * &l[k])
    });
    let corner = w.get(0, 4) + &(lambda * &p[4]);
    w.set(0, 4, corner);
    Ok(w)
}

/// Rows of the reduced free system: `(p_n pⁿ) ψᵐ = 0`, `m ψ⁰ + p_a ψᵃ = 0`, `ψ⁴ = 0`.
pub fn proca_free_system(p: &[Poly; 5]) -> PMatrix {
    let sq = five_square(p);
    let l = lower(p);
    let mut rows = PMatrix::identity(5).rmul(&sq);
    let mut gauge = PMatrix::zeros(1, 5);
    gauge.set(0, 0, p[4].clone());
    for a in 1..4 {
        gauge.set(0, a, l[a].clone());
    }
    let mut last = PMatrix::zeros(1, 5);
    last.set(0, 4, Poly::one());
    rows = PMatrix::vstack(&[rows, gauge, last]);
    rows
}

fn kron_scalar(c: &Poly, m: &PMatrix) -> PMatrix {
    m.rmul(c)
}

/// 20×20 operator on five bispinors (five-vector index outer).
pub fn rarita_schwinger_operator(lambda: &Poly, p: &[Poly; 5], gammas: &[SMatrix; 5]) -> Result<PMatrix> {
    if lambda.is_zero() {
        return Err(Error::Invalid("the Rarita-Schwinger mass term needs lambda != 0".into()));
    }
    let g = galilean_metric();
    let gl: Vec<PMatrix> = gammas.iter().map(|x| x.to_poly()).collect();
    // γ̂ᵐ = ĝᵐⁿ γ̂n; ĝ is its own inverse.
    let gu: Vec<PMatrix> =
        (0..5).map(|m| (0..5).fold(PMatrix::zeros(4, 4), |acc, n| acc.add(&gl[n].scale(g.get(m, n))))).collect();
    let slash = (0..5).fold(PMatrix::zeros(4, 4), |acc, n| acc.add(&gl[n].rmul(&p[n])));
    let l = lower(p);
    let mut op = PMatrix::zeros(20, 20);
    for m in 0..5 {
        for k in 0..5 {
            let mut blk = gu[m].mul(&slash).mul(&gl[k]);
            if m == k {
                blk = blk.add(&slash);
            }
            blk = blk.sub(&kron_scalar(&l[k], &gu[m])).sub(&kron_scalar(&p[m], &gl[k]));
            if m == 0 && k == 4 {
                blk = blk.add(&PMatrix::identity(4).rmul(&(lambda * &p[4])));
            }
            op.put(4 * m, 4 * k, &blk);
        }
    }
    Ok(op)
}

/// Stacked consequence system: `γ̂·p Ψ^σ = 0` (σ = 0..3), `m Ψ⁰ − pᵃ Ψᵃ = 0`,
/// `γ̂0 Ψ⁰ + γ̂a Ψᵃ = 0`, `Ψ⁴ = 0`.
pub fn rarita_schwinger_consequences(p: &[Poly; 5], gammas: &[SMatrix; 5]) -> PMatrix {
    let gl: Vec<PMatrix> = gammas.iter().map(|x| x.to_poly()).collect();
    let slash = (0..5).fold(PMatrix::zeros(4, 4), |acc, n| acc.add(&gl[n].rmul(&p[n])));
    let i4 = PMatrix::identity(4);
    let mut first = PMatrix::zeros(16, 20);
    for s in 0..4 {
        first.put(4 * s, 4 * s, &slash);
    }
    let mut second = PMatrix::zeros(4, 20);
    second.put(0, 0, &i4.rmul(&p[4]));
    for a in 1..4 {
        second.put(0, 4 * a, &i4.rmul(&-&p[a]));
    }
    let mut third = PMatrix::zeros(4, 20);
    for n in 0..4 {
        third.put(0, 4 * n, &gl[n]);
    }
    let mut fourth = PMatrix::zeros(4, 20);
    fourth.put(0, 16, &i4);
    PMatrix::vstack(&[first, second, third, fourth])
}

/// Total spin on the 20-dimensional carrier: bispinor spin on every component
/// plus spin one on the vector index of `Ψ¹..Ψ³`.
pub fn rarita_schwinger_spin() -> [SMatrix; 3] {
    let sig = pauli();
    let half = Scalar::ratio(1, 2);
    let s1 = spin_one();
    [0, 1, 2].map(|a| {
        let sb = Matrix::block_diag(&[sig[a].clone(), sig[a].clone()]).scale(&half);
        let mid = s1[a].kron(&SMatrix::identity(4)).add(&SMatrix::identity(3).kron(&sb));
        Matrix::block_diag(&[sb.clone(), mid, sb])
    })
}

/// `σ̂a Ψᵃ = 0` on the spatial components (12-dimensional).
pub fn rs_sigma_constraint() -> SMatrix {
    let sig = pauli();
    let mut m = SMatrix::zeros(4, 12);
    for a in 0..3 {
        m.put(0, 4 * a, &Matrix::block_diag(&[sig[a].clone(), sig[a].clone()]));
    }
    m
}

/// `Ψa + c εabc σ̂b Ψc = 0` on the spatial components. The printed relation has
/// `c = −i/2`; with this crate's spin-one sign the spin-3/2 condition is `c = −i`.
pub fn rs_projector_constraint(c: &Scalar) -> SMatrix {
    let sig = pauli();
    let mut m = SMatrix::identity(12);
    for a in 0..3 {
        for b in 0..3 {
            for d in 0..3 {
                let e = levi_civita(a, b, d);
                if e != 0 {
                    let blk = Matrix::block_diag(&[sig[b].clone(), sig[b].clone()]).scale(&(c * &Scalar::int(e)));
                    let cur = m.block(4 * a, 4 * d, 4, 4);
                    m.put(4 * a, 4 * d, &cur.add(&blk));
                }
            }
        }
    }
    m
}

/// Block matrix `[σ̂a σ̂b]`: the lift of `σ̂·Ψ` by `σ̂a`.
pub fn rs_sigma_lift() -> SMatrix {
    let sig = pauli();
    let hat = |a: usize| Matrix::block_diag(&[sig[a].clone(), sig[a].clone()]);
    let mut m = SMatrix::zeros(12, 12);
    for a in 0..3 {
        for b in 0..3 {
            m.put(4 * a, 4 * b, &hat(a).mul(&hat(b)));
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentumSample {
    pub point: [Scalar; 5],
    pub on_shell: bool,
    pub dim: usize,
    pub reference_dim: usize,
    pub equal: bool,
}

impl MomentumSample {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.point.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "on_shell": self.on_shell,
            "dim": self.dim,
            "reference_dim": self.reference_dim,
            "equal": self.equal,
        })
    }
}

fn momentum_point(p: &[Scalar; 5]) -> std::collections::HashMap<crate::poly::Sym, Scalar> {
    ["p0", "p1", "p2", "p3", "m"].iter().zip(p.iter()).map(|(n, v)| (sym(n), v.clone())).collect()
}

/// Alternately on-shell (`p0 = p²/2`) and generic momenta with `m = 1`.
pub fn sample_momenta(seed: u64, count: usize) -> Vec<([Scalar; 5], bool)> {
    let mut rng = crate::sample::rng(seed);
    (0..count)
        .map(|k| {
            let v = crate::sample::rationals(&mut rng, 4, 20, 100);
            let on_shell = k % 2 == 0;
            let p2 = &(&(&v[1] * &v[1]) + &(&v[2] * &v[2])) + &(&v[3] * &v[3]);
            let p0 = if on_shell { &p2 * &Scalar::ratio(1, 2) } else { v[0].clone() };
            ([p0, v[1].clone(), v[2].clone(), v[3].clone(), Scalar::one()], on_shell)
        })
        .collect()
}

fn compare_at(op: &PMatrix, reference: &PMatrix, point: &[Scalar; 5], on_shell: bool) -> Result<MomentumSample> {
    let at = momentum_point(point);
    let a = nullspace(&op.eval(&at)?);
    let b = nullspace(&reference.eval(&at)?);
    Ok(MomentumSample {
        point: point.clone(),
        on_shell,
        dim: a.dim(),
        reference_dim: b.dim(),
        equal: a.is_subspace_of(&b) && b.is_subspace_of(&a),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProcaReport {
    /// `p_m Wᵐ = λ m² ψ⁴` identically.
    pub contraction: bool,
    /// `ĝ W = W† ĝ` identically.
    pub self_adjoint: bool,
    pub determinant: Poly,
    /// `det W = ± λ m³ (p_n pⁿ)³`.
    pub determinant_factors: bool,
    pub rest_dim: usize,
    pub rest_is_vector: bool,
    pub samples: Vec<MomentumSample>,
}

impl ProcaReport {
    pub fn pass(&self) -> bool {
        self.contraction
            && self.self_adjoint
            && self.determinant_factors
            && self.rest_dim == 3
            && self.rest_is_vector
            && self.samples.iter().all(|s| s.equal)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "contraction": self.contraction,
            "self_adjoint": self.self_adjoint,
            "determinant": self.determinant.to_string(),
            "determinant_factors": self.determinant_factors,
            "rest_dim": self.rest_dim,
            "rest_is_vector": self.rest_is_vector,
            "samples": self.samples.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "pass": self.pass(),
        })
    }
}

pub fn proca_check(lambda: &Poly, seed: u64, samples: usize) -> Result<ProcaReport> {
    let p = five_momentum();
    let w = proca_operator(lambda, &p)?;
    let l = lower(&p);
    let contracted = PMatrix::from_fn(1, 5, |_, k| (0..5).fold(Poly::zero(), |acc, m| &acc + &(&l[m] * w.get(m, k))));
    let mut expect = PMatrix::zeros(1, 5);
    expect.set(0, 4, &(lambda * &p[4]) * &p[4]);
    let g = galilean_metric().to_poly();
    let self_adjoint = g.mul(&w) == w.adjoint().mul(&g);
    let det = crate::linalg::det_expansion(&w)?;
    let target = &(lambda * &p[4].pow(3)) * &five_square(&p).pow(3);
    let determinant_factors = det == target || det == -&target;
    let rest = [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()];
    let lam_val = lambda.as_constant().unwrap_or_else(|| Scalar::int(3));
    let mut at = momentum_point(&rest);
    for s in lambda.symbols() {
        at.insert(s, lam_val.clone());
    }
    let ns = nullspace(&w.eval(&at)?);
    let rest_is_vector = ns.vectors().iter().all(|v| v[0].is_zero() && v[4].is_zero());
    let free = proca_free_system(&p);
    let w_num = if lambda.symbols().is_empty() {
        w.clone()
    } else {
        let mut out = w.clone();
        for s in lambda.symbols() {
            out = out.subs(s, &Poly::constant(lam_val.clone()))?;
        }
        out
    };
    let samples = sample_momenta(seed, samples)
        .iter()
        .map(|(pt, on)| compare_at(&w_num, &free, pt, *on))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProcaReport {
        contraction: contracted == expect,
        self_adjoint,
        determinant: det,
        determinant_factors,
        rest_dim: ns.dim(),
        rest_is_vector,
        samples,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RaritaSchwingerReport {
    pub samples: Vec<MomentumSample>,
    pub rest_dim: usize,
    pub rest_spin_three_halves: bool,
    /// `σ̂a (σ̂·Ψ)` equals the spin-3/2 relation identically.
    pub sigma_lift_identity: bool,
    /// `σ̂·Ψ = 0` and the spin-3/2 relation have the same solutions.
    pub sigma_equivalent: bool,
    /// The relation with the printed coefficient `−i/2` has only the zero solution.
    pub printed_coefficient_dim: usize,
}

impl RaritaSchwingerReport {
    pub fn pass(&self) -> bool {
        self.samples.iter().all(|s| s.equal)
            && self.rest_dim == 4
            && self.rest_spin_three_halves
            && self.sigma_lift_identity
            && self.sigma_equivalent
    }

    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.samples.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "rest_dim": self.rest_dim,
            "rest_spin_three_halves": self.rest_spin_three_halves,
            "sigma_lift_identity": self.sigma_lift_identity,
            "sigma_equivalent": self.sigma_equivalent,
            "printed_coefficient_dim": self.printed_coefficient_dim,
            "pass": self.pass(),
        })
    }
}

pub fn rarita_schwinger_check(lambda: &Scalar, seed: u64, samples: usize) -> Result<RaritaSchwingerReport> {
    let g = gamma_hat();
    let p = five_momentum();
    let op = rarita_schwinger_operator(&Poly::constant(lambda.clone()), &p, &g)?;
    let cons = rarita_schwinger_consequences(&p, &g);
    let list = sample_momenta(seed, samples);
    let samples = par_samples(&list, |(pt, on)| compare_at(&op, &cons, pt, *on))?;
    let rest = [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()];
    let ns = nullspace(&op.eval(&momentum_point(&rest))?);
    let s = rarita_schwinger_spin();
    let s2 = s.iter().fold(SMatrix::zeros(20, 20), |acc, x| acc.add(&x.mul(x)));
    let rest_spin_three_halves = ns.vectors().iter().all(|v| {
        let col = SMatrix::column_vector(v.clone());
        s2.mul(&col) == col.scale(&Scalar::ratio(15, 4))
    });
    let spin = rs_projector_constraint(&-Scalar::i());
    let sigma = nullspace(&rs_sigma_constraint());
    let proj = nullspace(&spin);
    Ok(RaritaSchwingerReport {
        samples,
        rest_dim: ns.dim(),
        rest_spin_three_halves,
        sigma_lift_identity: rs_sigma_lift() == spin,
        sigma_equivalent: sigma.is_subspace_of(&proj) && proj.is_subspace_of(&sigma),
        printed_coefficient_dim: nullspace(&rs_projector_constraint(&(Scalar::ratio(-1, 2) * Scalar::i()))).dim(),
    })
}

fn par_samples<T: Sync, F>(items: &[T], f: F) -> Result<Vec<MomentumSample>>
where
    F: Fn(&T) -> Result<MomentumSample> + Sync + Send,
{
    crate::par::map(items, f).into_iter().collect()
}

/// One equation compared after extracting its lowest power of `eps`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionLine {
    pub name: String,
    pub lowest_power: i32,
    pub extracted: Poly,
    pub expected: Poly,
    pub identical: bool,
    /// Equal up to a nonzero constant factor.
    pub equivalent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionReport {
    pub lines: Vec<ContractionLine>,
}

impl ContractionReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.equivalent)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass(),
            "equations": self.lines.iter().map(|l| json!({
                "name": l.name,
                "lowest_power": l.lowest_power,
                "extracted": l.extracted.to_string(),
                "expected": l.expected.to_string(),
                "identical": l.identical,
                "equivalent": l.equivalent,
            })).collect::<Vec<_>>(),
        })
    }
}

fn proportional(a: &Poly, b: &Poly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (m, c) = a.terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let r = b.coeff(&m);
    if r.is_zero() {
        return false;
    }
    a.scale(&r) == b.scale(&c)
}

fn lowest(p: &Poly, eps: crate::poly::Sym) -> (i32, Poly) {
    let parts = p.collect_in(eps);
    match parts.into_iter().next() {
        Some((k, c)) => (k, c),
        None => (0, Poly::zero()),
    }
}

/// Contraction of the four-vector/tensor first-order system to the Galilean
/// spin-one system: fields `R = R̃`, `N = ε²Ñ`, `W = εW̃`, `B = εB̃`; momenta
/// `pᵃ = ε⁻¹ p̃ᵃ`, `p⁰ − κ = p̃⁰`, `p⁰ + κ = 2 m ε⁻²`.
pub fn dkp_contraction() -> ContractionReport {
    let eps = Poly::sym("eps");
    let eps_s = sym("eps");
    let ei = Poly::var_pow(eps_s, -1);
    let v = |n: &str, a: usize| Poly::sym(&format!("{n}{}", a + 1));
    let pt = |a: usize| Poly::sym(&format!("pt{}", a + 1));
    let (pt0, m) = (Poly::sym("pt0"), Poly::sym("m"));
    let two = Scalar::int(2);
    let half = Scalar::ratio(1, 2);
    let m2 = &m.scale(&two) * &(&ei * &ei);
    let p0 = (&pt0 + &m2).scale(&half);
    let kappa = (&m2 - &pt0).scale(&half);
    let p = |a: usize| &ei * &pt(a);
    let r = |a: usize| v("R", a);
    let n = |a: usize| &(&eps * &eps) * &v("N", a);
    let w = |a: usize| &eps * &v("W", a);
    let b = &eps * &Poly::sym("B");
    // Spatial indices lowered with signature (+,−,−,−).
    let cross = |x: &dyn Fn(usize) -> Poly, y: &dyn Fn(usize) -> Poly, a: usize| {
        let mut acc = Poly::zero();
        for bb in 0..3 {
            for c in 0..3 {
                let e = levi_civita(a, bb, c);
                if e != 0 {
                    acc = &acc + &(&x(bb) * &y(c)).scale(&Scalar::int(e));
                }
            }
        }
        acc
    };
    let dot_lower = |x: &dyn Fn(usize) -> Poly, y: &dyn Fn(usize) -> Poly| {
        -&(0..3).fold(Poly::zero(), |acc, a| &acc + &(&x(a) * &y(a)))
    };
    let ptt = |a: usize| pt(a);
    let wt = |a: usize| v("W", a);
    let rt = |a: usize| v("R", a);
    let nt = |a: usize| v("N", a);
    let bt = Poly::sym("B");
    let mut lines = Vec::new();
    let mut push = |name: String, full: Poly, expected: Poly| {
        let (k, ex) = lowest(&full, eps_s);
        lines.push(ContractionLine {
            name,
            lowest_power: k,
            identical: ex == expected,
            equivalent: proportional(&ex, &expected),
            extracted: ex,
            expected,
        });
    };
    for a in 0..3 {
        let first = &(&(&(&p0 - &kappa).scale(&two) * &r(a)) + &(&p(a) * &b)) + &cross(&p, &w, a);
        let exp1 = &(&(&pt0.scale(&two) * &rt(a)) + &(&ptt(a) * &bt)) + &cross(&ptt, &wt, a);
        push(format!("energy_{}", a + 1), first, exp1);
    }
    for a in 0..3 {
        let nr = |c: usize| &r(c) + &n(c).scale(&half);
        let third = &cross(&p, &nr, a) - &(&kappa * &w(a));
        let exp2 = &cross(&ptt, &rt, a) - &(&m * &wt(a));
        push(format!("curl_{}", a + 1), third, exp2);
    }
    let fourth = &(&dot_lower(&p, &n).scale(&half) - &dot_lower(&p, &r)) - &(&kappa * &b);
    let exp3 = &dot_lower(&ptt, &rt) + &(&m * &bt);
    push("divergence".into(), fourth, exp3);
    for a in 0..3 {
        let second = &(&(&(&p0 + &kappa) * &n(a)) - &cross(&p, &w, a)) + &(&p(a) * &b);
        let exp4 = &(&(&m.scale(&two) * &nt(a)) - &cross(&ptt, &wt, a)) + &(&ptt(a) * &bt);
        push(format!("auxiliary_{}", a + 1), second, exp4);
    }
    ContractionReport { lines }
}

/// Parameter lookup with a symbolic default.
fn param(params: &BTreeMap<String, Poly>, name: &str, default: Poly) -> Poly {
    params.get(name).cloned().unwrap_or(default)
}

// built once per lookup, so the variant size gap is harmless
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum Canonical {
    Beta(BetaSystem),
    Gammas { gammas: [SMatrix; 5], metric: SMatrix },
    Operator { name: String, matrix: PMatrix, params: Vec<String> },
}

impl Canonical {
    pub fn to_json(&self) -> Value {
        match self {
            Canonical::Beta(bs) => bs.to_json(),
            Canonical::Gammas { gammas, metric } => json!({
                "name": "gamma_hat",
                "gammas": gammas.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
                "metric": metric.to_json(),
            }),
            Canonical::Operator { name, matrix, params } => json!({
                "name": name, "params": params, "operator": matrix.to_json(),
            }),
        }
    }
}

pub fn canonical(name: &str, params: &BTreeMap<String, Poly>) -> Result<Canonical> {
    let lam = param(params, "lambda", Poly::sym("lambda"));
    Ok(match name {
        "levy_leblond" => Canonical::Beta(levy_leblond(
            &param(params, "kappa", Poly::sym("kappa")),
            &param(params, "omega", Poly::sym("omega")),
        )?),
        "D110" => Canonical::Beta(d110()?),
        "D210" => Canonical::Beta(d210()?),
        "D221" => Canonical::Beta(d221()?),
        "D311" => Canonical::Beta(d311(&param(params, "nu", Poly::sym("nu")))?),
        "dkp_spin0" => Canonical::Beta(dkp_spin0()?),
        "gamma_hat" => Canonical::Gammas { gammas: gamma_hat(), metric: galilean_metric() },
        "proca" => Canonical::Operator {
            name: name.into(),
            matrix: proca_operator(&lam, &five_momentum())?,
            params: symbol_names(&[&lam]),
        },
        "rarita_schwinger" => Canonical::Operator {
            name: name.into(),
            matrix: rarita_schwinger_operator(&lam, &five_momentum(), &gamma_hat())?,
            params: symbol_names(&[&lam]),
        },
        _ => return Err(Error::UnknownSystem(name.to_string())),
    })
}

/// Nullspace of a polynomial matrix at a numeric point.
pub fn nullspace_at(m: &PMatrix, point: &std::collections::HashMap<crate::poly::Sym, Scalar>) -> Result<SubspaceBasis> {
    Ok(nullspace(&m.eval(point)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_is_involution() {
        let g = galilean_metric();
        assert_eq!(g.mul(&g), SMatrix::identity(5));
    }

    #[test]
    fn gamma_squares() {
        let g = gamma_hat();
        assert_eq!(g[1].mul(&g[1]), SMatrix::identity(4).scale(&Scalar::int(-1)));
        assert_eq!(g[0].mul(&g[4]).add(&g[4].mul(&g[0])), SMatrix::identity(4).scale(&Scalar::int(2)));
    }
}
