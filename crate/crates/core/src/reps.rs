//! Spinor and vector-scalar representations of the homogeneous Galilei algebra.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::nilpotency_index as matrix_nilpotency;
use crate::matrix::{Matrix, PMatrix, SMatrix};
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RepLabel {
    Spinor(u8),
    Vector { n: usize, m: usize, l: usize },
}

pub const TABLE_LABELS: [(usize, usize, usize); 10] =
    [(0, 1, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 2, 1), (2, 0, 0), (2, 1, 0), (2, 1, 1), (2, 2, 1), (3, 1, 1)];

impl RepLabel {
    pub fn vector(n: usize, m: usize, l: usize) -> Self {
        RepLabel::Vector { n, m, l }
    }

    pub fn all_base() -> Vec<RepLabel> {
        let mut v: Vec<RepLabel> = TABLE_LABELS.iter().map(|&(n, m, l)| RepLabel::vector(n, m, l)).collect();
        v.push(RepLabel::Spinor(1));
        v.push(RepLabel::Spinor(2));
        v
    }

    pub fn dim(&self) -> usize {
        match *self {
            RepLabel::Spinor(1) => 2,
            RepLabel::Spinor(_) => 4,
            RepLabel::Vector { n, m, .. } => 3 * n + m,
        }
    }

    pub fn nm(&self) -> Option<(usize, usize)> {
        match *self {
            RepLabel::Vector { n, m, .. } => Some((n, m)),
            RepLabel::Spinor(_) => None,
        }
    }

    fn validate(self) -> Result<Self> {
        let ok = match self {
            RepLabel::Spinor(v) => v == 1 || v == 2,
            RepLabel::Vector { n, m, l } => TABLE_LABELS.contains(&(n, m, l)),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::UnknownLabel(self.to_string()))
        }
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepLabel::Spinor(v) => write!(f, "S{v}"),
            RepLabel::Vector { n, m, l } => write!(f, "D({n},{m},{l})"),
        }
    }
}

impl FromStr for RepLabel {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::UnknownLabel(text.to_string());
        let label = if let Some(v) = t.strip_prefix('S') {
            RepLabel::Spinor(v.parse().map_err(|_| bad())?)
        } else {
            let inner = t.strip_prefix("D(").and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
            let parts: Vec<usize> = inner.split(',').map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?;
            match parts[..] {
                [n, m, l] => RepLabel::vector(n, m, l),
                _ => return Err(bad()),
            }
        };
        label.validate()
    }
}

/// Parses `"D(2,1,0)+D(0,1,0)"`.
pub fn parse_label_sum(text: &str) -> Result<Vec<RepLabel>> {
    text.split('+').map(str::parse).collect()
}

pub fn format_label_sum(labels: &[RepLabel]) -> String {
    labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("+")
}

/// Spin-one matrices with `(s_a)_bc = -i ε_abc`.
pub fn spin_one() -> [SMatrix; 3] {
    [0, 1, 2].map(|a| SMatrix::from_fn(3, 3, |b, c| Scalar::imag(-levi_civita(a, b, c))))
}

pub fn levi_civita(a: usize, b: usize, c: usize) -> i64 {
    if a == b || b == c || a == c {
        0
    } else if (a, b, c) == (0, 1, 2) || (a, b, c) == (1, 2, 0) || (a, b, c) == (2, 0, 1) {
        1
    } else {
        -1
    }
}

/// Row vectors `k_a = i e_a`.
pub fn k_rows() -> [SMatrix; 3] {
    [0, 1, 2].map(|a| SMatrix::from_fn(1, 3, |_, c| if c == a { Scalar::i() } else { Scalar::zero() }))
}

pub fn pauli() -> [SMatrix; 3] {
    let (o, z, i) = (Scalar::one(), Scalar::zero(), Scalar::i());
    [
        Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]]),
        Matrix::from_rows(vec![vec![z.clone(), -&i], vec![i.clone(), z.clone()]]),
        Matrix::from_rows(vec![vec![o.clone(), z.clone()], vec![z, -o]]),
    ]
}

/// Matrices `A (n×n)`, `B (n×m)`, `C (m×n)` with `AB = 0`, `CA = 0`, `A² + BC = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct Triple {
    pub a: SMatrix,
    pub b: SMatrix,
    pub c: SMatrix,
}

impl Triple {
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.c.rows()
    }

    pub fn check(&self) -> bool {
        let (n, m) = (self.n(), self.m());
        self.a.mul(&self.b).is_zero()
            && self.c.mul(&self.a).is_zero()
            && self.a.mul(&self.a).add(&self.b.mul(&self.c)) == SMatrix::zeros(n, n)
            && self.b.shape() == (n, m)
    }

    pub fn direct_sum(parts: &[Triple]) -> Triple {
        Triple {
            a: Matrix::block_diag(&parts.iter().map(|t| t.a.clone()).collect::<Vec<_>>()),
            b: Matrix::block_diag(&parts.iter().map(|t| t.b.clone()).collect::<Vec<_>>()),
            c: Matrix::block_diag(&parts.iter().map(|t| t.c.clone()).collect::<Vec<_>>()),
        }
    }
}

/// Table entries. Two rows deviate from the printed table: the `(2,1,1)` column
/// `B` is `(0,1)ᵀ`, and `(3,1,1)` carries the opposite sign on `B` and `C`.
pub fn table_triple(n: usize, m: usize, l: usize) -> Result<Triple> {
    let z = |r, c| SMatrix::zeros(r, c);
    let ints = SMatrix::from_ints;
    let t = match (n, m, l) {
        (0, 1, 0) => Triple { a: z(0, 0), b: z(0, 1), c: z(1, 0) },
        (1, 0, 0) => Triple { a: z(1, 1), b: z(1, 0), c: z(0, 1) },
        (1, 1, 0) => Triple { a: z(1, 1), b: z(1, 1), c: ints(&[&[1]]) },
        (1, 1, 1) => Triple { a: z(1, 1), b: ints(&[&[1]]), c: z(1, 1) },
        (1, 2, 1) => Triple { a: z(1, 1), b: ints(&[&[1, 0]]), c: ints(&[&[0], &[1]]) },
        (2, 0, 0) => Triple { a: ints(&[&[0, 0], &[1, 0]]), b: z(2, 0), c: z(0, 2) },
        (2, 1, 0) => Triple { a: ints(&[&[0, 0], &[1, 0]]), b: z(2, 1), c: ints(&[&[1, 0]]) },
        (2, 1, 1) => Triple { a: ints(&[&[0, 0], &[1, 0]]), b: ints(&[&[0], &[1]]), c: z(1, 2) },
        (2, 2, 1) => {
            Triple { a: ints(&[&[0, 0], &[1, 0]]), b: ints(&[&[0, 0], &[1, 0]]), c: ints(&[&[0, 0], &[1, 0]]) }
        }
        (3, 1, 1) => Triple {
            a: ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]),
            b: ints(&[&[0], &[0], &[1]]),
            c: ints(&[&[-1, 0, 0]]),
        },
        _ => return Err(Error::UnknownLabel(format!("D({n},{m},{l})"))),
    };
    Ok(t)
}

#[derive(Clone, PartialEq, Debug)]
pub struct Representation {
    pub labels: Vec<RepLabel>,
    pub s: [SMatrix; 3],
    pub eta: [SMatrix; 3],
    /// Combined `(A, B, C)` when every summand is vector/scalar type.
    pub triple: Option<Triple>,
}

fn from_triple(labels: Vec<RepLabel>, t: Triple) -> Representation {
    let (n, m) = (t.n(), t.m());
    let s1 = spin_one();
    let k = k_rows();
    let dim = 3 * n + m;
    let s = [0, 1, 2].map(|a| Matrix::block_diag(&[SMatrix::identity(n).kron(&s1[a]), SMatrix::zeros(m, m)]));
    let eta = [0, 1, 2].map(|a| {
        let mut e = SMatrix::zeros(dim, dim);
        e.put(0, 0, &t.a.kron(&s1[a]));
        e.put(0, 3 * n, &t.b.kron(&k[a].adjoint()));
        e.put(3 * n, 0, &t.c.kron(&k[a]));
        e
    });
    Representation { labels, s, eta, triple: Some(t) }
}

fn spinor(variant: u8) -> Representation {
    let sig = pauli();
    let half = Scalar::ratio(1, 2);
    let z2 = SMatrix::zeros(2, 2);
    let (s, eta) = if variant == 1 {
        (sig.clone().map(|x| x.scale(&half)), [z2.clone(), z2.clone(), z2])
    } else {
        let ih = &Scalar::i() * &half;
        let s = sig.clone().map(|x| Matrix::block_diag(&[x.clone(), x]).scale(&half));
        let eta = sig.map(|x| {
            let mut e = SMatrix::zeros(4, 4);
            e.put(2, 0, &x.scale(&ih));
            e
        });
        (s, eta)
    };
    Representation { labels: vec![RepLabel::Spinor(variant)], s, eta, triple: None }
}

pub fn build(label: RepLabel) -> Result<Representation> {
    match label.validate()? {
        RepLabel::Spinor(v) => Ok(spinor(v)),
        RepLabel::Vector { n, m, l } => Ok(from_triple(vec![label], table_triple(n, m, l)?)),
    }
}

/// Representation with an arbitrary `(A, B, C)`; labels are left empty.
pub fn build_from_triple(t: Triple) -> Representation {
    from_triple(Vec::new(), t)
}

pub fn build_sum(labels: &[RepLabel]) -> Result<Representation> {
    let reps = labels.iter().map(|l| build(*l)).collect::<Result<Vec<_>>>()?;
    direct_sum(&reps)
}

/// Vector summands are merged into one triple (vectors first, then scalars);
/// spinor summands are appended block-diagonally.
pub fn direct_sum(reps: &[Representation]) -> Result<Representation> {
    if reps.is_empty() {
        return Err(Error::Invalid("direct sum of an empty list".into()));
    }
    if reps.len() == 1 {
        return Ok(reps[0].clone());
    }
    let labels: Vec<RepLabel> = reps.iter().flat_map(|r| r.labels.clone()).collect();
    let vector: Vec<&Representation> = reps.iter().filter(|r| r.triple.is_some()).collect();
    let others: Vec<&Representation> = reps.iter().filter(|r| r.triple.is_none()).collect();
    let mut parts: Vec<Representation> = Vec::new();
    if !vector.is_empty() {
        let t = Triple::direct_sum(&vector.iter().map(|r| r.triple.clone().unwrap()).collect::<Vec<_>>());
        parts.push(from_triple(Vec::new(), t));
    }
    parts.extend(others.into_iter().cloned());
    let s = [0, 1, 2].map(|a| Matrix::block_diag(&parts.iter().map(|r| r.s[a].clone()).collect::<Vec<_>>()));
    let eta = [0, 1, 2].map(|a| Matrix::block_diag(&parts.iter().map(|r| r.eta[a].clone()).collect::<Vec<_>>()));
    let triple = if parts.len() == 1 { parts[0].triple.clone() } else { None };
    Ok(Representation { labels, s, eta, triple })
}

/// One failed commutation relation.
#[derive(Clone, PartialEq, Debug)]
pub struct Violation {
    pub relation: &'static str,
    pub a: usize,
    pub b: usize,
    pub entry: (usize, usize),
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct HgReport {
    pub violations: Vec<Violation>,
}

impl HgReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass(),
            "violations": self.violations.iter().map(|v| json!({
                "relation": v.relation, "a": v.a + 1, "b": v.b + 1, "entry": [v.entry.0, v.entry.1],
            })).collect::<Vec<_>>(),
        })
    }
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.s[0].rows()
    }

    pub fn label_text(&self) -> String {
        format_label_sum(&self.labels)
    }

    /// `η · v` for a polynomial three-vector.
    pub fn eta_dot(&self, v: &[Poly; 3]) -> PMatrix {
        let mut out = PMatrix::zeros(self.dim(), self.dim());
        for a in 0..3 {
            out = out.add(&self.eta[a].to_poly().rmul(&v[a]));
        }
        out
    }

    /// `S² = Σ S_a S_a`.
    pub fn spin_squared(&self) -> SMatrix {
        (0..3).fold(SMatrix::zeros(self.dim(), self.dim()), |acc, a| acc.add(&self.s[a].mul(&self.s[a])))
    }
}

/// Checks `[S_a,S_b] = iε_abc S_c`, `[η_a,S_b] = iε_abc η_c`, `[η_a,η_b] = 0`.
pub fn verify_hg(rep: &Representation) -> HgReport {
    let d = rep.dim();
    let mut report = HgReport::default();
    let rhs = |mats: &[SMatrix; 3], a: usize, b: usize| -> SMatrix {
        (0..3).fold(SMatrix::zeros(d, d), |acc, c| acc.add(&mats[c].scale(&Scalar::imag(levi_civita(a, b, c)))))
    };
    for a in 0..3 {
        for b in 0..3 {
            let checks: [(&'static str, SMatrix, SMatrix); 3] = [
                ("[S_a,S_b]", rep.s[a].commutator(&rep.s[b]), rhs(&rep.s, a, b)),
                ("[eta_a,S_b]", rep.eta[a].commutator(&rep.s[b]), rhs(&rep.eta, a, b)),
                ("[eta_a,eta_b]", rep.eta[a].commutator(&rep.eta[b]), SMatrix::zeros(d, d)),
            ];
            for (relation, lhs, rhs) in checks {
                if let Some(entry) = lhs.first_difference(&rhs) {
                    report.violations.push(Violation { relation, a, b, entry });
                }
            }
        }
    }
    report
}

/// Smallest `k` with `(η·v)^k = 0` for symbolic `v`.
pub fn nilpotency_index(rep: &Representation) -> Option<usize> {
    let v = [Poly::sym("v1"), Poly::sym("v2"), Poly::sym("v3")];
    matrix_nilpotency(&rep.eta_dot(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_text_round_trip() {
        for t in ["D(3,1,1)", "S2", "D(0,1,0)"] {
            assert_eq!(t.parse::<RepLabel>().unwrap().to_string(), t);
        }
        assert!("D(4,1,1)".parse::<RepLabel>().is_err());
        assert_eq!(parse_label_sum("D(2,1,0)+D(0,1,0)").unwrap().len(), 2);
    }

    #[test]
    fn spin_one_algebra() {
        let rep = build(RepLabel::vector(1, 0, 0)).unwrap();
        assert!(verify_hg(&rep).pass());
    }
}
