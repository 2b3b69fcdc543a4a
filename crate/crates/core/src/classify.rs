//! Exhaustive search for indecomposable `(A, B, C)` triples over a small entry set.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::par;
use crate::reps::{table_triple, Triple, TABLE_LABELS};
use crate::scalar::Scalar;

type Q = Ratio<i128>;
type IMat = Vec<Vec<i64>>;

/// Rank invariants `(n, m, rk A, rk A², rk B, rk C, rk [A|B], rk [A;C])`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Signature {
    pub n: usize,
    pub m: usize,
    pub rank_a: usize,
    pub rank_a2: usize,
    pub rank_b: usize,
    pub rank_c: usize,
    pub rank_ab: usize,
    pub rank_ac: usize,
}

impl Signature {
    pub fn as_array(&self) -> [usize; 8] {
        [self.n, self.m, self.rank_a, self.rank_a2, self.rank_b, self.rank_c, self.rank_ab, self.rank_ac]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n, "m": self.m, "rank_a": self.rank_a, "rank_a2": self.rank_a2, "rank_b": self.rank_b,
            "rank_c": self.rank_c, "rank_ab": self.rank_ab, "rank_ac": self.rank_ac,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Class {
    pub signature: Signature,
    /// First indecomposable triple found (row-major integer entries).
    pub example: (IMat, IMat, IMat),
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub classes: Vec<Class>,
    pub solutions: u64,
    pub indecomposable_tests: u64,
}

impl ClassifyReport {
    pub fn signatures(&self) -> BTreeSet<Signature> {
        self.classes.iter().map(|c| c.signature).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "classes": self.classes.iter().map(|c| json!({
                "signature": c.signature.to_json(),
                "example": {"A": c.example.0, "B": c.example.1, "C": c.example.2},
            })).collect::<Vec<_>>(),
            "solutions": self.solutions,
            "indecomposable_tests": self.indecomposable_tests,
        })
    }
}

fn zeros(r: usize, c: usize) -> IMat {
    vec![vec![0; c]; r]
}

fn mul(a: &IMat, b: &IMat, inner: usize, rows: usize, cols: usize) -> IMat {
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn is_zero(a: &IMat) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect()
}

/// Reduced echelon form in place; returns pivot columns.
fn rref_q(a: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !a[k][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for k in 0..rows {
            if k != r && !a[k][c].is_zero() {
                let f = a[k][c];
                for j in 0..cols {
                    let t = f * a[r][j];
                    a[k][j] -= t;
                }
            }
        }
        piv.push(c);
        r += 1;
    }
    piv
}

fn rank_i(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    rref_q(&mut to_q(rows)).len()
}

fn nullspace_q(mut a: Vec<Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    let piv = rref_q(&mut a);
    (0..cols)
        .filter(|c| !piv.contains(c))
        .map(|f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (k, &p) in piv.iter().enumerate() {
                v[p] = -a[k][f];
            }
            v
        })
        .collect()
}

fn hcat(a: &IMat, b: &IMat) -> IMat {
    a.iter().zip(b).map(|(x, y)| x.iter().chain(y).copied().collect()).collect()
}

pub fn signature_of(a: &IMat, b: &IMat, c: &IMat, n: usize, m: usize) -> Signature {
    let a2 = mul(a, a, n, n, n);
    let mut ac = a.clone();
    ac.extend(c.iter().cloned());
    Signature {
        n,
        m,
        rank_a: rank_i(a),
        rank_a2: rank_i(&a2),
        rank_b: rank_i(b),
        rank_c: rank_i(c),
        rank_ab: if n == 0 { 0 } else { rank_i(&hcat(a, b)) },
        rank_ac: rank_i(&ac),
    }
}

/// `End = {(P,Q) : PA = AP, PB = BQ, QC = CP}`; the module is indecomposable
/// iff `End` is local, i.e. its trace form `3 tr(PP') + tr(QQ')` has rank 1.
pub fn is_indecomposable(a: &IMat, b: &IMat, c: &IMat, n: usize, m: usize) -> bool {
    let unknowns = n * n + m * m;
    let p = |i: usize, j: usize| i * n + j;
    let q = |i: usize, j: usize| n * n + i * m + j;
    let mut eqs: Vec<Vec<Q>> = Vec::new();
    // (PA - AP)_ij
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![Q::zero(); unknowns];
            for k in 0..n {
                row[p(i, k)] += Q::from_integer(a[k][j] as i128);
                row[p(k, j)] -= Q::from_integer(a[i][k] as i128);
            }
            eqs.push(row);
        }
    }
    // (PB - BQ)_ij
    for i in 0..n {
        for j in 0..m {
            let mut row = vec![Q::zero(); unknowns];
            for k in 0..n {
                row[p(i, k)] += Q::from_integer(b[k][j] as i128);
            }
            for k in 0..m {
                row[q(k, j)] -= Q::from_integer(b[i][k] as i128);
            }
            eqs.push(row);
        }
    }
    // (QC - CP)_ij
    for i in 0..m {
        for j in 0..n {
            let mut row = vec![Q::zero(); unknowns];
            for k in 0..m {
                row[q(i, k)] += Q::from_integer(c[k][j] as i128);
            }
            for k in 0..n {
                row[p(k, j)] -= Q::from_integer(c[i][k] as i128);
            }
            eqs.push(row);
        }
    }
    let basis = if eqs.is_empty() {
        (0..unknowns).map(|k| (0..unknowns).map(|j| if j == k { Q::one() } else { Q::zero() }).collect()).collect()
    } else {
        nullspace_q(eqs, unknowns)
    };
    let d = basis.len();
    let trace = |x: &[Q], y: &[Q]| -> Q {
        let mut t = Q::zero();
        for i in 0..n {
            for k in 0..n {
                t += Q::from_integer(3) * x[p(i, k)] * y[p(k, i)];
            }
        }
        for i in 0..m {
            for k in 0..m {
                t += x[q(i, k)] * y[q(k, i)];
            }
        }
        t
    };
    let mut gram: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| trace(&basis[i], &basis[j])).collect()).collect();
    rref_q(&mut gram).len() == 1
}

fn enumerate(entries: &[i64], rows: usize, cols: usize) -> Vec<IMat> {
    let count = entries.len().pow((rows * cols) as u32);
    (0..count)
        .map(|mut code| {
            let mut m = zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m[r][c] = entries[code % entries.len()];
                    code /= entries.len();
                }
            }
            m
        })
        .collect()
}

struct Partial {
    classes: BTreeMap<Signature, (IMat, IMat, IMat)>,
    solutions: u64,
    tests: u64,
}

fn search_nm(entries: &[i64], n: usize, m: usize) -> Partial {
    let all_a = enumerate(entries, n, n);
    let all_b = enumerate(entries, n, m);
    let all_c = enumerate(entries, m, n);
    let parts = par::map(&all_a, |a| {
        let mut out = Partial { classes: BTreeMap::new(), solutions: 0, tests: 0 };
        let a2 = mul(a, a, n, n, n);
        if !is_zero(&mul(a, &a2, n, n, n)) || rank_i(&a2) > m.min(n) {
            return out;
        }
        let bs: Vec<&IMat> = all_b.iter().filter(|b| is_zero(&mul(a, b, n, n, m))).collect();
        let cs: Vec<&IMat> = all_c.iter().filter(|c| is_zero(&mul(c, a, n, m, n))).collect();
        for b in &bs {
            for c in &cs {
                let bc = mul(b, c, m, n, n);
                if (0..n).any(|i| (0..n).any(|j| a2[i][j] + bc[i][j] != 0)) {
                    continue;
                }
                out.solutions += 1;
                let sig = signature_of(a, b, c, n, m);
                if out.classes.contains_key(&sig) {
                    continue;
                }
                out.tests += 1;
                if is_indecomposable(a, b, c, n, m) {
                    out.classes.insert(sig, (a.clone(), (*b).clone(), (*c).clone()));
                }
            }
        }
        out
    });
    let mut merged = Partial { classes: BTreeMap::new(), solutions: 0, tests: 0 };
    for p in parts {
        merged.solutions += p.solutions;
        merged.tests += p.tests;
        for (sig, ex) in p.classes {
            merged.classes.entry(sig).or_insert(ex);
        }
    }
    merged
}

/// Searches every `n ≤ n_max`, `m ≤ m_max` (not both zero).
///
/// `limit` caps the raw enumeration size `|E|^(n²) · (|E|^(nm) + |E|^(mn))`
/// summed over the box.
pub fn classify_bruteforce(n_max: usize, m_max: usize, entry_set: &[Scalar], limit: u128) -> Result<ClassifyReport> {
    let entries: Vec<i64> = entry_set
        .iter()
        .map(|s| {
            s.as_integer()
                .and_then(|v| v.to_i64())
                .filter(|v| v.abs() <= 1 << 20)
                .ok_or_else(|| Error::Invalid(format!("entry {s} is not a small integer")))
        })
        .collect::<Result<_>>()?;
    let k = entries.len() as u128;
    let mut total: u128 = 0;
    for n in 0..=n_max {
        for m in 0..=m_max {
            let cost = k
                .checked_pow((n * n) as u32)
                .and_then(|x| x.checked_mul(2 * k.checked_pow((n * m) as u32)?))
                .unwrap_or(u128::MAX);
            total = total.saturating_add(cost);
        }
    }
    if total > limit {
        return Err(Error::Limit(format!(
            "enumeration size {total} exceeds limit {limit} for n ≤ {n_max}, m ≤ {m_max}"
        )));
    }
    let mut classes = BTreeMap::new();
    let (mut solutions, mut tests) = (0, 0);
    for n in 0..=n_max {
        for m in 0..=m_max {
            if n == 0 && m == 0 {
                continue;
            }
            let p = search_nm(&entries, n, m);
            solutions += p.solutions;
            tests += p.tests;
            classes.extend(p.classes);
        }
    }
    Ok(ClassifyReport {
        classes: classes.into_iter().map(|(signature, example)| Class { signature, example }).collect(),
        solutions,
        indecomposable_tests: tests,
    })
}

fn to_imat(m: &crate::matrix::SMatrix) -> IMat {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.as_integer().and_then(|v| v.to_i64()).expect("integer entry")).collect())
        .collect()
}

/// Signature of a triple with integer entries.
pub fn triple_signature(t: &Triple) -> Signature {
    signature_of(&to_imat(&t.a), &to_imat(&t.b), &to_imat(&t.c), t.n(), t.m())
}

pub fn triple_is_indecomposable(t: &Triple) -> bool {
    is_indecomposable(&to_imat(&t.a), &to_imat(&t.b), &to_imat(&t.c), t.n(), t.m())
}

/// Signatures of the ten table representations.
pub fn table_signatures() -> BTreeSet<Signature> {
    TABLE_LABELS.iter().map(|&(n, m, l)| triple_signature(&table_triple(n, m, l).expect("table label"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposable_example_rejected() {
        // n = 2, m = 1, A = 0, B = (1,1)ᵀ, C = 0 splits off a D(1,0,0)
        let a = zeros(2, 2);
        let b = vec![vec![1], vec![1]];
        let c = zeros(1, 2);
        assert!(!is_indecomposable(&a, &b, &c, 2, 1));
    }

    #[test]
    fn table_triples_are_indecomposable() {
        for &(n, m, l) in &TABLE_LABELS {
            assert!(triple_is_indecomposable(&table_triple(n, m, l).unwrap()), "D({n},{m},{l})");
        }
    }

    #[test]
    fn table_signatures_are_distinct() {
        assert_eq!(table_signatures().len(), 10);
    }
}
