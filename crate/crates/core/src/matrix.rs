//! Dense matrices over any [`Ring`].

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Poly, Sym};
use crate::ring::Ring;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type SMatrix = Matrix<Scalar>;
pub type PMatrix = Matrix<Poly>;

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = R::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, c: R) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = c.clone();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> R>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.data[r * self.cols + c] = v;
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut R {
        &mut self.data[r * self.cols + c]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<R> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<R> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring, F: Fn(&R) -> Result<S>>(&self, f: F) -> Result<Matrix<S>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<S>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    fn check_same(&self, o: &Self, what: &str) {
        assert_eq!(self.shape(), o.shape(), "shape mismatch in {what}");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_same(o, "add");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_same(o, "sub");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    let cell = out.get_mut(i, j);
                    *cell = cell.add(&t);
                }
            }
        }
        out
    }

    /// Left multiplication of every entry: `c * M`.
    pub fn lmul(&self, c: &R) -> Self {
        self.map(|x| c.mul(x))
    }

    /// Right multiplication of every entry: `M * c`.
    pub fn rmul(&self, c: &R) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|x| x.scale(s))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose (entrywise formal adjoint).
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).adjoint())
    }

    pub fn trace(&self) -> R {
        let mut t = R::zero();
        for k in 0..self.rows.min(self.cols) {
            t = t.add(self.get(k, k));
        }
        t
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |r, c| {
            self.get(r / o.rows, c / o.cols).mul(o.get(r % o.rows, c % o.cols))
        })
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.put(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at (r0, c0).
    pub fn put(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn hstack(parts: &[Self]) -> Self {
        let rows = parts.first().map_or(0, |p| p.rows);
        assert!(parts.iter().all(|p| p.rows == rows), "hstack row mismatch");
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            out.put(0, c0, p);
            c0 += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[Self]) -> Self {
        let cols = parts.first().map_or(0, |p| p.cols);
        assert!(parts.iter().all(|p| p.cols == cols), "vstack column mismatch");
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for p in parts {
            out.put(r0, 0, p);
            r0 += p.rows;
        }
        out
    }

    pub fn column_vector(v: Vec<R>) -> Self {
        let n = v.len();
        Matrix { rows: n, cols: 1, data: v }
    }

    pub fn row_vector(v: Vec<R>) -> Self {
        let n = v.len();
        Matrix { rows: 1, cols: n, data: v }
    }

    /// Row-major flattening.
    pub fn vectorize(&self) -> Vec<R> {
        self.data.clone()
    }

    /// First entry position where the two matrices differ.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize)> {
        if self.shape() != o.shape() {
            return Some((0, 0));
        }
        (0..self.rows * self.cols).find(|&k| self.data[k] != o.data[k]).map(|k| (k / self.cols, k % self.cols))
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Vec<String>> =
            (0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_string()).collect()).collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl SMatrix {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect())
    }

    pub fn to_poly(&self) -> PMatrix {
        self.map(|x| Poly::constant(x.clone()))
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("matrix json: {m}"));
        let rows = v["rows"].as_u64().ok_or_else(|| bad("missing rows"))? as usize;
        let cols = v["cols"].as_u64().ok_or_else(|| bad("missing cols"))? as usize;
        let entries = v["entries"].as_array().ok_or_else(|| bad("missing entries"))?;
        if entries.len() != rows {
            return Err(bad("row count"));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
            if row.len() != cols {
                return Err(bad("column count"));
            }
            for e in row {
                data.push(e.as_str().ok_or_else(|| bad("entry is not a string"))?.parse()?);
            }
        }
        Ok(Matrix { rows, cols, data })
    }
}

impl PMatrix {
    pub fn eval(&self, values: &HashMap<Sym, Scalar>) -> Result<SMatrix> {
        self.try_map(|p| p.eval(values))
    }

    pub fn subs(&self, s: Sym, v: &Poly) -> Result<PMatrix> {
        self.try_map(|p| p.subs(s, v))
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Sym> {
        self.entries().iter().flat_map(|p| p.symbols()).collect()
    }

    /// Coefficient matrix of `s^e`.
    pub fn coeff_of(&self, s: Sym, e: i32) -> PMatrix {
        self.map(|p| p.coeff_of(s, e))
    }

    pub fn deriv(&self, s: Sym) -> PMatrix {
        self.map(|p| p.deriv(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_mixed_product() {
        let a = SMatrix::from_ints(&[&[1, 2], &[0, 1]]);
        let b = SMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let c = SMatrix::from_ints(&[&[2, 0], &[1, 1]]);
        let d = SMatrix::from_ints(&[&[1, 1], &[0, 3]]);
        assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn json_round_trip() {
        let m = Matrix::from_rows(vec![vec![Scalar::i(), Scalar::ratio(1, 2)]]);
        assert_eq!(SMatrix::from_json(&m.to_json()).unwrap(), m);
    }
}
