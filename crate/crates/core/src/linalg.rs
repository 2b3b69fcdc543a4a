//! Exact rank, echelon forms, nullspaces and nilpotent exponentials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SMatrix};
use crate::poly::inv_factorial;
use crate::ring::Ring;
use crate::scalar::Scalar;

fn lcm_denominators(row: &[Scalar]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.re.denom()).lcm(x.im.denom()))
}

/// Rank by fraction-free (Bareiss) elimination over the Gaussian integers.
///
/// Rows are first scaled to Gaussian-integer entries; every division in the
/// elimination is then exact in Z[i], so no denominators appear.
pub fn rank(m: &SMatrix) -> usize {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut a: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| {
            let row = m.row(r);
            let l = Scalar::from_rational(BigRational::from_integer(lcm_denominators(&row)));
            row.iter().map(|x| x * &l).collect()
        })
        .collect();
    let mut prev = Scalar::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let prev_inv = prev.inv().expect("nonzero Bareiss pivot");
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &(&a[rank][c] * &a[r][k]) - &(&a[r][c] * &a[rank][k]);
                a[r][k] = &v * &prev_inv;
            }
            a[r][c] = Scalar::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &SMatrix) -> (SMatrix, Vec<usize>) {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|r| m.row(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        for k in c..cols {
            a[r][k] = &a[r][k] * &inv;
        }
        for k in 0..rows {
            if k != r && !a[k][c].is_zero() {
                let f = a[k][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[k][j] = &a[k][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (Matrix::from_rows(a).with_shape(rows, cols), pivots)
}

impl SMatrix {
    fn with_shape(self, rows: usize, cols: usize) -> Self {
        if rows == 0 {
            Matrix::zeros(0, cols)
        } else {
            self
        }
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn inverse(&self) -> Option<SMatrix> {
        let n = self.rows();
        if !self.is_square() {
            return None;
        }
        let aug = Matrix::hstack(&[self.clone(), Matrix::identity(n)]);
        let (r, piv) = rref(&aug);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }
}

/// A subspace of `Q(i)^n` stored as the nonzero rows of a reduced echelon form.
#[derive(Clone, PartialEq, Debug)]
pub struct SubspaceBasis {
    pub ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis { ambient, basis: Vec::new() }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return SubspaceBasis::zero(ambient);
        }
        let m = Matrix::from_rows(vectors.to_vec());
        assert_eq!(m.cols(), ambient, "vector length does not match ambient dimension");
        let (r, piv) = rref(&m);
        SubspaceBasis { ambient, basis: (0..piv.len()).map(|k| r.row(k)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Basis vectors as columns of an `ambient x dim` matrix.
    pub fn as_columns(&self) -> SMatrix {
        if self.basis.is_empty() {
            return Matrix::zeros(self.ambient, 0);
        }
        Matrix::from_rows(self.basis.clone()).transpose()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        SubspaceBasis::span(self.ambient, &all).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        SubspaceBasis::span(self.ambient, &all)
    }

    pub fn intersection(&self, other: &SubspaceBasis) -> SubspaceBasis {
        // solve sum a_i u_i = sum b_j w_j
        if self.dim() == 0 || other.dim() == 0 {
            return SubspaceBasis::zero(self.ambient);
        }
        let u = self.as_columns();
        let w = other.as_columns();
        let k = nullspace(&Matrix::hstack(&[u.clone(), w.neg()]));
        let vecs: Vec<Vec<Scalar>> = k
            .vectors()
            .iter()
            .map(|c| {
                let coeffs = Matrix::column_vector(c[..self.dim()].to_vec());
                u.mul(&coeffs).column(0)
            })
            .collect();
        SubspaceBasis::span(self.ambient, &vecs)
    }
}

/// Right nullspace of `m`, exact.
pub fn nullspace(m: &SMatrix) -> SubspaceBasis {
    let cols = m.cols();
    let (r, piv) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    let vecs: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (k, &p) in piv.iter().enumerate() {
                v[p] = -r.get(k, f);
            }
            v
        })
        .collect();
    SubspaceBasis::span(cols, &vecs)
}

/// Solution space of the homogeneous linear system with coefficient matrix `l`.
pub fn solve_linear_map(l: &SMatrix) -> SubspaceBasis {
    nullspace(l)
}

/// Determinant by Laplace expansion along the first row; for small matrices
/// over any commutative ring.
pub fn det_expansion<R: Ring>(m: &Matrix<R>) -> Result<R> {
    if m.rows() != m.cols() {
        return Err(Error::Shape(format!("determinant of a {}x{} matrix", m.rows(), m.cols())));
    }
    fn rec<R: Ring>(m: &Matrix<R>, rows: &[usize], cols: &[usize]) -> R {
        if rows.is_empty() {
            return R::one();
        }
        let mut acc = R::zero();
        for (k, &c) in cols.iter().enumerate() {
            let e = m.get(rows[0], c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e.mul(&rec(m, &rows[1..], &rest));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    let idx: Vec<usize> = (0..m.rows()).collect();
    Ok(rec(m, &idx, &idx))
}

/// Smallest `k` with `n^k = 0`, or `None` if `n^dim != 0`.
pub fn nilpotency_index<R: Ring>(n: &Matrix<R>) -> Option<usize> {
    let dim = n.rows();
    if n.is_zero() {
        return Some(if dim == 0 { 0 } else { 1 });
    }
    let mut p = n.clone();
    for k in 2..=dim.max(1) + 1 {
        p = p.mul(n);
        if p.is_zero() {
            return Some(k);
        }
        if k > dim {
            break;
        }
    }
    None
}

/// `exp(t N)` as the finite series; rejects non-nilpotent `N`.
pub fn nilpotent_exp<R: Ring>(n: &Matrix<R>, t: &R) -> Result<Matrix<R>> {
    let dim = n.rows();
    let tn = n.lmul(t);
    let mut out = Matrix::identity(dim);
    let mut power = Matrix::identity(dim);
    for k in 1..=dim + 1 {
        power = power.mul(&tn);
        if power.is_zero() {
            return Ok(out);
        }
        out = out.add(&power.scale(&inv_factorial(k as u32)));
    }
    if nilpotency_index(n).is_none() {
        return Err(Error::NotNilpotent { dim, power: dim });
    }
    Ok(out)
}

/// `exp(X)` for a matrix whose powers vanish after applying `reduce`
/// (e.g. a truncation in small parameters).
pub fn truncated_exp<R: Ring, F: Fn(&Matrix<R>) -> Matrix<R>>(
    x: &Matrix<R>,
    reduce: F,
    max_terms: usize,
) -> Result<Matrix<R>> {
    let dim = x.rows();
    let mut out = Matrix::identity(dim);
    let mut power = Matrix::identity(dim);
    for k in 1..=max_terms {
        power = reduce(&power.mul(x));
        if power.is_zero() {
            return Ok(out);
        }
        out = reduce(&out.add(&power.scale(&inv_factorial(k as u32))));
    }
    Err(Error::NotNilpotent { dim, power: max_terms })
}

/// Scalar-matrix helper: rank of `[A | B]`.
pub fn rank_hstack(a: &SMatrix, b: &SMatrix) -> usize {
    if a.rows() == 0 {
        return 0;
    }
    rank(&Matrix::hstack(&[a.clone(), b.clone()]))
}

/// Scalar-matrix helper: rank of `[A ; C]`.
pub fn rank_vstack(a: &SMatrix, c: &SMatrix) -> usize {
    if a.cols() == 0 {
        return 0;
    }
    rank(&Matrix::vstack(&[a.clone(), c.clone()]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let m = Matrix::from_rows(vec![vec![Scalar::one(), Scalar::i()], vec![-Scalar::i(), Scalar::one()]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&SMatrix::identity(3)), 3);
        assert_eq!(rank(&SMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn nullspace_of_row() {
        let k1 = Matrix::from_rows(vec![vec![Scalar::i(), Scalar::zero(), Scalar::zero()]]);
        let ns = nullspace(&k1);
        assert_eq!(ns.dim(), 2);
        assert!(ns.contains(&[Scalar::zero(), Scalar::one(), Scalar::zero()]));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = SMatrix::zeros(3, 3);
        assert_eq!(nilpotent_exp(&z, &Scalar::one()).unwrap(), SMatrix::identity(3));
    }

    #[test]
    fn non_nilpotent_rejected() {
        let m = SMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        assert!(nilpotent_exp(&m, &Scalar::one()).is_err());
    }
}
