//! Normal-ordered operators in positions `x_a`, momenta `p0, p_a` and
//! central polynomial coefficients, with `[x_a, p_b] = i δ_ab` and `p0` central.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{sym, Monomial, Poly, Sym};
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Exponents of `x1 x2 x3 p0 p1 p2 p3` in a normal-ordered word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct WKey {
    pub x: [u16; 3],
    pub p0: u16,
    pub p: [u16; 3],
}

impl WKey {
    pub fn is_one(&self) -> bool {
        *self == WKey::default()
    }

    pub fn degree_p(&self) -> u16 {
        self.p.iter().sum()
    }

    pub fn degree_x(&self) -> u16 {
        self.x.iter().sum()
    }
}

pub fn x_sym(a: usize) -> Sym {
    sym(["x1", "x2", "x3"][a])
}

pub fn p_sym(a: usize) -> Sym {
    sym(["p1", "p2", "p3"][a])
}

pub fn p0_sym() -> Sym {
    sym("p0")
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Weyl {
    terms: BTreeMap<WKey, Poly>,
}

fn falling(c: u16, k: u16) -> i64 {
    (0..k).map(|j| (c - j) as i64).product()
}

fn binom(n: u16, k: u16) -> i64 {
    falling(n, k) / falling(k, k)
}

/// `(-i)^k`
fn minus_i_pow(k: u16) -> Scalar {
    match k % 4 {
        0 => Scalar::one(),
        1 => -Scalar::i(),
        2 => Scalar::int(-1),
        _ => Scalar::i(),
    }
}

impl Weyl {
    pub fn zero() -> Self {
        Weyl::default()
    }

    pub fn one() -> Self {
        Weyl::central(Poly::one())
    }

    pub fn central(c: Poly) -> Self {
        Weyl::term(WKey::default(), c)
    }

    pub fn scalar(s: Scalar) -> Self {
        Weyl::central(Poly::constant(s))
    }

    pub fn term(k: WKey, c: Poly) -> Self {
        let mut w = Weyl::zero();
        w.add_term(k, c);
        w
    }

    pub fn x(a: usize) -> Self {
        let mut k = WKey::default();
        k.x[a] = 1;
        Weyl::term(k, Poly::one())
    }

    pub fn p(a: usize) -> Self {
        let mut k = WKey::default();
        k.p[a] = 1;
        Weyl::term(k, Poly::one())
    }

    pub fn p0() -> Self {
        Weyl::term(WKey { p0: 1, ..WKey::default() }, Poly::one())
    }

    pub fn add_term(&mut self, k: WKey, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WKey, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient if this element is central (no x or p factors).
    pub fn as_central(&self) -> Option<Poly> {
        match self.terms.len() {
            0 => Some(Poly::zero()),
            1 => self.terms.get(&WKey::default()).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, k: &WKey) -> Poly {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    /// Polynomial in the `x` symbols becomes a multiplication operator.
    pub fn from_field(f: &Poly) -> Result<Self> {
        let mut w = Weyl::zero();
        for (m, c) in f.terms() {
            let mut k = WKey::default();
            let mut rest = m.clone();
            for a in 0..3 {
                let e = m.exp(x_sym(a));
                if e < 0 {
                    return Err(Error::Invalid(format!("negative power of x{} in field", a + 1)));
                }
                k.x[a] = e as u16;
                rest = rest.without(x_sym(a));
            }
            w.add_term(k, Poly::term(c.clone(), rest));
        }
        Ok(w)
    }

    /// Commutative image: the normal-ordered word `x^a p0^k p^b` becomes the
    /// monomial in symbols `x1..x3, p0, p1..p3`. This is a linear bijection.
    pub fn to_poly(&self) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in &self.terms {
            let mut m = Monomial::one();
            for a in 0..3 {
                m = m.mul(&Monomial::var(x_sym(a), k.x[a] as i32));
                m = m.mul(&Monomial::var(p_sym(a), k.p[a] as i32));
            }
            m = m.mul(&Monomial::var(p0_sym(), k.p0 as i32));
            out = &out + &c.mul_monomial(&m);
        }
        out
    }

    /// Inverse of [`Weyl::to_poly`].
    pub fn from_poly(p: &Poly) -> Result<Self> {
        let mut w = Weyl::zero();
        for (m, c) in p.terms() {
            let mut k = WKey::default();
            let mut rest = m.clone();
            let mut take = |s: Sym| -> Result<u16> {
                let e = m.exp(s);
                if e < 0 {
                    return Err(Error::Invalid(format!("negative power of {}", s.name())));
                }
                rest = rest.without(s);
                Ok(e as u16)
            };
            for a in 0..3 {
                k.x[a] = take(x_sym(a))?;
                k.p[a] = take(p_sym(a))?;
            }
            k.p0 = take(p0_sym())?;
            w.add_term(k, Poly::term(c.clone(), rest));
        }
        Ok(w)
    }

    pub fn map_coeffs<F: Fn(&Poly) -> Poly>(&self, f: F) -> Self {
        let mut w = Weyl::zero();
        for (k, c) in &self.terms {
            w.add_term(*k, f(c));
        }
        w
    }

    pub fn truncate(&self, t: &TruncationSpec) -> Self {
        if t.caps.is_empty() {
            return self.clone();
        }
        self.map_coeffs(|c| c.truncate(&t.caps))
    }

    pub fn subs(&self, s: Sym, v: &Poly) -> Result<Self> {
        let mut w = Weyl::zero();
        for (k, c) in &self.terms {
            w.add_term(*k, c.subs(s, v)?);
        }
        Ok(w)
    }

    pub fn mul_central(&self, c: &Poly) -> Self {
        self.map_coeffs(|x| x * c)
    }

    pub fn commutator(&self, o: &Self) -> Self {
        &(self * o) - &(o * self)
    }

    /// Formal derivative with respect to `x_a` of every coefficient word (used
    /// for fields only).
    pub fn dx(&self, a: usize) -> Self {
        let mut w = Weyl::zero();
        for (k, c) in &self.terms {
            if k.x[a] > 0 {
                let mut k2 = *k;
                k2.x[a] -= 1;
                w.add_term(k2, c.scale(&Scalar::int(k.x[a] as i64)));
            }
        }
        w
    }

    fn mul_terms(k1: &WKey, c1: &Poly, k2: &WKey, c2: &Poly, out: &mut Weyl) {
        let c = c1 * c2;
        if c.is_zero() {
            return;
        }
        // p^b x^c = sum_k C(b,k) c!/(c-k)! (-i)^k x^(c-k) p^(b-k), per axis
        let mut parts: Vec<Vec<(u16, Scalar)>> = Vec::with_capacity(3);
        for a in 0..3 {
            let (b, cx) = (k1.p[a], k2.x[a]);
            parts.push((0..=b.min(cx)).map(|k| (k, minus_i_pow(k).scale_int(binom(b, k) * falling(cx, k)))).collect());
        }
        for (k0, f0) in &parts[0] {
            for (kk1, f1) in &parts[1] {
                for (kk2, f2) in &parts[2] {
                    let ks = [*k0, *kk1, *kk2];
                    let mut key = WKey { p0: k1.p0 + k2.p0, ..WKey::default() };
                    for a in 0..3 {
                        key.x[a] = k1.x[a] + k2.x[a] - ks[a];
                        key.p[a] = k1.p[a] + k2.p[a] - ks[a];
                    }
                    let f = &(f0 * f1) * f2;
                    out.add_term(key, c.scale(&f));
                }
            }
        }
    }
}

trait ScaleInt {
    fn scale_int(self, n: i64) -> Scalar;
}

impl ScaleInt for Scalar {
    fn scale_int(self, n: i64) -> Scalar {
        &self * &Scalar::int(n)
    }
}

impl std::ops::Add for &Weyl {
    type Output = Weyl;
    fn add(self, o: &Weyl) -> Weyl {
        let mut w = self.clone();
        for (k, c) in &o.terms {
            w.add_term(*k, c.clone());
        }
        w
    }
}

impl std::ops::Sub for &Weyl {
    type Output = Weyl;
    fn sub(self, o: &Weyl) -> Weyl {
        let mut w = self.clone();
        for (k, c) in &o.terms {
            w.add_term(*k, -c);
        }
        w
    }
}

impl std::ops::Neg for &Weyl {
    type Output = Weyl;
    fn neg(self) -> Weyl {
        self.map_coeffs(|c| -c)
    }
}

impl std::ops::Mul for &Weyl {
    type Output = Weyl;
    fn mul(self, o: &Weyl) -> Weyl {
        let mut out = Weyl::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                Weyl::mul_terms(k1, c1, k2, c2, &mut out);
            }
        }
        out
    }
}

impl fmt::Display for Weyl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl Ring for Weyl {
    fn zero() -> Self {
        Weyl::zero()
    }
    fn one() -> Self {
        Weyl::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_scalar(s: Scalar) -> Self {
        Weyl::scalar(s)
    }
    /// `(c x^a p^b)† = conj(c) p^b x^a`, normal ordered.
    fn adjoint(&self) -> Self {
        let mut out = Weyl::zero();
        for (k, c) in &self.terms {
            let ps = Weyl::term(WKey { p0: k.p0, p: k.p, ..WKey::default() }, c.conj());
            let xs = Weyl::term(WKey { x: k.x, ..WKey::default() }, Poly::one());
            out = &out + &(&ps * &xs);
        }
        out
    }
    fn scale(&self, s: &Scalar) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }
}

/// Unordered word of generators, used to exercise normal ordering directly.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    X(usize),
    P(usize),
    P0,
}

/// Normal-orders a product of generators (left to right).
pub fn normal_order(word: &[Gen]) -> Weyl {
    word.iter().fold(Weyl::one(), |acc, g| {
        let f = match *g {
            Gen::X(a) => Weyl::x(a),
            Gen::P(a) => Weyl::p(a),
            Gen::P0 => Weyl::p0(),
        };
        &acc * &f
    })
}

/// Degree caps on small parameters; products of retained terms are truncated.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TruncationSpec {
    pub caps: Vec<(Sym, i32)>,
}

impl TruncationSpec {
    pub fn none() -> Self {
        TruncationSpec::default()
    }

    pub fn new(caps: &[(&str, i32)]) -> Self {
        TruncationSpec { caps: caps.iter().map(|&(s, c)| (sym(s), c)).collect() }
    }

    /// Parses `"l3:2,e:1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut caps = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, cap) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("truncation entry '{part}' needs name:cap")))?;
            let cap: i32 = cap.trim().parse().map_err(|_| Error::Parse(format!("bad cap in '{part}'")))?;
            caps.push((sym(name.trim()), cap));
        }
        Ok(TruncationSpec { caps })
    }
}

/// Which components of the potential five-vector are present.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PotentialMode {
    /// `(A^0, A)`, `A^4 = 0`
    Magnetic,
    /// `(A, A^4)`, `A^0 = 0`
    Electric,
}

/// Static external potentials, polynomial in `x1, x2, x3`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldConfig {
    pub a0: Poly,
    pub a: [Poly; 3],
    pub a4: Poly,
    pub charge: Poly,
    pub mode: PotentialMode,
}

pub const DEFAULT_DEGREE_CAP: u32 = 2;

fn check_degree(p: &Poly, cap: u32) -> Result<()> {
    let xs = [x_sym(0), x_sym(1), x_sym(2)];
    for (m, _) in p.terms() {
        if m.degree_in(&xs) > cap as i32 {
            return Err(Error::Degree { cap, monomial: m.to_string() });
        }
    }
    Ok(())
}

impl FieldConfig {
    pub fn free() -> Self {
        FieldConfig {
            a0: Poly::zero(),
            a: [Poly::zero(), Poly::zero(), Poly::zero()],
            a4: Poly::zero(),
            charge: Poly::sym("e"),
            mode: PotentialMode::Magnetic,
        }
    }

    pub fn magnetic(a0: Poly, a: [Poly; 3], cap: u32) -> Result<Self> {
        for p in std::iter::once(&a0).chain(a.iter()) {
            check_degree(p, cap)?;
        }
        Ok(FieldConfig { a0, a, ..FieldConfig::free() })
    }

    pub fn electric(a: [Poly; 3], a4: Poly, cap: u32) -> Result<Self> {
        for p in a.iter().chain(std::iter::once(&a4)) {
            check_degree(p, cap)?;
        }
        Ok(FieldConfig { a, a4, mode: PotentialMode::Electric, ..FieldConfig::free() })
    }

    /// Constant field strengths as symbols: `E_a = E1..E3`, `H_a = H1..H3`,
    /// and a symmetric gradient `∂E_a/∂x_b = G_ab` (traceful). The vector
    /// potential is the symmetric gauge `A = H × x / 2`, and `A^0` is chosen so
    /// that `E = -∇A^0`.
    pub fn symbolic(with_gradient: bool) -> Self {
        let x: Vec<Poly> = (0..3).map(|a| Poly::var(x_sym(a))).collect();
        let h: Vec<Poly> = (1..=3).map(|a| Poly::sym(&format!("H{a}"))).collect();
        let e: Vec<Poly> = (1..=3).map(|a| Poly::sym(&format!("E{a}"))).collect();
        let half = Scalar::ratio(1, 2);
        let mut a0 = Poly::zero();
        for a in 0..3 {
            a0 = &a0 - &(&e[a] * &x[a]);
        }
        if with_gradient {
            for a in 0..3 {
                for b in 0..3 {
                    let g = gradient_symbol(a, b);
                    a0 = &a0 - &(&(&g * &x[a]) * &x[b]).scale(&half);
                }
            }
        }
        let cross = |u: &[Poly], v: &[Poly], c: usize| -> Poly {
            let (i, j) = ((c + 1) % 3, (c + 2) % 3);
            &(&u[i] * &v[j]) - &(&u[j] * &v[i])
        };
        let a = [0, 1, 2].map(|c| cross(&h, &x, c).scale(&half));
        FieldConfig { a0, a, ..FieldConfig::free() }
    }

    pub fn with_charge(mut self, e: Poly) -> Self {
        self.charge = e;
        self
    }

    /// `E_a = -∂A^0/∂x_a` (static).
    pub fn electric_field(&self) -> [Poly; 3] {
        [0, 1, 2].map(|a| -self.a0.deriv(x_sym(a)))
    }

    /// `H = ∇ × A`.
    pub fn magnetic_field(&self) -> [Poly; 3] {
        [0, 1, 2].map(|c| {
            let (i, j) = ((c + 1) % 3, (c + 2) % 3);
            &self.a[j].deriv(x_sym(i)) - &self.a[i].deriv(x_sym(j))
        })
    }

    /// `F^{mn}` in the five-index basis `(0, 1, 2, 3, 4)`.
    pub fn field_tensor(&self) -> Matrix<Poly> {
        let e = self.electric_field();
        let h = self.magnetic_field();
        let mut f = Matrix::zeros(5, 5);
        for a in 0..3 {
            f.set(0, a + 1, -&e[a]);
            f.set(a + 1, 0, e[a].clone());
            for b in 0..3 {
                if a != b {
                    let c = 3 - a - b;
                    let sign = if (b + 3 - a) % 3 == 1 { 1 } else { -1 };
                    f.set(a + 1, b + 1, h[c].scale(&Scalar::int(sign)));
                }
            }
        }
        f
    }
}

/// Symbol for the symmetric electric-field gradient `∂E_a/∂x_b`.
pub fn gradient_symbol(a: usize, b: usize) -> Poly {
    let (i, j) = if a <= b { (a, b) } else { (b, a) };
    Poly::sym(&format!("G{}{}", i + 1, j + 1))
}

/// `π^0 = p0 - e A^0`, `π^a = p_a - e A^a`, `π^4 = m - e A^4`.
pub fn pi_operator(fc: &FieldConfig, index: usize) -> Result<Weyl> {
    let e = &fc.charge;
    Ok(match index {
        0 => &Weyl::p0() - &Weyl::from_field(&(e * &fc.a0))?,
        1..=3 => &Weyl::p(index - 1) - &Weyl::from_field(&(e * &fc.a[index - 1]))?,
        4 => &Weyl::central(Poly::sym("m")) - &Weyl::from_field(&(e * &fc.a4))?,
        _ => return Err(Error::Invalid(format!("five-vector index {index} out of range"))),
    })
}

/// `W† op W` (or `W op W⁻¹`) for `W = exp(X)` with matrix-nilpotent `X`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    AdjointLeft,
    Inverse,
}

pub fn conjugate_by_nilpotent(
    op: &Matrix<Weyl>,
    exponent: &Matrix<Weyl>,
    direction: Direction,
) -> Result<Matrix<Weyl>> {
    let dim = exponent.rows();
    let w = crate::linalg::nilpotent_exp(exponent, &Weyl::one())?;
    let left = match direction {
        Direction::AdjointLeft => w.adjoint(),
        Direction::Inverse => crate::linalg::nilpotent_exp(&exponent.neg(), &Weyl::one())?,
    };
    debug_assert_eq!(w.rows(), dim);
    Ok(left.mul(op).mul(&w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_commutator() {
        let w = normal_order(&[Gen::P(0), Gen::X(0)]);
        let expect = &Weyl::x(0).mul(&Weyl::p(0)) - &Weyl::scalar(Scalar::i());
        assert_eq!(w, expect);
    }

    #[test]
    fn second_order_rule() {
        let w = normal_order(&[Gen::P(0), Gen::X(0), Gen::X(0)]);
        let x2p = normal_order(&[Gen::X(0), Gen::X(0), Gen::P(0)]);
        let expect = &x2p - &Weyl::x(0).scale(&Scalar::imag(2));
        assert_eq!(w, expect);
    }

    #[test]
    fn adjoint_of_momentum_is_itself() {
        assert_eq!(Weyl::p(1).adjoint(), Weyl::p(1));
        let xp = &Weyl::x(0) * &Weyl::p(0);
        // (x p)† = p x = x p - i
        assert_eq!(xp.adjoint(), &xp - &Weyl::scalar(Scalar::i()));
    }
}
