//! Sparse multivariate Laurent polynomials over Gaussian rationals.
//!
//! Symbols are interned globally. Exponents are signed, so a localized symbol
//! and its inverse are the same variable with exponents of opposite sign and
//! `m * m^-1` collapses to 1 as soon as the product is formed.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Sym(pub u32);

#[derive(Default)]
struct Registry {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

fn registry() -> &'static RwLock<Registry> {
    static REG: OnceLock<RwLock<Registry>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(Registry::default()))
}

/// Interns `name` and returns its symbol.
pub fn sym(name: &str) -> Sym {
    if let Some(&id) = registry().read().unwrap().ids.get(name) {
        return Sym(id);
    }
    let mut reg = registry().write().unwrap();
    if let Some(&id) = reg.ids.get(name) {
        return Sym(id);
    }
    let id = reg.names.len() as u32;
    reg.names.push(name.to_string());
    reg.ids.insert(name.to_string(), id);
    Sym(id)
}

impl Sym {
    pub fn name(&self) -> String {
        registry().read().unwrap().names[self.0 as usize].clone()
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Product of symbol powers, sorted by symbol id, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(u32, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Sym, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s.0, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, s: Sym) -> i32 {
        self.0.iter().find(|(id, _)| *id == s.0).map(|&(_, e)| e).unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Sym, i32)> + '_ {
        self.0.iter().map(|&(id, e)| (Sym(id), e))
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(id, e)| (id, -e)).collect())
    }

    pub fn without(&self, s: Sym) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(id, _)| *id != s.0).collect())
    }

    pub fn with_exp(&self, s: Sym, e: i32) -> Monomial {
        self.without(s).mul(&Monomial::var(s, e))
    }

    /// Sum of exponents over the given symbols.
    pub fn degree_in(&self, syms: &[Sym]) -> i32 {
        self.0.iter().filter(|(id, _)| syms.iter().any(|s| s.0 == *id)).map(|&(_, e)| e).sum()
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    fn named(&self) -> Vec<(String, i32)> {
        let mut v: Vec<(String, i32)> = self.factors().map(|(s, e)| (s.name(), e)).collect();
        v.sort();
        v
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.named().into_iter().map(|(n, e)| if e == 1 { n } else { format!("{n}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Scalar::int(n))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(s: Sym) -> Self {
        Poly::term(Scalar::one(), Monomial::var(s, 1))
    }

    /// Shorthand: interned symbol as a polynomial.
    pub fn sym(name: &str) -> Self {
        Poly::var(sym(name))
    }

    pub fn var_pow(s: Sym, e: i32) -> Self {
        Poly::term(Scalar::one(), Monomial::var(s, e))
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Single-term polynomial: a unit of the Laurent ring.
    pub fn as_unit(&self) -> Option<(Scalar, Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), m.clone()))
        } else {
            None
        }
    }

    pub fn inv_unit(&self) -> Option<Poly> {
        let (c, m) = self.as_unit()?;
        Some(Poly::term(c.inv()?, m.inv()))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn conj(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.terms.keys().flat_map(|m| m.factors().map(|(s, _)| s)).collect()
    }

    pub fn contains(&self, s: Sym) -> bool {
        self.terms.keys().any(|m| m.exp(s) != 0)
    }

    pub fn max_exp(&self, s: Sym) -> i32 {
        self.terms.keys().map(|m| m.exp(s)).max().unwrap_or(0)
    }

    pub fn min_exp(&self, s: Sym) -> i32 {
        self.terms.keys().map(|m| m.exp(s)).min().unwrap_or(0)
    }

    /// Largest total degree over `syms` among the terms.
    pub fn degree_in(&self, syms: &[Sym]) -> i32 {
        self.terms.keys().map(|m| m.degree_in(syms)).max().unwrap_or(0)
    }

    /// Part of the polynomial with exponent exactly `e` in `s`, with `s` removed.
    pub fn coeff_of(&self, s: Sym, e: i32) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.exp(s) == e).map(|(m, c)| (m.without(s), c.clone())))
    }

    /// Splits into powers of `s`: exponent -> coefficient.
    pub fn collect_in(&self, s: Sym) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(s)).or_default().add_term(m.without(s), c.clone());
        }
        out
    }

    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn deriv(&self, s: Sym) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(s);
            if e == 0 {
                None
            } else {
                Some((m.with_exp(s, e - 1), c * &Scalar::int(e as i64)))
            }
        }))
    }

    /// Replaces `s` by `value`. Negative powers need a unit replacement.
    pub fn subs(&self, s: Sym, value: &Poly) -> Result<Poly> {
        let inverse = value.inv_unit();
        let mut cache: HashMap<i32, Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(s);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(slot) = cache.entry(e) {
                let p = if e > 0 {
                    value.pow(e as u32)
                } else {
                    inverse
                        .as_ref()
                        .ok_or_else(|| {
                            Error::Invalid(format!(
                                "cannot substitute non-unit {value} for {} with negative power",
                                s.name()
                            ))
                        })?
                        .pow((-e) as u32)
                };
                slot.insert(p);
            }
            let rest = Poly::term(c.clone(), m.without(s));
            out = &out + &(&rest * &cache[&e]);
        }
        Ok(out)
    }

    pub fn subs_many(&self, values: &[(Sym, Poly)]) -> Result<Poly> {
        let mut p = self.clone();
        for (s, v) in values {
            p = p.subs(*s, v)?;
        }
        Ok(p)
    }

    /// Full evaluation; every symbol must be assigned.
    pub fn eval(&self, values: &HashMap<Sym, Scalar>) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m.factors() {
                let v = values.get(&s).ok_or_else(|| Error::Invalid(format!("no value for symbol {}", s.name())))?;
                let f = if e >= 0 {
                    v.pow(e as u32)
                } else {
                    v.inv()
                        .ok_or_else(|| Error::Invalid(format!("symbol {} evaluated at 0", s.name())))?
                        .pow((-e) as u32)
                };
                t = &t * &f;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Drops monomials whose exponent in a capped symbol exceeds its cap.
    pub fn truncate(&self, caps: &[(Sym, i32)]) -> Poly {
        if caps.is_empty() {
            return self.clone();
        }
        self.filter(|m| caps.iter().all(|&(s, cap)| m.exp(s) <= cap))
    }

    /// Exact division by a polynomial in one symbol is not needed; this divides by a unit.
    pub fn div_unit(&self, d: &Poly) -> Option<Poly> {
        Some(self * &d.inv_unit()?)
    }

    fn sorted_terms(&self) -> Vec<NamedTerm<'_>> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.named(), m, c)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, (_, m, c)) in self.sorted_terms().into_iter().enumerate() {
            let coef = c.to_string();
            let compound = !c.re.is_zero() && !c.im.is_zero();
            let body = if m.is_one() {
                if compound {
                    format!("({coef})")
                } else {
                    coef
                }
            } else if c.is_one() {
                m.to_string()
            } else if (-c).is_one() {
                format!("-{m}")
            } else if compound {
                format!("({coef})*{m}")
            } else {
                format!("{coef}*{m}")
            };
            if k > 0 {
                if let Some(rest) = body.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(rest);
                } else {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
            } else {
                out.push_str(&body);
            }
        }
        write!(f, "{out}")
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::int(-1))
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl std::ops::$tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                std::ops::$tr::$f(&self, &o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Scalar> for Poly {
    fn from(s: Scalar) -> Self {
        Poly::constant(s)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
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
        Poly::constant(s)
    }
    fn adjoint(&self) -> Self {
        self.conj()
    }
    fn scale(&self, s: &Scalar) -> Self {
        Poly::scale(self, s)
    }
}

/// Rational number helper used by parsers and tests.
/// A term keyed by its symbol names, for stable printing.
type NamedTerm<'a> = (Vec<(String, i32)>, &'a Monomial, &'a Scalar);

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `1/n!` as a scalar.
pub fn inv_factorial(n: u32) -> Scalar {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    Scalar::from_rational(BigRational::new(BigInt::one(), f))
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
