//! Dense univariate polynomials over a [`Field`] level, plus an
//! arbitrary-precision integer flavour in [`IntPoly`].
//!
//! Coefficients are stored in ascending degree order and the highest stored
//! coefficient is nonzero (the zero polynomial has no coefficients).

mod factor;
mod int;
mod parse;

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{split_top_level, Field, DEFAULT_CEILING};

pub use factor::{
    distinct_degree_factorization, factor_degree_multiset, frobenius_powmod, is_irreducible,
    squarefree_decomposition, FactorDegreeMultiset,
};
pub use int::IntPoly;
pub use parse::parse_integer_poly;

#[derive(Clone)]
pub struct Poly {
    field: Arc<Field>,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F_{}]({})", self.field.order(), self.to_text())
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && Field::same(&self.field, &other.field)
    }
}

impl Eq for Poly {}

/// Operations accepted by [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
    Gcd,
}

/// Applies `op`; returns `(result, None)` except for `DivRem`, which returns
/// `(quotient, Some(remainder))`.
pub fn poly_arith(f: &Poly, g: &Poly, op: PolyOp) -> Result<(Poly, Option<Poly>)> {
    match op {
        PolyOp::Add => Ok((f.add(g)?, None)),
        PolyOp::Sub => Ok((f.sub(g)?, None)),
        PolyOp::Mul => Ok((f.mul(g)?, None)),
        PolyOp::DivRem => {
            let (q, r) = f.divrem(g)?;
            Ok((q, Some(r)))
        }
        PolyOp::Gcd => Ok((f.gcd(g)?, None)),
    }
}

impl Poly {
    pub fn new(field: Arc<Field>, coeffs: Vec<u64>) -> Result<Poly> {
        if let Some(&c) = coeffs.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::InvalidArgument(format!(
                "coefficient {c} is not in a field of order {}",
                field.order()
            )));
        }
        Ok(Self::from_raw(field, coeffs))
    }

    pub(crate) fn from_raw(field: Arc<Field>, mut coeffs: Vec<u64>) -> Poly {
        trim(&mut coeffs);
        Poly { field, coeffs }
    }

    pub fn zero(field: &Arc<Field>) -> Poly {
        Poly {
            field: Arc::clone(field),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Arc<Field>) -> Poly {
        Self::constant(field, 1)
    }

    pub fn constant(field: &Arc<Field>, c: u64) -> Poly {
        Self::from_raw(Arc::clone(field), vec![c])
    }

    /// `c·t^n`.
    pub fn monomial(field: &Arc<Field>, c: u64, n: usize) -> Poly {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c;
        Self::from_raw(Arc::clone(field), coeffs)
    }

    /// The indeterminate `t`.
    pub fn t(field: &Arc<Field>) -> Poly {
        Self::monomial(field, 1, 1)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn monic(&self) -> Result<Poly> {
        let inv = self.field.inv(self.lead()).ok_or(Error::DivisionByZero)?;
        Ok(self.scale(inv))
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if Field::same(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    fn with(&self, coeffs: Vec<u64>) -> Poly {
        Self::from_raw(Arc::clone(&self.field), coeffs)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.with(add_raw(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.with(sub_raw(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn neg(&self) -> Poly {
        self.with(self.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.with(mul_raw(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: u64) -> Poly {
        self.with(self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = vec![1u64];
        for _ in 0..n {
            acc = mul_raw(&self.field, &acc, &self.coeffs);
        }
        self.with(acc)
    }

    /// `f = q·g + r` with `deg r < deg g`.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.check(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = divrem_raw(&self.field, &self.coeffs, &g.coeffs);
        Ok((self.with(q), self.with(r)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.divrem(g)?.1)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.with(gcd_raw(&self.field, &self.coeffs, &other.coeffs)))
    }

    /// `f(g(t))` by Horner's rule.
    pub fn compose(&self, g: &Poly) -> Result<Poly> {
        self.check(g)?;
        Ok(self.with(compose_raw(&self.field, &self.coeffs, &g.coeffs)))
    }

    pub fn derivative(&self) -> Poly {
        let p = self.field.characteristic();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.field.mul(c, (i as u64) % p))
            .collect();
        self.with(coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// Reinterprets the coefficients in `target`, which must contain this
    /// polynomial's field via the index-preserving inclusion (a tower level above).
    pub fn embed(&self, target: &Arc<Field>) -> Result<Poly> {
        let mut level = Some(target);
        while let Some(f) = level {
            if Field::same(f, &self.field) {
                return Ok(Poly::from_raw(Arc::clone(target), self.coeffs.clone()));
            }
            level = f.base();
        }
        Err(Error::DomainMismatch)
    }

    /// Canonical text: comma-separated ascending coefficients in element text form.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|&c| self.field.format(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses either the canonical text form or a human form such as
    /// `x^4-x^2-1` whose integer coefficients are reduced mod `p`.
    pub fn parse(field: &Arc<Field>, text: &str) -> Result<Poly> {
        let text = text.trim();
        if text.chars().any(|c| c.is_ascii_alphabetic()) {
            return parse_integer_poly(text)?.reduce(field);
        }
        let coeffs = split_top_level(text)?
            .into_iter()
            .map(|s| field.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Poly::new(Arc::clone(field), coeffs)
    }

    /// Human-readable form in the variable `var`, highest degree first.
    pub fn pretty(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = self.field.format(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(match (c == 1 && i > 0, mono.is_empty()) {
                (true, _) => mono,
                (false, true) => coef,
                (false, false) => format!("{coef}{mono}"),
            });
        }
        terms.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

/// All monic polynomials of degree `d`, constant coefficient varying fastest.
pub fn enumerate_monic(field: &Arc<Field>, d: usize) -> Result<MonicIter> {
    let total = monic_count(field, d)?;
    Ok(MonicIter {
        field: Arc::clone(field),
        degree: d,
        next: 0,
        end: total,
    })
}

/// Monic irreducibles of degree `d`, in the same order as [`enumerate_monic`].
pub fn enumerate_monic_irreducible(
    field: &Arc<Field>,
    d: usize,
) -> Result<impl Iterator<Item = Poly>> {
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    Ok(enumerate_monic(field, d)?.filter(|f| is_irreducible(f).unwrap_or(false)))
}

/// `Q^d`, the number of monic polynomials of degree `d`.
pub fn monic_count(field: &Arc<Field>, d: usize) -> Result<u64> {
    match field.order().checked_pow(d as u32) {
        Some(v) if v <= DEFAULT_CEILING => Ok(v),
        _ => Err(Error::CeilingExceeded {
            size: format!("{}^{d}", field.order()),
            ceiling: DEFAULT_CEILING,
        }),
    }
}

/// The monic polynomial of degree `d` at position `index` of [`enumerate_monic`].
pub fn monic_at(field: &Arc<Field>, d: usize, mut index: u64) -> Poly {
    let q = field.order();
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..d {
        coeffs.push(index % q);
        index /= q;
    }
    coeffs.push(1);
    Poly {
        field: Arc::clone(field),
        coeffs,
    }
}

/// Index range iterator over monic polynomials of a fixed degree.
#[derive(Debug, Clone)]
pub struct MonicIter {
    field: Arc<Field>,
    degree: usize,
    next: u64,
    end: u64,
}

impl MonicIter {
    /// Restricts to positions `start..end`, for splitting work.
    pub fn range(mut self, start: u64, end: u64) -> Self {
        self.end = end.min(self.end);
        self.next = start.min(self.end);
        self
    }

    pub fn len_remaining(&self) -> u64 {
        self.end - self.next
    }
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.end {
            return None;
        }
        let f = monic_at(&self.field, self.degree, self.next);
        self.next += 1;
        Some(f)
    }
}

// Raw coefficient-slice kernels shared by the polynomial and factoring code.

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn add_raw(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = f.add(*o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn sub_raw(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (o, &s) in out.iter_mut().zip(b) {
        *o = f.sub(*o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn mul_raw(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Division with remainder; `b` must be nonzero.
pub(crate) fn divrem_raw(f: &Field, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = f.mul(r[k + db], inv);
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = f.sub(r[k + j], f.mul(c, bj));
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

/// Remainder modulo a monic `m`, in place.
pub(crate) fn rem_monic_in_place(f: &Field, r: &mut Vec<u64>, m: &[u64]) {
    let dm = m.len() - 1;
    if r.len() > dm {
        for k in (dm..r.len()).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            for j in 0..dm {
                r[k - dm + j] = f.sub(r[k - dm + j], f.mul(c, m[j]));
            }
        }
        r.truncate(dm);
    }
    trim(r);
}

pub(crate) fn mulmod_raw(f: &Field, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let mut p = mul_raw(f, a, b);
    rem_monic_in_place(f, &mut p, m);
    p
}

/// `a^n mod m` for monic `m`.
pub(crate) fn powmod_raw(f: &Field, a: &[u64], mut n: u64, m: &[u64]) -> Vec<u64> {
    let mut base = a.to_vec();
    rem_monic_in_place(f, &mut base, m);
    let mut acc: Option<Vec<u64>> = None;
    while n > 0 {
        if n & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(acc) => mulmod_raw(f, &acc, &base, m),
            });
        }
        n >>= 1;
        if n > 0 {
            base = mulmod_raw(f, &base, &base, m);
        }
    }
    acc.unwrap_or_else(|| {
        let mut one = vec![1u64];
        rem_monic_in_place(f, &mut one, m);
        one
    })
}

pub(crate) fn make_monic_raw(f: &Field, a: &mut [u64]) {
    if let Some(&l) = a.last() {
        if l != 1 {
            let inv = f.inv(l).expect("nonzero leading coefficient");
            for c in a.iter_mut() {
                *c = f.mul(*c, inv);
            }
        }
    }
}

pub(crate) fn gcd_raw(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem_raw(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic_raw(f, &mut x);
    x
}

pub(crate) fn compose_raw(f: &Field, outer: &[u64], inner: &[u64]) -> Vec<u64> {
    let mut acc: Vec<u64> = Vec::new();
    for &c in outer.iter().rev() {
        acc = mul_raw(f, &acc, inner);
        if acc.is_empty() {
            acc.push(c);
        } else {
            acc[0] = f.add(acc[0], c);
        }
        trim(&mut acc);
    }
    acc
}
