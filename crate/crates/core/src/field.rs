//! Finite fields and two-step towers `F_p ⊆ F_q ⊆ F_{q^e}`.
//!
//! Every element is stored as its canonical index: the coefficient vector over
//! the level below, read as base-`b` digits with the constant coefficient as the
//! least significant digit (`b` is the order of the level below). Consequently
//! counting `0, 1, 2, ...` enumerates a level in lexicographic coefficient order
//! with the low-degree coefficient varying fastest, and the natural inclusion of
//! a level into the one above it is the identity on indices.
//!
//! Addition is digit-wise modulo `p` on the full base-`p` expansion. Small levels
//! (at most 256 elements) carry full addition and multiplication tables; larger
//! levels can build discrete-log tables on demand with [`Field::ensure_tables`].

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numtheory;

/// Default cap on the number of elements of any level.
pub const DEFAULT_CEILING: u64 = 1 << 63;

/// Levels up to this size get addition/multiplication tables at construction.
const SMALL_TABLE_LIMIT: u64 = 256;

/// Largest level for which [`Field::ensure_tables`] builds log tables.
pub const LOG_TABLE_LIMIT: u64 = 1 << 22;

struct SmallTables {
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// One level of a tower: either a prime field or a simple extension of another
/// [`Field`] by a monic modulus.
pub struct Field {
    p: u64,
    order: u64,
    abs_degree: u32,
    base: Option<Arc<Field>>,
    modulus: Vec<u64>,
    small: Option<SmallTables>,
    logs: OnceLock<Option<LogTables>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("order", &self.order)
            .field("modulus", &self.modulus)
            .field("base", &self.base)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.order == other.order
            && self.modulus == other.modulus
            && self.base == other.base
    }
}

impl Eq for Field {}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Arc<Field>> {
        if !numtheory::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut field = Field {
            p,
            order: p,
            abs_degree: 1,
            base: None,
            modulus: Vec::new(),
            small: None,
            logs: OnceLock::new(),
        };
        field.build_small_tables();
        Ok(Arc::new(field))
    }

    /// The quotient `base[t] / (modulus)`. The modulus must be monic of degree
    /// at least one; irreducibility is the caller's responsibility (see
    /// [`FieldTower::with_top_modulus`] for the checked route).
    pub fn extension(base: &Arc<Field>, modulus: Vec<u64>, ceiling: u64) -> Result<Arc<Field>> {
        let n = modulus
            .len()
            .checked_sub(1)
            .ok_or(Error::ConstantPolynomial)?;
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if modulus[n] != 1 {
            return Err(Error::NotMonic);
        }
        if modulus.iter().any(|&c| c >= base.order) {
            return Err(Error::InvalidArgument(
                "modulus coefficient out of range".into(),
            ));
        }
        let order = checked_power(base.order, n as u32, ceiling)?;
        let mut field = Field {
            p: base.p,
            order,
            abs_degree: base.abs_degree * n as u32,
            base: Some(Arc::clone(base)),
            modulus,
            small: None,
            logs: OnceLock::new(),
        };
        field.build_small_tables();
        Ok(Arc::new(field))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree over the prime field.
    pub fn absolute_degree(&self) -> u32 {
        self.abs_degree
    }

    /// Degree over the level below (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.modulus.len().saturating_sub(1).max(1)
    }

    pub fn base(&self) -> Option<&Arc<Field>> {
        self.base.as_ref()
    }

    /// Defining modulus over the level below; empty for a prime field.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.base.is_none()
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.order
    }

    /// Order of the level below (`p` for a prime field).
    pub fn base_order(&self) -> u64 {
        self.base.as_ref().map_or(self.p, |b| b.order)
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.order
    }

    /// Coefficients over the level below, ascending, padded to the degree.
    pub fn digits(&self, mut a: u64) -> Vec<u64> {
        match &self.base {
            None => vec![a],
            Some(base) => {
                let b = base.order;
                let n = self.modulus.len() - 1;
                let mut out = Vec::with_capacity(n);
                for _ in 0..n {
                    out.push(a % b);
                    a /= b;
                }
                out
            }
        }
    }

    /// Inverse of [`Field::digits`]; missing high coefficients are zero.
    pub fn from_digits(&self, digits: &[u64]) -> u64 {
        let b = self.base_order();
        digits.iter().rev().fold(0u64, |acc, &d| acc * b + d)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = &self.small {
            return t.add[(a * self.order + b) as usize] as u64;
        }
        self.add_digits(a, b)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.base.is_none() {
            return if a == 0 { 0 } else { self.p - a };
        }
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut a, mut out, mut pw) = (a, 0u64, 1u64);
        while a > 0 {
            let d = a % p;
            out += ((p - d) % p) * pw;
            a /= p;
            pw = pw.wrapping_mul(p);
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = &self.small {
            return t.mul[(a * self.order + b) as usize] as u64;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(Some(lt)) = self.logs.get() {
            let m = self.order - 1;
            let s = lt.log[a as usize] as u64 + lt.log[b as usize] as u64;
            return lt.exp[(s % m) as usize] as u64;
        }
        self.mul_structural(a, b)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.small {
            return Some(t.inv[a as usize] as u64);
        }
        if let Some(Some(lt)) = self.logs.get() {
            let m = self.order - 1;
            return Some(lt.exp[((m - lt.log[a as usize] as u64) % m) as usize] as u64);
        }
        Some(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    /// `a^n` with the convention `0^0 = 1`.
    pub fn pow(&self, a: u64, n: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let m = self.order - 1;
        if let Some(Some(lt)) = self.logs.get() {
            let e = (lt.log[a as usize] as u128 * (n % m) as u128) % m as u128;
            return lt.exp[e as usize] as u64;
        }
        let mut e = n % m;
        if e == 0 {
            return 1;
        }
        let (mut base, mut acc) = (a, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// `a^n` for an exponent of arbitrary size.
    pub fn pow_big(&self, a: u64, n: &BigUint) -> u64 {
        if n.is_zero() {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let reduced = (n % BigUint::from(self.order - 1)).to_u64().unwrap_or(0);
        if reduced == 0 {
            1
        } else {
            self.pow(a, reduced)
        }
    }

    /// `a^(b^s)` where `b` is the order of the level below.
    pub fn frobenius(&self, a: u64, s: u32) -> u64 {
        let b = self.base_order();
        let mut x = a;
        for _ in 0..s {
            x = self.pow(x, b);
        }
        x
    }

    /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
    pub fn quadratic_character(&self, a: u64) -> Result<i8> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if a == 0 {
            return Ok(0);
        }
        if let Some(Some(lt)) = self.logs.get() {
            return Ok(if lt.log[a as usize] % 2 == 0 { 1 } else { -1 });
        }
        Ok(if self.pow(a, (self.order - 1) / 2) == 1 {
            1
        } else {
            -1
        })
    }

    /// The class of `t` modulo the defining modulus, i.e. a root of the modulus
    /// in this field. For a prime field this is `1`.
    pub fn generator_class(&self) -> u64 {
        match &self.base {
            None => 1,
            Some(base) if self.modulus.len() == 2 => base.neg(self.modulus[0]),
            Some(base) => base.order,
        }
    }

    /// Builds discrete-log tables when the level has at most
    /// [`LOG_TABLE_LIMIT`] elements. Returns whether tables are available.
    pub fn ensure_tables(&self) -> bool {
        if self.small.is_some() {
            return true;
        }
        self.logs
            .get_or_init(|| (self.order <= LOG_TABLE_LIMIT).then(|| self.build_log_tables()))
            .is_some()
    }

    /// Canonical text form: a residue at the prime level, otherwise a bracketed
    /// ascending coefficient list over the level below.
    pub fn format(&self, a: u64) -> String {
        match &self.base {
            None => a.to_string(),
            Some(base) => {
                let parts: Vec<String> =
                    self.digits(a).into_iter().map(|d| base.format(d)).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }

    /// Parses the canonical text form. A bare integer is read as an element
    /// of the prime field, reduced mod `p`.
    pub fn parse(&self, text: &str) -> Result<u64> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {text:?}")))?;
            let base = self
                .base
                .as_ref()
                .ok_or_else(|| Error::Parse(format!("{text:?} is not a prime-field element")))?;
            let parts = split_top_level(inner)?;
            let n = self.modulus.len() - 1;
            if parts.len() > n {
                return Err(Error::Parse(format!(
                    "{text:?} has more than {n} coefficients"
                )));
            }
            let digits = parts
                .iter()
                .map(|s| base.parse(s))
                .collect::<Result<Vec<_>>>()?;
            Ok(self.from_digits(&digits))
        } else {
            let v: i128 = text
                .parse()
                .map_err(|_| Error::Parse(format!("bad field element {text:?}")))?;
            Ok(v.rem_euclid(self.p as i128) as u64)
        }
    }

    /// Structural equality, with a pointer fast path.
    pub fn same(a: &Arc<Field>, b: &Arc<Field>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }

    fn add_digits(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        if self.base.is_none() {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut pw) = (a, b, 0u64, 1u64);
        while a > 0 || b > 0 {
            let mut s = a % p + b % p;
            if s >= p {
                s -= p;
            }
            out += s * pw;
            a /= p;
            b /= p;
            pw = pw.wrapping_mul(p);
        }
        out
    }

    fn mul_structural(&self, a: u64, b: u64) -> u64 {
        let Some(base) = &self.base else {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        };
        let n = self.modulus.len() - 1;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = base.add(prod[i + j], base.mul(x, y));
            }
        }
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                prod[k - n + j] = base.sub(prod[k - n + j], base.mul(c, self.modulus[j]));
            }
        }
        self.from_digits(&prod[..n])
    }

    fn build_small_tables(&mut self) {
        if self.order > SMALL_TABLE_LIMIT {
            return;
        }
        let q = self.order;
        let mut add = Vec::with_capacity((q * q) as usize);
        let mut mul = Vec::with_capacity((q * q) as usize);
        for a in 0..q {
            for b in 0..q {
                add.push(self.add_digits(a, b) as u32);
                mul.push(self.mul_structural(a, b) as u32);
            }
        }
        let mut inv = vec![0u32; q as usize];
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u32;
                    break;
                }
            }
        }
        self.small = Some(SmallTables { add, mul, inv });
    }

    fn build_log_tables(&self) -> LogTables {
        let m = self.order - 1;
        let primes = numtheory::prime_divisors(m);
        let g = (1..self.order)
            .find(|&g| primes.iter().all(|&r| self.pow(g, m / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(m as usize);
        let mut log = vec![0u32; self.order as usize];
        let mut x = 1u64;
        for i in 0..m {
            exp.push(x as u32);
            log[x as usize] = i as u32;
            x = self.mul_structural(x, g);
        }
        LogTables { exp, log }
    }
}

fn checked_power(base: u64, exp: u32, ceiling: u64) -> Result<u64> {
    match base.checked_pow(exp) {
        Some(v) if v <= ceiling => Ok(v),
        _ => Err(Error::CeilingExceeded {
            size: format!("{base}^{exp}"),
            ceiling,
        }),
    }
}

/// Splits on commas that are not nested inside brackets.
pub(crate) fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
                }
            }
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    Ok(out)
}

/// Tower levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Prime,
    Mid,
    Top,
}

/// `F_p → F_q → F_{q^e}` with `q = p^ell`.
///
/// When `ell = 1` the mid level is the prime field itself and when `e = 1` the
/// top level is the mid level; the recorded modulus in those cases is `t`.
#[derive(Debug, Clone)]
pub struct FieldTower {
    prime: Arc<Field>,
    mid: Arc<Field>,
    top: Arc<Field>,
    ell: u32,
    e: u32,
    mid_modulus: Vec<u64>,
    top_modulus: Vec<u64>,
}

impl FieldTower {
    /// Tower with the lexicographically smallest monic irreducible moduli.
    pub fn build(p: u64, ell: u32, e: u32) -> Result<FieldTower> {
        Self::build_with_ceiling(p, ell, e, DEFAULT_CEILING)
    }

    pub fn build_with_ceiling(p: u64, ell: u32, e: u32, ceiling: u64) -> Result<FieldTower> {
        if ell == 0 || e == 0 {
            return Err(Error::InvalidArgument(
                "tower degrees must be positive".into(),
            ));
        }
        let prime = Field::prime(p)?;
        let total = ell
            .checked_mul(e)
            .ok_or_else(|| Error::InvalidArgument("tower degree overflow".into()))?;
        checked_power(p, total, ceiling)?;
        let (mid, mid_modulus) = if ell == 1 {
            (Arc::clone(&prime), vec![0, 1])
        } else {
            let m = smallest_irreducible(&prime, ell as usize)?;
            (Field::extension(&prime, m.clone(), ceiling)?, m)
        };
        let (top, top_modulus) = if e == 1 {
            (Arc::clone(&mid), vec![0, 1])
        } else {
            let m = smallest_irreducible(&mid, e as usize)?;
            (Field::extension(&mid, m.clone(), ceiling)?, m)
        };
        Ok(FieldTower {
            prime,
            mid,
            top,
            ell,
            e,
            mid_modulus,
            top_modulus,
        })
    }

    /// Tower over `mid` whose top level is `mid[t]/(f)` for an irreducible `f`
    /// (made monic here). The generator class of the top level is then a root of `f`.
    pub fn with_top_modulus(mid: &crate::poly::Poly) -> Result<FieldTower> {
        let f = mid.monic()?;
        if !crate::poly::is_irreducible(&f)? {
            return Err(Error::Reducible);
        }
        let mid_field = Arc::clone(f.field());
        let prime = match mid_field.base() {
            None => Arc::clone(&mid_field),
            Some(b) => Arc::clone(b),
        };
        if prime.base().is_some() {
            return Err(Error::InvalidArgument(
                "coefficient field must be a prime field or its extension".into(),
            ));
        }
        let ell = mid_field.absolute_degree();
        let mid_modulus = if mid_field.is_prime_field() {
            vec![0, 1]
        } else {
            mid_field.modulus().to_vec()
        };
        let top_modulus = f.coeffs().to_vec();
        let e = (top_modulus.len() - 1) as u32;
        let top = Field::extension(&mid_field, top_modulus.clone(), DEFAULT_CEILING)?;
        Ok(FieldTower {
            prime,
            mid: mid_field,
            top,
            ell,
            e,
            mid_modulus,
            top_modulus,
        })
    }

    pub fn p(&self) -> u64 {
        self.prime.order()
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.mid.order()
    }

    pub fn level(&self, level: Level) -> &Arc<Field> {
        match level {
            Level::Prime => &self.prime,
            Level::Mid => &self.mid,
            Level::Top => &self.top,
        }
    }

    pub fn prime(&self) -> &Arc<Field> {
        &self.prime
    }

    pub fn mid(&self) -> &Arc<Field> {
        &self.mid
    }

    pub fn top(&self) -> &Arc<Field> {
        &self.top
    }

    pub fn mid_modulus(&self) -> &[u64] {
        &self.mid_modulus
    }

    pub fn top_modulus(&self) -> &[u64] {
        &self.top_modulus
    }

    /// Text forms of both moduli, used to key cached results.
    pub fn moduli_text(&self) -> Vec<String> {
        let fmt = |field: &Arc<Field>, m: &[u64]| {
            m.iter()
                .map(|&c| field.format(c))
                .collect::<Vec<_>>()
                .join(",")
        };
        vec![
            format!("mid:{}", fmt(&self.prime, &self.mid_modulus)),
            format!("top:{}", fmt(&self.mid, &self.top_modulus)),
        ]
    }

    /// Inclusion `F_q ⊆ F_{q^e}`. Indices are shared, so this only validates.
    pub fn embed_base(&self, c: u64) -> Result<u64> {
        if self.mid.contains(c) {
            Ok(c)
        } else {
            Err(Error::InvalidArgument(format!(
                "{c} is not an element of F_{}",
                self.q()
            )))
        }
    }

    /// `a^(q^s)` on the top level.
    pub fn frobenius(&self, a: u64, s: u32) -> u64 {
        let q = self.q();
        let mut x = a;
        for _ in 0..s {
            x = self.top.pow(x, q);
        }
        x
    }

    /// Whether `a` is fixed by `x ↦ x^(q^s)`; for `s | e` this is membership in `F_{q^s}`.
    pub fn in_subfield(&self, a: u64, s: u32) -> bool {
        self.frobenius(a, s) == a
    }

    /// Whether `a` lies in no proper subfield `F_{q^s}`, `s | e`, `s < e`.
    /// Only the maximal subfields `s = e / r` for primes `r | e` are tested.
    pub fn generates_top(&self, a: u64) -> bool {
        numtheory::prime_divisors(self.e as u64)
            .into_iter()
            .all(|r| !self.in_subfield(a, self.e / r as u32))
    }
}

/// Lexicographically smallest monic irreducible of the given degree, comparing
/// coefficients from the constant term upward.
fn smallest_irreducible(field: &Arc<Field>, degree: usize) -> Result<Vec<u64>> {
    let b = field.order();
    let count = checked_power(b, degree as u32, DEFAULT_CEILING)?;
    for i in 0..count {
        let mut coeffs = vec![0u64; degree + 1];
        let mut rest = i;
        for j in (0..degree).rev() {
            coeffs[j] = rest % b;
            rest /= b;
        }
        coeffs[degree] = 1;
        let f = crate::poly::Poly::new(Arc::clone(field), coeffs.clone())?;
        if crate::poly::is_irreducible(&f)? {
            return Ok(coeffs);
        }
    }
    Err(Error::Invariant(format!(
        "no irreducible of degree {degree} over F_{b}"
    )))
}

/// An element together with the level it belongs to.
#[derive(Debug, Clone)]
pub struct FieldElement {
    field: Arc<Field>,
    value: u64,
}

/// Operations accepted by [`field_arith`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(BigUint),
}

impl FieldElement {
    pub fn new(field: &Arc<Field>, value: u64) -> Result<Self> {
        if !field.contains(value) {
            return Err(Error::InvalidArgument(format!(
                "{value} is not an element of a field of order {}",
                field.order()
            )));
        }
        Ok(FieldElement {
            field: Arc::clone(field),
            value,
        })
    }

    pub fn parse(field: &Arc<Field>, text: &str) -> Result<Self> {
        let v = field.parse(text)?;
        Self::new(field, v)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if Field::same(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::LevelMismatch)
        }
    }

    fn with(&self, value: u64) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            value,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let v = self.field.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(self.with(v))
    }

    pub fn pow(&self, n: &BigUint) -> FieldElement {
        self.with(self.field.pow_big(self.value, n))
    }

    pub fn quadratic_character(&self) -> Result<i8> {
        self.field.quadratic_character(self.value)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && Field::same(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

/// Applies `op`. Unary operations ignore `b`.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: &FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b),
        FieldOp::Neg => Ok(a.neg()),
        FieldOp::Inv => a.inv(),
        FieldOp::Pow(n) => Ok(a.pow(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_small_towers() {
        let t = FieldTower::build(2, 1, 1).unwrap();
        assert_eq!(t.top().order(), 2);
        let t = FieldTower::build(3, 1, 2).unwrap();
        assert_eq!(t.top().order(), 9);
        assert_eq!(t.top_modulus(), &[1, 0, 1]);
        let t = FieldTower::build(3, 2, 2).unwrap();
        assert_eq!(t.q(), 9);
        assert_eq!(t.top().order(), 81);
        assert_eq!(t.top().elements().count(), 81);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(FieldTower::build(4, 1, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FieldTower::build_with_ceiling(3, 2, 3, 700),
            Err(Error::CeilingExceeded { .. })
        ));
        assert!(FieldTower::build(3, 0, 1).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.neg(1), 2);
        assert_eq!(f.inv(2), Some(2));
        assert_eq!(f.inv(0), None);
        assert_eq!(f.div(1, 0), Err(Error::DivisionByZero));
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn quotient_square_of_generator() {
        // F_9 = F_3[y]/(y^2+1): y*y = -1 = 2
        let t = FieldTower::build(3, 1, 2).unwrap();
        let y = t.top().generator_class();
        assert_eq!(y, 3);
        assert_eq!(t.top().mul(y, y), 2);
    }

    #[test]
    fn big_exponent_and_group_order() {
        let t = FieldTower::build(3, 2, 2).unwrap();
        let top = t.top();
        let n = BigUint::from(top.order() - 1);
        for a in 1..top.order() {
            assert_eq!(top.pow_big(a, &n), 1);
        }
        let huge = BigUint::from(u64::MAX) * BigUint::from(u64::MAX) + 3u32;
        assert_eq!(
            top.pow_big(7, &huge),
            top.pow(7, 3 + ((u64::MAX as u128 * u64::MAX as u128) % 80) as u64)
        );
    }

    #[test]
    fn frobenius_and_subfields() {
        let t = FieldTower::build(3, 1, 4).unwrap();
        let y = t.top().generator_class();
        assert_ne!(t.frobenius(y, 2), y);
        assert!(t.generates_top(y));
        for a in t.top().elements() {
            assert_eq!(t.frobenius(a, 4), a);
        }
        let in_f9 = t.top().elements().filter(|&a| t.in_subfield(a, 2)).count();
        assert_eq!(in_f9, 9);
        let in_f3 = t.top().elements().filter(|&a| t.in_subfield(a, 1)).count();
        assert_eq!(in_f3, 3);
        for c in t.mid().elements() {
            let c = t.embed_base(c).unwrap();
            assert_eq!(t.frobenius(c, 1), c);
        }
    }

    #[test]
    fn character_counts_and_values() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.quadratic_character(0).unwrap(), 0);
        assert_eq!(f3.quadratic_character(2).unwrap(), -1);
        let t = FieldTower::build(3, 1, 2).unwrap();
        let squares = t
            .top()
            .elements()
            .filter(|&a| t.top().quadratic_character(a).unwrap() == 1)
            .count();
        assert_eq!(squares, 4);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.quadratic_character(1), Err(Error::EvenCharacteristic));
    }

    #[test]
    fn log_tables_agree_with_structural() {
        let t = FieldTower::build(3, 1, 6).unwrap();
        let top = t.top();
        let samples: Vec<(u64, u64)> = (0..200)
            .map(|i| ((i * 37 + 5) % 729, (i * 101 + 11) % 729))
            .collect();
        let before: Vec<_> = samples
            .iter()
            .map(|&(a, b)| {
                (
                    top.mul(a, b),
                    top.pow(a, b),
                    top.quadratic_character(a).unwrap(),
                )
            })
            .collect();
        assert!(top.ensure_tables());
        let after: Vec<_> = samples
            .iter()
            .map(|&(a, b)| {
                (
                    top.mul(a, b),
                    top.pow(a, b),
                    top.quadratic_character(a).unwrap(),
                )
            })
            .collect();
        assert_eq!(before, after);
    }

    #[test]
    fn text_form_round_trip() {
        let t = FieldTower::build(3, 2, 2).unwrap();
        let top = t.top();
        let s = top.format(top.generator_class());
        assert_eq!(s, "[[0,0],[1,0]]");
        assert_eq!(top.parse(&s).unwrap(), top.generator_class());
        assert_eq!(top.parse("-1").unwrap(), 2);
        assert!(top.parse("[1,2").is_err());
        let f27 = FieldTower::build(3, 1, 3).unwrap();
        assert_eq!(f27.top().parse("[1,0,2]").unwrap(), 1 + 2 * 9);
    }

    #[test]
    fn element_wrapper_checks_levels() {
        let t = FieldTower::build(3, 2, 2).unwrap();
        let a = FieldElement::new(t.mid(), 4).unwrap();
        let b = FieldElement::new(t.top(), 4).unwrap();
        assert_eq!(a.add(&b), Err(Error::LevelMismatch));
        let zero = FieldElement::new(t.mid(), 0).unwrap();
        assert_eq!(
            field_arith(&a, &zero, &FieldOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            field_arith(&zero, &zero, &FieldOp::Inv),
            Err(Error::DivisionByZero)
        );
        let inv = field_arith(&a, &a, &FieldOp::Inv).unwrap();
        assert_eq!(a.mul(&inv).unwrap().value(), 1);
    }
}
