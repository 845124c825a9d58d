//! Counting monic weakly 2-superirreducible polynomials `s_2(q, d)`.
//!
//! Three independent routes are provided and must agree exactly:
//! - [`s2_formula`]: Möbius sieve over subfields of the shift-product sums
//!   `T(q, e) = Σ_{α ∈ F_{q^e}} Π_{c ∈ F_q} (1 - χ(α + c))`;
//! - [`s2_roots`]: count field generators `α ∈ F_{q^d}` with every `α + c` a
//!   non-square, divided by `d`;
//! - [`s2_bruteforce`]: exhaustive test of every monic irreducible of degree `d`.
//!
//! All arithmetic is exact; the final divisions assert divisibility.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::largeq_vanishing;
use crate::error::{Error, Result};
use crate::field::FieldTower;
use crate::numtheory;
use crate::poly::{enumerate_monic, is_irreducible, monic_at, monic_count};
use crate::superirr::{test_weak_k_naive, NaiveOptions};

pub use crate::numtheory::mobius;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Formula,
    Roots,
    Bruteforce,
    TheoremZero,
    /// `s_1` by the Möbius formula.
    Gauss,
    /// `s_1` by enumerating irreducibles.
    Enumeration,
}

impl CountMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMethod::Formula => "formula",
            CountMethod::Roots => "roots",
            CountMethod::Bruteforce => "bruteforce",
            CountMethod::TheoremZero => "theorem_zero",
            CountMethod::Gauss => "gauss",
            CountMethod::Enumeration => "enumeration",
        }
    }
}

/// Method selection for [`s2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum S2Method {
    Auto,
    Formula,
    Roots,
    Bruteforce,
}

/// One computed count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRecord {
    pub q: u64,
    pub d: u32,
    pub k: u32,
    pub method: CountMethod,
    #[serde(with = "crate::serde_text")]
    pub value: BigUint,
    /// `q^d / (d·2^q)` for `k = 2`.
    #[serde(with = "crate::serde_text::option", default)]
    pub main_term: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub moduli: Vec<String>,
    pub elapsed: f64,
}

impl CountRecord {
    fn new(
        q: u64,
        d: u32,
        k: u32,
        method: CountMethod,
        value: BigUint,
        moduli: Vec<String>,
        start: Instant,
    ) -> Self {
        CountRecord {
            q,
            d,
            k,
            method,
            value,
            main_term: (k == 2).then(|| expected_main_term(q, d)),
            reason: None,
            moduli,
            elapsed: start.elapsed().as_secs_f64(),
        }
    }
}

/// An autocorrelation `a_{q^e}(U) = Σ_β Π_{u ∈ U} χ(β + u)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutocorrResult {
    pub q: u64,
    pub e: u32,
    pub offsets: Vec<String>,
    pub value: i64,
}

/// Tower `F_p → F_q → F_{q^e}` for a prime power `q`.
pub fn tower_for(q: u64, e: u32) -> Result<FieldTower> {
    let (p, ell) = numtheory::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    FieldTower::build(p, ell, e)
}

fn require_odd_even(q: u64, d: u32) -> Result<()> {
    if numtheory::prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristic);
    }
    if d == 0 || d % 2 == 1 {
        return Err(Error::OddDegree(d as usize));
    }
    Ok(())
}

/// `q^d / (d·2^q)`.
pub fn expected_main_term(q: u64, d: u32) -> BigRational {
    let num = BigInt::from(q).pow(d);
    let den = BigInt::from(d) << (q as usize);
    BigRational::new(num, den)
}

/// `s_1(q, d) = (1/d) Σ_{e | d} μ(d/e) q^e`.
pub fn gauss_s1(q: u64, d: u32) -> Result<BigUint> {
    if numtheory::prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let mut sum = BigInt::zero();
    for e in numtheory::divisors(d as u64) {
        sum += BigInt::from(mobius(d as u64 / e)) * BigInt::from(q).pow(e as u32);
    }
    let (value, rem) = sum.div_rem(&BigInt::from(d));
    if !rem.is_zero() {
        return Err(Error::Invariant("Gauss sum not divisible by d".into()));
    }
    value
        .to_biguint()
        .ok_or_else(|| Error::Invariant("negative irreducible count".into()))
}

/// Number of monic irreducibles of degree `d` over `F_q`, by enumeration.
pub fn s1_enumeration(q: u64, d: u32) -> Result<u64> {
    let tower = tower_for(q, 1)?;
    let field = tower.mid();
    let total = monic_count(field, d as usize)?;
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    Ok((0..total)
        .into_par_iter()
        .filter(|&i| is_irreducible(&monic_at(field, d as usize, i)).unwrap_or(false))
        .count() as u64)
}

/// `s_1(q, d)` as a record, by formula or enumeration.
pub fn s1(q: u64, d: u32, method: CountMethod) -> Result<CountRecord> {
    let start = Instant::now();
    let tower = tower_for(q, 1)?;
    let value = match method {
        CountMethod::Enumeration => BigUint::from(s1_enumeration(q, d)?),
        CountMethod::Gauss => gauss_s1(q, d)?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "{} does not count s_1",
                other.as_str()
            )));
        }
    };
    Ok(CountRecord::new(
        q,
        d,
        1,
        method,
        value,
        tower.moduli_text(),
        start,
    ))
}

fn validate_offsets(tower: &FieldTower, offsets: &[u64]) -> Result<()> {
    if tower.q().is_multiple_of(2) {
        return Err(Error::EvenCharacteristic);
    }
    if offsets.is_empty() {
        return Err(Error::InvalidArgument("offset set must be nonempty".into()));
    }
    let distinct: BTreeSet<_> = offsets.iter().collect();
    if distinct.len() != offsets.len() {
        return Err(Error::InvalidArgument("offsets must be distinct".into()));
    }
    for &u in offsets {
        tower.embed_base(u)?;
    }
    Ok(())
}

/// `a_{q^e}(U)` on the top level of `tower`; `U ⊆ F_q` given by indices.
pub fn autocorrelation(tower: &FieldTower, offsets: &[u64]) -> Result<AutocorrResult> {
    validate_offsets(tower, offsets)?;
    let top = tower.top();
    top.ensure_tables();
    let value: i64 = top
        .elements()
        .into_par_iter()
        .map(|beta| {
            let mut prod = 1i64;
            for &u in offsets {
                let x = top
                    .quadratic_character(top.add(beta, u))
                    .expect("odd field") as i64;
                prod *= x;
                if prod == 0 {
                    break;
                }
            }
            prod
        })
        .sum();
    Ok(AutocorrResult {
        q: tower.q(),
        e: tower.e(),
        offsets: offsets.iter().map(|&u| tower.mid().format(u)).collect(),
        value,
    })
}

/// [`autocorrelation`] on the default tower for `(q, e)`.
pub fn autocorrelation_q(q: u64, e: u32, offsets: &[u64]) -> Result<AutocorrResult> {
    autocorrelation(&tower_for(q, e)?, offsets)
}

/// `T(q, e) = Σ_{α ∈ F_{q^e}} Π_{c ∈ F_q} (1 - χ(α + c))` in one pass.
/// Each product is 0 or a power of two; a histogram of exponents keeps the sum exact.
pub fn shift_product_sum(tower: &FieldTower) -> Result<BigUint> {
    if tower.q().is_multiple_of(2) {
        return Err(Error::EvenCharacteristic);
    }
    let top = tower.top();
    let q = tower.q();
    top.ensure_tables();
    let hist = top
        .elements()
        .into_par_iter()
        .fold(
            || vec![0u64; q as usize + 1],
            |mut hist, alpha| {
                let mut twos = 0usize;
                for c in 0..q {
                    match top
                        .quadratic_character(top.add(alpha, c))
                        .expect("odd field")
                    {
                        1 => return hist,
                        -1 => twos += 1,
                        _ => {}
                    }
                }
                hist[twos] += 1;
                hist
            },
        )
        .reduce(
            || vec![0u64; q as usize + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist
        .into_iter()
        .enumerate()
        .map(|(j, n)| BigUint::from(n) << j)
        .sum())
}

/// [`shift_product_sum`] on the default tower for `(q, e)`.
pub fn shift_product_sum_q(q: u64, e: u32) -> Result<BigUint> {
    shift_product_sum(&tower_for(q, e)?)
}

/// `q^e + Σ_{∅ ≠ U ⊆ F_q} (-1)^{|U|} a_{q^e}(U)`, the subset expansion of
/// `T(q, e)`. Exponential in `q`; a validation path for small `q` only.
pub fn shift_product_sum_by_subsets(tower: &FieldTower) -> Result<BigInt> {
    let q = tower.q();
    if q > 16 {
        return Err(Error::InvalidArgument(format!(
            "subset expansion over F_{q} is too large"
        )));
    }
    let mut total = BigInt::from(tower.top().order());
    for mask in 1u32..(1 << q) {
        let offsets: Vec<u64> = (0..q).filter(|&u| mask >> u & 1 == 1).collect();
        let a = autocorrelation(tower, &offsets)?.value;
        if offsets.len().is_multiple_of(2) {
            total += a;
        } else {
            total -= a;
        }
    }
    Ok(total)
}

/// Subfield degrees `e | d` with `d/e` odd and `μ(d/e) ≠ 0`, with their sign.
fn formula_subfields(d: u32) -> Vec<(u64, i32)> {
    numtheory::divisors(d as u64)
        .into_iter()
        .filter(|e| (d as u64 / e) % 2 == 1)
        .map(|e| (e, mobius(d as u64 / e)))
        .filter(|&(_, mu)| mu != 0)
        .collect()
}

/// The moduli text a record computed by `method` carries; used to check a
/// stored record against the current field representation.
pub fn record_moduli(q: u64, d: u32, method: CountMethod) -> Result<Vec<String>> {
    match method {
        CountMethod::Formula => {
            let mut moduli = Vec::new();
            for (e, _) in formula_subfields(d) {
                let tower = tower_for(q, e as u32)?;
                moduli.extend(
                    tower
                        .moduli_text()
                        .into_iter()
                        .map(|m| format!("e={e};{m}")),
                );
            }
            Ok(moduli)
        }
        CountMethod::Roots => Ok(tower_for(q, d)?.moduli_text()),
        CountMethod::Bruteforce | CountMethod::Gauss | CountMethod::Enumeration => {
            Ok(tower_for(q, 1)?.moduli_text())
        }
        CountMethod::TheoremZero => Ok(Vec::new()),
    }
}

/// `s_2(q, d)` for odd `q`, even `d` via the Möbius-sieved shift-product sums
/// over the subfields `F_{q^e}` with `d/e` odd, divided by `d·2^q`.
pub fn s2_formula(q: u64, d: u32) -> Result<CountRecord> {
    require_odd_even(q, d)?;
    let start = Instant::now();
    let mut sum = BigInt::zero();
    let mut moduli = Vec::new();
    for (e, mu) in formula_subfields(d) {
        let tower = tower_for(q, e as u32)?;
        let t = BigInt::from(shift_product_sum(&tower)?);
        sum += BigInt::from(mu) * t;
        moduli.extend(
            tower
                .moduli_text()
                .into_iter()
                .map(|m| format!("e={e};{m}")),
        );
    }
    let divisor = BigInt::from(d) << (q as usize);
    let (value, rem) = sum.div_rem(&divisor);
    if !rem.is_zero() || value.is_negative() {
        return Err(Error::Invariant(format!(
            "sieved sum {sum} is not a nonnegative multiple of {divisor}"
        )));
    }
    let value = value.to_biguint().expect("nonnegative");
    Ok(CountRecord::new(
        q,
        d,
        2,
        CountMethod::Formula,
        value,
        moduli,
        start,
    ))
}

/// Number of `α ∈ F_{q^d}` generating `F_{q^d}` with `χ(α + c) = -1` for all `c ∈ F_q`.
pub fn count_nonsquare_shift_generators(tower: &FieldTower) -> Result<u64> {
    if tower.q().is_multiple_of(2) {
        return Err(Error::EvenCharacteristic);
    }
    let top = tower.top();
    let q = tower.q();
    top.ensure_tables();
    Ok(top
        .elements()
        .into_par_iter()
        .filter(|&alpha| {
            (0..q).all(|c| top.quadratic_character(top.add(alpha, c)) == Ok(-1))
                && tower.generates_top(alpha)
        })
        .count() as u64)
}

/// `s_2(q, d)` by counting roots: every qualifying generator is one of the `d`
/// roots of a 2-superirreducible `f`.
pub fn s2_roots(q: u64, d: u32) -> Result<CountRecord> {
    require_odd_even(q, d)?;
    let start = Instant::now();
    let tower = tower_for(q, d)?;
    let count = count_nonsquare_shift_generators(&tower)?;
    if count % d as u64 != 0 {
        return Err(Error::Invariant(format!(
            "root count {count} is not divisible by {d}"
        )));
    }
    Ok(CountRecord::new(
        q,
        d,
        2,
        CountMethod::Roots,
        BigUint::from(count / d as u64),
        tower.moduli_text(),
        start,
    ))
}

/// `s_2(q, d)` by running the exhaustive tester on every monic irreducible of
/// degree `d`. Valid for every `q` and `d`; `budget` applies per polynomial.
pub fn s2_bruteforce(q: u64, d: u32, budget: u64) -> Result<CountRecord> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let start = Instant::now();
    let tower = tower_for(q, 1)?;
    let field = tower.mid();
    let total = enumerate_monic(field, d as usize)?.len_remaining();
    let opts = NaiveOptions {
        translation_reduction: false,
        budget,
    };
    let count = (0..total)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let f = monic_at(field, d as usize, i);
            if !is_irreducible(&f)? {
                return Ok(0);
            }
            Ok(test_weak_k_naive(&f, 2, opts)?.holds as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(CountRecord::new(
        q,
        d,
        2,
        CountMethod::Bruteforce,
        BigUint::from(count),
        tower.moduli_text(),
        start,
    ))
}

/// Reason a theorem forces `s_2(q, d) = 0`, if one applies.
pub fn theorem_zero_reason(q: u64, d: u32) -> Option<&'static str> {
    if q.is_multiple_of(2) {
        Some("characteristic 2")
    } else if d % 2 == 1 {
        Some("odd degree")
    } else if largeq_vanishing(q, d) {
        Some("q > (d-1)^2")
    } else {
        None
    }
}

/// `s_2(q, d)`. `Auto` applies the vanishing theorems and otherwise the
/// formula; explicit methods always compute.
pub fn s2(q: u64, d: u32, method: S2Method, budget: u64) -> Result<CountRecord> {
    if numtheory::prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    match method {
        S2Method::Auto => match theorem_zero_reason(q, d) {
            Some(reason) => {
                let start = Instant::now();
                let mut rec = CountRecord::new(
                    q,
                    d,
                    2,
                    CountMethod::TheoremZero,
                    BigUint::zero(),
                    Vec::new(),
                    start,
                );
                rec.reason = Some(reason.to_string());
                Ok(rec)
            }
            None => s2_formula(q, d),
        },
        S2Method::Formula => s2_formula(q, d),
        S2Method::Roots => s2_roots(q, d),
        S2Method::Bruteforce => s2_bruteforce(q, d, budget),
    }
}

impl CountRecord {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn value_is(&self, v: u64) -> bool {
        self.value == BigUint::from(v)
    }
}
