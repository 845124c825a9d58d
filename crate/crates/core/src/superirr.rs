//! Deciders and witness constructors for weak k-superirreducibility.
//!
//! Every negative verdict carries a substitution `g` of degree exactly `k`
//! together with the factor-degree multiset of `f(g(t))`, recomputed through
//! squarefree decomposition and distinct-degree factorization before the
//! verdict is returned.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldTower;
use crate::numtheory;
use crate::poly::{
    compose_raw, factor_degree_multiset, is_irreducible, FactorDegreeMultiset, Poly,
};

/// Default cap on the estimated coefficient operations of a naive search.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Naive,
    Quadshift,
    Char2,
    OddDegree,
    Highk,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Quadshift => "quadshift",
            Method::Char2 => "char2",
            Method::OddDegree => "odd_degree",
            Method::Highk => "highk",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    /// Factor degrees of `f(g(t))` for the witness `g`.
    pub factor_degrees: FactorDegreeMultiset,
    /// The shift `c ∈ F_q` with `α + c` a square, for the root-based test.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_shift: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperirrVerdict {
    pub holds: bool,
    pub k: usize,
    pub method: Method,
    pub witness: Option<Poly>,
    pub evidence: Option<Evidence>,
}

impl SuperirrVerdict {
    fn holds(k: usize, method: Method) -> Self {
        SuperirrVerdict {
            holds: true,
            k,
            method,
            witness: None,
            evidence: None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdict serializes")
    }
}

/// Options for the exhaustive tester.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NaiveOptions {
    /// Only enumerate substitutions whose `t^(k-1)` coefficient vanishes.
    /// Sound because `f(g(t))` and `f(g(t+v))` are irreducible together; used
    /// only when `p ∤ k`, where every translation class has such a member.
    pub translation_reduction: bool,
    pub budget: u64,
}

impl Default for NaiveOptions {
    fn default() -> Self {
        NaiveOptions {
            translation_reduction: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Builds a negative verdict after confirming that `f∘g` splits.
fn reducible_verdict(
    f: &Poly,
    g: Poly,
    k: usize,
    method: Method,
    failing_shift: Option<String>,
) -> Result<SuperirrVerdict> {
    if g.degree() != Some(k) {
        return Err(Error::Invariant(format!(
            "{} witness has degree {:?}, expected {k}",
            method.as_str(),
            g.degree()
        )));
    }
    let h = f.compose(&g)?;
    let degrees = factor_degree_multiset(&h)?;
    if degrees.factor_count() < 2 {
        return Err(Error::Invariant(format!(
            "{} witness {} does not make f reducible",
            method.as_str(),
            g
        )));
    }
    Ok(SuperirrVerdict {
        holds: false,
        k,
        method,
        witness: Some(g),
        evidence: Some(Evidence {
            factor_degrees: degrees,
            failing_shift,
        }),
    })
}

fn require_irreducible(f: &Poly) -> Result<usize> {
    if !is_irreducible(f)? {
        return Err(Error::Reducible);
    }
    Ok(f.degree().unwrap_or(0))
}

/// Rough coefficient-operation count of one irreducibility test at degree `n`.
fn irreducibility_cost(order: u64, n: usize) -> u128 {
    let bits = (64 - order.leading_zeros()).max(1) as u128;
    (n as u128).pow(3) * bits
}

/// Estimated work of [`test_weak_k_naive`] for a degree-`d` input.
pub fn naive_cost(order: u64, d: usize, k: usize, reduced: bool) -> u128 {
    let mut candidates =
        (order as u128 - 1).saturating_mul((order as u128).saturating_pow(k as u32));
    if reduced {
        candidates /= order as u128;
    }
    candidates.saturating_mul(irreducibility_cost(order, d * k))
}

/// Exhaustive test over every `g` of degree exactly `k`: all nonzero leading
/// coefficients (outer loop, ascending) and all lower coefficients (constant
/// term varying fastest). Returns the first witness in that order.
pub fn test_weak_k_naive(f: &Poly, k: usize, opts: NaiveOptions) -> Result<SuperirrVerdict> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let d = require_irreducible(f)?;
    let field = f.field();
    let q = field.order();
    let p = field.characteristic();
    let reduce = opts.translation_reduction && !(k as u64).is_multiple_of(p);
    let cost = naive_cost(q, d, k, reduce);
    if cost > opts.budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: cost.to_string(),
            budget: opts.budget,
        });
    }
    let free = if reduce { k - 1 } else { k };
    let lower_count = q.pow(free as u32);
    let mut g = vec![0u64; k + 1];
    for lead in 1..q {
        g[k] = lead;
        for idx in 0..lower_count {
            let mut rest = idx;
            for c in g.iter_mut().take(free) {
                *c = rest % q;
                rest /= q;
            }
            let h = Poly::from_raw(Arc::clone(field), compose_raw(field, f.coeffs(), &g));
            if !is_irreducible(&h)? {
                let witness = Poly::from_raw(Arc::clone(field), g.clone());
                return reducible_verdict(f, witness, k, Method::Naive, None);
            }
        }
    }
    Ok(SuperirrVerdict::holds(k, Method::Naive))
}

/// Root-based test for odd `q` and even `d`: with `α` a root of `f` in
/// `F_{q^d}`, `f` is 2-superirreducible iff `α + c` is a non-square for all
/// `c ∈ F_q`. On failure the witness is `g = t² - c`.
pub fn test_2_superirr_roots(f: &Poly) -> Result<SuperirrVerdict> {
    let field = f.field();
    if field.characteristic() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let d = f.degree().ok_or(Error::ConstantPolynomial)?;
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    let tower = FieldTower::with_top_modulus(f)?;
    let top = tower.top();
    let alpha = top.generator_class();
    for c in tower.mid().elements() {
        let shifted = top.add(alpha, tower.embed_base(c)?);
        if top.quadratic_character(shifted)? != -1 {
            let g = Poly::from_raw(Arc::clone(field), vec![field.neg(c), 0, 1]);
            return reducible_verdict(f, g, 2, Method::Quadshift, Some(field.format(c)));
        }
    }
    Ok(SuperirrVerdict::holds(2, Method::Quadshift))
}

/// Weak 2-superirreducibility by case: characteristic 2 and odd degree fail
/// with explicit witnesses, the remaining case uses the root-based test.
pub fn test_2_superirr(f: &Poly) -> Result<SuperirrVerdict> {
    let d = require_irreducible(f)?;
    let field = f.field();
    if field.characteristic() == 2 {
        let (g, _) = char_p_witness(f)?;
        return reducible_verdict(f, g, 2, Method::Char2, None);
    }
    if d % 2 == 1 {
        let g = odd_degree_witness(f)?;
        return reducible_verdict(f, g, 2, Method::OddDegree, None);
    }
    test_2_superirr_roots(f)
}

/// `g(t) = t + t^(k-d)·f(t)`, of degree `k`, for which `f` divides `f(g(t))`.
pub fn witness_highk(f: &Poly, k: usize) -> Result<Poly> {
    let d = f.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::InvalidArgument(
            "witness_highk needs deg f >= 2".into(),
        ));
    }
    if k < d {
        return Err(Error::InvalidArgument(format!(
            "k = {k} is below deg f = {d}"
        )));
    }
    let field = f.field();
    let shifted = Poly::monomial(field, 1, k - d).mul(f)?;
    let g = Poly::t(field).add(&shifted)?;
    let (_, r) = f.compose(&g)?.divrem(f)?;
    if !r.is_zero() || g.degree() != Some(k) {
        return Err(Error::Invariant("f does not divide f(t + t^r f(t))".into()));
    }
    Ok(g)
}

/// Over a field of characteristic `p` with `p^m` elements, returns `(t^p, h)`
/// where `h` has coefficients `a_j^(p^(m-1))`, so that `f(t^p) = h(t)^p`.
pub fn char_p_witness(f: &Poly) -> Result<(Poly, Poly)> {
    let field = f.field();
    let p = field.characteristic();
    let root_exp = p.pow(field.absolute_degree() - 1);
    let h_coeffs = f.coeffs().iter().map(|&a| field.pow(a, root_exp)).collect();
    let h = Poly::new(Arc::clone(field), h_coeffs)?;
    let g = Poly::monomial(field, 1, p as usize);
    if f.compose(&g)? != h.pow(p as u32) {
        return Err(Error::Invariant("f(t^p) differs from h(t)^p".into()));
    }
    Ok((g, h))
}

/// For odd `q` and odd `d`, one of `t²` or `b·t²` (with `b` the first
/// non-square of `F_q`) makes `f(g(t))` reducible.
pub fn odd_degree_witness(f: &Poly) -> Result<Poly> {
    let field = f.field();
    if field.characteristic() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let d = require_irreducible(f)?;
    if d % 2 == 0 {
        return Err(Error::EvenDegree(d));
    }
    let b = field
        .elements()
        .find(|&b| field.quadratic_character(b) == Ok(-1))
        .ok_or_else(|| Error::Invariant("no non-square in an odd field".into()))?;
    for lead in [1, b] {
        let g = Poly::monomial(field, lead, 2);
        if !is_irreducible(&f.compose(&g)?)? {
            return Ok(g);
        }
    }
    Err(Error::Invariant("neither t^2 nor b t^2 splits f".into()))
}

/// Returns `(naive, root_based)`: irreducibility of `f(g(t))` over `F_q`, and
/// of `g(t) - α` over `F_{q^d}` where `α` is a root of `f`. They always agree.
pub fn extension_lemma_check(f: &Poly, g: &Poly) -> Result<(bool, bool)> {
    if g.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let naive = is_irreducible(&f.compose(g)?)?;
    let tower = FieldTower::with_top_modulus(f)?;
    let top = tower.top();
    let lifted = g.embed(top)?;
    let alpha = Poly::constant(top, top.generator_class());
    let root_based = is_irreducible(&lifted.sub(&alpha)?)?;
    Ok((naive, root_based))
}

/// Decides `k` without enumeration when a structural argument applies.
fn fast_verdict(f: &Poly, d: usize, k: usize) -> Result<Option<SuperirrVerdict>> {
    let field = f.field();
    let p = field.characteristic();
    if d == 1 && k >= 2 {
        // f = a(x - r): g = t^k + r gives a·t^k
        let r = field.neg(field.div(f.coeff(0), f.coeff(1))?);
        let mut g = vec![0u64; k + 1];
        g[0] = r;
        g[k] = 1;
        let g = Poly::from_raw(Arc::clone(field), g);
        return reducible_verdict(f, g, k, Method::Highk, None).map(Some);
    }
    if k >= d && d >= 2 {
        let g = witness_highk(f, k)?;
        return reducible_verdict(f, g, k, Method::Highk, None).map(Some);
    }
    if k as u64 == p {
        let (g, _) = char_p_witness(f)?;
        return reducible_verdict(f, g, k, Method::Char2, None).map(Some);
    }
    if k == 2 && p != 2 {
        return if d % 2 == 1 {
            let g = odd_degree_witness(f)?;
            reducible_verdict(f, g, 2, Method::OddDegree, None).map(Some)
        } else {
            test_2_superirr_roots(f).map(Some)
        };
    }
    Ok(None)
}

/// General dispatcher. Structural shortcuts first, then failing divisors
/// `ℓ | k` (a degree-`ℓ` witness `h` lifts to `h(t^(k/ℓ))`), then exhaustive search.
pub fn test_weak_k(f: &Poly, k: usize, opts: NaiveOptions) -> Result<SuperirrVerdict> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let d = require_irreducible(f)?;
    if let Some(v) = fast_verdict(f, d, k)? {
        return Ok(v);
    }
    for l in numtheory::divisors(k as u64) {
        let l = l as usize;
        if l == 1 || l == k {
            continue;
        }
        if let Some(v) = fast_verdict(f, d, l)? {
            if let Some(h) = v.witness.filter(|_| !v.holds) {
                let inner = Poly::monomial(f.field(), 1, k / l);
                let g = h.compose(&inner)?;
                return reducible_verdict(f, g, k, v.method, None);
            }
        }
    }
    test_weak_k_naive(f, k, opts)
}
