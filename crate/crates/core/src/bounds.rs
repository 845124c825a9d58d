//! Exact checks of the inequalities governing `s_2(q, d)`.
//!
//! Bounds involving `√q` are compared after squaring both sides, so every
//! comparison is between integers or rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::counting::{autocorrelation, expected_main_term, tower_for};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    WeilAutocorr,
    Wan,
    Larged,
    Largeq,
}

/// One evaluated inequality `lhs ≤ rhs` (or `<` where the bound is strict).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: BoundName,
    pub parameters: BTreeMap<String, String>,
    #[serde(with = "crate::serde_text")]
    pub lhs: BigRational,
    #[serde(with = "crate::serde_text")]
    pub rhs: BigRational,
    pub strict: bool,
    pub holds: bool,
    /// `rhs - lhs`.
    #[serde(with = "crate::serde_text")]
    pub margin: BigRational,
}

impl BoundReport {
    fn new(
        name: BoundName,
        parameters: BTreeMap<String, String>,
        lhs: BigRational,
        rhs: BigRational,
        strict: bool,
    ) -> Self {
        let holds = if strict { lhs < rhs } else { lhs <= rhs };
        let margin = &rhs - &lhs;
        BoundReport {
            name,
            parameters,
            lhs,
            rhs,
            strict,
            holds,
            margin,
        }
    }
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// Weil-type bound `a_{q^e}(U)² ≤ (|U| - 1)²·q^e`.
pub fn check_weil_autocorr(q: u64, e: u32, offsets: &[u64]) -> Result<BoundReport> {
    let tower = tower_for(q, e)?;
    let a = autocorrelation(&tower, offsets)?;
    let n = offsets.len() as i64;
    let lhs = int(a.value) * int(a.value);
    let rhs = int((n - 1) * (n - 1)) * int(BigInt::from(q).pow(e));
    Ok(BoundReport::new(
        BoundName::WeilAutocorr,
        params(&[
            ("q", q.to_string()),
            ("e", e.to_string()),
            ("offsets", a.offsets.join(",")),
            ("a", a.value.to_string()),
        ]),
        lhs,
        rhs,
        false,
    ))
}

/// For each `α` generating `F_{q^d}`: `S(α)² ≤ (d-1)²·q` where
/// `S(α) = Σ_{c ∈ F_q} χ(α + c)`, and additionally `|S(α)| < q` whenever
/// `q > (d-1)²`. One report per generator, in element order.
pub fn check_wan_bound(q: u64, d: u32) -> Result<Vec<BoundReport>> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristic);
    }
    let tower = tower_for(q, d)?;
    let top = tower.top();
    top.ensure_tables();
    let strict_regime = largeq_vanishing(q, d);
    let dm1 = d as i64 - 1;
    let mut out = Vec::new();
    for alpha in top.elements() {
        if !tower.generates_top(alpha) {
            continue;
        }
        let s: i64 = (0..q)
            .map(|c| top.quadratic_character(top.add(alpha, c)).map(i64::from))
            .sum::<Result<i64>>()?;
        let mut report = BoundReport::new(
            BoundName::Wan,
            params(&[
                ("q", q.to_string()),
                ("d", d.to_string()),
                ("alpha", top.format(alpha)),
                ("S", s.to_string()),
            ]),
            int(s * s),
            int(dm1 * dm1) * int(q),
            false,
        );
        if strict_regime && (s.unsigned_abs() >= q) {
            report.holds = false;
        }
        out.push(report);
    }
    Ok(out)
}

/// `|s_2(q, d) - q^d/(d·2^q)| < (q/(2d))·q^(d/2)` for odd `q`, even `d`.
pub fn check_larged(q: u64, d: u32, s2_value: &BigInt) -> Result<BoundReport> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristic);
    }
    if d == 0 || d % 2 == 1 {
        return Err(Error::OddDegree(d as usize));
    }
    let lhs = (BigRational::from_integer(s2_value.clone()) - expected_main_term(q, d)).abs();
    let rhs =
        BigRational::new(BigInt::from(q), BigInt::from(2 * d)) * int(BigInt::from(q).pow(d / 2));
    Ok(BoundReport::new(
        BoundName::Larged,
        params(&[
            ("q", q.to_string()),
            ("d", d.to_string()),
            ("s2", s2_value.to_string()),
        ]),
        lhs,
        rhs,
        true,
    ))
}

/// Whether `q > (d-1)²`, the hypothesis under which `s_2(q, d) = 0`.
pub fn largeq_vanishing(q: u64, d: u32) -> bool {
    let dm1 = (d as u128).saturating_sub(1);
    q as u128 > dm1 * dm1
}

/// [`largeq_vanishing`] as a report comparing `(d-1)²` against `q`.
pub fn check_largeq(q: u64, d: u32) -> BoundReport {
    let dm1 = (d as i64 - 1).max(0);
    BoundReport::new(
        BoundName::Largeq,
        params(&[("q", q.to_string()), ("d", d.to_string())]),
        int(dm1 * dm1),
        int(q),
        true,
    )
}

/// True when every report holds.
pub fn all_hold(reports: &[BoundReport]) -> bool {
    reports.iter().all(|r| r.holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weil_examples() {
        let r = check_weil_autocorr(3, 1, &[2]).unwrap();
        assert!(r.holds && r.lhs == int(0) && r.rhs == int(0));
        for mask in 1u32..8 {
            let u: Vec<u64> = (0..3).filter(|&i| mask >> i & 1 == 1).collect();
            assert!(check_weil_autocorr(3, 2, &u).unwrap().holds);
        }
        let r = check_weil_autocorr(5, 2, &[1, 4]).unwrap();
        assert_eq!(r.lhs, int(1));
        assert_eq!(r.rhs, int(25));
    }

    #[test]
    fn wan_examples() {
        let r = check_wan_bound(3, 2).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.iter().all(|x| x.holds && x.lhs == int(1)));
        let r = check_wan_bound(3, 4).unwrap();
        assert_eq!(r.len(), 72);
        assert!(all_hold(&r));
        let r = check_wan_bound(11, 2).unwrap();
        assert!(all_hold(&r));
        assert!(r.iter().all(|x| x.parameters["S"] != "-11"));
    }

    #[test]
    fn larged_examples() {
        let r = check_larged(3, 2, &BigInt::from(0)).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, BigRational::new(9.into(), 16.into()));
        assert_eq!(r.rhs, BigRational::new(9.into(), 4.into()));
        assert!(check_larged(4, 2, &BigInt::from(0)).is_err());
    }

    #[test]
    fn largeq_hypothesis() {
        assert!(largeq_vanishing(11, 4));
        assert!(!largeq_vanishing(9, 4));
        assert!(largeq_vanishing(3, 2));
        assert!(check_largeq(11, 4).holds);
        assert!(!check_largeq(9, 4).holds);
    }
}
