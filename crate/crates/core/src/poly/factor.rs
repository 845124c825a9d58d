//! Irreducibility testing and deterministic factor-degree extraction
//! (squarefree decomposition followed by distinct-degree factorization).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{divrem_raw, gcd_raw, powmod_raw, rem_monic_in_place, sub_raw, Poly};
use crate::error::{Error, Result};
use crate::numtheory;

/// Degrees of the irreducible factors of a polynomial, with multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorDegreeMultiset(pub BTreeMap<usize, usize>);

impl FactorDegreeMultiset {
    /// Sum of degree·count; equals the degree of the factored polynomial.
    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|(d, c)| d * c).sum()
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn factor_count(&self) -> usize {
        self.0.values().sum()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factor_count() == 1
    }
}

impl std::fmt::Display for FactorDegreeMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(d, c)| format!("{d}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn t_mod(field: &crate::field::Field, m: &[u64]) -> Vec<u64> {
    let mut t = vec![0, 1];
    rem_monic_in_place(field, &mut t, m);
    t
}

/// `t^(Q^s) mod f` where `Q` is the order of the coefficient field.
pub fn frobenius_powmod(f: &Poly, s: u32) -> Result<Poly> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let field = f.field();
    let q = field.order();
    let mut x = t_mod(field, f.coeffs());
    for _ in 0..s {
        x = powmod_raw(field, &x, q, f.coeffs());
    }
    Ok(Poly::from_raw(Arc::clone(field), x))
}

/// Rabin's test: `f` of degree `d` is irreducible iff `t^(Q^d) ≡ t (mod f)`
/// and `gcd(t^(Q^(d/r)) - t, f) = 1` for every prime `r | d`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let d = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    let field = f.field();
    let m = f.monic()?;
    let m = m.coeffs();
    let q = field.order();
    let checkpoints: Vec<usize> = numtheory::prime_divisors(d as u64)
        .into_iter()
        .map(|r| d / r as usize)
        .collect();
    let t = t_mod(field, m);
    let mut x = t.clone();
    for i in 1..=d {
        x = powmod_raw(field, &x, q, m);
        if i < d && checkpoints.contains(&i) {
            let diff = sub_raw(field, &x, &t);
            if gcd_raw(field, &diff, m).len() > 1 {
                return Ok(false);
            }
        }
    }
    Ok(x == t)
}

fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic();
    let e = p.pow(field.absolute_degree() - 1);
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p as usize)
        .map(|&c| field.pow(c, e))
        .collect();
    Poly::from_raw(Arc::clone(field), coeffs)
}

fn exact_div(a: &Poly, b: &Poly) -> Poly {
    let (q, _) = divrem_raw(a.field(), a.coeffs(), b.coeffs());
    Poly::from_raw(Arc::clone(a.field()), q)
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree parts with multiplicities, sorted by multiplicity.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut out = sqf_inner(f);
    out.sort_by_key(|(_, m)| *m);
    Ok(out)
}

fn sqf_inner(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.field().characteristic() as usize;
    let mut out = Vec::new();
    let df = f.derivative();
    let mut c = f.gcd(&df).expect("same field");
    let mut w = exact_div(f, &c);
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c).expect("same field");
        let fac = exact_div(&w, &y);
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        c = exact_div(&c, &y);
        w = y;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root = pth_root(&c);
        out.extend(sqf_inner(&root).into_iter().map(|(g, m)| (g, m * p)));
    }
    out
}

/// Splits a monic squarefree polynomial into `(i, g_i)` where `g_i` is the
/// product of its irreducible factors of degree `i`.
pub fn distinct_degree_factorization(f: &Poly) -> Result<Vec<(usize, Poly)>> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.gcd(&f.derivative())?.degree() != Some(0) {
        return Err(Error::NotSquarefree);
    }
    Ok(ddf_unchecked(f))
}

fn ddf_unchecked(f: &Poly) -> Vec<(usize, Poly)> {
    let field = f.field();
    let q = field.order();
    let mut out = Vec::new();
    let mut rem = f.coeffs().to_vec();
    let mut x = t_mod(field, &rem);
    let mut i = 0;
    while rem.len() > 2 * (i + 1) {
        i += 1;
        x = powmod_raw(field, &x, q, &rem);
        let diff = sub_raw(field, &x, &[0, 1]);
        let g = gcd_raw(field, &diff, &rem);
        if g.len() > 1 {
            rem = divrem_raw(field, &rem, &g).0;
            rem_monic_in_place(field, &mut x, &rem);
            out.push((i, Poly::from_raw(Arc::clone(field), g)));
        }
    }
    if rem.len() > 1 {
        let deg = rem.len() - 1;
        out.push((deg, Poly::from_raw(Arc::clone(field), rem)));
    }
    out
}

/// Factor-degree multiset of any non-constant polynomial (scaled to monic).
pub fn factor_degree_multiset(f: &Poly) -> Result<FactorDegreeMultiset> {
    let f = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(_) => f.monic()?,
    };
    let mut map = BTreeMap::new();
    for (part, mult) in squarefree_decomposition(&f)? {
        for (i, g) in ddf_unchecked(&part) {
            let count = g.degree().unwrap_or(0) / i;
            *map.entry(i).or_insert(0) += count * mult;
        }
    }
    Ok(FactorDegreeMultiset(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FieldTower};
    use crate::poly::enumerate_monic;

    fn poly(p: u64, c: &[u64]) -> Poly {
        Poly::new(Field::prime(p).unwrap(), c.to_vec()).unwrap()
    }

    fn multiset(pairs: &[(usize, usize)]) -> FactorDegreeMultiset {
        FactorDegreeMultiset(pairs.iter().copied().collect())
    }

    #[test]
    fn frobenius_power() {
        // t^3 mod t^2+1 over F_3 is -t
        let f = poly(3, &[1, 0, 1]);
        assert_eq!(frobenius_powmod(&f, 1).unwrap().coeffs(), &[0, 2]);
        assert!(frobenius_powmod(&poly(5, &[0, 1]), 1).unwrap().is_zero());
        let g = poly(5, &[2, 3, 0, 1, 1]);
        let once = frobenius_powmod(&g, 1).unwrap();
        let twice = super::super::powmod_raw(g.field(), once.coeffs(), 5, g.coeffs());
        assert_eq!(twice, frobenius_powmod(&g, 2).unwrap().coeffs());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&poly(2, &[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&poly(2, &[1, 0, 1])).unwrap());
        assert!(is_irreducible(&poly(3, &[2, 0, 2, 0, 1])).unwrap());
        // non-monic input is scaled first
        assert!(is_irreducible(&poly(3, &[1, 0, 1, 0, 2])).unwrap());
        assert_eq!(
            is_irreducible(&poly(3, &[2])),
            Err(Error::ConstantPolynomial)
        );
    }

    #[test]
    fn squarefree_examples() {
        let r = squarefree_decomposition(&poly(3, &[1, 2, 1])).unwrap();
        assert_eq!(r, vec![(poly(3, &[1, 1]), 2)]);
        let r = squarefree_decomposition(&poly(2, &[1, 0, 1, 0, 1])).unwrap();
        assert_eq!(r, vec![(poly(2, &[1, 1, 1]), 2)]);
        let f = poly(5, &[1, 0, 1, 1]);
        assert_eq!(squarefree_decomposition(&f).unwrap(), vec![(f.clone(), 1)]);
        assert_eq!(
            squarefree_decomposition(&poly(3, &[1, 2])),
            Err(Error::NotMonic)
        );
    }

    #[test]
    fn squarefree_over_extension_in_char_p() {
        // (t^2 + y t + 1)^2 over F_4 has vanishing derivative
        let t = FieldTower::build(2, 1, 2).unwrap();
        let y = t.top().generator_class();
        let h = Poly::new(Arc::clone(t.top()), vec![1, y, 1]).unwrap();
        let f = h.mul(&h).unwrap();
        assert!(f.derivative().is_zero());
        let r = squarefree_decomposition(&f).unwrap();
        let product = r.iter().fold(Poly::one(t.top()), |acc, (g, m)| {
            acc.mul(&g.pow(*m as u32)).unwrap()
        });
        assert_eq!(product, f);
    }

    #[test]
    fn ddf_examples() {
        assert_eq!(
            factor_degree_multiset(&poly(2, &[0, 1, 1])).unwrap(),
            multiset(&[(1, 2)])
        );
        assert_eq!(
            factor_degree_multiset(&poly(3, &[2, 0, 2, 0, 1])).unwrap(),
            multiset(&[(4, 1)])
        );
        assert_eq!(
            distinct_degree_factorization(&poly(3, &[1, 2, 1])),
            Err(Error::NotSquarefree)
        );
        // (t^2+t+1)^2 (t+1)^3 over F_2
        let a = poly(2, &[1, 1, 1]).pow(2);
        let b = poly(2, &[1, 1]).pow(3);
        let f = a.mul(&b).unwrap();
        assert_eq!(
            factor_degree_multiset(&f).unwrap(),
            multiset(&[(1, 3), (2, 2)])
        );
    }

    #[test]
    fn rabin_agrees_with_factor_degrees_exhaustively() {
        for p in [2u64, 3, 5] {
            let field = Field::prime(p).unwrap();
            for d in 1..=4 {
                for f in enumerate_monic(&field, d).unwrap() {
                    let m = factor_degree_multiset(&f).unwrap();
                    assert_eq!(m.total_degree(), d);
                    assert_eq!(
                        is_irreducible(&f).unwrap(),
                        m.0 == BTreeMap::from([(d, 1)]),
                        "{f:?}"
                    );
                }
            }
        }
        let t = FieldTower::build(2, 2, 1).unwrap();
        for d in 1..=3 {
            for f in enumerate_monic(t.mid(), d).unwrap() {
                let m = factor_degree_multiset(&f).unwrap();
                assert_eq!(m.total_degree(), d);
                assert_eq!(is_irreducible(&f).unwrap(), m.is_irreducible());
            }
        }
    }
}
