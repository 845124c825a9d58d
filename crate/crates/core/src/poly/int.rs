use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Poly;
use crate::error::{Error, Result};
use crate::field::Field;

/// Polynomial with arbitrary-precision integer coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPoly {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `self(g(t))`.
    pub fn compose(&self, g: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::default();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&IntPoly::new(vec![c.clone()]));
        }
        acc
    }

    /// Coefficients reduced mod `p` and read in `field` (which has characteristic `p`).
    pub fn reduce(&self, field: &Arc<Field>) -> Result<Poly> {
        let p = BigInt::from(field.characteristic());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.mod_floor(&p)
                    .to_u64()
                    .ok_or_else(|| Error::Invariant("residue".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_raw(Arc::clone(field), coeffs))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            first = false;
            let a = c.abs();
            if !a.is_one() || i == 0 {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_arithmetic() {
        let f = IntPoly::from_i64(&[71, -39, 2, -12, 1]);
        assert_eq!(f.to_string(), "x^4-12x^3+2x^2-39x+71");
        let g = IntPoly::from_i64(&[0, 1, 3]);
        assert_eq!(f.compose(&g).degree(), Some(8));
        assert!(f.sub(&f).is_zero());
        let red = f.reduce(&Field::prime(3).unwrap()).unwrap();
        assert_eq!(red.coeffs(), &[2, 0, 2, 0, 1]);
    }
}
