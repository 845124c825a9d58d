use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPoly;
use crate::error::{Error, Result};

/// Parses a human-written integer polynomial such as `x^4-12x^3+2x^2-39x+71`.
/// Any single ASCII letter serves as the variable; `*` between coefficient and
/// variable is optional and repeated powers are summed.
pub fn parse_integer_poly(text: &str) -> Result<IntPoly> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = s.as_bytes();
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut var: Option<u8> = None;
    let mut i = 0;
    while i < bytes.len() {
        let mut negative = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            negative = bytes[i] == b'-';
            i += 1;
        } else if i > 0 {
            return Err(Error::Parse(format!(
                "expected '+' or '-' at offset {i} in {text:?}"
            )));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coef: BigInt = if i > start {
            s[start..i]
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer in {text:?}")))?
        } else {
            BigInt::from(1)
        };
        let had_number = i > start;
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let mut power = 0usize;
        if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
            let v = bytes[i];
            match var {
                Some(w) if w != v => {
                    return Err(Error::Parse(format!("mixed variables in {text:?}")));
                }
                _ => var = Some(v),
            }
            i += 1;
            power = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let ps = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                power = s[ps..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
            }
        } else if !had_number {
            return Err(Error::Parse(format!("dangling sign in {text:?}")));
        }
        if negative {
            coef = -coef;
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += coef;
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_human_forms() {
        let f = parse_integer_poly("x^4 - 12x^3 + 2x^2 - 39x + 71").unwrap();
        assert_eq!(f, IntPoly::from_i64(&[71, -39, 2, -12, 1]));
        let g = parse_integer_poly("3*t^2+t").unwrap();
        assert_eq!(g, IntPoly::from_i64(&[0, 1, 3]));
        assert_eq!(parse_integer_poly("-x+x").unwrap(), IntPoly::default());
        assert_eq!(parse_integer_poly("5").unwrap(), IntPoly::from_i64(&[5]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_integer_poly("").is_err());
        assert!(parse_integer_poly("x^2+").is_err());
        assert!(parse_integer_poly("x+y").is_err());
        assert!(parse_integer_poly("2x3").is_err());
    }
}
