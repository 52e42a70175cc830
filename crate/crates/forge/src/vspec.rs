//! Text syntax for insertion vectors and integer vectors.
//!
//! `"1,0 / s=1/2"` is `v = √(1/2)·(1, 0)`; without the `/ s=…` part `s = 1`.
//! Entries are Gaussian rationals such as `3`, `-1/2`, `2i`, `-i` or
//! `1/2+3/4 i`.

use std::str::FromStr;

use theta_forge_core::arith::{GaussianRational, Rational};
use theta_forge_core::lattice::InsertionVector;

use crate::ForgeError;

fn fail(input: &str, msg: &'static str) -> ForgeError {
    ForgeError::Parse { input: input.to_string(), msg }
}

fn parse_rational(s: &str, whole: &str) -> Result<Rational, ForgeError> {
    Rational::from_str(s.strip_prefix('+').unwrap_or(s)).map_err(|_| fail(whole, "expected a rational a/b"))
}

pub fn parse_gaussian(input: &str) -> Result<GaussianRational, ForgeError> {
    let t: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(GaussianRational::from_real(parse_rational(&t, input)?));
    };
    // The imaginary part starts at the last sign that is not the first char.
    let split = body.rfind(['+', '-']).filter(|&p| p > 0).unwrap_or(0);
    let (re, im) = body.split_at(split);
    let im = match im {
        "" | "+" => Rational::from_integer(1.into()),
        "-" => Rational::from_integer((-1).into()),
        s => parse_rational(s, input)?,
    };
    let re = if re.is_empty() { Rational::from_integer(0.into()) } else { parse_rational(re, input)? };
    Ok(GaussianRational::new(re, im))
}

pub fn parse_ints(input: &str) -> Result<Vec<i64>, ForgeError> {
    input
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| fail(input, "expected comma-separated integers")))
        .collect()
}

pub fn parse_vspec(input: &str) -> Result<InsertionVector, ForgeError> {
    // Entries may contain '/', so the separator is the one before `s=`.
    let (w, s) = match input.rfind("s=") {
        Some(at) => {
            let head = input[..at].trim_end();
            let head = head.strip_suffix('/').ok_or_else(|| fail(input, "expected `w / s=r`"))?;
            (head, parse_rational(input[at + 2..].trim(), input)?)
        }
        None => (input, Rational::from_integer(1.into())),
    };
    let w = w.split(',').map(parse_gaussian).collect::<Result<Vec<_>, _>>()?;
    InsertionVector::new(w, s).map_err(|_| fail(input, "need a nonempty w and s > 0"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use theta_forge_core::arith::rat;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::new(rat(a, b), rat(c, d))
    }

    #[test]
    fn gaussian_entries() {
        assert_eq!(parse_gaussian("3").unwrap(), g(3, 1, 0, 1));
        assert_eq!(parse_gaussian("-1/2").unwrap(), g(-1, 2, 0, 1));
        assert_eq!(parse_gaussian("i").unwrap(), g(0, 1, 1, 1));
        assert_eq!(parse_gaussian("-i").unwrap(), g(0, 1, -1, 1));
        assert_eq!(parse_gaussian("2i").unwrap(), g(0, 1, 2, 1));
        assert_eq!(parse_gaussian("1/2+3/4 i").unwrap(), g(1, 2, 3, 4));
        assert_eq!(parse_gaussian("-1/2-i").unwrap(), g(-1, 2, -1, 1));
        assert_eq!(parse_gaussian(" 1 - 2/3i ").unwrap(), g(1, 1, -2, 3));
        for bad in ["", "x", "1/0", "1++i", "--1", "1/2/3"] {
            assert!(parse_gaussian(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn vectors() {
        let v = parse_vspec("1,0 / s=1/2").unwrap();
        assert_eq!(v, InsertionVector::from_integers(&[1, 0], rat(1, 2)).unwrap());
        let v = parse_vspec("1, i").unwrap();
        assert_eq!(v.s(), &rat(1, 1));
        assert_eq!(v.w()[1], g(0, 1, 1, 1));
        let v = parse_vspec("1/2,1/3+i/s=4").unwrap();
        assert_eq!(v.w()[0], g(1, 2, 0, 1));
        assert_eq!(v.s(), &rat(4, 1));
        assert!(parse_vspec("1,0 / s=0").is_err());
        assert!(parse_vspec("1,0 s=2").is_err());
        assert!(parse_vspec("").is_err());
    }

    #[test]
    fn int_lists() {
        assert_eq!(parse_ints("1, -2,3").unwrap(), vec![1, -2, 3]);
        assert!(parse_ints("1,,2").is_err());
    }
}
