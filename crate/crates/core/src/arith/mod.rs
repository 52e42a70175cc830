//! Exact scalar arithmetic: big rationals, Gaussian rationals, Bernoulli
//! numbers, divisor sums, the Kronecker symbol and the γ(t, k) coefficients
//! that glue insertion thetas to powers of E₂.

mod gaussian;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use gaussian::{rational_to_f64, GaussianRational};

use crate::Error;

/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// γ(t, k) = 2⁻ᵗ · C(k, t) · C(k − t, t) · t!, the number of ways of
/// choosing `t` disjoint pairs out of `k` labelled points.
///
/// Vanishes when `2t > k`.
pub fn gamma_coeff(t: u32, k: u32) -> Rational {
    if 2 * t > k {
        return Rational::zero();
    }
    let num = binomial(k, t) * binomial(k - t, t) * factorial(t);
    Rational::new(num, BigInt::one() << t)
}

/// Exact Bernoulli number `B_n` for even `n ≥ 2`, via the Akiyama–Tanigawa
/// triangle.
pub fn bernoulli(n: u32) -> Result<Rational, Error> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidArgument("bernoulli index must be even and at least 2"));
    }
    let mut row: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    for m in 0..=n as usize {
        row.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            let diff = &row[j - 1] - &row[j];
            row[j - 1] = diff * Rational::from_integer(BigInt::from(j));
        }
    }
    Ok(row.swap_remove(0))
}

/// σ_k(n) = Σ_{d | n} dᵏ.
pub fn divisor_sigma(k: u32, n: u64) -> Result<BigInt, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("divisor_sigma is undefined at n = 0"));
    }
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    Ok(total)
}

/// Kronecker symbol (a / n), defined on all of ℤ × ℤ.
pub fn kronecker_symbol(a: i64, n: i64) -> i32 {
    let mut a = i128::from(a);
    let mut n = i128::from(n);
    if n == 0 {
        return i32::from(a == 1 || a == -1);
    }
    let mut sign = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
    }
    // Jacobi symbol for odd positive n.
    a = a.rem_euclid(n);
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        core::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Least common multiple of two positive integers.
pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_small_values() {
        for k in 0..10 {
            assert_eq!(gamma_coeff(0, k), rat_int(1));
        }
        assert_eq!(gamma_coeff(1, 2), rat_int(1));
        assert_eq!(gamma_coeff(1, 4), rat_int(6));
        assert_eq!(gamma_coeff(2, 4), rat_int(3));
        assert_eq!(gamma_coeff(2, 4) * rat(1, 144), rat(1, 48));
        assert_eq!(gamma_coeff(3, 5), Rational::zero());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), rat(1, 42));
        assert_eq!(bernoulli(8).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_rejects_bad_index() {
        assert!(bernoulli(0).is_err());
        assert!(bernoulli(3).is_err());
    }

    #[test]
    fn sigma_values() {
        assert_eq!(divisor_sigma(1, 1).unwrap(), BigInt::from(1));
        assert_eq!(divisor_sigma(1, 6).unwrap(), BigInt::from(12));
        assert_eq!(divisor_sigma(3, 2).unwrap(), BigInt::from(9));
        assert_eq!(divisor_sigma(0, 36).unwrap(), BigInt::from(9));
        assert!(divisor_sigma(1, 0).is_err());
    }

    #[test]
    fn kronecker_values() {
        for a in -20..20 {
            assert_eq!(kronecker_symbol(a, 1), 1);
        }
        assert_eq!(kronecker_symbol(2, 15), 1);
        assert_eq!(kronecker_symbol(-3, 5), -1);
        assert_eq!(kronecker_symbol(-3, 2), -1);
        assert_eq!(kronecker_symbol(5, 2), -1);
        assert_eq!(kronecker_symbol(1, 2), 1);
        assert_eq!(kronecker_symbol(4, 2), 0);
        assert_eq!(kronecker_symbol(-1, -1), -1);
        assert_eq!(kronecker_symbol(1, 0), 1);
        assert_eq!(kronecker_symbol(2, 0), 0);
        assert_eq!(kronecker_symbol(3, 9), 0);
        assert_eq!(kronecker_symbol(i64::MIN, i64::MIN), 0);
    }
}
