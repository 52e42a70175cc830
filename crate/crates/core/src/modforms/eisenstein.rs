use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Float;

use crate::arith::{bernoulli, divisor_sigma, rat, GaussianRational, Rational};
use crate::qseries::FracQSeries;
use crate::Error;

/// `E₂ = −1/12 + 2·Σ σ₁(n) qⁿ` to precision `q^prec`.
pub fn eisenstein_e2(prec: u64) -> Result<FracQSeries, Error> {
    let mut s = FracQSeries::constant(GaussianRational::from_real(rat(-1, 12)), 1, prec)?;
    for n in 1..prec {
        let c = divisor_sigma(1, n)? * 2;
        s.add_term(n, &GaussianRational::from_real(Rational::from_integer(c)));
    }
    Ok(s)
}

/// `E_{2k} = 1 − (4k/B_{2k})·Σ σ_{2k−1}(n) qⁿ` for `k ≥ 2`.
pub fn eisenstein_e2k(k: u32, prec: u64) -> Result<FracQSeries, Error> {
    if k < 2 {
        return Err(Error::InvalidArgument("eisenstein_e2k needs k >= 2"));
    }
    let factor = -Rational::from_integer(BigInt::from(4 * k)) / bernoulli(2 * k)?;
    let mut s = FracQSeries::one(1, prec)?;
    for n in 1..prec {
        let c = Rational::from_integer(divisor_sigma(2 * k - 1, n)?) * &factor;
        s.add_term(n, &GaussianRational::from_real(c));
    }
    Ok(s)
}

/// E₂(τ) from its q-expansion, summed until the tail is below `tol`.
pub fn e2_numeric(tau: Complex64, tol: f64) -> Result<Complex64, Error> {
    if tau.im <= 0.0 {
        return Err(Error::InvalidArgument("tau must lie in the upper half-plane"));
    }
    let two_pi_i = Complex64::new(0.0, 2.0 * core::f64::consts::PI);
    let q = (two_pi_i * tau).exp();
    let r = q.norm();
    // Tail after n: Σ_{m>n} m²·rᵐ ≤ (n+1)²·r^(n+1) / (1 − r)³.
    let mut acc = Complex64::new(0.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    let mut n = 0u64;
    loop {
        n += 1;
        qn *= q;
        acc += qn * sigma1_f64(n);
        let m = (n + 1) as f64;
        if m * m * Float::powf(r, m) / Float::powi(1.0 - r, 3) < tol * 1e-2 {
            break;
        }
        if n > 1_000_000 {
            return Err(Error::ToleranceUnachievable { tol, im: tau.im });
        }
    }
    Ok(acc * 2.0 - 1.0 / 12.0)
}

fn sigma1_f64(n: u64) -> f64 {
    let mut s = 0u64;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += d;
            if d * d != n {
                s += n / d;
            }
        }
        d += 1;
    }
    s as f64
}
