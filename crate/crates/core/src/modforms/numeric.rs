//! Floating-point evaluation of theta-type lattice sums at a point of the
//! upper half-plane.
//!
//! A sum `Σ P(m)·exp(2πiτ·E(m))` is cut off at `E(m) ≤ R` with `R` the
//! smallest integer satisfying
//! `(1 + R)^(k/2 + f) · C^(k/2) · exp(−2π·im(τ)·R) < tol/100`, where `C`
//! bounds the insertion polynomial through Cauchy–Schwarz. Summation runs
//! in the deterministic enumeration order.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::TauPoint;
use crate::arith::{rational_to_f64, Rational};
use crate::lattice::{CongruenceClass, Ellipsoid, QuadraticForm, DEFAULT_BUDGET};
use crate::Error;

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// Smallest integer `R ≥ 1` with `(1+R)^power · scale · exp(−rate·R) < target`.
fn cutoff(power: f64, scale: f64, rate: f64, target: f64, tol: f64, im: f64) -> Result<f64, Error> {
    let mut r = 1.0f64;
    while Float::powf(1.0 + r, power) * scale * Float::exp(-rate * r) >= target {
        r += 1.0;
        if r > 1e7 {
            return Err(Error::ToleranceUnachievable { tol, im });
        }
    }
    Ok(r)
}

fn check_tau(tau: TauPoint, tol: f64) -> Result<(), Error> {
    if !(tau.im > 0.0) || !tau.re.is_finite() {
        return Err(Error::InvalidArgument("tau must lie in the upper half-plane"));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    Ok(())
}

/// `l*Al`, the Hermitian A-norm of a complex vector.
fn hermitian_norm(form: &QuadraticForm, l: &[Complex64]) -> f64 {
    let n = form.rank();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += l[i].conj() * l[j] * form.entry(i, j) as f64;
        }
    }
    acc.re.max(0.0)
}

/// `e^{2πiτE}`.
#[inline]
fn q_power(tau: TauPoint, e: f64) -> Complex64 {
    let modulus = Float::exp(-TWO_PI * tau.im * e);
    let angle = TWO_PI * frac(tau.re * e);
    Complex64::new(modulus * Float::cos(angle), modulus * Float::sin(angle))
}

/// Evaluates, for every `k` in `ks`, the sum
/// `Σ_m (l'Am / N)ᵏ · exp(2πiτ·Q(m)/N²)` over `m ≡ h (mod N)` when a class is
/// given, and `Σ_m (l'Am)ᵏ · exp(2πiτ·Q(m))` over all of ℤᶠ otherwise.
pub fn theta_numeric_family(
    form: &QuadraticForm,
    l: &[Complex64],
    ks: &[u32],
    h: Option<&CongruenceClass>,
    tau: TauPoint,
    tol: f64,
) -> Result<Vec<Complex64>, Error> {
    check_tau(tau, tol)?;
    if l.len() != form.rank() {
        return Err(Error::DimensionMismatch { rank: form.rank(), got: l.len() });
    }
    let f = form.rank() as f64;
    let kmax = ks.iter().copied().max().unwrap_or(0);
    let half_k = kmax as f64 / 2.0;
    let c = (2.0 * hermitian_norm(form, l)).max(1.0);
    let r = cutoff(half_k + f, Float::powf(c, half_k), TWO_PI * tau.im, tol * 1e-2, tol, tau.im)?;

    let (n, center) = match h {
        None => (1i64, alloc::vec![0.0; form.rank()]),
        Some(cls) => {
            if cls.level() != form.level() || cls.rep().len() != form.rank() {
                return Err(Error::InvalidClass);
            }
            let n = form.level() as i64;
            (n, cls.rep().iter().map(|x| *x as f64 / n as f64).collect())
        }
    };
    let est = form.ellipsoid().estimate_count(2.0 * r);
    if est > DEFAULT_BUDGET {
        return Err(Error::ToleranceUnachievable { tol, im: tau.im });
    }
    let row: Vec<Complex64> = (0..form.rank())
        .map(|j| (0..form.rank()).map(|i| l[i] * form.entry(i, j) as f64).sum::<Complex64>() / n as f64)
        .collect();
    let n2 = (n * n) as f64;
    let cap = (r * n2).floor() as i64;
    let rep: Vec<i64> = match h {
        None => alloc::vec![0; form.rank()],
        Some(cls) => cls.rep().to_vec(),
    };

    let mut out = alloc::vec![Complex64::new(0.0, 0.0); ks.len()];
    let mut m = alloc::vec![0i64; form.rank()];
    form.ellipsoid().for_each(&center, 2.0 * cap as f64 / n2, DEFAULT_BUDGET, |t, _| {
        for ((mi, ti), hi) in m.iter_mut().zip(t).zip(&rep) {
            *mi = hi + n * ti;
        }
        let qm = form.q(&m);
        if qm > cap {
            return;
        }
        let weight = q_power(tau, qm as f64 / n2);
        let lm: Complex64 = row.iter().zip(&m).map(|(a, b)| a * *b as f64).sum();
        let mut pw = Complex64::new(1.0, 0.0);
        for k in 0..=kmax {
            if k > 0 {
                pw *= lm;
            }
            for (idx, kk) in ks.iter().enumerate() {
                if *kk == k {
                    out[idx] += pw * weight;
                }
            }
        }
    })?;
    Ok(out)
}

/// `θ_{πiτ}(A, x) = Σ_{m ∈ ℤᶠ} exp(2πiτ·Q(m + x))` for a rational shift `x`.
pub fn theta_offset_numeric(form: &QuadraticForm, x: &[Rational], tau: TauPoint, tol: f64) -> Result<Complex64, Error> {
    check_tau(tau, tol)?;
    if x.len() != form.rank() {
        return Err(Error::DimensionMismatch { rank: form.rank(), got: x.len() });
    }
    let f = form.rank() as f64;
    let r = cutoff(f, 1.0, TWO_PI * tau.im, tol * 1e-2, tol, tau.im)?;
    if form.ellipsoid().estimate_count(2.0 * r) > DEFAULT_BUDGET {
        return Err(Error::ToleranceUnachievable { tol, im: tau.im });
    }
    let center: Vec<f64> = x.iter().map(rational_to_f64).collect();
    let mut y = alloc::vec![0.0f64; form.rank()];
    let mut acc = Complex64::new(0.0, 0.0);
    form.ellipsoid().for_each(&center, 2.0 * r, DEFAULT_BUDGET, |m, _| {
        for ((yi, mi), ci) in y.iter_mut().zip(m).zip(&center) {
            *yi = *mi as f64 + ci;
        }
        acc += q_power(tau, quad_f64(form, &y));
    })?;
    Ok(acc)
}

/// The Poisson-dual side of the offset theta,
/// `(−iτ)^(−r)·D^(−1/2)·Σ_m exp(−(πi/τ)·m'A⁻¹m + 2πi·m'x)`,
/// with the principal branch of `(−iτ)^r` (f = 2r is even, so no square
/// root of `−iτ` is needed).
pub fn theta_offset_dual_numeric(
    form: &QuadraticForm,
    x: &[Rational],
    tau: TauPoint,
    tol: f64,
) -> Result<Complex64, Error> {
    check_tau(tau, tol)?;
    if x.len() != form.rank() {
        return Err(Error::DimensionMismatch { rank: form.rank(), got: x.len() });
    }
    let f = form.rank();
    let t = tau.to_complex();
    // exp(−πi·S/τ): modulus exp(−π·im(−1/τ)·S).
    let decay = core::f64::consts::PI * tau.im / t.norm_sqr();
    let b = cutoff(f as f64, 1.0, decay, tol * 1e-2, tol, tau.im)?;
    let dual = Ellipsoid::new(form.inverse_gram(), f).expect("inverse of a positive-definite form");
    if dual.estimate_count(b) > DEFAULT_BUDGET {
        return Err(Error::ToleranceUnachievable { tol, im: tau.im });
    }
    let inv: Vec<f64> = form.inverse_gram().iter().map(rational_to_f64).collect();
    let xf: Vec<f64> = x.iter().map(rational_to_f64).collect();
    let minus_pi_i_over_tau = Complex64::new(0.0, -core::f64::consts::PI) / t;
    let mut acc = Complex64::new(0.0, 0.0);
    dual.for_each(&alloc::vec![0.0; f], b, DEFAULT_BUDGET, |m, _| {
        let mut s = 0.0;
        for i in 0..f {
            for j in 0..f {
                s += m[i] as f64 * inv[i * f + j] * m[j] as f64;
            }
        }
        let mx: f64 = m.iter().zip(&xf).map(|(a, b)| *a as f64 * b).sum();
        let phase = TWO_PI * frac(mx);
        acc += (minus_pi_i_over_tau * s).exp() * Complex64::new(Float::cos(phase), Float::sin(phase));
    })?;
    let r = (f / 2) as i32;
    let prefactor = (Complex64::new(0.0, -1.0) * t).powi(r) * Float::sqrt(form.det() as f64);
    Ok(acc / prefactor)
}

fn quad_f64(form: &QuadraticForm, y: &[f64]) -> f64 {
    let n = form.rank();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += y[i] * form.entry(i, j) as f64 * y[j];
        }
    }
    acc / 2.0
}

#[inline]
fn frac(x: f64) -> f64 {
    x - Float::floor(x)
}
