use alloc::vec;

use num_complex::Complex64;
use num_traits::Float;

use super::{CongruenceClass, QuadraticForm};
use crate::Error;

const TERM_BUDGET: u64 = 50_000_000;

/// `exp(2πi·num/den)` with the phase reduced mod 1 in exact integers.
pub(crate) fn unit_phase(num: i128, den: i128) -> Complex64 {
    let r = num.rem_euclid(den);
    let angle = 2.0 * core::f64::consts::PI * (r as f64 / den as f64);
    Complex64::new(Float::cos(angle), Float::sin(angle))
}

/// The Gauss sum
/// `φ_{h,q} = Σ_{g mod cN, g ≡ h (N)} exp(2πi·(a·Q(g) + d·Q(q) + g'Aq) / (cN²))`.
///
/// There are `cᶠ` terms: `g = h + N·t` with `t ∈ [0, c)ᶠ`.
pub fn gauss_phi(
    form: &QuadraticForm,
    a: i64,
    d: i64,
    c: u64,
    h: &CongruenceClass,
    q: &[i64],
) -> Result<Complex64, Error> {
    if c == 0 {
        return Err(Error::InvalidArgument("gauss_phi needs c > 0"));
    }
    if h.level() != form.level() || h.rep().len() != form.rank() {
        return Err(Error::InvalidClass);
    }
    form.check_dim(q)?;
    let f = form.rank();
    let terms = (c as f64).powi(f as i32);
    if terms > TERM_BUDGET as f64 {
        return Err(Error::EnumerationBudget { estimate: terms });
    }
    let n = form.level() as i128;
    let den = c as i128 * n * n;
    let aq: vec::Vec<i128> = form.apply(q).into_iter().map(i128::from).collect();
    let fixed = i128::from(d) * i128::from(form.q(q));
    let mut t = vec![0i64; f];
    let mut g = vec![0i64; f];
    let mut acc = Complex64::new(0.0, 0.0);
    loop {
        for i in 0..f {
            g[i] = h.rep()[i] + form.level() as i64 * t[i];
        }
        let cross: i128 = g.iter().zip(&aq).map(|(x, y)| i128::from(*x) * y).sum();
        let num = i128::from(a) * i128::from(form.q(&g)) + fixed + cross;
        acc += unit_phase(num, den);
        let mut i = f;
        loop {
            if i == 0 {
                return Ok(acc);
            }
            i -= 1;
            t[i] += 1;
            if (t[i] as u64) < c {
                break;
            }
            t[i] = 0;
        }
    }
}

/// `Σ_{q₁} exp(2πi·x'A·q₁ / N²)` over all congruence classes `q₁`; this is
/// `D` when `x ≡ 0 (mod N)` and `0` otherwise, for `x` a difference of
/// class representatives.
pub fn class_orthogonality_sum(form: &QuadraticForm, x: &[i64]) -> Result<Complex64, Error> {
    form.check_dim(x)?;
    let n = form.level() as i128;
    let ax: vec::Vec<i128> = form.apply(x).into_iter().map(i128::from).collect();
    Ok(form
        .congruence_classes()
        .iter()
        .map(|q1| {
            let num: i128 = q1.rep().iter().zip(&ax).map(|(a, b)| i128::from(*a) * b).sum();
            unit_phase(num, n * n)
        })
        .sum())
}
