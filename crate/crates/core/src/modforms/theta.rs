//! Exact q-expansions of insertion and congruence thetas.
//!
//! Every lattice vector contributes `⟨w, m⟩ᵏ` where `w'A = (P + iR)/δ` with
//! integer vectors `P`, `R`. The Gaussian integers `P·m + i·R·m` and their
//! powers are summed per exponent in `i128`, spilling into big integers on
//! overflow, and the common scalar `s^(k/2) / (δ·N)ᵏ` is applied once per
//! coefficient at the end.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ThetaSpec;
use crate::arith::{GaussianRational, Rational};
use crate::lattice::{CongruenceClass, InsertionVector, QuadraticForm};
use crate::qseries::FracQSeries;
use crate::Error;

#[derive(Clone, Default)]
struct Acc {
    small: i128,
    big: BigInt,
}

impl Acc {
    fn add(&mut self, v: i128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += BigInt::from(self.small) + BigInt::from(v);
                self.small = 0;
            }
        }
    }

    fn add_big(&mut self, v: &BigInt) {
        self.big += v;
    }

    fn total(&self) -> BigInt {
        &self.big + BigInt::from(self.small)
    }
}

#[derive(Clone, Default)]
struct GaussAcc {
    re: Acc,
    im: Acc,
}

/// Accumulates `Σ zᵏ` for several `k` at once over Gaussian integers `z`.
struct PowerSums<'a> {
    ks: &'a [u32],
    kmax: u32,
    // [exponent][index into ks]
    slots: Vec<Vec<GaussAcc>>,
}

impl<'a> PowerSums<'a> {
    fn new(ks: &'a [u32], len: usize) -> Self {
        let kmax = ks.iter().copied().max().unwrap_or(0);
        Self { ks, kmax, slots: (0..len).map(|_| alloc::vec![GaussAcc::default(); ks.len()]).collect() }
    }

    fn push(&mut self, e: usize, re: i128, im: i128) {
        let slot = &mut self.slots[e];
        let (mut pr, mut pi) = (1i128, 0i128);
        let mut big: Option<(BigInt, BigInt)> = None;
        for k in 0..=self.kmax {
            if k > 0 {
                match &mut big {
                    Some((br, bi)) => {
                        let r = &*br * re - &*bi * im;
                        let i = &*br * im + &*bi * re;
                        (*br, *bi) = (r, i);
                    }
                    None => match gauss_mul_checked((pr, pi), (re, im)) {
                        Some(v) => (pr, pi) = v,
                        None => {
                            let (br, bi) = (BigInt::from(pr), BigInt::from(pi));
                            big = Some((&br * re - &bi * im, &br * im + &bi * re));
                        }
                    },
                }
            }
            for (idx, kk) in self.ks.iter().enumerate() {
                if *kk != k {
                    continue;
                }
                match &big {
                    Some((br, bi)) => {
                        slot[idx].re.add_big(br);
                        slot[idx].im.add_big(bi);
                    }
                    None => {
                        slot[idx].re.add(pr);
                        slot[idx].im.add(pi);
                    }
                }
            }
        }
    }
}

fn gauss_mul_checked(a: (i128, i128), b: (i128, i128)) -> Option<(i128, i128)> {
    let r = a.0.checked_mul(b.0)?.checked_sub(a.1.checked_mul(b.1)?)?;
    let i = a.0.checked_mul(b.1)?.checked_add(a.1.checked_mul(b.0)?)?;
    Some((r, i))
}

/// Exact square root of a nonnegative rational, if it is a square.
fn rational_sqrt(s: &Rational) -> Option<Rational> {
    let n = s.numer().sqrt();
    let d = s.denom().sqrt();
    (&n * &n == *s.numer() && &d * &d == *s.denom()).then(|| Rational::new(n, d))
}

/// `s^(k/2)` when it is rational: always for even `k`, and for odd `k` when
/// `s` is a perfect square.
fn half_power(s: &Rational, k: u32) -> Option<Rational> {
    if k % 2 == 0 {
        return Some(num_traits::pow(s.clone(), (k / 2) as usize));
    }
    rational_sqrt(s).map(|r| num_traits::pow(r, k as usize))
}

/// Expands `θ(Q, v, k, τ)` (no class) or `θ(A, h, v, k, τ)` (with class)
/// for several `k` in one lattice pass. `prec` counts whole powers of `q`;
/// congruence thetas come back with exponent denominator `N²`.
pub fn theta_expand_family(
    form: &QuadraticForm,
    v: &InsertionVector,
    ks: &[u32],
    h: Option<&CongruenceClass>,
    prec: u64,
) -> Result<Vec<FracQSeries>, Error> {
    if prec == 0 {
        return Err(Error::InvalidArgument("precision must be positive"));
    }
    let row = v.integral_row(form)?;
    let n = form.level();
    let (exp_denom, h_self_inverse) = match h {
        None => (1u64, true),
        Some(cls) => {
            let neg = form.class(&cls.rep().iter().map(|x| -x).collect::<Vec<_>>())?;
            (n * n, &neg == cls)
        }
    };
    let p = prec.checked_mul(exp_denom).ok_or(Error::InvalidArgument("precision overflow"))?;

    // Odd powers: zero by m ↦ −m when the class is its own negative, and
    // exact only when s^(1/2) is rational.
    let mut scalars: Vec<Option<Rational>> = Vec::with_capacity(ks.len());
    for &k in ks {
        let odd_zero = k % 2 == 1 && h_self_inverse;
        let sc = half_power(v.s(), k);
        if sc.is_none() && !odd_zero {
            return Err(Error::NotExact);
        }
        scalars.push(if odd_zero { None } else { sc });
    }

    let mut sums = PowerSums::new(ks, p as usize);
    let mut visit = |m: &[i64], qm: u64| {
        let re: i128 = row.re.iter().zip(m).map(|(a, b)| i128::from(*a) * i128::from(*b)).sum();
        let im: i128 = row.im.iter().zip(m).map(|(a, b)| i128::from(*a) * i128::from(*b)).sum();
        sums.push(qm as usize, re, im);
    };
    match h {
        None => form.for_each_upto(p - 1, &mut visit)?,
        Some(cls) => {
            let bound = Rational::new(BigInt::from(p - 1), BigInt::from(exp_denom));
            form.for_each_in_class(cls, &bound, &mut visit)?
        }
    }

    let delta = BigInt::from(row.denom);
    let level_factor = if h.is_some() { BigInt::from(n) } else { BigInt::one() };
    let mut out = Vec::with_capacity(ks.len());
    for (idx, &k) in ks.iter().enumerate() {
        let mut series = FracQSeries::zero(exp_denom, p)?;
        if let Some(scalar) = &scalars[idx] {
            let denom = num_traits::pow(&delta * &level_factor, k as usize);
            let factor = scalar / Rational::from_integer(denom);
            for (e, slot) in sums.slots.iter().enumerate() {
                let re = slot[idx].re.total();
                let im = slot[idx].im.total();
                if re.is_zero() && im.is_zero() {
                    continue;
                }
                let c = GaussianRational::new(Rational::from_integer(re), Rational::from_integer(im)).scale(&factor);
                series.add_term(e as u64, &c);
            }
        }
        out.push(series);
    }
    Ok(out)
}

/// Exact q-expansion described by a [`ThetaSpec`].
pub fn theta_expand(spec: &ThetaSpec, prec: u64) -> Result<FracQSeries, Error> {
    let mut v = theta_expand_family(&spec.form, &spec.v, &[spec.k], spec.h.as_ref(), prec)?;
    Ok(v.pop().expect("one k requested"))
}

/// `θ(Q, τ)` itself.
pub fn theta_plain(form: &QuadraticForm, prec: u64) -> Result<FracQSeries, Error> {
    let mut w = alloc::vec![0i64; form.rank()];
    w[0] = 1;
    let v = InsertionVector::from_integers(&w, Rational::one())?;
    let mut s = theta_expand_family(form, &v, &[0], None, prec)?;
    Ok(s.pop().expect("one k requested"))
}
