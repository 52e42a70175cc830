//! Truncated formal series in `q^(1/M)` with Gaussian-rational coefficients,
//! and series in `Y = 2πiX` whose coefficients are such q-series.
//!
//! A [`FracQSeries`] with exponent denominator `M` and precision `P` stores
//! the coefficients of `q^(e/M)` for `0 ≤ e < P`; everything from
//! `q^(P/M)` on is unknown. Binary operations first rebase both operands to
//! the lcm of their denominators and the result keeps the smaller
//! precision. Asking for a coefficient past the precision is an error, never
//! a silent zero.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{lcm_u64, GaussianRational, Rational};
use crate::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct FracQSeries {
    exp_denom: u64,
    prec: u64,
    coeffs: BTreeMap<u64, GaussianRational>,
}

impl FracQSeries {
    /// The zero series known modulo `q^(prec/exp_denom)`.
    pub fn zero(exp_denom: u64, prec: u64) -> Result<Self, Error> {
        if exp_denom == 0 {
            return Err(Error::InvalidArgument("exp_denom must be positive"));
        }
        if prec == 0 {
            return Err(Error::InvalidArgument("precision must be positive"));
        }
        Ok(Self { exp_denom, prec, coeffs: BTreeMap::new() })
    }

    pub fn one(exp_denom: u64, prec: u64) -> Result<Self, Error> {
        Self::constant(GaussianRational::one(), exp_denom, prec)
    }

    pub fn constant(c: GaussianRational, exp_denom: u64, prec: u64) -> Result<Self, Error> {
        let mut s = Self::zero(exp_denom, prec)?;
        s.insert(0, c);
        Ok(s)
    }

    /// Builds a series from `(numerator, coefficient)` pairs. Terms at or
    /// beyond the precision are dropped, repeated numerators accumulate.
    pub fn from_terms<I>(exp_denom: u64, prec: u64, terms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (u64, GaussianRational)>,
    {
        let mut s = Self::zero(exp_denom, prec)?;
        for (e, c) in terms {
            s.add_term(e, &c);
        }
        Ok(s)
    }

    pub fn exp_denom(&self) -> u64 {
        self.exp_denom
    }

    pub fn prec(&self) -> u64 {
        self.prec
    }

    /// Nonzero coefficients as `(numerator, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &GaussianRational)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent numerator with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u64> {
        self.coeffs.keys().next().copied()
    }

    fn insert(&mut self, e: u64, c: GaussianRational) {
        if e < self.prec && !c.is_zero() {
            self.coeffs.insert(e, c);
        }
    }

    /// Adds `c·q^(e/M)` in place; ignored when `e` is beyond the precision.
    pub fn add_term(&mut self, e: u64, c: &GaussianRational) {
        if e >= self.prec || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(GaussianRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Coefficient of `q^(e/M)` by numerator.
    pub fn coeff_at(&self, e: u64) -> Result<GaussianRational, Error> {
        if e >= self.prec {
            return Err(Error::BeyondPrecision);
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(GaussianRational::zero))
    }

    /// Coefficient of `q^exponent`.
    pub fn coefficient(&self, exponent: &Rational) -> Result<GaussianRational, Error> {
        let scaled = exponent * Rational::from_integer(BigInt::from(self.exp_denom));
        if !scaled.is_integer() {
            return Err(Error::OffGrid(self.exp_denom));
        }
        let e = scaled.to_integer();
        if e < BigInt::zero() {
            return Err(Error::InvalidArgument("negative exponent"));
        }
        match u64::try_from(e) {
            Ok(e) => self.coeff_at(e),
            Err(_) => Err(Error::BeyondPrecision),
        }
    }

    /// Re-expresses the series in `q^(1/new_denom)`; `new_denom` must be a
    /// multiple of the current denominator.
    pub fn rebase(&self, new_denom: u64) -> Result<Self, Error> {
        if new_denom == 0 || new_denom % self.exp_denom != 0 {
            return Err(Error::InvalidArgument("rebase target must be a multiple of exp_denom"));
        }
        let f = new_denom / self.exp_denom;
        Ok(Self {
            exp_denom: new_denom,
            prec: self.prec * f,
            coeffs: self.coeffs.iter().map(|(e, c)| (e * f, c.clone())).collect(),
        })
    }

    /// Inverse of [`rebase`](Self::rebase) on series whose support lies on
    /// the coarser grid.
    pub fn restrict(&self, new_denom: u64) -> Result<Self, Error> {
        if new_denom == 0 || self.exp_denom % new_denom != 0 {
            return Err(Error::InvalidArgument("restrict target must divide exp_denom"));
        }
        let f = self.exp_denom / new_denom;
        if self.coeffs.keys().any(|e| e % f != 0) {
            return Err(Error::OffGrid(new_denom));
        }
        Ok(Self {
            exp_denom: new_denom,
            prec: self.prec.div_ceil(f),
            coeffs: self.coeffs.iter().map(|(e, c)| (e / f, c.clone())).collect(),
        })
    }

    /// Drops everything from `q^(prec/M)` on. Never raises the precision.
    pub fn truncate(&self, prec: u64) -> Self {
        let prec = prec.clamp(1, self.prec);
        Self {
            exp_denom: self.exp_denom,
            prec,
            coeffs: self.coeffs.range(..prec).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm_u64(a.exp_denom, b.exp_denom);
        let a = a.rebase(m).expect("lcm is a common multiple");
        let b = b.rebase(m).expect("lcm is a common multiple");
        let p = a.prec.min(b.prec);
        (a.truncate(p), b.truncate(p))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = Self::aligned(self, other);
        for (e, c) in &b.coeffs {
            a.add_term(*e, c);
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            exp_denom: self.exp_denom,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &GaussianRational) -> Self {
        let mut out = Self { exp_denom: self.exp_denom, prec: self.prec, coeffs: BTreeMap::new() };
        if factor.is_zero() {
            return out;
        }
        for (e, c) in &self.coeffs {
            out.insert(*e, c * factor);
        }
        out
    }

    pub fn scale_rational(&self, factor: &Rational) -> Self {
        self.scale(&GaussianRational::from_real(factor.clone()))
    }

    /// Cauchy product truncated to the common precision.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        let p = a.prec;
        let mut acc: BTreeMap<u64, GaussianRational> = BTreeMap::new();
        for (ea, ca) in &a.coeffs {
            for (eb, cb) in b.coeffs.range(..p - ea) {
                let slot = acc.entry(ea + eb).or_insert_with(GaussianRational::zero);
                *slot += &(ca * cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self { exp_denom: a.exp_denom, prec: p, coeffs: acc }
    }

    /// `selfᵉ` by repeated squaring; `e = 0` gives the constant 1.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.exp_denom, self.prec).expect("valid shape");
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Evaluates the known part at `τ`, i.e. `Σ c_e · exp(2πiτ·e/M)`.
    pub fn eval(&self, tau: Complex64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * core::f64::consts::PI);
        let m = self.exp_denom as f64;
        self.coeffs
            .iter()
            .map(|(e, c)| {
                let (re, im) = c.to_f64_pair();
                Complex64::new(re, im) * (two_pi_i * tau * (*e as f64 / m)).exp()
            })
            .sum()
    }
}

impl core::fmt::Debug for FracQSeries {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (e, c) in &self.coeffs {
            let g = e.gcd(&self.exp_denom);
            write!(f, "({c})q^({}/{}) + ", e / g, self.exp_denom / g)?;
        }
        write!(f, "O(q^({}/{}))", self.prec, self.exp_denom)
    }
}

impl Add for &FracQSeries {
    type Output = FracQSeries;
    fn add(self, rhs: &FracQSeries) -> FracQSeries {
        FracQSeries::add(self, rhs)
    }
}

impl Sub for &FracQSeries {
    type Output = FracQSeries;
    fn sub(self, rhs: &FracQSeries) -> FracQSeries {
        FracQSeries::sub(self, rhs)
    }
}

impl Mul for &FracQSeries {
    type Output = FracQSeries;
    fn mul(self, rhs: &FracQSeries) -> FracQSeries {
        FracQSeries::mul(self, rhs)
    }
}

impl Neg for &FracQSeries {
    type Output = FracQSeries;
    fn neg(self) -> FracQSeries {
        FracQSeries::neg(self)
    }
}

/// A truncated series `Σ_{n < x_prec} φ⁽ⁿ⁾ Yⁿ` in `Y = 2πiX`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XSeries {
    ycoeffs: Vec<FracQSeries>,
}

impl XSeries {
    /// Collects the `Yⁿ` coefficients, bringing them onto a common exponent
    /// denominator and precision.
    pub fn new(ycoeffs: Vec<FracQSeries>) -> Result<Self, Error> {
        let Some(first) = ycoeffs.first() else {
            return Err(Error::InvalidArgument("an XSeries needs at least one Y coefficient"));
        };
        let m = ycoeffs.iter().fold(first.exp_denom, |m, s| lcm_u64(m, s.exp_denom));
        let rebased: Vec<FracQSeries> =
            ycoeffs.iter().map(|s| s.rebase(m).expect("lcm is a common multiple")).collect();
        let p = rebased.iter().map(FracQSeries::prec).min().expect("nonempty");
        Ok(Self { ycoeffs: rebased.into_iter().map(|s| s.truncate(p)).collect() })
    }

    pub fn x_prec(&self) -> usize {
        self.ycoeffs.len()
    }

    pub fn exp_denom(&self) -> u64 {
        self.ycoeffs[0].exp_denom
    }

    pub fn q_prec(&self) -> u64 {
        self.ycoeffs[0].prec
    }

    /// Coefficient of `Yⁿ`.
    pub fn coeff(&self, n: usize) -> Option<&FracQSeries> {
        self.ycoeffs.get(n)
    }

    pub fn coeffs(&self) -> &[FracQSeries] {
        &self.ycoeffs
    }

    /// Convolution in `Y`, truncated to the smaller `x_prec`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.x_prec().min(other.x_prec());
        let out = (0..n)
            .map(|k| {
                (0..=k)
                    .map(|j| self.ycoeffs[j].mul(&other.ycoeffs[k - j]))
                    .reduce(|a, b| a.add(&b))
                    .expect("k + 1 terms")
            })
            .collect();
        Self::new(out).expect("nonempty")
    }
}
