use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use super::QuadraticForm;
use crate::arith::{rat, rational_to_f64, GaussianRational, Rational};
use crate::Error;

/// An insertion vector `v = √s·w` with `w ∈ ℚ(i)ᶠ` and `s > 0` rational.
///
/// Even powers `⟨v, m⟩²ⁿ = sⁿ·⟨w, m⟩²ⁿ` stay in ℚ(i), which is what makes
/// exact expansion of insertion thetas possible for vectors like `α/√2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionVector {
    w: Vec<GaussianRational>,
    s: Rational,
}

/// `w'A` written as `(re + i·im) / denom` with integer vectors.
#[derive(Clone, Debug)]
pub(crate) struct IntegralRow {
    pub re: Vec<i64>,
    pub im: Vec<i64>,
    pub denom: i64,
}

impl InsertionVector {
    pub fn new(w: Vec<GaussianRational>, s: Rational) -> Result<Self, Error> {
        if !s.is_positive() {
            return Err(Error::InvalidArgument("insertion scale s must be positive"));
        }
        if w.is_empty() {
            return Err(Error::InvalidArgument("insertion vector is empty"));
        }
        Ok(Self { w, s })
    }

    /// `v = √s·w` for an integer vector `w`.
    pub fn from_integers(w: &[i64], s: Rational) -> Result<Self, Error> {
        Self::new(w.iter().map(|x| GaussianRational::from_integer(*x)).collect(), s)
    }

    /// `α/√2`, the unit vector attached to a root `α`.
    pub fn from_root(alpha: &[i64]) -> Result<Self, Error> {
        Self::from_integers(alpha, rat(1, 2))
    }

    /// A unit vector for `form`: `α/√2` for the first root if there is one,
    /// else `e₁/√a₁₁`.
    pub fn default_unit(form: &QuadraticForm) -> Self {
        match form.first_root() {
            Some(alpha) => Self::from_root(&alpha).expect("nonempty"),
            None => {
                let mut w = alloc::vec![0i64; form.rank()];
                w[0] = 1;
                Self::from_integers(&w, Rational::new(BigInt::one(), BigInt::from(form.entry(0, 0))))
                    .expect("nonempty")
            }
        }
    }

    pub fn w(&self) -> &[GaussianRational] {
        &self.w
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    /// `λ·v` for rational `λ`, kept in `√s·w` form by scaling `w`.
    pub fn scaled(&self, lambda: &Rational) -> Self {
        Self { w: self.w.iter().map(|x| x.scale(lambda)).collect(), s: self.s.clone() }
    }

    pub(crate) fn check(&self, form: &QuadraticForm) -> Result<(), Error> {
        if self.w.len() != form.rank() {
            return Err(Error::DimensionMismatch { rank: form.rank(), got: self.w.len() });
        }
        Ok(())
    }

    /// `⟨v, v⟩ = s·w'Aw`, exactly. (Bilinear, no complex conjugation.)
    pub fn norm(&self, form: &QuadraticForm) -> Result<GaussianRational, Error> {
        self.check(form)?;
        let n = form.rank();
        let mut acc = GaussianRational::zero();
        for i in 0..n {
            for j in 0..n {
                let a = form.entry(i, j);
                if a != 0 {
                    acc += &(&self.w[i] * &self.w[j]).scale(&Rational::from_integer(BigInt::from(a)));
                }
            }
        }
        Ok(acc.scale(&self.s))
    }

    pub fn is_unit(&self, form: &QuadraticForm) -> Result<bool, Error> {
        Ok(self.norm(form)?.is_one())
    }

    pub fn is_null(&self, form: &QuadraticForm) -> Result<bool, Error> {
        Ok(self.norm(form)?.is_zero())
    }

    /// `v` as complex doubles.
    pub fn to_complex(&self) -> Vec<Complex64> {
        let root = Float::sqrt(rational_to_f64(&self.s));
        self.w
            .iter()
            .map(|x| {
                let (re, im) = x.to_f64_pair();
                Complex64::new(re * root, im * root)
            })
            .collect()
    }

    /// `w'A` over a common integer denominator.
    pub(crate) fn integral_row(&self, form: &QuadraticForm) -> Result<IntegralRow, Error> {
        self.check(form)?;
        let n = form.rank();
        let row: Vec<GaussianRational> = (0..n)
            .map(|j| {
                let mut acc = GaussianRational::zero();
                for i in 0..n {
                    let a = form.entry(i, j);
                    if a != 0 {
                        acc += &self.w[i].scale(&Rational::from_integer(BigInt::from(a)));
                    }
                }
                acc
            })
            .collect();
        let denom = row.iter().fold(BigInt::one(), |d, x| d.lcm(x.re.denom()).lcm(x.im.denom()));
        let scale = Rational::from_integer(denom.clone());
        let to_i64 = |x: &Rational| -> Result<i64, Error> {
            (x * &scale).to_integer().to_i64().ok_or(Error::InvalidArgument("insertion vector entries too large"))
        };
        Ok(IntegralRow {
            re: row.iter().map(|x| to_i64(&x.re)).collect::<Result<_, _>>()?,
            im: row.iter().map(|x| to_i64(&x.im)).collect::<Result<_, _>>()?,
            denom: denom.to_i64().ok_or(Error::InvalidArgument("insertion vector denominators too large"))?,
        })
    }
}
