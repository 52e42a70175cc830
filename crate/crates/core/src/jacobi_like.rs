//! Generating functions in the auxiliary variable `Y = 2πiX`: the theta
//! generating function `Θ(Q,v,τ,X)`, the exponential `Ẽ₂(τ,X)`, the
//! `E₂`-corrected forms `Ψ`, and the cusp-form combination built from them.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{factorial, gamma_coeff, kronecker_symbol, rat, GaussianRational, Rational};
use crate::lattice::{InsertionVector, QuadraticForm};
use crate::modforms::{eisenstein_e2, eisenstein_e2k, theta_expand_family, theta_plain};
use crate::qseries::{FracQSeries, XSeries};
use crate::Error;

/// A truncated Jacobi-like form `Σ φ⁽ⁿ⁾(τ)·Yⁿ` together with the data of its
/// transformation law: weight, index `m` (the constant in the exponential
/// factor), level and the character discriminant `(−1)ʳD`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiLikeForm {
    xseries: XSeries,
    weight: i64,
    index: GaussianRational,
    level: u64,
    discriminant: i64,
}

impl JacobiLikeForm {
    pub fn xseries(&self) -> &XSeries {
        &self.xseries
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn index(&self) -> &GaussianRational {
        &self.index
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// `χ(n)`, the Kronecker symbol of the stored discriminant.
    pub fn character(&self, n: i64) -> i32 {
        kronecker_symbol(self.discriminant, n)
    }

    /// Coefficient of `Yⁿ`.
    pub fn coeff(&self, n: usize) -> Option<&FracQSeries> {
        self.xseries.coeff(n)
    }

    /// Product of two Jacobi-like forms: weights and indices add, levels
    /// combine by lcm and characters multiply.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            xseries: self.xseries.mul(&other.xseries),
            weight: self.weight + other.weight,
            index: &self.index + &other.index,
            level: crate::arith::lcm_u64(self.level, other.level),
            discriminant: self.discriminant * other.discriminant,
        }
    }
}

fn signed_disc(form: &QuadraticForm) -> i64 {
    let d = form.det() as i64;
    if form.half_rank() % 2 == 0 {
        d
    } else {
        -d
    }
}

fn inverse_factorial(n: u32) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}

/// `Θ(Q, v, τ, X)` through `Y^(x_prec − 1)`; the `Yⁿ` coefficient is
/// `2ⁿ/(2n)! · θ(Q, v, 2n, τ)`.
pub fn big_theta(form: &QuadraticForm, v: &InsertionVector, x_prec: usize, q_prec: u64) -> Result<JacobiLikeForm, Error> {
    if x_prec == 0 {
        return Err(Error::InvalidArgument("x precision must be positive"));
    }
    let ks: Vec<u32> = (0..x_prec as u32).map(|n| 2 * n).collect();
    let thetas = theta_expand_family(form, v, &ks, None, q_prec)?;
    let ycoeffs = thetas
        .iter()
        .enumerate()
        .map(|(n, th)| {
            let c = Rational::from_integer(BigInt::one() << n) * inverse_factorial(2 * n as u32);
            th.scale_rational(&c)
        })
        .collect();
    Ok(JacobiLikeForm {
        xseries: XSeries::new(ycoeffs)?,
        weight: form.half_rank() as i64,
        index: v.norm(form)?,
        level: form.level(),
        discriminant: signed_disc(form),
    })
}

/// `Ẽ₂(τ, sign·X)`: the `Yⁿ` coefficient is `(−sign)ⁿ·E₂ⁿ/n!`. The index
/// is `sign`, since `E₂(γτ)` picks up `−c(cτ+d)/(2πi)`.
pub fn tilde_e2(x_prec: usize, q_prec: u64, sign: i8) -> Result<JacobiLikeForm, Error> {
    if x_prec == 0 {
        return Err(Error::InvalidArgument("x precision must be positive"));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument("sign must be +1 or -1"));
    }
    let e2 = eisenstein_e2(q_prec)?;
    let mut power = FracQSeries::one(1, q_prec)?;
    let mut ycoeffs = Vec::with_capacity(x_prec);
    for n in 0..x_prec as u32 {
        if n > 0 {
            power = power.mul(&e2);
        }
        let mut c = inverse_factorial(n);
        if sign == 1 && n % 2 == 1 {
            c = -c;
        }
        ycoeffs.push(power.scale_rational(&c));
    }
    Ok(JacobiLikeForm {
        xseries: XSeries::new(ycoeffs)?,
        weight: 0,
        index: GaussianRational::from_integer(i64::from(sign)),
        level: 1,
        discriminant: 1,
    })
}

/// `Ψ(Q, v, k, τ) = Σ_{t ≤ k/2} γ(t, k)·E₂ᵗ·θ(Q, v, k − 2t, τ)` for even `k`.
pub fn psi(form: &QuadraticForm, v: &InsertionVector, k: u32, q_prec: u64) -> Result<FracQSeries, Error> {
    if k % 2 == 1 {
        return Err(Error::InvalidArgument("psi needs an even k"));
    }
    let ks: Vec<u32> = (0..=k / 2).map(|t| k - 2 * t).collect();
    let thetas = theta_expand_family(form, v, &ks, None, q_prec)?;
    let e2 = eisenstein_e2(q_prec)?;
    let mut e2_power = FracQSeries::one(1, q_prec)?;
    let mut acc = FracQSeries::zero(1, q_prec)?;
    for (t, th) in thetas.iter().enumerate() {
        if t > 0 {
            e2_power = e2_power.mul(&e2);
        }
        let g = gamma_coeff(t as u32, k);
        acc = acc.add(&e2_power.mul(th).scale_rational(&g));
    }
    Ok(acc)
}

/// `Ψ(Q, v, 2k, τ) − γ(k, 2k)·(−1/12)ᵏ·θ(Q, τ)·E_{2k}(τ)` for a unit `v`
/// and `k ≥ 2`; its constant term cancels exactly.
pub fn cusp_combination(form: &QuadraticForm, v: &InsertionVector, k: u32, q_prec: u64) -> Result<FracQSeries, Error> {
    if k < 2 {
        return Err(Error::InvalidArgument("cusp combination needs k >= 2"));
    }
    if !v.is_unit(form)? {
        return Err(Error::NotUnit);
    }
    let p = psi(form, v, 2 * k, q_prec)?;
    let c = gamma_coeff(k, 2 * k) * num_traits::pow(rat(-1, 12), k as usize);
    let correction = theta_plain(form, q_prec)?.mul(&eisenstein_e2k(k, q_prec)?).scale_rational(&c);
    Ok(p.sub(&correction))
}

/// Outcome of checking
/// `θ(Q,α/√2,4) + 6E₂θ(Q,α/√2,2) + 3E₂²θ(Q) = (1/48)E₄θ(Q)` for a root `α`.
#[derive(Clone, Debug)]
pub struct RootIdentityReport {
    pub alpha: Vec<i64>,
    /// Highest power of `q` checked.
    pub through: u64,
    /// Left side minus right side.
    pub residual: FracQSeries,
    pub pass: bool,
}

/// Checks the root-lattice identity through `q^through` inclusive. Without
/// an explicit `alpha` the first root in enumeration order is used.
pub fn verify_root_identity(form: &QuadraticForm, through: u64, alpha: Option<&[i64]>) -> Result<RootIdentityReport, Error> {
    let alpha = match alpha {
        Some(a) => {
            form.check_dim(a)?;
            if form.q(a) != 1 {
                return Err(Error::NoRoot);
            }
            a.to_vec()
        }
        None => form.first_root().ok_or(Error::NoRoot)?,
    };
    let q_prec = through + 1;
    let v = InsertionVector::from_root(&alpha)?;
    let lhs = psi(form, &v, 4, q_prec)?;
    let rhs = eisenstein_e2k(2, q_prec)?.mul(&theta_plain(form, q_prec)?).scale_rational(&rat(1, 48));
    let residual = lhs.sub(&rhs);
    let pass = residual.is_zero() && residual.prec() == q_prec;
    Ok(RootIdentityReport { alpha, through, residual, pass })
}

/// The `Yᵏ` coefficients `f⁽ᵏ⁾` of `Ẽ₂(τ,−X)·Θ(Q,v,τ,X)` for `k < x_prec`.
pub fn product_coefficients(
    form: &QuadraticForm,
    v: &InsertionVector,
    x_prec: usize,
    q_prec: u64,
) -> Result<Vec<FracQSeries>, Error> {
    let prod = tilde_e2(x_prec, q_prec, -1)?.mul(&big_theta(form, v, x_prec, q_prec)?);
    Ok(prod.xseries().coeffs().to_vec())
}

/// `2ᵏ/(2k)!`, the factor relating `f⁽ᵏ⁾` to `Ψ(Q, v, 2k, τ)`.
pub fn product_psi_factor(k: u32) -> Rational {
    Rational::from_integer(BigInt::one() << k) * inverse_factorial(2 * k)
}
