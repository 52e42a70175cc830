//! Eisenstein series and theta series: exact q-expansions and numeric
//! evaluation at points of the upper half-plane.

mod eisenstein;
mod numeric;
mod theta;

use num_complex::Complex64;

use crate::lattice::{CongruenceClass, InsertionVector, QuadraticForm};
use crate::Error;

pub use eisenstein::{e2_numeric, eisenstein_e2, eisenstein_e2k};
pub use numeric::{theta_numeric_family, theta_offset_dual_numeric, theta_offset_numeric};
pub use theta::{theta_expand, theta_expand_family, theta_plain};

/// Which theta series to build: `θ(Q, v, k, τ)` when `h` is `None`, the
/// congruence theta `θ(A, h, v, k, τ) = N⁻ᵏ Σ_{m ≡ h} ⟨v,m⟩ᵏ q^(Q(m)/N²)`
/// otherwise.
#[derive(Clone, Debug)]
pub struct ThetaSpec {
    pub form: QuadraticForm,
    pub v: InsertionVector,
    pub k: u32,
    pub h: Option<CongruenceClass>,
}

impl ThetaSpec {
    pub fn new(form: QuadraticForm, v: InsertionVector, k: u32, h: Option<CongruenceClass>) -> Result<Self, Error> {
        v.check(&form)?;
        if let Some(cls) = &h {
            // Re-validate against this form.
            form.class(cls.rep())?;
            if cls.level() != form.level() {
                return Err(Error::InvalidClass);
            }
        }
        Ok(Self { form, v, k, h })
    }
}

/// A point `re + i·im` of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TauPoint {
    pub re: f64,
    pub im: f64,
}

impl TauPoint {
    pub fn new(re: f64, im: f64) -> Result<Self, Error> {
        if !(im > 0.0) || !re.is_finite() || !im.is_finite() {
            return Err(Error::InvalidArgument("tau must lie in the upper half-plane"));
        }
        Ok(Self { re, im })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn from_complex(z: Complex64) -> Result<Self, Error> {
        Self::new(z.re, z.im)
    }
}

/// Numeric value of the series described by `spec` at `tau`, with absolute
/// truncation error below `tol`.
pub fn theta_numeric(spec: &ThetaSpec, tau: TauPoint, tol: f64) -> Result<Complex64, Error> {
    let l = spec.v.to_complex();
    let v = theta_numeric_family(&spec.form, &l, &[spec.k], spec.h.as_ref(), tau, tol)?;
    Ok(v[0])
}
