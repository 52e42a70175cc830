//! Numeric verification of the transformation laws: Γ₀(N) sampling, the
//! choice of evaluation points, and one residual check per law.
//!
//! Residuals are relative: `|lhs − rhs| / max(1, |lhs|, |rhs|)`, maximised
//! over the compared quantities. Near the real axis both sides of a
//! weight-`w` law grow like `im(τ)^(−w)`, so absolute residuals would only
//! measure the size of the numbers.

mod sample;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use num_traits::{Float, ToPrimitive};

use crate::arith::{gamma_coeff, rational_to_f64, GaussianRational, Rational};
use crate::lattice::{
    class_orthogonality_sum, gauss_phi, unit_phase, CongruenceClass, InsertionVector, QuadraticForm,
};
use crate::modforms::{
    e2_numeric, theta_numeric_family, theta_offset_dual_numeric, theta_offset_numeric, TauPoint,
};
use crate::Error;

pub use sample::{adapted_tau, campaign, Campaign, jittered_taus, sample_gamma0, sample_gamma0_bounded, TAU_GRID};

const PI: f64 = core::f64::consts::PI;

/// An integer matrix `(a b; c d)` of determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gamma0Matrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Gamma0Matrix {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };
    pub const S: Self = Self { a: 0, b: -1, c: 1, d: 0 };
    pub const T: Self = Self { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Error> {
        if i128::from(a) * i128::from(d) - i128::from(b) * i128::from(c) != 1 {
            return Err(Error::InvalidArgument("matrix must have determinant 1"));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn in_gamma0(&self, n: u64) -> bool {
        self.c % n as i64 == 0
    }

    /// `cτ + d`.
    pub fn automorphy(&self, tau: TauPoint) -> Complex64 {
        tau.to_complex() * self.c as f64 + self.d as f64
    }

    /// `(aτ + b)/(cτ + d)`.
    pub fn act(&self, tau: TauPoint) -> Result<TauPoint, Error> {
        let z = tau.to_complex();
        TauPoint::from_complex((z * self.a as f64 + self.b as f64) / self.automorphy(tau))
    }
}

impl fmt::Display for Gamma0Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}; {}, {}]", self.a, self.b, self.c, self.d)
    }
}

/// The laws the harness knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// Transformation of the generating function `Θ(Q,v,τ,X)`.
    GeneratingLaw,
    /// Quasi-modularity of `E₂`.
    E2,
    /// Congruence thetas under `τ ↦ −1/τ`.
    ClassInversion,
    /// Congruence thetas under Γ₀(N).
    ClassGamma0,
    Translation,
    Rescale,
    /// Expansion of `Ψ` at the cusp `a/c`.
    PsiCusp,
    /// Poisson summation for the offset theta.
    Poisson,
    GaussOrthogonality,
    GaussClosedForm,
}

impl Law {
    pub const ALL: [Law; 10] = [
        Law::GeneratingLaw,
        Law::E2,
        Law::ClassInversion,
        Law::ClassGamma0,
        Law::Translation,
        Law::Rescale,
        Law::PsiCusp,
        Law::Poisson,
        Law::GaussOrthogonality,
        Law::GaussClosedForm,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Law::GeneratingLaw => "thm1",
            Law::E2 => "e2",
            Law::ClassInversion => "thm32",
            Law::ClassGamma0 => "thm33",
            Law::Translation => "translation",
            Law::Rescale => "rescale",
            Law::PsiCusp => "psi-cusp",
            Law::Poisson => "poisson",
            Law::GaussOrthogonality => "gauss-orth",
            Law::GaussClosedForm => "gauss-closed",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Law::ALL.iter().copied().find(|l| l.id() == s).ok_or(Error::InvalidArgument("unknown law"))
    }
}

/// One residual check. `pass` holds exactly when `residual < tol`.
#[derive(Clone, Debug, PartialEq)]
pub struct LawReport {
    pub law: Law,
    pub inputs: Vec<(String, String)>,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl LawReport {
    pub fn new(law: Law, inputs: Vec<(String, String)>, residual: f64, tol: f64) -> Self {
        Self { law, inputs, residual, tol, pass: residual < tol }
    }

    pub fn input(&self, key: &str) -> Option<&str> {
        self.inputs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

fn rel_dev(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / 1.0f64.max(a.norm()).max(b.norm())
}

/// Truncation tolerance handed to the lattice sums.
fn inner_tol(tol: f64) -> f64 {
    (tol * 1e-4).max(1e-15)
}

fn fmt_tau(t: TauPoint) -> String {
    format!("{}{:+}i", t.re, t.im)
}

fn fmt_v(v: &InsertionVector) -> String {
    let w: Vec<String> = v.w().iter().map(|x| x.to_string()).collect();
    format!("{} / s={}", w.join(","), v.s())
}

fn fmt_ints(h: &[i64]) -> String {
    let parts: Vec<String> = h.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn kv(k: &str, v: String) -> (String, String) {
    (k.to_string(), v)
}

fn gauss_to_c64(x: &GaussianRational) -> Complex64 {
    let (re, im) = x.to_f64_pair();
    Complex64::new(re, im)
}

fn check_gamma0(form: &QuadraticForm, g: &Gamma0Matrix) -> Result<(), Error> {
    if !g.in_gamma0(form.level()) {
        return Err(Error::InvalidArgument("matrix is not in Gamma0(N)"));
    }
    if g.d <= 0 || g.c < 0 {
        return Err(Error::InvalidArgument("the harness needs c >= 0 and d > 0"));
    }
    Ok(())
}

/// `exp(2πi·Q(h)·t/N²)`, exact in the phase.
fn class_phase(form: &QuadraticForm, h: &CongruenceClass, t: i128) -> Complex64 {
    let n = i128::from(form.level());
    let qh = i128::from(form.q(h.rep())).rem_euclid(n * n);
    unit_phase(qh * t.rem_euclid(n * n), n * n)
}

fn scaled_class(form: &QuadraticForm, h: &CongruenceClass, t: i64) -> Result<CongruenceClass, Error> {
    let rep: Vec<i64> = h.rep().iter().map(|x| x * t.rem_euclid(form.level() as i64)).collect();
    form.class(&rep)
}

/// Checks `Θ(Q,v,γτ,X/(cτ+d)²) = ε(d)(cτ+d)ʳ·exp(c⟨v,v⟩X/(cτ+d))·Θ(Q,v,τ,X)`
/// coefficient by coefficient in `Y = 2πiX`, through `Y^(x_prec−1)`.
pub fn check_generating_law(
    form: &QuadraticForm,
    v: &InsertionVector,
    g: &Gamma0Matrix,
    tau: TauPoint,
    x_prec: usize,
    tol: f64,
) -> Result<LawReport, Error> {
    check_gamma0(form, g)?;
    if x_prec == 0 {
        return Err(Error::InvalidArgument("x precision must be positive"));
    }
    let l = v.to_complex();
    let norm = gauss_to_c64(&v.norm(form)?);
    let ks: Vec<u32> = (0..x_prec as u32).map(|n| 2 * n).collect();
    let itol = inner_tol(tol);
    let at_g = theta_numeric_family(form, &l, &ks, None, g.act(tau)?, itol)?;
    let at_t = theta_numeric_family(form, &l, &ks, None, tau, itol)?;
    // Θₙ = 2ⁿ/(2n)!·θ(2n).
    let weight = |n: usize| -> f64 {
        let mut w = 1.0;
        for i in 1..=2 * n {
            w /= i as f64;
        }
        w * Float::powi(2.0, n as i32)
    };
    let big_g: Vec<Complex64> = at_g.iter().enumerate().map(|(n, x)| x * weight(n)).collect();
    let big_t: Vec<Complex64> = at_t.iter().enumerate().map(|(n, x)| x * weight(n)).collect();
    let j = g.automorphy(tau);
    let x = norm * g.c as f64 / (Complex64::new(0.0, 2.0 * PI) * j);
    let pref = j.powi(form.half_rank() as i32) * f64::from(form.character(g.d));
    let mut residual = 0.0f64;
    for n in 0..x_prec {
        let lhs = big_g[n] * j.powi(-2 * n as i32);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut fact = 1.0;
        for i in 0..=n {
            if i > 0 {
                fact *= i as f64;
            }
            sum += x.powi(i as i32) / fact * big_t[n - i];
        }
        residual = residual.max(rel_dev(lhs, pref * sum));
    }
    let inputs = alloc::vec![
        kv("gamma", g.to_string()),
        kv("tau", fmt_tau(tau)),
        kv("v", fmt_v(v)),
        kv("x_prec", x_prec.to_string()),
    ];
    Ok(LawReport::new(Law::GeneratingLaw, inputs, residual, tol))
}

/// Checks `E₂(γτ) = (cτ+d)²E₂(τ) − c(cτ+d)/(2πi)` for any `γ ∈ SL₂(ℤ)`.
pub fn check_e2_law(g: &Gamma0Matrix, tau: TauPoint, tol: f64) -> Result<LawReport, Error> {
    let itol = inner_tol(tol);
    let j = g.automorphy(tau);
    let lhs = e2_numeric(g.act(tau)?.to_complex(), itol)?;
    let e2 = e2_numeric(tau.to_complex(), itol)?;
    let rhs = j * j * e2 - j * g.c as f64 / Complex64::new(0.0, 2.0 * PI);
    let inputs = alloc::vec![kv("gamma", g.to_string()), kv("tau", fmt_tau(tau))];
    Ok(LawReport::new(Law::E2, inputs, rel_dev(lhs, rhs), tol))
}

fn check_k(k: u32) -> Result<(), Error> {
    if k > 8 {
        return Err(Error::InvalidArgument("law checks support k <= 8"));
    }
    Ok(())
}

/// Checks the inversion law for congruence thetas,
/// `θ(A,h,l,k,−1/τ) = Σ_j (Q(l)τ/(πi))ʲ·γ(j,k)·Θ(A,h,l,k,j,τ)` with
/// `Θ(A,h,l,k,j,τ) = (−i)^(r+2k)·τ^(r+k−2j)/√D · Σ_g e(g'Ah/N²)·θ(A,g,l,k−2j,τ)`.
pub fn check_class_inversion(
    form: &QuadraticForm,
    h: &CongruenceClass,
    v: &InsertionVector,
    k: u32,
    tau: TauPoint,
    tol: f64,
) -> Result<LawReport, Error> {
    check_k(k)?;
    let h = form.class(h.rep())?;
    let l = v.to_complex();
    let q_l = gauss_to_c64(&v.norm(form)?) * 0.5;
    let itol = inner_tol(tol);
    let t = tau.to_complex();
    let inv = TauPoint::from_complex(-t.inv())?;
    let lhs = theta_numeric_family(form, &l, &[k], Some(&h), inv, itol)?[0];

    let ks: Vec<u32> = (0..=k / 2).map(|j| k - 2 * j).collect();
    let n2 = i128::from(form.level()).pow(2);
    let ah: Vec<i128> = form.apply(h.rep()).into_iter().map(i128::from).collect();
    let mut class_sums = alloc::vec![Complex64::new(0.0, 0.0); ks.len()];
    for g in form.congruence_classes() {
        let gah: i128 = g.rep().iter().zip(&ah).map(|(a, b)| i128::from(*a) * b).sum();
        let phase = unit_phase(gah, n2);
        let vals = theta_numeric_family(form, &l, &ks, Some(&g), tau, itol)?;
        for (acc, val) in class_sums.iter_mut().zip(vals) {
            *acc += phase * val;
        }
    }
    let r = form.half_rank() as i32;
    let minus_i = Complex64::new(0.0, -1.0);
    let pre = minus_i.powi(r + 2 * k as i32) / Float::sqrt(form.det() as f64);
    let x = q_l * t / Complex64::new(0.0, PI);
    let mut rhs = Complex64::new(0.0, 0.0);
    for (j, sum) in class_sums.iter().enumerate() {
        let big = pre * t.powi(r + k as i32 - 2 * j as i32) * sum;
        rhs += x.powi(j as i32) * rational_to_f64(&gamma_coeff(j as u32, k)) * big;
    }
    let inputs = alloc::vec![
        kv("h", fmt_ints(h.rep())),
        kv("k", k.to_string()),
        kv("tau", fmt_tau(tau)),
        kv("v", fmt_v(v)),
    ];
    Ok(LawReport::new(Law::ClassInversion, inputs, rel_dev(lhs, rhs), tol))
}

/// Checks, for `γ ∈ Γ₀(N)` with `c ≥ 0`, `d > 0`,
/// `(cτ+d)^(−(r+k))·θ(A,h,l,k,γτ) = e(Q(h)ab/N²)·ε(d)·Σ_j (Q(l)c/(πi(cτ+d)))ʲ·γ(j,k)·θ(A,ah,l,k−2j,τ)`.
/// The class on the right is `a·h`, with `a ≡ d⁻¹ (mod N)`.
pub fn check_class_gamma0(
    form: &QuadraticForm,
    h: &CongruenceClass,
    v: &InsertionVector,
    k: u32,
    g: &Gamma0Matrix,
    tau: TauPoint,
    tol: f64,
) -> Result<LawReport, Error> {
    check_k(k)?;
    check_gamma0(form, g)?;
    let h = form.class(h.rep())?;
    let target = scaled_class(form, &h, g.a)?;
    let l = v.to_complex();
    let q_l = gauss_to_c64(&v.norm(form)?) * 0.5;
    let itol = inner_tol(tol);
    let r = form.half_rank() as i32;
    let j = g.automorphy(tau);

    let lhs = j.powi(-(r + k as i32)) * theta_numeric_family(form, &l, &[k], Some(&h), g.act(tau)?, itol)?[0];
    let ks: Vec<u32> = (0..=k / 2).map(|i| k - 2 * i).collect();
    let vals = theta_numeric_family(form, &l, &ks, Some(&target), tau, itol)?;
    let x = q_l * g.c as f64 / (Complex64::new(0.0, PI) * j);
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, val) in vals.iter().enumerate() {
        sum += x.powi(i as i32) * rational_to_f64(&gamma_coeff(i as u32, k)) * val;
    }
    let phase = class_phase(form, &h, i128::from(g.a) * i128::from(g.b));
    let rhs = phase * f64::from(form.character(g.d)) * sum;
    let inputs = alloc::vec![
        kv("gamma", g.to_string()),
        kv("h", fmt_ints(h.rep())),
        kv("k", k.to_string()),
        kv("tau", fmt_tau(tau)),
        kv("v", fmt_v(v)),
    ];
    Ok(LawReport::new(Law::ClassGamma0, inputs, rel_dev(lhs, rhs), tol))
}

/// Checks `θ(A,h,l,k,τ+1) = e(Q(h)/N²)·θ(A,h,l,k,τ)`.
pub fn check_translation(
    form: &QuadraticForm,
    h: &CongruenceClass,
    v: &InsertionVector,
    k: u32,
    tau: TauPoint,
    tol: f64,
) -> Result<LawReport, Error> {
    check_k(k)?;
    let h = form.class(h.rep())?;
    let l = v.to_complex();
    let itol = inner_tol(tol);
    let shifted = TauPoint::new(tau.re + 1.0, tau.im)?;
    let lhs = theta_numeric_family(form, &l, &[k], Some(&h), shifted, itol)?[0];
    let rhs = class_phase(form, &h, 1) * theta_numeric_family(form, &l, &[k], Some(&h), tau, itol)?[0];
    let inputs = alloc::vec![
        kv("h", fmt_ints(h.rep())),
        kv("k", k.to_string()),
        kv("tau", fmt_tau(tau)),
        kv("v", fmt_v(v)),
    ];
    Ok(LawReport::new(Law::Translation, inputs, rel_dev(lhs, rhs), tol))
}

/// Checks `θ(A,h,l,k,τ) = Σ_{g mod cN, g ≡ h (N)} θ(cA,g,l,k,cτ)`.
pub fn check_rescale(
    form: &QuadraticForm,
    h: &CongruenceClass,
    v: &InsertionVector,
    k: u32,
    c: u64,
    tau: TauPoint,
    tol: f64,
) -> Result<LawReport, Error> {
    check_k(k)?;
    if c == 0 {
        return Err(Error::InvalidArgument("rescale factor must be positive"));
    }
    let h = form.class(h.rep())?;
    let big = form.scaled(c as i64)?;
    let n = form.level();
    if big.level() != c * n {
        return Err(Error::InvalidArgument("scaled form does not have level cN"));
    }
    let f = form.rank();
    if Float::powi(c as f64, f as i32) > 1e5 {
        return Err(Error::EnumerationBudget { estimate: Float::powi(c as f64, f as i32) });
    }
    let l = v.to_complex();
    let itol = inner_tol(tol);
    let lhs = theta_numeric_family(form, &l, &[k], Some(&h), tau, itol)?[0];
    let ctau = TauPoint::new(tau.re * c as f64, tau.im * c as f64)?;
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut t = alloc::vec![0i64; f];
    loop {
        let rep: Vec<i64> = h.rep().iter().zip(&t).map(|(hi, ti)| hi + n as i64 * ti).collect();
        let g = big.class(&rep)?;
        rhs += theta_numeric_family(&big, &l, &[k], Some(&g), ctau, itol)?[0];
        let mut i = f;
        loop {
            if i == 0 {
                let inputs = alloc::vec![
                    kv("c", c.to_string()),
                    kv("h", fmt_ints(h.rep())),
                    kv("k", k.to_string()),
                    kv("tau", fmt_tau(tau)),
                    kv("v", fmt_v(v)),
                ];
                return Ok(LawReport::new(Law::Rescale, inputs, rel_dev(lhs, rhs), tol));
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

/// `Σ_s γ(s,k)·E₂(τ)ˢ·θ(A,h,l,k−2s,τ)`, or the plain-theta version.
fn psi_numeric(
    form: &QuadraticForm,
    l: &[Complex64],
    k: u32,
    h: Option<&CongruenceClass>,
    tau: TauPoint,
    e2: Complex64,
    itol: f64,
) -> Result<Complex64, Error> {
    let ks: Vec<u32> = (0..=k / 2).map(|s| k - 2 * s).collect();
    let vals = theta_numeric_family(form, l, &ks, h, tau, itol)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (s, val) in vals.iter().enumerate() {
        acc += rational_to_f64(&gamma_coeff(s as u32, k)) * e2.powi(s as i32) * val;
    }
    Ok(acc)
}

/// Checks the expansion of `Ψ(Q,l,k,·)` at the cusp `a/c` for a unit `l`:
/// `(cτ+d)^(−(r+k))·Ψ(Q,l,k,γτ) = (−i)^(r+2k)/(cʳ√D) · Σ_q φ_{0,q} · Σ_s γ(s,k)·E₂(τ)ˢ·θ(A,q,l,k−2s,τ)`
/// with `φ_{0,q}` the Gauss sum built from `(a, d, c)`. For `c = 0` the right
/// side is `Ψ(Q,l,k,τ)`.
pub fn check_psi_cusp(
    form: &QuadraticForm,
    v: &InsertionVector,
    k: u32,
    g: &Gamma0Matrix,
    tau: TauPoint,
    tol: f64,
) -> Result<LawReport, Error> {
    check_k(k)?;
    check_gamma0(form, g)?;
    if k % 2 == 1 {
        return Err(Error::InvalidArgument("psi needs an even k"));
    }
    if !v.is_unit(form)? {
        return Err(Error::NotUnit);
    }
    let l = v.to_complex();
    let itol = inner_tol(tol);
    let r = form.half_rank() as i32;
    let j = g.automorphy(tau);
    let gt = g.act(tau)?;
    let lhs = j.powi(-(r + k as i32)) * psi_numeric(form, &l, k, None, gt, e2_numeric(gt.to_complex(), itol)?, itol)?;
    let e2 = e2_numeric(tau.to_complex(), itol)?;
    let rhs = if g.c == 0 {
        psi_numeric(form, &l, k, None, tau, e2, itol)?
    } else {
        let zero = form.zero_class();
        let mut acc = Complex64::new(0.0, 0.0);
        for q in form.congruence_classes() {
            let phi = gauss_phi(form, g.a, g.d, g.c as u64, &zero, q.rep())?;
            acc += phi * psi_numeric(form, &l, k, Some(&q), tau, e2, itol)?;
        }
        let minus_i = Complex64::new(0.0, -1.0);
        acc * minus_i.powi(r + 2 * k as i32)
            / (Float::powi(g.c as f64, r) * Float::sqrt(form.det() as f64))
    };
    let inputs = alloc::vec![
        kv("gamma", g.to_string()),
        kv("k", k.to_string()),
        kv("tau", fmt_tau(tau)),
        kv("v", fmt_v(v)),
    ];
    Ok(LawReport::new(Law::PsiCusp, inputs, rel_dev(lhs, rhs), tol))
}

/// Checks Poisson summation for the offset theta,
/// `θ_{πiτ}(A, x) = (−iτ)^(−r)·D^(−1/2)·Σ_m exp(−(πi/τ)·m'A⁻¹m + 2πi·m'x)`.
pub fn check_poisson(form: &QuadraticForm, x: &[Rational], tau: TauPoint, tol: f64) -> Result<LawReport, Error> {
    let itol = inner_tol(tol);
    let lhs = theta_offset_numeric(form, x, tau, itol)?;
    let rhs = theta_offset_dual_numeric(form, x, tau, itol)?;
    let xs: Vec<String> = x.iter().map(|v| v.to_string()).collect();
    let inputs = alloc::vec![kv("tau", fmt_tau(tau)), kv("x", format!("({})", xs.join(",")))];
    Ok(LawReport::new(Law::Poisson, inputs, rel_dev(lhs, rhs), tol))
}

/// Checks `Σ_{q₁} e((g − bh)'A·q₁/N²) = D·δ_{g,bh}` over all pairs of
/// classes `g`, `h`. The residual is absolute.
pub fn check_gauss_orthogonality(form: &QuadraticForm, g: &Gamma0Matrix, tol: f64) -> Result<LawReport, Error> {
    let classes = form.congruence_classes();
    let d = form.det() as f64;
    let mut residual = 0.0f64;
    for x in &classes {
        for h in &classes {
            let bh = scaled_class(form, h, g.b)?;
            let diff: Vec<i64> = x.rep().iter().zip(bh.rep()).map(|(a, b)| a - b).collect();
            let got = class_orthogonality_sum(form, &diff)?;
            let want = if *x == bh { d } else { 0.0 };
            residual = residual.max((got - Complex64::new(want, 0.0)).norm());
        }
    }
    let inputs = alloc::vec![kv("gamma", g.to_string())];
    Ok(LawReport::new(Law::GaussOrthogonality, inputs, residual, tol))
}

/// Checks the closed form of the Gauss sum met in the proof of the
/// Γ₀(N) law: `Σ_{g mod dN, g ≡ h (N)} e(b·Q(g)/(dN²)) / dʳ = e(Q(h)ab/N²)·ε(d)`.
/// This is `gauss_phi` with arguments `(b, 0, d)` and `q = 0`. The residual
/// is absolute.
pub fn check_gauss_closed_form(
    form: &QuadraticForm,
    h: &CongruenceClass,
    g: &Gamma0Matrix,
    tol: f64,
) -> Result<LawReport, Error> {
    check_gamma0(form, g)?;
    let h = form.class(h.rep())?;
    let zero = alloc::vec![0i64; form.rank()];
    let d = g.d.to_u64().ok_or(Error::InvalidArgument("the harness needs d > 0"))?;
    let phi = gauss_phi(form, g.b, 0, d, &h, &zero)?;
    let lhs = phi / Float::powi(d as f64, form.half_rank() as i32);
    let rhs = class_phase(form, &h, i128::from(g.a) * i128::from(g.b)) * f64::from(form.character(g.d));
    let inputs = alloc::vec![kv("gamma", g.to_string()), kv("h", fmt_ints(h.rep()))];
    Ok(LawReport::new(Law::GaussClosedForm, inputs, (lhs - rhs).norm(), tol))
}
