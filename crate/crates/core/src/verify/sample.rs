//! Seeded choice of matrices, evaluation points and law parameters.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    check_e2_law, check_gauss_closed_form, check_gauss_orthogonality, check_poisson, check_psi_cusp, check_rescale,
    check_generating_law, check_class_inversion, check_class_gamma0, check_translation, Gamma0Matrix, Law, LawReport,
};
use crate::arith::rat;
use crate::lattice::{InsertionVector, QuadraticForm};
use crate::modforms::TauPoint;
use crate::Error;

/// Base evaluation points; sampled points add a seeded jitter of at most
/// 0.05 in each coordinate.
pub const TAU_GRID: [(f64, f64); 4] = [(0.1, 1.1), (0.21, 1.3), (-0.37, 0.8), (0.4, 0.9)];

const JITTER: f64 = 0.05;

/// Distinct matrices `(a b; c d)` with `c = N·t`, `1 ≤ t ≤ 10`, `1 ≤ d ≤ 50`,
/// `gcd(c, d) = 1`, `a ≡ d⁻¹ (mod c)` in `[0, c)` and `b = (ad − 1)/c`, in a
/// seeded random order.
pub fn sample_gamma0(n: u64, count: usize, seed: u64) -> Vec<Gamma0Matrix> {
    sample_gamma0_bounded(n, count, seed, 10, 50)
}

/// [`sample_gamma0`] with `t ≤ max_t` and `d ≤ max_d`. Returns fewer than
/// `count` matrices when the box holds fewer.
pub fn sample_gamma0_bounded(n: u64, count: usize, seed: u64, max_t: u64, max_d: u64) -> Vec<Gamma0Matrix> {
    let n = n.max(1) as i64;
    let mut all = Vec::new();
    for t in 1..=max_t as i64 {
        let c = n * t;
        for d in 1..=max_d as i64 {
            if c.gcd(&d) != 1 {
                continue;
            }
            let ext = d.extended_gcd(&c);
            let a = ext.x.rem_euclid(c);
            let b = (a * d - 1) / c;
            all.push(Gamma0Matrix { a, b, c, d });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.shuffle(&mut rng);
    all.truncate(count);
    all
}

/// `count` points cycling through [`TAU_GRID`] with seeded jitter.
pub fn jittered_taus(seed: u64, count: usize) -> Vec<TauPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x007a_755f_6772_6964);
    (0..count)
        .map(|i| {
            let (re, im) = TAU_GRID[i % TAU_GRID.len()];
            let dre: f64 = rng.gen_range(-JITTER..=JITTER);
            let dim: f64 = rng.gen_range(-JITTER..=JITTER);
            TauPoint { re: re + dre, im: im + dim }
        })
        .collect()
}

/// Moves a grid point `z` to `τ = (u − d)/c` with `u = z/|z|`, so that
/// `cτ + d = u` has modulus 1 and `im(τ) = im(γτ) = im(u)/c`. This is the
/// best possible: `im(τ)·im(γτ) ≤ 1/c²` for every τ. For `c = 0` the point is
/// returned unchanged.
pub fn adapted_tau(g: &Gamma0Matrix, z: TauPoint) -> TauPoint {
    if g.c == 0 {
        return z;
    }
    let z = z.to_complex();
    let u = z / z.norm();
    let t = (u - Complex64::new(g.d as f64, 0.0)) / g.c as f64;
    TauPoint { re: t.re, im: t.im }
}

/// Parameters of a seeded verification run.
#[derive(Clone, Debug)]
pub struct Campaign {
    pub laws: Vec<Law>,
    pub count: usize,
    pub seed: u64,
    pub tol: f64,
    pub x_prec: usize,
}

/// Runs `count` checks of every requested law, in the order given. Sample
/// `i` uses class `i mod D` (in class order) and `k = 2·(i mod 3)`.
/// Forms of rank above 4 get matrices with `c = N` so the lattice sums stay
/// within budget, and the Gauss closed form keeps `dᶠ ≤ 10⁶`.
pub fn campaign(form: &QuadraticForm, v: &InsertionVector, run: &Campaign) -> Result<Vec<LawReport>, Error> {
    let n = form.level();
    let f = form.rank();
    let max_t = if f <= 4 { 10 } else { 1 };
    let classes = form.congruence_classes();
    let taus = jittered_taus(run.seed, run.count);
    let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
    let mut out = Vec::new();
    for &law in &run.laws {
        let mats = match law {
            Law::E2 => sample_gamma0(1, run.count, run.seed),
            Law::GaussClosedForm => {
                let max_d = (1..=50u64).take_while(|d| d.checked_pow(f as u32).is_some_and(|p| p <= 1_000_000)).last().unwrap_or(1);
                sample_gamma0_bounded(n, run.count, run.seed, max_t, max_d)
            }
            _ => sample_gamma0_bounded(n, run.count, run.seed, max_t, 50),
        };
        let total = match law {
            Law::ClassInversion | Law::Translation | Law::Rescale | Law::Poisson => run.count,
            _ => mats.len().min(run.count),
        };
        for i in 0..total {
            let h = &classes[i % classes.len()];
            let k = 2 * (i % 3) as u32;
            let tau = taus[i];
            let rep = match law {
                Law::GeneratingLaw => check_generating_law(form, v, &mats[i], adapted_tau(&mats[i], tau), run.x_prec, run.tol)?,
                Law::E2 => check_e2_law(&mats[i], adapted_tau(&mats[i], tau), run.tol)?,
                Law::ClassInversion => check_class_inversion(form, h, v, k, tau, run.tol)?,
                Law::ClassGamma0 => check_class_gamma0(form, h, v, k, &mats[i], adapted_tau(&mats[i], tau), run.tol)?,
                Law::Translation => check_translation(form, h, v, k, tau, run.tol)?,
                Law::Rescale => check_rescale(form, h, v, k, 2, tau, run.tol)?,
                Law::PsiCusp => {
                    let k = 2 + 2 * (i % 2) as u32;
                    check_psi_cusp(form, v, k, &mats[i], adapted_tau(&mats[i], tau), run.tol)?
                }
                Law::Poisson => {
                    let x: Vec<_> = (0..f).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=7))).collect();
                    check_poisson(form, &x, tau, run.tol)?
                }
                Law::GaussOrthogonality => check_gauss_orthogonality(form, &mats[i], run.tol)?,
                Law::GaussClosedForm => check_gauss_closed_form(form, h, &mats[i], run.tol)?,
            };
            out.push(rep);
        }
    }
    Ok(out)
}
