//! Fincke–Pohst style enumeration of integer points in an ellipsoid
//! `{x ∈ ℤᶠ : (x+c)'G(x+c) ≤ B}`.
//!
//! The completion of squares
//! `x'Gx = Σᵢ dᵢ·(xᵢ + Σ_{j<i} μᵢⱼ·xⱼ)²`
//! is computed exactly over ℚ, eliminating from the last coordinate, so the
//! first coordinate ends up outermost and points come out in lexicographic
//! order. Traversal runs in `f64` with widened bounds; callers filter the
//! candidates with an exact test, so rounding can only add candidates, never
//! lose them.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Float, Signed, Zero};

use crate::arith::{rational_to_f64, Rational};
use crate::Error;

/// Candidate budget for a single enumeration.
pub const DEFAULT_BUDGET: f64 = 1.5e8;

const REL_SLACK: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct Ellipsoid {
    dim: usize,
    /// dᵢ, all positive.
    diag: Vec<f64>,
    /// μᵢⱼ for j < i, row-major with stride `dim`.
    mu: Vec<f64>,
    det: f64,
}

/// Exact completion of squares of a symmetric rational matrix, eliminating
/// from the last index. Returns `(d, μ)`; `None` if some pivot is not
/// positive.
pub fn square_completion(gram: &[Rational], dim: usize) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let mut s: Vec<Rational> = gram.to_vec();
    let mut diag = vec![Rational::zero(); dim];
    let mut mu = vec![Rational::zero(); dim * dim];
    for i in (0..dim).rev() {
        let pivot = s[i * dim + i].clone();
        if !pivot.is_positive() {
            return None;
        }
        for j in 0..i {
            mu[i * dim + j] = &s[i * dim + j] / &pivot;
        }
        for r in 0..i {
            for c in 0..i {
                let delta = &s[r * dim + i] * &s[i * dim + c] / &pivot;
                s[r * dim + c] -= delta;
            }
        }
        diag[i] = pivot;
    }
    Some((diag, mu))
}

impl Ellipsoid {
    /// Builds the enumerator for a symmetric positive-definite rational
    /// matrix given row-major.
    pub fn new(gram: &[Rational], dim: usize) -> Option<Self> {
        let (d, mu) = square_completion(gram, dim)?;
        let diag: Vec<f64> = d.iter().map(rational_to_f64).collect();
        let det = diag.iter().product();
        Some(Self { dim, diag, mu: mu.iter().map(rational_to_f64).collect(), det })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rough number of lattice points with `x'Gx ≤ bound`: the ellipsoid
    /// volume, inflated to cover the boundary layer.
    pub fn estimate_count(&self, bound: f64) -> f64 {
        let f = self.dim as f64;
        let half = f / 2.0;
        // Volume of the unit f-ball: π^(f/2) / Γ(f/2 + 1).
        let unit_ball = Float::powf(core::f64::consts::PI, half) / Float::exp(libm_lgamma(half + 1.0));
        let r = Float::sqrt(bound.max(0.0)) + Float::sqrt(f) * 0.5 * self.max_axis_scale();
        unit_ball * Float::powf(r, f) / Float::sqrt(self.det) + 1.0
    }

    fn max_axis_scale(&self) -> f64 {
        self.diag.iter().fold(0.0f64, |m, d| m.max(Float::sqrt(*d)))
    }

    /// Visits every integer `x` with `(x+c)'G(x+c) ≤ bound` (plus possibly a
    /// few just outside, see module docs) in lexicographic order. The
    /// visitor receives `x` and the float value of the form.
    pub fn for_each<F>(&self, center: &[f64], bound: f64, budget: f64, mut visit: F) -> Result<(), Error>
    where
        F: FnMut(&[i64], f64),
    {
        let n = self.dim;
        debug_assert_eq!(center.len(), n);
        let est = self.estimate_count(bound);
        if est > budget {
            return Err(Error::EnumerationBudget { estimate: est });
        }
        if bound < 0.0 {
            return Ok(());
        }
        let slack = bound.abs() * REL_SLACK + 1e-12;
        let mut x = vec![0i64; n];
        let mut y = vec![0f64; n];
        let mut partial = vec![0f64; n + 1];
        let mut upper = vec![0i64; n];
        let mut shift = vec![0f64; n];

        let open = |level: usize,
                    y: &[f64],
                    partial: &[f64],
                    shift: &mut [f64],
                    x: &mut [i64],
                    upper: &mut [i64]|
         -> bool {
            let mut u = center[level];
            for j in 0..level {
                u += self.mu[level * n + j] * y[j];
            }
            shift[level] = u;
            let rem = bound - partial[level] + slack;
            if rem < 0.0 {
                return false;
            }
            let radius = Float::sqrt(rem / self.diag[level]) * (1.0 + REL_SLACK) + 1e-9;
            let lo = Float::ceil(-u - radius);
            let hi = Float::floor(-u + radius);
            if lo > hi {
                return false;
            }
            x[level] = lo as i64;
            upper[level] = hi as i64;
            true
        };

        if !open(0, &y, &partial, &mut shift, &mut x, &mut upper) {
            return Ok(());
        }
        let mut level = 0usize;
        loop {
            if x[level] > upper[level] {
                if level == 0 {
                    return Ok(());
                }
                level -= 1;
                x[level] += 1;
                continue;
            }
            let t = x[level] as f64 + shift[level];
            y[level] = x[level] as f64 + center[level];
            partial[level + 1] = partial[level] + self.diag[level] * t * t;
            if level + 1 == n {
                if partial[n] <= bound + slack {
                    visit(&x, partial[n]);
                }
                x[level] += 1;
            } else if open(level + 1, &y, &partial, &mut shift, &mut x, &mut upper) {
                level += 1;
            } else {
                x[level] += 1;
            }
        }
    }
}

/// ln Γ(x) for x ≥ 1 via Stirling with a shift; plenty for volume estimates.
fn libm_lgamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 8.0 {
        acc -= Float::ln(x);
        x += 1.0;
    }
    let two_pi = 2.0 * core::f64::consts::PI;
    acc + (x - 0.5) * Float::ln(x) - x + 0.5 * Float::ln(two_pi) + 1.0 / (12.0 * x)
}
