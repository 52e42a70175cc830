//! Even positive-definite quadratic forms `Q(x) = ½·x'Ax` with bilinear form
//! `⟨x, y⟩ = x'Ay`, their invariants (determinant, level, character),
//! short-vector enumeration, congruence classes and Gauss sums.

pub mod enumerate;
mod gauss;
mod insertion;
pub mod named;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{kronecker_symbol, rat_int, Rational};
use crate::{Error, FormError};

pub use enumerate::{Ellipsoid, DEFAULT_BUDGET};
pub use gauss::{class_orthogonality_sum, gauss_phi};
pub(crate) use gauss::unit_phase;
pub use insertion::InsertionVector;

/// A validated even positive-definite integral quadratic form of even rank.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    rank: usize,
    gram: Vec<i64>,
    det: u64,
    level: u64,
    inverse_gram: Vec<Rational>,
    ellipsoid: Ellipsoid,
}

impl PartialEq for QuadraticForm {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for QuadraticForm {}

/// A residue class `h mod N` with `A·h ≡ 0 (mod N)`; entries in `[0, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CongruenceClass {
    rep: Vec<i64>,
    level: u64,
}

impl CongruenceClass {
    pub fn rep(&self) -> &[i64] {
        &self.rep
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(|x| *x == 0)
    }
}

fn det_bareiss(m: &[i64], n: usize) -> BigInt {
    let mut a: Vec<BigInt> = m.iter().map(|v| BigInt::from(*v)).collect();
    let mut prev = BigInt::one();
    let mut sign = 1;
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
        }
        prev = a[k * n + k].clone();
    }
    prev * sign
}

fn invert(m: &[i64], n: usize) -> Vec<Rational> {
    let mut a: Vec<Rational> = m.iter().map(|v| rat_int(*v)).collect();
    let mut inv: Vec<Rational> = (0..n * n).map(|i| rat_int(i64::from(i / n == i % n))).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r * n + col].is_zero()).expect("nonsingular");
        if p != col {
            for c in 0..n {
                a.swap(col * n + c, p * n + c);
                inv.swap(col * n + c, p * n + c);
            }
        }
        let piv = a[col * n + col].clone();
        for c in 0..n {
            a[col * n + c] = &a[col * n + c] / &piv;
            inv[col * n + c] = &inv[col * n + c] / &piv;
        }
        for r in 0..n {
            if r == col || a[r * n + col].is_zero() {
                continue;
            }
            let factor = a[r * n + col].clone();
            for c in 0..n {
                let da = &factor * &a[col * n + c];
                a[r * n + c] -= da;
                let di = &factor * &inv[col * n + c];
                inv[r * n + c] -= di;
            }
        }
    }
    inv
}

fn level_works(inv: &[Rational], n: usize, level: u64) -> bool {
    let l = rat_int(level as i64);
    (0..n * n).all(|idx| {
        let v = &inv[idx] * &l;
        v.is_integer() && (idx / n != idx % n || v.to_integer().is_even())
    })
}

impl QuadraticForm {
    /// Validates a Gram matrix given as rows.
    pub fn new(gram: &[Vec<i64>]) -> Result<Self, FormError> {
        let n = gram.len();
        if n == 0 {
            return Err(FormError::Empty);
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(FormError::NotSquare);
        }
        Self::from_flat(n, gram.iter().flatten().copied().collect())
    }

    /// Validates a row-major `n × n` Gram matrix.
    pub fn from_flat(n: usize, gram: Vec<i64>) -> Result<Self, FormError> {
        if n == 0 {
            return Err(FormError::Empty);
        }
        if gram.len() != n * n {
            return Err(FormError::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i * n + j] != gram[j * n + i] {
                    return Err(FormError::NotSymmetric);
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| gram[i * n + i] % 2 != 0) {
            return Err(FormError::OddDiagonal(i));
        }
        if n % 2 == 1 {
            return Err(FormError::OddRank(n));
        }
        let as_rat: Vec<Rational> = gram.iter().map(|v| rat_int(*v)).collect();
        let ellipsoid = Ellipsoid::new(&as_rat, n).ok_or(FormError::NotPositiveDefinite)?;
        let det_big = det_bareiss(&gram, n);
        if !det_big.is_positive() {
            return Err(FormError::NotPositiveDefinite);
        }
        let det = det_big.to_u64().ok_or(FormError::NotPositiveDefinite)?;
        let inverse_gram = invert(&gram, n);

        // N·A⁻¹ integral with even diagonal certainly holds for twice the lcm of
        // all denominators; the level is the smallest divisor that still works.
        let denom_lcm = inverse_gram.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let bound = (denom_lcm * 2u32).to_u64().ok_or(FormError::NotPositiveDefinite)?;
        let level = (1..=bound)
            .filter(|d| bound % d == 0)
            .find(|&d| level_works(&inverse_gram, n, d))
            .expect("the bound itself always works");

        Ok(Self { rank: n, gram, det, level, inverse_gram, ellipsoid })
    }

    /// The form with Gram matrix `c·A`.
    pub fn scaled(&self, c: i64) -> Result<Self, FormError> {
        Self::from_flat(self.rank, self.gram.iter().map(|v| v * c).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// r = f / 2, the weight of the plain theta series.
    pub fn half_rank(&self) -> usize {
        self.rank / 2
    }

    pub fn det(&self) -> u64 {
        self.det
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn gram(&self) -> &[i64] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i * self.rank + j]
    }

    pub fn gram_rows(&self) -> Vec<Vec<i64>> {
        self.gram.chunks(self.rank).map(<[i64]>::to_vec).collect()
    }

    /// Row-major A⁻¹.
    pub fn inverse_gram(&self) -> &[Rational] {
        &self.inverse_gram
    }

    pub(crate) fn ellipsoid(&self) -> &Ellipsoid {
        &self.ellipsoid
    }

    pub(crate) fn check_dim(&self, v: &[i64]) -> Result<(), Error> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch { rank: self.rank, got: v.len() });
        }
        Ok(())
    }

    /// `A·x`.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.gram.chunks(self.rank).map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// `⟨x, y⟩ = x'Ay`.
    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> i64 {
        let ay = self.apply(y);
        x.iter().zip(&ay).map(|(a, b)| a * b).sum()
    }

    /// `Q(x) = ½·x'Ax`, an integer because the diagonal is even.
    pub fn q(&self, x: &[i64]) -> i64 {
        let n = self.rank;
        let mut acc = 0i64;
        for i in 0..n {
            let xi = x[i];
            if xi == 0 {
                continue;
            }
            acc += self.gram[i * n + i] / 2 * xi * xi;
            for j in 0..i {
                acc += self.gram[i * n + j] * xi * x[j];
            }
        }
        acc
    }

    /// ε(n) = ((−1)ʳ·D / n).
    pub fn character(&self, n: i64) -> i32 {
        let sign = if self.half_rank() % 2 == 0 { 1 } else { -1 };
        kronecker_symbol(sign * self.det as i64, n)
    }

    /// All `m ∈ ℤᶠ` with `Q(m) ≤ bound`, each once, in lexicographic order.
    pub fn enumerate_upto(&self, bound: u64) -> Result<Vec<Vec<i64>>, Error> {
        let mut out = Vec::new();
        self.for_each_upto(bound, |m, _| out.push(m.to_vec()))?;
        Ok(out)
    }

    /// Streams `(m, Q(m))` for all `m` with `Q(m) ≤ bound` in lexicographic
    /// order, without materializing the list.
    pub fn for_each_upto<F>(&self, bound: u64, mut visit: F) -> Result<(), Error>
    where
        F: FnMut(&[i64], u64),
    {
        let center = vec![0.0; self.rank];
        self.ellipsoid.for_each(&center, 2.0 * bound as f64, DEFAULT_BUDGET, |m, _| {
            let qm = self.q(m);
            if qm as u64 <= bound {
                visit(m, qm as u64);
            }
        })
    }

    /// Vectors with `Q(α) = 1`.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.for_each_upto(1, |m, qm| {
            if qm == 1 {
                out.push(m.to_vec());
            }
        })
        .expect("tiny enumeration");
        out
    }

    /// The lexicographically first root, if any.
    pub fn first_root(&self) -> Option<Vec<i64>> {
        self.roots().into_iter().next()
    }

    /// Wraps `h` as a congruence class after reducing it mod N.
    pub fn class(&self, h: &[i64]) -> Result<CongruenceClass, Error> {
        self.check_dim(h)?;
        let n = self.level as i64;
        let rep: Vec<i64> = h.iter().map(|x| x.rem_euclid(n)).collect();
        if self.apply(&rep).iter().any(|x| x.rem_euclid(n) != 0) {
            return Err(Error::InvalidClass);
        }
        Ok(CongruenceClass { rep, level: self.level })
    }

    pub fn zero_class(&self) -> CongruenceClass {
        CongruenceClass { rep: vec![0; self.rank], level: self.level }
    }

    /// All classes `h mod N` with `A·h ≡ 0 (mod N)`, in lexicographic order.
    /// There are exactly `det A` of them.
    pub fn congruence_classes(&self) -> Vec<CongruenceClass> {
        let n = self.level as i64;
        let mut out = Vec::new();
        let mut h = vec![0i64; self.rank];
        loop {
            if self.apply(&h).iter().all(|x| x.rem_euclid(n) == 0) {
                out.push(CongruenceClass { rep: h.clone(), level: self.level });
            }
            // Odometer with the last coordinate fastest.
            let mut i = self.rank;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                h[i] += 1;
                if h[i] < n {
                    break;
                }
                h[i] = 0;
            }
        }
    }

    /// All `m ≡ h (mod N)` with `Q(m)/N² ≤ bound`, in lexicographic order.
    pub fn enumerate_congruence(&self, h: &CongruenceClass, bound: &Rational) -> Result<Vec<Vec<i64>>, Error> {
        let mut out = Vec::new();
        self.for_each_in_class(h, bound, |m, _| out.push(m.to_vec()))?;
        Ok(out)
    }

    /// Streams `(m, Q(m))` for `m ≡ h (mod N)` with `Q(m)/N² ≤ bound`.
    pub fn for_each_in_class<F>(&self, h: &CongruenceClass, bound: &Rational, mut visit: F) -> Result<(), Error>
    where
        F: FnMut(&[i64], u64),
    {
        if h.level != self.level || h.rep.len() != self.rank {
            return Err(Error::InvalidClass);
        }
        if bound.is_negative() {
            return Ok(());
        }
        let n = self.level as i64;
        let n2 = Rational::from_integer(BigInt::from(n * n));
        // Q(m) ≤ bound·N², as an integer comparison.
        let cap = (bound * &n2).floor().to_integer().to_i64().ok_or(Error::EnumerationBudget { estimate: f64::INFINITY })?;
        let center: Vec<f64> = h.rep.iter().map(|x| *x as f64 / n as f64).collect();
        let float_bound = 2.0 * cap as f64 / (n * n) as f64;
        let mut m = vec![0i64; self.rank];
        self.ellipsoid.for_each(&center, float_bound, DEFAULT_BUDGET, |t, _| {
            for ((mi, ti), hi) in m.iter_mut().zip(t).zip(&h.rep) {
                *mi = hi + n * ti;
            }
            let qm = self.q(&m);
            if qm <= cap {
                visit(&m, qm as u64);
            }
        })
    }
}
