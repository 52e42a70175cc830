use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use theta_forge_core::arith::{bernoulli, binomial, gamma_coeff, kronecker_symbol, rat, GaussianRational, Rational};
use theta_forge_core::lattice::{named, QuadraticForm};
use theta_forge_core::qseries::{FracQSeries, XSeries};

fn series_strategy() -> impl Strategy<Value = FracQSeries> {
    (prop::sample::select(vec![1u64, 4, 9]), 1u64..=30)
        .prop_flat_map(|(m, p)| {
            let len = (m * p) as usize;
            let term = (0..len as u64, -20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6);
            (Just(m), Just(p), prop::collection::vec(term, 0..12))
        })
        .prop_map(|(m, p, terms)| {
            let terms = terms
                .into_iter()
                .map(|(e, a, b, c, d)| (e, GaussianRational::new(rat(a, b), rat(c, d))));
            FracQSeries::from_terms(m, m * p, terms).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn rebase_round_trip(a in series_strategy(), factor in 1u64..=5) {
        let up = a.rebase(a.exp_denom() * factor).unwrap();
        prop_assert_eq!(up.restrict(a.exp_denom()).unwrap(), a);
    }

    #[test]
    fn xseries_with_one_coefficient_is_mul(a in series_strategy(), b in series_strategy()) {
        let xa = XSeries::new(vec![a.clone()]).unwrap();
        let xb = XSeries::new(vec![b.clone()]).unwrap();
        let prod = xa.mul(&xb);
        prop_assert_eq!(prod.coeff(0).unwrap(), &a.mul(&b));
    }

    #[test]
    fn kronecker_multiplicative(a in -500i64..=500, b in -500i64..=500, n in -500i64..=500) {
        prop_assert_eq!(kronecker_symbol(a * b, n), kronecker_symbol(a, n) * kronecker_symbol(b, n));
        prop_assert_eq!(kronecker_symbol(n, a * b), kronecker_symbol(n, a) * kronecker_symbol(n, b));
    }

    #[test]
    fn enumeration_matches_box_scan(idx in 0usize..5, bound in 0u64..=10) {
        let forms: Vec<QuadraticForm> = named::all().into_iter().map(|(_, f)| f).filter(|f| f.rank() <= 4).collect();
        let form = &forms[idx % forms.len()];
        let got = form.enumerate_upto(bound).unwrap();
        let want = box_scan(form, bound);
        prop_assert_eq!(got, want);
    }
}

/// All vectors with `Q(m) ≤ bound` in a box that certainly contains them,
/// in lexicographic order. `Q(m) ≥ λ_min·|m|²/2` and `λ_min ≥ det / trace^(f−1)`.
fn box_scan(form: &QuadraticForm, bound: u64) -> Vec<Vec<i64>> {
    let f = form.rank();
    let trace: i64 = (0..f).map(|i| form.entry(i, i)).sum();
    let lambda = form.det() as f64 / (trace as f64).powi(f as i32 - 1);
    let r = ((2.0 * bound as f64 / lambda).sqrt()).floor() as i64 + 1;
    let mut out = Vec::new();
    let mut m = vec![-r; f];
    loop {
        if form.q(&m) as u64 <= bound {
            out.push(m.clone());
        }
        let mut i = f;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            m[i] += 1;
            if m[i] <= r {
                break;
            }
            m[i] = -r;
        }
    }
}

#[test]
fn gamma_recursion_through_40() {
    let g = |i: i64, k: i64| -> Rational {
        if i < 0 || 2 * i > k {
            Rational::zero()
        } else {
            gamma_coeff(i as u32, k as u32)
        }
    };
    for k in 0..=40i64 {
        for i in 0..=21i64 {
            let lhs = g(i, k + 1);
            let rhs = Rational::from_integer(BigInt::from(k + 2 - 2 * i)) * g(i - 1, k) + g(i, k);
            assert_eq!(lhs, rhs, "i={i} k={k}");
        }
    }
}

#[test]
fn alternating_gamma_sums_cancel_through_40() {
    for k in 0..=40u32 {
        for u in 1..=k / 2 {
            let mut acc = Rational::zero();
            for j in 0..=u {
                let term = gamma_coeff(j, k) * gamma_coeff(u - j, k - 2 * j);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            assert!(acc.is_zero(), "u={u} k={k}");
        }
    }
}

#[test]
fn bernoulli_matches_recurrence_oracle() {
    // Σ_{j=0}^{n} C(n+1, j)·B_j = 0 with B_1 = −1/2.
    let mut b: Vec<Rational> = vec![Rational::one()];
    for n in 1..=60u32 {
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(n + 1, j as u32)) * bj;
        }
        b.push(-s / Rational::from_integer(BigInt::from(n + 1)));
    }
    assert_eq!(b[1], rat(-1, 2));
    for n in (2..=60).step_by(2) {
        assert_eq!(bernoulli(n).unwrap(), b[n as usize], "n={n}");
    }
    assert!(bernoulli(3).is_err());
    assert!(bernoulli(0).is_err());
}

#[test]
fn enumeration_symmetric_and_monotone() {
    for (name, form) in named::all() {
        let bound = if form.rank() > 4 { 2 } else { 8 };
        let vs = form.enumerate_upto(bound).unwrap();
        let mut sorted = vs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), vs.len(), "{name}: duplicates");
        for v in &vs {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            assert!(sorted.binary_search(&neg).is_ok(), "{name}: missing −m");
        }
        let mut last = 0;
        for b in 0..=bound {
            let n = form.enumerate_upto(b).unwrap().len();
            assert!(n >= last);
            last = n;
        }
        assert_eq!(form.enumerate_upto(0).unwrap(), vec![vec![0; form.rank()]]);
    }
}

#[test]
fn character_multiplicative_and_periodic() {
    for (name, form) in named::all() {
        let n = form.level() as i64;
        for a in 1..=4 * n {
            for b in 1..=4 * n {
                assert_eq!(form.character(a * b), form.character(a) * form.character(b), "{name}");
            }
            if num_integer::gcd(a, n) == 1 {
                assert_eq!(form.character(a), form.character(a + n), "{name} a={a}");
            }
        }
    }
}

#[test]
fn level_is_minimal() {
    for (name, form) in named::all() {
        let ok = |m: u64| -> bool {
            let f = form.rank();
            (0..f).all(|i| {
                (0..f).all(|j| {
                    let x = form.inverse_gram()[i * f + j].clone() * Rational::from_integer(BigInt::from(m));
                    x.is_integer() && (i != j || (x.to_integer() % 2u8).is_zero())
                })
            })
        };
        let n = form.level();
        assert!(ok(n), "{name}");
        for m in 1..n {
            assert!(!ok(m), "{name}: {m} already works");
        }
    }
}

#[test]
fn class_count_is_determinant() {
    for (name, form) in named::all() {
        assert_eq!(form.congruence_classes().len() as u64, form.det(), "{name}");
    }
}
