//! Shared test support: independent oracles and seeded random generators.
//!
//! The oracles here deliberately avoid the code paths they check. The
//! formal log-derivative oracle works in the differential algebra
//! ℚ(f_0, ..., f_K) with the derivation f_i -> f_{i+1}; the dimension
//! oracle expands the generating function by plain polynomial arithmetic.

#![allow(dead_code)]

use num::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nonarch_core::jets::multi::{MultiPoly, MultiRational};
use nonarch_core::rat::{rat_int, Prime, Rat};
use nonarch_core::series::{AnnulusWindow, LaurentPoly, RationalFn};
use nonarch_core::ExtRat;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// random data

pub fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num = rng.random_range(-40i64..=40);
    let den = rng.random_range(1i64..=12);
    Rat::new(num.into(), den.into())
}

pub fn rand_nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let q = rand_rat(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn rand_prime(rng: &mut ChaCha8Rng) -> Prime {
    let p = [2u64, 3, 5][rng.random_range(0..3)];
    Prime::new(p).unwrap()
}

/// Nonzero Laurent polynomial with exponents in `[lo, hi]`.
pub fn rand_laurent(
    rng: &mut ChaCha8Rng,
    prime: Prime,
    lo: i64,
    hi: i64,
    max_terms: usize,
) -> LaurentPoly {
    loop {
        let terms = rng.random_range(1..=max_terms);
        let f = LaurentPoly::from_terms(
            (0..terms).map(|_| (rng.random_range(lo..=hi), rand_rat(rng))),
            prime,
        );
        if !f.is_zero() {
            return f;
        }
    }
}

/// Nonconstant rational function with the same exponent budget in the
/// numerator and the denominator.
pub fn rand_rational_fn(rng: &mut ChaCha8Rng, prime: Prime, lo: i64, hi: i64) -> RationalFn {
    loop {
        let num = rand_laurent(rng, prime, lo, hi, 5);
        let den = rand_laurent(rng, prime, lo, hi, 3);
        let f = RationalFn::new(num, den).unwrap();
        if !f.is_constant() {
            return f;
        }
    }
}

/// Rational function with no pole at the origin (and denominator keeping a
/// nonzero constant term before canonicalization).
pub fn rand_rational_fn_no_origin_pole(
    rng: &mut ChaCha8Rng,
    prime: Prime,
    hi: i64,
) -> RationalFn {
    loop {
        let num = rand_laurent(rng, prime, 0, hi, 5);
        let mut den = rand_laurent(rng, prime, 0, hi, 3);
        if den.coeff(0).is_zero() {
            den = &den + &LaurentPoly::constant(rat_int(1), prime);
            if den.is_zero() {
                continue;
            }
        }
        let f = RationalFn::new(num, den).unwrap();
        if !f.is_constant() && f.ord_at_zero().is_some_and(|o| o >= 0) {
            return f;
        }
    }
}

pub fn rand_finite_window(rng: &mut ChaCha8Rng, spread: i64) -> AnnulusWindow {
    let a = rand_rat(rng);
    let b = &a + rat_int(rng.random_range(0..=spread)) + Rat::new(1.into(), 2.into());
    AnnulusWindow::closed(a, b).unwrap()
}

// ---------------------------------------------------------------------------
// formal log-derivative oracle

/// The derivation `f_i -> f_{i+1}` on ℚ[f_0, ..., f_{n-1}].
pub fn derive_shift(p: &MultiPoly) -> MultiPoly {
    let n = p.nvars();
    let mut out = MultiPoly::zero(n);
    for (e, c) in p.terms() {
        for i in 0..n {
            if e[i] == 0 {
                continue;
            }
            assert!(i + 1 < n, "derivation needs a spare variable");
            let mut e2 = e.clone();
            e2[i] -= 1;
            e2[i + 1] += 1;
            out = out.add(&MultiPoly::from_terms(
                [(e2, c * rat_int(e[i]))],
                n,
            ));
        }
    }
    out
}

pub fn derive_rational(q: &MultiRational) -> MultiRational {
    let u = q.num();
    let v = q.den();
    let num = derive_shift(u).mul(v).add(&u.mul(&derive_shift(v)).neg());
    MultiRational::new(num, v.mul(v)).unwrap()
}

/// `d^k log f` as an element of ℚ(f_0, ..., f_{nvars-1}), built from
/// `d log f = f_1/f_0` by iterating the derivation.
pub fn formal_dlog(k: usize, nvars: usize) -> MultiRational {
    assert!(k >= 1 && nvars > k, "need variables f_0..f_k");
    let f0 = MultiPoly::var(0, nvars);
    let f1 = MultiPoly::var(1, nvars);
    let mut ell = MultiRational::new(f1, f0).unwrap();
    for _ in 1..k {
        ell = derive_rational(&ell);
    }
    ell
}

// ---------------------------------------------------------------------------
// generating-function oracle for jet-differential dimensions

/// Coefficient of `x^m` in `Π_{j<=k} (1 - x^j)^{-n}`, computed by expanding
/// each factor as the truncated geometric-power series
/// `(Σ_t x^{jt})^n` and multiplying polynomials with u128 coefficients.
pub fn gg_generating_coefficient(n: u64, k: u64, m: u64) -> u128 {
    let m = m as usize;
    let mut series = vec![0u128; m + 1];
    series[0] = 1;
    let mul_trunc = |a: &[u128], b: &[u128]| -> Vec<u128> {
        let mut out = vec![0u128; m + 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (jj, &y) in b.iter().enumerate() {
                if i + jj > m {
                    break;
                }
                out[i + jj] += x * y;
            }
        }
        out
    };
    for j in 1..=k as usize {
        // geometric series in x^j
        let mut geo = vec![0u128; m + 1];
        let mut t = 0;
        while j * t <= m {
            geo[j * t] = 1;
            t += 1;
        }
        for _ in 0..n {
            series = mul_trunc(&series, &geo);
        }
    }
    series[m]
}

// ---------------------------------------------------------------------------
// misc

pub fn fin(v: i64) -> ExtRat {
    ExtRat::Finite(rat_int(v))
}
