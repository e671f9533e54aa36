//! Green–Griffiths dimension counting.
//!
//! The graded pieces of the order-`k`, weight-`m` jet-differential bundle
//! in `n` variables are tensor products of symmetric powers indexed by
//! tuples `(l_1, ..., l_k)` with `l_1 + 2 l_2 + ... + k l_k = m`; each
//! summand contributes `Π C(n + l_i - 1, l_i)`. The total equals the
//! coefficient of `x^m` in `Π_{j<=k} (1 - x^j)^{-n}`, which the test suite
//! uses as an independent oracle.

use num::bigint::BigUint;
use num::{One, Zero};

/// `C(n, k)` by the multiplicative formula.
fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    for i in 0..k {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

/// Dimension of the symmetric power `Sym^l` of a rank-`n` space.
fn sym_dim(n: u64, l: u64) -> BigUint {
    binomial(n + l - 1, l)
}

/// Dimension of the space of jet differentials of order `k` and weight `m`
/// in `n` variables: the sum over `(l_1, ..., l_k)` with `Σ i·l_i = m` of
/// `Π sym_dim(n, l_i)`.
pub fn gg_dim(n: u64, k: u64, m: u64) -> BigUint {
    assert!(n >= 1 && k >= 1, "gg_dim needs n, k >= 1");
    fn rec(n: u64, order: u64, remaining: u64) -> BigUint {
        if order == 1 {
            // l_1 is forced
            return sym_dim(n, remaining);
        }
        let mut total = BigUint::zero();
        let mut l = 0u64;
        while order * l <= remaining {
            total += sym_dim(n, l) * rec(n, order - 1, remaining - order * l);
            l += 1;
        }
        total
    }
    rec(n, k, m)
}
