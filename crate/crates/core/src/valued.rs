//! Exact valued-field arithmetic: rationals carrying a p-adic valuation.
//!
//! The coefficient field is ℚ with the p-adic valuation `v_p`, normalized so
//! that `v_p(p) = 1`. The multiplicative norm is recovered through its exact
//! logarithm: `lognorm(x) = log_p |x|_p = -v_p(x)`, a rational (or `-∞` for
//! zero). Working base p keeps every "log" quantity in this crate an exact
//! rational; rescaling by `ln p` would only change all statements by a
//! positive constant factor.
//!
//! Contracts (tested below and by the property suite):
//! - `val(x·y) = val(x) + val(y)`
//! - `val(x + y) >= min(val(x), val(y))`, with equality when `val(x) != val(y)`
//! - `val(x) = +∞` iff `x = 0`

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Zero;

use crate::error::Error;
use crate::rat::{int_valuation, ExtRat, Prime, Rat};

/// A rational number together with its valuation context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedScalar {
    value: Rat,
    prime: Prime,
}

/// Exact p-adic valuation of a rational: `v_p(num) - v_p(den)`, `+∞` for zero.
pub fn padic_val(q: &Rat, p: Prime) -> ExtRat {
    if q.is_zero() {
        return ExtRat::PosInf;
    }
    let vn = int_valuation(q.numer(), p).expect_finite("valuation").unwrap();
    let vd = int_valuation(q.denom(), p).expect_finite("valuation").unwrap();
    ExtRat::Finite(vn - vd)
}

/// `log_p |q|_p = -v_p(q)`; `-∞` for zero.
pub fn padic_lognorm(q: &Rat, p: Prime) -> ExtRat {
    -padic_val(q, p)
}

impl ValuedScalar {
    pub fn new(value: Rat, prime: Prime) -> Self {
        ValuedScalar { value, prime }
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Exact additive valuation; `val(0) = +∞`.
    pub fn val(&self) -> ExtRat {
        padic_val(&self.value, self.prime)
    }

    /// `log_p` of the p-adic absolute value; `lognorm(0) = -∞`.
    pub fn lognorm(&self) -> ExtRat {
        padic_lognorm(&self.value, self.prime)
    }

    /// Exact division. The divisor must be nonzero.
    pub fn div(&self, other: &ValuedScalar) -> Result<ValuedScalar, Error> {
        self.check(other);
        if other.value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ValuedScalar::new(&self.value / &other.value, self.prime))
    }

    fn check(&self, other: &ValuedScalar) {
        assert_eq!(
            self.prime, other.prime,
            "valued scalars with different primes cannot be combined"
        );
    }
}

impl fmt::Display for ValuedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::rat::format_rat(&self.value))
    }
}

impl Add for &ValuedScalar {
    type Output = ValuedScalar;
    fn add(self, other: &ValuedScalar) -> ValuedScalar {
        self.check(other);
        ValuedScalar::new(&self.value + &other.value, self.prime)
    }
}

impl Sub for &ValuedScalar {
    type Output = ValuedScalar;
    fn sub(self, other: &ValuedScalar) -> ValuedScalar {
        self.check(other);
        ValuedScalar::new(&self.value - &other.value, self.prime)
    }
}

impl Mul for &ValuedScalar {
    type Output = ValuedScalar;
    fn mul(self, other: &ValuedScalar) -> ValuedScalar {
        self.check(other);
        ValuedScalar::new(&self.value * &other.value, self.prime)
    }
}

impl Neg for &ValuedScalar {
    type Output = ValuedScalar;
    fn neg(self) -> ValuedScalar {
        ValuedScalar::new(-self.value.clone(), self.prime)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn scalar(n: i64, d: i64, p: u64) -> ValuedScalar {
        ValuedScalar::new(rat(n, d), Prime::new(p).unwrap())
    }

    fn fin(n: i64) -> ExtRat {
        ExtRat::Finite(rat_int(n))
    }

    #[test]
    fn val_of_uniformizer_is_one() {
        for p in [2u64, 3, 5, 7] {
            assert_eq!(scalar(p as i64, 1, p).val(), fin(1));
        }
    }

    #[test]
    fn val_respects_multiplicativity() {
        // val(1/p^2) = -2
        assert_eq!(scalar(1, 4, 2).val(), fin(-2));
        // p = 2: 6 = 2 * 3
        assert_eq!(scalar(6, 1, 2).val(), fin(1));
        assert_eq!(scalar(0, 1, 2).val(), ExtRat::PosInf);
    }

    #[test]
    fn lognorm_values() {
        assert_eq!(scalar(1, 1, 5).lognorm(), fin(0));
        assert_eq!(scalar(5, 1, 5).lognorm(), fin(-1));
        // p = 3: v_3(9/2) = 2
        assert_eq!(scalar(9, 2, 3).lognorm(), fin(-2));
        assert_eq!(scalar(0, 1, 3).lognorm(), ExtRat::NegInf);
    }

    #[test]
    fn arithmetic_tracks_valuations() {
        let p2 = |n, d| scalar(n, d, 2);
        // 2 + 2 = 4 = 2^2
        assert_eq!((&p2(2, 1) + &p2(2, 1)).val(), fin(2));
        // distinct valuations: equality case of the ultrametric rule
        assert_eq!((&p2(1, 1) + &p2(2, 1)).val(), fin(0));
        let p5 = |n, d| scalar(n, d, 5);
        assert_eq!(
            (&p5(5, 1) * &p5(1, 5)).val(),
            fin(0),
            "p * 1/p is a unit"
        );
        assert!(p5(1, 1).div(&p5(0, 1)).is_err());
        assert_eq!(p5(3, 1).div(&p5(5, 1)).unwrap().val(), fin(-1));
    }

    #[test]
    fn integers_have_nonnegative_valuation() {
        for p in [2u64, 3, 5] {
            for n in 1..200i64 {
                let v = scalar(n, 1, p).val();
                assert!(v >= fin(0), "val_{p}({n}) < 0");
            }
        }
    }
}
