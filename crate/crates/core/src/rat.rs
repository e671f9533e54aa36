//! Exact rational scalars and the extended rational line.
//!
//! Everything downstream is computed over `Rat` (arbitrary-precision
//! rationals) or over [`ExtRat`], the rationals extended by `±∞`. Valuations
//! use `+∞` for the valuation of zero; log-norms use `-∞` for the norm of the
//! zero function. No floating point appears anywhere in this crate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational number. `BigRational` keeps itself reduced, so valuations
/// never depend on the representation of their input.
pub type Rat = BigRational;

/// Build a rational from an integer pair. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Render a rational as `"a/b"`, or `"a"` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"a"` or `"a/b"` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let bad = || Error::BadRational(s.to_string());
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((a, b)) => {
            let n = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// A rational extended by `-∞` and `+∞`.
///
/// The order is total: `-∞ < q < +∞`. Addition treats the infinities as
/// absorbing and panics on `+∞ + -∞`, which never arises from the formulas
/// in this crate (norms and valuations of a nonzero side are finite).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRat {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(Rat::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    /// Finite value, if any.
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(q) => Some(q),
            _ => None,
        }
    }

    /// Finite value or an error naming its role.
    pub fn expect_finite(&self, role: &str) -> Result<Rat, Error> {
        match self {
            ExtRat::Finite(q) => Ok(q.clone()),
            _ => Err(Error::ExpectedFinite(role.to_string())),
        }
    }

    pub fn min(self, other: ExtRat) -> ExtRat {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: ExtRat) -> ExtRat {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(q: Rat) -> Self {
        ExtRat::Finite(q)
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRat::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for ExtRat {
    type Output = ExtRat;

    fn add(self, other: ExtRat) -> ExtRat {
        use ExtRat::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (PosInf, NegInf) | (NegInf, PosInf) => {
                panic!("indeterminate sum +inf + -inf")
            }
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
        }
    }
}

impl Neg for ExtRat {
    type Output = ExtRat;

    fn neg(self) -> ExtRat {
        match self {
            ExtRat::NegInf => ExtRat::PosInf,
            ExtRat::Finite(q) => ExtRat::Finite(-q),
            ExtRat::PosInf => ExtRat::NegInf,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => write!(f, "-inf"),
            ExtRat::Finite(q) => write!(f, "{}", format_rat(q)),
            ExtRat::PosInf => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" | "+inf" => Ok(ExtRat::PosInf),
            "-inf" => Ok(ExtRat::NegInf),
            other => Ok(ExtRat::Finite(parse_rat(other)?)),
        }
    }
}

/// The residue prime fixing the valuation. Normalized so that `val(p) = 1`,
/// i.e. `-log_p |p| = 1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Prime(u64);

impl Prime {
    /// Accepts any prime `p >= 2`.
    pub fn new(p: u64) -> Result<Prime, Error> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map(|sq| sq <= n).unwrap_or(false) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Exact p-adic valuation of an integer: the multiplicity of `p` in `n`.
/// Returns `+∞` for zero.
pub fn int_valuation(n: &BigInt, p: Prime) -> ExtRat {
    if n.is_zero() {
        return ExtRat::PosInf;
    }
    let p = p.to_bigint();
    let mut m = n.abs();
    let mut v: i64 = 0;
    loop {
        let (q, r) = num::Integer::div_rem(&m, &p);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    ExtRat::Finite(rat_int(v))
}
