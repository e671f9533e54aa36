//! Quotients of Laurent polynomials — meromorphic functions at desk scale.
//!
//! Canonical form: numerator and denominator are coprime (common polynomial
//! factors cancelled), the denominator's lowest exponent is zero and its
//! lowest coefficient is one. The form is idempotent, makes equality
//! syntactic, and pins zeros/poles to the numerator/denominator: the
//! denominator never vanishes at the origin, so the order of a rational
//! function at the origin is the numerator's lowest exponent.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::One;

use crate::error::Error;
use crate::rat::{ExtRat, Prime, Rat};
use crate::series::laurent::{poly_gcd, poly_divmod, LaurentPoly};
use crate::series::window::AnnulusWindow;

/// Log-radii paired with multiplicities, in increasing radius order.
pub type RadiusCounts = Vec<(Rat, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    /// Build `num/den` and canonicalize. Rejects a zero denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, Error> {
        assert_eq!(num.prime(), den.prime(), "prime context mismatch");
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        let prime = num.prime();
        if num.is_zero() {
            return RationalFn {
                num: LaurentPoly::zero(prime),
                den: LaurentPoly::one(prime),
            };
        }
        // cancel the common polynomial factor of the polynomial parts
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.max_exp() == Some(0) {
            (num, den)
        } else {
            let shift_n = num.min_exp().unwrap();
            let shift_d = den.min_exp().unwrap();
            let (qn, rn) = poly_divmod(&num.shift(-shift_n), &g);
            let (qd, rd) = poly_divmod(&den.shift(-shift_d), &g);
            debug_assert!(rn.is_zero() && rd.is_zero());
            (qn.shift(shift_n), qd.shift(shift_d))
        };
        // monomial normalization: denominator starts at exponent zero...
        let s = den.min_exp().unwrap();
        let num = num.shift(-s);
        let den = den.shift(-s);
        // ...with lowest coefficient one
        let c = den.coeff(den.min_exp().unwrap());
        let inv = c.recip();
        RationalFn {
            num: num.mul_monomial(0, &inv),
            den: den.mul_monomial(0, &inv),
        }
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        let prime = num.prime();
        Self::canonical(num, LaurentPoly::one(prime))
    }

    pub fn constant(c: Rat, prime: Prime) -> Self {
        Self::from_poly(LaurentPoly::constant(c, prime))
    }

    /// The coordinate `z` as a rational function.
    pub fn var(prime: Prime) -> Self {
        Self::from_poly(LaurentPoly::var(prime))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn prime(&self) -> Prime {
        self.num.prime()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Order of vanishing at the origin (negative for a pole). In canonical
    /// form the denominator does not vanish at the origin.
    pub fn ord_at_zero(&self) -> Option<i64> {
        self.num.min_exp()
    }

    /// `1/f`; errors when `f = 0`.
    pub fn reciprocal(&self) -> Result<RationalFn, Error> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    /// `f - a` for a scalar target.
    pub fn sub_scalar(&self, a: &Rat) -> RationalFn {
        let shift = self.den.mul_monomial(0, a);
        Self::canonical(&self.num - &shift, self.den.clone())
    }

    /// Symbolic derivative by the quotient rule; the result canonicalizes,
    /// so iterated derivatives stay small.
    pub fn derivative(&self) -> RationalFn {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        Self::canonical(num, den)
    }

    pub fn derivative_n(&self, k: u32) -> RationalFn {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.derivative();
        }
        f
    }

    /// Integer power; negative exponents invert first (error on `f = 0`).
    pub fn powi(&self, e: i64) -> Result<RationalFn, Error> {
        let base = if e < 0 { self.reciprocal()? } else { self.clone() };
        let mut acc = RationalFn::constant(Rat::one(), self.prime());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// `log_p |f|_{p^t} = log_p|num|_{p^t} - log_p|den|_{p^t}`. Gauss
    /// multiplicativity makes this independent of the representative.
    pub fn gauss_norm(&self, t: &Rat) -> ExtRat {
        if self.num.is_zero() {
            return ExtRat::NegInf;
        }
        self.num.gauss_norm(t) + -self.den.gauss_norm(t)
    }

    /// `f(1/z)` together with the reflected window.
    pub fn invert_variable(&self, window: &AnnulusWindow) -> (RationalFn, AnnulusWindow) {
        let f = Self::canonical(self.num.invert_variable(), self.den.invert_variable());
        (f, window.reflect())
    }

    /// Zeros and poles (log-radius, multiplicity) of the reduced function.
    /// The origin is reported through `ord_at_zero`, not here.
    pub fn zero_pole_radii(&self) -> Result<(RadiusCounts, RadiusCounts), Error> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let zeros = self.num.zero_radii()?.1;
        let poles = self.den.zero_radii()?.1;
        Ok((zeros, poles))
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, other: &RationalFn) -> RationalFn {
        RationalFn::canonical(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, other: &RationalFn) -> RationalFn {
        self + &(-other)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, other: &RationalFn) -> RationalFn {
        RationalFn::canonical(&self.num * &other.num, &self.den * &other.den)
    }
}

impl RationalFn {
    /// Exact division; errors when `other = 0`.
    pub fn div(&self, other: &RationalFn) -> Result<RationalFn, Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.reciprocal()?)
    }
}
