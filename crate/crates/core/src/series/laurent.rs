//! Finite-support Laurent polynomials over the valued rationals.
//!
//! These are the analytic functions at desk scale: every in-scope identity
//! (Gauss multiplicativity, Jensen, zero counting) is exact on this class,
//! and the convergence condition on annuli is vacuous for finite support.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use crate::error::Error;
use crate::rat::{ExtRat, Prime, Rat};
use crate::series::trop::{NewtonPolygon, TropPoly};
use crate::valued::padic_lognorm;

/// `f(z) = Σ a_n z^n` with finitely many nonzero `a_n ∈ ℚ`, tied to the
/// prime that fixes the coefficient norms. No zero coefficients are stored;
/// the empty map is the zero function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    prime: Prime,
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero(prime: Prime) -> Self {
        LaurentPoly {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat, prime: Prime) -> Self {
        Self::monomial(0, c, prime)
    }

    pub fn one(prime: Prime) -> Self {
        Self::constant(Rat::one(), prime)
    }

    /// `c z^n`.
    pub fn monomial(n: i64, c: Rat, prime: Prime) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        LaurentPoly { prime, terms }
    }

    /// The coordinate `z`.
    pub fn var(prime: Prime) -> Self {
        Self::monomial(1, Rat::one(), prime)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I, prime: Prime) -> Self {
        let mut map = BTreeMap::new();
        for (n, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(n).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                map.remove(&n);
            }
        }
        LaurentPoly { prime, terms: map }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Support restricted to the single exponent zero (or empty).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&n| n == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    pub fn coeff(&self, n: i64) -> Rat {
        self.terms.get(&n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check(&self, other: &LaurentPoly) {
        assert_eq!(
            self.prime, other.prime,
            "Laurent polynomials with different primes cannot be combined"
        );
    }

    /// Multiply by `c z^n`.
    pub fn mul_monomial(&self, n: i64, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.prime);
        }
        LaurentPoly {
            prime: self.prime,
            terms: self
                .terms
                .iter()
                .map(|(&m, a)| (m + n, a * c))
                .collect(),
        }
    }

    /// Shift every exponent by `n` (multiplication by `z^n`).
    pub fn shift(&self, n: i64) -> LaurentPoly {
        self.mul_monomial(n, &Rat::one())
    }

    /// Termwise derivative: `d(a z^n) = n a z^{n-1}`.
    pub fn derivative(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(&n, a)| (n - 1, a * Rat::from_integer(n.into()))),
            self.prime,
        )
    }

    /// `f(1/z)`: negate every exponent.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly {
            prime: self.prime,
            terms: self.terms.iter().map(|(&n, c)| (-n, c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.prime);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The exact Gauss norm in logarithmic form:
    /// `log_p |f|_{p^t} = max_n (log_p|a_n| + n t)`, `-∞` for the zero
    /// function.
    pub fn gauss_norm(&self, t: &Rat) -> ExtRat {
        self.terms
            .iter()
            .map(|(&n, a)| {
                padic_lognorm(a, self.prime) + ExtRat::Finite(t * Rat::from_integer(n.into()))
            })
            .max()
            .unwrap_or(ExtRat::NegInf)
    }

    /// Whole-window form of the Gauss norm: the tropical polynomial
    /// `t -> max_n (log_p|a_n| + n t)`. Errors on the zero function.
    pub fn lognorm_fn(&self) -> Result<TropPoly, Error> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(TropPoly::from_terms(self.terms.iter().map(|(&n, a)| {
            let c = padic_lognorm(a, self.prime)
                .expect_finite("log-norm of a nonzero coefficient")
                .unwrap();
            (n, c)
        })))
    }

    /// Least and greatest exponent attaining the Gauss norm at log-radius
    /// `t`: the `k_f` / `K_f` pair whose difference counts zeros.
    ///
    /// At `t = -∞` (radius zero) the function must have no negative
    /// exponents, and the convention `(0, lowest support index)` applies.
    /// At `t = +∞` the limiting argmax is the largest support index.
    pub fn critical_exponents(&self, t: &ExtRat) -> Result<(i64, i64), Error> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        match t {
            ExtRat::NegInf => {
                let lo = self.min_exp().unwrap();
                if lo < 0 {
                    return Err(Error::NegativeExponentAtZero);
                }
                Ok((0, lo))
            }
            ExtRat::PosInf => {
                let hi = self.max_exp().unwrap();
                Ok((hi, hi))
            }
            ExtRat::Finite(t) => Ok(self.lognorm_fn()?.argmax_bounds(t)),
        }
    }

    /// Zeros in the closed annulus `A[p^t_low, p^t_high]`, counting
    /// multiplicity: `K_f(t_high) - k_f(t_low)`.
    pub fn count_zeros(&self, window: &crate::series::AnnulusWindow) -> Result<i64, Error> {
        let (_, hi) = self.critical_exponents(window.t_high())?;
        let (lo, _) = self.critical_exponents(window.t_low())?;
        Ok(hi - lo)
    }

    /// The Newton polygon: upper convex hull of the coefficient points
    /// `(n, log_p|a_n|)`.
    pub fn newton_polygon(&self) -> Result<NewtonPolygon, Error> {
        Ok(self.lognorm_fn()?.newton_polygon())
    }

    /// Zero data: `(ord0, radii)` where `ord0` is the lowest support index
    /// (a zero at the origin when positive, a pole when negative) and
    /// `radii` lists the log-radii of the nonzero-radius zeros with
    /// multiplicities, in increasing order.
    pub fn zero_radii(&self) -> Result<(i64, Vec<(Rat, i64)>), Error> {
        let polygon = self.newton_polygon()?;
        Ok((self.min_exp().unwrap(), polygon.zeros()))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&n, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{}", crate::rat::format_rat(c))?,
                1 => write!(f, "{}*z", crate::rat::format_rat(c))?,
                _ => write!(f, "{}*z^{}", crate::rat::format_rat(c), n)?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, other: &LaurentPoly) -> LaurentPoly {
        self.check(other);
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(&n, c)| (n, c.clone()))
                .chain(other.terms.iter().map(|(&n, c)| (n, c.clone()))),
            self.prime,
        )
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, other: &LaurentPoly) -> LaurentPoly {
        self + &(-other)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            prime: self.prime,
            terms: self.terms.iter().map(|(&n, c)| (n, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        self.check(other);
        let mut terms: BTreeMap<i64, Rat> = BTreeMap::new();
        for (&n, a) in &self.terms {
            for (&m, b) in &other.terms {
                let entry = terms.entry(n + m).or_insert_with(Rat::zero);
                *entry += a * b;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly {
            prime: self.prime,
            terms,
        }
    }
}

/// Quotient and remainder of the polynomial parts. Both inputs must have
/// nonnegative support; `b` nonzero.
pub(crate) fn poly_divmod(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    debug_assert!(!b.is_zero());
    debug_assert!(a.min_exp().is_none_or(|m| m >= 0) && b.min_exp().unwrap() >= 0);
    let mut rem = a.clone();
    let mut quo = LaurentPoly::zero(a.prime);
    let db = b.max_exp().unwrap();
    let lead_b = b.coeff(db);
    while let Some(da) = rem.max_exp() {
        if da < db {
            break;
        }
        let factor = rem.coeff(da) / &lead_b;
        let shift = da - db;
        quo = &quo + &LaurentPoly::monomial(shift, factor.clone(), a.prime);
        rem = &rem - &b.mul_monomial(shift, &factor);
    }
    (quo, rem)
}

/// Monic gcd of the polynomial parts of two Laurent polynomials (their
/// monomial content is ignored). Returns `1` when either input is zero.
///
/// Runs the primitive pseudo-remainder sequence over ℤ — plain rational
/// Euclid blows its coefficients up beyond use already at moderate degrees.
pub(crate) fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    use num::bigint::BigInt;
    use num::Integer;

    let prime = a.prime;
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::one(prime);
    }

    // dense integer coefficients of the primitive polynomial part
    let to_primitive = |f: &LaurentPoly| -> Vec<BigInt> {
        let shift = f.min_exp().unwrap();
        let deg = (f.max_exp().unwrap() - shift) as usize;
        let mut lcm = BigInt::one();
        for (_, c) in f.terms() {
            lcm = lcm.lcm(c.denom());
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (n, c) in f.terms() {
            coeffs[(n - shift) as usize] = c.numer() * (&lcm / c.denom());
        }
        let mut content = BigInt::zero();
        for c in &coeffs {
            content = content.gcd(c);
        }
        for c in &mut coeffs {
            *c /= &content;
        }
        coeffs
    };
    let degree = |f: &[BigInt]| f.iter().rposition(|c| !c.is_zero());
    let primitive = |f: &mut Vec<BigInt>| {
        let mut content = BigInt::zero();
        for c in f.iter() {
            content = content.gcd(c);
        }
        if !content.is_zero() {
            for c in f.iter_mut() {
                *c /= &content;
            }
        }
    };
    // pseudo-remainder of x by y over ℤ
    let prem = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        let dy = degree(y).unwrap();
        let lead = y[dy].clone();
        let mut r = x.to_vec();
        while let Some(dr) = degree(&r) {
            if dr < dy {
                break;
            }
            let factor = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lead;
            }
            for i in 0..=dy {
                r[dr - dy + i] -= &factor * &y[i];
            }
        }
        r.truncate(degree(&r).map_or(0, |d| d + 1));
        r
    };

    let mut x = to_primitive(a);
    let mut y = to_primitive(b);
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while degree(&y).is_some() {
        let mut r = prem(&x, &y);
        primitive(&mut r);
        x = y;
        y = r;
    }

    // back to a monic rational polynomial
    let dx = degree(&x).unwrap();
    let lead = Rat::from_integer(x[dx].clone());
    LaurentPoly::from_terms(
        x.iter()
            .enumerate()
            .map(|(n, c)| (n as i64, Rat::from_integer(c.clone()) / &lead)),
        prime,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use crate::series::AnnulusWindow;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn fin(v: i64) -> ExtRat {
        ExtRat::Finite(rat_int(v))
    }

    /// z^2 + 2z over p = 2.
    fn sample() -> LaurentPoly {
        LaurentPoly::from_terms([(2, rat_int(1)), (1, rat_int(2))], p(2))
    }

    #[test]
    fn gauss_norm_of_monomials_and_constants() {
        let z = LaurentPoly::var(p(2));
        assert_eq!(z.gauss_norm(&rat_int(3)), fin(3));
        let c = LaurentPoly::constant(rat(9, 2), p(3));
        for t in [-2i64, 0, 5] {
            assert_eq!(c.gauss_norm(&rat_int(t)), fin(-2));
        }
        assert_eq!(
            LaurentPoly::zero(p(2)).gauss_norm(&rat_int(0)),
            ExtRat::NegInf
        );
    }

    #[test]
    fn gauss_norm_picks_the_dominant_term() {
        // |z^2 + 2z| at t = -2: max(2*(-2), -1 + (-2)) = -3,
        // i.e. sup(r^2, r/2) = 1/8 at r = 1/4
        assert_eq!(sample().gauss_norm(&rat_int(-2)), fin(-3));
    }

    #[test]
    fn lognorm_fn_terms() {
        let f = sample();
        let trop = f.lognorm_fn().unwrap();
        let terms: Vec<(i64, Rat)> = trop.terms().map(|(n, c)| (n, c.clone())).collect();
        assert_eq!(terms, vec![(1, rat_int(-1)), (2, rat_int(0))]);
        // all-unit coefficients keep zero intercepts
        let g = LaurentPoly::from_terms(
            [(0, rat_int(1)), (1, rat_int(1)), (2, rat_int(1))],
            p(2),
        );
        let gt = g.lognorm_fn().unwrap();
        assert!(gt.terms().all(|(_, c)| c.is_zero()));
        assert_eq!(gt.terms().count(), 3);
    }

    #[test]
    fn critical_exponents_at_breakpoints_and_limits() {
        let f = sample();
        // both terms tie at t = -1
        assert_eq!(f.critical_exponents(&fin(-1)).unwrap(), (1, 2));
        let z = LaurentPoly::var(p(2));
        assert_eq!(z.critical_exponents(&fin(7)).unwrap(), (1, 1));
        // radius-zero convention: k = 0, K = lowest support index
        let z3 = LaurentPoly::monomial(3, rat_int(1), p(2));
        assert_eq!(z3.critical_exponents(&ExtRat::NegInf).unwrap(), (0, 3));
        let lau = LaurentPoly::monomial(-1, rat_int(1), p(2));
        assert!(lau.critical_exponents(&ExtRat::NegInf).is_err());
    }

    #[test]
    fn newton_polygon_vertices() {
        let f = sample();
        let poly = f.newton_polygon().unwrap();
        assert_eq!(
            poly.vertices().to_vec(),
            vec![(1, rat_int(-1)), (2, rat_int(0))]
        );
        let m = LaurentPoly::monomial(4, rat_int(1), p(3));
        assert_eq!(m.newton_polygon().unwrap().vertices().to_vec(), vec![(4, rat_int(0))]);
        // (z - 1)(z - 2) = z^2 - 3z + 2 over p = 2
        let g = LaurentPoly::from_terms(
            [(0, rat_int(2)), (1, rat_int(-3)), (2, rat_int(1))],
            p(2),
        );
        assert_eq!(
            g.newton_polygon().unwrap().vertices().to_vec(),
            vec![(0, rat_int(-1)), (1, rat_int(0)), (2, rat_int(0))]
        );
        assert_eq!(
            g.zero_radii().unwrap().1,
            vec![(rat_int(-1), 1), (rat_int(0), 1)]
        );
    }

    #[test]
    fn zero_counting_matches_the_polygon() {
        let f = sample();
        // roots 0 and -2; only log-radius -1 lies in [-2, 0]... both -1 and
        // the origin root is excluded because the window base is finite
        let w = AnnulusWindow::closed(rat_int(-2), rat_int(0)).unwrap();
        assert_eq!(f.count_zeros(&w).unwrap(), 1);
        let z = LaurentPoly::var(p(2));
        let wide = AnnulusWindow::closed(rat_int(-5), rat_int(5)).unwrap();
        assert_eq!(z.count_zeros(&wide).unwrap(), 0);
        let g = LaurentPoly::from_terms(
            [(0, rat_int(2)), (1, rat_int(-3)), (2, rat_int(1))],
            p(2),
        );
        assert_eq!(g.count_zeros(&w).unwrap(), 2);
    }

    #[test]
    fn division_and_gcd() {
        let pr = p(5);
        let lin = |c: i64| {
            LaurentPoly::from_terms([(1, rat_int(1)), (0, rat_int(c))], pr)
        };
        let a = &lin(-1) * &lin(-2);
        let b = lin(-1);
        let (q, r) = poly_divmod(&a, &b);
        assert!(r.is_zero());
        assert_eq!(q, lin(-2));
        let g = poly_gcd(&(&a * &lin(3)), &(&b * &lin(3)));
        assert_eq!(g, &lin(-1) * &lin(3));
    }
}
