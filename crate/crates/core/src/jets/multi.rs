//! Multivariate Laurent polynomials and their quotients.
//!
//! Coefficient functions of jet differentials live here: exact rational
//! functions in the base coordinates `z_1..z_n`, with negative exponents
//! allowed (the torus coordinates are invertible). Only what jet evaluation
//! and pullback need is implemented: ring operations, evaluation at a
//! point, and substitution of one univariate rational function per
//! variable.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rat::{format_rat, parse_rat, Prime, Rat};
use crate::series::{LaurentPoly, RationalFn};

/// `Σ c_e · z^e` over exponent vectors `e ∈ ℤ^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat, nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Rat::one(), nvars)
    }

    /// The coordinate `z_i` (zero-based index).
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars);
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::from_terms([(exps, Rat::one())], nvars)
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, Rat)>>(terms: I, nvars: usize) -> Self {
        let mut map: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector arity");
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        MultiPoly { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
            self.nvars,
        )
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut map: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = map.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        map.retain(|_, c| !c.is_zero());
        MultiPoly {
            nvars: self.nvars,
            terms: map,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a * c))
                .collect(),
        }
    }

    /// Exact value at a point. Coordinates with negative exponents must be
    /// nonzero there.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat, Error> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch);
        }
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                if x.is_zero() {
                    if k < 0 {
                        return Err(Error::BasepointOnDivisor);
                    }
                    term = Rat::zero();
                    break;
                }
                let base = if k < 0 { x.recip() } else { x.clone() };
                for _ in 0..k.unsigned_abs() {
                    term *= &base;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitute a univariate rational function for each variable.
    pub fn subst(&self, fs: &[RationalFn], prime: Prime) -> Result<RationalFn, Error> {
        if fs.len() != self.nvars {
            return Err(Error::DimensionMismatch);
        }
        let mut total = RationalFn::constant(Rat::zero(), prime);
        for (e, c) in &self.terms {
            let mut term = RationalFn::constant(c.clone(), prime);
            for (f, &k) in fs.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                term = &term * &f.powi(k)?;
            }
            total = &total + &term;
        }
        Ok(total)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(i, &k)| format!("z{}^{}", i + 1, k))
                    .collect();
                if vars.is_empty() {
                    format_rat(c)
                } else {
                    format!("{}*{}", format_rat(c), vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// A quotient of multivariate Laurent polynomials. No canonical form is
/// kept; these only ever get evaluated, substituted or multiplied.
#[derive(Clone, Debug)]
pub struct MultiRational {
    num: MultiPoly,
    den: MultiPoly,
}

impl MultiRational {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(MultiRational { num, den })
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        let nvars = num.nvars();
        MultiRational {
            num,
            den: MultiPoly::one(nvars),
        }
    }

    pub fn constant(c: Rat, nvars: usize) -> Self {
        Self::from_poly(MultiPoly::constant(c, nvars))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiRational {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn neg(&self) -> Self {
        MultiRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        MultiRational {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(MultiRational {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        })
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat, Error> {
        let den = self.den.eval(point)?;
        if den.is_zero() {
            return Err(Error::BasepointOnDivisor);
        }
        Ok(self.num.eval(point)? / den)
    }

    pub fn subst(&self, fs: &[RationalFn], prime: Prime) -> Result<RationalFn, Error> {
        let num = self.num.subst(fs, prime)?;
        let den = self.den.subst(fs, prime)?;
        num.div(&den)
    }
}

impl fmt::Display for MultiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Wire format for a multivariate polynomial: a list of
/// `{"exps": [..], "c": "num/den"}` terms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiTermDto {
    pub exps: Vec<i64>,
    pub c: String,
}

pub fn multipoly_to_dto(p: &MultiPoly) -> Vec<MultiTermDto> {
    p.terms()
        .map(|(e, c)| MultiTermDto {
            exps: e.clone(),
            c: format_rat(c),
        })
        .collect()
}

pub fn multipoly_from_dto(terms: &[MultiTermDto], nvars: usize) -> Result<MultiPoly, Error> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exps.len() != nvars {
            return Err(Error::DimensionMismatch);
        }
        out.push((t.exps.clone(), parse_rat(&t.c)?));
    }
    Ok(MultiPoly::from_terms(out, nvars))
}

/// Univariate view: exponents of `z_1` only. Lets a jet-differential
/// coefficient be given in the plain `{"num": .., "den": ..}` shape.
pub fn multipoly_from_laurent(f: &LaurentPoly, nvars: usize) -> MultiPoly {
    MultiPoly::from_terms(
        f.terms().map(|(n, c)| {
            let mut e = vec![0; nvars];
            if nvars > 0 {
                e[0] = n;
            }
            (e, c.clone())
        }),
        nvars,
    )
}
