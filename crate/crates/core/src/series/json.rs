//! Wire formats.
//!
//! - `LaurentPoly`: `{"p": 2, "terms": {"2": "1", "1": "1/2", ...}}`
//! - `RationalFn`: `{"num": <LaurentPoly>, "den": <LaurentPoly>}`
//! - `AnnulusWindow`: `{"t_low": "q" | "-inf", "t_high": "q" | "inf"}`
//!
//! Rationals travel as `"numerator/denominator"` strings (plain integers
//! allowed), infinities as `"inf"` / `"-inf"`.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::{format_rat, parse_rat, Prime};
use crate::series::{AnnulusWindow, LaurentPoly, RationalFn};

#[derive(Serialize, Deserialize)]
struct LaurentDto {
    p: u64,
    terms: BTreeMap<String, String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let dto = LaurentDto {
            p: self.prime().get(),
            terms: self
                .terms()
                .map(|(n, c)| (n.to_string(), format_rat(c)))
                .collect(),
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = LaurentDto::deserialize(deserializer)?;
        let prime = Prime::new(dto.p).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(dto.terms.len());
        for (k, v) in dto.terms {
            let n: i64 = k
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent {k:?}")))?;
            let c = parse_rat(&v).map_err(D::Error::custom)?;
            terms.push((n, c));
        }
        Ok(LaurentPoly::from_terms(terms, prime))
    }
}

#[derive(Serialize, Deserialize)]
struct RationalDto {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RationalFn {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalDto {
            num: self.num().clone(),
            den: self.den().clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalFn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = RationalDto::deserialize(deserializer)?;
        if dto.num.prime() != dto.den.prime() {
            return Err(D::Error::custom("numerator and denominator primes differ"));
        }
        RationalFn::new(dto.num, dto.den).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct WindowDto {
    t_low: String,
    t_high: String,
}

impl Serialize for AnnulusWindow {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WindowDto {
            t_low: self.t_low().to_string(),
            t_high: self.t_high().to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AnnulusWindow {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = WindowDto::deserialize(deserializer)?;
        let lo = dto.t_low.parse().map_err(D::Error::custom)?;
        let hi = dto.t_high.parse().map_err(D::Error::custom)?;
        AnnulusWindow::new(lo, hi).map_err(D::Error::custom)
    }
}
