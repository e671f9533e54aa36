//! Jet arithmetic and logarithmic jet differentials on torus charts.
//!
//! A `k`-jet stores, per coordinate, the derivative tuple
//! `(f(0), f'(0), ..., f^(k)(0))` of a representing germ. Products, sums
//! and reciprocals are truncated Leibniz arithmetic; `log_jet` produces the
//! tuple `(d log f, ..., d^k log f)(0)` through the jet of `f'/f`, whose
//! higher-order identities are the content of the Faà di Bruno expansion.
//! The homothety action `φ_λ(z) = λz` scales the `j`-th derivative by
//! `λ^j` on both plain and logarithmic jets.

mod differential;
mod green_griffiths;
pub mod multi;

pub use differential::{
    homogeneity_check, jet_ldl_check, pullback, JetDifferential, JetLdlReport, JetMonomial,
    JetSymbol, TorusMap,
};
pub use green_griffiths::gg_dim;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rat::{format_rat, parse_rat, Rat};

/// Pascal-triangle row access; jet orders stay tiny.
fn binomial_rat(n: usize, k: usize) -> Rat {
    let mut row = vec![Rat::one()];
    for _ in 0..n {
        let mut next = vec![Rat::one()];
        for i in 1..row.len() {
            next.push(&row[i - 1] + &row[i]);
        }
        next.push(Rat::one());
        row = next;
    }
    row[k].clone()
}

/// Leibniz product of derivative tuples of equal length.
fn tuple_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let len = a.len();
    debug_assert_eq!(len, b.len());
    (0..len)
        .map(|j| {
            (0..=j)
                .map(|i| binomial_rat(j, i) * &a[i] * &b[j - i])
                .fold(Rat::zero(), |acc, x| acc + x)
        })
        .collect()
}

/// Derivative tuple of `1/f`; `f(0)` must be nonzero.
fn tuple_recip(a: &[Rat]) -> Result<Vec<Rat>, Error> {
    if a[0].is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let mut b = vec![a[0].recip()];
    for j in 1..a.len() {
        let mut sum = Rat::zero();
        for i in 1..=j {
            sum += binomial_rat(j, i) * &a[i] * &b[j - i];
        }
        b.push(-sum / &a[0]);
    }
    Ok(b)
}

/// Tuple of the derivative germ: drop the value, keep one order less.
fn tuple_shift(a: &[Rat]) -> Vec<Rat> {
    a[1..].to_vec()
}

/// A `k`-jet of a germ `(𝔽, 0) -> 𝔽^n`: per coordinate, the derivatives
/// `(f_i(0), f_i'(0), ..., f_i^(k)(0))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    coords: Vec<Vec<Rat>>,
}

impl Jet {
    /// All coordinate tuples must share one length `k + 1 >= 2`.
    pub fn new(coords: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let len = coords.first().map(|c| c.len()).unwrap_or(0);
        if len < 2 {
            return Err(Error::JetOrderZero);
        }
        if coords.iter().any(|c| c.len() != len) {
            return Err(Error::JetShapeMismatch);
        }
        Ok(Jet { coords })
    }

    /// One-dimensional jet from a single derivative tuple.
    pub fn scalar(tuple: Vec<Rat>) -> Result<Self, Error> {
        Self::new(vec![tuple])
    }

    pub fn order(&self) -> usize {
        self.coords[0].len() - 1
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, i: usize) -> &[Rat] {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[Vec<Rat>] {
        &self.coords
    }

    /// The value tuple `(f_1(0), ..., f_n(0))`.
    pub fn values(&self) -> Vec<Rat> {
        self.coords.iter().map(|c| c[0].clone()).collect()
    }

    /// A jet is regular when some first derivative is nonzero.
    pub fn is_regular(&self) -> bool {
        self.coords.iter().any(|c| !c[1].is_zero())
    }

    fn check_shape(&self, other: &Jet) -> Result<(), Error> {
        if self.order() != other.order() || self.dim() != other.dim() {
            return Err(Error::JetShapeMismatch);
        }
        Ok(())
    }

    /// Componentwise sum of representing germs.
    pub fn add(&self, other: &Jet) -> Result<Jet, Error> {
        self.check_shape(other)?;
        Ok(Jet {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        })
    }

    /// Componentwise product of representing germs, truncated at the order.
    pub fn mul(&self, other: &Jet) -> Result<Jet, Error> {
        self.check_shape(other)?;
        Ok(Jet {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| tuple_mul(a, b))
                .collect(),
        })
    }

    /// Componentwise reciprocal; every coordinate value must be nonzero.
    pub fn reciprocal(&self) -> Result<Jet, Error> {
        Ok(Jet {
            coords: self
                .coords
                .iter()
                .map(|c| tuple_recip(c))
                .collect::<Result<_, _>>()?,
        })
    }

    /// The jet of `f ∘ φ_λ` with `φ_λ(z) = λz`: the `j`-th derivative
    /// scales by `λ^j`.
    pub fn reparametrize(&self, ratio: &Rat) -> Result<Jet, Error> {
        if ratio.is_zero() {
            return Err(Error::ZeroRatio);
        }
        Ok(Jet {
            coords: self
                .coords
                .iter()
                .map(|c| {
                    let mut power = Rat::one();
                    c.iter()
                        .map(|x| {
                            let out = x * &power;
                            power *= ratio;
                            out
                        })
                        .collect()
                })
                .collect(),
        })
    }
}

/// `(d log f, d^2 log f, ..., d^k log f)` at the origin, for one coordinate
/// tuple of order at least `k`. This is the jet of `f'/f` at order `k - 1`,
/// since `d^{j+1} log f = d^j (f'/f)`.
pub fn log_jet(coord: &[Rat], k: usize) -> Result<Vec<Rat>, Error> {
    if coord.len() < k + 1 || k == 0 {
        return Err(Error::JetShapeMismatch);
    }
    if coord[0].is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let derivative = tuple_shift(&coord[..k + 1]); // order k - 1
    let reciprocal = tuple_recip(&coord[..k])?; // order k - 1
    Ok(tuple_mul(&derivative, &reciprocal))
}

#[derive(Serialize, Deserialize)]
struct JetDto {
    coords: Vec<Vec<String>>,
}

impl Serialize for Jet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        JetDto {
            coords: self
                .coords
                .iter()
                .map(|c| c.iter().map(format_rat).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Jet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let dto = JetDto::deserialize(deserializer)?;
        let coords = dto
            .coords
            .iter()
            .map(|c| c.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Jet::new(coords).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn j(tuples: &[&[i64]]) -> Jet {
        Jet::new(
            tuples
                .iter()
                .map(|t| t.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn products_follow_leibniz() {
        // z * z = z^2: derivative tuples (0,1,0) * (0,1,0) = (0,0,2)
        let z = j(&[&[0, 1, 0]]);
        let sq = z.mul(&z).unwrap();
        assert_eq!(sq, j(&[&[0, 0, 2]]));
        // additive identity
        let zero = j(&[&[0, 0, 0]]);
        assert_eq!(z.add(&zero).unwrap(), z);
    }

    #[test]
    fn reciprocal_truncates_the_geometric_series() {
        // 1/(1+z) = 1 - z + z^2 - ...: tuple (1, -1, 2)
        let f = j(&[&[1, 1, 0]]);
        assert_eq!(f.reciprocal().unwrap(), j(&[&[1, -1, 2]]));
        let bad = j(&[&[0, 1, 0]]);
        assert!(bad.reciprocal().is_err());
    }

    #[test]
    fn log_jet_of_one_plus_z() {
        // f = 1 + z: d log f = 1, d^2 log f = -1 at the origin
        let out = log_jet(&[rat_int(1), rat_int(1), rat_int(0)], 2).unwrap();
        assert_eq!(out, vec![rat_int(1), rat_int(-1)]);
        // constants have vanishing log derivatives
        let c = log_jet(&[rat_int(7), rat_int(0), rat_int(0), rat_int(0)], 3).unwrap();
        assert!(c.iter().all(|x| x.is_zero()));
        assert!(log_jet(&[rat_int(0), rat_int(1)], 1).is_err());
    }

    #[test]
    fn reparametrization_scales_by_powers() {
        let z = j(&[&[0, 1, 0]]);
        let lam = rat(3, 2);
        let scaled = z.reparametrize(&lam).unwrap();
        assert_eq!(scaled.coord(0), &[rat_int(0), rat(3, 2), rat_int(0)]);
        // identity ratio
        assert_eq!(z.reparametrize(&rat_int(1)).unwrap(), z);
        assert!(z.reparametrize(&rat_int(0)).is_err());
    }

    #[test]
    fn log_jet_intertwines_reparametrization() {
        // (log(f ∘ φ_λ))^(j) = λ^j (log f)^(j) at the origin
        let f = j(&[&[3, 1, 4, 1]]);
        let lam = rat(5, 3);
        let before = log_jet(f.coord(0), 3).unwrap();
        let after = log_jet(f.reparametrize(&lam).unwrap().coord(0), 3).unwrap();
        let mut power = lam;
        for (a, b) in after.iter().zip(&before) {
            assert_eq!(*a, b * &power);
            power *= rat(5, 3);
        }
    }

    #[test]
    fn regularity_needs_a_first_derivative() {
        assert!(j(&[&[1, 0, 0], &[0, 2, 0]]).is_regular());
        assert!(!j(&[&[1, 0, 5], &[2, 0, 7]]).is_regular());
    }
}
