//! Logarithmic jet differentials on torus charts and their pullbacks.
//!
//! The chart is `(𝔾_m)^ℓ × 𝔸^{n-ℓ}` with the divisor `D = {z_1 ⋯ z_ℓ = 0}`.
//! A jet differential of order `k` and weight `m` is a sum of monomials:
//! a coefficient (an exact rational function of the base coordinates) times
//! a multiset of symbols `d^j log z_i` (for `i <= ℓ`) and `d^j z_i`
//! (for `i > ℓ`), each of weight `j`, with total weight `m` per monomial.
//!
//! Pulling back along an analytic map `f` with rational coordinates
//! substitutes `d^j z_i -> f_i^(j)` and `d^j log z_i -> d^j log f_i` and
//! composes the coefficients with `f`, yielding `f^*ω = φ(ξ)(dξ)^m` with
//! `φ` rational. The decay bound asserts `log_p|φ|_t + m·t` is bounded
//! above on the window; the supremum is reported exactly.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::jets::multi::{
    multipoly_from_dto, multipoly_from_laurent, multipoly_to_dto, MultiRational, MultiTermDto,
};
use crate::jets::{log_jet, Jet};
use crate::nevanlinna::{dlog, lognorm_fn};
use crate::pwl::PiecewiseLinear;
use crate::rat::{parse_rat, rat_int, ExtRat, Prime, Rat};
use crate::series::{AnnulusWindow, RationalFn};

/// One symbol `d^j z_i` or `d^j log z_i`; the weight is `j`.
/// Coordinate indices are 0-based in memory and 1-based on the wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JetSymbol {
    pub coord: usize,
    pub order: u32,
    pub log: bool,
}

impl JetSymbol {
    pub fn plain(coord: usize, order: u32) -> Self {
        JetSymbol { coord, order, log: false }
    }

    pub fn log(coord: usize, order: u32) -> Self {
        JetSymbol { coord, order, log: true }
    }

    pub fn weight(&self) -> u32 {
        self.order
    }
}

/// A coefficient times a multiset of symbols.
#[derive(Clone, Debug)]
pub struct JetMonomial {
    pub coeff: MultiRational,
    pub symbols: Vec<JetSymbol>,
}

impl JetMonomial {
    pub fn new(coeff: MultiRational, mut symbols: Vec<JetSymbol>) -> Self {
        symbols.sort();
        JetMonomial { coeff, symbols }
    }

    pub fn weight(&self) -> u32 {
        self.symbols.iter().map(JetSymbol::weight).sum()
    }
}

/// A logarithmic jet differential of order `k` and weight `m` on the chart
/// `(𝔾_m)^ℓ × 𝔸^{n-ℓ}`.
#[derive(Clone, Debug)]
pub struct JetDifferential {
    order: u32,
    weight: u32,
    log_count: usize,
    nvars: usize,
    monomials: Vec<JetMonomial>,
}

impl JetDifferential {
    pub fn new(
        order: u32,
        weight: u32,
        log_count: usize,
        nvars: usize,
        monomials: Vec<JetMonomial>,
    ) -> Result<Self, Error> {
        if order == 0 {
            return Err(Error::JetOrderZero);
        }
        if log_count > nvars || nvars == 0 {
            return Err(Error::ChartMismatch);
        }
        for mono in &monomials {
            if mono.weight() != weight {
                return Err(Error::WeightMismatch);
            }
            if mono.coeff.nvars() != nvars {
                return Err(Error::DimensionMismatch);
            }
            for sym in &mono.symbols {
                if sym.order == 0 || sym.order > order {
                    return Err(Error::SymbolOrderTooHigh);
                }
                if sym.coord >= nvars {
                    return Err(Error::DimensionMismatch);
                }
                if sym.log && sym.coord >= log_count {
                    return Err(Error::LogSymbolOffDivisor(log_count));
                }
            }
        }
        Ok(JetDifferential {
            order,
            weight,
            log_count,
            nvars,
            monomials,
        })
    }

    /// A single monomial with constant coefficient one.
    pub fn from_symbols(
        order: u32,
        log_count: usize,
        nvars: usize,
        symbols: Vec<JetSymbol>,
    ) -> Result<Self, Error> {
        let weight: u32 = symbols.iter().map(JetSymbol::weight).sum();
        Self::new(
            order,
            weight,
            log_count,
            nvars,
            vec![JetMonomial::new(MultiRational::constant(Rat::one(), nvars), symbols)],
        )
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn log_count(&self) -> usize {
        self.log_count
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn monomials(&self) -> &[JetMonomial] {
        &self.monomials
    }

    /// Product of jet differentials on one chart; weights add, the order
    /// is the larger of the two.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.nvars != other.nvars || self.log_count != other.log_count {
            return Err(Error::ChartMismatch);
        }
        let mut monomials = Vec::with_capacity(self.monomials.len() * other.monomials.len());
        for a in &self.monomials {
            for b in &other.monomials {
                let mut symbols = a.symbols.clone();
                symbols.extend_from_slice(&b.symbols);
                monomials.push(JetMonomial::new(a.coeff.mul(&b.coeff), symbols));
            }
        }
        Self::new(
            self.order.max(other.order),
            self.weight + other.weight,
            self.log_count,
            self.nvars,
            monomials,
        )
    }

    /// Evaluate on a jet at a basepoint of the chart. The substitutions are
    /// `d^j z_i -> i`-th plain derivative and `d^j log z_i ->` the log-jet
    /// entry; coefficients are evaluated at the basepoint, which must keep
    /// the first `ℓ` coordinates off the divisor.
    pub fn evaluate(&self, jet: &Jet, basepoint: &[Rat]) -> Result<Rat, Error> {
        if jet.dim() != self.nvars || basepoint.len() != self.nvars {
            return Err(Error::JetShapeMismatch);
        }
        if (jet.order() as u32) < self.order {
            return Err(Error::JetShapeMismatch);
        }
        if basepoint[..self.log_count].iter().any(Rat::is_zero) {
            return Err(Error::BasepointOnDivisor);
        }
        // log-jets of the divisor coordinates, computed once
        let mut log_jets: BTreeMap<usize, Vec<Rat>> = BTreeMap::new();
        for mono in &self.monomials {
            for sym in &mono.symbols {
                if sym.log && !log_jets.contains_key(&sym.coord) {
                    log_jets.insert(sym.coord, log_jet(jet.coord(sym.coord), self.order as usize)?);
                }
            }
        }
        let mut total = Rat::zero();
        for mono in &self.monomials {
            let mut value = mono.coeff.eval(basepoint)?;
            for sym in &mono.symbols {
                if value.is_zero() {
                    break;
                }
                let factor = if sym.log {
                    log_jets[&sym.coord][(sym.order - 1) as usize].clone()
                } else {
                    jet.coord(sym.coord)[sym.order as usize].clone()
                };
                value *= factor;
            }
            total += value;
        }
        Ok(total)
    }

    /// Evaluate at the jet's own value tuple.
    pub fn evaluate_at_jet(&self, jet: &Jet) -> Result<Rat, Error> {
        self.evaluate(jet, &jet.values())
    }
}

/// Weighted homogeneity: `Q(j_k(f ∘ φ_λ)) = λ^m Q(j_k(f))`, checked as an
/// exact identity of evaluations at the jet's basepoint.
pub fn homogeneity_check(q: &JetDifferential, jet: &Jet, ratio: &Rat) -> Result<bool, Error> {
    if ratio.is_zero() {
        return Err(Error::ZeroRatio);
    }
    let basepoint = jet.values();
    let lhs = q.evaluate(&jet.reparametrize(ratio)?, &basepoint)?;
    let mut lambda_m = Rat::one();
    for _ in 0..q.weight() {
        lambda_m *= ratio;
    }
    let rhs = lambda_m * q.evaluate(jet, &basepoint)?;
    Ok(lhs == rhs)
}

/// An analytic map from an annulus window into the chart
/// `(𝔾_m)^ℓ × 𝔸^{n-ℓ}`, with rational-function coordinates. The first `ℓ`
/// coordinates must avoid zeros and poles at log-radii interior to the
/// window (for a disk window this includes the origin).
#[derive(Clone, Debug)]
pub struct TorusMap {
    coords: Vec<RationalFn>,
    window: AnnulusWindow,
    log_count: usize,
}

impl TorusMap {
    pub fn new(
        coords: Vec<RationalFn>,
        window: AnnulusWindow,
        log_count: usize,
    ) -> Result<Self, Error> {
        if coords.is_empty() || log_count > coords.len() {
            return Err(Error::ChartMismatch);
        }
        let prime = coords[0].prime();
        if coords.iter().any(|c| c.prime() != prime) {
            return Err(Error::PrimeMismatch(
                prime.get(),
                coords.iter().find(|c| c.prime() != prime).unwrap().prime().get(),
            ));
        }
        for (i, f) in coords.iter().take(log_count).enumerate() {
            if f.is_zero() {
                return Err(Error::DivisorViolation(i));
            }
            let (zeros, poles) = f.zero_pole_radii()?;
            for (tau, _) in zeros.iter().chain(poles.iter()) {
                if window.interior_contains(&ExtRat::Finite(tau.clone())) {
                    return Err(Error::DivisorViolation(i));
                }
            }
            if f.ord_at_zero() != Some(0) && window.interior_contains(&ExtRat::NegInf) {
                return Err(Error::DivisorViolation(i));
            }
        }
        Ok(TorusMap {
            coords,
            window,
            log_count,
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn log_count(&self) -> usize {
        self.log_count
    }

    pub fn window(&self) -> &AnnulusWindow {
        &self.window
    }

    pub fn coords(&self) -> &[RationalFn] {
        &self.coords
    }

    pub fn prime(&self) -> Prime {
        self.coords[0].prime()
    }
}

/// Pull a jet differential back along a torus map: `f^*ω = φ(ξ)(dξ)^m`.
/// Returns `φ`.
pub fn pullback(omega: &JetDifferential, map: &TorusMap) -> Result<RationalFn, Error> {
    if omega.nvars() != map.dim() || omega.log_count() != map.log_count() {
        return Err(Error::ChartMismatch);
    }
    let prime = map.prime();
    // symbol substitutions, cached per (coordinate, order, log flag)
    let mut cache: BTreeMap<(usize, u32, bool), RationalFn> = BTreeMap::new();
    let mut substituted = |sym: &JetSymbol| -> Result<RationalFn, Error> {
        if let Some(hit) = cache.get(&(sym.coord, sym.order, sym.log)) {
            return Ok(hit.clone());
        }
        let f_i = &map.coords()[sym.coord];
        let value = if sym.log {
            dlog(f_i, sym.order)?
        } else {
            f_i.derivative_n(sym.order)
        };
        cache.insert((sym.coord, sym.order, sym.log), value.clone());
        Ok(value)
    };
    let mut total = RationalFn::constant(Rat::zero(), prime);
    for mono in omega.monomials() {
        let mut term = mono.coeff.subst(map.coords(), prime)?;
        for sym in &mono.symbols {
            if term.is_zero() {
                break;
            }
            term = &term * &substituted(sym)?;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Decay bound for pulled-back jet differentials: whether
/// `log_p|φ|_t + m·t` is bounded above on the window, with its exact
/// supremum. A vanishing pullback makes the check vacuous.
#[derive(Clone, Debug)]
pub struct JetLdlReport {
    pub holds: bool,
    pub vacuous: bool,
    /// Exact supremum of `log_p|φ|_t + m·t` over the window, when finite.
    pub c: Option<Rat>,
    pub phi: RationalFn,
}

pub fn jet_ldl_check(omega: &JetDifferential, map: &TorusMap) -> Result<JetLdlReport, Error> {
    let phi = pullback(omega, map)?;
    if phi.is_zero() {
        return Ok(JetLdlReport {
            holds: true,
            vacuous: true,
            c: None,
            phi,
        });
    }
    let window = map.window();
    let shifted = lognorm_fn(&phi, window)?.add(&PiecewiseLinear::affine(
        rat_int(omega.weight() as i64),
        Rat::zero(),
        Rat::zero(),
        window.clone(),
    ));
    match shifted.max_over_domain() {
        ExtRat::Finite(c) => Ok(JetLdlReport {
            holds: true,
            vacuous: false,
            c: Some(c),
            phi,
        }),
        ExtRat::PosInf => Ok(JetLdlReport {
            holds: false,
            vacuous: false,
            c: None,
            phi,
        }),
        ExtRat::NegInf => unreachable!("nonzero functions have finite norms"),
    }
}

// ---------------------------------------------------------------------------
// wire formats

#[derive(Serialize, Deserialize)]
struct SymbolDto {
    i: usize,
    j: u32,
    log: bool,
}

#[derive(Serialize)]
struct CoeffOut {
    num: Vec<MultiTermDto>,
    den: Vec<MultiTermDto>,
}

#[derive(Serialize)]
struct MonomialOut {
    coeff: CoeffOut,
    symbols: Vec<SymbolDto>,
}

#[derive(Serialize)]
struct JetDiffOut {
    k: u32,
    m: u32,
    ell: usize,
    n: usize,
    monomials: Vec<MonomialOut>,
}

impl Serialize for JetDifferential {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        JetDiffOut {
            k: self.order,
            m: self.weight,
            ell: self.log_count,
            n: self.nvars,
            monomials: self
                .monomials
                .iter()
                .map(|mono| MonomialOut {
                    coeff: CoeffOut {
                        num: multipoly_to_dto(mono.coeff.num()),
                        den: multipoly_to_dto(mono.coeff.den()),
                    },
                    symbols: mono
                        .symbols
                        .iter()
                        .map(|s| SymbolDto {
                            i: s.coord + 1,
                            j: s.order,
                            log: s.log,
                        })
                        .collect(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

#[derive(Deserialize)]
struct MonomialIn {
    #[serde(default)]
    coeff: Option<serde_json::Value>,
    symbols: Vec<SymbolDto>,
}

#[derive(Deserialize)]
struct JetDiffIn {
    k: u32,
    m: u32,
    ell: usize,
    n: Option<usize>,
    monomials: Vec<MonomialIn>,
}

/// Coefficients accept three shapes: a rational string, the univariate
/// `{"num": <LaurentPoly>, "den": <LaurentPoly>}` pair (read in `z_1`), or
/// the explicit multivariate `{"num": [terms], "den": [terms]}` lists.
fn coeff_from_value(value: &serde_json::Value, nvars: usize) -> Result<MultiRational, String> {
    match value {
        serde_json::Value::String(s) => {
            let c = parse_rat(s).map_err(|e| e.to_string())?;
            Ok(MultiRational::constant(c, nvars))
        }
        serde_json::Value::Object(obj) => {
            let num = obj.get("num").ok_or("coefficient object needs a num field")?;
            let den = obj.get("den");
            match num {
                serde_json::Value::Array(_) => {
                    let num_terms: Vec<MultiTermDto> =
                        serde_json::from_value(num.clone()).map_err(|e| e.to_string())?;
                    let den_terms: Vec<MultiTermDto> = match den {
                        Some(v) => serde_json::from_value(v.clone()).map_err(|e| e.to_string())?,
                        None => vec![MultiTermDto {
                            exps: vec![0; nvars],
                            c: "1".to_string(),
                        }],
                    };
                    let num = multipoly_from_dto(&num_terms, nvars).map_err(|e| e.to_string())?;
                    let den = multipoly_from_dto(&den_terms, nvars).map_err(|e| e.to_string())?;
                    MultiRational::new(num, den).map_err(|e| e.to_string())
                }
                serde_json::Value::Object(_) => {
                    let f: RationalFn =
                        serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
                    let num = multipoly_from_laurent(f.num(), nvars);
                    let den = multipoly_from_laurent(f.den(), nvars);
                    MultiRational::new(num, den).map_err(|e| e.to_string())
                }
                _ => Err("unsupported coefficient shape".to_string()),
            }
        }
        _ => Err("unsupported coefficient shape".to_string()),
    }
}

impl<'de> Deserialize<'de> for JetDifferential {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = JetDiffIn::deserialize(deserializer)?;
        let max_coord = dto
            .monomials
            .iter()
            .flat_map(|m| m.symbols.iter().map(|s| s.i))
            .max()
            .unwrap_or(0);
        let nvars = dto.n.unwrap_or_else(|| max_coord.max(dto.ell).max(1));
        let mut monomials = Vec::with_capacity(dto.monomials.len());
        for mono in &dto.monomials {
            let coeff = match &mono.coeff {
                None => MultiRational::constant(Rat::one(), nvars),
                Some(v) => coeff_from_value(v, nvars).map_err(D::Error::custom)?,
            };
            let symbols = mono
                .symbols
                .iter()
                .map(|s| {
                    if s.i == 0 {
                        return Err(D::Error::custom("symbol indices are 1-based"));
                    }
                    Ok(JetSymbol {
                        coord: s.i - 1,
                        order: s.j,
                        log: s.log,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            monomials.push(JetMonomial::new(coeff, symbols));
        }
        JetDifferential::new(dto.k, dto.m, dto.ell, nvars, monomials).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TorusMapDto {
    coords: Vec<RationalFn>,
    window: AnnulusWindow,
    ell: usize,
}

impl Serialize for TorusMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TorusMapDto {
            coords: self.coords.clone(),
            window: self.window.clone(),
            ell: self.log_count,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TorusMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let dto = TorusMapDto::deserialize(deserializer)?;
        TorusMap::new(dto.coords, dto.window, dto.ell).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn p2() -> Prime {
        Prime::new(2).unwrap()
    }

    fn jet2(tuples: &[&[i64]]) -> Jet {
        Jet::new(
            tuples
                .iter()
                .map(|t| t.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn evaluation_of_plain_and_log_symbols() {
        // Q = (dz_1)^2 on the jet of z: value 1
        let q = JetDifferential::from_symbols(
            2,
            0,
            1,
            vec![JetSymbol::plain(0, 1), JetSymbol::plain(0, 1)],
        )
        .unwrap();
        let a = jet2(&[&[0, 1, 0]]);
        assert_eq!(q.evaluate_at_jet(&a).unwrap(), rat_int(1));

        // Q = d log z_1 on a jet with (f(0), f'(0)) = (p, 1): value 1/p
        let q = JetDifferential::from_symbols(1, 1, 1, vec![JetSymbol::log(0, 1)]).unwrap();
        let a = jet2(&[&[2, 1]]);
        assert_eq!(q.evaluate_at_jet(&a).unwrap(), crate::rat::rat(1, 2));

        // Q = d^2 z_1 - (dz_1)^2 on a germ with f' = f'' = 1: value 0
        let one = MultiRational::constant(Rat::one(), 1);
        let q = JetDifferential::new(
            2,
            2,
            0,
            1,
            vec![
                JetMonomial::new(one.clone(), vec![JetSymbol::plain(0, 2)]),
                JetMonomial::new(
                    one.neg(),
                    vec![JetSymbol::plain(0, 1), JetSymbol::plain(0, 1)],
                ),
            ],
        )
        .unwrap();
        let a = jet2(&[&[1, 1, 1]]);
        assert_eq!(q.evaluate_at_jet(&a).unwrap(), rat_int(0));
    }

    #[test]
    fn shape_violations_are_rejected() {
        // weight mismatch
        assert!(JetDifferential::new(
            2,
            3,
            0,
            1,
            vec![JetMonomial::new(
                MultiRational::constant(Rat::one(), 1),
                vec![JetSymbol::plain(0, 2)],
            )],
        )
        .is_err());
        // log symbol off the divisor
        assert!(JetDifferential::from_symbols(1, 0, 2, vec![JetSymbol::log(0, 1)]).is_err());
        // evaluation on the divisor
        let q = JetDifferential::from_symbols(1, 1, 1, vec![JetSymbol::log(0, 1)]).unwrap();
        let a = jet2(&[&[0, 1]]);
        assert!(q.evaluate_at_jet(&a).is_err());
    }

    #[test]
    fn homogeneity_of_monomials() {
        // (dz_1)^2 scales by λ^2
        let q = JetDifferential::from_symbols(
            2,
            0,
            1,
            vec![JetSymbol::plain(0, 1), JetSymbol::plain(0, 1)],
        )
        .unwrap();
        let a = jet2(&[&[1, 3, 5]]);
        assert!(homogeneity_check(&q, &a, &rat_int(2)).unwrap());
        assert!(homogeneity_check(&q, &a, &rat_int(1)).unwrap());
        // mixed log/plain of weight 3
        let q = JetDifferential::from_symbols(
            2,
            1,
            2,
            vec![JetSymbol::log(0, 1), JetSymbol::plain(1, 2)],
        )
        .unwrap();
        let a = jet2(&[&[3, 1, 4], &[2, 7, 1]]);
        assert!(homogeneity_check(&q, &a, &crate::rat::rat(5, 7)).unwrap());
        assert!(homogeneity_check(&q, &a, &rat_int(0)).is_err());
    }

    #[test]
    fn pullback_of_log_symbols() {
        let prime = p2();
        let window = AnnulusWindow::closed(rat_int(0), rat_int(10)).unwrap();
        let xi2 = RationalFn::from_poly(crate::series::LaurentPoly::monomial(
            2,
            Rat::one(),
            prime,
        ));
        let map = TorusMap::new(vec![xi2], window, 1).unwrap();
        // d log z_1 pulls back to 2/ξ
        let q = JetDifferential::from_symbols(1, 1, 1, vec![JetSymbol::log(0, 1)]).unwrap();
        let phi = pullback(&q, &map).unwrap();
        let expected = RationalFn::new(
            crate::series::LaurentPoly::constant(rat_int(2), prime),
            crate::series::LaurentPoly::var(prime),
        )
        .unwrap();
        assert_eq!(phi, expected);
        // (d log z_1)^2 pulls back to 4/ξ^2, and multiplicativity holds
        let q2 = q.mul(&q).unwrap();
        let phi2 = pullback(&q2, &map).unwrap();
        assert_eq!(phi2, &phi * &phi);
    }

    #[test]
    fn pullback_of_constant_coordinates_vanishes() {
        let prime = p2();
        let window = AnnulusWindow::closed(rat_int(0), rat_int(1)).unwrap();
        let c = RationalFn::constant(rat_int(5), prime);
        let map = TorusMap::new(vec![c], window, 0).unwrap();
        let q = JetDifferential::from_symbols(1, 0, 1, vec![JetSymbol::plain(0, 1)]).unwrap();
        assert!(pullback(&q, &map).unwrap().is_zero());
    }

    #[test]
    fn decay_bound_worked_example() {
        // ω = (d log z_1)^2, f_1 = ξ^2, p = 2 on [0, 10]: φ = 4/ξ^2 and
        // C = log_2|4| = -2, attained at every radius
        let prime = p2();
        let window = AnnulusWindow::closed(rat_int(0), rat_int(10)).unwrap();
        let xi2 = RationalFn::from_poly(crate::series::LaurentPoly::monomial(
            2,
            Rat::one(),
            prime,
        ));
        let map = TorusMap::new(vec![xi2], window, 1).unwrap();
        let q = JetDifferential::from_symbols(1, 1, 1, vec![JetSymbol::log(0, 1)]).unwrap();
        let q2 = q.mul(&q).unwrap();
        let report = jet_ldl_check(&q2, &map).unwrap();
        assert!(report.holds && !report.vacuous);
        assert_eq!(report.c, Some(rat_int(-2)));

        // ω = d log z_1 on f_1 = ξ: φ = 1/ξ, bound attained with C = 0
        let xi = RationalFn::var(prime);
        let window = AnnulusWindow::closed(rat_int(-3), rat_int(3)).unwrap();
        let map = TorusMap::new(vec![xi], window, 1).unwrap();
        let report = jet_ldl_check(&q, &map).unwrap();
        assert_eq!(report.c, Some(rat_int(0)));
    }

    #[test]
    fn torus_map_rejects_divisor_violations() {
        let prime = p2();
        // the zero of ξ + 2 sits at ξ = -2 with |−2|_2 = 1/2, log-radius -1:
        // windows containing -1 strictly cannot host it as a log coordinate
        let f = RationalFn::from_poly(crate::series::LaurentPoly::from_terms(
            [(1, Rat::one()), (0, rat_int(2))],
            prime,
        ));
        let bad = AnnulusWindow::closed(rat_int(-2), rat_int(0)).unwrap();
        assert!(TorusMap::new(vec![f.clone()], bad, 1).is_err());
        let good = AnnulusWindow::closed(rat_int(0), rat_int(4)).unwrap();
        assert!(TorusMap::new(vec![f.clone()], good.clone(), 1).is_ok());
        // as a plain (non-log) coordinate anything goes
        let bad2 = AnnulusWindow::closed(rat_int(-2), rat_int(0)).unwrap();
        assert!(TorusMap::new(vec![f], bad2, 0).is_ok());
        // a disk window contains the origin: coordinates vanishing there
        // cannot be log coordinates
        let disk = AnnulusWindow::disk(ExtRat::Finite(rat_int(2))).unwrap();
        let xi = RationalFn::var(prime);
        assert!(TorusMap::new(vec![xi.clone()], disk, 1).is_err());
        assert!(TorusMap::new(vec![xi], good, 1).is_ok());
    }

    #[test]
    fn wire_round_trip() {
        let json = r#"{
            "k": 2, "m": 3, "ell": 1,
            "monomials": [
                {"coeff": "1/2", "symbols": [{"i": 1, "j": 1, "log": true},
                                              {"i": 2, "j": 2, "log": false}]}
            ]
        }"#;
        let q: JetDifferential = serde_json::from_str(json).unwrap();
        assert_eq!(q.weight(), 3);
        assert_eq!(q.nvars(), 2);
        let out = serde_json::to_string(&q).unwrap();
        let q2: JetDifferential = serde_json::from_str(&out).unwrap();
        assert_eq!(q2.weight(), 3);
        assert_eq!(q2.monomials().len(), 1);
    }
}
