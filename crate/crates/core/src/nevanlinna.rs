//! Value-distribution functions on annuli, exactly.
//!
//! For a rational function `f` on a window of log-radii, the module builds
//! the proximity function `m_f(a, t) = max(0, -log_p|f - a|)`, the counting
//! function `N_f(a, t)` integrating zero counts from the window base, and
//! the characteristic `T_f = m_f(∞, ·) + N_f(∞, ·)` — all as exact
//! piecewise-linear functions. On top of those sit the Jensen identity
//! check, the First Main Theorem residual, and the logarithmic derivative
//! bounds in both the `f^(k)/f` and the `d^k log f` forms.
//!
//! Counting integrates `dt/t` in the log-radius substitution, where the
//! integrand is a piecewise-constant integer: every integral is an exact
//! rational. Zeros are counted relative to the window base (zeros in
//! `A[p^t1, p^t]`), which is what makes the Jensen identity exact. For a
//! disk window (base `-∞`) the origin term contributes `ord_0(f - a) * t`,
//! the exact analogue of the `n(0,0) log r` term.

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::pwl::{PiecewiseLinear, PwlData};
use crate::rat::{format_rat, parse_rat, rat_int, ExtRat, Rat};
use crate::series::{AnnulusWindow, LaurentPoly, RationalFn};

/// A target value on the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Finite(Rat),
    Infinity,
}

impl Target {
    pub fn to_wire(&self) -> String {
        match self {
            Target::Finite(q) => format_rat(q),
            Target::Infinity => "inf".to_string(),
        }
    }

    pub fn from_wire(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" | "+inf" => Ok(Target::Infinity),
            other => Ok(Target::Finite(parse_rat(other)?)),
        }
    }
}

/// `log_p |f|_{p^t}` as a piecewise-linear function on the window.
pub fn lognorm_fn(f: &RationalFn, window: &AnnulusWindow) -> Result<PiecewiseLinear, Error> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let num = PiecewiseLinear::from_trop(&f.num().lognorm_fn()?, window)?;
    let den = PiecewiseLinear::from_trop(&f.den().lognorm_fn()?, window)?;
    Ok(num.sub(&den))
}

/// `f - a`, with `a = ∞` read as `1/f`. Zeros of the result are the
/// `a`-points of `f`.
fn deviation(f: &RationalFn, a: &Target) -> Result<RationalFn, Error> {
    let g = match a {
        Target::Finite(q) => f.sub_scalar(q),
        Target::Infinity => {
            if f.is_zero() {
                return Err(Error::ZeroFunction);
            }
            f.reciprocal()?
        }
    };
    if g.is_zero() {
        return Err(Error::TargetEqualsFunction);
    }
    Ok(g)
}

/// Proximity function `m_f(a, ·)` on the window.
///
/// For finite `a` this is `max(0, -log_p|f - a|)`; at `a = ∞` it is
/// `max(0, log_p|f|)`.
pub fn proximity(
    f: &RationalFn,
    a: &Target,
    window: &AnnulusWindow,
) -> Result<PiecewiseLinear, Error> {
    // at a = ∞ the deviation is 1/f, and -log|1/f| = log|f|
    let g = deviation(f, a)?;
    Ok(lognorm_fn(&g, window)?.neg().max_with_zero())
}

/// Counting function `N_f(a, ·)` on the window.
///
/// With a finite base `t1`, `N(t)` sums `(t - τ)` over the `a`-points of
/// `f` at log-radii `τ ∈ [t1, t]`, with multiplicity. On a disk window the
/// origin contributes `ord_0(f-a) · t` when `f - a` vanishes there (a pole
/// at the origin is no `a`-point) and every nonzero-radius point
/// contributes `(t - τ)⁺`.
pub fn counting(
    f: &RationalFn,
    a: &Target,
    window: &AnnulusWindow,
) -> Result<PiecewiseLinear, Error> {
    let g = deviation(f, a)?;
    let (ord0, radii) = g.num().zero_radii()?;
    Ok(counting_from_radii(ord0, &radii, window))
}

/// Assemble a counting function from explicit zero data.
fn counting_from_radii(
    ord0: i64,
    radii: &[(Rat, i64)],
    window: &AnnulusWindow,
) -> PiecewiseLinear {
    let t_high = window.t_high();
    match window.t_low() {
        ExtRat::Finite(t1) => {
            // slope after τ = cumulative count of zeros in [t1, τ]
            let mut breakpoints = vec![t1.clone()];
            let mut slopes = vec![Rat::zero(), Rat::zero()];
            for (tau, mult) in radii {
                if tau < t1 || ExtRat::Finite(tau.clone()) > *t_high {
                    continue;
                }
                let bumped = slopes.last().unwrap() + rat_int(*mult);
                if *tau <= *t1 {
                    // a zero exactly at the base radius counts from the start
                    *slopes.last_mut().unwrap() = bumped;
                } else {
                    breakpoints.push(tau.clone());
                    slopes.push(bumped);
                }
            }
            // anchor: N(t1) = 0
            let full = PiecewiseLinear::from_parts(
                AnnulusWindow::all(),
                breakpoints,
                slopes,
                t1.clone(),
                Rat::zero(),
            )
            .expect("counting assembly");
            full.restrict(window).expect("window within the full line")
        }
        ExtRat::NegInf => {
            // order of vanishing at the origin: a pole of f - a there is no
            // a-point and contributes nothing
            let ord0 = ord0.max(0);
            let mut breakpoints = Vec::new();
            let mut slopes = vec![rat_int(ord0)];
            for (tau, mult) in radii {
                if ExtRat::Finite(tau.clone()) > *t_high {
                    continue;
                }
                breakpoints.push(tau.clone());
                slopes.push(slopes.last().unwrap() + rat_int(*mult));
            }
            // anchor left of every breakpoint, where N(t) = ord0 * t
            let anchor_t = breakpoints
                .first()
                .map(|b| b - rat_int(1))
                .unwrap_or_else(|| window.sample_point());
            let anchor_value = rat_int(ord0) * &anchor_t;
            let full = PiecewiseLinear::from_parts(
                AnnulusWindow::all(),
                breakpoints,
                slopes,
                anchor_t,
                anchor_value,
            )
            .expect("counting assembly");
            full.restrict(window).expect("window within the full line")
        }
        ExtRat::PosInf => unreachable!("windows cannot start at +inf"),
    }
}

/// Characteristic function `T_f = m_f(∞, ·) + N_f(∞, ·)`.
pub fn characteristic(f: &RationalFn, window: &AnnulusWindow) -> Result<PiecewiseLinear, Error> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let m = proximity(f, &Target::Infinity, window)?;
    let n = counting(f, &Target::Infinity, window)?;
    Ok(m.add(&n))
}

/// The proximity, counting and characteristic functions of `f` for one
/// target, bundled with the window. `T = m(∞,·) + N(∞,·)` by construction.
#[derive(Clone, Debug)]
pub struct NevanlinnaReport {
    pub m: PiecewiseLinear,
    pub n: PiecewiseLinear,
    pub t: PiecewiseLinear,
    pub target: Target,
    pub window: AnnulusWindow,
}

pub fn nevanlinna_report(
    f: &RationalFn,
    a: &Target,
    window: &AnnulusWindow,
) -> Result<NevanlinnaReport, Error> {
    Ok(NevanlinnaReport {
        m: proximity(f, a, window)?,
        n: counting(f, a, window)?,
        t: characteristic(f, window)?,
        target: a.clone(),
        window: window.clone(),
    })
}

#[derive(Serialize, Deserialize)]
struct ReportDto {
    m: PwlData,
    #[serde(rename = "N")]
    n: PwlData,
    #[serde(rename = "T")]
    t: PwlData,
    a: String,
    window: AnnulusWindow,
}

impl Serialize for NevanlinnaReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ReportDto {
            m: (&self.m).into(),
            n: (&self.n).into(),
            t: (&self.t).into(),
            a: self.target.to_wire(),
            window: self.window.clone(),
        }
        .serialize(serializer)
    }
}

/// Jensen identity residual for an analytic (Laurent) function on a
/// finite-based window:
///
/// `Δ(t) = log|f|_t - [log|f|_{t1} + k_f(t1)(t - t1) + N_zeros(t)]`.
///
/// The contract is `Δ ≡ 0`, exactly.
pub fn jensen_residual(f: &LaurentPoly, window: &AnnulusWindow) -> Result<PiecewiseLinear, Error> {
    let t1 = window.t_low().clone();
    let t1 = match t1 {
        ExtRat::Finite(q) => q,
        _ => return Err(Error::InfiniteBase),
    };
    let lhs = PiecewiseLinear::from_trop(&f.lognorm_fn()?, window)?;
    let (k, _) = f.critical_exponents(&ExtRat::Finite(t1.clone()))?;
    let base_norm = f
        .gauss_norm(&t1)
        .expect_finite("Gauss norm of a nonzero function")?;
    let line = PiecewiseLinear::affine(rat_int(k), t1.clone(), base_norm, window.clone());
    let (_, radii) = f.zero_radii()?;
    let zeros = counting_from_radii(0, &radii, window);
    Ok(lhs.sub(&line.add(&zeros)))
}

/// The exponent spread of `f`: the width of the combined support of its
/// numerator and denominator. This bounds every slope of the First Main
/// Theorem residual.
pub fn exponent_spread(f: &RationalFn) -> i64 {
    let lo = f
        .num()
        .min_exp()
        .into_iter()
        .chain(f.den().min_exp())
        .min()
        .unwrap_or(0);
    let hi = f
        .num()
        .max_exp()
        .into_iter()
        .chain(f.den().max_exp())
        .max()
        .unwrap_or(0);
    hi - lo
}

/// First Main Theorem residual `Δ_a = T_f - m_f(a,·) - N_f(a,·)`.
///
/// On any window the residual has finitely many breakpoints and slope
/// magnitudes bounded by twice the [`exponent_spread`] (the `O(log r)`
/// statement: writing `H = max(trop num, trop den)`, the residual is
/// `H_f - H_{f-a}` plus a line whose slope is a difference of two critical
/// exponents at the base, and each of the four slope terms lies in the
/// combined support range); on disk windows the leftmost slope is zero
/// (the `O(1)` statement).
pub fn fmt_residual(
    f: &RationalFn,
    a: &Target,
    window: &AnnulusWindow,
) -> Result<PiecewiseLinear, Error> {
    let t = characteristic(f, window)?;
    let m = proximity(f, a, window)?;
    let n = counting(f, a, window)?;
    Ok(t.sub(&m).sub(&n))
}

/// Logarithmic derivative check: `|f^(k)/f|_r <= 1/r^k`.
#[derive(Clone, Debug)]
pub struct LdlReport {
    pub holds: bool,
    /// `-k·t - log_p|f^(k)/f|_t >= 0`; `None` when `f^(k) = 0` and the
    /// bound holds vacuously.
    pub margin: Option<PiecewiseLinear>,
    /// A log-radius where the bound fails, when it does.
    pub counterexample_t: Option<Rat>,
}

pub fn ldl_check(f: &RationalFn, k: u32, window: &AnnulusWindow) -> Result<LdlReport, Error> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let dk = f.derivative_n(k);
    if dk.is_zero() {
        return Ok(LdlReport {
            holds: true,
            margin: None,
            counterexample_t: None,
        });
    }
    let g = dk.div(f)?;
    let bound = PiecewiseLinear::affine(
        rat_int(-(k as i64)),
        Rat::zero(),
        Rat::zero(),
        window.clone(),
    );
    let margin = bound.sub(&lognorm_fn(&g, window)?);
    let holds = margin.min_over_domain() >= ExtRat::Finite(Rat::zero());
    let counterexample_t = if holds {
        None
    } else {
        margin.witness_below(&Rat::zero())
    };
    Ok(LdlReport {
        holds,
        margin: Some(margin),
        counterexample_t,
    })
}

/// Logarithmic derivative check in the `d^k log f` form:
/// `log_p|d^k log f|_t <= C - k·t` with `C` minimal over the window.
#[derive(Clone, Debug)]
pub struct DlogReport {
    pub holds: bool,
    /// The exact supremum of `log_p|d^k log f|_t + k·t`; `None` when the
    /// supremum is `+∞` (never the case in characteristic zero, kept for
    /// honesty) or `-∞`.
    pub c: Option<Rat>,
}

/// Symbolic `d^k log f`, iterating `d^{j+1} log f = d(d^j log f)` from
/// `d log f = f'/f`.
pub fn dlog(f: &RationalFn, k: u32) -> Result<RationalFn, Error> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut g = f.derivative().div(f)?;
    for _ in 1..k {
        g = g.derivative();
    }
    Ok(g)
}

pub fn dlog_check(f: &RationalFn, k: u32, window: &AnnulusWindow) -> Result<DlogReport, Error> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    // no zeros or poles strictly inside the window
    let (zeros, poles) = f.zero_pole_radii()?;
    for (tau, _) in zeros.iter().chain(poles.iter()) {
        if window.interior_contains(&ExtRat::Finite(tau.clone())) {
            return Err(Error::ZeroPoleInWindow(format_rat(tau)));
        }
    }
    if let Some(ord) = f.ord_at_zero() {
        if ord != 0 && window.interior_contains(&ExtRat::NegInf) {
            return Err(Error::ZeroPoleInWindow("-inf".to_string()));
        }
    }
    let g = dlog(f, k)?;
    if g.is_zero() {
        return Ok(DlogReport { holds: true, c: None });
    }
    let shifted = lognorm_fn(&g, window)?.add(&PiecewiseLinear::affine(
        rat_int(k as i64),
        Rat::zero(),
        Rat::zero(),
        window.clone(),
    ));
    match shifted.max_over_domain() {
        ExtRat::Finite(c) => Ok(DlogReport { holds: true, c: Some(c) }),
        ExtRat::PosInf => Ok(DlogReport { holds: false, c: None }),
        ExtRat::NegInf => Ok(DlogReport { holds: true, c: None }),
    }
}

/// Log-growth report for a characteristic function: every piecewise-linear
/// function with finitely many breakpoints is `O(t)`; the final slope is
/// the constant that an extension certificate would cite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogGrowth {
    pub log_growth: bool,
    pub final_slope: Rat,
}

pub fn is_log_growth(t: &PiecewiseLinear) -> Result<LogGrowth, Error> {
    if t.domain().t_high() != &ExtRat::PosInf {
        return Err(Error::BoundedDomain);
    }
    Ok(LogGrowth {
        log_growth: true,
        final_slope: t.final_slope().clone(),
    })
}
