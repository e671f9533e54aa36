//! Exact continuous piecewise-linear functions of the log-radius.
//!
//! Proximity, counting and characteristic functions, First Main Theorem
//! residuals, margins, and tropicalized paths are all values of this type.
//! A function is stored as breakpoints, one slope per segment, and one
//! anchor value; evaluation is exact at every rational point of the domain.
//!
//! Values are kept normalized: breakpoints strictly inside the open domain,
//! strictly increasing, and no two adjacent segments with equal slope.

use std::fmt;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rat::{format_rat, parse_rat, rat_int, ExtRat, Rat};
use crate::series::{AnnulusWindow, TropPoly};

#[derive(Clone, Debug)]
pub struct PiecewiseLinear {
    domain: AnnulusWindow,
    breakpoints: Vec<Rat>,
    /// One per segment: `slopes[i]` rules between `breakpoints[i-1]` and
    /// `breakpoints[i]`, with the domain bounds at the ends.
    slopes: Vec<Rat>,
    anchor_t: Rat,
    anchor_value: Rat,
}

impl PiecewiseLinear {
    /// Normalizing constructor used by everything below.
    fn assemble(
        domain: AnnulusWindow,
        breakpoints: Vec<Rat>,
        slopes: Vec<Rat>,
        anchor_t: Rat,
        anchor_value: Rat,
    ) -> Self {
        debug_assert_eq!(slopes.len(), breakpoints.len() + 1);
        debug_assert!(breakpoints.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(domain.contains(&ExtRat::Finite(anchor_t.clone())));

        let mut bps: Vec<Rat> = Vec::with_capacity(breakpoints.len());
        let mut sls: Vec<Rat> = Vec::with_capacity(slopes.len());
        let mut current = slopes[0].clone();
        for (i, bp) in breakpoints.into_iter().enumerate() {
            let right = slopes[i + 1].clone();
            let below = matches!(domain.t_low(), ExtRat::Finite(lo) if bp <= *lo);
            let above = matches!(domain.t_high(), ExtRat::Finite(hi) if bp >= *hi);
            if above {
                // everything further right never matters
                break;
            }
            if below {
                // only the slope right of an out-of-domain breakpoint matters
                current = right;
                continue;
            }
            if right == current {
                continue;
            }
            bps.push(bp);
            sls.push(current);
            current = right;
        }
        sls.push(current);
        PiecewiseLinear {
            domain,
            breakpoints: bps,
            slopes: sls,
            anchor_t,
            anchor_value,
        }
    }

    pub fn constant(value: Rat, domain: AnnulusWindow) -> Self {
        let anchor = domain.sample_point();
        PiecewiseLinear {
            domain,
            breakpoints: Vec::new(),
            slopes: vec![Rat::zero()],
            anchor_t: anchor,
            anchor_value: value,
        }
    }

    /// The affine function through `(t0, v0)` with the given slope.
    pub fn affine(slope: Rat, t0: Rat, v0: Rat, domain: AnnulusWindow) -> Self {
        let anchor = domain.sample_point();
        let value = &v0 + &slope * (&anchor - &t0);
        PiecewiseLinear {
            domain,
            breakpoints: Vec::new(),
            slopes: vec![slope],
            anchor_t: anchor,
            anchor_value: value,
        }
    }

    /// The convex upper envelope of a tropical polynomial, restricted to a
    /// window.
    pub fn from_trop(trop: &TropPoly, domain: &AnnulusWindow) -> Result<Self, Error> {
        if trop.is_empty() {
            return Err(Error::ZeroFunction);
        }
        let (hull, breakpoints) = trop.envelope();
        let slopes: Vec<Rat> = hull.iter().map(|(n, _)| rat_int(*n)).collect();
        let anchor_t = domain.sample_point();
        let anchor_value = trop
            .value(&anchor_t)
            .expect_finite("tropical envelope value")
            .unwrap();
        Ok(Self::assemble(
            domain.clone(),
            breakpoints,
            slopes,
            anchor_t,
            anchor_value,
        ))
    }

    /// Build from explicit parts; used by deserialization.
    pub fn from_parts(
        domain: AnnulusWindow,
        breakpoints: Vec<Rat>,
        slopes: Vec<Rat>,
        anchor_t: Rat,
        anchor_value: Rat,
    ) -> Result<Self, Error> {
        if slopes.len() != breakpoints.len() + 1
            || !breakpoints.windows(2).all(|w| w[0] < w[1])
            || !domain.contains(&ExtRat::Finite(anchor_t.clone()))
        {
            return Err(Error::DimensionMismatch);
        }
        Ok(Self::assemble(domain, breakpoints, slopes, anchor_t, anchor_value))
    }

    pub fn domain(&self) -> &AnnulusWindow {
        &self.domain
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[Rat] {
        &self.slopes
    }

    pub fn anchor(&self) -> (&Rat, &Rat) {
        (&self.anchor_t, &self.anchor_value)
    }

    /// Slope of the segment immediately right of the boundary `t`
    /// (`None` stands for the left domain end).
    fn slope_after(&self, boundary: Option<&Rat>) -> &Rat {
        match boundary {
            None => &self.slopes[0],
            Some(t) => {
                let idx = self.breakpoints.iter().take_while(|bp| *bp <= t).count();
                &self.slopes[idx]
            }
        }
    }

    /// Slope of the first segment (behaviour toward the left end).
    pub fn leftmost_slope(&self) -> &Rat {
        &self.slopes[0]
    }

    /// Slope of the last segment (behaviour toward the right end).
    pub fn final_slope(&self) -> &Rat {
        self.slopes.last().unwrap()
    }

    /// Signed area of the slope profile between two finite points, `a <= b`.
    fn integrate(&self, a: &Rat, b: &Rat) -> Rat {
        debug_assert!(a <= b);
        let mut total = Rat::zero();
        let mut lo = a.clone();
        for (i, slope) in self.slopes.iter().enumerate() {
            let hi = match self.breakpoints.get(i) {
                Some(bp) if bp < b => bp.clone(),
                _ => b.clone(),
            };
            if hi > lo {
                total += slope * (&hi - &lo);
                lo = hi;
            }
            if lo >= *b {
                break;
            }
        }
        total
    }

    /// Exact value at a rational point of the domain.
    pub fn value(&self, t: &Rat) -> Rat {
        assert!(
            self.domain.contains(&ExtRat::Finite(t.clone())),
            "evaluation outside the domain"
        );
        if *t >= self.anchor_t {
            &self.anchor_value + self.integrate(&self.anchor_t, t)
        } else {
            &self.anchor_value - self.integrate(t, &self.anchor_t)
        }
    }

    pub fn checked_value(&self, t: &Rat) -> Result<Rat, Error> {
        if !self.domain.contains(&ExtRat::Finite(t.clone())) {
            return Err(Error::OutsideDomain(format_rat(t)));
        }
        Ok(self.value(t))
    }

    /// Restrict to a subwindow.
    pub fn restrict(&self, window: &AnnulusWindow) -> Result<Self, Error> {
        if !(self.domain.t_low() <= window.t_low() && window.t_high() <= self.domain.t_high()) {
            return Err(Error::OutsideDomain(format!(
                "[{}, {}]",
                window.t_low(),
                window.t_high()
            )));
        }
        let anchor_t = window.sample_point();
        let anchor_value = self.value(&anchor_t);
        Ok(Self::assemble(
            window.clone(),
            self.breakpoints.clone(),
            self.slopes.clone(),
            anchor_t,
            anchor_value,
        ))
    }

    fn check_domain(&self, other: &Self) {
        assert_eq!(
            self.domain, other.domain,
            "piecewise-linear operands must share a domain"
        );
    }

    fn merged_breakpoints(&self, other: &Self) -> Vec<Rat> {
        let mut all: Vec<Rat> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        all.sort();
        all.dedup();
        all
    }

    /// Segment list over a boundary set: `None` ends stand for unbounded
    /// domain ends.
    fn segments(&self, boundaries: &[Rat]) -> Vec<(Option<Rat>, Option<Rat>)> {
        let lo_end = self.domain.t_low().finite().cloned();
        let hi_end = self.domain.t_high().finite().cloned();
        let mut segs = Vec::with_capacity(boundaries.len() + 1);
        let mut prev = lo_end;
        for bp in boundaries {
            segs.push((prev.clone(), Some(bp.clone())));
            prev = Some(bp.clone());
        }
        segs.push((prev, hi_end));
        segs
    }

    /// A finite point inside the (closed) segment; both-`None` only occurs
    /// for a fully unbounded domain.
    fn segment_sample(lo: Option<&Rat>, hi: Option<&Rat>) -> Rat {
        match (lo, hi) {
            (Some(a), Some(b)) => (a + b) / rat_int(2),
            (Some(a), None) => a + rat_int(1),
            (None, Some(b)) => b - rat_int(1),
            (None, None) => Rat::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_domain(other);
        let merged = self.merged_breakpoints(other);
        let mut slopes = Vec::with_capacity(merged.len() + 1);
        slopes.push(self.slope_after(None) + other.slope_after(None));
        for bp in &merged {
            slopes.push(self.slope_after(Some(bp)) + other.slope_after(Some(bp)));
        }
        let anchor_t = self.anchor_t.clone();
        let anchor_value = &self.anchor_value + other.value(&anchor_t);
        Self::assemble(self.domain.clone(), merged, slopes, anchor_t, anchor_value)
    }

    pub fn neg(&self) -> Self {
        PiecewiseLinear {
            domain: self.domain.clone(),
            breakpoints: self.breakpoints.clone(),
            slopes: self.slopes.iter().map(|s| -s.clone()).collect(),
            anchor_t: self.anchor_t.clone(),
            anchor_value: -self.anchor_value.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::assemble(
            self.domain.clone(),
            self.breakpoints.clone(),
            self.slopes.iter().map(|s| s * c).collect(),
            self.anchor_t.clone(),
            &self.anchor_value * c,
        )
    }

    pub fn add_scalar(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        out.anchor_value += c;
        out
    }

    /// Pointwise maximum. Crossings inside segments become breakpoints, so
    /// the result is exact.
    pub fn max(&self, other: &Self) -> Self {
        self.check_domain(other);
        let mut boundaries = self.merged_breakpoints(other);

        let mut crossings: Vec<Rat> = Vec::new();
        for (lo, hi) in self.segments(&boundaries) {
            if let (Some(a), Some(b)) = (&lo, &hi) {
                if a >= b {
                    continue;
                }
            }
            let sf = self.slope_after(lo.as_ref()).clone();
            let sg = other.slope_after(lo.as_ref()).clone();
            if sf == sg {
                continue;
            }
            let sample = Self::segment_sample(lo.as_ref(), hi.as_ref());
            let vf = self.value(&sample);
            let vg = other.value(&sample);
            let cross = &sample + (vg - vf) / (&sf - &sg);
            let above_lo = lo.as_ref().is_none_or(|a| cross > *a);
            let below_hi = hi.as_ref().is_none_or(|b| cross < *b);
            if above_lo && below_hi {
                crossings.push(cross);
            }
        }
        boundaries.extend(crossings);
        boundaries.sort();
        boundaries.dedup();

        let mut slopes = Vec::with_capacity(boundaries.len() + 1);
        for (lo, hi) in self.segments(&boundaries) {
            let degenerate = matches!((&lo, &hi), (Some(a), Some(b)) if a >= b);
            let sample = if degenerate {
                lo.clone().unwrap()
            } else {
                Self::segment_sample(lo.as_ref(), hi.as_ref())
            };
            let vf = self.value(&sample);
            let vg = other.value(&sample);
            let winner = if vf >= vg { self } else { other };
            slopes.push(winner.slope_after(lo.as_ref()).clone());
        }

        let anchor_t = self.anchor_t.clone();
        let anchor_value = {
            let a = self.anchor_value.clone();
            let b = other.value(&anchor_t);
            if a >= b {
                a
            } else {
                b
            }
        };
        Self::assemble(self.domain.clone(), boundaries, slopes, anchor_t, anchor_value)
    }

    pub fn min(&self, other: &Self) -> Self {
        self.neg().max(&other.neg()).neg()
    }

    pub fn max_with_zero(&self) -> Self {
        self.max(&Self::constant(Rat::zero(), self.domain.clone()))
    }

    /// True when the function is identically zero on its domain.
    pub fn is_zero(&self) -> bool {
        self.anchor_value.is_zero() && self.slopes.iter().all(|s| s.is_zero())
    }

    /// Largest absolute slope over all segments.
    pub fn max_abs_slope(&self) -> Rat {
        self.slopes.iter().map(|s| s.abs()).max().unwrap()
    }

    /// Exact infimum over the domain (`-∞` on an unbounded end whose slope
    /// escapes downward).
    pub fn min_over_domain(&self) -> ExtRat {
        self.extremum(true)
    }

    /// Exact supremum over the domain.
    pub fn max_over_domain(&self) -> ExtRat {
        self.extremum(false)
    }

    fn extremum(&self, minimum: bool) -> ExtRat {
        let mut candidates: Vec<Rat> = vec![self.anchor_value.clone()];
        for bp in &self.breakpoints {
            candidates.push(self.value(bp));
        }
        match self.domain.t_low() {
            ExtRat::Finite(a) => candidates.push(self.value(a)),
            ExtRat::NegInf => {
                let s = &self.slopes[0];
                if minimum && s.is_positive() {
                    return ExtRat::NegInf;
                }
                if !minimum && s.is_negative() {
                    return ExtRat::PosInf;
                }
            }
            ExtRat::PosInf => unreachable!("windows cannot start at +inf"),
        }
        match self.domain.t_high() {
            ExtRat::Finite(b) => candidates.push(self.value(b)),
            ExtRat::PosInf => {
                let s = self.slopes.last().unwrap();
                if minimum && s.is_negative() {
                    return ExtRat::NegInf;
                }
                if !minimum && s.is_positive() {
                    return ExtRat::PosInf;
                }
            }
            ExtRat::NegInf => unreachable!("windows cannot end at -inf"),
        }
        let it = candidates.into_iter();
        ExtRat::Finite(if minimum {
            it.min().unwrap()
        } else {
            it.max().unwrap()
        })
    }

    /// A point of the domain where the function drops strictly below
    /// `bound`, if any.
    pub fn witness_below(&self, bound: &Rat) -> Option<Rat> {
        let mut candidates: Vec<Rat> = vec![self.anchor_t.clone()];
        candidates.extend_from_slice(&self.breakpoints);
        if let ExtRat::Finite(a) = self.domain.t_low() {
            candidates.push(a.clone());
        }
        if let ExtRat::Finite(b) = self.domain.t_high() {
            candidates.push(b.clone());
        }
        for t in &candidates {
            if self.value(t) < *bound {
                return Some(t.clone());
            }
        }
        // escape toward an unbounded end where the function tends to -inf
        if matches!(self.domain.t_low(), ExtRat::NegInf) && self.slopes[0].is_positive() {
            let r = self
                .breakpoints
                .first()
                .map(|b| if *b < self.anchor_t { b.clone() } else { self.anchor_t.clone() })
                .unwrap_or_else(|| self.anchor_t.clone());
            let gap = self.value(&r) - bound;
            let step = &gap / &self.slopes[0] + rat_int(1);
            return Some(&r - step);
        }
        if matches!(self.domain.t_high(), ExtRat::PosInf) {
            let s = self.slopes.last().unwrap();
            if s.is_negative() {
                let r = self
                    .breakpoints
                    .last()
                    .map(|b| if *b > self.anchor_t { b.clone() } else { self.anchor_t.clone() })
                    .unwrap_or_else(|| self.anchor_t.clone());
                let gap = self.value(&r) - bound;
                let step = &gap / s.abs() + rat_int(1);
                return Some(&r + step);
            }
        }
        None
    }
}

impl PartialEq for PiecewiseLinear {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.breakpoints == other.breakpoints
            && self.slopes == other.slopes
            && self.anchor_value == other.value(&self.anchor_t)
    }
}

impl Eq for PiecewiseLinear {}

impl fmt::Display for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pwl(anchor ({}, {}), breakpoints [{}], slopes [{}])",
            format_rat(&self.anchor_t),
            format_rat(&self.anchor_value),
            self.breakpoints
                .iter()
                .map(format_rat)
                .collect::<Vec<_>>()
                .join(", "),
            self.slopes
                .iter()
                .map(format_rat)
                .collect::<Vec<_>>()
                .join(", "),
        )
    }
}

/// Serialization shape: rationals as strings; the domain is carried by the
/// surrounding document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PwlData {
    pub breakpoints: Vec<String>,
    pub slopes: Vec<String>,
    pub anchor_t: String,
    pub anchor_value: String,
}

impl From<&PiecewiseLinear> for PwlData {
    fn from(f: &PiecewiseLinear) -> Self {
        PwlData {
            breakpoints: f.breakpoints.iter().map(format_rat).collect(),
            slopes: f.slopes.iter().map(format_rat).collect(),
            anchor_t: format_rat(&f.anchor_t),
            anchor_value: format_rat(&f.anchor_value),
        }
    }
}

impl PwlData {
    pub fn into_pwl(self, domain: AnnulusWindow) -> Result<PiecewiseLinear, Error> {
        let bps = self
            .breakpoints
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()?;
        let slopes = self
            .slopes
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()?;
        PiecewiseLinear::from_parts(
            domain,
            bps,
            slopes,
            parse_rat(&self.anchor_t)?,
            parse_rat(&self.anchor_value)?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn whole() -> AnnulusWindow {
        AnnulusWindow::all()
    }

    fn closed(a: i64, b: i64) -> AnnulusWindow {
        AnnulusWindow::closed(rat_int(a), rat_int(b)).unwrap()
    }

    /// max(0, t) on the whole line.
    fn ramp() -> PiecewiseLinear {
        PiecewiseLinear::affine(rat_int(1), rat_int(0), rat_int(0), whole()).max_with_zero()
    }

    #[test]
    fn evaluation_and_breakpoints() {
        let r = ramp();
        assert_eq!(r.breakpoints(), &[rat_int(0)]);
        assert_eq!(r.slopes(), &[rat_int(0), rat_int(1)]);
        assert_eq!(r.value(&rat_int(-5)), rat_int(0));
        assert_eq!(r.value(&rat(7, 2)), rat(7, 2));
    }

    #[test]
    fn addition_merges_segments() {
        // max(0, t) + max(0, -t) = |t|
        let up = ramp();
        let down = PiecewiseLinear::affine(rat_int(-1), rat_int(0), rat_int(0), whole())
            .max_with_zero();
        let abs = up.add(&down);
        assert_eq!(abs.value(&rat_int(-3)), rat_int(3));
        assert_eq!(abs.value(&rat_int(4)), rat_int(4));
        assert_eq!(abs.value(&rat_int(0)), rat_int(0));
        assert_eq!(abs.slopes(), &[rat_int(-1), rat_int(1)]);
    }

    #[test]
    fn max_inserts_crossings() {
        // max(t, -t + 2) crosses at t = 1
        let a = PiecewiseLinear::affine(rat_int(1), rat_int(0), rat_int(0), whole());
        let b = PiecewiseLinear::affine(rat_int(-1), rat_int(0), rat_int(2), whole());
        let m = a.max(&b);
        assert_eq!(m.breakpoints(), &[rat_int(1)]);
        assert_eq!(m.value(&rat_int(0)), rat_int(2));
        assert_eq!(m.value(&rat_int(1)), rat_int(1));
        assert_eq!(m.value(&rat_int(5)), rat_int(5));
        // min via de Morgan
        let n = a.min(&b);
        assert_eq!(n.value(&rat_int(0)), rat_int(0));
        assert_eq!(n.value(&rat_int(5)), rat_int(-3));
    }

    #[test]
    fn normalization_drops_fake_breakpoints() {
        let f = PiecewiseLinear::from_parts(
            whole(),
            vec![rat_int(0)],
            vec![rat_int(2), rat_int(2)],
            rat_int(0),
            rat_int(1),
        )
        .unwrap();
        assert!(f.breakpoints().is_empty());
        let g = PiecewiseLinear::from_parts(
            closed(0, 4),
            vec![rat_int(-1), rat_int(2), rat_int(9)],
            vec![rat_int(1), rat_int(2), rat_int(3), rat_int(4)],
            rat_int(1),
            rat_int(0),
        )
        .unwrap();
        assert_eq!(g.breakpoints(), &[rat_int(2)]);
        assert_eq!(g.slopes(), &[rat_int(2), rat_int(3)]);
    }

    #[test]
    fn extrema_and_witness() {
        let r = ramp();
        assert_eq!(r.min_over_domain(), ExtRat::Finite(rat_int(0)));
        assert_eq!(r.max_over_domain(), ExtRat::PosInf);
        let down = r.neg();
        assert_eq!(down.min_over_domain(), ExtRat::NegInf);
        let w = down.witness_below(&rat_int(-10)).unwrap();
        assert!(down.value(&w) < rat_int(-10));
        // bounded domain extrema hit the endpoints
        let slope = PiecewiseLinear::affine(rat_int(2), rat_int(0), rat_int(0), closed(-1, 3));
        assert_eq!(slope.min_over_domain(), ExtRat::Finite(rat_int(-2)));
        assert_eq!(slope.max_over_domain(), ExtRat::Finite(rat_int(6)));
        assert!(slope.witness_below(&rat_int(-5)).is_none());
    }

    #[test]
    fn restriction_reanchors() {
        let r = ramp();
        let s = r.restrict(&closed(2, 10)).unwrap();
        assert!(s.breakpoints().is_empty());
        assert_eq!(s.value(&rat_int(2)), rat_int(2));
        assert_eq!(s.value(&rat_int(10)), rat_int(10));
        assert!(r.restrict(&whole()).is_ok());
    }

    #[test]
    fn zero_detection() {
        let z = PiecewiseLinear::constant(rat_int(0), closed(0, 1));
        assert!(z.is_zero());
        let r = ramp();
        assert!(!r.is_zero());
        assert!(r.sub(&r).is_zero());
    }
}
