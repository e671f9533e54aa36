//! Exact max-plus polynomials and Newton polygons.
//!
//! A tropical polynomial here is a finite set of affine terms
//! `t -> c + n t` (integer slope `n`, rational intercept `c`) evaluated by
//! maximum. It is the whole-window form of a Gauss norm: the term of slope
//! `n` carries the log-norm of the coefficient `a_n`. Dominated terms are
//! kept — the argmax bounds `k_f`/`K_f` must see them when they tie.
//!
//! The Newton polygon is the dual picture: the upper convex hull of the
//! points `(n, c)`. Its slopes are the negatives of the zero log-radii and
//! its abscissa gaps the multiplicities.

use std::collections::BTreeMap;

use crate::rat::{rat_int, ExtRat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropPoly {
    /// slope -> intercept; at most one term per slope.
    terms: BTreeMap<i64, Rat>,
}

impl TropPoly {
    /// Build from `(slope, intercept)` pairs. Ties on a slope keep the
    /// larger intercept (the smaller one can never attain the maximum).
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, Rat> = BTreeMap::new();
        for (n, c) in terms {
            map.entry(n)
                .and_modify(|old| {
                    if c > *old {
                        *old = c.clone();
                    }
                })
                .or_insert(c);
        }
        TropPoly { terms: map }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    pub fn min_slope(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_slope(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_n (c_n + n t)`; `-∞` when empty.
    pub fn value(&self, t: &Rat) -> ExtRat {
        self.terms
            .iter()
            .map(|(&n, c)| ExtRat::Finite(c + t * rat_int(n)))
            .max()
            .unwrap_or(ExtRat::NegInf)
    }

    /// Least and greatest slope attaining the maximum at `t`.
    /// Panics on an empty term set.
    pub fn argmax_bounds(&self, t: &Rat) -> (i64, i64) {
        let best = self
            .value(t)
            .expect_finite("argmax of an empty tropical polynomial")
            .unwrap();
        let mut lo = None;
        let mut hi = None;
        for (&n, c) in &self.terms {
            if c + t * rat_int(n) == best {
                lo.get_or_insert(n);
                hi = Some(n);
            }
        }
        (lo.unwrap(), hi.unwrap())
    }

    /// The terms forming the upper envelope, in slope order, together with
    /// the breakpoints between consecutive active terms.
    ///
    /// Returns `(lines, breakpoints)` with `lines.len() == breakpoints.len() + 1`;
    /// `lines[i]` is active on `[breakpoints[i-1], breakpoints[i]]`.
    pub fn envelope(&self) -> (Vec<(i64, Rat)>, Vec<Rat>) {
        let lines: Vec<(i64, Rat)> = self.terms.iter().map(|(&n, c)| (n, c.clone())).collect();
        assert!(!lines.is_empty(), "envelope of an empty tropical polynomial");
        // meeting point of two lines with distinct slopes
        let meet = |a: &(i64, Rat), b: &(i64, Rat)| -> Rat {
            (&a.1 - &b.1) / rat_int(b.0 - a.0)
        };
        let mut hull: Vec<(i64, Rat)> = Vec::new();
        for line in lines {
            loop {
                match hull.len() {
                    0 => break,
                    1 => {
                        // a single line survives only if the newcomer does
                        // not dominate it everywhere; equal slopes were
                        // already merged, so it always survives
                        break;
                    }
                    _ => {
                        let last = &hull[hull.len() - 1];
                        let prev = &hull[hull.len() - 2];
                        // `last` is useless if the newcomer overtakes it no
                        // later than `last` overtakes `prev`
                        if meet(prev, &line) <= meet(prev, last) {
                            hull.pop();
                        } else {
                            break;
                        }
                    }
                }
            }
            hull.push(line);
        }
        let breakpoints: Vec<Rat> = hull
            .windows(2)
            .map(|w| meet(&w[0], &w[1]))
            .collect();
        (hull, breakpoints)
    }

    /// The dual description: the upper convex hull of the points `(n, c_n)`.
    /// The envelope's active lines are exactly the hull vertices, left to
    /// right; dominated points fall strictly below the hull.
    pub fn newton_polygon(&self) -> NewtonPolygon {
        let (hull, _) = self.envelope();
        NewtonPolygon { vertices: hull }
    }
}

/// Upper convex hull of the coefficient cloud `(n, log_p|a_n|)`.
/// Vertices have strictly increasing abscissae and the slopes between
/// consecutive vertices strictly decrease.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<(i64, Rat)>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[(i64, Rat)] {
        &self.vertices
    }

    /// Log-radii of the zeros with multiplicities, increasing in radius.
    /// A hull edge from `(n1, c1)` to `(n2, c2)` contributes the radius
    /// `-(c2 - c1)/(n2 - n1)` with multiplicity `n2 - n1`. The zero (or
    /// pole) at the origin is not listed; it is the lowest support index.
    pub fn zeros(&self) -> Vec<(Rat, i64)> {
        self.vertices
            .windows(2)
            .map(|w| {
                let (n1, c1) = &w[0];
                let (n2, c2) = &w[1];
                let slope = (c2 - c1) / rat_int(n2 - n1);
                (-slope, n2 - n1)
            })
            .collect()
    }
}
