//! Exact non-archimedean calculus on annuli.
//!
//! Everything is computed over ℚ with a p-adic valuation, normalized so the
//! valuation of p is one and all logarithms are base p, which keeps every
//! quantity an exact rational. The crate provides:
//!
//! - [`valued`]: the coefficient field with its exact valuation;
//! - [`series`]: Laurent polynomials and rational functions on annuli,
//!   Gauss norms as tropical polynomials, Newton polygons, zero counting;
//! - [`pwl`]: exact piecewise-linear functions of the log-radius;
//! - [`nevanlinna`]: proximity/counting/characteristic functions, the
//!   Jensen identity, First Main Theorem residuals and logarithmic
//!   derivative bounds;
//! - [`jets`]: jet arithmetic, logarithmic jet differentials on torus
//!   charts, pullbacks, the jet-differential decay bound, and
//!   Green–Griffiths dimension counts;
//! - [`tropical`]: tropicalization of points and analytic curves, integer
//!   lattices, fundamental-domain reduction, cube disjointness and
//!   translate counting.
//!
//! ```
//! use nonarch_core::nevanlinna::{proximity, Target};
//! use nonarch_core::rat::rat_int;
//! use nonarch_core::{AnnulusWindow, LaurentPoly, Prime, RationalFn};
//!
//! let p = Prime::new(2).unwrap();
//! // f = z^2 + 2z vanishes at the origin and at |z| = 1/2 (log-radius -1);
//! // only the latter lies in the annulus A[2^-2, 2^0]
//! let f = LaurentPoly::from_terms([(2, rat_int(1)), (1, rat_int(2))], p);
//! let window = AnnulusWindow::closed(rat_int(-2), rat_int(0)).unwrap();
//! assert_eq!(f.count_zeros(&window).unwrap(), 1);
//!
//! // the proximity function of z at 0 is max(0, -t), exactly
//! let z = RationalFn::var(p);
//! let m = proximity(&z, &Target::Finite(rat_int(0)), &window).unwrap();
//! assert_eq!(m.value(&rat_int(-2)), rat_int(2));
//! assert_eq!(m.value(&rat_int(0)), rat_int(0));
//! ```

pub mod error;
pub mod jets;
pub mod nevanlinna;
pub mod pwl;
pub mod rat;
pub mod series;
pub mod tropical;
pub mod valued;

pub use error::Error;
pub use pwl::PiecewiseLinear;
pub use rat::{ExtRat, Prime, Rat};
pub use series::{AnnulusWindow, LaurentPoly, NewtonPolygon, RationalFn, TropPoly};
pub use valued::ValuedScalar;
