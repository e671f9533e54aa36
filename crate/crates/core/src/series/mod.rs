//! Laurent polynomials and rational functions on annuli: Gauss norms,
//! Newton polygons, critical exponents and zero counting.

mod json;
mod laurent;
mod rational;
mod trop;
mod window;

pub use laurent::LaurentPoly;
pub use rational::{RadiusCounts, RationalFn};
pub use trop::{NewtonPolygon, TropPoly};
pub use window::AnnulusWindow;
