//! Polynomials in `x, y, z`, Gröbner bases, and curve/ideal validation.

pub mod curve;
pub mod groebner;
pub mod poly;

pub use curve::{hasse_invariant, ideal_membership, is_smooth_cubic, CubicCurve, IdealData};
pub use groebner::{buchberger, normal_form};
pub use poly::{parse, Mono, Polynomial};
