//! Exact arithmetic in a real quadratic field `Q(√r)` with infinite sentinels.
//!
//! Every quantity produced by the template constructions is a rational
//! function of rational parameters and at most one square root, so a single
//! square-free discriminant `r` per computation is enough to keep all
//! comparisons exact.

mod error;
mod ext;
mod quad;
mod radical;
mod rational;

pub use error::NumError;
pub use ext::ExtReal;
pub use quad::QuadExt;
pub use radical::square_free_split;
pub use rational::{parse_rational, rat, Rational};
