//! Exact arithmetic, formal power series and Monte Carlo tools for
//! degenerate and new type degenerate Stirling numbers.
//!
//! Every Stirling-type value is a [`LambdaPoly`], a polynomial in the
//! parameter λ with rational coefficients. Tables are produced by recurrences
//! or convolutions ([`stirling::build_triangle`]) and can be rebuilt
//! independently from generating functions ([`stirling::build_triangle_gf`]).

pub mod arith;
pub mod error;
pub mod expectation;
pub mod series;
pub mod stirling;

pub use arith::{LambdaPoly, PolyOp, RatOp, Rational};
pub use error::{Error, Result};
pub use expectation::{McConfig, McReport};
pub use series::{Coefficient, TruncatedSeries};
pub use stirling::{build_triangle, build_triangle_gf, Family, StirlingTriangle};
