//! Exact scalars, polynomials, truncated series and linear algebra over Q(i).

pub mod gaussian;
pub mod linalg;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod ratfun;
pub mod series;

pub use gaussian::{binomial, factorial, falling, gr, GaussianRational};
pub use linalg::{determinant, exact_nullspace, inverse, rank};
pub use matrix::Matrix;
pub use poly::Poly;
pub use ratfun::RatFun;
pub use series::{series_compose, series_mul, series_reciprocal, TruncSeries};
