//! Exact triangles of generalized r-Whitney and Stirling-type numbers,
//! with a verification engine for the identities connecting them.
//!
//! The central objects are two triangular arrays attached to a modulus
//! `m`, a shift `r`, and a parameter vector `alpha`:
//!
//! * first kind: `m^n (x; alpha)_n = sum_k w(n, k) (m x + r)^k`
//! * second kind: `(m x + r)^n = sum_k W(n, k) m^k (x; alpha)_k`
//!
//! where `(x; alpha)_n = prod_{i<n} (x - alpha_i)`. Specializing `alpha`
//! recovers the classical r-Whitney, r-Stirling, and Stirling numbers;
//! other parameter choices give Comtet, multiparameter, p-Stirling, and
//! q-Stirling triangles. All arithmetic is exact over arbitrary-precision
//! rationals.
//!
//! Every triangle can be built two ways, by recurrence and by polynomial
//! basis conversion, and the [`identities`] module cross-checks a catalog
//! of relations between the families with the two sides computed along
//! independent routes.

#![forbid(unsafe_code)]

pub mod error;
pub mod families;
pub mod identities;
pub mod matrixrep;
pub mod numeric;
pub mod params;
pub mod polynomial;
pub mod stirling;
pub mod whitney;

pub use error::Error;
pub use numeric::Rational;
pub use params::AlphaSpec;
pub use polynomial::{ParameterVector, Polynomial};
pub use whitney::{Triangle, TriangleKind};
