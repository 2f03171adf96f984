//! Exact arithmetic for `G`-factorization statistics of polynomials over
//! finite fields: field and polynomial arithmetic, Galois covers of the
//! projective line with their Frobenius data, factorization types, wreath
//! product means, short-interval experiments and zeta-function checks.

pub mod counting;
pub mod cover;
pub mod error;
pub mod factor;
pub mod field;
pub mod group;
pub mod harness;
pub mod lambda;
pub mod poly;
pub mod ratfn;
pub mod report;
pub mod residue;
pub mod scalar;
pub mod series;
pub mod wreath;
pub mod zeta;

pub use cover::{validate_cover, Cover, CoverSpec, SplittingData};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem, Fq};
pub use group::GroupTable;
pub use lambda::{ArithFnSpec, FactorizationType};
pub use poly::Poly;
pub use ratfn::RationalFn;
pub use scalar::Scalar;

/// Exact rationals, the value type of every asserted quantity.
pub type Rational = num_rational::BigRational;
/// Power series over exact rationals.
pub type Series = series::TruncatedSeries<Rational>;
/// Power series over `f64`, used for diagnostics only.
pub type SeriesF64 = series::TruncatedSeries<f64>;
