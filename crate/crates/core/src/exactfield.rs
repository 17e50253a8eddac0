//! Exact field arithmetic, dense square matrices, and univariate polynomials
//! over the rationals or a prime field GF(p).
//!
//! Everything here is exact: rationals are kept in lowest terms with positive
//! denominator, prime-field elements as canonical residues. No floating
//! point anywhere. All values are immutable after construction and all
//! operations are pure functions, so everything is `Send + Sync`.

mod factor;
mod matrix;
mod poly;
mod value;

pub use matrix::{mat_mul, MatrixError, SquareMatrix};
pub use poly::{char_poly, field_roots, Poly, PolyError};
pub use value::{FieldError, FieldSpec, FieldValue};
