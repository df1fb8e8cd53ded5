//! Exact scalar, matrix and polynomial arithmetic over the rationals and `F_p`.

pub mod factor;
pub mod field;
pub mod matrix;
pub mod poly;

pub use factor::{factor_split, Factorization};
pub use field::{Field, Scalar};
pub use matrix::{solve_linear, Coordinates, LinearSolution, Matrix, Quotient};
pub use poly::{characteristic_polynomial, minimal_polynomial, Poly};
