//! Exact rational scalars, matrices, polynomials.

pub mod factor;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod roots;
pub mod sparse;
pub mod subspace;

pub use factor::{factor_rational_poly, is_irreducible, Factorization};
pub use matrix::{solve, solve_or_kernel, QMatrix, Solution, SolveReport};
pub use poly::{characteristic_polynomial, minimal_polynomial, QPoly};
pub use rat::{fmt_rat, parse_rat, rat, ratio, Rat};
pub use roots::{real_root_data, sign_at_root, RealRootData, RootInterval};
pub use subspace::Subspace;
