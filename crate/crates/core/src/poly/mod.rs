//! Finite quotients `Z_m[x_1..x_k]/(f_1..f_t)` by monomial rewriting.

mod monomial;
mod parse;
mod polynomial;
mod quotient;

pub use monomial::Monomial;
pub use parse::parse_poly;
pub use polynomial::Poly;
pub use quotient::{standard_basis, truncate, QuotientRing, QuotientSpec, RewriteSystem, Rule};
