//! Exact arithmetic substrate: rationals, multivariate polynomials, monomial
//! orders, Gröbner bases, truncated Laurent series and 2×2 matrices.

pub mod groebner;
pub mod laurent;
pub mod matrix;
pub mod mpoly;
pub mod order;
pub mod rational;

pub use groebner::{buchberger, ideal_contains, is_groebner_basis, normal_form, s_polynomial};
pub use laurent::{laurent_arith, LaurentOp, TruncLaurent};
pub use matrix::Mat2;
pub use mpoly::{poly_arith, MPoly, Monomial, PolyOp, Vars};
pub use order::{MonomialOrder, OrderKind};
pub use rational::{format_rational, int, parse_rational, rat, Coeff, Rational};
