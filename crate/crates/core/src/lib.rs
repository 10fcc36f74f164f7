//! Exact computations for the local structure of moduli spaces of
//! connections on curves.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`] – rationals, polynomials, Gröbner bases, truncated Laurent series;
//! * [`stability`] – Hilbert polynomials and (semi)stability verdicts;
//! * [`diffop`] – rewriting in the one-variable ring of differential operators;
//! * [`cohomology`] – Riemann–Roch chases and hypercohomology dimensions;
//! * [`kuranishi`] – the quadratic obstruction map, its zero locus and GIT quotient;
//! * [`deform`] – Weierstrass series and the higher-obstruction congruence.

pub mod cohomology;
pub mod deform;
pub mod diffop;
pub mod error;
pub mod exact;
pub mod kuranishi;
pub mod stability;

pub use error::{Error, Result};
