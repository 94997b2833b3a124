//! Exact scalars, sparse polynomials, q-analogues and quotient rings.

pub mod ambient;
pub mod literal;
pub mod monomial;
pub mod poly;
pub mod qanalog;
pub mod quotient;
pub mod scalar;

pub use ambient::AmbientRing;
pub use literal::parse_poly;
pub use monomial::{Exp, Monomial, Q};
pub use poly::SparsePoly;
pub use qanalog::{q_binomial, q_factorial, q_int, q_int_step, FracQInt};
pub use quotient::{p_valuation, QModulus, QuotientSpec};
pub use scalar::Scalar;
