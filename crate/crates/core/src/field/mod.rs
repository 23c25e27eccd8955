//! Exact arithmetic: rationals, polynomials in `q`, and the field Q(q).

mod elem;
mod parse;
mod poly;
mod render;
pub(crate) mod zpoly;

pub use elem::FieldElem;
pub use parse::{parse_field_expr, ParseError};
pub use poly::Polynomial;
pub use render::{render, render_poly};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("reduced denominator vanishes at q = {0}")]
    PoleAtPoint(Rational),
}

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
