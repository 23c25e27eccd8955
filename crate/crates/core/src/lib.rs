//! Exact Hankel determinants of moment sequences and their q-analogues.
//!
//! Moments `c(n)` are tied to a three-term recurrence with parameters
//! `s(k)`, `t(k)`; the Hankel matrix then factors as `A D A^t` and its
//! determinant is a product of `t`-values. This crate builds those
//! recurrence triangles exactly over Q(q), evaluates the closed-form
//! determinant formulas for the q-Pochhammer ratio family and its
//! specialisations, and checks every one of them against brute-force
//! determinants.

pub mod cli;
pub mod closed_forms;
pub mod field;
pub mod hankel;
pub mod identities;
pub mod qcalc;
pub mod sequences;
pub mod triangle;
pub mod verify;

pub use field::{parse_field_expr, rat, FieldElem, FieldError, ParseError, Polynomial, Rational};
