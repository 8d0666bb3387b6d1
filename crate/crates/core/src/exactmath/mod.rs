//! Exact rational arithmetic, dense linear algebra over a field, and binary forms.

mod binary;
mod field;
mod matrix;
mod univariate;

pub use binary::{divide_by_linear, gcd_binary_forms, BinaryForm, BinaryFormError, MultiplicityPattern};
pub use field::{fmt_rational, int, parse_rational, ratio, Field, Fp, Rational, FP_MODULUS};
pub use matrix::{nullspace, rank_of, rref, Matrix, QMatrix};
