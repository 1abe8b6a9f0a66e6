//! Exact scalar arithmetic: rationals, ℚ[q], the cyclotomic field ℚ[q]/(Φ_N),
//! q-combinatorics, and polynomial extensions used as matrix/form coefficients.

mod cyclotomic;
mod poly;
mod qcomb;
mod qpoly;
mod ring;

pub use cyclotomic::{scalar_add, scalar_inverse, scalar_mul, scalar_neg, CycScalar, Mode};
pub use poly::{coord_name, JetPoly, JetSymbol, JetWord, Monomial, Poly, VarMonomial, VarPoly};
pub(crate) use poly::{join_terms, render_term};
pub use qcomb::{q_binomial, q_binomial_row, q_factorial, q_integer, QIntegerConvention};
pub use qpoly::{cyclotomic_polynomial, totient, QPolynomial, Rational};
pub(crate) use qpoly::rat_frac;
pub use ring::{DiffRing, Ring};
