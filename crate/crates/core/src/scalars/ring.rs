use std::fmt;

use super::{CycScalar, Mode};

/// A commutative or noncommutative algebra over the scalars of a fixed [`Mode`].
///
/// Matrices, connections and forms are generic over this trait so the same
/// code runs on plain cyclotomic numbers, on symbolic polynomials and on
/// ε-expansions. Binary operations panic when the operands' modes differ;
/// use the `checked_*` functions on [`CycScalar`] where a recoverable error
/// is wanted.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero(mode: Mode) -> Self;
    fn from_scalar(s: CycScalar) -> Self;
    fn mode(&self) -> Mode;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, s: &CycScalar) -> Self;

    fn one(mode: Mode) -> Self {
        Self::from_scalar(CycScalar::one(mode))
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
}

/// Coefficient rings carrying commuting derivations ∂_i (coordinate index `i >= 1`).
pub trait DiffRing: Ring {
    fn partial(&self, coord: u32) -> Self;
}
