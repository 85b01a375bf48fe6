//! Minimal algebraic interface shared by coefficient types.
//!
//! Coefficients carry their modulus at runtime, so zero and one are produced
//! from an existing element rather than from a type-level constant.

use std::fmt::Debug;

pub trait RingElem: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

pub trait FieldElem: RingElem {
    /// Inverse of a nonzero element; `None` for zero.
    fn try_inv(&self) -> Option<Self>;
}
