//! Coefficient-ring abstraction shared by polynomials and linear algebra.
//!
//! Two structures implement it: explicit finite fields ([`crate::field::Field`])
//! and the cyclotomic quotient ring ([`crate::cyclotomic::CycRing`]), which is
//! not a field and may contain zero divisors.

use crate::arith::Natural;
use crate::error::Result;

/// A commutative ring with identity, given as a context object; elements are
/// plain data interpreted relative to the context.
pub trait CoeffRing: Clone + PartialEq {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; NotInvertible for zero and zero divisors.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// Embeds a natural number via repeated addition of 1 (reduced mod char).
    #[allow(clippy::wrong_self_convention)]
    fn from_natural(&self, n: &Natural) -> Self::Elem;
    /// Whether every nonzero element is invertible. Decides the determinant
    /// algorithm used for resultants.
    fn is_field(&self) -> bool;
    fn fmt_elem(&self, e: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// a^e by square-and-multiply.
    fn pow(&self, a: &Self::Elem, e: &Natural) -> Self::Elem {
        use num_traits::Zero;
        let mut result = self.one();
        if e.is_zero() {
            return result;
        }
        let mut base = a.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.mul(&result, &base);
            }
            if i + 1 < bits {
                base = self.mul(&base, &base);
            }
        }
        result
    }
}
