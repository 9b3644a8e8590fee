use crate::coeffring::{Coeff, Ring};

/// A commutative algebra over one of the coefficient rings.
///
/// Implementors carry their ambient (number of variables, slots, ...) inside
/// each value, so `zero_like` and `one_like` build elements compatible with
/// `self`. Binary operations assume compatible ambients; the fallible,
/// checked entry points live on the concrete types.
pub trait Algebra: Clone {
    fn ring(&self) -> Ring;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplication by a canonical coefficient of `self.ring()`.
    fn scale(&self, c: &Coeff) -> Self;
    fn is_zero(&self) -> bool;

    fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.ring().embed(-1)))
    }
}
