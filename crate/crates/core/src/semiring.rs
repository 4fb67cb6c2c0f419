//! The absorptive, fully-continuous semiring interface.
//!
//! A semiring here is a *value* describing the carrier (for most instances a
//! zero-sized marker, for min-max the declared chain) together with an
//! associated element type. Operations take the semiring by reference so that
//! instances with runtime data work the same way as the static ones.
//!
//! Every implementation must satisfy:
//!
//! * `(K, add, zero)` and `(K, mul, one)` are commutative monoids, `mul`
//!   distributes over `add` and `zero` annihilates;
//! * absorption: `add(one, a) == one` for every `a` (hence `add` is idempotent
//!   and `mul(a, b) <= a` in the natural order);
//! * full continuity: the natural order is a complete lattice and both
//!   operations commute with suprema and infima of nonempty chains. This can
//!   only be checked on finite chains and is treated as a documented contract;
//! * `inf_pow(a)` is the infimum of the descending chain `1 >= a >= a^2 >= ...`.

use std::fmt::Debug;
use std::hash::Hash;

pub trait Semiring: Clone + Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;

    fn one(&self) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// The infinitary power `a^inf`, computed in closed form.
    fn inf_pow(&self, a: &Self::Elem) -> Self::Elem;

    /// Canonical text rendering, used verbatim in CLI output.
    fn render(&self, a: &Self::Elem) -> String;

    /// Natural order: `a <= b` iff `a + b == b`.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.add(a, b) == *b
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `n`-fold product, `pow(a, 0) == one`.
    fn pow(&self, a: &Self::Elem, n: u64) -> Self::Elem {
        let mut result = self.one();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

/// A semiring whose carrier can be enumerated.
pub trait FiniteSemiring: Semiring {
    fn elements(&self) -> Vec<Self::Elem>;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semirings::{Boolean, Tropical, TropicalValue};

    #[test]
    fn pow_zero_is_one() {
        let t = Tropical;
        assert_eq!(t.pow(&TropicalValue::from_integer(7), 0), t.one());
        assert!(Boolean.pow(&false, 0));
    }

    #[test]
    fn pow_matches_recurrence() {
        let t = Tropical;
        let a = TropicalValue::from_integer(3);
        assert_eq!(t.pow(&a, 2), TropicalValue::from_integer(6));
        for n in 0..10 {
            assert_eq!(t.pow(&a, n + 1), t.mul(&a, &t.pow(&a, n)));
        }
    }

    #[test]
    fn empty_sum_and_product() {
        let t = Tropical;
        assert_eq!(t.sum(std::iter::empty()), t.zero());
        assert_eq!(t.product(std::iter::empty()), t.one());
    }
}
