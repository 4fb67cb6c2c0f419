use crate::semiring::{FiniteSemiring, Semiring};

/// The Boolean semiring `({false, true}, or, and, false, true)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Boolean;

impl Semiring for Boolean {
    type Elem = bool;

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }

    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }

    fn inf_pow(&self, a: &bool) -> bool {
        *a
    }

    fn render(&self, a: &bool) -> String {
        a.to_string()
    }
}

impl FiniteSemiring for Boolean {
    fn elements(&self) -> Vec<bool> {
        vec![false, true]
    }
}
