use std::sync::Arc;

use crate::error::ValueError;
use crate::semiring::{FiniteSemiring, Semiring};

/// The min-max semiring `(A, max, min, least, greatest)` on a finite,
/// user-declared chain. Labels are listed least first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinMax {
    chain: Arc<[String]>,
}

/// Position of an element in its chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinMaxValue(pub usize);

impl MinMax {
    pub fn new<I, S>(labels: I) -> Result<Self, ValueError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let chain: Vec<String> = labels.into_iter().map(Into::into).collect();
        if chain.len() < 2 {
            return Err(ValueError::ChainTooShort);
        }
        for (i, label) in chain.iter().enumerate() {
            if chain[..i].contains(label) {
                return Err(ValueError::DuplicateLabel(label.clone()));
            }
        }
        Ok(MinMax { chain: chain.into() })
    }

    pub fn labels(&self) -> &[String] {
        &self.chain
    }

    pub fn value(&self, label: &str) -> Result<MinMaxValue, ValueError> {
        self.chain
            .iter()
            .position(|l| l == label)
            .map(MinMaxValue)
            .ok_or_else(|| ValueError::UnknownLabel(label.to_string()))
    }

    fn check(&self, a: MinMaxValue) -> MinMaxValue {
        assert!(
            a.0 < self.chain.len(),
            "min-max value {} does not belong to a chain of length {}",
            a.0,
            self.chain.len()
        );
        a
    }
}

impl Semiring for MinMax {
    type Elem = MinMaxValue;

    fn zero(&self) -> MinMaxValue {
        MinMaxValue(0)
    }

    fn one(&self) -> MinMaxValue {
        MinMaxValue(self.chain.len() - 1)
    }

    fn add(&self, a: &MinMaxValue, b: &MinMaxValue) -> MinMaxValue {
        self.check(*a).max(self.check(*b))
    }

    fn mul(&self, a: &MinMaxValue, b: &MinMaxValue) -> MinMaxValue {
        self.check(*a).min(self.check(*b))
    }

    fn inf_pow(&self, a: &MinMaxValue) -> MinMaxValue {
        self.check(*a)
    }

    fn render(&self, a: &MinMaxValue) -> String {
        self.chain[self.check(*a).0].clone()
    }

    fn leq(&self, a: &MinMaxValue, b: &MinMaxValue) -> bool {
        self.check(*a) <= self.check(*b)
    }
}

impl FiniteSemiring for MinMax {
    fn elements(&self) -> Vec<MinMaxValue> {
        (0..self.chain.len()).map(MinMaxValue).collect()
    }
}
