use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

/// An exponent in `N ∪ {inf}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent::Finite(0);
    pub const ONE: Exponent = Exponent::Finite(1);

    pub fn is_zero(self) -> bool {
        self == Exponent::ZERO
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    /// `0 ↦ 0`, anything positive `↦ inf`.
    pub fn infinitize(self) -> Exponent {
        if self.is_zero() {
            self
        } else {
            Exponent::Infinite
        }
    }
}

impl Add for Exponent {
    type Output = Exponent;

    fn add(self, rhs: Exponent) -> Exponent {
        match (self, rhs) {
            (Exponent::Finite(a), Exponent::Finite(b)) => {
                Exponent::Finite(a.checked_add(b).expect("exponent overflow"))
            }
            _ => Exponent::Infinite,
        }
    }
}

impl From<u64> for Exponent {
    fn from(n: u64) -> Self {
        Exponent::Finite(n)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(n) => write!(f, "{n}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

/// A generalized monomial: indeterminate name ↦ exponent, zero exponents
/// never stored. The derived order compares the sorted `(name, exponent)`
/// entries lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: BTreeMap<String, Exponent>,
}

impl Monomial {
    /// The neutral monomial (every exponent zero).
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(name: impl Into<String>) -> Self {
        Monomial::one().with(name, Exponent::ONE)
    }

    /// Builder-style factor insertion; exponents of a repeated name add up.
    pub fn with(mut self, name: impl Into<String>, e: impl Into<Exponent>) -> Self {
        let e = e.into();
        if !e.is_zero() {
            let slot = self.exponents.entry(name.into()).or_insert(Exponent::ZERO);
            *slot = *slot + e;
        }
        self
    }

    pub fn from_factors<I, S, E>(factors: I) -> Self
    where
        I: IntoIterator<Item = (S, E)>,
        S: Into<String>,
        E: Into<Exponent>,
    {
        factors
            .into_iter()
            .fold(Monomial::one(), |m, (name, e)| m.with(name, e))
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, name: &str) -> Exponent {
        self.exponents.get(name).copied().unwrap_or(Exponent::ZERO)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.exponents.contains_key(name)
    }

    /// Factors in name order.
    pub fn factors(&self) -> impl Iterator<Item = (&str, Exponent)> + '_ {
        self.exponents.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.exponents.keys().map(String::as_str)
    }

    pub fn is_finite(&self) -> bool {
        self.exponents.values().all(|e| e.is_finite())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (name, e) in &other.exponents {
            let slot = out.exponents.entry(name.clone()).or_insert(Exponent::ZERO);
            *slot = *slot + *e;
        }
        out
    }

    /// `self ⪰ other`: every exponent of `self` is at most the one in `other`.
    pub fn absorbs(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .all(|(name, e)| *e <= other.exponent(name))
    }

    /// Every positive exponent becomes `inf`.
    pub fn infinitize(&self) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .map(|(k, e)| (k.clone(), e.infinitize()))
                .collect(),
        }
    }

    /// The monomial with `name` removed.
    pub fn without(&self, name: &str) -> Monomial {
        let mut out = self.clone();
        out.exponents.remove(name);
        out
    }

    /// Partial derivative of a single monomial: drops it if `name` is absent,
    /// lowers a finite exponent by one and keeps an infinite one.
    pub fn derivative(&self, name: &str) -> Option<Monomial> {
        match self.exponents.get(name)? {
            Exponent::Infinite => Some(self.clone()),
            Exponent::Finite(1) => Some(self.without(name)),
            Exponent::Finite(e) => {
                let mut out = self.clone();
                out.exponents.insert(name.to_string(), Exponent::Finite(e - 1));
                Some(out)
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (name, e)) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            match e {
                Exponent::Finite(1) => write!(f, "{name}")?,
                e => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}
