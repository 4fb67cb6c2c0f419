use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;

use super::monomial::{Exponent, Monomial};
use crate::error::{EvalError, ValueError};
use crate::semiring::Semiring;

/// A generalized absorptive polynomial: a finite antichain of monomials
/// under absorption. Stored sorted, so equal polynomials compare and hash
/// identically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SorpPolynomial {
    monomials: BTreeSet<Monomial>,
}

/// The `⪰`-maximal monomials of `ms`.
pub fn maximals<I: IntoIterator<Item = Monomial>>(ms: I) -> SorpPolynomial {
    let candidates: BTreeSet<Monomial> = ms.into_iter().collect();
    if candidates.len() <= 1 {
        return SorpPolynomial { monomials: candidates };
    }
    // Anything absorbing `m` has total finite weight at most that of `m`, so
    // scanning in increasing weight only needs to look at already-kept items.
    let mut by_weight: Vec<&Monomial> = candidates.iter().collect();
    by_weight.sort_by_key(|m| weight(m));
    let mut kept: Vec<&Monomial> = Vec::with_capacity(by_weight.len());
    for m in by_weight {
        if !kept.iter().any(|k| k.absorbs(m)) {
            kept.push(m);
        }
    }
    SorpPolynomial {
        monomials: kept.into_iter().cloned().collect(),
    }
}

fn weight(m: &Monomial) -> (usize, u128) {
    let mut infinite = 0usize;
    let mut finite = 0u128;
    for (_, e) in m.factors() {
        match e {
            Exponent::Infinite => infinite += 1,
            Exponent::Finite(n) => finite += u128::from(n),
        }
    }
    (infinite, finite)
}

impl SorpPolynomial {
    pub fn zero() -> Self {
        SorpPolynomial::default()
    }

    pub fn one() -> Self {
        SorpPolynomial::from(Monomial::one())
    }

    pub fn var(name: impl Into<String>) -> Self {
        SorpPolynomial::from(Monomial::var(name))
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monomials.len() == 1 && self.monomials.iter().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Monomials in canonical order.
    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.monomials.iter()
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.monomials.iter().any(|m| m.contains(name))
    }

    /// All indeterminate names occurring in the polynomial.
    pub fn names(&self) -> BTreeSet<String> {
        self.monomials
            .iter()
            .flat_map(|m| m.names().map(str::to_string))
            .collect()
    }

    /// True iff no stored monomial absorbs a different stored monomial.
    pub fn is_antichain(&self) -> bool {
        self.monomials.iter().all(|m| {
            self.monomials
                .iter()
                .all(|n| n == m || !n.absorbs(m))
        })
    }

    pub fn add(&self, other: &SorpPolynomial) -> SorpPolynomial {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        maximals(self.monomials.iter().chain(&other.monomials).cloned())
    }

    pub fn mul(&self, other: &SorpPolynomial) -> SorpPolynomial {
        maximals(
            self.monomials
                .iter()
                .flat_map(|m| other.monomials.iter().map(move |n| m.mul(n))),
        )
    }

    /// `(sum of m)^inf = sum of m^inf`, each monomial infinitized.
    pub fn inf_pow(&self) -> SorpPolynomial {
        maximals(self.monomials.iter().map(Monomial::infinitize))
    }

    pub fn pow(&self, n: u64) -> SorpPolynomial {
        Sorp.pow(self, n)
    }

    /// Partial derivative with respect to `name`, taken monomial-wise on the
    /// canonical representation.
    pub fn derivative(&self, name: &str) -> SorpPolynomial {
        maximals(self.monomials.iter().filter_map(|m| m.derivative(name)))
    }

    /// Replaces `name` by `value` and re-normalizes.
    pub fn substitute(&self, name: &str, value: &SorpPolynomial) -> SorpPolynomial {
        if !self.contains_var(name) {
            return self.clone();
        }
        let mut powers: IndexMap<Exponent, SorpPolynomial> = IndexMap::new();
        let terms = self.monomials.iter().map(|m| {
            let rest = SorpPolynomial::from(m.without(name));
            let e = m.exponent(name);
            if e.is_zero() {
                return rest;
            }
            let factor = powers.entry(e).or_insert_with(|| match e {
                Exponent::Finite(k) => value.pow(k),
                Exponent::Infinite => value.inf_pow(),
            });
            rest.mul(factor)
        });
        terms
            .collect::<Vec<_>>()
            .iter()
            .fold(SorpPolynomial::zero(), |acc, t| acc.add(t))
    }

    /// Simultaneous substitution; names missing from `values` stay as they are.
    pub fn substitute_many(&self, values: &IndexMap<String, SorpPolynomial>) -> SorpPolynomial {
        self.evaluate_with(&Sorp, |name| {
            Some(values.get(name).cloned().unwrap_or_else(|| SorpPolynomial::var(name)))
        })
        .expect("every name resolves")
    }

    /// The unique homomorphism into `semiring` extending `assignment`:
    /// finite exponents become powers, `inf` becomes `inf_pow`.
    pub fn evaluate<S: Semiring>(
        &self,
        semiring: &S,
        assignment: &IndexMap<String, S::Elem>,
    ) -> Result<S::Elem, EvalError> {
        self.evaluate_with(semiring, |name| assignment.get(name).cloned())
    }

    pub fn evaluate_with<S, F>(&self, semiring: &S, mut lookup: F) -> Result<S::Elem, EvalError>
    where
        S: Semiring,
        F: FnMut(&str) -> Option<S::Elem>,
    {
        let mut total = semiring.zero();
        for m in &self.monomials {
            let mut term = semiring.one();
            for (name, e) in m.factors() {
                let v = lookup(name).ok_or_else(|| EvalError::MissingAssignment(name.to_string()))?;
                let factor = match e {
                    Exponent::Finite(k) => semiring.pow(&v, k),
                    Exponent::Infinite => semiring.inf_pow(&v),
                };
                term = semiring.mul(&term, &factor);
            }
            total = semiring.add(&total, &term);
        }
        Ok(total)
    }
}

impl From<Monomial> for SorpPolynomial {
    fn from(m: Monomial) -> Self {
        SorpPolynomial {
            monomials: BTreeSet::from([m]),
        }
    }
}

impl FromIterator<Monomial> for SorpPolynomial {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        maximals(iter)
    }
}

impl fmt::Display for SorpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Parses the text rendering, e.g. `a^inf + b*c^2`, `1`, `0`.
impl FromStr for SorpPolynomial {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ValueError::Malformed(s.to_string());
        let s_trim = s.trim();
        if s_trim == "0" {
            return Ok(SorpPolynomial::zero());
        }
        let mut monomials = Vec::new();
        for term in s_trim.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(malformed());
            }
            if term == "1" {
                monomials.push(Monomial::one());
                continue;
            }
            let mut m = Monomial::one();
            for factor in term.split('*') {
                let factor = factor.trim();
                let (name, e) = match factor.split_once('^') {
                    Some((name, "inf")) => (name.trim(), Exponent::Infinite),
                    Some((name, k)) => (name.trim(), Exponent::Finite(k.trim().parse().map_err(|_| malformed())?)),
                    None => (factor, Exponent::ONE),
                };
                if !is_name(name) {
                    return Err(malformed());
                }
                m = m.with(name, e);
            }
            monomials.push(m);
        }
        Ok(maximals(monomials))
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// The semiring of generalized absorptive polynomials over any names.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sorp;

impl Semiring for Sorp {
    type Elem = SorpPolynomial;

    fn zero(&self) -> SorpPolynomial {
        SorpPolynomial::zero()
    }

    fn one(&self) -> SorpPolynomial {
        SorpPolynomial::one()
    }

    fn add(&self, a: &SorpPolynomial, b: &SorpPolynomial) -> SorpPolynomial {
        a.add(b)
    }

    fn mul(&self, a: &SorpPolynomial, b: &SorpPolynomial) -> SorpPolynomial {
        a.mul(b)
    }

    fn inf_pow(&self, a: &SorpPolynomial) -> SorpPolynomial {
        a.inf_pow()
    }

    fn render(&self, a: &SorpPolynomial) -> String {
        a.to_string()
    }

    fn leq(&self, a: &SorpPolynomial, b: &SorpPolynomial) -> bool {
        // a + b = b iff every monomial of a is absorbed by one of b.
        a.monomials().all(|m| b.monomials().any(|n| n.absorbs(m)))
    }
}
