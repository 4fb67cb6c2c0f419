//! Polynomial equation systems `X = P_X(X_1, ..., X_l)` over a semiring, the
//! induced operator `F`, and the closed-form extreme solutions
//! `lfp = F^l(0)` and `gfp = F^l(F^l(1)^inf)`.

use std::collections::HashSet;

use indexmap::IndexMap;

use crate::error::{EvalError, SystemError, Violation};
use crate::semiring::Semiring;
use crate::sorp::{Exponent, Monomial, Sorp, SorpPolynomial};

/// A total assignment of semiring values to indeterminates, in declared order.
pub type Valuation<E> = IndexMap<String, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixpointKind {
    Least,
    Greatest,
}

/// Starting vector of a Kleene iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KleeneStart {
    Zero,
    One,
}

/// One `coefficient · monomial` pair of a right-hand side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub coeff: E,
    pub monomial: Monomial,
}

impl<E> Term<E> {
    pub fn new(coeff: E, monomial: Monomial) -> Self {
        Term { coeff, monomial }
    }
}

/// A right-hand side: a finite formal sum of terms with pairwise different
/// monomials and nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SysPolynomial<E> {
    terms: Vec<Term<E>>,
}

impl<E: Clone> SysPolynomial<E> {
    pub fn terms(&self) -> &[Term<E>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates the sum; an empty sum is the semiring zero.
    pub fn evaluate<S, F>(&self, semiring: &S, mut lookup: F) -> S::Elem
    where
        S: Semiring<Elem = E>,
        F: FnMut(&str) -> E,
    {
        let mut total = semiring.zero();
        for term in &self.terms {
            let mut value = term.coeff.clone();
            for (name, e) in term.monomial.factors() {
                let x = lookup(name);
                let factor = match e {
                    Exponent::Finite(k) => semiring.pow(&x, k),
                    Exponent::Infinite => semiring.inf_pow(&x),
                };
                value = semiring.mul(&value, &factor);
            }
            total = semiring.add(&total, &value);
        }
        total
    }
}

/// Checks the well-formedness conditions on a candidate system and returns
/// every violation found.
pub fn check_system<S: Semiring>(
    semiring: &S,
    vars: &[String],
    equations: &IndexMap<String, Vec<Term<S::Elem>>>,
    allow_infinite_exponents: bool,
) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut declared = HashSet::new();
    for x in vars {
        if !declared.insert(x.as_str()) {
            violations.push(Violation::DuplicateIndeterminate(x.clone()));
        } else if !equations.contains_key(x) {
            violations.push(Violation::MissingEquation(x.clone()));
        }
    }
    for (x, terms) in equations {
        if !declared.contains(x.as_str()) {
            violations.push(Violation::UndeclaredEquation(x.clone()));
        }
        let mut seen = HashSet::new();
        for (i, term) in terms.iter().enumerate() {
            if semiring.is_zero(&term.coeff) {
                violations.push(Violation::ZeroCoefficient { equation: x.clone(), term: i });
            }
            if !seen.insert(&term.monomial) {
                violations.push(Violation::DuplicateMonomial { equation: x.clone(), term: i });
            }
            for (name, e) in term.monomial.factors() {
                if !declared.contains(name) {
                    violations.push(Violation::UndeclaredIndeterminate {
                        equation: x.clone(),
                        term: i,
                        name: name.to_string(),
                    });
                }
                if !allow_infinite_exponents && !e.is_finite() {
                    violations.push(Violation::InfiniteExponent {
                        equation: x.clone(),
                        term: i,
                        name: name.to_string(),
                    });
                }
            }
        }
    }
    violations
}

/// A polynomial equation system with one equation per declared indeterminate
/// and finite exponents only.
#[derive(Clone, Debug)]
pub struct EquationSystem<S: Semiring> {
    semiring: S,
    equations: IndexMap<String, SysPolynomial<S::Elem>>,
}

impl<S: Semiring + PartialEq> PartialEq for EquationSystem<S> {
    fn eq(&self, other: &Self) -> bool {
        self.semiring == other.semiring
            && self.equations.len() == other.equations.len()
            && self
                .equations
                .iter()
                .zip(&other.equations)
                .all(|((x, p), (y, q))| x == y && p == q)
    }
}

impl<S: Semiring> EquationSystem<S> {
    /// Validates and builds a system. `vars` fixes the declared order.
    pub fn new(
        semiring: S,
        vars: Vec<String>,
        mut equations: IndexMap<String, Vec<Term<S::Elem>>>,
    ) -> Result<Self, SystemError> {
        let violations = check_system(&semiring, &vars, &equations, false);
        if !violations.is_empty() {
            return Err(SystemError(violations));
        }
        let equations = vars
            .into_iter()
            .map(|x| {
                let terms = equations.swap_remove(&x).expect("checked");
                (x, SysPolynomial { terms })
            })
            .collect();
        Ok(EquationSystem { semiring, equations })
    }

    /// Builds a system whose declared order is the order of `equations`.
    pub fn from_equations<I, N, T>(semiring: S, equations: I) -> Result<Self, SystemError>
    where
        I: IntoIterator<Item = (N, T)>,
        N: Into<String>,
        T: IntoIterator<Item = (S::Elem, Monomial)>,
    {
        let equations: IndexMap<String, Vec<Term<S::Elem>>> = equations
            .into_iter()
            .map(|(x, ts)| {
                (x.into(), ts.into_iter().map(|(c, m)| Term::new(c, m)).collect())
            })
            .collect();
        let vars = equations.keys().cloned().collect();
        EquationSystem::new(semiring, vars, equations)
    }

    pub fn semiring(&self) -> &S {
        &self.semiring
    }

    /// Indeterminates in declared order.
    pub fn vars(&self) -> impl Iterator<Item = &str> + '_ {
        self.equations.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn equation(&self, x: &str) -> Option<&SysPolynomial<S::Elem>> {
        self.equations.get(x)
    }

    pub fn equations(&self) -> impl Iterator<Item = (&str, &SysPolynomial<S::Elem>)> + '_ {
        self.equations.iter().map(|(x, p)| (x.as_str(), p))
    }

    /// The vector with every component equal to `value`.
    pub fn constant(&self, value: &S::Elem) -> Valuation<S::Elem> {
        self.equations
            .keys()
            .map(|x| (x.clone(), value.clone()))
            .collect()
    }

    /// One application of the induced operator `F`.
    ///
    /// Panics if `v` does not assign every indeterminate of the system.
    pub fn apply(&self, v: &Valuation<S::Elem>) -> Valuation<S::Elem> {
        self.equations
            .iter()
            .map(|(x, p)| {
                let value = p.evaluate(&self.semiring, |name| {
                    v.get(name)
                        .unwrap_or_else(|| panic!("valuation has no value for {name:?}"))
                        .clone()
                });
                (x.clone(), value)
            })
            .collect()
    }

    /// `F^n(v)`.
    pub fn iterate(&self, v: &Valuation<S::Elem>, n: usize) -> Valuation<S::Elem> {
        (0..n).fold(v.clone(), |acc, _| self.apply(&acc))
    }

    /// Componentwise `inf_pow`.
    pub fn inf_pow(&self, v: &Valuation<S::Elem>) -> Valuation<S::Elem> {
        v.iter()
            .map(|(x, a)| (x.clone(), self.semiring.inf_pow(a)))
            .collect()
    }

    /// Componentwise natural order.
    pub fn leq(&self, a: &Valuation<S::Elem>, b: &Valuation<S::Elem>) -> bool {
        self.equations.keys().all(|x| self.semiring.leq(&a[x], &b[x]))
    }

    pub fn is_fixed_point(&self, v: &Valuation<S::Elem>) -> bool {
        self.apply(v) == *v
    }

    /// The least solution `F^l(0)`.
    pub fn lfp_closed(&self) -> Valuation<S::Elem> {
        self.iterate(&self.constant(&self.semiring.zero()), self.len())
    }

    /// The greatest solution `F^l(F^l(1)^inf)`.
    pub fn gfp_closed(&self) -> Valuation<S::Elem> {
        self.gfp_closed_trace().solution().clone()
    }

    pub fn solve_closed(&self, kind: FixpointKind) -> Valuation<S::Elem> {
        match kind {
            FixpointKind::Least => self.lfp_closed(),
            FixpointKind::Greatest => self.gfp_closed(),
        }
    }

    /// The greatest solution together with every intermediate vector.
    pub fn gfp_closed_trace(&self) -> GfpTrace<S::Elem> {
        let l = self.len();
        let mut inner = vec![self.constant(&self.semiring.one())];
        for _ in 0..l {
            let next = self.apply(inner.last().expect("nonempty"));
            inner.push(next);
        }
        let collapsed = self.inf_pow(inner.last().expect("nonempty"));
        let mut outer = vec![collapsed];
        for _ in 0..l {
            let next = self.apply(outer.last().expect("nonempty"));
            outer.push(next);
        }
        GfpTrace { inner, outer }
    }

    /// Plain fixed-point iteration from the all-zero or all-one vector. Stops
    /// as soon as two consecutive vectors agree or after `max_steps`
    /// applications of `F`.
    pub fn kleene_iterate(&self, start: KleeneStart, max_steps: usize) -> KleeneOutcome<S::Elem> {
        let init = match start {
            KleeneStart::Zero => self.semiring.zero(),
            KleeneStart::One => self.semiring.one(),
        };
        let mut current = self.constant(&init);
        for step in 1..=max_steps {
            let next = self.apply(&current);
            if next == current {
                return KleeneOutcome { valuation: next, converged: true, steps: step };
            }
            current = next;
        }
        KleeneOutcome { valuation: current, converged: false, steps: max_steps }
    }

    /// Replaces the coefficient of every term by a fresh indeterminate,
    /// giving a system over generalized absorptive polynomials together with
    /// the assignment that maps it back.
    pub fn symbolic_abstraction(&self) -> Abstraction<S::Elem> {
        let terms: IndexMap<String, Vec<Term<S::Elem>>> = self
            .equations
            .iter()
            .map(|(x, p)| (x.clone(), p.terms.clone()))
            .collect();
        let (equations, assignment) = abstract_terms(&terms);
        let system = EquationSystem::new(Sorp, self.equations.keys().cloned().collect(), equations)
            .expect("abstraction preserves well-formedness");
        Abstraction { system, assignment }
    }
}

/// Allots one fresh coefficient name per term, avoiding the names of the
/// solve-for indeterminates. Returns the abstracted terms and the map from
/// fresh names back to the original coefficients.
pub(crate) fn abstract_terms<E: Clone>(
    equations: &IndexMap<String, Vec<Term<E>>>,
) -> (IndexMap<String, Vec<Term<SorpPolynomial>>>, Valuation<E>) {
    let mut assignment = Valuation::new();
    let mut abstracted = IndexMap::new();
    let mut counter = 0usize;
    for (x, terms) in equations {
        let mut out = Vec::with_capacity(terms.len());
        for term in terms {
            let mut name = format!("a{counter}");
            while equations.contains_key(&name) {
                name.push('\'');
            }
            counter += 1;
            assignment.insert(name.clone(), term.coeff.clone());
            out.push(Term::new(SorpPolynomial::var(name), term.monomial.clone()));
        }
        abstracted.insert(x.clone(), out);
    }
    (abstracted, assignment)
}

/// The result of [`EquationSystem::symbolic_abstraction`].
#[derive(Clone, Debug)]
pub struct Abstraction<E> {
    pub system: EquationSystem<Sorp>,
    pub assignment: Valuation<E>,
}

/// Intermediate vectors of the closed-form greatest solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfpTrace<E> {
    /// `F^0(1), F^1(1), ..., F^l(1)`.
    pub inner: Vec<Valuation<E>>,
    /// `F^l(1)^inf, F(F^l(1)^inf), ..., F^l(F^l(1)^inf)`.
    pub outer: Vec<Valuation<E>>,
}

impl<E> GfpTrace<E> {
    pub fn collapsed(&self) -> &Valuation<E> {
        &self.outer[0]
    }

    pub fn solution(&self) -> &Valuation<E> {
        self.outer.last().expect("nonempty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleeneOutcome<E> {
    pub valuation: Valuation<E>,
    pub converged: bool,
    pub steps: usize,
}

impl EquationSystem<Sorp> {
    /// Applies the homomorphism extending `h` to every coefficient. Terms whose
    /// coefficient maps to zero are dropped; colliding monomials are merged by
    /// addition.
    pub fn map_coefficients<K: Semiring>(
        &self,
        target: K,
        h: &Valuation<K::Elem>,
    ) -> Result<EquationSystem<K>, EvalError> {
        let mut equations = IndexMap::new();
        for (x, p) in &self.equations {
            let mut merged: IndexMap<Monomial, K::Elem> = IndexMap::new();
            for term in &p.terms {
                let c = term.coeff.evaluate(&target, h)?;
                let slot = merged.entry(term.monomial.clone()).or_insert_with(|| target.zero());
                *slot = target.add(slot, &c);
            }
            let terms = merged
                .into_iter()
                .filter(|(_, c)| !target.is_zero(c))
                .map(|(m, c)| Term::new(c, m))
                .collect();
            equations.insert(x.clone(), SysPolynomial { terms });
        }
        Ok(EquationSystem { semiring: target, equations })
    }
}
