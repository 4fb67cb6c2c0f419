//! Symbolic solving over generalized absorptive polynomials.
//!
//! A single equation `X = P(X)` has least solution `P(0)` and greatest
//! solution `P(0) + P'(1)^inf`. Larger systems are solved by eliminating the
//! indeterminates one at a time in declared order and substituting the
//! results back in reverse.

use indexmap::IndexMap;

use crate::eqsys::{abstract_terms, check_system, EquationSystem, FixpointKind, Term, Valuation};
use crate::error::{SystemError, Violation};
use crate::semiring::Semiring;
use crate::sorp::{Sorp, SorpPolynomial};

/// Least solution of `X = P(X)`.
pub fn solve_one_lfp(p: &SorpPolynomial, x: &str) -> SorpPolynomial {
    p.substitute(x, &SorpPolynomial::zero())
}

/// Greatest solution of `X = P(X)`.
pub fn solve_one_gfp(p: &SorpPolynomial, x: &str) -> SorpPolynomial {
    let absolute = p.substitute(x, &SorpPolynomial::zero());
    let cyclic = p.derivative(x).substitute(x, &SorpPolynomial::one()).inf_pow();
    absolute.add(&cyclic)
}

pub fn solve_one(p: &SorpPolynomial, x: &str, kind: FixpointKind) -> SorpPolynomial {
    match kind {
        FixpointKind::Least => solve_one_lfp(p, x),
        FixpointKind::Greatest => solve_one_gfp(p, x),
    }
}

/// A system `X = P_X` where each right-hand side is a polynomial over the
/// solve-for indeterminates and the coefficient indeterminates together.
/// Every name that is not solved for counts as a coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSystem {
    equations: IndexMap<String, SorpPolynomial>,
}

impl SymbolicSystem {
    /// The key order is the elimination order.
    pub fn new(equations: IndexMap<String, SorpPolynomial>) -> Self {
        SymbolicSystem { equations }
    }

    /// Flattens `coeff · monomial` terms into single polynomials. Coefficients
    /// must not mention solve-for indeterminates.
    pub fn from_equation_system(system: &EquationSystem<Sorp>) -> Result<Self, SystemError> {
        let terms: IndexMap<String, Vec<Term<SorpPolynomial>>> = system
            .equations()
            .map(|(x, p)| (x.to_string(), p.terms().to_vec()))
            .collect();
        Self::from_terms(&terms)
    }

    fn from_terms(terms: &IndexMap<String, Vec<Term<SorpPolynomial>>>) -> Result<Self, SystemError> {
        let mut clashes: Vec<Violation> = Vec::new();
        let mut equations = IndexMap::new();
        for (x, ts) in terms {
            let mut rhs = SorpPolynomial::zero();
            for t in ts {
                for name in t.coeff.names() {
                    if terms.contains_key(&name) && !clashes.contains(&Violation::NameClash(name.clone())) {
                        clashes.push(Violation::NameClash(name));
                    }
                }
                rhs = rhs.add(&t.coeff.mul(&SorpPolynomial::from(t.monomial.clone())));
            }
            equations.insert(x.clone(), rhs);
        }
        if clashes.is_empty() {
            Ok(SymbolicSystem { equations })
        } else {
            Err(SystemError(clashes))
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> + '_ {
        self.equations.keys().map(String::as_str)
    }

    pub fn equation(&self, x: &str) -> Option<&SorpPolynomial> {
        self.equations.get(x)
    }

    /// The same system with a different elimination order. Panics unless
    /// `order` is a permutation of the solve-for indeterminates.
    pub fn with_order(&self, order: &[&str]) -> SymbolicSystem {
        assert_eq!(order.len(), self.equations.len(), "not a permutation");
        SymbolicSystem {
            equations: order
                .iter()
                .map(|x| {
                    let p = self.equations.get(*x).unwrap_or_else(|| panic!("unknown {x:?}"));
                    (x.to_string(), p.clone())
                })
                .collect(),
        }
    }

    /// Whether `solution` satisfies every equation exactly.
    pub fn is_solution(&self, solution: &IndexMap<String, SorpPolynomial>) -> bool {
        self.equations
            .iter()
            .all(|(x, p)| p.substitute_many(solution) == solution[x])
    }

    /// Extreme solution by elimination. Every returned polynomial is free of
    /// the solve-for indeterminates; keys follow the declared order.
    pub fn solve(&self, kind: FixpointKind) -> IndexMap<String, SorpPolynomial> {
        let mut pending: Vec<(String, SorpPolynomial)> = self
            .equations
            .iter()
            .map(|(x, p)| (x.clone(), p.clone()))
            .collect();
        let mut eliminated: Vec<(String, SorpPolynomial)> = Vec::with_capacity(pending.len());
        for i in 0..pending.len() {
            let (x, p) = pending[i].clone();
            // In terms of the indeterminates not yet eliminated.
            let h = solve_one(&p, &x, kind);
            for (_, rest) in pending.iter_mut().skip(i + 1) {
                *rest = rest.substitute(&x, &h);
            }
            eliminated.push((x, h));
        }
        let mut solution: IndexMap<String, SorpPolynomial> = IndexMap::new();
        for (x, h) in eliminated.into_iter().rev() {
            let value = h.substitute_many(&solution);
            solution.insert(x, value);
        }
        self.equations
            .keys()
            .map(|x| (x.clone(), solution[x].clone()))
            .collect()
    }
}

/// Solves a system over any semiring via symbolic abstraction, elimination
/// and reverse instantiation.
pub fn solve_in_semiring<S: Semiring>(system: &EquationSystem<S>, kind: FixpointKind) -> Valuation<S::Elem> {
    let abstraction = system.symbolic_abstraction();
    let symbolic = SymbolicSystem::from_equation_system(&abstraction.system)
        .expect("fresh coefficient names never clash");
    instantiate(system.semiring(), &symbolic.solve(kind), &abstraction.assignment)
}

/// Like [`solve_in_semiring`] but starting from raw terms, which may carry
/// infinite exponents on solve-for indeterminates.
pub fn solve_terms_in_semiring<S: Semiring>(
    semiring: &S,
    vars: &[String],
    equations: &IndexMap<String, Vec<Term<S::Elem>>>,
    kind: FixpointKind,
) -> Result<Valuation<S::Elem>, SystemError> {
    let violations = check_system(semiring, vars, equations, true);
    if !violations.is_empty() {
        return Err(SystemError(violations));
    }
    let ordered: IndexMap<String, Vec<Term<S::Elem>>> = vars
        .iter()
        .map(|x| (x.clone(), equations[x].clone()))
        .collect();
    let (abstracted, assignment) = abstract_terms(&ordered);
    let symbolic = SymbolicSystem::from_terms(&abstracted).expect("fresh coefficient names never clash");
    Ok(instantiate(semiring, &symbolic.solve(kind), &assignment))
}

fn instantiate<S: Semiring>(
    semiring: &S,
    solution: &IndexMap<String, SorpPolynomial>,
    assignment: &Valuation<S::Elem>,
) -> Valuation<S::Elem> {
    solution
        .iter()
        .map(|(x, p)| {
            let v = p
                .evaluate(semiring, assignment)
                .expect("solutions only mention coefficient names");
            (x.clone(), v)
        })
        .collect()
}
