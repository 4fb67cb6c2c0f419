//! Independent checks for the solvers: enumeration of truncated derivation
//! trees and exhaustive fixed-point search over finite semirings.

use std::cmp::Ordering;
use std::collections::HashMap;

use indexmap::IndexMap;
use itertools::Itertools;

use crate::eqsys::{EquationSystem, Valuation};
use crate::error::OracleError;
use crate::semiring::{FiniteSemiring, Semiring};

/// Default bound on the number of tree nodes materialized per query.
pub const DEFAULT_NODE_BUDGET: usize = 10_000;

/// Default bound on the number of valuations visited by brute force.
pub const DEFAULT_SEARCH_BUDGET: u128 = 1_000_000;

/// A node of a truncated derivation tree. Inner nodes record which term of
/// `P_var` they picked; nodes at the truncation depth are cut and take
/// their yield from the boundary vector.
#[derive(Clone, Debug)]
pub struct DerivationNode<E> {
    var: String,
    choice: Option<(usize, E)>,
    children: Vec<DerivationNode<E>>,
}

impl<E> DerivationNode<E> {
    pub fn var(&self) -> &str {
        &self.var
    }

    /// Index of the chosen term, `None` for a cut node.
    pub fn term_index(&self) -> Option<usize> {
        self.choice.as_ref().map(|(i, _)| *i)
    }

    pub fn coefficient(&self) -> Option<&E> {
        self.choice.as_ref().map(|(_, c)| c)
    }

    pub fn is_cut(&self) -> bool {
        self.choice.is_none()
    }

    pub fn children(&self) -> &[DerivationNode<E>] {
        &self.children
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(DerivationNode::size).sum::<usize>()
    }

    fn has_cut(&self) -> bool {
        self.is_cut() || self.children.iter().any(DerivationNode::has_cut)
    }

    // The coefficient is determined by (var, term index), so it is ignored.
    fn shape_cmp(&self, other: &Self) -> Ordering {
        self.var
            .cmp(&other.var)
            .then_with(|| self.term_index().cmp(&other.term_index()))
            .then_with(|| {
                for (a, b) in self.children.iter().zip(&other.children) {
                    match a.shape_cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                self.children.len().cmp(&other.children.len())
            })
    }
}

/// A derivation tree cut at depth `depth`; children are unordered and kept
/// in a canonical order.
#[derive(Clone, Debug)]
pub struct TruncatedDerivationTree<E> {
    root: DerivationNode<E>,
    depth: usize,
}

impl<E: Clone> TruncatedDerivationTree<E> {
    pub fn root(&self) -> &DerivationNode<E> {
        &self.root
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn size(&self) -> usize {
        self.root.size()
    }

    /// True if no node was cut, i.e. the tree is a complete finite
    /// derivation tree of height below `depth`.
    pub fn is_complete(&self) -> bool {
        !self.root.has_cut()
    }

    /// Product of all node yields, cut nodes contributing `boundary[var]`.
    pub fn yield_with<S>(&self, semiring: &S, boundary: &Valuation<E>) -> E
    where
        S: Semiring<Elem = E>,
    {
        fn go<S: Semiring>(s: &S, node: &DerivationNode<S::Elem>, b: &Valuation<S::Elem>, acc: S::Elem) -> S::Elem {
            let own = match &node.choice {
                Some((_, c)) => c.clone(),
                None => b
                    .get(&node.var)
                    .unwrap_or_else(|| panic!("boundary has no value for {:?}", node.var))
                    .clone(),
            };
            node.children
                .iter()
                .fold(s.mul(&acc, &own), |acc, child| go(s, child, b, acc))
        }
        go(semiring, &self.root, boundary, semiring.one())
    }
}

struct Enumerator<'a, S: Semiring> {
    system: &'a EquationSystem<S>,
    budget: usize,
    used: usize,
    memo: HashMap<(String, usize), Vec<DerivationNode<S::Elem>>>,
}

impl<S: Semiring> Enumerator<'_, S> {
    fn charge(&mut self, nodes: usize) -> Result<(), OracleError> {
        self.used += nodes;
        if self.used > self.budget {
            Err(OracleError::TreeBudgetExceeded { limit: self.budget })
        } else {
            Ok(())
        }
    }

    /// All truncation shapes from `var` with `remaining` levels above the cut.
    fn trees(&mut self, var: &str, remaining: usize) -> Result<Vec<DerivationNode<S::Elem>>, OracleError> {
        let key = (var.to_string(), remaining);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        if remaining == 0 {
            self.charge(1)?;
            out.push(DerivationNode { var: var.to_string(), choice: None, children: Vec::new() });
        } else {
            let system = self.system;
            let poly = system
                .equation(var)
                .unwrap_or_else(|| panic!("{var:?} is not an indeterminate of the system"));
            for (index, term) in poly.terms().iter().enumerate() {
                // Children multisets: per child indeterminate, a multiset of
                // `exponent` subtrees; then the product over indeterminates.
                let mut child_sets: Vec<Vec<DerivationNode<S::Elem>>> = vec![Vec::new()];
                for (child, e) in term.monomial.factors() {
                    let k = match e {
                        crate::sorp::Exponent::Finite(k) => k as usize,
                        crate::sorp::Exponent::Infinite => unreachable!("systems have finite exponents"),
                    };
                    let candidates = self.trees(child, remaining - 1)?;
                    let multisets: Vec<Vec<usize>> =
                        (0..candidates.len()).combinations_with_replacement(k).collect();
                    let mut next = Vec::with_capacity(child_sets.len() * multisets.len());
                    for prefix in &child_sets {
                        for pick in &multisets {
                            let mut children = prefix.clone();
                            children.extend(pick.iter().map(|&i| candidates[i].clone()));
                            next.push(children);
                        }
                    }
                    child_sets = next;
                }
                for mut children in child_sets {
                    children.sort_by(DerivationNode::shape_cmp);
                    let node = DerivationNode {
                        var: var.to_string(),
                        choice: Some((index, term.coeff.clone())),
                        children,
                    };
                    self.charge(node.size())?;
                    out.push(node);
                }
            }
            out.sort_by(DerivationNode::shape_cmp);
            out.dedup_by(|a, b| a.shape_cmp(b) == Ordering::Equal);
        }
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

/// Every `(depth, b)`-truncation shape of the derivation trees from `var`
/// compatible with `system`, each exactly once.
pub fn enumerate_truncations<S: Semiring>(
    system: &EquationSystem<S>,
    var: &str,
    depth: usize,
    budget: usize,
) -> Result<Vec<TruncatedDerivationTree<S::Elem>>, OracleError> {
    let mut enumerator = Enumerator { system, budget, used: 0, memo: HashMap::new() };
    Ok(enumerator
        .trees(var, depth)?
        .into_iter()
        .map(|root| TruncatedDerivationTree { root, depth })
        .collect())
}

/// Sum of the yields of all `(depth, b)`-truncations from `var`.
pub fn truncation_yield_sum<S: Semiring>(
    system: &EquationSystem<S>,
    var: &str,
    depth: usize,
    boundary: &Valuation<S::Elem>,
    budget: usize,
) -> Result<S::Elem, OracleError> {
    let s = system.semiring();
    Ok(enumerate_truncations(system, var, depth, budget)?
        .iter()
        .fold(s.zero(), |acc, t| s.add(&acc, &t.yield_with(s, boundary))))
}

/// Sum of the yields of complete finite trees from `var` of height below
/// `depth`.
pub fn finite_tree_yield_sum<S: Semiring>(
    system: &EquationSystem<S>,
    var: &str,
    depth: usize,
    budget: usize,
) -> Result<S::Elem, OracleError> {
    let s = system.semiring();
    let unused = Valuation::new();
    Ok(enumerate_truncations(system, var, depth, budget)?
        .iter()
        .filter(|t| t.is_complete())
        .fold(s.zero(), |acc, t| s.add(&acc, &t.yield_with(s, &unused))))
}

/// Compares `F^n(b)_X` with the sum of truncation yields for every `X`.
pub fn tree_iteration_check<S: Semiring>(
    system: &EquationSystem<S>,
    boundary: &Valuation<S::Elem>,
    depth: usize,
    budget: usize,
) -> Result<IndexMap<String, bool>, OracleError> {
    let iterated = system.iterate(boundary, depth);
    system
        .vars()
        .map(|x| {
            let sum = truncation_yield_sum(system, x, depth, boundary, budget)?;
            Ok((x.to_string(), sum == iterated[x]))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeFixedPoints<E> {
    pub least: Valuation<E>,
    pub greatest: Valuation<E>,
}

/// Enumerates every valuation over a finite carrier, keeps the exact fixed
/// points, and returns the componentwise least and greatest of them.
pub fn brute_force_extreme_fixed_points<S: FiniteSemiring>(
    system: &EquationSystem<S>,
    budget: u128,
) -> Result<ExtremeFixedPoints<S::Elem>, OracleError> {
    let carrier = system.semiring().elements();
    let vars: Vec<String> = system.vars().map(str::to_string).collect();
    let needed = (carrier.len() as u128)
        .checked_pow(vars.len() as u32)
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(OracleError::SearchBudgetExceeded { needed, limit: budget });
    }
    let fixed: Vec<Valuation<S::Elem>> = vars
        .iter()
        .map(|_| carrier.iter().cloned())
        .multi_cartesian_product()
        .chain(vars.is_empty().then(Vec::new))
        .map(|values| vars.iter().cloned().zip(values).collect::<Valuation<S::Elem>>())
        .filter(|v| system.is_fixed_point(v))
        .collect();
    let least = fixed
        .iter()
        .find(|v| fixed.iter().all(|w| system.leq(v, w)))
        .ok_or(OracleError::NoExtremum("least"))?
        .clone();
    let greatest = fixed
        .iter()
        .find(|v| fixed.iter().all(|w| system.leq(w, v)))
        .ok_or(OracleError::NoExtremum("greatest"))?
        .clone();
    Ok(ExtremeFixedPoints { least, greatest })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semirings::{Boolean, MinMax, MinMaxValue};
    use crate::sorp::{Monomial, Sorp, SorpPolynomial};

    fn p(s: &str) -> SorpPolynomial {
        s.parse().unwrap()
    }

    fn branching_system() -> EquationSystem<Sorp> {
        EquationSystem::from_equations(
            Sorp,
            [
                ("X1", vec![(p("a"), Monomial::var("X1")), (p("b"), Monomial::from_factors([("X2", 1u64), ("X3", 1u64)]))]),
                ("X2", vec![(p("c"), Monomial::from_factors([("X1", 2u64)]))]),
                ("X3", vec![(p("d"), Monomial::one())]),
            ],
        )
        .unwrap()
    }

    fn boundary_e() -> Valuation<SorpPolynomial> {
        [("X1", "e1"), ("X2", "e2"), ("X3", "e3")]
            .into_iter()
            .map(|(x, e)| (x.to_string(), p(e)))
            .collect()
    }

    #[test]
    fn depth_zero_is_a_single_cut_root() {
        let e = branching_system();
        for x in ["X1", "X2", "X3"] {
            let trees = enumerate_truncations(&e, x, 0, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(trees.len(), 1);
            assert!(trees[0].root().is_cut());
            assert_eq!(trees[0].yield_with(&Sorp, &boundary_e()), boundary_e()[x]);
        }
    }

    #[test]
    fn branching_truncations() {
        let e = branching_system();
        let trees = enumerate_truncations(&e, "X1", 2, DEFAULT_NODE_BUDGET).unwrap();
        let yields: Vec<SorpPolynomial> = trees.iter().map(|t| t.yield_with(&Sorp, &boundary_e())).collect();
        // a·a·e1, a·b·e2·e3 and the displayed tree b·c·d·e1^2.
        assert_eq!(trees.len(), 3);
        assert!(yields.contains(&p("b*c*d*e1^2")));
        assert!(yields.contains(&p("a^2*e1")));
        assert!(yields.contains(&p("a*b*e2*e3")));
        let displayed = trees
            .iter()
            .find(|t| t.root().term_index() == Some(1) && t.root().children()[0].var() == "X2")
            .unwrap();
        assert_eq!(displayed.size(), 5);
    }

    #[test]
    fn constant_equation_has_one_tree() {
        let e = branching_system();
        for n in 1..4 {
            let trees = enumerate_truncations(&e, "X3", n, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(trees.len(), 1);
            assert!(trees[0].is_complete());
            assert_eq!(trees[0].yield_with(&Sorp, &Valuation::new()), p("d"));
        }
    }

    #[test]
    fn one_vector_boundary_on_a_root_gives_one() {
        let e = branching_system();
        let ones = e.constant(&SorpPolynomial::one());
        let t = &enumerate_truncations(&e, "X2", 0, DEFAULT_NODE_BUDGET).unwrap()[0];
        assert_eq!(t.yield_with(&Sorp, &ones), SorpPolynomial::one());
    }

    #[test]
    fn tree_iteration_on_branching_system() {
        let e = branching_system();
        for n in 0..4 {
            let verdicts = tree_iteration_check(&e, &boundary_e(), n, DEFAULT_NODE_BUDGET).unwrap();
            assert!(verdicts.values().all(|ok| *ok), "n = {n}: {verdicts:?}");
        }
    }

    #[test]
    fn budget_exceeded_is_distinct() {
        let e = branching_system();
        assert_eq!(
            enumerate_truncations(&e, "X1", 6, 50).unwrap_err(),
            OracleError::TreeBudgetExceeded { limit: 50 }
        );
    }

    #[test]
    fn finite_trees_reach_lfp() {
        let e = branching_system();
        let lfp = e.lfp_closed();
        for x in ["X1", "X2", "X3"] {
            assert_eq!(finite_tree_yield_sum(&e, x, e.len(), DEFAULT_NODE_BUDGET).unwrap(), lfp[x]);
        }
    }

    #[test]
    fn brute_force_boolean() {
        let e = EquationSystem::from_equations(Boolean, [("X", vec![(true, Monomial::var("X"))])]).unwrap();
        let r = brute_force_extreme_fixed_points(&e, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(!r.least["X"]);
        assert!(r.greatest["X"]);

        let e = EquationSystem::from_equations(
            Boolean,
            [("X", vec![(true, Monomial::var("Y"))]), ("Y", vec![(true, Monomial::var("X"))])],
        )
        .unwrap();
        let r = brute_force_extreme_fixed_points(&e, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(r.least.values().copied().collect::<Vec<_>>(), vec![false, false]);
        assert_eq!(r.greatest.values().copied().collect::<Vec<_>>(), vec![true, true]);
    }

    #[test]
    fn brute_force_minmax_chain() {
        let m = MinMax::new(["lo", "mid", "hi"]).unwrap();
        let e = EquationSystem::from_equations(m.clone(), [("X", vec![(MinMaxValue(1), Monomial::var("X"))])]).unwrap();
        // Fixed points of X = min(mid, X): lo and mid.
        let fixed: Vec<_> = m
            .elements()
            .into_iter()
            .filter(|v| m.mul(&MinMaxValue(1), v) == *v)
            .collect();
        assert_eq!(fixed, vec![MinMaxValue(0), MinMaxValue(1)]);
        let r = brute_force_extreme_fixed_points(&e, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(r.least["X"], MinMaxValue(0));
        assert_eq!(r.greatest["X"], MinMaxValue(1));
    }

    #[test]
    fn brute_force_budget() {
        let e = EquationSystem::from_equations(
            Boolean,
            [("X", vec![(true, Monomial::var("X"))]), ("Y", vec![(true, Monomial::var("Y"))])],
        )
        .unwrap();
        assert!(matches!(
            brute_force_extreme_fixed_points(&e, 3),
            Err(OracleError::SearchBudgetExceeded { needed: 4, limit: 3 })
        ));
    }
}
