//! Running a solve job and rendering its result.

use std::fmt::Write as _;
use std::path::PathBuf;

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use sorpfix::eqsys::{KleeneStart, Valuation};
use sorpfix::oracle::{brute_force_extreme_fixed_points, truncation_yield_sum, DEFAULT_NODE_BUDGET, DEFAULT_SEARCH_BUDGET};
use sorpfix::semirings::{Boolean, Lukasiewicz, MinMax, Tropical, Viterbi};
use sorpfix::symbolic::solve_terms_in_semiring;
use sorpfix::{EquationSystem, FiniteSemiring, FixpointKind, OracleError, Semiring, Sorp};

use crate::document::{parse_system, read_document, AnySystem, Document, InputError, Parsed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Symbolic,
    Kleene,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Fixpoint {
    Least,
    Greatest,
}

impl From<Fixpoint> for FixpointKind {
    fn from(f: Fixpoint) -> Self {
        match f {
            Fixpoint::Least => FixpointKind::Least,
            Fixpoint::Greatest => FixpointKind::Greatest,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub input: PathBuf,
    pub fixpoint: Fixpoint,
    pub method: Method,
    pub max_steps: Option<usize>,
    pub output: OutputFormat,
    pub verify: bool,
}

#[derive(Debug, Error)]
pub enum JobError {
    #[error("--method kleene requires --max-steps")]
    MissingMaxSteps,
    #[error("--max-steps only applies to --method kleene")]
    UnexpectedMaxSteps,
    #[error("--verify does not apply: {0}")]
    NoOracle(String),
    #[error(transparent)]
    Input(#[from] InputError),
}

/// Process exit status of a job.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Invalid = 2,
    NotConverged = 3,
    Mismatch = 4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionDocument {
    pub solution: IndexMap<String, String>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<IndexMap<String, bool>>,
}

impl SolutionDocument {
    pub fn exit(&self) -> Exit {
        if self.converged == Some(false) {
            Exit::NotConverged
        } else if self.verified == Some(false) {
            Exit::Mismatch
        } else {
            Exit::Success
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string(self).expect("plain data serializes"),
            OutputFormat::Text => {
                let mut out = String::new();
                for (x, v) in &self.solution {
                    let _ = writeln!(out, "{x} = {v}");
                }
                let method = serde_json::to_value(self.method).expect("plain data serializes");
                let _ = write!(out, "method: {}", method.as_str().unwrap_or_default());
                if let Some(n) = self.steps {
                    let _ = write!(out, "\nsteps: {n}");
                }
                if let Some(c) = self.converged {
                    let _ = write!(out, "\nconverged: {c}");
                }
                if let Some(v) = self.verified {
                    let _ = write!(out, "\nverified: {v}");
                }
                for (name, ok) in self.verdicts.iter().flatten() {
                    let _ = write!(out, "\n  {name}: {}", if *ok { "ok" } else { "MISMATCH" });
                }
                out
            }
        }
    }
}

impl JobSpec {
    pub fn validate(&self) -> Result<(), JobError> {
        match (self.method, self.max_steps) {
            (Method::Kleene, None) => Err(JobError::MissingMaxSteps),
            (Method::Closed | Method::Symbolic, Some(_)) => Err(JobError::UnexpectedMaxSteps),
            _ => Ok(()),
        }
    }

    pub fn run(&self) -> Result<SolutionDocument, JobError> {
        self.validate()?;
        let text = std::fs::read_to_string(&self.input)
            .map_err(|source| InputError::Io { path: self.input.display().to_string(), source })?;
        run_document(&read_document(&text)?, self.fixpoint.into(), self.method, self.max_steps, self.verify)
    }
}

/// Solves the system described by `doc`. `max_steps` is only consulted for
/// Kleene iteration.
pub fn run_document(
    doc: &Document,
    kind: FixpointKind,
    method: Method,
    max_steps: Option<usize>,
    verify: bool,
) -> Result<SolutionDocument, JobError> {
    let job = Job { kind, method, max_steps: max_steps.unwrap_or(0), verify };
    match parse_system(doc, method == Method::Symbolic)? {
        AnySystem::Tropical(p) => job.run(&p),
        AnySystem::Viterbi(p) => job.run(&p),
        AnySystem::Lukasiewicz(p) => job.run(&p),
        AnySystem::Boolean(p) => job.run(&p),
        AnySystem::MinMax(p) => job.run(&p),
        AnySystem::Sorp { parsed, .. } => job.run(&parsed),
    }
}

struct Job {
    kind: FixpointKind,
    method: Method,
    max_steps: usize,
    verify: bool,
}

impl Job {
    fn run<S: Verify>(&self, p: &Parsed<S>) -> Result<SolutionDocument, JobError> {
        let mut doc = SolutionDocument {
            solution: IndexMap::new(),
            method: self.method,
            steps: None,
            converged: None,
            verified: None,
            verdicts: None,
        };
        let solution = match self.method {
            Method::Symbolic => solve_terms_in_semiring(&p.semiring, &p.vars, &p.equations, self.kind)
                .map_err(|_| InputError::Invalid(p.violations(true)))?,
            Method::Closed => system(p)?.solve_closed(self.kind),
            Method::Kleene => {
                let start = match self.kind {
                    FixpointKind::Least => KleeneStart::Zero,
                    FixpointKind::Greatest => KleeneStart::One,
                };
                let outcome = system(p)?.kleene_iterate(start, self.max_steps);
                doc.steps = Some(outcome.steps);
                doc.converged = Some(outcome.converged);
                outcome.valuation
            }
        };
        doc.solution = solution.iter().map(|(x, v)| (x.clone(), p.semiring.render(v))).collect();
        if self.verify && doc.converged != Some(false) {
            let system = EquationSystem::new(p.semiring.clone(), p.vars.clone(), p.equations.clone())
                .map_err(|_| JobError::NoOracle("oracles need finite exponents".into()))?;
            let verdicts = S::verify(&system, self.kind, &solution).map_err(|e| JobError::NoOracle(e.to_string()))?;
            doc.verified = Some(verdicts.values().all(|ok| *ok));
            doc.verdicts = Some(verdicts);
        }
        Ok(doc)
    }
}

fn system<S: Semiring>(p: &Parsed<S>) -> Result<EquationSystem<S>, InputError> {
    EquationSystem::new(p.semiring.clone(), p.vars.clone(), p.equations.clone())
        .map_err(|_| InputError::Invalid(p.violations(false)))
}

/// Independent checks of a claimed extreme solution.
pub trait Verify: Semiring {
    fn verify(
        system: &EquationSystem<Self>,
        kind: FixpointKind,
        solution: &Valuation<Self::Elem>,
    ) -> Result<IndexMap<String, bool>, OracleError>;
}

/// Exhaustive search over the carrier.
fn verify_finite<S: FiniteSemiring>(
    system: &EquationSystem<S>,
    kind: FixpointKind,
    solution: &Valuation<S::Elem>,
) -> Result<IndexMap<String, bool>, OracleError> {
    let extremes = brute_force_extreme_fixed_points(system, DEFAULT_SEARCH_BUDGET)?;
    let expected = match kind {
        FixpointKind::Least => extremes.least,
        FixpointKind::Greatest => extremes.greatest,
    };
    Ok(IndexMap::from([("brute_force".to_string(), expected == *solution)]))
}

/// Fixed-point check plus derivation-tree yields: depth-`l` truncations
/// with boundary 0 for the least solution, and with boundary
/// `(yields at boundary 1)^inf` for the greatest.
fn verify_trees<S: Semiring>(
    system: &EquationSystem<S>,
    kind: FixpointKind,
    solution: &Valuation<S::Elem>,
) -> Result<IndexMap<String, bool>, OracleError> {
    let s = system.semiring();
    let depth = system.len();
    let yields = |boundary: &Valuation<S::Elem>| -> Result<Valuation<S::Elem>, OracleError> {
        system
            .vars()
            .map(|x| Ok((x.to_string(), truncation_yield_sum(system, x, depth, boundary, DEFAULT_NODE_BUDGET)?)))
            .collect()
    };
    let expected = match kind {
        FixpointKind::Least => yields(&system.constant(&s.zero()))?,
        FixpointKind::Greatest => yields(&system.inf_pow(&yields(&system.constant(&s.one()))?))?,
    };
    Ok(IndexMap::from([
        ("fixed_point".to_string(), system.is_fixed_point(solution)),
        ("derivation_trees".to_string(), expected == *solution),
    ]))
}

macro_rules! verify_with {
    ($f:ident: $($t:ty),*) => {$(
        impl Verify for $t {
            fn verify(
                system: &EquationSystem<Self>,
                kind: FixpointKind,
                solution: &Valuation<Self::Elem>,
            ) -> Result<IndexMap<String, bool>, OracleError> {
                $f(system, kind, solution)
            }
        }
    )*};
}

verify_with!(verify_finite: Boolean, MinMax);
verify_with!(verify_trees: Tropical, Viterbi, Lukasiewicz, Sorp);
