//! Command-line front end for the `sorpfix` solver: reads an equation system
//! from a JSON document, solves it, and reports the solution.

pub mod document;
pub mod job;

pub use document::{parse_system, read_document, render_document, AnySystem, Document, InputError};
pub use job::{run_document, Exit, Fixpoint, JobError, JobSpec, Method, OutputFormat, SolutionDocument};
