//! Domination variants on flower snarks `J_n`: graph construction, exact
//! validators, exhaustive solvers with optimality proofs, and explicit
//! certificates that reach the closed-form values for any `n`.

pub mod certificates;
pub mod error;
pub mod graph;
pub mod solver;
pub mod validators;
pub mod vertex_set;

pub use certificates::{
    certificate, formula_value, Certificate, CopyConfig, FormulaTable, RecordedOnly,
};
pub use error::{Error, Result};
pub use graph::{build_flower_snark, export_graph, ExportFormat, FlowerSnark, Role, VertexId};
pub use solver::{feasible_range, solve, SolveResult, Solver, SolverOptions};
pub use validators::{validate, Candidate, GuardFunction, Variant};
pub use vertex_set::VertexSet;
