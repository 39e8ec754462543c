//! Command-line front end: problem files in, deterministic reports out.

pub mod error;
pub mod problem;
pub mod report;
pub mod runner;

pub use error::CliError;
pub use problem::{build_problem, parse_problem, ProblemSpec, TaskKind};
pub use report::Report;
pub use runner::{demo_lie, max_dim_from_env, run_problem, run_text, LieDemo};
