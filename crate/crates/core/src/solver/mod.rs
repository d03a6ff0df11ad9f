//! SAT backends: the embedded CDCL solver and an adapter for external
//! DIMACS solvers. Both return the same [`SolveOutcome`].

mod cdcl;
pub mod external;
mod proof;

use std::fmt;
use std::time::Duration;

pub use external::{parse_status, solve_external};
pub use proof::{DratProof, ProofStep};

use crate::cnf::{CnfFormula, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Sat,
    Unsat,
    Unknown,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Sat => "SAT",
            SolveStatus::Unsat => "UNSAT",
            SolveStatus::Unknown => "UNKNOWN",
        }
    }

    /// The competition-style status line, without trailing newline.
    pub fn status_line(self) -> &'static str {
        match self {
            SolveStatus::Sat => "s SATISFIABLE",
            SolveStatus::Unsat => "s UNSATISFIABLE",
            SolveStatus::Unknown => "s UNKNOWN",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Record a DRAT proof for UNSAT answers.
    pub proof: bool,
    /// Wall-clock budget; exceeding it yields `Unknown`.
    pub timeout: Option<Duration>,
    pub max_conflicts: Option<u64>,
    /// When set, seeds small initial activity noise and random decisions.
    pub seed: Option<u64>,
    /// Probability of a random decision; only used when `seed` is set.
    pub random_var_freq: f64,
    pub var_decay: f64,
    pub clause_decay: f32,
    /// Conflicts per Luby unit.
    pub restart_unit: u64,
    /// Lower bound of the learned-clause budget before the first reduction.
    pub min_learnts: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            proof: true,
            timeout: Some(Duration::from_secs(600)),
            max_conflicts: None,
            seed: None,
            random_var_freq: 0.01,
            var_decay: 0.95,
            clause_decay: 0.999,
            restart_unit: 100,
            min_learnts: 2000,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub learned_clauses: u64,
    pub deleted_clauses: u64,
    pub wall_time: Duration,
}

impl Stats {
    /// Equality ignoring wall time.
    pub fn same_search(&self, other: &Stats) -> bool {
        Stats {
            wall_time: Duration::ZERO,
            ..self.clone()
        } == Stats {
            wall_time: Duration::ZERO,
            ..other.clone()
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Total model, present iff `Sat`.
    pub model: Option<Model>,
    /// Present iff `Unsat` and proof logging was requested (and, for
    /// external solvers, a proof file was written).
    pub proof: Option<DratProof>,
    pub stats: Stats,
    /// Why the answer is `Unknown`, or notes about a degraded answer.
    pub reason: Option<String>,
    /// Captured stdout of an external solver.
    pub solver_output: Option<String>,
}

impl SolveOutcome {
    /// Solver-style output: status line plus `v` lines when SAT.
    pub fn to_solver_output(&self, num_vars: usize) -> String {
        let mut out = String::from(self.status.status_line());
        out.push('\n');
        if let Some(model) = &self.model {
            out.push_str(&model.to_v_lines(num_vars));
        }
        out
    }
}

/// Decides `f` with the embedded CDCL solver.
pub fn solve(f: &CnfFormula, config: &SolverConfig) -> SolveOutcome {
    cdcl::Solver::new(f, config).solve(f)
}
