use std::fmt;

use crate::cnf::write_clause;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProofStep {
    Add(Vec<i32>),
    Delete(Vec<i32>),
}

impl ProofStep {
    pub fn clause(&self) -> &[i32] {
        match self {
            ProofStep::Add(c) | ProofStep::Delete(c) => c,
        }
    }

    pub fn is_add(&self) -> bool {
        matches!(self, ProofStep::Add(_))
    }
}

/// A clausal proof: additions and deletions in derivation order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DratProof {
    pub steps: Vec<ProofStep>,
}

impl DratProof {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, lits: impl Into<Vec<i32>>) {
        self.steps.push(ProofStep::Add(lits.into()));
    }

    pub fn delete(&mut self, lits: impl Into<Vec<i32>>) {
        self.steps.push(ProofStep::Delete(lits.into()));
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn ends_with_empty_clause(&self) -> bool {
        matches!(self.steps.last(), Some(ProofStep::Add(c)) if c.is_empty())
    }

    pub fn num_additions(&self) -> usize {
        self.steps.iter().filter(|s| s.is_add()).count()
    }

    /// Textual DRAT: one clause per line, `0`-terminated, deletions
    /// prefixed with `d `.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.steps.len() * 24);
        for step in &self.steps {
            if let ProofStep::Delete(_) = step {
                out.push_str("d ");
            }
            write_clause(&mut out, step.clause());
        }
        out
    }
}

impl fmt::Display for DratProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
