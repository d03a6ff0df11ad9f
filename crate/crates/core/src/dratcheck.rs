//! Forward DRAT checking.
//!
//! The checker keeps the active clause multiset (formula, plus additions,
//! minus deletions) and verifies every added clause by reverse unit
//! propagation: assert the negation of the clause, propagate, expect a
//! conflict. Propagation here walks full occurrence lists and re-evaluates
//! each touched clause; it deliberately shares nothing with the solver's
//! watched-literal engine.

use std::collections::HashMap;
use std::fmt;

use crate::cnf::CnfFormula;
use crate::error::{Error, Result};
use crate::solver::{DratProof, ProofStep};

pub fn parse_drat(text: &str) -> Result<DratProof> {
    let mut proof = DratProof::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace().peekable();
        let delete = tokens.peek() == Some(&"d");
        if delete {
            tokens.next();
        }
        let mut lits = Vec::new();
        let mut terminated = false;
        for tok in tokens {
            if terminated {
                return Err(Error::parse(lineno, "tokens after terminating 0"));
            }
            let lit: i32 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("invalid literal {tok:?}")))?;
            if lit == 0 {
                terminated = true;
            } else {
                lits.push(lit);
            }
        }
        if !terminated {
            return Err(Error::parse(lineno, "clause is missing its terminating 0"));
        }
        proof.steps.push(if delete {
            ProofStep::Delete(lits)
        } else {
            ProofStep::Add(lits)
        });
    }
    Ok(proof)
}

#[derive(Debug, Clone, Default)]
pub struct CheckConfig {
    /// Fall back to a RAT check on the first literal when RUP fails.
    pub rat: bool,
    /// Treat deletion of a clause that is not active as fatal.
    pub strict_delete: bool,
    /// Upper bound on total literal assignments during checking.
    pub max_propagations: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckVerdict {
    pub verified: bool,
    /// Index (into the proof's step list) of the first addition that failed.
    pub failing_step: Option<usize>,
    pub steps_checked: usize,
    pub empty_clause_seen: bool,
    /// Deletions that named no active clause and were skipped.
    pub ignored_deletions: usize,
    pub rat_steps: usize,
}

impl CheckVerdict {
    pub fn status_line(&self) -> &'static str {
        if self.verified {
            "s VERIFIED"
        } else {
            "s NOT VERIFIED"
        }
    }

    /// Human-readable check log, without timings.
    pub fn transcript(&self) -> String {
        let mut out = format!("c steps checked: {}\n", self.steps_checked);
        out.push_str(&format!(
            "c empty clause seen: {}\n",
            self.empty_clause_seen
        ));
        if let Some(step) = self.failing_step {
            out.push_str(&format!("c failing step: {step}\n"));
        }
        if self.ignored_deletions > 0 {
            out.push_str(&format!(
                "c warning: ignored {} deletions of inactive clauses\n",
                self.ignored_deletions
            ));
        }
        if self.rat_steps > 0 {
            out.push_str(&format!("c RAT steps: {}\n", self.rat_steps));
        }
        out.push_str(self.status_line());
        out.push('\n');
        out
    }
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.status_line())
    }
}

/// Reasons a check could not run to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("step {step}: deleted clause {clause:?} is not active")]
    MissingDeletion { step: usize, clause: Vec<i32> },
    #[error("propagation budget of {0} assignments exhausted")]
    ResourceLimit(u64),
}

struct StoredClause {
    lits: Vec<i32>,
    active: bool,
}

struct Checker {
    clauses: Vec<StoredClause>,
    /// Literal slot -> ids of clauses containing that literal.
    occurs: Vec<Vec<usize>>,
    /// Sorted literals -> ids of active copies.
    by_key: HashMap<Vec<i32>, Vec<usize>>,
    units: Vec<usize>,
    empties: usize,
    /// Per variable: 0 unassigned, 1 true, -1 false.
    value: Vec<i8>,
    assigned: Vec<usize>,
    queue: Vec<i32>,
    propagations: u64,
    budget: Option<u64>,
}

#[inline]
fn slot(lit: i32) -> usize {
    2 * (lit.unsigned_abs() as usize) + usize::from(lit < 0)
}

fn key(lits: &[i32]) -> Vec<i32> {
    let mut k = lits.to_vec();
    k.sort_unstable();
    k.dedup();
    k
}

impl Checker {
    fn new(num_vars: usize) -> Self {
        Checker {
            clauses: Vec::new(),
            occurs: vec![Vec::new(); 2 * num_vars + 2],
            by_key: HashMap::new(),
            units: Vec::new(),
            empties: 0,
            value: vec![0; num_vars + 1],
            assigned: Vec::new(),
            queue: Vec::new(),
            propagations: 0,
            budget: None,
        }
    }

    fn insert(&mut self, lits: &[i32]) {
        let id = self.clauses.len();
        let k = key(lits);
        for &l in &k {
            self.occurs[slot(l)].push(id);
        }
        match k.len() {
            0 => self.empties += 1,
            1 => self.units.push(id),
            _ => {}
        }
        self.by_key.entry(k.clone()).or_default().push(id);
        self.clauses.push(StoredClause {
            lits: k,
            active: true,
        });
    }

    fn remove(&mut self, lits: &[i32]) -> bool {
        let k = key(lits);
        let Some(ids) = self.by_key.get_mut(&k) else {
            return false;
        };
        let Some(id) = ids.pop() else {
            return false;
        };
        if ids.is_empty() {
            self.by_key.remove(&k);
        }
        self.clauses[id].active = false;
        if k.is_empty() {
            self.empties -= 1;
        }
        true
    }

    #[inline]
    fn lit_value(&self, lit: i32) -> i8 {
        let v = self.value[lit.unsigned_abs() as usize];
        if lit < 0 {
            -v
        } else {
            v
        }
    }

    /// Makes `lit` true. Returns false if it is already false.
    fn assign(&mut self, lit: i32) -> std::result::Result<bool, CheckError> {
        match self.lit_value(lit) {
            1 => return Ok(true),
            -1 => return Ok(false),
            _ => {}
        }
        self.propagations += 1;
        if let Some(b) = self.budget {
            if self.propagations > b {
                return Err(CheckError::ResourceLimit(b));
            }
        }
        let v = lit.unsigned_abs() as usize;
        self.value[v] = if lit < 0 { -1 } else { 1 };
        self.assigned.push(v);
        self.queue.push(lit);
        Ok(true)
    }

    fn reset(&mut self) {
        for v in self.assigned.drain(..) {
            self.value[v] = 0;
        }
        self.queue.clear();
    }

    /// Unit propagation to fixpoint; true iff a conflict is reached.
    fn propagate_to_conflict(&mut self) -> std::result::Result<bool, CheckError> {
        let mut head = 0;
        while head < self.queue.len() {
            let lit = self.queue[head];
            head += 1;
            let falsified = slot(-lit);
            let mut k = 0;
            while k < self.occurs[falsified].len() {
                let id = self.occurs[falsified][k];
                k += 1;
                if !self.clauses[id].active {
                    continue;
                }
                let mut unassigned = None;
                let mut open = 0;
                let mut satisfied = false;
                for &l in &self.clauses[id].lits {
                    match self.lit_value(l) {
                        1 => {
                            satisfied = true;
                            break;
                        }
                        0 => {
                            open += 1;
                            unassigned = Some(l);
                        }
                        _ => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match (open, unassigned) {
                    (0, _) => return Ok(true),
                    (1, Some(u)) => {
                        self.assign(u)?;
                    }
                    _ => {}
                }
            }
        }
        Ok(false)
    }

    /// Reverse unit propagation check of `lemma` against the active set.
    fn is_rup(&mut self, lemma: &[i32]) -> std::result::Result<bool, CheckError> {
        let result = self.rup_inner(lemma);
        self.reset();
        result
    }

    fn rup_inner(&mut self, lemma: &[i32]) -> std::result::Result<bool, CheckError> {
        if self.empties > 0 {
            return Ok(true);
        }
        for &l in lemma {
            if !self.assign(-l)? {
                // Lemma contains l and -l.
                return Ok(true);
            }
        }
        let units: Vec<i32> = self
            .units
            .iter()
            .filter(|&&id| self.clauses[id].active)
            .map(|&id| self.clauses[id].lits[0])
            .collect();
        for u in units {
            if !self.assign(u)? {
                return Ok(true);
            }
        }
        self.propagate_to_conflict()
    }

    fn is_rat(&mut self, lemma: &[i32]) -> std::result::Result<bool, CheckError> {
        let Some(&pivot) = lemma.first() else {
            return Ok(false);
        };
        let partners: Vec<usize> = self.occurs[slot(-pivot)]
            .iter()
            .copied()
            .filter(|&id| self.clauses[id].active)
            .collect();
        for id in partners {
            let mut resolvent: Vec<i32> = lemma.to_vec();
            resolvent.extend(
                self.clauses[id]
                    .lits
                    .iter()
                    .copied()
                    .filter(|&l| l != -pivot),
            );
            let k = key(&resolvent);
            if k.iter().any(|&l| k.binary_search(&-l).is_ok()) {
                continue;
            }
            if !self.is_rup(&k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Checks `proof` against `formula`. `Ok` carries a verdict (verified or
/// refuted at some step); `Err` means the check could not complete.
pub fn check(
    formula: &CnfFormula,
    proof: &DratProof,
    config: &CheckConfig,
) -> std::result::Result<CheckVerdict, CheckError> {
    let max_var = formula
        .clauses
        .iter()
        .chain(proof.steps.iter().map(|s| match s {
            ProofStep::Add(c) | ProofStep::Delete(c) => c,
        }))
        .flat_map(|c| c.iter())
        .map(|l| l.unsigned_abs() as usize)
        .max()
        .unwrap_or(0)
        .max(formula.num_vars);

    let mut checker = Checker::new(max_var);
    checker.budget = config.max_propagations;
    for c in &formula.clauses {
        checker.insert(c);
    }

    let mut verdict = CheckVerdict {
        verified: false,
        failing_step: None,
        steps_checked: 0,
        empty_clause_seen: false,
        ignored_deletions: 0,
        rat_steps: 0,
    };

    for (i, step) in proof.steps.iter().enumerate() {
        verdict.steps_checked += 1;
        match step {
            ProofStep::Delete(c) => {
                if !checker.remove(c) {
                    if config.strict_delete {
                        return Err(CheckError::MissingDeletion {
                            step: i,
                            clause: c.clone(),
                        });
                    }
                    verdict.ignored_deletions += 1;
                }
            }
            ProofStep::Add(c) => {
                if c.is_empty() {
                    verdict.empty_clause_seen = true;
                }
                let ok = if checker.is_rup(c)? {
                    true
                } else if config.rat && checker.is_rat(c)? {
                    verdict.rat_steps += 1;
                    true
                } else {
                    false
                };
                if !ok {
                    verdict.failing_step = Some(i);
                    return Ok(verdict);
                }
                if c.is_empty() {
                    verdict.verified = true;
                    return Ok(verdict);
                }
                checker.insert(c);
            }
        }
    }
    Ok(verdict)
}
