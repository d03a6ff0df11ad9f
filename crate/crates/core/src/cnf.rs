//! CNF encoding of the avoidance constraints, DIMACS I/O and model decoding.
//!
//! Variable `j + 1` is true iff position `j` is colored `R`. Every
//! constrained window `(a, b, c, d)` contributes the positive clause
//! `x_{a+1} | x_{b+1} | x_{c+1} | x_{d+1}` (no `BBBB`) followed by its
//! negation-literal twin (no `RRRR`).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::coloring::{Color, Mode, Word};
use crate::error::{Error, Result};
use crate::modular::Modulus;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CnfFormula {
    pub num_vars: usize,
    /// Non-zero DIMACS literals, `|lit| <= num_vars`.
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Self {
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn add_clause(&mut self, lits: impl Into<Vec<i32>>) {
        let lits = lits.into();
        debug_assert!(lits
            .iter()
            .all(|&l| l != 0 && l.unsigned_abs() as usize <= self.num_vars));
        self.clauses.push(lits);
    }
}

pub fn encode(m: Modulus, mode: Mode) -> Result<CnfFormula> {
    let windows = mode.windows(m)?;
    let mut f = CnfFormula {
        num_vars: m.value(),
        clauses: Vec::with_capacity(2 * windows.len()),
    };
    for w in windows {
        let vars = w.indices.map(|j| j as i32 + 1);
        f.clauses.push(vars.to_vec());
        f.clauses.push(vars.iter().map(|v| -v).collect());
    }
    Ok(f)
}

/// `avoid_p{M}.cnf` for the strong prime encoding, `avoid_M{M}.cnf` for the
/// cyclic one.
pub fn cnf_file_name(modulus: usize, mode: Mode) -> String {
    match mode {
        Mode::StrongPrime => format!("avoid_p{modulus}.cnf"),
        Mode::Cyclic => format!("avoid_M{modulus}.cnf"),
    }
}

pub fn to_dimacs(f: &CnfFormula) -> String {
    to_dimacs_with_comment(f, None)
}

/// DIMACS text; an optional comment is written as `c ` lines before the
/// header.
pub fn to_dimacs_with_comment(f: &CnfFormula, comment: Option<&str>) -> String {
    let mut out = String::with_capacity(16 + f.clauses.len() * 16);
    if let Some(text) = comment {
        for line in text.lines() {
            out.push_str("c ");
            out.push_str(line);
            out.push('\n');
        }
    }
    let _ = writeln!(out, "p cnf {} {}", f.num_vars, f.clauses.len());
    for clause in &f.clauses {
        write_clause(&mut out, clause);
    }
    out
}

/// Appends `l1 l2 ... 0\n`.
pub(crate) fn write_clause(out: &mut String, lits: &[i32]) {
    for l in lits {
        let _ = write!(out, "{l} ");
    }
    out.push_str("0\n");
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut current_line = 0;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(lineno, "duplicate header"));
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            let (vars, count) = parsed
                .ok_or_else(|| Error::parse(lineno, format!("malformed header {trimmed:?}")))?;
            header = Some((vars, count, lineno));
            continue;
        }
        let Some((vars, _, _)) = header else {
            return Err(Error::parse(lineno, "clause before \"p cnf\" header"));
        };
        for tok in trimmed.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("invalid literal {tok:?}")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit.unsigned_abs() as usize > vars {
                return Err(Error::parse(
                    lineno,
                    format!("literal {lit} out of range for {vars} variables"),
                ));
            }
            if current.is_empty() {
                current_line = lineno;
            }
            current.push(lit as i32);
        }
    }

    let Some((num_vars, declared, header_line)) = header else {
        return Err(Error::parse(
            text.lines().count().max(1),
            "missing \"p cnf\" header",
        ));
    };
    if !current.is_empty() {
        return Err(Error::parse(
            current_line,
            "clause is missing its terminating 0",
        ));
    }
    if clauses.len() != declared {
        return Err(Error::parse(
            header_line,
            format!(
                "header declares {declared} clauses but {} are present",
                clauses.len()
            ),
        ));
    }
    Ok(CnfFormula { num_vars, clauses })
}

/// A possibly partial assignment, variables indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Model {
    pub assignment: BTreeMap<usize, bool>,
}

impl Model {
    /// Builds a model from DIMACS literals; zeros are ignored.
    pub fn from_literals(lits: impl IntoIterator<Item = i64>) -> Self {
        let mut assignment = BTreeMap::new();
        for l in lits {
            if l != 0 {
                assignment.insert(l.unsigned_abs() as usize, l > 0);
            }
        }
        Model { assignment }
    }

    pub fn value(&self, var: usize) -> Option<bool> {
        self.assignment.get(&var).copied()
    }

    pub fn satisfies_clause(&self, clause: &[i32]) -> bool {
        clause
            .iter()
            .any(|&l| self.value(l.unsigned_abs() as usize) == Some(l > 0))
    }

    pub fn satisfies(&self, f: &CnfFormula) -> bool {
        f.clauses.iter().all(|c| self.satisfies_clause(c))
    }

    /// DIMACS literal list over `1..=num_vars`, missing variables negative.
    pub fn literals(&self, num_vars: usize) -> Vec<i64> {
        (1..=num_vars)
            .map(|v| {
                if self.value(v) == Some(true) {
                    v as i64
                } else {
                    -(v as i64)
                }
            })
            .collect()
    }

    /// `v ...` lines of at most ten literals each, the last ending in `0`.
    pub fn to_v_lines(&self, num_vars: usize) -> String {
        let mut lits = self.literals(num_vars);
        lits.push(0);
        let mut out = String::new();
        for chunk in lits.chunks(10) {
            out.push('v');
            for l in chunk {
                let _ = write!(out, " {l}");
            }
            out.push('\n');
        }
        out
    }
}

/// Position `j` is `R` iff variable `j + 1` is true; missing variables read
/// as `B`.
pub fn model_to_word(m: Modulus, model: &Model) -> Word {
    Word::new(
        (1..=m.value())
            .map(|v| Color::from_bool(model.value(v).unwrap_or(false)))
            .collect(),
    )
}

/// Which parts of raw solver output carry the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModelSyntax {
    /// Only `v `-prefixed lines.
    #[default]
    Strict,
    /// Every integer token anywhere in the output.
    Lenient,
}

/// Extracts a model from solver output. In strict mode `None` means no
/// `v ` line was present; lenient mode always yields a (possibly empty)
/// model.
pub fn decode_model(output: &str, syntax: ModelSyntax) -> Option<Model> {
    match syntax {
        ModelSyntax::Strict => {
            let mut saw = false;
            let mut lits = Vec::new();
            for line in output.lines().filter(|l| l.starts_with("v ")) {
                saw = true;
                lits.extend(
                    line.split_whitespace()
                        .skip(1)
                        .filter_map(|t| t.parse::<i64>().ok()),
                );
            }
            saw.then(|| Model::from_literals(lits))
        }
        ModelSyntax::Lenient => Some(Model::from_literals(output.split_whitespace().filter_map(
            |t| {
                let digits = t.strip_prefix('-').unwrap_or(t);
                if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                    t.parse::<i64>().ok()
                } else {
                    None
                }
            },
        ))),
    }
}
