//! Exhaustive enumeration of valid words by depth-first search.
//!
//! Positions are assigned left to right. Each window is attached to the
//! largest residue it touches and is tested the moment that position is
//! assigned, so wraparound windows are tested no later than the final
//! assignment and nothing is tested before all four of its cells are known.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::coloring::{Mode, Word};
use crate::error::{Error, Result};
use crate::modular::Modulus;

pub const DEFAULT_GUARD: usize = 24;

/// Hard limit of the bitmask representation.
const MAX_LEN: usize = 64;

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub modulus: Modulus,
    pub mode: Mode,
    /// Sorted ascending, `B < R`.
    pub solutions: Vec<Word>,
}

impl EnumerationResult {
    pub fn count(&self) -> usize {
        self.solutions.len()
    }
}

#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    pub guard: usize,
    /// Additionally reject any linear run of four equal colors while
    /// searching. Implied by the step-1 windows; never changes the result.
    pub run_cut: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            guard: DEFAULT_GUARD,
            run_cut: false,
        }
    }
}

pub fn enumerate_all(m: Modulus, mode: Mode, limit_guard: usize) -> Result<EnumerationResult> {
    enumerate_with(
        m,
        mode,
        &EnumerateOptions {
            guard: limit_guard,
            ..EnumerateOptions::default()
        },
    )
}

pub fn enumerate_with(
    m: Modulus,
    mode: Mode,
    opts: &EnumerateOptions,
) -> Result<EnumerationResult> {
    let n = m.value();
    if n > opts.guard {
        return Err(Error::GuardExceeded {
            modulus: n,
            guard: opts.guard,
        });
    }
    if n > MAX_LEN {
        return Err(Error::Unsupported(format!(
            "exhaustive enumeration is limited to length {MAX_LEN}"
        )));
    }

    let mut checks: Vec<Vec<u64>> = vec![Vec::new(); n];
    for win in mode.windows(m)? {
        let last = *win.indices.iter().max().unwrap();
        let mask = win.indices.iter().fold(0u64, |acc, &j| acc | 1 << j);
        checks[last].push(mask);
    }
    for list in &mut checks {
        list.sort_unstable();
        list.dedup();
    }

    let mut search = Search {
        n,
        checks: &checks,
        run_cut: opts.run_cut,
        found: Vec::new(),
    };
    search.descend(0, 0);

    let mut solutions: Vec<Word> = search
        .found
        .into_iter()
        .map(|bits| Word::from_bits(bits, n))
        .collect();
    solutions.sort();
    Ok(EnumerationResult {
        modulus: m,
        mode,
        solutions,
    })
}

struct Search<'a> {
    n: usize,
    checks: &'a [Vec<u64>],
    run_cut: bool,
    found: Vec<u64>,
}

impl Search<'_> {
    /// `red` holds the colors of positions `0..pos`.
    fn descend(&mut self, pos: usize, red: u64) {
        if pos == self.n {
            self.found.push(red);
            return;
        }
        // B before R keeps discovery order lexicographic.
        for bit in [0u64, 1] {
            let red = red | bit << pos;
            if self.admissible(pos, red) {
                self.descend(pos + 1, red);
            }
        }
    }

    fn admissible(&self, pos: usize, red: u64) -> bool {
        if self.run_cut && pos >= 3 {
            let run = (red >> (pos - 3)) & 0b1111;
            if run == 0 || run == 0b1111 {
                return false;
            }
        }
        self.checks[pos].iter().all(|&mask| {
            let hit = red & mask;
            hit != 0 && hit != mask
        })
    }
}

/// Solution counts keyed by `(count of B, count of R)`.
pub fn balance_histogram(res: &EnumerationResult) -> BTreeMap<(usize, usize), usize> {
    let mut hist = BTreeMap::new();
    for w in &res.solutions {
        *hist.entry(w.balance()).or_insert(0) += 1;
    }
    hist
}

/// One word per line, LF endings.
pub fn render_solutions(words: &[Word]) -> String {
    words.iter().map(|w| format!("{w}\n")).collect()
}

pub fn solutions_file_name(modulus: usize) -> String {
    format!("solutions_p{modulus}.txt")
}

pub fn write_solutions(path: &Path, words: &[Word]) -> Result<()> {
    fs::write(path, render_solutions(words)).map_err(|e| Error::io(path, e))
}

/// Reads a solution list; blank lines are skipped, surrounding whitespace
/// is trimmed.
pub fn read_solutions(path: &Path) -> Result<Vec<Word>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_solutions(&text)
}

pub fn parse_solutions(text: &str) -> Result<Vec<Word>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse::<Word>()
                .map_err(|e| Error::parse(i + 1, e.to_string()))
        })
        .collect()
}
