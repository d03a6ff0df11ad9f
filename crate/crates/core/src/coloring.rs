//! Words over `{B, R}` and the progression-avoidance verifiers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{self, Modulus, Window};

/// A color. `B` encodes as 0 / false and `R` as 1 / true, matching the CNF
/// variable convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Color {
    B = 0,
    R = 1,
}

impl Color {
    #[inline]
    pub fn swapped(self) -> Color {
        match self {
            Color::B => Color::R,
            Color::R => Color::B,
        }
    }

    #[inline]
    pub fn from_bool(red: bool) -> Color {
        if red {
            Color::R
        } else {
            Color::B
        }
    }

    #[inline]
    pub fn is_red(self) -> bool {
        self == Color::R
    }

    pub fn as_char(self) -> char {
        match self {
            Color::B => 'B',
            Color::R => 'R',
        }
    }
}

/// A length-`M` coloring of `Z/MZ`. Ordering is lexicographic with `B < R`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Color>);

impl Word {
    pub fn new(colors: Vec<Color>) -> Self {
        Word(colors)
    }

    pub fn constant(color: Color, len: usize) -> Self {
        Word(vec![color; len])
    }

    /// Position `j` is red iff bit `j` of `bits` is set.
    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len <= 64);
        Word(
            (0..len)
                .map(|j| Color::from_bool(bits >> j & 1 == 1))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    #[inline]
    pub fn get(&self, i: usize) -> Color {
        self.0[i]
    }

    pub fn swapped(&self) -> Word {
        Word(self.0.iter().map(|c| c.swapped()).collect())
    }

    /// `(count of B, count of R)`.
    pub fn balance(&self) -> (usize, usize) {
        let red = self.0.iter().filter(|c| c.is_red()).count();
        (self.0.len() - red, red)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|c| c.as_char()).collect();
        f.pad(&s)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(position, symbol)| match symbol {
                'B' => Ok(Color::B),
                'R' => Ok(Color::R),
                _ => Err(Error::InvalidSymbol { symbol, position }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which windows a coloring must avoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every residue step on a prime cycle.
    StrongPrime,
    /// Non-degenerate windows only, any modulus.
    Cyclic,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::StrongPrime => "strong",
            Mode::Cyclic => "cyclic",
        }
    }

    /// The windows this mode constrains. Strong mode requires a prime modulus.
    pub fn windows(self, m: Modulus) -> Result<Vec<Window>> {
        match self {
            Mode::StrongPrime if !m.is_prime() => Err(Error::NotPrime(m.value())),
            Mode::StrongPrime => Ok(modular::windows(m).collect()),
            Mode::Cyclic => Ok(modular::nondegenerate_windows(m).collect()),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" | "strong-prime" => Ok(Mode::StrongPrime),
            "cyclic" | "cyclic-nondegenerate" => Ok(Mode::Cyclic),
            other => Err(Error::Unsupported(format!("unknown mode {other:?}"))),
        }
    }
}

/// Runs the verifier that matches `mode`.
pub fn verify(mode: Mode, m: Modulus, w: &Word) -> Result<VerifyReport> {
    match mode {
        Mode::StrongPrime => verify_strong(m, w),
        Mode::Cyclic => verify_cyclic(m, w),
    }
}

/// The earliest monochromatic window, in emission order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub window: Window,
    pub block: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL at {} block={}", self.window, self.block)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub first_failure: Option<Failure>,
    pub windows_checked: usize,
    /// Number of monochromatic windows among those inspected.
    pub mono_count: usize,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_failure {
            None => f.write_str("OK"),
            Some(fail) => fail.fmt(f),
        }
    }
}

#[inline]
fn is_mono(w: &Word, idx: &[usize; 4]) -> bool {
    let c = w.get(idx[0]);
    idx[1..].iter().all(|&j| w.get(j) == c)
}

fn check_len(m: Modulus, w: &Word) -> Result<()> {
    if w.len() != m.value() {
        return Err(Error::LengthMismatch {
            expected: m.value(),
            found: w.len(),
        });
    }
    Ok(())
}

fn scan(w: &Word, windows: impl Iterator<Item = Window>) -> VerifyReport {
    let mut first_failure = None;
    let mut windows_checked = 0;
    let mut mono_count = 0;
    for win in windows {
        windows_checked += 1;
        if is_mono(w, &win.indices) {
            mono_count += 1;
            if first_failure.is_none() {
                let block = win.indices.iter().map(|&j| w.get(j).as_char()).collect();
                first_failure = Some(Failure { window: win, block });
            }
        }
    }
    VerifyReport {
        ok: mono_count == 0,
        first_failure,
        windows_checked,
        mono_count,
    }
}

/// Checks all `p(p-1)` residue windows on a prime cycle.
pub fn verify_strong(p: Modulus, w: &Word) -> Result<VerifyReport> {
    if !p.is_prime() {
        return Err(Error::NotPrime(p.value()));
    }
    check_len(p, w)?;
    Ok(scan(w, modular::windows(p)))
}

/// Checks only the non-degenerate windows of `Z/MZ`; works for any `M >= 2`.
pub fn verify_cyclic(m: Modulus, w: &Word) -> Result<VerifyReport> {
    check_len(m, w)?;
    Ok(scan(w, modular::nondegenerate_windows(m)))
}

pub fn count_mono_nondegenerate(m: Modulus, w: &Word) -> Result<usize> {
    verify_cyclic(m, w).map(|r| r.mono_count)
}

/// The first `len` terms of the periodic extension of `w` to the integers.
pub fn periodic_extension(w: &Word, len: usize) -> Vec<Color> {
    (0..len).map(|n| w.get(n % w.len())).collect()
}

/// Number of monochromatic integer 4-APs `(a, a+d, a+2d, a+3d)` with the
/// given step that fit inside `colors`.
pub fn mono_progressions_with_step(colors: &[Color], d: usize) -> usize {
    if d == 0 || colors.len() <= 3 * d {
        return 0;
    }
    (0..colors.len() - 3 * d)
        .filter(|&a| {
            let c = colors[a];
            colors[a + d] == c && colors[a + 2 * d] == c && colors[a + 3 * d] == c
        })
        .count()
}

/// Exhaustive integer check of the periodic extension of a valid word over
/// `[0, span_multiplier * p)`, for every step `d` with `p` not dividing `d`.
pub fn periodic_extension_check(p: Modulus, w: &Word, span_multiplier: usize) -> Result<bool> {
    if span_multiplier < 1 {
        return Err(Error::Precondition(
            "span multiplier must be at least 1".into(),
        ));
    }
    if !verify_strong(p, w)?.ok {
        return Err(Error::Precondition(format!(
            "{w} does not pass the strong verifier for p = {p}"
        )));
    }
    let n = p.value();
    let colors = periodic_extension(w, span_multiplier * n);
    let max_step = colors.len().saturating_sub(1) / 3;
    Ok((1..=max_step)
        .filter(|d| d % n != 0)
        .all(|d| mono_progressions_with_step(&colors, d) == 0))
}

/// Longest run of equal colors, read cyclically.
pub fn run_length_max(w: &Word) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let c = w.colors();
    // Start scanning right after a color change so no run is split by the wrap.
    let Some(cut) = (0..n).find(|&i| c[i] != c[(i + n - 1) % n]) else {
        return n;
    };
    let mut best = 0;
    let mut run = 0;
    for k in 0..n {
        let i = (cut + k) % n;
        if k > 0 && c[i] == c[(i + n - 1) % n] {
            run += 1;
        } else {
            run = 1;
        }
        best = best.max(run);
    }
    best
}

/// Smallest `T >= 1` such that the periodic extension of `w` also has
/// period `T`. Always divides `|w|`.
pub fn minimal_period(w: &Word) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&t| n % t == 0 && (0..n).all(|i| w.get(i) == w.get((i + t) % n)))
        .unwrap_or(n)
}
