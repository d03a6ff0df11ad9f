//! The dihedral group `D_M`, optionally extended by the global color swap,
//! acting on words by index permutation.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Word};
use crate::error::{Error, Result};
use crate::modular::Modulus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// `(rho_k w)_i = w_{i-k}`
    Rotation,
    /// `(sigma_k w)_i = w_{k-i}`
    Reflection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub modulus: usize,
    pub kind: Kind,
    pub k: usize,
    /// Post-compose with `B <-> R`.
    pub with_swap: bool,
}

impl GroupElement {
    pub fn identity(modulus: usize) -> Self {
        Self::rotation(modulus, 0)
    }

    pub fn rotation(modulus: usize, k: usize) -> Self {
        GroupElement {
            modulus,
            kind: Kind::Rotation,
            k: k % modulus,
            with_swap: false,
        }
    }

    pub fn reflection(modulus: usize, k: usize) -> Self {
        GroupElement {
            modulus,
            kind: Kind::Reflection,
            k: k % modulus,
            with_swap: false,
        }
    }

    pub fn swap(modulus: usize) -> Self {
        GroupElement {
            with_swap: true,
            ..Self::identity(modulus)
        }
    }

    pub fn with_swap(self, with_swap: bool) -> Self {
        GroupElement { with_swap, ..self }
    }

    pub fn is_identity(&self) -> bool {
        self.kind == Kind::Rotation && self.k == 0 && !self.with_swap
    }

    /// The element as the affine index map `i -> s*i + t` read from the
    /// input word: `out_i = w_{s*i + t}` with `s = +-1`.
    fn affine(&self) -> (bool, usize) {
        let n = self.modulus;
        match self.kind {
            Kind::Rotation => (true, (n - self.k) % n),
            Kind::Reflection => (false, self.k),
        }
    }

    fn from_affine(modulus: usize, forward: bool, t: usize, with_swap: bool) -> Self {
        let n = modulus;
        let g = if forward {
            Self::rotation(n, (n - t % n) % n)
        } else {
            Self::reflection(n, t)
        };
        g.with_swap(with_swap)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.modulus, other.modulus, "elements of different groups");
        let n = self.modulus;
        let (sg, tg) = self.affine();
        let (sh, th) = other.affine();
        // (g(hw))_i = (hw)_{sg*i+tg} = w_{sh*(sg*i+tg) + th}
        let forward = sg == sh;
        let shifted = if sh { tg } else { (n - tg) % n };
        GroupElement::from_affine(
            n,
            forward,
            (shifted + th) % n,
            self.with_swap ^ other.with_swap,
        )
    }

    pub fn inverse(&self) -> GroupElement {
        let n = self.modulus;
        match self.kind {
            Kind::Rotation => Self::rotation(n, (n - self.k) % n),
            Kind::Reflection => *self,
        }
        .with_swap(self.with_swap)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            Kind::Rotation => "rho",
            Kind::Reflection => "sigma",
        };
        write!(f, "{name}_{}", self.k)?;
        if self.with_swap {
            f.write_str("·tau")?;
        }
        Ok(())
    }
}

/// All `2M` (or `4M` with swap) elements, rotations first.
pub fn group_elements(modulus: usize, with_swap: bool) -> Vec<GroupElement> {
    let swaps: &[bool] = if with_swap { &[false, true] } else { &[false] };
    let mut out = Vec::with_capacity(2 * modulus * swaps.len());
    for &s in swaps {
        out.extend((0..modulus).map(|k| GroupElement::rotation(modulus, k).with_swap(s)));
        out.extend((0..modulus).map(|k| GroupElement::reflection(modulus, k).with_swap(s)));
    }
    out
}

pub fn apply(g: &GroupElement, w: &Word) -> Result<Word> {
    let n = g.modulus;
    if w.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: w.len(),
        });
    }
    let (forward, t) = g.affine();
    let colors = (0..n)
        .map(|i| {
            let src = if forward {
                (i + t) % n
            } else {
                (t + n - i) % n
            };
            let c = w.get(src);
            if g.with_swap {
                c.swapped()
            } else {
                c
            }
        })
        .collect();
    Ok(Word::new(colors))
}

pub fn stabilizer(w: &Word, with_swap: bool) -> Vec<GroupElement> {
    group_elements(w.len(), with_swap)
        .into_iter()
        .filter(|g| apply(g, w).map(|x| &x == w).unwrap_or(false))
        .collect()
}

/// Orbit of `w` in the full word space, via the algebraic elements.
pub fn orbit(w: &Word, with_swap: bool) -> BTreeSet<Word> {
    group_elements(w.len(), with_swap)
        .iter()
        .map(|g| apply(g, w).expect("element matches word length"))
        .collect()
}

/// Orbit built the way a string-based script would: every rotation
/// `w[i..] + w[..i]` together with its reversal, closed under swap if asked.
pub fn orbit_by_generators(w: &Word, with_swap: bool) -> BTreeSet<Word> {
    fn dihedral(w: &Word, out: &mut BTreeSet<Word>) {
        let c = w.colors();
        for i in 0..c.len() {
            let mut rot: Vec<Color> = c[i..].to_vec();
            rot.extend_from_slice(&c[..i]);
            out.insert(Word::new(rot.clone()));
            rot.reverse();
            out.insert(Word::new(rot));
        }
    }
    let mut out = BTreeSet::new();
    dihedral(w, &mut out);
    if with_swap {
        dihedral(&w.swapped(), &mut out);
    }
    out
}

/// Orbit decomposition of a word set. Field names match the JSON summary
/// format (`reps` for the representatives).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub num_words: usize,
    pub num_orbits: usize,
    pub orbit_sizes: Vec<usize>,
    #[serde(rename = "reps")]
    pub representatives: Vec<Word>,
    pub with_swap: bool,
}

impl OrbitSummary {
    /// Pretty JSON with two-space indentation and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

/// Partitions `words` into orbits, each intersected with the input set.
/// Orbits are discovered from the smallest unseen word upward, so the
/// summary is deterministic.
pub fn orbits<'a, I>(words: I, with_swap: bool) -> Result<OrbitSummary>
where
    I: IntoIterator<Item = &'a Word>,
{
    orbits_with(words, with_swap, orbit)
}

/// Same as [`orbits`] but generating orbits through [`orbit_by_generators`].
pub fn orbits_by_generators<'a, I>(words: I, with_swap: bool) -> Result<OrbitSummary>
where
    I: IntoIterator<Item = &'a Word>,
{
    orbits_with(words, with_swap, orbit_by_generators)
}

fn orbits_with<'a, I>(
    words: I,
    with_swap: bool,
    orbit_of: fn(&Word, bool) -> BTreeSet<Word>,
) -> Result<OrbitSummary>
where
    I: IntoIterator<Item = &'a Word>,
{
    let all: BTreeSet<Word> = words.into_iter().cloned().collect();
    if let Some(first) = all.iter().next() {
        if let Some(bad) = all.iter().find(|w| w.len() != first.len()) {
            return Err(Error::LengthMismatch {
                expected: first.len(),
                found: bad.len(),
            });
        }
    }
    let mut unseen = all.clone();
    let mut sizes = Vec::new();
    let mut reps = Vec::new();
    while let Some(w) = unseen.iter().next().cloned() {
        let o: BTreeSet<Word> = orbit_of(&w, with_swap)
            .intersection(&all)
            .cloned()
            .collect();
        reps.push(o.iter().next().cloned().expect("orbit contains w"));
        sizes.push(o.len());
        for x in &o {
            unseen.remove(x);
        }
    }
    Ok(OrbitSummary {
        num_words: all.len(),
        num_orbits: sizes.len(),
        orbit_sizes: sizes,
        representatives: reps,
        with_swap,
    })
}

/// All `2^((M+1)/2)` words fixed by the reflection `sigma_k`, for odd `M`.
///
/// Position `i` is tied to `k - i`; for odd `M` exactly one position is its
/// own mirror, so the free positions are one representative per pair plus
/// that fixed point.
pub fn reflection_fixed_candidates(m: Modulus, axis: usize) -> Result<Vec<Word>> {
    let n = m.value();
    if n % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "reflection candidates are defined for odd moduli, got {n}"
        )));
    }
    let k = axis % n;
    let free: Vec<usize> = (0..n).filter(|&i| i <= (k + n - i) % n).collect();
    debug_assert_eq!(free.len(), n.div_ceil(2));
    let mut out = Vec::with_capacity(1 << free.len());
    for bits in 0..1u64 << free.len() {
        let mut colors = vec![Color::B; n];
        for (b, &i) in free.iter().enumerate() {
            let c = Color::from_bool(bits >> (free.len() - 1 - b) & 1 == 1);
            colors[i] = c;
            colors[(k + n - i) % n] = c;
        }
        out.push(Word::new(colors));
    }
    Ok(out)
}
