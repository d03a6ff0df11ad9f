//! Modular arithmetic shared by every other module: residue windows,
//! degeneracy and a small prime sieve.

use std::fmt;

use crate::error::{Error, Result};

/// A modulus `M >= 2` together with its primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    value: usize,
    is_prime: bool,
}

impl Modulus {
    pub fn new(value: usize) -> Result<Self> {
        if value < 2 {
            return Err(Error::InvalidModulus(value));
        }
        Ok(Modulus {
            value,
            is_prime: is_prime(value),
        })
    }

    /// Like [`Modulus::new`] but additionally rejects composite values.
    pub fn prime(value: usize) -> Result<Self> {
        let m = Self::new(value)?;
        if !m.is_prime {
            return Err(Error::NotPrime(value));
        }
        Ok(m)
    }

    #[inline]
    pub fn value(self) -> usize {
        self.value
    }

    #[inline]
    pub fn is_prime(self) -> bool {
        self.is_prime
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// A residue 4-AP `(i, i+r, i+2r, i+3r) mod M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub start: usize,
    pub step: usize,
    pub indices: [usize; 4],
    /// The four residues are not pairwise distinct.
    pub degenerate: bool,
}

impl Window {
    pub fn new(m: Modulus, start: usize, step: usize) -> Self {
        let n = m.value;
        let indices = [
            start % n,
            (start + step) % n,
            (start + 2 * step) % n,
            (start + 3 * step) % n,
        ];
        let [a, b, c, d] = indices;
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        Window {
            start,
            step,
            indices,
            degenerate: !distinct,
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.indices;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// Iterator over all `M(M-1)` windows, step-major then start-ascending.
#[derive(Debug, Clone)]
pub struct Windows {
    modulus: Modulus,
    step: usize,
    start: usize,
}

impl Iterator for Windows {
    type Item = Window;

    fn next(&mut self) -> Option<Window> {
        let n = self.modulus.value;
        if self.step >= n {
            return None;
        }
        let w = Window::new(self.modulus, self.start, self.step);
        self.start += 1;
        if self.start == n {
            self.start = 0;
            self.step += 1;
        }
        Some(w)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.modulus.value;
        let left = if self.step >= n {
            0
        } else {
            (n - self.step) * n - self.start
        };
        (left, Some(left))
    }
}

impl ExactSizeIterator for Windows {}

pub fn windows(m: Modulus) -> Windows {
    Windows {
        modulus: m,
        step: 1,
        start: 0,
    }
}

pub fn nondegenerate_windows(m: Modulus) -> impl Iterator<Item = Window> {
    windows(m).filter(|w| !w.degenerate)
}

/// Whether every window of step `r` is degenerate.
///
/// Uses the congruence form: two of the four terms collide iff one of
/// `r`, `2r`, `3r` vanishes mod `M`. That condition does not involve the
/// start, so degeneracy is the same for all `M` windows of a given step.
pub fn is_degenerate_step(m: Modulus, r: usize) -> bool {
    let n = m.value;
    let r = r % n;
    r == 0 || (2 * r) % n == 0 || (3 * r) % n == 0
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes in `[lo, hi]`, ascending (sieve of Eratosthenes).
pub fn primes_in_range(lo: usize, hi: usize) -> Vec<usize> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let mut composite = vec![false; hi + 1];
    let mut i = 2;
    while i * i <= hi {
        if !composite[i] {
            let mut j = i * i;
            while j <= hi {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (lo.max(2)..=hi).filter(|&p| !composite[p]).collect()
}
