//! Two-colorings of the cyclic group Z/MZ that avoid monochromatic
//! 4-term arithmetic progressions.
//!
//! The crate covers the whole workflow around these colorings:
//!
//! - [`modular`]: residue windows `(i, i+r, i+2r, i+3r) mod M`, degeneracy, primes.
//! - [`coloring`]: the [`Word`] type and the strong / cyclic verifiers.
//! - [`enumerate`]: exhaustive depth-first enumeration of valid words.
//! - [`symmetry`]: the dihedral action, color swap, stabilizers and orbits.
//! - [`cnf`]: CNF encoding, DIMACS I/O and model decoding.
//! - [`solver`]: an embedded CDCL solver that logs DRAT proofs, plus an
//!   adapter for external DIMACS solvers.
//! - [`dratcheck`]: an independent forward DRAT checker.
//! - [`pipeline`]: the prime and cyclic sweeps, summary tables and the
//!   SHA-256 artifact manifest.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod cnf;
pub mod coloring;
pub mod dratcheck;
pub mod enumerate;
pub mod error;
pub mod modular;
pub mod pipeline;
pub mod solver;
pub mod symmetry;

pub use cnf::{CnfFormula, Model};
pub use coloring::{Color, Mode, VerifyReport, Word};
pub use error::{Error, Result};
pub use modular::{Modulus, Window};
