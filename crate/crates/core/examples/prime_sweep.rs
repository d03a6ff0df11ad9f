//! Classify primes under the strong encoding, writing CNFs, witnesses,
//! proofs and check transcripts to a directory.
//!
//!     cargo run --release --example prime_sweep -- 97 out_primes

use std::path::PathBuf;

use apavoid::pipeline::{classify_minimal_period, prime_sweep, SweepConfig};
use apavoid::solver::SolveStatus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let max_p: usize = args.first().map(String::as_str).unwrap_or("97").parse()?;
    let out = PathBuf::from(args.get(1).map(String::as_str).unwrap_or("out_primes"));

    let report = prime_sweep(max_p, &out, &SweepConfig::default())?;
    print!("{report}");
    println!("\nSAT:   {:?}", report.moduli_with(SolveStatus::Sat));
    println!("UNSAT: {:?}", report.moduli_with(SolveStatus::Unsat));

    for e in report.entries.iter().filter(|e| e.witness.is_some()) {
        let w = e.witness.as_ref().unwrap();
        println!(
            "minimal period at p={}: {}",
            e.modulus,
            classify_minimal_period(e.modulus, w)?
        );
    }
    println!("artifacts in {}", out.display());
    Ok(())
}
