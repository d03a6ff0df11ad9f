//! Solve one instance with the embedded CDCL solver and certify the answer.
//!
//! SAT answers are decoded and re-verified; UNSAT answers come with a DRAT
//! proof that is replayed by the independent checker.
//!
//!     cargo run --release --example solve_and_certify -- 13 strong
//!     cargo run --release --example solve_and_certify -- 34 cyclic

use std::time::Instant;

use apavoid::cnf::{encode, model_to_word};
use apavoid::coloring::verify;
use apavoid::dratcheck::{check, CheckConfig};
use apavoid::solver::{solve, SolveStatus, SolverConfig};
use apavoid::{Mode, Modulus};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().as_deref().unwrap_or("13").parse()?;
    let mode: Mode = args.next().as_deref().unwrap_or("strong").parse()?;
    let modulus = Modulus::new(m)?;

    let f = encode(modulus, mode)?;
    println!(
        "M={m} mode={mode}: {} vars, {} clauses",
        f.num_vars,
        f.num_clauses()
    );

    let t = Instant::now();
    let out = solve(&f, &SolverConfig::default());
    println!(
        "{} in {:.2?} ({} conflicts, {} restarts)",
        out.status,
        t.elapsed(),
        out.stats.conflicts,
        out.stats.restarts
    );

    match out.status {
        SolveStatus::Sat => {
            let w = model_to_word(modulus, out.model.as_ref().unwrap());
            println!("witness {w}: {}", verify(mode, modulus, &w)?);
        }
        SolveStatus::Unsat => {
            let proof = out.proof.expect("proof logging is on by default");
            let t = Instant::now();
            let verdict = check(&f, &proof, &CheckConfig::default())?;
            println!(
                "proof: {} steps, checked in {:.2?}",
                proof.len(),
                t.elapsed()
            );
            print!("{}", verdict.transcript());
        }
        SolveStatus::Unknown => println!("reason: {}", out.reason.unwrap_or_default()),
    }
    Ok(())
}
