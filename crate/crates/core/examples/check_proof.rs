//! Replay a DRAT proof, first a correct one and then a damaged copy.
//!
//! With two file arguments the given formula and proof are checked instead.
//!
//!     cargo run --release --example check_proof
//!     cargo run --release --example check_proof -- avoid_p13.cnf avoid_p13.drat

use apavoid::cnf::{encode, parse_dimacs};
use apavoid::dratcheck::{check, parse_drat, CheckConfig};
use apavoid::solver::{solve, ProofStep, SolverConfig};
use apavoid::{Mode, Modulus};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let config = CheckConfig::default();

    if let [cnf, proof] = args.as_slice() {
        let f = parse_dimacs(&std::fs::read_to_string(cnf)?)?;
        let p = parse_drat(&std::fs::read_to_string(proof)?)?;
        print!("{}", check(&f, &p, &config)?.transcript());
        return Ok(());
    }

    let f = encode(Modulus::prime(13)?, Mode::StrongPrime)?;
    let proof = solve(&f, &SolverConfig::default())
        .proof
        .expect("p=13 is unsatisfiable");
    println!("p=13 proof, {} steps:", proof.len());
    print!("{}", check(&f, &proof, &config)?.transcript());

    // Drop the final empty clause: every lemma still checks, but nothing
    // refutes the formula.
    let mut truncated = proof.clone();
    truncated.steps.pop();
    println!("\nwithout the empty clause:");
    print!("{}", check(&f, &truncated, &config)?.transcript());

    // Replace the first lemma by a clause that does not follow.
    let mut forged = proof;
    forged.steps[0] = ProofStep::Add(vec![1, 2]);
    println!("\nwith a forged first lemma:");
    print!("{}", check(&f, &forged, &config)?.transcript());
    Ok(())
}
