//! Enumerate every valid word for a small prime and group the solutions
//! into dihedral orbits, with and without color swap.
//!
//!     cargo run --release --example enumerate_orbits -- 7

use apavoid::enumerate::{balance_histogram, enumerate_all, DEFAULT_GUARD};
use apavoid::symmetry::{orbits, stabilizer};
use apavoid::{Mode, Modulus};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: usize = std::env::args().nth(1).as_deref().unwrap_or("7").parse()?;
    let res = enumerate_all(Modulus::prime(p)?, Mode::StrongPrime, DEFAULT_GUARD)?;
    println!("p={p}: {} solutions", res.count());
    for ((b, r), n) in balance_histogram(&res) {
        println!("  {n} words with {b} B and {r} R");
    }
    if res.count() == 0 {
        return Ok(());
    }

    for with_swap in [false, true] {
        let summary = orbits(&res.solutions, with_swap)?;
        println!(
            "\n{} orbits (swap: {with_swap}), sizes {:?}",
            summary.num_orbits, summary.orbit_sizes
        );
        for rep in &summary.representatives {
            let stab = stabilizer(rep, with_swap);
            let fixed: Vec<String> = stab
                .iter()
                .filter(|g| !g.is_identity())
                .map(|g| g.to_string())
                .collect();
            println!(
                "  {rep}  fixed by: {}",
                if fixed.is_empty() {
                    "identity only".into()
                } else {
                    fixed.join(", ")
                }
            );
        }
    }
    Ok(())
}
