//! Rebuild the prime classification table. Run a prime sweep into the same
//! directory first to fill in the rows past 23.
//!
//!     cargo run --release --example prime_sweep -- 97 out_table
//!     cargo run --release --example table1 -- out_table

use std::path::PathBuf;

use apavoid::pipeline::table1_report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "out_table".into()),
    );
    let table = table1_report(&out)?;
    print!("{table}");
    Ok(())
}
