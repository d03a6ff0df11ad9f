//! Sweep the cyclic encoding over a range of moduli and derive the
//! W_c(4,2) statement from the certified results.
//!
//!     cargo run --release --example cyclic_sweep -- 13 34 out_wc42

use std::path::PathBuf;

use apavoid::pipeline::{cyclic_sweep, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let start: usize = args.first().map(String::as_str).unwrap_or("13").parse()?;
    let end: usize = args.get(1).map(String::as_str).unwrap_or("34").parse()?;
    let out = PathBuf::from(args.get(2).map(String::as_str).unwrap_or("out_wc42"));

    let config = SweepConfig {
        jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        ..SweepConfig::default()
    };
    let report = cyclic_sweep(start, end, &out, &config)?;
    print!("{report}");
    if report.conclusion.is_none() {
        println!("\nno conclusion: needs a witness at M=33 and a checked refutation at M=34");
    }
    Ok(())
}
