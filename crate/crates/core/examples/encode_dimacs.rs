//! Print the DIMACS encoding of one instance, or write it to a file.
//!
//!     cargo run --example encode_dimacs -- 7 strong
//!     cargo run --example encode_dimacs -- 34 cyclic /tmp/avoid_M34.cnf

use apavoid::cnf::{encode, to_dimacs};
use apavoid::{Mode, Modulus};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m: usize = args.first().map(String::as_str).unwrap_or("7").parse()?;
    let mode: Mode = args
        .get(1)
        .map(String::as_str)
        .unwrap_or("strong")
        .parse()?;

    let f = encode(Modulus::new(m)?, mode)?;
    let text = to_dimacs(&f);
    match args.get(2) {
        Some(path) => {
            std::fs::write(path, &text)?;
            eprintln!("{} vars, {} clauses -> {path}", f.num_vars, f.num_clauses());
        }
        None => print!("{text}"),
    }
    Ok(())
}
