//! Check the published witnesses with both verifiers, then show what a
//! failure looks like.
//!
//!     cargo run --example verify_witnesses

use apavoid::coloring::{verify_cyclic, verify_strong};
use apavoid::{Modulus, Word};

fn main() -> apavoid::Result<()> {
    for (p, s) in [(5, "BBBRR"), (7, "BBBRBRR"), (11, "BBBRBBRBRRR")] {
        let w: Word = s.parse()?;
        let report = verify_strong(Modulus::prime(p)?, &w)?;
        println!(
            "p={p:<3} {s:<34} {report} ({} windows)",
            report.windows_checked
        );
    }

    // Composite moduli only make sense without the degenerate windows.
    for (m, s) in [
        (22, "RRRBRRBRBBBRRRBRRBRBBB"),
        (33, "BBBRBRRBRRRBBBRBRRBRRRBBBRBRRBRRR"),
    ] {
        let w: Word = s.parse()?;
        let report = verify_cyclic(Modulus::new(m)?, &w)?;
        println!(
            "M={m:<3} {s:<34} {report} ({} windows)",
            report.windows_checked
        );
    }

    let bad: Word = "BBBBRRR".parse()?;
    println!(
        "p=7   {bad:<34} {}",
        verify_strong(Modulus::prime(7)?, &bad)?
    );
    Ok(())
}
