//! Hash every file in a directory into artifact_manifest.json.
//!
//!     cargo run --example manifest -- out_wc42

use std::path::PathBuf;

use apavoid::pipeline::write_manifest;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let manifest = write_manifest(&dir)?;
    for e in &manifest.entries {
        println!("{}  {:>9}  {}", e.sha256, e.byte_length, e.filename);
    }
    Ok(())
}
