//! Regenerates `fixtures/synthetic_prices.csv`:
//! `cargo run -p nigar-cli --example make_fixture`.

use std::fs::File;
use std::path::Path;

use nigar_cli::fixture::{write_fixture, FIXTURE_SEED};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/synthetic_prices.csv");
    write_fixture(File::create(&path)?, FIXTURE_SEED)?;
    println!("wrote {}", path.display());
    Ok(())
}
