//! The brute-force oracles: every band on a small carrier, and every binary
//! table that reduces a given band.
//!
//! `cargo run --example oracle`

use symband::compose::{brute_force_bands, enumerate_bands};
use symband::io::table_from_json;
use symband::reduce::{brute_force_reductions_with, SearchSpace};
use symband::Budget;

fn main() -> symband::Result<()> {
    for m in 1..=3 {
        let brute = brute_force_bands(m, 3)?;
        let built = enumerate_bands(m, 3, false)?;
        println!(
            "m={m}: brute force {} bands, structural {} bands, same: {}",
            brute.labeled,
            built.labeled,
            brute.entries == built.entries
        );
    }

    let xor = table_from_json(include_str!("../fixtures/xor3.json"))?.table;
    for space in [SearchSpace::Symmetric, SearchSpace::General] {
        let found = brute_force_reductions_with(&xor, space, &Budget::default())?;
        println!("xor3, {space:?} tables: {} reductions", found.len());
        for g in found {
            println!("  {:?}", g.values());
        }
    }
    Ok(())
}
