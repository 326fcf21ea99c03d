//! Count small symmetric bands, labeled and up to isomorphism, and split
//! them by kind.
//!
//! `cargo run --release --example enumerate`

use std::collections::BTreeMap;

use symband::compose::enumerate_bands;
use symband::reduce::decide_reducible;
use symband::structure::decompose;
use symband::SymmetricBand;

fn main() -> symband::Result<()> {
    for (m, n) in [(2, 3), (3, 3), (4, 3), (3, 5), (4, 2)] {
        let labeled = enumerate_bands(m, n, false)?;
        let iso = enumerate_bands(m, n, true)?;
        let mut kinds = BTreeMap::new();
        let mut reducible = 0;
        for f in &iso.entries {
            *kinds
                .entry(SymmetricBand::new(f.clone())?.classify().to_string())
                .or_insert(0) += 1;
            if decide_reducible(&decompose(f)?, n)?.is_reducible() {
                reducible += 1;
            }
        }
        println!(
            "m={m} n={n}: {} labeled, {} up to isomorphism, {reducible} reducible classes, {kinds:?}",
            labeled.labeled, iso.iso
        );
    }
    Ok(())
}
