//! Decompose a band into its strong system: σ classes, the quotient
//! semilattice, a group per class and the maps between classes.
//!
//! `cargo run --example decompose`

use symband::io::table_from_json;
use symband::structure::decompose_band;
use symband::SymmetricBand;

fn main() -> symband::Result<()> {
    let doc = table_from_json(include_str!("../fixtures/f1.json"))?;
    let label = |x: usize| doc.labels[x].clone();
    let band = SymmetricBand::new(doc.table.clone())?;

    println!("classification: {}", band.classify());
    let b = band.associated_band();
    for x in 0..b.size() {
        let row: Vec<String> = (0..b.size()).map(|y| label(b.get2(x, y))).collect();
        println!("B row {}: {}", label(x), row.join(" "));
    }

    let s = decompose_band(&band)?;
    for (k, class) in s.partition.classes().iter().enumerate() {
        let members: Vec<String> = class.iter().map(|&x| label(x)).collect();
        let g = &s.groups[k];
        println!(
            "class {k}: {{{}}} neutral {} invariant factors {:?}",
            members.join(","),
            label(g.neutral),
            g.factor_signature
        );
    }
    for h in s.homs.iter().filter(|h| h.from != h.to) {
        let pairs: Vec<String> = s
            .partition
            .members(h.from)
            .iter()
            .zip(&h.map)
            .map(|(&x, &y)| format!("{}->{}", label(x), label(y)))
            .collect();
        println!("φ[{}→{}]: {}", h.from, h.to, pairs.join(" "));
    }
    Ok(())
}
