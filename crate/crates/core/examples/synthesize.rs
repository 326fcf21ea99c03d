//! Build a band from a hand-written strong system: a two-element chain of
//! classes, Z2 on the bottom class and the trivial group on top.
//!
//! `cargo run --example synthesize`

use symband::compose::compose;
use symband::io::{system_from_json, system_to_json, table_to_json, LabeledTable};
use symband::structure::{decompose, validate_system};

const SYSTEM: &str = r#"{
  "arity": 3,
  "elements": ["top", "even", "odd"],
  "classes": [[0], [1, 2]],
  "meet": [[0, 1], [1, 1]],
  "groups": [
    {"class": 0, "neutral": 0, "cayley": [[0]]},
    {"class": 1, "neutral": 1, "cayley": [[1, 2], [2, 1]]}
  ],
  "homs": [
    {"from": 0, "to": 0, "map": {"0": 0}},
    {"from": 0, "to": 1, "map": {"0": 2}},
    {"from": 1, "to": 1, "map": {"1": 1, "2": 2}}
  ]
}"#;

fn main() -> symband::Result<()> {
    let s = system_from_json(SYSTEM)?;
    let report = validate_system(&s, 3);
    println!("valid: {}", report.is_valid());

    let f = compose(&s, 3)?;
    let doc = LabeledTable {
        table: f.clone(),
        labels: s.labels.clone(),
    };
    println!("{}", table_to_json(&doc).trim_end());

    let back = decompose(&f)?;
    println!("decomposes back to {} classes", back.partition.num_classes());
    println!("{}", system_to_json(&back).trim_end());
    Ok(())
}
