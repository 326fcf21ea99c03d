//! Decide whether a ternary band comes from a binary one, and check the
//! answer against exhaustive search.
//!
//! `cargo run --example reducibility`

use symband::io::{reduction_to_json, table_from_json};
use symband::reduce::{brute_force_reductions, decide_reducible, verify_reduction};
use symband::structure::decompose;
use symband::ReductionResult;

fn main() -> symband::Result<()> {
    for (name, json) in [
        ("f1", include_str!("../fixtures/f1.json")),
        ("f2", include_str!("../fixtures/f2.json")),
    ] {
        let doc = table_from_json(json)?;
        let f = &doc.table;
        let verdict = decide_reducible(&decompose(f)?, f.arity())?;
        println!("{name}: {}", reduction_to_json(&verdict, &doc.labels).trim_end());

        if let ReductionResult::Reducible { table, .. } = &verdict {
            println!("  verified: {}", verify_reduction(f, table)?);
        }
        let found = brute_force_reductions(f)?;
        println!("  exhaustive search finds {} reduction(s)", found.len());
    }
    Ok(())
}
