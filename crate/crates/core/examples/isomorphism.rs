//! Canonical forms and isomorphism testing.
//!
//! `cargo run --example isomorphism`

use symband::io::table_from_json;

fn main() -> symband::Result<()> {
    let f1 = table_from_json(include_str!("../fixtures/f1.json"))?.table;
    let f2 = table_from_json(include_str!("../fixtures/f2.json"))?.table;

    // swap the two maximal elements of f1
    let swapped = f1.relabel(&[1, 0, 2, 3])?;
    println!("f1 ≅ relabeled f1: {}", f1.is_isomorphic(&swapped)?);
    println!("f1 ≅ f2: {}", f1.is_isomorphic(&f2)?);

    let canon = f1.canonical_form()?;
    println!("canonical form agrees: {}", canon == swapped.canonical_form()?);
    println!("canonical values: {:?}", &canon.values()[..16]);
    Ok(())
}
