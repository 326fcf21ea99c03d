//! Check the symmetric band axioms and extend a band to a higher arity.
//!
//! `cargo run --example axioms`

use symband::io::table_from_json;

fn main() -> symband::Result<()> {
    for (name, json) in [
        ("f1", include_str!("../fixtures/f1.json")),
        ("majority", include_str!("../fixtures/majority.json")),
    ] {
        let f = table_from_json(json)?.table;
        match f.check_symmetric_band() {
            Ok(()) => println!("{name}: symmetric band of arity {} on {} elements", f.arity(), f.size()),
            Err(v) => println!("{name}: {v}"),
        }
    }

    let xor = table_from_json(include_str!("../fixtures/xor3.json"))?.table;
    let xor5 = xor.extend(2)?;
    println!("xor3 extended twice has arity {}", xor5.arity());
    println!("xor5(1,1,0,1,0) = {}", xor5.eval(&[1, 1, 0, 1, 0])?);
    println!("still a band: {}", xor5.check_symmetric_band().is_ok());
    Ok(())
}
