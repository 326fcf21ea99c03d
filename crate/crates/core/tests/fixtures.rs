mod common;

use common::*;
use symband::io::table_from_json;
use symband::{Error, OpTable};

#[test]
fn f1_matches_its_level_sets() {
    let t = load(F1_JSON);
    assert_eq!(t.labels, ["1", "2", "3", "4"]);
    assert_eq!(t.table, f1_from_level_sets());
}

#[test]
fn f2_matches_its_level_sets() {
    let t = load(F2_JSON);
    assert_eq!(t.labels, ["1", "2", "3", "4"]);
    assert_eq!(t.table, f2_from_level_sets());
}

#[test]
fn small_fixtures_match_their_formulas() {
    let majority = OpTable::from_fn(3, 2, |t| usize::from(t.iter().sum::<usize>() >= 2)).unwrap();
    assert_eq!(load(MAJORITY_JSON).table, majority);
    let min3 = OpTable::from_fn(3, 3, |t| *t.iter().min().unwrap()).unwrap();
    assert_eq!(load(MIN3_JSON).table, min3);
    let xor3 = OpTable::from_fn(3, 2, |t| t[0] ^ t[1] ^ t[2]).unwrap();
    assert_eq!(load(XOR3_JSON).table, xor3);
    let affine = OpTable::from_fn(3, 3, |t| (t[0] + 3 - t[1] + t[2]) % 3).unwrap();
    assert_eq!(load(AFFINE3_JSON).table, affine);
}

#[test]
fn malformed_fixture_is_rejected() {
    assert!(matches!(table_from_json(MALFORMED_JSON), Err(Error::Input(_))));
}
