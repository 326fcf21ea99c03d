mod common;

use common::*;
use symband::bandcore::check_right_normal;
use symband::compose::enumerate_bands;
use symband::{Classification, OpTable, SymmetricBand};

fn catalog(max_m: usize, n: usize) -> Vec<SymmetricBand> {
    (1..=max_m)
        .flat_map(|m| enumerate_bands(m, n, false).unwrap().entries)
        .map(|t| SymmetricBand::new(t).unwrap())
        .collect()
}

#[test]
fn associated_bands_match_the_printed_tables() {
    let b1 = SymmetricBand::new(f1()).unwrap().associated_band();
    let b2 = SymmetricBand::new(f2()).unwrap().associated_band();
    assert_eq!(b1, one_based_binary(&B_F1));
    assert_eq!(b2, one_based_binary(&B_F2));
}

#[test]
fn sigma_of_the_examples() {
    for f in [f1(), f2()] {
        let band = SymmetricBand::new(f).unwrap();
        let p = band.sigma_partition();
        assert_eq!(p.classes(), &[vec![0], vec![1], vec![2, 3]]);
        let q = band.quotient(&p).unwrap();
        assert_eq!(q.semilattice.meet(0, 1), 2);
        assert_eq!(q.semilattice.maximal(), vec![0, 1]);
        assert_eq!(band.classify(), Classification::General);
    }
}

#[test]
fn classification_of_small_bands() {
    let min3 = SymmetricBand::new(load(MIN3_JSON).table).unwrap();
    assert_eq!(min3.classify(), Classification::SemilatticeExtension);
    let xor3 = SymmetricBand::new(load(XOR3_JSON).table).unwrap();
    assert_eq!(xor3.classify(), Classification::GroupExtension);
}

#[test]
fn laws_hold_on_ternary_catalog() {
    let bands = catalog(4, 3);
    assert_eq!(bands.len(), 1 + 3 + 18 + 197);
    bands.iter().for_each(check_laws);
    check_laws(&SymmetricBand::new(f1()).unwrap());
    check_laws(&SymmetricBand::new(f2()).unwrap());
}

#[test]
fn laws_hold_at_other_arities() {
    catalog(3, 2).iter().chain(catalog(3, 5).iter()).for_each(check_laws);
}

#[test]
fn binary_bands_are_semilattices() {
    for band in catalog(4, 2) {
        // the one-element band is also the trivial group extension
        let expected = if band.size() == 1 {
            Classification::GroupExtension
        } else {
            Classification::SemilatticeExtension
        };
        assert_eq!(band.classify(), expected);
        assert_eq!(band.associated_band(), band.table().clone());
        assert_eq!(band.sigma_partition().num_classes(), band.size());
    }
}

#[test]
fn left_zero_band_is_rejected_as_right_normal() {
    let left_zero = OpTable::binary(2, |x, _| x).unwrap();
    assert!(check_right_normal(&left_zero).is_err());
}
