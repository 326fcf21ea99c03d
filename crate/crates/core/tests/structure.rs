mod common;

use common::*;
use symband::compose::{compose, enumerate_bands};
use symband::structure::{class_group, decompose, validate_system, ClassGroup, HomMap, StrongSystem, Violation};
use symband::{AbelianGroup, OpTable, QuotientSemilattice, SigmaPartition};
use symband::{Error, SymmetricBand};

#[test]
fn example_decompositions() {
    for (f, image_of_2) in [(f1(), 2), (f2(), 3)] {
        let s = decompose(&f).unwrap();
        assert_eq!(s.partition.classes(), &[vec![0], vec![1], vec![2, 3]]);
        assert_eq!(s.groups[2].factor_signature, vec![2]);
        assert_eq!(s.groups[2].cayley(), vec![vec![2, 3], vec![3, 2]]);
        assert!(s.groups[..2].iter().all(|g| g.factor_signature.is_empty()));
        assert_eq!(s.hom(0, 2).unwrap().map, vec![3]);
        assert_eq!(s.hom(1, 2).unwrap().map, vec![image_of_2]);
        assert!(s.hom(0, 1).is_none());
        assert!(validate_system(&s, 3).is_valid());
    }
}

#[test]
fn both_neutrals_give_one_extension() {
    for f in [f1(), f2()] {
        let band = SymmetricBand::new(f.clone()).unwrap();
        let at3 = class_group(&band, 2, &[2, 3], 2).unwrap();
        let at4 = class_group(&band, 2, &[2, 3], 3).unwrap();
        assert_ne!(at3.group, at4.group);
        assert_eq!(at3.nary_extension(3), at4.nary_extension(3));
        assert_eq!(at3.nary_extension(3), f.restrict(&[2, 3]).unwrap());
    }
}

#[test]
fn non_bands_are_refused() {
    assert!(matches!(decompose(&load(AFFINE3_JSON).table), Err(Error::Axiom(_))));
    assert!(matches!(decompose(&load(MAJORITY_JSON).table), Err(Error::Axiom(_))));
}

#[test]
fn validation_finds_incoherent_maps() {
    let mut s = decompose(&f1()).unwrap();
    s.homs.iter_mut().find(|h| (h.from, h.to) == (2, 2)).unwrap().map = vec![3, 2];
    let report = validate_system(&s, 3);
    assert!(report.violations.contains(&Violation::NotIdentity { class: 2 }));
}

#[test]
fn validation_checks_exponents_against_arity() {
    let s = decompose(&load(XOR3_JSON).table).unwrap();
    assert!(validate_system(&s, 3).is_valid());
    assert!(validate_system(&s, 5).is_valid());
    let report = validate_system(&s, 4);
    assert_eq!(
        report.violations,
        vec![Violation::Exponent {
            class: 0,
            exponent: 2,
            arity: 4
        }]
    );
}

#[test]
fn validation_finds_missing_and_stray_maps() {
    let mut s = decompose(&load(MIN3_JSON).table).unwrap();
    let removed = s.homs.remove(1);
    let report = validate_system(&s, 3);
    assert_eq!(
        report.violations,
        vec![Violation::MissingHom {
            from: removed.from,
            to: removed.to
        }]
    );
}

#[test]
fn validation_finds_incoherent_chains() {
    // a band whose classes form a chain top > middle > bottom, bottom = Z2
    let s = enumerate_bands(4, 3, false)
        .unwrap()
        .entries
        .iter()
        .map(|f| decompose(f).unwrap())
        .find(|s| {
            let y = &s.semilattice;
            y.size() == 3
                && y.maximal().len() == 1
                && (0..3).any(|b| y.strictly_above(b).len() == 2 && s.partition.members(b).len() == 2)
        })
        .expect("such a band exists on four elements");
    let y = &s.semilattice;
    let bottom = (0..3).find(|&b| y.strictly_above(b).len() == 2).unwrap();
    let top = (0..3).find(|&a| y.strictly_above(a).is_empty()).unwrap();
    let middle = 3 - top - bottom;
    let mut broken = s.clone();
    let h = broken
        .homs
        .iter_mut()
        .find(|h| (h.from, h.to) == (top, bottom))
        .unwrap();
    let other = *s.partition.members(bottom).iter().find(|&&x| x != h.map[0]).unwrap();
    h.map = vec![other];
    let report = validate_system(&broken, 3);
    let expected = Violation::Incoherent {
        upper: top,
        middle,
        lower: bottom,
        element: s.partition.members(top)[0],
    };
    assert!(report.violations.contains(&expected), "{report}");
    assert!(matches!(compose(&broken, 3), Err(Error::InvalidSystem(_))));
}

#[test]
fn validation_rejects_a_neutral_that_is_not_the_identity() {
    let mut s = decompose(&load(XOR3_JSON).table).unwrap();
    s.groups[0].neutral = 1;
    let report = validate_system(&s, 3);
    assert!(matches!(
        report.violations.as_slice(),
        [Violation::Group { class: 0, .. }]
    ));
}

fn klein(class_index: usize, members: Vec<usize>) -> ClassGroup {
    let group = AbelianGroup::cyclic_product(&[2, 2]);
    ClassGroup {
        class_index,
        neutral: members[0],
        members,
        factor_signature: group.invariant_factors(),
        group,
    }
}

#[test]
fn validation_finds_maps_that_are_not_translated_homs() {
    let hom = |from, to, map: Vec<usize>| HomMap { from, to, map };
    let mut s = StrongSystem {
        arity: 3,
        labels: (0..8).map(|i| i.to_string()).collect(),
        partition: SigmaPartition::from_classes(8, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]).unwrap(),
        semilattice: QuotientSemilattice::from_meet(&OpTable::binary(2, |a, b| a.max(b)).unwrap()).unwrap(),
        groups: vec![klein(0, vec![0, 1, 2, 3]), klein(1, vec![4, 5, 6, 7])],
        homs: vec![
            hom(0, 0, vec![0, 1, 2, 3]),
            hom(0, 1, vec![5, 4, 7, 6]),
            hom(1, 1, vec![4, 5, 6, 7]),
        ],
    };
    assert!(validate_system(&s, 3).is_valid());
    assert!(compose(&s, 3).unwrap().check_symmetric_band().is_ok());
    s.homs[1].map = vec![4, 5, 4, 4];
    assert_eq!(
        validate_system(&s, 3).violations,
        vec![Violation::NotTranslatedHom { from: 0, to: 1 }]
    );
}
