mod common;

use common::*;
use proptest::prelude::*;
use symband::error::AxiomViolation;
use symband::{OpTable, TupleCodec};

fn table(max_size: usize, arities: &'static [usize]) -> impl Strategy<Value = OpTable> {
    (1..=max_size, prop::sample::select(arities)).prop_flat_map(|(m, n)| {
        let cells = m.pow(n as u32);
        prop::collection::vec(0..m, cells).prop_map(move |v| OpTable::new(n, m, v).unwrap())
    })
}

/// Symmetric idempotent tables, where associativity failures are rarer.
fn symmetric_table(max_size: usize) -> impl Strategy<Value = OpTable> {
    (1..=max_size).prop_flat_map(|m| {
        prop::collection::vec(0..m, m * m * m).prop_map(move |v| {
            OpTable::from_fn(3, m, |t| {
                let mut s = t.to_vec();
                s.sort_unstable();
                if s[0] == s[2] {
                    s[0]
                } else {
                    v[(s[0] * m + s[1]) * m + s[2]]
                }
            })
            .unwrap()
        })
    })
}

fn binary_semigroups() -> Vec<OpTable> {
    vec![
        OpTable::binary(3, |x, y| x.min(y)).unwrap(),
        OpTable::binary(4, |x, y| (x + y) % 4).unwrap(),
        OpTable::binary(3, |x, _| x).unwrap(),
        OpTable::binary(3, |_, y| y).unwrap(),
        OpTable::binary(4, |x, y| (x * y) % 4).unwrap(),
    ]
}

proptest! {
    #[test]
    fn codec_round_trips(m in 1usize..6, n in 1usize..5, seed in any::<u64>()) {
        let codec = TupleCodec::new(m, n).unwrap();
        let index = (seed % codec.len() as u64) as usize;
        let t = codec.decode(index);
        prop_assert_eq!(t.len(), n);
        prop_assert_eq!(codec.encode(&t), index);
    }

    #[test]
    fn axiom_checks_agree_with_definitions(f in table(3, &[2, 3])) {
        prop_assert_eq!(f.is_associative(), naive_associative(&f));
        prop_assert_eq!(f.is_symmetric(), naive_symmetric(&f));
        let idem = (0..f.size()).all(|x| f.get(&vec![x; f.arity()]) == x);
        prop_assert_eq!(f.is_idempotent(), idem);
    }

    #[test]
    fn symmetric_associativity_shortcut_is_sound(f in symmetric_table(3)) {
        prop_assert_eq!(f.is_associative(), naive_associative(&f));
    }

    #[test]
    fn associativity_witness_is_lexicographically_first(f in table(3, &[2, 3])) {
        let n = f.arity();
        let first = tuples(f.size(), 2 * n - 1)
            .into_iter()
            .find_map(|t| f.associativity_violation_at(&t).unwrap());
        match (f.check_associative(), first) {
            (Ok(()), None) => {}
            (Err(v), Some(w)) => prop_assert_eq!(v, w),
            (got, expected) => prop_assert!(false, "{:?} vs {:?}", got, expected),
        }
    }

    #[test]
    fn canonical_form_is_a_relabeling_invariant(f in table(4, &[2]), perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle()) {
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p < f.size()).collect();
        let g = f.relabel(&perm).unwrap();
        let canon = f.canonical_form().unwrap();
        prop_assert_eq!(&canon, &g.canonical_form().unwrap());
        prop_assert_eq!(canon.values().to_vec(), naive_canonical(&f));
        prop_assert!(f.is_isomorphic(&g).unwrap());
    }

    #[test]
    fn extension_is_right_nested(i in 0usize..5, q in 1usize..4) {
        let g = &binary_semigroups()[i];
        let ext = g.extend(q).unwrap();
        prop_assert_eq!(ext.arity(), q + 1);
        for t in tuples(g.size(), q + 1) {
            prop_assert_eq!(ext.get(&t), right_nested(g, &t));
        }
        prop_assert!(ext.is_associative());
    }
}

#[test]
fn extensions_compose() {
    for f in [f1(), f2()] {
        let twice = f.extend(2).unwrap().extend(2).unwrap();
        assert_eq!(twice, f.extend(4).unwrap());
        let e = f.extend(2).unwrap();
        assert_eq!(e.arity(), 5);
        assert!(e.check_symmetric_band().is_ok());
    }
}

#[test]
fn majority_fails_associativity() {
    let f = load(MAJORITY_JSON).table;
    assert!(f.is_symmetric() && f.is_idempotent());
    let Err(AxiomViolation::Associativity { tuple, position, .. }) = f.check_associative() else {
        panic!("majority is not associative");
    };
    assert_eq!((tuple, position), (vec![0, 0, 0, 1, 1], 1));
    assert!(f.associativity_violation_at(&[0, 0, 1, 1, 1]).unwrap().is_some());
}

#[test]
fn affine_symmetry_witness() {
    let f = load(AFFINE3_JSON).table;
    assert!(f.is_associative());
    let Err(AxiomViolation::Symmetry {
        tuple,
        swapped,
        left,
        right,
    }) = f.check_symmetric()
    else {
        panic!("x - y + z is not symmetric");
    };
    assert_eq!((tuple, swapped, left, right), (vec![0, 1, 0], vec![1, 0, 0], 2, 1));
}

#[test]
fn neutral_elements() {
    let xor = load(XOR3_JSON).table;
    assert_eq!(xor.neutral_elements(), vec![0, 1]);
    assert!(f1().neutral_elements().is_empty());
    let add3 = OpTable::from_fn(3, 3, |t| t.iter().sum::<usize>() % 3).unwrap();
    assert_eq!(add3.neutral_elements(), vec![0]);
    assert!(add3.check_idempotent().is_err());
}
