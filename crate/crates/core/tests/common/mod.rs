#![allow(dead_code)]

use itertools::Itertools;
use symband::bandcore::{band_congruence_relates, check_right_normal, right_normal_congruence_relates};
use symband::io::{table_from_json, LabeledTable};
use symband::{OpTable, SymmetricBand};

pub const F1_JSON: &str = include_str!("../../fixtures/f1.json");
pub const F2_JSON: &str = include_str!("../../fixtures/f2.json");
pub const MAJORITY_JSON: &str = include_str!("../../fixtures/majority.json");
pub const MIN3_JSON: &str = include_str!("../../fixtures/min3.json");
pub const XOR3_JSON: &str = include_str!("../../fixtures/xor3.json");
pub const AFFINE3_JSON: &str = include_str!("../../fixtures/affine3.json");
pub const MALFORMED_JSON: &str = include_str!("../../fixtures/malformed.json");

pub fn load(json: &str) -> LabeledTable {
    table_from_json(json).expect("fixture parses")
}

pub fn f1() -> OpTable {
    load(F1_JSON).table
}

pub fn f2() -> OpTable {
    load(F2_JSON).table
}

/// Symmetric ternary operation on `{1,2,3,4}` given by the multisets sent to
/// 1, 2 and 3; everything else goes to 4. Returned 0-based.
fn from_level_sets(threes: &[[usize; 3]]) -> OpTable {
    let mut level: Vec<(Vec<usize>, usize)> = vec![(vec![1, 1, 1], 1), (vec![2, 2, 2], 2)];
    level.extend(threes.iter().map(|t| (t.to_vec(), 3)));
    OpTable::from_fn(3, 4, |t| {
        let mut key: Vec<usize> = t.iter().map(|x| x + 1).collect();
        key.sort_unstable();
        level.iter().find(|(k, _)| *k == key).map_or(4, |(_, v)| *v) - 1
    })
    .unwrap()
}

pub fn f1_from_level_sets() -> OpTable {
    from_level_sets(&[
        [1, 1, 2],
        [1, 1, 3],
        [1, 2, 4],
        [1, 3, 4],
        [2, 2, 3],
        [2, 3, 3],
        [2, 4, 4],
        [3, 3, 3],
        [3, 4, 4],
    ])
}

pub fn f2_from_level_sets() -> OpTable {
    from_level_sets(&[
        [1, 1, 3],
        [1, 2, 3],
        [1, 3, 4],
        [2, 2, 3],
        [2, 3, 4],
        [3, 3, 3],
        [3, 4, 4],
    ])
}

/// The associated binary bands as printed, 1-based rows.
pub const B_F1: [[usize; 4]; 4] = [[1, 3, 3, 4], [4, 2, 3, 4], [4, 3, 3, 4], [4, 3, 3, 4]];
pub const B_F2: [[usize; 4]; 4] = [[1, 4, 3, 4], [4, 2, 3, 4], [4, 4, 3, 4], [4, 4, 3, 4]];

pub fn one_based_binary(rows: &[[usize; 4]; 4]) -> OpTable {
    OpTable::binary(4, |x, y| rows[x][y] - 1).unwrap()
}

/// Every tuple of length `len` over `{0, ..., size-1}`, lexicographic.
pub fn tuples(size: usize, len: usize) -> Vec<Vec<usize>> {
    (0..len).map(|_| 0..size).multi_cartesian_product().collect()
}

/// Associativity straight from the definition, no shortcuts.
pub fn naive_associative(f: &OpTable) -> bool {
    let n = f.arity();
    tuples(f.size(), 2 * n - 1).iter().all(|t| {
        let values: Vec<usize> = (0..n)
            .map(|k| {
                let mut outer = t[..k].to_vec();
                outer.push(f.get(&t[k..k + n]));
                outer.extend_from_slice(&t[k + n..]);
                f.get(&outer)
            })
            .collect();
        values.iter().all(|&v| v == values[0])
    })
}

pub fn naive_symmetric(f: &OpTable) -> bool {
    tuples(f.size(), f.arity()).iter().all(|t| {
        let mut s = t.clone();
        s.sort_unstable();
        f.get(t) == f.get(&s)
    })
}

/// Right-nested `G(...G(G(x_1, x_2), x_3)..., x_n)`.
pub fn right_nested(g: &OpTable, t: &[usize]) -> usize {
    t[1..].iter().fold(t[0], |acc, &x| g.get2(acc, x))
}

/// All maps `h` with `h(F(x_1..x_n)) = F'(h(x_1)..h(x_n))`, sorted.
pub fn naive_homs(source: &OpTable, target: &OpTable) -> Vec<Vec<usize>> {
    let n = source.arity();
    let all = tuples(source.size(), n);
    tuples(target.size(), source.size())
        .into_iter()
        .filter(|h| {
            all.iter().all(|t| {
                let image: Vec<usize> = t.iter().map(|&x| h[x]).collect();
                h[source.get(t)] == target.get(&image)
            })
        })
        .collect()
}

/// Lexicographically least relabeling, by trying every permutation.
pub fn naive_canonical(f: &OpTable) -> Vec<u16> {
    (0..f.size())
        .permutations(f.size())
        .map(|p| f.relabel(&p).unwrap().values().to_vec())
        .min()
        .unwrap()
}

/// Translations, σ and the quotient, checked pointwise. Panics on the first failure.
pub fn check_laws(band: &SymmetricBand) {
    let f = band.table();
    let n = f.arity();
    let m = f.size();
    let b = band.associated_band();
    assert!(check_right_normal(&b).is_ok());
    let lambda = band.lambda_table();
    let all = tuples(m, n);
    for x in 0..m {
        for t in &all {
            let v = lambda.apply(x, f.get(t));
            for i in 0..n {
                let mut u = t.clone();
                u[i] = lambda.apply(x, u[i]);
                assert_eq!(f.get(&u), v, "translation by {x} is not an endomorphism");
            }
        }
    }
    for t in &all {
        let composite = t.iter().rev().fold((0..m).collect::<Vec<_>>(), |acc, &x| {
            acc.iter().map(|&y| lambda.apply(x, y)).collect()
        });
        assert_eq!(lambda.row(f.get(t)), composite.as_slice());
    }
    let p = band.sigma_partition();
    for t in &all {
        for i in 0..n {
            for &y in p.members(p.class_of(t[i])) {
                let mut u = t.clone();
                u[i] = y;
                assert_eq!(p.class_of(f.get(&u)), p.class_of(f.get(t)), "σ is not a congruence");
            }
        }
    }
    for x in 0..m {
        for y in 0..m {
            let same = p.class_of(x) == p.class_of(y);
            assert_eq!(band_congruence_relates(&b, x, y), same);
            assert_eq!(right_normal_congruence_relates(&b, x, y), same);
        }
    }
    // quotient re-derives B^σ from B and compares it with B of F^σ
    let q = band.quotient(&p).unwrap();
    let b_of_quotient = SymmetricBand::new(q.f_sigma.clone()).unwrap().associated_band();
    assert_eq!(b_of_quotient, q.b_sigma);
}
