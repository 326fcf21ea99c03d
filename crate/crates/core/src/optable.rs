//! Dense tables of finite n-ary operations.
//!
//! An [`OpTable`] stores every value of an operation `F: X^n -> X` on the
//! carrier `X = {0, ..., m-1}`. Tuples are laid out in lexicographic order
//! with the first coordinate most significant, so `F(x_1, ..., x_n)` lives at
//! index `sum_i x_i * m^(n-i)`.

use std::cmp::Ordering;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{AxiomViolation, Error, Result};
use crate::Budget;

/// Bijection between n-tuples over `{0, ..., m-1}` and flat indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleCodec {
    size: usize,
    arity: usize,
    len: usize,
}

impl TupleCodec {
    pub fn new(size: usize, arity: usize) -> Option<Self> {
        let len = checked_pow(size, arity)?;
        Some(TupleCodec { size, arity, len })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of tuples, `m^n`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &x| acc * self.size + x)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.arity];
        for slot in tuple.iter_mut().rev() {
            *slot = index % self.size;
            index /= self.size;
        }
        tuple
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Advances `tuple` to its lexicographic successor over `{0, ..., size-1}`.
/// Returns `false` after the last tuple (and resets it to all zeros).
pub fn next_tuple(tuple: &mut [usize], size: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < size {
            return true;
        }
        *slot = 0;
    }
    false
}

/// A finite n-ary operation given by its full value table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpTable {
    arity: usize,
    size: usize,
    values: Vec<u16>,
}

impl OpTable {
    /// Builds a table, validating the length and range of `values`.
    pub fn new(arity: usize, size: usize, values: Vec<usize>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Input(format!("arity must be at least 2, got {arity}")));
        }
        if size == 0 {
            return Err(Error::Input("the carrier must be nonempty".into()));
        }
        if size > u16::MAX as usize + 1 {
            return Err(Error::Input(format!("carrier of size {size} is too large")));
        }
        let codec =
            TupleCodec::new(size, arity).ok_or_else(|| Error::Input(format!("{size}^{arity} cells overflow")))?;
        if values.len() != codec.len() {
            return Err(Error::Input(format!(
                "expected {} values for arity {arity} on {size} elements, got {}",
                codec.len(),
                values.len()
            )));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, &v)| v >= size) {
            return Err(Error::Input(format!(
                "value {v} at position {i} is not an element of a {size}-element carrier"
            )));
        }
        Ok(OpTable {
            arity,
            size,
            values: values.into_iter().map(|v| v as u16).collect(),
        })
    }

    /// Tabulates `f` over every tuple, in lexicographic order.
    pub fn from_fn(arity: usize, size: usize, mut f: impl FnMut(&[usize]) -> usize) -> Result<Self> {
        let codec =
            TupleCodec::new(size, arity).ok_or_else(|| Error::Input(format!("{size}^{arity} cells overflow")))?;
        let mut values = Vec::with_capacity(codec.len());
        let mut tuple = vec![0; arity];
        loop {
            values.push(f(&tuple));
            if !next_tuple(&mut tuple, size) {
                break;
            }
        }
        OpTable::new(arity, size, values)
    }

    /// Tabulates a binary operation.
    pub fn binary(size: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        OpTable::from_fn(2, size, |t| f(t[0], t[1]))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn values(&self) -> &[u16] {
        &self.values
    }

    pub fn codec(&self) -> TupleCodec {
        TupleCodec {
            size: self.size,
            arity: self.arity,
            len: self.values.len(),
        }
    }

    /// Checked evaluation.
    pub fn eval(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.arity {
            return Err(Error::Input(format!(
                "expected a tuple of length {}, got {}",
                self.arity,
                tuple.len()
            )));
        }
        if let Some(&x) = tuple.iter().find(|&&x| x >= self.size) {
            return Err(Error::Input(format!(
                "element {x} is outside the carrier of size {}",
                self.size
            )));
        }
        Ok(self.get(tuple))
    }

    /// Unchecked evaluation; callers guarantee the tuple is in range.
    #[inline]
    pub fn get(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        let idx = tuple.iter().fold(0, |acc, &x| acc * self.size + x);
        self.values[idx] as usize
    }

    /// Value at a flat index.
    #[inline]
    pub fn at(&self, index: usize) -> usize {
        self.values[index] as usize
    }

    /// Shorthand for binary tables.
    #[inline]
    pub fn get2(&self, x: usize, y: usize) -> usize {
        debug_assert_eq!(self.arity, 2);
        self.values[x * self.size + y] as usize
    }

    /// `F(x, ..., x)`.
    pub fn diagonal(&self, x: usize) -> usize {
        let step: usize = (0..self.arity).fold(0, |acc, _| acc * self.size + 1);
        self.values[x * step] as usize
    }

    pub fn check_idempotent(&self) -> Result<(), AxiomViolation> {
        match (0..self.size).find(|&x| self.diagonal(x) != x) {
            None => Ok(()),
            Some(x) => Err(AxiomViolation::Idempotency {
                element: x,
                value: self.diagonal(x),
            }),
        }
    }

    /// Checks invariance under adjacent transpositions. The witness is the
    /// first failure when scanning transposition positions left to right,
    /// and for each position all tuples in lexicographic order.
    pub fn check_symmetric(&self) -> Result<(), AxiomViolation> {
        let m = self.size;
        let n = self.arity;
        for j in 0..n - 1 {
            let mut tuple = vec![0; n];
            loop {
                if tuple[j] != tuple[j + 1] {
                    let left = self.get(&tuple);
                    let mut swapped = tuple.clone();
                    swapped.swap(j, j + 1);
                    let right = self.get(&swapped);
                    if left != right {
                        return Err(AxiomViolation::Symmetry {
                            tuple,
                            swapped,
                            left,
                            right,
                        });
                    }
                }
                if !next_tuple(&mut tuple, m) {
                    break;
                }
            }
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_symmetric().is_ok()
    }

    pub fn is_idempotent(&self) -> bool {
        self.check_idempotent().is_ok()
    }

    pub fn is_associative(&self) -> bool {
        self.check_associative().is_ok()
    }

    /// Checks generalized associativity for every `(2n-1)`-tuple and every
    /// bracket position. On failure the witness is the lexicographically
    /// first `(tuple, position)` pair.
    ///
    /// Symmetric tables take a shortcut: only the first two bracket
    /// positions need comparing. A failure always falls back to the full
    /// scan, so the witness does not depend on which path ran.
    pub fn check_associative(&self) -> Result<(), AxiomViolation> {
        if self.is_symmetric() && self.associative_first_position() {
            return Ok(());
        }
        match self.first_associativity_violation() {
            None => Ok(()),
            Some(v) => Err(v),
        }
    }

    /// Compares only bracket positions 1 and 2 over all tuples. Equivalent to
    /// full associativity when the table is symmetric.
    pub fn associative_first_position(&self) -> bool {
        let m = self.size;
        let n = self.arity;
        (0..m).into_par_iter().all(|head| {
            let mut tuple = vec![0; 2 * n - 1];
            tuple[0] = head;
            let mut inner = vec![0; n];
            loop {
                if self.bracket(&tuple, 0, &mut inner) != self.bracket(&tuple, 1, &mut inner) {
                    return false;
                }
                if !next_tuple(&mut tuple[1..], m) {
                    return true;
                }
            }
        })
    }

    /// Full scan over all positions, lexicographic-first witness.
    pub fn first_associativity_violation(&self) -> Option<AxiomViolation> {
        let m = self.size;
        let n = self.arity;
        (0..m).into_par_iter().find_map_first(|head| {
            let mut tuple = vec![0; 2 * n - 1];
            tuple[0] = head;
            let mut inner = vec![0; n];
            let mut brackets = vec![0; n];
            loop {
                for (offset, slot) in brackets.iter_mut().enumerate() {
                    *slot = self.bracket(&tuple, offset, &mut inner);
                }
                if let Some(i) = (0..n - 1).find(|&i| brackets[i] != brackets[i + 1]) {
                    return Some(AxiomViolation::Associativity {
                        tuple,
                        position: i + 1,
                        left: brackets[i],
                        right: brackets[i + 1],
                    });
                }
                if !next_tuple(&mut tuple[1..], m) {
                    return None;
                }
            }
        })
    }

    /// The first bracket position at which `tuple` (length `2n - 1`)
    /// violates associativity, if any.
    pub fn associativity_violation_at(&self, tuple: &[usize]) -> Result<Option<AxiomViolation>> {
        let n = self.arity;
        if tuple.len() != 2 * n - 1 || tuple.iter().any(|&x| x >= self.size) {
            return Err(Error::Input(format!(
                "expected {} elements below {}, got {tuple:?}",
                2 * n - 1,
                self.size
            )));
        }
        let mut inner = vec![0; n];
        let brackets: Vec<usize> = (0..n).map(|k| self.bracket(tuple, k, &mut inner)).collect();
        Ok((0..n - 1)
            .find(|&i| brackets[i] != brackets[i + 1])
            .map(|i| AxiomViolation::Associativity {
                tuple: tuple.to_vec(),
                position: i + 1,
                left: brackets[i],
                right: brackets[i + 1],
            }))
    }

    /// `F(x_1, ..., F(x_{k+1}, ..., x_{k+n}), ..., x_{2n-1})` with a 0-based
    /// bracket offset `k`.
    fn bracket(&self, tuple: &[usize], offset: usize, scratch: &mut [usize]) -> usize {
        let n = self.arity;
        let innerv = self.get(&tuple[offset..offset + n]);
        scratch[..offset].copy_from_slice(&tuple[..offset]);
        scratch[offset] = innerv;
        scratch[offset + 1..].copy_from_slice(&tuple[offset + n..]);
        self.get(scratch)
    }

    /// All three band axioms, reporting the first failure in the order
    /// idempotency, symmetry, associativity.
    pub fn check_symmetric_band(&self) -> Result<(), AxiomViolation> {
        self.check_idempotent()?;
        self.check_symmetric()?;
        self.check_associative()
    }

    /// The `(qn - q + 1)`-ary operation obtained by right-nested iteration.
    pub fn extend(&self, q: usize) -> Result<OpTable> {
        self.extend_with_budget(q, &Budget::default())
    }

    pub fn extend_with_budget(&self, q: usize, budget: &Budget) -> Result<OpTable> {
        if q == 0 {
            return Err(Error::Input("extension order q must be at least 1".into()));
        }
        let m = self.size;
        let n = self.arity;
        let target_arity = (n - 1)
            .checked_mul(q)
            .and_then(|a| a.checked_add(1))
            .ok_or_else(|| Error::Input("extension arity overflows".into()))?;
        let cells = checked_pow(m, target_arity);
        match cells {
            Some(c) if (c as u64) <= budget.max_cells => {}
            _ => {
                return Err(Error::Resource {
                    what: "extension table",
                    needed: format!("{m}^{target_arity} cells"),
                    budget: format!("{} cells", budget.max_cells),
                })
            }
        }
        let block = self.values.len();
        let mut current = self.values.clone();
        for _ in 1..q {
            // F^q(p, y_1..y_n) = F^{q-1}(p, F(y_1..y_n)), p a prefix of F^{q-1}'s
            // first arguments.
            let prefixes = current.len() / m;
            let mut next = Vec::with_capacity(prefixes * block);
            for p in 0..prefixes {
                let base = p * m;
                next.extend(self.values.iter().map(|&y| current[base + y as usize]));
            }
            current = next;
        }
        Ok(OpTable {
            arity: target_arity,
            size: m,
            values: current,
        })
    }

    /// Elements `e` with `F((k-1)*e, x, (n-k)*e) = x` for every `x` and `k`.
    pub fn neutral_elements(&self) -> Vec<usize> {
        let n = self.arity;
        (0..self.size)
            .filter(|&e| {
                let mut tuple = vec![e; n];
                (0..n).all(|k| {
                    (0..self.size).all(|x| {
                        tuple[k] = x;
                        let ok = self.get(&tuple) == x;
                        tuple[k] = e;
                        ok
                    })
                })
            })
            .collect()
    }

    /// The table transported along the bijection `perm`:
    /// `result(perm x_1, ..., perm x_n) = perm(F(x_1, ..., x_n))`.
    pub fn relabel(&self, perm: &[usize]) -> Result<OpTable> {
        check_permutation(perm, self.size)?;
        let codec = self.codec();
        let mut values = vec![0u16; self.values.len()];
        let mut tuple = vec![0; self.arity];
        let mut image = vec![0; self.arity];
        for &v in &self.values {
            for (dst, &x) in image.iter_mut().zip(&tuple) {
                *dst = perm[x];
            }
            values[codec.encode(&image)] = perm[v as usize] as u16;
            next_tuple(&mut tuple, self.size);
        }
        Ok(OpTable {
            arity: self.arity,
            size: self.size,
            values,
        })
    }

    /// Lexicographically least relabeling. Two tables are isomorphic iff
    /// their canonical forms are equal.
    pub fn canonical_form(&self) -> Result<OpTable> {
        self.canonical_form_with_budget(&Budget::default())
    }

    pub fn canonical_form_with_budget(&self, budget: &Budget) -> Result<OpTable> {
        let m = self.size;
        if m > budget.max_relabel_size {
            return Err(Error::Resource {
                what: "canonical form",
                needed: format!("{m}! relabelings"),
                budget: format!("carriers of at most {} elements", budget.max_relabel_size),
            });
        }
        let n = self.arity;
        let mut best = self.values.clone();
        let mut inverse = vec![0; m];
        let mut source = vec![0; n];
        for perm in (0..m).permutations(m) {
            for (x, &px) in perm.iter().enumerate() {
                inverse[px] = x;
            }
            // Walk target tuples y in lexicographic order; the value at y is
            // perm(F(inverse y)).
            let mut target = vec![0; n];
            let mut state = Ordering::Equal;
            for slot in best.iter_mut() {
                for (s, &y) in source.iter_mut().zip(&target) {
                    *s = inverse[y];
                }
                let v = perm[self.get(&source)] as u16;
                match state {
                    Ordering::Equal => match v.cmp(slot) {
                        Ordering::Less => {
                            state = Ordering::Less;
                            *slot = v;
                        }
                        Ordering::Greater => break,
                        Ordering::Equal => {}
                    },
                    Ordering::Less => *slot = v,
                    Ordering::Greater => unreachable!(),
                }
                next_tuple(&mut target, m);
            }
        }
        Ok(OpTable {
            arity: n,
            size: m,
            values: best,
        })
    }

    pub fn is_isomorphic(&self, other: &OpTable) -> Result<bool> {
        if self.arity != other.arity || self.size != other.size {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    /// Restriction to a subset closed under the operation, with members
    /// renumbered by their position in `members`.
    pub fn restrict(&self, members: &[usize]) -> Result<OpTable> {
        let mut position = vec![usize::MAX; self.size];
        for (i, &x) in members.iter().enumerate() {
            position[x] = i;
        }
        let mut global = vec![0; self.arity];
        let mut failure = None;
        let table = OpTable::from_fn(self.arity, members.len(), |t| {
            for (g, &i) in global.iter_mut().zip(t) {
                *g = members[i];
            }
            let v = self.get(&global);
            if position[v] == usize::MAX {
                failure.get_or_insert(v);
                0
            } else {
                position[v]
            }
        })?;
        match failure {
            None => Ok(table),
            Some(v) => Err(Error::Consistency(format!(
                "subset {members:?} is not closed: it produces {v}"
            ))),
        }
    }
}

pub(crate) fn check_permutation(perm: &[usize], size: usize) -> Result<()> {
    if perm.len() != size {
        return Err(Error::Input(format!(
            "permutation has length {}, expected {size}",
            perm.len()
        )));
    }
    let mut seen = vec![false; size];
    for &p in perm {
        if p >= size || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Input(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ternary(size: usize, f: impl Fn(usize, usize, usize) -> usize) -> OpTable {
        OpTable::from_fn(3, size, |t| f(t[0], t[1], t[2])).unwrap()
    }

    #[test]
    fn codec_layout_is_big_endian() {
        let c = TupleCodec::new(3, 3).unwrap();
        assert_eq!(c.encode(&[1, 2, 0]), 9 + 6);
        assert_eq!(c.decode(15), vec![1, 2, 0]);
        assert_eq!(c.len(), 27);
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(matches!(OpTable::new(3, 2, vec![0; 7]), Err(Error::Input(_))));
        assert!(matches!(OpTable::new(2, 2, vec![0, 1, 2, 0]), Err(Error::Input(_))));
        assert!(matches!(OpTable::new(1, 2, vec![0, 1]), Err(Error::Input(_))));
        assert!(matches!(OpTable::new(2, 0, vec![]), Err(Error::Input(_))));
    }

    #[test]
    fn eval_checks_tuple() {
        let t = ternary(2, |x, y, z| x.min(y).min(z));
        assert_eq!(t.eval(&[1, 1, 1]).unwrap(), 1);
        assert!(t.eval(&[1, 1]).is_err());
        assert!(t.eval(&[1, 2, 0]).is_err());
    }

    #[test]
    fn affine_table_is_associative_but_not_symmetric() {
        let t = ternary(3, |x, y, z| (x + 3 - y + z) % 3);
        assert!(t.check_associative().is_ok());
        assert_eq!(
            t.check_symmetric(),
            Err(AxiomViolation::Symmetry {
                tuple: vec![0, 1, 0],
                swapped: vec![1, 0, 0],
                left: 2,
                right: 1
            })
        );
    }

    #[test]
    fn idempotency_witness() {
        assert!(ternary(2, |x, y, z| (x + y + z) % 2).check_idempotent().is_ok());
        assert_eq!(
            ternary(3, |x, y, z| (x + y + z) % 3).check_idempotent(),
            Err(AxiomViolation::Idempotency { element: 1, value: 0 })
        );
    }

    #[test]
    fn extension_of_binary_operations() {
        let xor = OpTable::binary(2, |x, y| x ^ y).unwrap();
        assert_eq!(xor.extend(2).unwrap(), ternary(2, |x, y, z| x ^ y ^ z));
        let min = OpTable::binary(2, |x, y| x.min(y)).unwrap();
        assert_eq!(min.extend(2).unwrap(), ternary(2, |x, y, z| x.min(y).min(z)));
        assert_eq!(min.extend(1).unwrap(), min);
        assert_eq!(min.extend(4).unwrap().arity(), 5);
    }

    #[test]
    fn extension_respects_budget() {
        let min = OpTable::binary(2, |x, y| x.min(y)).unwrap();
        let tight = Budget {
            max_cells: 8,
            ..Budget::default()
        };
        assert!(min.extend_with_budget(2, &tight).is_ok());
        assert!(matches!(min.extend_with_budget(3, &tight), Err(Error::Resource { .. })));
        assert!(min.extend(0).is_err());
    }

    #[test]
    fn neutral_elements_of_small_tables() {
        assert_eq!(ternary(2, |x, y, z| x ^ y ^ z).neutral_elements(), vec![0, 1]);
        assert_eq!(ternary(2, |x, y, z| x.min(y).min(z)).neutral_elements(), vec![1]);
    }

    #[test]
    fn relabel_swaps_min_and_max() {
        let min = ternary(2, |x, y, z| x.min(y).min(z));
        let max = ternary(2, |x, y, z| x.max(y).max(z));
        assert_eq!(min.relabel(&[1, 0]).unwrap(), max);
        assert_eq!(min.relabel(&[0, 1]).unwrap(), min);
        assert!(min.relabel(&[0, 0]).is_err());
        assert_eq!(min.canonical_form().unwrap(), max.canonical_form().unwrap());
    }

    #[test]
    fn canonical_form_budget() {
        let t = OpTable::binary(3, |x, y| x.max(y)).unwrap();
        let tight = Budget {
            max_relabel_size: 2,
            ..Budget::default()
        };
        assert!(matches!(
            t.canonical_form_with_budget(&tight),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn restriction_requires_closure() {
        let t = ternary(3, |x, y, z| x.max(y).max(z));
        assert_eq!(t.restrict(&[0, 2]).unwrap(), ternary(2, |x, y, z| x.max(y).max(z)));
        let xor = ternary(2, |x, y, z| x ^ y ^ z);
        assert!(xor.restrict(&[1]).is_ok());
        let sum = ternary(3, |x, y, z| (x + y + z) % 3);
        assert!(sum.restrict(&[1]).is_err());
    }
}
