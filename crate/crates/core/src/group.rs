//! Finite Abelian groups given by Cayley tables over `{0, ..., k-1}`.

use std::collections::VecDeque;
use std::fmt;

use crate::optable::{next_tuple, OpTable};

/// Why a table is not an Abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDefect {
    Shape { expected: usize, got: usize },
    OutOfRange { a: usize, b: usize, value: usize },
    NotIdentity { identity: usize, witness: usize },
    NoInverse { element: usize },
    NotCommutative { a: usize, b: usize },
    NotAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for GroupDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDefect::Shape { expected, got } => {
                write!(f, "table has {got} cells, expected {expected}")
            }
            GroupDefect::OutOfRange { a, b, value } => {
                write!(f, "{a}*{b} = {value} leaves the group")
            }
            GroupDefect::NotIdentity { identity, witness } => {
                write!(f, "{identity} is not an identity ({identity}*{witness} != {witness})")
            }
            GroupDefect::NoInverse { element } => write!(f, "{element} has no inverse"),
            GroupDefect::NotCommutative { a, b } => write!(f, "{a}*{b} != {b}*{a}"),
            GroupDefect::NotAssociative { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    order: usize,
    identity: usize,
    table: Vec<usize>,
}

impl AbelianGroup {
    /// Validates a row-major Cayley table with the given identity.
    pub fn from_table(order: usize, identity: usize, table: Vec<usize>) -> Result<Self, GroupDefect> {
        let k = order;
        if table.len() != k * k || identity >= k {
            return Err(GroupDefect::Shape {
                expected: k * k,
                got: table.len(),
            });
        }
        for a in 0..k {
            for b in 0..k {
                let v = table[a * k + b];
                if v >= k {
                    return Err(GroupDefect::OutOfRange { a, b, value: v });
                }
            }
        }
        let op = |a: usize, b: usize| table[a * k + b];
        if let Some(w) = (0..k).find(|&x| op(identity, x) != x || op(x, identity) != x) {
            return Err(GroupDefect::NotIdentity { identity, witness: w });
        }
        for a in 0..k {
            for b in a + 1..k {
                if op(a, b) != op(b, a) {
                    return Err(GroupDefect::NotCommutative { a, b });
                }
            }
        }
        if let Some(a) = (0..k).find(|&a| !(0..k).any(|b| op(a, b) == identity)) {
            return Err(GroupDefect::NoInverse { element: a });
        }
        for a in 0..k {
            for b in 0..k {
                let ab = op(a, b);
                for c in 0..k {
                    if op(ab, c) != op(a, op(b, c)) {
                        return Err(GroupDefect::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(AbelianGroup { order, identity, table })
    }

    /// Wraps a table without checking the group axioms.
    pub(crate) fn from_table_unchecked(order: usize, identity: usize, table: Vec<usize>) -> Self {
        AbelianGroup { order, identity, table }
    }

    /// `Z_{d_1} x ... x Z_{d_r}` with elements encoded mixed-radix, first
    /// factor most significant, identity `0`.
    pub fn cyclic_product(factors: &[usize]) -> Self {
        let order: usize = factors.iter().product();
        let decode = |mut x: usize| {
            let mut digits = vec![0; factors.len()];
            for (d, &f) in digits.iter_mut().zip(factors).rev() {
                *d = x % f;
                x /= f;
            }
            digits
        };
        let encode = |digits: &[usize]| digits.iter().zip(factors).fold(0, |acc, (&d, &f)| acc * f + d);
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            let da = decode(a);
            for b in 0..order {
                let db = decode(b);
                let sum: Vec<usize> = da.iter().zip(&db).zip(factors).map(|((x, y), f)| (x + y) % f).collect();
                table.push(encode(&sum));
            }
        }
        AbelianGroup {
            order,
            identity: 0,
            table,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.op(a, b) == self.identity)
            .expect("validated group has inverses")
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.op(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders; for an Abelian group
    /// this is attained by some element.
    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).max().unwrap_or(1)
    }

    /// Invariant factors `d_1 | d_2 | ... | d_r`, each greater than one.
    pub fn invariant_factors(&self) -> Vec<usize> {
        let mut factors: Vec<usize> = self.cyclic_decomposition().into_iter().map(|(_, d)| d).collect();
        factors.reverse();
        factors
    }

    /// Elements generating the whole group.
    pub fn generators(&self) -> Vec<usize> {
        self.cyclic_decomposition().into_iter().map(|(g, _)| g).collect()
    }

    /// Repeatedly picks an element of largest order modulo the subgroup
    /// generated so far. Returns `(element, order modulo previous)` pairs
    /// with non-increasing orders.
    fn cyclic_decomposition(&self) -> Vec<(usize, usize)> {
        let mut subgroup = vec![false; self.order];
        subgroup[self.identity] = true;
        let mut members = vec![self.identity];
        let mut picked = Vec::new();
        while members.len() < self.order {
            let relative_order = |a: usize| {
                let mut x = a;
                let mut k = 1;
                while !subgroup[x] {
                    x = self.op(x, a);
                    k += 1;
                }
                k
            };
            let (g, d) = (0..self.order)
                .map(|a| (a, relative_order(a)))
                .fold((self.identity, 1), |best, cur| if cur.1 > best.1 { cur } else { best });
            picked.push((g, d));
            let mut grown = members.clone();
            let mut power = g;
            for _ in 1..d {
                for &h in &members {
                    let x = self.op(h, power);
                    if !subgroup[x] {
                        subgroup[x] = true;
                        grown.push(x);
                    }
                }
                power = self.op(power, g);
            }
            members = grown;
        }
        picked
    }

    /// All group homomorphisms into `target`, each as the image vector of
    /// `0..order`, sorted lexicographically.
    pub fn homomorphisms_to(&self, target: &AbelianGroup) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut images = vec![0; gens.len()];
        let mut out = Vec::new();
        loop {
            if let Some(map) = self.extend_on_generators(&gens, &images, target) {
                out.push(map);
            }
            if gens.is_empty() || !next_tuple(&mut images, target.order) {
                break;
            }
        }
        out.sort();
        out
    }

    /// Propagates generator images along the Cayley graph; `None` when the
    /// assignment is inconsistent.
    fn extend_on_generators(&self, gens: &[usize], images: &[usize], target: &AbelianGroup) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = target.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(z) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let next = self.op(z, g);
                let value = target.op(map[z], img);
                if map[next] == usize::MAX {
                    map[next] = value;
                    queue.push_back(next);
                } else if map[next] != value {
                    return None;
                }
            }
        }
        debug_assert!(map.iter().all(|&v| v != usize::MAX));
        let hom = (0..self.order).all(|a| (0..self.order).all(|b| map[self.op(a, b)] == target.op(map[a], map[b])));
        hom.then_some(map)
    }

    /// The n-ary operation `x_1 * ... * x_n`.
    pub fn nary_extension(&self, arity: usize) -> OpTable {
        OpTable::from_fn(arity, self.order, |t| {
            t.iter().fold(self.identity, |acc, &x| self.op(acc, x))
        })
        .expect("group extension table is well formed")
    }

    /// Transport along a bijection `perm` from this group's elements.
    pub fn relabel(&self, perm: &[usize]) -> AbelianGroup {
        let k = self.order;
        let mut table = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                table[perm[a] * k + perm[b]] = perm[self.op(a, b)];
            }
        }
        AbelianGroup {
            order: k,
            identity: perm[self.identity],
            table,
        }
    }
}
