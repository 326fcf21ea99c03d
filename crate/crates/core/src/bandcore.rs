//! The binary band `B(x, y) = F((n-1)*x, y)` attached to a symmetric n-ary
//! band, its left translations `λ_x = B(x, -)`, and the least semilattice
//! congruence `σ`, under which `x σ y` iff `λ_x = λ_y`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optable::{next_tuple, OpTable};

/// An [`OpTable`] known to be associative, symmetric and idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricBand {
    table: OpTable,
}

impl SymmetricBand {
    pub fn new(table: OpTable) -> Result<Self> {
        table.check_symmetric_band()?;
        Ok(SymmetricBand { table })
    }

    /// Skips the axiom checks. Later consistency checks still catch most
    /// tables that are not bands.
    pub fn new_unchecked(table: OpTable) -> Self {
        SymmetricBand { table }
    }

    pub fn table(&self) -> &OpTable {
        &self.table
    }

    pub fn into_table(self) -> OpTable {
        self.table
    }

    pub fn arity(&self) -> usize {
        self.table.arity()
    }

    pub fn size(&self) -> usize {
        self.table.size()
    }

    pub fn associated_band(&self) -> OpTable {
        let n = self.arity();
        let mut tuple = vec![0; n];
        OpTable::binary(self.size(), |x, y| {
            tuple[..n - 1].fill(x);
            tuple[n - 1] = y;
            self.table.get(&tuple)
        })
        .expect("binary table over the same carrier")
    }

    pub fn lambda_table(&self) -> LambdaTable {
        LambdaTable::from_band(&self.associated_band())
    }

    pub fn sigma_partition(&self) -> SigmaPartition {
        self.lambda_table().sigma_partition()
    }

    /// The operations induced on σ-classes. Fails if some class value
    /// depends on the chosen representatives.
    pub fn quotient(&self, partition: &SigmaPartition) -> Result<Quotient> {
        let n = self.arity();
        let classes = partition.num_classes();
        let mut induced = vec![usize::MAX; crate::optable::checked_pow(classes, n).unwrap_or(0)];
        let codec = crate::optable::TupleCodec::new(classes, n)
            .ok_or_else(|| Error::Input("quotient table too large".into()))?;
        let mut tuple = vec![0; n];
        let mut class_tuple = vec![0; n];
        for &v in self.table.values() {
            for (c, &x) in class_tuple.iter_mut().zip(&tuple) {
                *c = partition.class_of(x);
            }
            let idx = codec.encode(&class_tuple);
            let value = partition.class_of(v as usize);
            if induced[idx] == usize::MAX {
                induced[idx] = value;
            } else if induced[idx] != value {
                return Err(Error::Consistency(format!(
                    "partition is not a congruence: tuple {tuple:?} lands in class {value}, \
                     another representative tuple in class {}",
                    induced[idx]
                )));
            }
            next_tuple(&mut tuple, self.size());
        }
        let f_sigma = OpTable::new(n, classes, induced)?;
        let b = self.associated_band();
        let mut b_cells = vec![usize::MAX; classes * classes];
        for x in 0..self.size() {
            for y in 0..self.size() {
                let cell = &mut b_cells[partition.class_of(x) * classes + partition.class_of(y)];
                let value = partition.class_of(b.get2(x, y));
                if *cell != usize::MAX && *cell != value {
                    return Err(Error::Consistency(format!(
                        "partition is not a congruence for the binary band at ({x},{y})"
                    )));
                }
                *cell = value;
            }
        }
        let b_sigma = OpTable::new(2, classes, b_cells)?;
        if SymmetricBand::new_unchecked(f_sigma.clone()).associated_band() != b_sigma {
            return Err(Error::Consistency(
                "binary band of the quotient differs from the quotient of the binary band".into(),
            ));
        }
        let semilattice = QuotientSemilattice::from_meet(&b_sigma)
            .map_err(|e| Error::Consistency(format!("quotient is not a semilattice: {e}")))?;
        if b_sigma.extend(n - 1)? != f_sigma {
            return Err(Error::Consistency(
                "quotient operation is not the extension of its binary band".into(),
            ));
        }
        Ok(Quotient {
            f_sigma,
            b_sigma,
            semilattice,
        })
    }

    pub fn classify(&self) -> Classification {
        self.lambda_table().classify()
    }
}

pub fn associated_band(f: &OpTable) -> Result<OpTable> {
    Ok(SymmetricBand::new(f.clone())?.associated_band())
}

pub fn lambda_table(f: &OpTable) -> Result<LambdaTable> {
    Ok(SymmetricBand::new(f.clone())?.lambda_table())
}

pub fn sigma_partition(f: &OpTable) -> Result<SigmaPartition> {
    Ok(SymmetricBand::new(f.clone())?.sigma_partition())
}

pub fn classify(f: &OpTable) -> Result<Classification> {
    Ok(SymmetricBand::new(f.clone())?.classify())
}

/// Rows `λ_x(y) = B(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaTable {
    size: usize,
    rows: Vec<usize>,
}

impl LambdaTable {
    pub fn from_band(b: &OpTable) -> Self {
        assert_eq!(b.arity(), 2, "λ rows come from a binary table");
        LambdaTable {
            size: b.size(),
            rows: b.values().iter().map(|&v| v as usize).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.rows[x * self.size..(x + 1) * self.size]
    }

    pub fn apply(&self, x: usize, y: usize) -> usize {
        self.rows[x * self.size + y]
    }

    /// `λ_x ∘ λ_y` as a function table.
    pub fn compose(&self, x: usize, y: usize) -> Vec<usize> {
        self.row(y).iter().map(|&z| self.apply(x, z)).collect()
    }

    pub fn is_identity(&self, x: usize) -> bool {
        self.row(x).iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Groups elements with identical rows; classes ordered by least member.
    pub fn sigma_partition(&self) -> SigmaPartition {
        let mut by_row: HashMap<&[usize], usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(self.size);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.size {
            let next = classes.len();
            let c = *by_row.entry(self.row(x)).or_insert(next);
            if c == next {
                classes.push(Vec::new());
            }
            classes[c].push(x);
            class_of.push(c);
        }
        SigmaPartition { class_of, classes }
    }

    pub fn classify(&self) -> Classification {
        if (0..self.size).all(|x| self.is_identity(x)) {
            Classification::GroupExtension
        } else if self.sigma_partition().num_classes() == self.size {
            Classification::SemilatticeExtension
        } else {
            Classification::General
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// All λ rows distinct: the n-ary extension of the semilattice `B`.
    SemilatticeExtension,
    /// Every λ row is the identity: the n-ary extension of an Abelian group.
    GroupExtension,
    General,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::SemilatticeExtension => "semilattice extension",
            Classification::GroupExtension => "group extension",
            Classification::General => "general",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RightNormalDefect {
    NotBinary,
    Idempotency { x: usize },
    Associativity { x: usize, y: usize, z: usize },
    RightNormality { x: usize, y: usize, z: usize },
}

impl fmt::Display for RightNormalDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RightNormalDefect::NotBinary => f.write_str("table is not binary"),
            RightNormalDefect::Idempotency { x } => write!(f, "B({x},{x}) != {x}"),
            RightNormalDefect::Associativity { x, y, z } => {
                write!(f, "B(B({x},{y}),{z}) != B({x},B({y},{z}))")
            }
            RightNormalDefect::RightNormality { x, y, z } => {
                write!(f, "B(B({x},{y}),{z}) != B(B({y},{x}),{z})")
            }
        }
    }
}

/// Idempotent, associative and `B(B(x,y),z) = B(B(y,x),z)`.
pub fn check_right_normal(b: &OpTable) -> Result<(), RightNormalDefect> {
    if b.arity() != 2 {
        return Err(RightNormalDefect::NotBinary);
    }
    let m = b.size();
    if let Some(x) = (0..m).find(|&x| b.get2(x, x) != x) {
        return Err(RightNormalDefect::Idempotency { x });
    }
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                if b.get2(b.get2(x, y), z) != b.get2(x, b.get2(y, z)) {
                    return Err(RightNormalDefect::Associativity { x, y, z });
                }
            }
        }
    }
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                if b.get2(b.get2(x, y), z) != b.get2(b.get2(y, x), z) {
                    return Err(RightNormalDefect::RightNormality { x, y, z });
                }
            }
        }
    }
    Ok(())
}

/// Least semilattice congruence of an arbitrary band:
/// `B(B(x,y),x) = x` and `B(B(y,x),y) = y`.
pub fn band_congruence_relates(b: &OpTable, x: usize, y: usize) -> bool {
    b.get2(b.get2(x, y), x) == x && b.get2(b.get2(y, x), y) == y
}

/// The same congruence for right normal bands: `B(y,x) = x` and `B(x,y) = y`.
pub fn right_normal_congruence_relates(b: &OpTable, x: usize, y: usize) -> bool {
    b.get2(y, x) == x && b.get2(x, y) == y
}

/// σ-classes, ordered by least member, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl SigmaPartition {
    /// Builds a partition from explicit classes, normalizing the order.
    pub fn from_classes(size: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut classes: Vec<Vec<usize>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        if classes.iter().any(|c| c.is_empty()) {
            return Err(Error::Input("empty class in partition".into()));
        }
        classes.sort_by_key(|c| c[0]);
        let mut class_of = vec![usize::MAX; size];
        for (i, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= size || class_of[x] != usize::MAX {
                    return Err(Error::Input(format!("element {x} is out of range or in two classes")));
                }
                class_of[x] = i;
            }
        }
        if let Some(x) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Input(format!("element {x} is in no class")));
        }
        Ok(SigmaPartition { class_of, classes })
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.classes[class]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }
}

/// A finite meet-semilattice on class indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSemilattice {
    size: usize,
    meet: Vec<usize>,
}

impl QuotientSemilattice {
    /// Validates a commutative, idempotent, associative binary table.
    pub fn from_meet(table: &OpTable) -> Result<Self, String> {
        if table.arity() != 2 {
            return Err("meet table must be binary".into());
        }
        let c = table.size();
        let meet: Vec<usize> = table.values().iter().map(|&v| v as usize).collect();
        let at = |a: usize, b: usize| meet[a * c + b];
        for a in 0..c {
            if at(a, a) != a {
                return Err(format!("meet is not idempotent at {a}"));
            }
            for b in 0..c {
                if at(a, b) != at(b, a) {
                    return Err(format!("meet is not commutative at ({a},{b})"));
                }
                for d in 0..c {
                    if at(at(a, b), d) != at(a, at(b, d)) {
                        return Err(format!("meet is not associative at ({a},{b},{d})"));
                    }
                }
            }
        }
        Ok(QuotientSemilattice { size: c, meet })
    }

    /// Wraps a square table of class indices without checking the laws.
    pub(crate) fn from_meet_unchecked(size: usize, meet: Vec<usize>) -> Self {
        QuotientSemilattice { size, meet }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn meet_all(&self, classes: impl IntoIterator<Item = usize>) -> Option<usize> {
        classes.into_iter().reduce(|a, b| self.meet(a, b))
    }

    /// `b ≤ a`, i.e. `a ∧ b = b`.
    pub fn geq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == b
    }

    pub fn table(&self) -> OpTable {
        OpTable::new(2, self.size, self.meet.clone()).expect("validated meet table")
    }

    /// Comparable pairs `(a, b)` with `a ≥ b`, including `a = b`, sorted.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .flat_map(|a| (0..self.size).map(move |b| (a, b)))
            .filter(|&(a, b)| self.geq(a, b))
            .collect()
    }

    /// Classes strictly above `b`.
    pub fn strictly_above(&self, b: usize) -> Vec<usize> {
        (0..self.size).filter(|&a| a != b && self.geq(a, b)).collect()
    }

    /// Classes `b` with `a ≥ b`, including `a`.
    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.size).filter(|&b| self.geq(a, b)).collect()
    }

    /// Classes covering `b`: strictly above with nothing in between.
    pub fn covers(&self, b: usize) -> Vec<usize> {
        let above = self.strictly_above(b);
        above
            .iter()
            .copied()
            .filter(|&a| !above.iter().any(|&d| d != a && self.geq(a, d)))
            .collect()
    }

    /// Maximal classes come first; whenever `a > b`, `a` precedes `b`.
    pub fn top_down_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&a| (self.strictly_above(a).len(), a));
        order
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.strictly_above(a).is_empty()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub f_sigma: OpTable,
    pub b_sigma: OpTable,
    pub semilattice: QuotientSemilattice,
}
