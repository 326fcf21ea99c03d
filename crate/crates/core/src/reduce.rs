//! Reducibility of a symmetric n-ary band to a binary semigroup.
//!
//! A band is reducible exactly when one element `e_α` can be chosen in each
//! σ-class so that `φ_{α,β}(e_α) = e_β` whenever `α ≥ β`. The reduction is
//! then assembled from the class groups re-based at the chosen elements.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::optable::{checked_pow, next_tuple, OpTable};
use crate::structure::{validate_system, StrongSystem};
use crate::Budget;

/// `selection[α]` is the element chosen in class `α`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NeutralSelection {
    pub selection: Vec<usize>,
}

impl NeutralSelection {
    pub fn element(&self, class: usize) -> usize {
        self.selection[class]
    }

    /// Checks membership and compatibility with every map of `s`.
    pub fn check(&self, s: &StrongSystem) -> Result<()> {
        if self.selection.len() != s.partition.num_classes() {
            return Err(Error::Input(format!(
                "selection names {} classes, the system has {}",
                self.selection.len(),
                s.partition.num_classes()
            )));
        }
        for (class, &e) in self.selection.iter().enumerate() {
            if e >= s.size() || s.partition.class_of(e) != class {
                return Err(Error::Input(format!("element {e} is not in class {class}")));
            }
        }
        for h in &s.homs {
            let e = self.selection[h.from];
            let pos = s.partition.members(h.from).iter().position(|&x| x == e).unwrap();
            if h.map[pos] != self.selection[h.to] {
                return Err(Error::Input(format!(
                    "the map from class {} to class {} sends {e} to {}, not {}",
                    h.from, h.to, h.map[pos], self.selection[h.to]
                )));
            }
        }
        Ok(())
    }
}

/// Why no selection exists: in `class`, the chosen elements of the classes
/// in `sources` force different `images`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityWitness {
    pub class: usize,
    /// Sorted, at least two elements.
    pub images: Vec<usize>,
    /// `(class, chosen element)` pairs, by class.
    pub sources: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionResult {
    Reducible {
        selection: NeutralSelection,
        table: OpTable,
    },
    Irreducible(IrreducibilityWitness),
}

impl ReductionResult {
    pub fn is_reducible(&self) -> bool {
        matches!(self, ReductionResult::Reducible { .. })
    }
}

/// Every valid selection, in lexicographic order.
pub fn all_selections(s: &StrongSystem) -> Vec<NeutralSelection> {
    let mut out = Vec::new();
    search(s, &mut |sel| out.push(sel.clone()), &mut None);
    out.sort();
    out
}

/// Decides reducibility; returns the lexicographically least selection and
/// its reduction, or the first conflict met by the search.
pub fn decide_reducible(s: &StrongSystem, arity: usize) -> Result<ReductionResult> {
    let report = validate_system(s, arity);
    if !report.is_valid() {
        return Err(Error::InvalidSystem(report));
    }
    let mut best: Option<NeutralSelection> = None;
    let mut witness = None;
    search(
        s,
        &mut |sel| {
            if best.as_ref().is_none_or(|b| sel < b) {
                best = Some(sel.clone());
            }
        },
        &mut witness,
    );
    match best {
        Some(selection) => {
            let table = build_reduction(s, &selection, arity)?;
            Ok(ReductionResult::Reducible { selection, table })
        }
        None => Ok(ReductionResult::Irreducible(
            witness.expect("a failed search records a conflict"),
        )),
    }
}

/// Depth-first assignment, maximal classes first. A class below an
/// assigned class admits only the common image of the assigned classes
/// above it.
fn search(s: &StrongSystem, found: &mut dyn FnMut(&NeutralSelection), witness: &mut Option<IrreducibilityWitness>) {
    let y = &s.semilattice;
    let order = y.top_down_order();
    let uppers: Vec<Vec<usize>> = order.iter().map(|&b| y.strictly_above(b)).collect();
    let mut chosen = vec![usize::MAX; s.partition.num_classes()];

    struct Walk<'a> {
        s: &'a StrongSystem,
        order: Vec<usize>,
        uppers: Vec<Vec<usize>>,
    }

    fn step(
        w: &Walk,
        depth: usize,
        chosen: &mut Vec<usize>,
        found: &mut dyn FnMut(&NeutralSelection),
        witness: &mut Option<IrreducibilityWitness>,
    ) {
        if depth == w.order.len() {
            found(&NeutralSelection {
                selection: chosen.clone(),
            });
            return;
        }
        let b = w.order[depth];
        let uppers = &w.uppers[depth];
        let admissible: Vec<usize> = if uppers.is_empty() {
            w.s.partition.members(b).to_vec()
        } else {
            let images: BTreeSet<usize> = uppers
                .iter()
                .map(|&a| w.s.image(chosen[a], b).expect("validated system"))
                .collect();
            if images.len() > 1 {
                witness.get_or_insert_with(|| IrreducibilityWitness {
                    class: b,
                    images: images.into_iter().collect(),
                    sources: uppers.iter().map(|&a| (a, chosen[a])).collect(),
                });
                return;
            }
            images.into_iter().collect()
        };
        for e in admissible {
            chosen[b] = e;
            step(w, depth + 1, chosen, found, witness);
        }
        chosen[b] = usize::MAX;
    }

    let walk = Walk { s, order, uppers };
    step(&walk, 0, &mut chosen, found, witness);
}

/// `G(x, y) = G_γ(φ_{α,γ}(x), φ_{β,γ}(y))` with `γ = α ∧ β` and `G_γ` the
/// class group re-based at `e_γ`: `x ∘ y = x * e_γ^{-1} * y`.
pub fn build_reduction(s: &StrongSystem, sel: &NeutralSelection, arity: usize) -> Result<OpTable> {
    let report = validate_system(s, arity);
    if !report.is_valid() {
        return Err(Error::InvalidSystem(report));
    }
    sel.check(s)?;
    let m = s.size();
    OpTable::from_fn(2, m, |t| {
        let (x, y) = (t[0], t[1]);
        let gamma = s.semilattice.meet(s.partition.class_of(x), s.partition.class_of(y));
        let g = &s.groups[gamma];
        let px = g.position(s.image(x, gamma).unwrap()).unwrap();
        let py = g.position(s.image(y, gamma).unwrap()).unwrap();
        let e_inv = g.group.inverse(g.position(sel.element(gamma)).unwrap());
        g.members[g.group.op(g.group.op(px, e_inv), py)]
    })
}

/// Outcome of checking a candidate reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    /// First tuple where the extension differs: `(tuple, expected, got)`.
    pub mismatch: Option<(Vec<usize>, usize, usize)>,
    pub associative: bool,
    pub symmetric: bool,
    pub surjective: bool,
}

impl ReductionReport {
    pub fn is_valid(&self) -> bool {
        self.mismatch.is_none() && self.associative && self.symmetric && self.surjective
    }
}

impl fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid reduction");
        }
        let mut parts = Vec::new();
        if let Some((t, expected, got)) = &self.mismatch {
            parts.push(format!("extension gives {got} at {t:?}, expected {expected}"));
        }
        for (ok, what) in [
            (self.associative, "not associative"),
            (self.symmetric, "not symmetric"),
            (self.surjective, "not surjective"),
        ] {
            if !ok {
                parts.push(what.to_string());
            }
        }
        f.write_str(&parts.join("; "))
    }
}

/// Checks `extend(G, n-1) = F` cell by cell, plus associativity, symmetry
/// and surjectivity of `G`.
pub fn verify_reduction(f: &OpTable, g: &OpTable) -> Result<ReductionReport> {
    if g.arity() != 2 || g.size() != f.size() {
        return Err(Error::Input(format!(
            "expected a binary table on {} elements, got arity {} on {}",
            f.size(),
            g.arity(),
            g.size()
        )));
    }
    let n = f.arity();
    let mut mismatch = None;
    let mut tuple = vec![0; n];
    loop {
        let got = right_nested(g, &tuple);
        let expected = f.get(&tuple);
        if got != expected {
            mismatch = Some((tuple.clone(), expected, got));
            break;
        }
        if !next_tuple(&mut tuple, f.size()) {
            break;
        }
    }
    let mut hit = vec![false; g.size()];
    for &v in g.values() {
        hit[v as usize] = true;
    }
    Ok(ReductionReport {
        mismatch,
        associative: g.is_associative(),
        symmetric: g.is_symmetric(),
        surjective: hit.iter().all(|&h| h),
    })
}

fn right_nested(g: &OpTable, tuple: &[usize]) -> usize {
    tuple[1..].iter().fold(tuple[0], |acc, &x| g.get2(acc, x))
}

/// Which binary tables the oracle scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSpace {
    /// Symmetric tables only, one value per unordered pair.
    Symmetric,
    /// Every binary table.
    General,
}

pub fn brute_force_reductions(f: &OpTable) -> Result<Vec<OpTable>> {
    brute_force_reductions_with(f, SearchSpace::Symmetric, &Budget::default())
}

/// Every binary `G` with `extend(G, n-1) = F`, sorted. Cells are filled in
/// order and a branch is cut as soon as some fully determined tuple
/// disagrees with `F`.
pub fn brute_force_reductions_with(f: &OpTable, space: SearchSpace, budget: &Budget) -> Result<Vec<OpTable>> {
    let m = f.size();
    let n = f.arity();
    let cells: Vec<(usize, usize)> = match space {
        SearchSpace::Symmetric => (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect(),
        SearchSpace::General => (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).collect(),
    };
    checked_pow(m, cells.len())
        .map(|c| c as u64)
        .filter(|&c| c <= budget.max_candidates)
        .ok_or_else(|| Error::Resource {
            what: "brute-force reduction search",
            needed: format!("{m}^{} candidate tables", cells.len()),
            budget: format!("{} candidates", budget.max_candidates),
        })?;
    let tuples: Vec<Vec<usize>> = {
        let mut all = Vec::new();
        let mut t = vec![0; n];
        loop {
            all.push(t.clone());
            if !next_tuple(&mut t, m) {
                break;
            }
        }
        all
    };

    struct Search<'a> {
        f: &'a OpTable,
        m: usize,
        cells: Vec<(usize, usize)>,
        symmetric: bool,
        tuples: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn set(&self, g: &mut [usize], (a, b): (usize, usize), v: usize) {
            g[a * self.m + b] = v;
            if self.symmetric {
                g[b * self.m + a] = v;
            }
        }

        /// No fully determined tuple contradicts `F`.
        fn consistent(&self, g: &[usize]) -> bool {
            self.tuples.iter().all(|t| {
                let mut acc = t[0];
                for &x in &t[1..] {
                    acc = g[acc * self.m + x];
                    if acc == usize::MAX {
                        return true;
                    }
                }
                acc == self.f.get(t)
            })
        }

        fn run(&self, i: usize, g: &mut Vec<usize>, out: &mut Vec<OpTable>) {
            if i == self.cells.len() {
                out.push(OpTable::new(2, self.m, g.clone()).expect("complete table"));
                return;
            }
            for v in 0..self.m {
                self.set(g, self.cells[i], v);
                if self.consistent(g) {
                    self.run(i + 1, g, out);
                }
            }
            self.set(g, self.cells[i], usize::MAX);
        }
    }

    let search = Search {
        f,
        m,
        cells,
        symmetric: space == SearchSpace::Symmetric,
        tuples,
    };
    let mut found: Vec<OpTable> = (0..m)
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut g = vec![usize::MAX; m * m];
            let mut out = Vec::new();
            search.set(&mut g, search.cells[0], v);
            if search.consistent(&g) {
                search.run(1, &mut g, &mut out);
            }
            out
        })
        .collect();
    found.sort();
    if let Some(g) = found.iter().find(|g| !g.is_associative()) {
        return Err(Error::Consistency(format!(
            "non-associative table {:?} extends to the input",
            g.values()
        )));
    }
    Ok(found)
}
