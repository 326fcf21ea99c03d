//! Building symmetric n-ary bands from strong-system data, and enumerating
//! every band on a small carrier.
//!
//! Enumeration runs the decomposition backwards: choose a set partition of
//! the carrier, a semilattice on its classes, an n-ary group extension on
//! each class, and a coherent family of n-ary homomorphisms between
//! comparable classes. Each choice composes to a distinct band. An
//! independent brute-force scan over symmetric idempotent tables is provided
//! for cross-checking.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use rayon::prelude::*;

use crate::bandcore::{QuotientSemilattice, SigmaPartition};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::optable::{checked_pow, next_tuple, OpTable};
use crate::structure::{validate_system, ClassGroup, HomMap, StrongSystem};
use crate::Budget;

/// Orders of the cyclic factors of an Abelian group, each dividing `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    factors: Vec<usize>,
}

impl GroupSpec {
    pub fn new(factors: Vec<usize>, arity: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Input(format!("arity must be at least 2, got {arity}")));
        }
        if let Some(&f) = factors.iter().find(|&&f| f == 0 || !(arity - 1).is_multiple_of(f)) {
            return Err(Error::Input(format!("cyclic factor {f} does not divide {}", arity - 1)));
        }
        Ok(GroupSpec { factors })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    /// One spec per isomorphism type of order `order` with exponent dividing
    /// `n - 1`, in invariant-factor form `d_1 | d_2 | ... | d_r`.
    pub fn all_of_order(order: usize, arity: usize) -> Vec<GroupSpec> {
        fn rec(remaining: usize, cap: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if remaining == 1 {
                out.push(acc.clone());
                return;
            }
            // each factor is a multiple of the previous one and divides cap
            let previous = acc.last().copied().unwrap_or(1);
            for d in (2..=remaining)
                .filter(|d| remaining.is_multiple_of(*d) && cap.is_multiple_of(*d) && d.is_multiple_of(previous))
            {
                acc.push(d);
                rec(remaining / d, cap, acc, out);
                acc.pop();
            }
        }
        if arity < 2 || order == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        rec(order, arity - 1, &mut Vec::new(), &mut out);
        out.into_iter().map(|factors| GroupSpec { factors }).collect()
    }
}

/// The direct product of cyclic groups in factor order; identity `0`.
pub fn make_group(spec: &GroupSpec) -> AbelianGroup {
    AbelianGroup::cyclic_product(&spec.factors)
}

/// All homomorphisms between the n-ary extensions of two Abelian groups:
/// the maps `x -> g * ψ(x)` with `ψ` a group homomorphism and `g^(n-1)`
/// the identity. When the target's exponent divides `n - 1` every `g`
/// qualifies. Sorted.
pub fn nary_homs(source: &AbelianGroup, target: &AbelianGroup, arity: usize) -> Vec<Vec<usize>> {
    let shifts: Vec<usize> = (0..target.order())
        .filter(|&g| target.power(g, arity.saturating_sub(1)) == target.identity())
        .collect();
    let mut out: Vec<Vec<usize>> = source
        .homomorphisms_to(target)
        .into_iter()
        .flat_map(|psi| {
            shifts
                .iter()
                .map(move |&g| psi.iter().map(|&v| target.op(g, v)).collect())
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    out
}

/// Builds the band described by a valid strong system.
pub fn compose(s: &StrongSystem, arity: usize) -> Result<OpTable> {
    let report = validate_system(s, arity);
    if !report.is_valid() {
        return Err(Error::InvalidSystem(report));
    }
    compose_unchecked(s, arity)
}

/// Composition without validation. The result is only a band when the
/// system is valid.
pub fn compose_unchecked(s: &StrongSystem, arity: usize) -> Result<OpTable> {
    let m = s.size();
    let classes = s.partition.num_classes();
    // image[x * classes + c]: local position of φ_{[x],c}(x) in class c
    let mut image = vec![usize::MAX; m * classes];
    for h in &s.homs {
        let target = &s.groups[h.to];
        for (&x, &y) in s.partition.members(h.from).iter().zip(&h.map) {
            image[x * classes + h.to] = target
                .position(y)
                .ok_or_else(|| Error::Consistency(format!("{y} is not in class {}", h.to)))?;
        }
    }
    let mut failure = None;
    let table = OpTable::from_fn(arity, m, |t| {
        let alpha = s
            .semilattice
            .meet_all(t.iter().map(|&x| s.partition.class_of(x)))
            .expect("arity is positive");
        let g = &s.groups[alpha];
        let mut acc = g.group.identity();
        for &x in t {
            let p = image[x * classes + alpha];
            if p == usize::MAX {
                failure.get_or_insert((x, alpha));
                return 0;
            }
            acc = g.group.op(acc, p);
        }
        g.members[acc]
    })?;
    match failure {
        None => Ok(table),
        Some((x, alpha)) => Err(Error::Consistency(format!("no map carries {x} into class {alpha}"))),
    }
}

/// All bands of one size and arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandCatalog {
    pub size: usize,
    pub arity: usize,
    /// Sorted by values; canonical representatives when built up to
    /// isomorphism, otherwise every labeled table.
    pub entries: Vec<OpTable>,
    pub labeled: usize,
    pub iso: usize,
}

impl BandCatalog {
    fn from_tables(
        size: usize,
        arity: usize,
        tables: BTreeSet<OpTable>,
        up_to_iso: bool,
        budget: &Budget,
    ) -> Result<Self> {
        let canonical: BTreeSet<OpTable> = tables
            .par_iter()
            .map(|t| t.canonical_form_with_budget(budget))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .collect();
        let labeled = tables.len();
        let iso = canonical.len();
        let entries = if up_to_iso {
            canonical.into_iter().collect()
        } else {
            tables.into_iter().collect()
        };
        Ok(BandCatalog {
            size,
            arity,
            entries,
            labeled,
            iso,
        })
    }
}

pub fn enumerate_bands(size: usize, arity: usize, up_to_iso: bool) -> Result<BandCatalog> {
    enumerate_bands_with_budget(size, arity, up_to_iso, &Budget::default())
}

pub fn enumerate_bands_with_budget(size: usize, arity: usize, up_to_iso: bool, budget: &Budget) -> Result<BandCatalog> {
    let systems = enumerate_systems_with_budget(size, arity, budget)?;
    let tables = systems
        .par_iter()
        .map(|s| compose_unchecked(s, arity))
        .collect::<Result<Vec<_>>>()?;
    let distinct: BTreeSet<OpTable> = tables.into_iter().collect();
    if distinct.len() != systems.len() {
        return Err(Error::Consistency(format!(
            "{} systems composed to only {} distinct tables",
            systems.len(),
            distinct.len()
        )));
    }
    BandCatalog::from_tables(size, arity, distinct, up_to_iso, budget)
}

pub fn enumerate_systems(size: usize, arity: usize) -> Result<Vec<StrongSystem>> {
    enumerate_systems_with_budget(size, arity, &Budget::default())
}

/// Every strong system on `{0, ..., size-1}` whose class groups are based at
/// their least member, in a deterministic order.
pub fn enumerate_systems_with_budget(size: usize, arity: usize, budget: &Budget) -> Result<Vec<StrongSystem>> {
    if arity < 2 {
        return Err(Error::Input(format!("arity must be at least 2, got {arity}")));
    }
    if size == 0 {
        return Err(Error::Input("the carrier must be nonempty".into()));
    }
    if size > budget.max_enumeration_size {
        return Err(Error::Resource {
            what: "enumeration",
            needed: format!("a carrier of {size} elements"),
            budget: format!("at most {} elements", budget.max_enumeration_size),
        });
    }
    match checked_pow(size, arity) {
        Some(c) if c as u64 <= budget.max_cells => {}
        _ => {
            return Err(Error::Resource {
                what: "enumeration",
                needed: format!("{size}^{arity} cells per table"),
                budget: format!("{} cells", budget.max_cells),
            })
        }
    }
    let class_structures: Vec<Vec<AbelianGroup>> = (0..=size).map(|k| class_structures(k, arity)).collect();
    let semilattices: Vec<Vec<QuotientSemilattice>> = (0..=size).map(labeled_semilattices).collect();
    let partitions = set_partitions(size);
    let per_partition: Vec<Vec<StrongSystem>> = partitions
        .par_iter()
        .map(|classes| {
            let mut out = Vec::new();
            let options: Vec<&Vec<AbelianGroup>> = classes.iter().map(|c| &class_structures[c.len()]).collect();
            if options.iter().any(|o| o.is_empty()) {
                return out;
            }
            let partition = SigmaPartition::from_classes(size, classes.clone()).expect("valid partition");
            for y in &semilattices[classes.len()] {
                for choice in options.iter().map(|o| o.iter()).multi_cartesian_product() {
                    let groups: Vec<ClassGroup> = choice
                        .iter()
                        .enumerate()
                        .map(|(i, g)| class_group_from(i, partition.members(i), (*g).clone()))
                        .collect();
                    hom_systems(y, &groups, arity, |homs| {
                        out.push(StrongSystem {
                            arity,
                            labels: (0..size).map(|i| i.to_string()).collect(),
                            partition: partition.clone(),
                            semilattice: y.clone(),
                            groups: groups.clone(),
                            homs,
                        });
                    });
                }
            }
            out
        })
        .collect();
    Ok(per_partition.into_iter().flatten().collect())
}

fn class_group_from(class_index: usize, members: &[usize], group: AbelianGroup) -> ClassGroup {
    ClassGroup {
        class_index,
        members: members.to_vec(),
        neutral: members[group.identity()],
        factor_signature: group.invariant_factors(),
        group,
    }
}

/// Distinct n-ary group extensions on `k` labeled positions, each returned
/// as its group re-based at position `0`.
fn class_structures(k: usize, arity: usize) -> Vec<AbelianGroup> {
    if k == 0 {
        return Vec::new();
    }
    let mut seen: BTreeSet<OpTable> = BTreeSet::new();
    let mut out = Vec::new();
    for spec in GroupSpec::all_of_order(k, arity) {
        let base = make_group(&spec);
        for perm in (0..k).permutations(k) {
            let g = base.relabel(&perm);
            let ext = g.nary_extension(arity);
            if seen.insert(ext.clone()) {
                out.push(rebase(&ext, 0));
            }
        }
    }
    out
}

/// `G_e(x, y) = F(x, (n-2)*e, y)` for an n-ary group extension `F`.
fn rebase(ext: &OpTable, e: usize) -> AbelianGroup {
    let n = ext.arity();
    let k = ext.size();
    let mut tuple = vec![e; n];
    let mut table = Vec::with_capacity(k * k);
    for x in 0..k {
        for y in 0..k {
            tuple[0] = x;
            tuple[n - 1] = y;
            table.push(ext.get(&tuple));
        }
    }
    AbelianGroup::from_table(k, e, table).expect("extension of an Abelian group re-bases to a group")
}

/// Set partitions of `{0, ..., size-1}`, classes ordered by least member.
fn set_partitions(size: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(x: usize, size: usize, classes: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if x == size {
            out.push(classes.clone());
            return;
        }
        for i in 0..classes.len() {
            classes[i].push(x);
            rec(x + 1, size, classes, out);
            classes[i].pop();
        }
        classes.push(vec![x]);
        rec(x + 1, size, classes, out);
        classes.pop();
    }
    let mut out = Vec::new();
    rec(0, size, &mut Vec::new(), &mut out);
    out
}

/// Meet-semilattice tables on `{0, ..., c-1}`: commutativity and idempotency
/// are built in, associativity is checked as cells fill.
fn labeled_semilattices(c: usize) -> Vec<QuotientSemilattice> {
    if c == 0 {
        return Vec::new();
    }
    let cells: Vec<(usize, usize)> = (0..c).tuple_combinations().collect();
    let mut meet = vec![usize::MAX; c * c];
    for a in 0..c {
        meet[a * c + a] = a;
    }
    let mut out = Vec::new();
    fn consistent(meet: &[usize], c: usize) -> bool {
        let at = |a: usize, b: usize| meet[a * c + b];
        for a in 0..c {
            for b in 0..c {
                let ab = at(a, b);
                if ab == usize::MAX {
                    continue;
                }
                for d in 0..c {
                    let bd = at(b, d);
                    if bd == usize::MAX {
                        continue;
                    }
                    let (l, r) = (at(ab, d), at(a, bd));
                    if l != usize::MAX && r != usize::MAX && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn rec(i: usize, cells: &[(usize, usize)], c: usize, meet: &mut Vec<usize>, out: &mut Vec<QuotientSemilattice>) {
        if i == cells.len() {
            let table = OpTable::new(2, c, meet.clone()).expect("complete table");
            if let Ok(q) = QuotientSemilattice::from_meet(&table) {
                out.push(q);
            }
            return;
        }
        let (a, b) = cells[i];
        for v in 0..c {
            meet[a * c + b] = v;
            meet[b * c + a] = v;
            if consistent(meet, c) {
                rec(i + 1, cells, c, meet, out);
            }
        }
        meet[a * c + b] = usize::MAX;
        meet[b * c + a] = usize::MAX;
    }
    rec(0, &cells, c, &mut meet, &mut out);
    out
}

/// Coherent hom families over `y`. Classes are processed top-down; for each
/// class the maps from its covers are chosen freely among the n-ary
/// homomorphisms, every longer map is derived by composition, and all
/// composites through intermediate classes must agree.
fn hom_systems(y: &QuotientSemilattice, groups: &[ClassGroup], arity: usize, mut emit: impl FnMut(Vec<HomMap>)) {
    let c = y.size();
    let order = y.top_down_order();
    let mut candidates: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
    for b in 0..c {
        for a in y.covers(b) {
            candidates.insert((a, b), nary_homs(&groups[a].group, &groups[b].group, arity));
        }
    }
    // local maps: phi[a * c + b] maps positions in a to positions in b
    let mut phi: Vec<Option<Vec<usize>>> = vec![None; c * c];

    struct Ctx<'a> {
        y: &'a QuotientSemilattice,
        groups: &'a [ClassGroup],
        order: Vec<usize>,
        candidates: HashMap<(usize, usize), Vec<Vec<usize>>>,
    }

    fn level(ctx: &Ctx, depth: usize, phi: &mut Vec<Option<Vec<usize>>>, emit: &mut dyn FnMut(Vec<HomMap>)) {
        let c = ctx.y.size();
        if depth == ctx.order.len() {
            let mut homs = Vec::new();
            for (a, b) in ctx.y.comparable_pairs() {
                let local = phi[a * c + b].as_ref().expect("all maps assigned");
                homs.push(HomMap {
                    from: a,
                    to: b,
                    map: local.iter().map(|&p| ctx.groups[b].members[p]).collect(),
                });
            }
            emit(homs);
            return;
        }
        let b = ctx.order[depth];
        let covers = ctx.y.covers(b);
        let above = ctx.y.strictly_above(b);
        let choices: Vec<&Vec<Vec<usize>>> = covers.iter().map(|&a| &ctx.candidates[&(a, b)]).collect();
        let mut pick = vec![0; covers.len()];
        loop {
            if choices.iter().all(|v| !v.is_empty()) {
                for (i, &a) in covers.iter().enumerate() {
                    phi[a * c + b] = Some(choices[i][pick[i]].clone());
                }
                for &a in above.iter().filter(|a| !covers.contains(a)) {
                    let via = *covers.iter().find(|&&d| ctx.y.geq(a, d)).expect("a cover lies below");
                    let upper = phi[a * c + via].as_ref().expect("upper maps assigned first");
                    let lower = phi[via * c + b].as_ref().unwrap();
                    phi[a * c + b] = Some(upper.iter().map(|&p| lower[p]).collect());
                }
                phi[b * c + b] = Some((0..ctx.groups[b].members.len()).collect());
                let coherent = above.iter().all(|&a| {
                    above.iter().filter(|&&d| d != a && ctx.y.geq(a, d)).all(|&d| {
                        let upper = phi[a * c + d].as_ref().unwrap();
                        let lower = phi[d * c + b].as_ref().unwrap();
                        let direct = phi[a * c + b].as_ref().unwrap();
                        upper.iter().zip(direct).all(|(&p, &q)| lower[p] == q)
                    })
                });
                if coherent {
                    level(ctx, depth + 1, phi, emit);
                }
            } else {
                break;
            }
            // odometer over cover choices
            let mut i = covers.len();
            loop {
                if i == 0 {
                    for &a in &above {
                        phi[a * c + b] = None;
                    }
                    phi[b * c + b] = None;
                    return;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    let ctx = Ctx {
        y,
        groups,
        order,
        candidates,
    };
    level(&ctx, 0, &mut phi, &mut emit);
}

/// Independent oracle: every symmetric idempotent table, one free value
/// per non-constant multiset of arguments, filtered by associativity.
pub fn brute_force_bands(size: usize, arity: usize) -> Result<BandCatalog> {
    brute_force_bands_with_budget(size, arity, &Budget::default())
}

pub fn brute_force_bands_with_budget(size: usize, arity: usize, budget: &Budget) -> Result<BandCatalog> {
    if arity < 2 || size == 0 {
        return Err(Error::Input(format!("no tables of arity {arity} on {size} elements")));
    }
    let cells = checked_pow(size, arity)
        .filter(|&c| c as u64 <= budget.max_cells)
        .ok_or_else(|| Error::Resource {
            what: "brute-force band search",
            needed: format!("{size}^{arity} cells per table"),
            budget: format!("{} cells", budget.max_cells),
        })?;
    // multiset index of each tuple, via its sorted form
    let multisets: Vec<Vec<usize>> = (0..size).combinations_with_replacement(arity).collect();
    let index: HashMap<&[usize], usize> = multisets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut cell_multiset = Vec::with_capacity(cells);
    let mut tuple = vec![0; arity];
    loop {
        let mut sorted = tuple.clone();
        sorted.sort_unstable();
        cell_multiset.push(index[sorted.as_slice()]);
        if !next_tuple(&mut tuple, size) {
            break;
        }
    }
    let forced: Vec<Option<usize>> = multisets
        .iter()
        .map(|s| s.iter().all(|&x| x == s[0]).then_some(s[0]))
        .collect();
    let free: Vec<usize> = (0..multisets.len()).filter(|&i| forced[i].is_none()).collect();
    let candidates = checked_pow(size, free.len())
        .map(|c| c as u64)
        .filter(|&c| c <= budget.max_candidates)
        .ok_or_else(|| Error::Resource {
            what: "brute-force band search",
            needed: format!("{size}^{} candidate tables", free.len()),
            budget: format!("{} candidates", budget.max_candidates),
        })?;
    let found: BTreeSet<OpTable> = (0..candidates)
        .into_par_iter()
        .filter_map(|code| {
            let mut values_by_multiset: Vec<usize> = forced.iter().map(|f| f.unwrap_or(0)).collect();
            let mut rest = code as usize;
            for &i in free.iter().rev() {
                values_by_multiset[i] = rest % size;
                rest /= size;
            }
            let values = cell_multiset.iter().map(|&i| values_by_multiset[i]).collect();
            let t = OpTable::new(arity, size, values).expect("well-formed candidate");
            t.associative_first_position().then_some(t)
        })
        .collect();
    BandCatalog::from_tables(size, arity, found, false, budget)
}
