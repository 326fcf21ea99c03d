//! Strong n-ary semilattice decomposition.
//!
//! A symmetric n-ary band splits into its σ-classes `X_α`, indexed by the
//! quotient semilattice `Y`. On each class the operation is the n-ary
//! extension of an Abelian group whose exponent divides `n - 1`, and for
//! `α ≥ β` the translation `φ_{α,β} = λ_y|X_α` (any `y ∈ X_β`) carries `X_α`
//! into `X_β`. The whole operation is recovered as
//! `F(x_1, ..., x_n) = F_α(φ_{α_1,α}(x_1), ..., φ_{α_n,α}(x_n))` with
//! `α = α_1 ∧ ... ∧ α_n`.

use std::fmt;

use crate::bandcore::{QuotientSemilattice, SigmaPartition, SymmetricBand};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::optable::OpTable;

/// The Abelian group living on one σ-class.
///
/// `group` is indexed by position in `members`; `neutral` is a global
/// element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    pub class_index: usize,
    pub members: Vec<usize>,
    pub neutral: usize,
    pub group: AbelianGroup,
    pub factor_signature: Vec<usize>,
}

impl ClassGroup {
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.iter().position(|&m| m == x)
    }

    /// Global-element product.
    pub fn op(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.position(x).unwrap(), self.position(y).unwrap());
        self.members[self.group.op(a, b)]
    }

    /// Cayley table in global element indices.
    pub fn cayley(&self) -> Vec<Vec<usize>> {
        let k = self.members.len();
        (0..k)
            .map(|a| (0..k).map(|b| self.members[self.group.op(a, b)]).collect())
            .collect()
    }

    /// The n-ary extension on member positions.
    pub fn nary_extension(&self, arity: usize) -> OpTable {
        self.group.nary_extension(arity)
    }
}

/// `φ_{from,to}`; `map[i]` is the image of `members(from)[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMap {
    pub from: usize,
    pub to: usize,
    pub map: Vec<usize>,
}

/// `[Y, (X_α, F_α), φ_{α,β}]` together with element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongSystem {
    pub arity: usize,
    pub labels: Vec<String>,
    pub partition: SigmaPartition,
    pub semilattice: QuotientSemilattice,
    pub groups: Vec<ClassGroup>,
    /// One map per comparable pair, sorted by `(from, to)`.
    pub homs: Vec<HomMap>,
}

impl StrongSystem {
    pub fn size(&self) -> usize {
        self.partition.size()
    }

    pub fn hom(&self, from: usize, to: usize) -> Option<&HomMap> {
        self.homs
            .binary_search_by_key(&(from, to), |h| (h.from, h.to))
            .ok()
            .map(|i| &self.homs[i])
    }

    /// `φ_{[x], to}(x)`.
    pub fn image(&self, x: usize, to: usize) -> Option<usize> {
        let from = self.partition.class_of(x);
        let pos = self.partition.members(from).iter().position(|&m| m == x)?;
        self.hom(from, to).map(|h| h.map[pos])
    }
}

/// `G_e(x, y) = F(x, (n-2)*e, y)` on a σ-class, validated as an Abelian group
/// of exponent dividing `n - 1`.
pub fn class_group(band: &SymmetricBand, class_index: usize, members: &[usize], neutral: usize) -> Result<ClassGroup> {
    let n = band.arity();
    let k = members.len();
    let Some(e_pos) = members.iter().position(|&x| x == neutral) else {
        return Err(Error::Input(format!(
            "{neutral} is not a member of class {class_index}"
        )));
    };
    let mut position = vec![usize::MAX; band.size()];
    for (i, &x) in members.iter().enumerate() {
        position[x] = i;
    }
    let mut tuple = vec![neutral; n];
    let mut table = Vec::with_capacity(k * k);
    for &x in members {
        for &y in members {
            tuple[0] = x;
            tuple[n - 1] = y;
            let v = band.table().get(&tuple);
            if position[v] == usize::MAX {
                return Err(Error::Consistency(format!(
                    "class {class_index} is not closed: product of {x} and {y} is {v}"
                )));
            }
            table.push(position[v]);
        }
    }
    let group = AbelianGroup::from_table(k, e_pos, table)
        .map_err(|d| Error::Consistency(format!("class {class_index} is not an Abelian group: {d}")))?;
    let exponent = group.exponent();
    if !(n - 1).is_multiple_of(exponent) {
        return Err(Error::Consistency(format!(
            "class {class_index} has exponent {exponent}, which does not divide {}",
            n - 1
        )));
    }
    Ok(ClassGroup {
        class_index,
        members: members.to_vec(),
        neutral,
        factor_signature: group.invariant_factors(),
        group,
    })
}

/// `φ_{α,β} = λ_y` restricted to `X_α`, for every `α ≥ β`.
pub fn hom_maps(
    band: &SymmetricBand,
    partition: &SigmaPartition,
    semilattice: &QuotientSemilattice,
) -> Result<Vec<HomMap>> {
    let lambda = band.lambda_table();
    let mut homs = Vec::new();
    for (from, to) in semilattice.comparable_pairs() {
        let source = partition.members(from);
        let mut reps = partition.members(to).iter();
        let first = *reps.next().expect("classes are nonempty");
        let map: Vec<usize> = source.iter().map(|&z| lambda.apply(first, z)).collect();
        for &y in reps {
            if source.iter().zip(&map).any(|(&z, &v)| lambda.apply(y, z) != v) {
                return Err(Error::Consistency(format!(
                    "translation from class {from} to class {to} depends on the representative {y}"
                )));
            }
        }
        if let Some(&v) = map.iter().find(|&&v| partition.class_of(v) != to) {
            return Err(Error::Consistency(format!(
                "translation from class {from} to class {to} produces {v} outside the target"
            )));
        }
        homs.push(HomMap { from, to, map });
    }
    Ok(homs)
}

/// Checks the band axioms, then decomposes.
pub fn decompose(f: &OpTable) -> Result<StrongSystem> {
    decompose_band(&SymmetricBand::new(f.clone())?)
}

pub fn decompose_band(band: &SymmetricBand) -> Result<StrongSystem> {
    let partition = band.sigma_partition();
    let quotient = band.quotient(&partition)?;
    let groups = partition
        .classes()
        .iter()
        .enumerate()
        .map(|(i, members)| class_group(band, i, members, members[0]))
        .collect::<Result<Vec<_>>>()?;
    let homs = hom_maps(band, &partition, &quotient.semilattice)?;
    let system = StrongSystem {
        arity: band.arity(),
        labels: (0..band.size()).map(|i| i.to_string()).collect(),
        partition,
        semilattice: quotient.semilattice,
        groups,
        homs,
    };
    let report = validate_system(&system, band.arity());
    if !report.is_valid() {
        return Err(Error::Consistency(format!("decomposition is invalid: {report}")));
    }
    Ok(system)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    MeetNotSemilattice(String),
    Group {
        class: usize,
        defect: String,
    },
    Exponent {
        class: usize,
        exponent: usize,
        arity: usize,
    },
    MissingHom {
        from: usize,
        to: usize,
    },
    UnexpectedHom {
        from: usize,
        to: usize,
    },
    ImageOutsideTarget {
        from: usize,
        to: usize,
        element: usize,
    },
    NotIdentity {
        class: usize,
    },
    Incoherent {
        upper: usize,
        middle: usize,
        lower: usize,
        element: usize,
    },
    NotTranslatedHom {
        from: usize,
        to: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "malformed system: {s}"),
            Violation::MeetNotSemilattice(s) => write!(f, "meet table: {s}"),
            Violation::Group { class, defect } => write!(f, "class {class}: {defect}"),
            Violation::Exponent { class, exponent, arity } => write!(
                f,
                "class {class}: group exponent {exponent} does not divide {}",
                arity - 1
            ),
            Violation::MissingHom { from, to } => write!(f, "no map from class {from} to class {to}"),
            Violation::UnexpectedHom { from, to } => {
                write!(f, "map from class {from} to class {to}, but {from} is not above {to}")
            }
            Violation::ImageOutsideTarget { from, to, element } => write!(
                f,
                "map from class {from} to class {to} sends {element} outside class {to}"
            ),
            Violation::NotIdentity { class } => write!(f, "map on class {class} is not the identity"),
            Violation::Incoherent {
                upper,
                middle,
                lower,
                element,
            } => write!(
                f,
                "maps {upper}->{middle}->{lower} and {upper}->{lower} disagree on {element}"
            ),
            Violation::NotTranslatedHom { from, to } => write!(
                f,
                "map from class {from} to class {to} is not a translated group homomorphism"
            ),
        }
    }
}

/// Every violation found; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks the strong semilattice conditions against arity `n`.
pub fn validate_system(s: &StrongSystem, arity: usize) -> ValidationReport {
    let mut out = Vec::new();
    let classes = s.partition.num_classes();
    if arity < 2 {
        out.push(Violation::Shape(format!("arity {arity} is below 2")));
    }
    if s.semilattice.size() != classes {
        out.push(Violation::Shape(format!(
            "meet table has {} classes, partition has {classes}",
            s.semilattice.size()
        )));
    }
    if s.labels.len() != s.size() {
        out.push(Violation::Shape(format!(
            "{} labels for {} elements",
            s.labels.len(),
            s.size()
        )));
    }
    if s.groups.len() != classes {
        out.push(Violation::Shape(format!(
            "{} groups for {classes} classes",
            s.groups.len()
        )));
    }
    for (i, g) in s.groups.iter().enumerate() {
        if i < classes && (g.class_index != i || g.members != s.partition.members(i)) {
            out.push(Violation::Shape(format!("group {i} does not match class {i}")));
        }
        if g.group.order() != g.members.len() {
            out.push(Violation::Shape(format!("group {i} has the wrong order")));
        }
    }
    for h in &s.homs {
        if h.from >= classes || h.to >= classes {
            out.push(Violation::Shape(format!(
                "map {}->{} names a missing class",
                h.from, h.to
            )));
        } else if h.map.len() != s.partition.members(h.from).len() {
            out.push(Violation::Shape(format!(
                "map {}->{} has the wrong length",
                h.from, h.to
            )));
        } else if let Some(&x) = h.map.iter().find(|&&x| x >= s.size()) {
            out.push(Violation::Shape(format!(
                "map {}->{} sends to unknown element {x}",
                h.from, h.to
            )));
        }
    }
    if s.homs.windows(2).any(|w| (w[0].from, w[0].to) >= (w[1].from, w[1].to)) {
        out.push(Violation::Shape("maps are not sorted or repeat a pair".into()));
    }
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }

    if let Err(e) = QuotientSemilattice::from_meet(&s.semilattice.table()) {
        out.push(Violation::MeetNotSemilattice(e));
    }

    for g in &s.groups {
        let Some(e) = g.position(g.neutral) else {
            out.push(Violation::Group {
                class: g.class_index,
                defect: format!("neutral {} is not a member", g.neutral),
            });
            continue;
        };
        match AbelianGroup::from_table(g.members.len(), e, g.group.table().to_vec()) {
            Err(d) => out.push(Violation::Group {
                class: g.class_index,
                defect: d.to_string(),
            }),
            Ok(grp) => {
                let exponent = grp.exponent();
                if arity >= 2 && !(arity - 1).is_multiple_of(exponent) {
                    out.push(Violation::Exponent {
                        class: g.class_index,
                        exponent,
                        arity,
                    });
                }
            }
        }
    }

    let y = &s.semilattice;
    for a in 0..classes {
        for b in 0..classes {
            let expected = y.geq(a, b);
            match (expected, s.hom(a, b)) {
                (true, None) => out.push(Violation::MissingHom { from: a, to: b }),
                (false, Some(_)) => out.push(Violation::UnexpectedHom { from: a, to: b }),
                _ => {}
            }
        }
    }
    for h in &s.homs {
        if let Some(&x) = h.map.iter().find(|&&x| s.partition.class_of(x) != h.to) {
            out.push(Violation::ImageOutsideTarget {
                from: h.from,
                to: h.to,
                element: x,
            });
        }
        if h.from == h.to && h.map != s.partition.members(h.from) {
            out.push(Violation::NotIdentity { class: h.from });
        }
    }
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }

    for a in 0..classes {
        for b in y.down_set(a) {
            for c in y.down_set(b) {
                let members = s.partition.members(a);
                for (i, &x) in members.iter().enumerate() {
                    let direct = s.hom(a, c).unwrap().map[i];
                    let via = s.image(s.hom(a, b).unwrap().map[i], c).unwrap();
                    if direct != via {
                        out.push(Violation::Incoherent {
                            upper: a,
                            middle: b,
                            lower: c,
                            element: x,
                        });
                        break;
                    }
                }
            }
        }
    }

    for h in &s.homs {
        if !is_translated_hom(&s.groups[h.from], &s.groups[h.to], &h.map) {
            out.push(Violation::NotTranslatedHom { from: h.from, to: h.to });
        }
    }
    ValidationReport { violations: out }
}

/// `φ(x) = g * ψ(x)` with `ψ` a group homomorphism: `ψ(x) = φ(e)^{-1} φ(x)`.
fn is_translated_hom(source: &ClassGroup, target: &ClassGroup, map: &[usize]) -> bool {
    let k = source.members.len();
    let Some(local): Option<Vec<usize>> = map.iter().map(|&x| target.position(x)).collect() else {
        return false;
    };
    let e = source.group.identity();
    let shift = target.group.inverse(local[e]);
    let psi: Vec<usize> = local.iter().map(|&v| target.group.op(shift, v)).collect();
    (0..k).all(|a| (0..k).all(|b| psi[source.group.op(a, b)] == target.group.op(psi[a], psi[b])))
}
