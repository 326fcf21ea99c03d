//! JSON documents.
//!
//! Every document is written as a single line of compact JSON followed by a
//! newline; reading and rewriting a document produced here reproduces it
//! byte for byte. Elements are referred to by index into `elements`.
//!
//! ```text
//! table:     {"arity":3,"elements":["a","b"],"values":[...]}
//! system:    {"arity":3,"elements":[...],"classes":[[0],[1,2]],"meet":[[0,0],[0,1]],
//!             "groups":[{"class":1,"neutral":1,"cayley":[[1,2],[2,1]]}, ...],
//!             "homs":[{"from":0,"to":1,"map":{"0":2}}, ...]}
//! reduction: {"reducible":true,"selection":{"0":0,...},"table":{...}}
//!            {"reducible":false,"witness":{"class":2,"images":[2,3],"sources":[[0,0],[1,1]]}}
//! ```

use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::bandcore::{QuotientSemilattice, SigmaPartition};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::optable::OpTable;
use crate::reduce::{IrreducibilityWitness, NeutralSelection, ReductionResult};
use crate::structure::{ClassGroup, HomMap, StrongSystem};

/// An operation table with the names of its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTable {
    pub table: OpTable,
    pub labels: Vec<String>,
}

impl LabeledTable {
    /// Labels `"0"`, `"1"`, ...
    pub fn with_index_labels(table: OpTable) -> Self {
        let labels = index_labels(table.size());
        LabeledTable { table, labels }
    }
}

pub fn index_labels(size: usize) -> Vec<String> {
    (0..size).map(|i| i.to_string()).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    arity: usize,
    elements: Vec<String>,
    values: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDoc {
    class: usize,
    neutral: usize,
    cayley: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomDoc {
    from: usize,
    to: usize,
    map: IndexMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    arity: usize,
    elements: Vec<String>,
    classes: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    groups: Vec<GroupDoc>,
    homs: Vec<HomDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessDoc {
    class: usize,
    images: Vec<usize>,
    sources: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReductionDoc {
    reducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    selection: Option<IndexMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<TableDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDoc>,
}

fn to_line<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn check_labels(labels: &[String], size: usize) -> Result<()> {
    if labels.len() != size {
        return Err(Error::Input(format!("{} labels for {size} elements", labels.len())));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::Input(format!("label {l:?} is repeated")));
        }
    }
    Ok(())
}

fn table_doc(t: &LabeledTable) -> TableDoc {
    TableDoc {
        arity: t.table.arity(),
        elements: t.labels.clone(),
        values: t.table.values().iter().map(|&v| v as usize).collect(),
    }
}

fn table_from_doc(doc: TableDoc) -> Result<LabeledTable> {
    let size = doc.elements.len();
    let table = OpTable::new(doc.arity, size, doc.values)?;
    check_labels(&doc.elements, size)?;
    Ok(LabeledTable {
        table,
        labels: doc.elements,
    })
}

pub fn table_to_json(t: &LabeledTable) -> String {
    to_line(&table_doc(t))
}

pub fn table_from_json(text: &str) -> Result<LabeledTable> {
    table_from_doc(serde_json::from_str(text)?)
}

pub fn system_to_json(s: &StrongSystem) -> String {
    let classes = s.partition.num_classes();
    let doc = SystemDoc {
        arity: s.arity,
        elements: s.labels.clone(),
        classes: s.partition.classes().to_vec(),
        meet: (0..classes)
            .map(|a| (0..classes).map(|b| s.semilattice.meet(a, b)).collect())
            .collect(),
        groups: s
            .groups
            .iter()
            .map(|g| GroupDoc {
                class: g.class_index,
                neutral: g.neutral,
                cayley: g.cayley(),
            })
            .collect(),
        homs: s
            .homs
            .iter()
            .map(|h| HomDoc {
                from: h.from,
                to: h.to,
                map: s
                    .partition
                    .members(h.from)
                    .iter()
                    .zip(&h.map)
                    .map(|(x, &y)| (x.to_string(), y))
                    .collect(),
            })
            .collect(),
    };
    to_line(&doc)
}

/// Parses a system document. Only the shape is checked here; the strong
/// semilattice conditions are left to `validate_system`.
pub fn system_from_json(text: &str) -> Result<StrongSystem> {
    let doc: SystemDoc = serde_json::from_str(text)?;
    let size = doc.elements.len();
    check_labels(&doc.elements, size)?;
    let partition = SigmaPartition::from_classes(size, doc.classes.clone())?;
    if partition.classes() != doc.classes.as_slice() {
        return Err(Error::Input("classes must be sorted and listed by least member".into()));
    }
    let c = partition.num_classes();
    if doc.meet.len() != c || doc.meet.iter().any(|row| row.len() != c) {
        return Err(Error::Input(format!("meet table must be {c} by {c}")));
    }
    if doc.meet.iter().flatten().any(|&v| v >= c) {
        return Err(Error::Input("meet table names a missing class".into()));
    }
    let semilattice = QuotientSemilattice::from_meet_unchecked(c, doc.meet.concat());

    let mut groups = Vec::with_capacity(doc.groups.len());
    for g in doc.groups {
        if g.class >= c {
            return Err(Error::Input(format!("group for missing class {}", g.class)));
        }
        let members = partition.members(g.class).to_vec();
        let k = members.len();
        let position = |x: usize| {
            members
                .iter()
                .position(|&m| m == x)
                .ok_or_else(|| Error::Input(format!("{x} is not a member of class {}", g.class)))
        };
        let identity = position(g.neutral)?;
        if g.cayley.len() != k || g.cayley.iter().any(|row| row.len() != k) {
            return Err(Error::Input(format!(
                "cayley table of class {} must be {k} by {k}",
                g.class
            )));
        }
        let table = g
            .cayley
            .iter()
            .flatten()
            .map(|&x| position(x))
            .collect::<Result<Vec<_>>>()?;
        let (group, factor_signature) = match AbelianGroup::from_table(k, identity, table.clone()) {
            Ok(grp) => {
                let sig = grp.invariant_factors();
                (grp, sig)
            }
            Err(_) => (AbelianGroup::from_table_unchecked(k, identity, table), Vec::new()),
        };
        groups.push(ClassGroup {
            class_index: g.class,
            members,
            neutral: g.neutral,
            group,
            factor_signature,
        });
    }

    let mut homs = Vec::with_capacity(doc.homs.len());
    for h in doc.homs {
        if h.from >= c || h.to >= c {
            return Err(Error::Input(format!("map {}->{} names a missing class", h.from, h.to)));
        }
        let members = partition.members(h.from);
        let keys: Vec<String> = members.iter().map(|x| x.to_string()).collect();
        if h.map.keys().ne(keys.iter()) {
            return Err(Error::Input(format!(
                "map {}->{} must list the members of class {} in order",
                h.from, h.to, h.from
            )));
        }
        homs.push(HomMap {
            from: h.from,
            to: h.to,
            map: h.map.into_values().collect(),
        });
    }

    Ok(StrongSystem {
        arity: doc.arity,
        labels: doc.elements,
        partition,
        semilattice,
        groups,
        homs,
    })
}

pub fn reduction_to_json(r: &ReductionResult, labels: &[String]) -> String {
    let doc = match r {
        ReductionResult::Reducible { selection, table } => ReductionDoc {
            reducible: true,
            selection: Some(
                selection
                    .selection
                    .iter()
                    .enumerate()
                    .map(|(c, &e)| (c.to_string(), e))
                    .collect(),
            ),
            table: Some(table_doc(&LabeledTable {
                table: table.clone(),
                labels: labels.to_vec(),
            })),
            witness: None,
        },
        ReductionResult::Irreducible(w) => ReductionDoc {
            reducible: false,
            selection: None,
            table: None,
            witness: Some(WitnessDoc {
                class: w.class,
                images: w.images.clone(),
                sources: w.sources.clone(),
            }),
        },
    };
    to_line(&doc)
}

pub fn reduction_from_json(text: &str) -> Result<ReductionResult> {
    let doc: ReductionDoc = serde_json::from_str(text)?;
    match (doc.reducible, doc.selection, doc.table, doc.witness) {
        (true, Some(selection), Some(table), None) => {
            let keys: Vec<String> = (0..selection.len()).map(|i| i.to_string()).collect();
            if selection.keys().ne(keys.iter()) {
                return Err(Error::Input("selection must list classes 0, 1, ... in order".into()));
            }
            Ok(ReductionResult::Reducible {
                selection: NeutralSelection {
                    selection: selection.into_values().collect(),
                },
                table: table_from_doc(table)?.table,
            })
        }
        (false, None, None, Some(w)) => Ok(ReductionResult::Irreducible(IrreducibilityWitness {
            class: w.class,
            images: w.images,
            sources: w.sources,
        })),
        _ => Err(Error::Input(
            "a reduction carries a selection and a table, an irreducible result a witness".into(),
        )),
    }
}

/// Reads a file, or standard input when `path` is `-`.
pub fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

pub fn read_table(path: &Path) -> Result<LabeledTable> {
    table_from_json(&read_text(path)?)
}

pub fn write_table(path: &Path, t: &LabeledTable) -> Result<()> {
    Ok(fs::write(path, table_to_json(t))?)
}

pub fn read_system(path: &Path) -> Result<StrongSystem> {
    system_from_json(&read_text(path)?)
}

pub fn write_system(path: &Path, s: &StrongSystem) -> Result<()> {
    Ok(fs::write(path, system_to_json(s))?)
}
