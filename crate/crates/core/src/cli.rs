//! The `symband` command line.
//!
//! Exit codes: `0` when the property holds or the command succeeds, `1` when
//! well-formed input fails the property, `2` for unreadable input, usage
//! errors and exhausted budgets. A file argument of `-` reads standard input.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bandcore::{Classification, SymmetricBand};
use crate::compose::{brute_force_bands, compose, compose_unchecked, enumerate_bands, BandCatalog};
use crate::error::{AxiomViolation, Error, Result};
use crate::io::{self, LabeledTable};
use crate::reduce::{brute_force_reductions_with, decide_reducible, ReductionResult, SearchSpace};
use crate::structure::{decompose_band, StrongSystem};
use crate::Budget;

#[derive(Parser, Debug)]
#[command(name = "symband", version, about = "Finite symmetric n-ary bands")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the band axioms and report the structure.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// Write the strong semilattice decomposition of a band.
    Decompose {
        file: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Skip the axiom check.
        #[arg(long)]
        no_verify: bool,
    },
    /// Build the band described by a decomposition.
    Compose {
        file: PathBuf,
        /// Defaults to the arity recorded in the file.
        #[arg(long)]
        arity: Option<usize>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Skip validation of the decomposition.
        #[arg(long)]
        no_verify: bool,
    },
    /// Decide whether a band is the extension of a binary semigroup.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        no_verify: bool,
    },
    /// Extend an operation to a higher arity.
    Extend {
        file: PathBuf,
        #[arg(long)]
        arity: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// List every band of a given size and arity.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        count_only: bool,
    },
    /// Exhaustive searches used as cross-checks.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Exit 0 when two tables are isomorphic.
    Isomorphic { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Every binary table whose extension is the input.
    Reduce {
        file: PathBuf,
        /// Scan all binary tables rather than symmetric ones.
        #[arg(long)]
        general: bool,
    },
    /// Every band of a size and arity, by scanning symmetric tables.
    Bands {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReportFormat {
    Text,
    Json,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &Path) -> Result<String> {
        if path.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            Ok(std::fs::read_to_string(path)?)
        }
    }

    fn emit(&mut self, output: Option<&Path>, text: &str) -> Result<()> {
        match output {
            Some(p) if p.as_os_str() != "-" => std::fs::write(p, text)?,
            _ => self.stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn print(&mut self, text: &str) -> Result<()> {
        self.stdout.write_all(text.as_bytes())?;
        Ok(())
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Axiom(_) | Error::InvalidSystem(_) | Error::Consistency(_) => 1,
        Error::Input(_) | Error::Resource { .. } | Error::Json(_) | Error::Io(_) => 2,
    }
}

fn dispatch(command: Command, io: &mut Io) -> Result<i32> {
    match command {
        Command::Check { file, report } => {
            let t = io::table_from_json(&io.read(&file)?)?;
            let analysis = analyze(&t)?;
            let text = match report {
                ReportFormat::Text => analysis.render_text(&t.labels),
                ReportFormat::Json => to_json_line(&analysis),
            };
            io.print(&text)?;
            Ok(if analysis.holds() { 0 } else { 1 })
        }
        Command::Decompose {
            file,
            output,
            no_verify,
        } => {
            let t = io::table_from_json(&io.read(&file)?)?;
            let s = decompose_labeled(&t, no_verify)?;
            io.emit(output.as_deref(), &io::system_to_json(&s))?;
            Ok(0)
        }
        Command::Compose {
            file,
            arity,
            output,
            no_verify,
        } => {
            let s = io::system_from_json(&io.read(&file)?)?;
            let n = arity.unwrap_or(s.arity);
            let table = if no_verify {
                compose_unchecked(&s, n)?
            } else {
                compose(&s, n)?
            };
            let t = LabeledTable {
                table,
                labels: s.labels.clone(),
            };
            io.emit(output.as_deref(), &io::table_to_json(&t))?;
            Ok(0)
        }
        Command::Reduce { file, no_verify } => {
            let t = io::table_from_json(&io.read(&file)?)?;
            let s = decompose_labeled(&t, no_verify)?;
            let r = decide_reducible(&s, t.table.arity())?;
            io.print(&io::reduction_to_json(&r, &t.labels))?;
            Ok(if r.is_reducible() { 0 } else { 1 })
        }
        Command::Extend { file, arity, output } => {
            let t = io::table_from_json(&io.read(&file)?)?;
            let n = t.table.arity();
            if n < 2 || arity < n || !(arity - 1).is_multiple_of(n - 1) {
                return Err(Error::Input(format!(
                    "arity {arity} is not reachable from arity {n}: {} must be a multiple of {}",
                    arity.saturating_sub(1),
                    n - 1
                )));
            }
            let extended = LabeledTable {
                table: t.table.extend((arity - 1) / (n - 1))?,
                labels: t.labels,
            };
            io.emit(output.as_deref(), &io::table_to_json(&extended))?;
            Ok(0)
        }
        Command::Enumerate {
            size,
            arity,
            up_to_iso,
            count_only,
        } => {
            let catalog = enumerate_bands(size, arity, up_to_iso)?;
            print_catalog(io, &catalog, count_only)?;
            Ok(0)
        }
        Command::Oracle {
            command:
                OracleCommand::Bands {
                    size,
                    arity,
                    up_to_iso,
                    count_only,
                },
        } => {
            let mut catalog = brute_force_bands(size, arity)?;
            if up_to_iso {
                catalog.entries = catalog
                    .entries
                    .iter()
                    .map(|t| t.canonical_form())
                    .collect::<Result<std::collections::BTreeSet<_>>>()?
                    .into_iter()
                    .collect();
            }
            print_catalog(io, &catalog, count_only)?;
            Ok(0)
        }
        Command::Oracle {
            command: OracleCommand::Reduce { file, general },
        } => {
            let t = io::table_from_json(&io.read(&file)?)?;
            let space = if general {
                SearchSpace::General
            } else {
                SearchSpace::Symmetric
            };
            let found = brute_force_reductions_with(&t.table, space, &Budget::default())?;
            for g in &found {
                io.print(&io::table_to_json(&LabeledTable {
                    table: g.clone(),
                    labels: t.labels.clone(),
                }))?;
            }
            io.print(&to_json_line(&serde_json::json!({ "count": found.len() })))?;
            Ok(if found.is_empty() { 1 } else { 0 })
        }
        Command::Isomorphic { a, b } => {
            let ta = io::table_from_json(&io.read(&a)?)?;
            let tb = io::table_from_json(&io.read(&b)?)?;
            let iso = ta.table.is_isomorphic(&tb.table)?;
            io.print(if iso { "isomorphic\n" } else { "not isomorphic\n" })?;
            Ok(if iso { 0 } else { 1 })
        }
    }
}

fn decompose_labeled(t: &LabeledTable, no_verify: bool) -> Result<StrongSystem> {
    let band = if no_verify {
        SymmetricBand::new_unchecked(t.table.clone())
    } else {
        SymmetricBand::new(t.table.clone())?
    };
    let mut s = decompose_band(&band)?;
    s.labels = t.labels.clone();
    Ok(s)
}

fn print_catalog(io: &mut Io, catalog: &BandCatalog, count_only: bool) -> Result<()> {
    if !count_only {
        for t in &catalog.entries {
            io.print(&io::table_to_json(&LabeledTable::with_index_labels(t.clone())))?;
        }
    }
    io.print(&to_json_line(&CatalogSummary {
        labeled: catalog.labeled,
        iso: catalog.iso,
    }))
}

#[derive(Serialize)]
struct CatalogSummary {
    labeled: usize,
    iso: usize,
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct AxiomStatus {
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

#[derive(Serialize)]
struct WitnessJson {
    tuple: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    swapped: Option<Vec<usize>>,
    left: usize,
    right: usize,
}

impl AxiomStatus {
    fn from(result: std::result::Result<(), AxiomViolation>) -> (Self, Option<AxiomViolation>) {
        let witness = result.err();
        let json = witness.as_ref().map(|v| match v {
            AxiomViolation::Associativity {
                tuple,
                position,
                left,
                right,
            } => WitnessJson {
                tuple: tuple.clone(),
                position: Some(*position),
                swapped: None,
                left: *left,
                right: *right,
            },
            AxiomViolation::Symmetry {
                tuple,
                swapped,
                left,
                right,
            } => WitnessJson {
                tuple: tuple.clone(),
                position: None,
                swapped: Some(swapped.clone()),
                left: *left,
                right: *right,
            },
            AxiomViolation::Idempotency { element, value } => WitnessJson {
                tuple: vec![*element],
                position: None,
                swapped: None,
                left: *value,
                right: *element,
            },
        });
        (
            AxiomStatus {
                holds: witness.is_none(),
                witness: json,
            },
            witness,
        )
    }
}

#[derive(Serialize)]
struct Axioms {
    associative: AxiomStatus,
    symmetric: AxiomStatus,
    idempotent: AxiomStatus,
}

#[derive(Serialize)]
struct GroupSummary {
    class: usize,
    members: Vec<usize>,
    signature: Vec<usize>,
}

#[derive(Serialize)]
struct Structure {
    classification: Classification,
    sigma_classes: Vec<Vec<usize>>,
    quotient_meet: Vec<Vec<usize>>,
    class_groups: Vec<GroupSummary>,
    reducible: bool,
    #[serde(skip)]
    reduction: ReductionResult,
}

/// What `check` reports; `structure` is present only for bands.
#[derive(Serialize)]
struct Analysis {
    axioms: Axioms,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    structure: Option<Structure>,
    #[serde(skip)]
    violations: Vec<AxiomViolation>,
}

impl Analysis {
    fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    fn render_text(&self, labels: &[String]) -> String {
        let mut out = String::new();
        let show_set = |xs: &[usize]| {
            let parts: Vec<&str> = xs.iter().map(|&x| labels[x].as_str()).collect();
            format!("{{{}}}", parts.join(","))
        };
        for (name, status) in [
            ("associative", &self.axioms.associative),
            ("symmetric", &self.axioms.symmetric),
            ("idempotent", &self.axioms.idempotent),
        ] {
            out.push_str(&format!("{name}: {}\n", if status.holds { "yes" } else { "no" }));
        }
        for v in &self.violations {
            out.push_str(&format!("  {}\n", v.describe(labels)));
        }
        let Some(s) = &self.structure else {
            return out;
        };
        out.push_str(&format!("classification: {}\n", s.classification));
        let classes: Vec<String> = s.sigma_classes.iter().map(|c| show_set(c)).collect();
        out.push_str(&format!("sigma classes: {}\n", classes.join(" ")));
        out.push_str("quotient meet:\n");
        for row in &s.quotient_meet {
            let cells: Vec<String> = row.iter().map(|&c| classes[c].clone()).collect();
            out.push_str(&format!("  {}\n", cells.join(" ")));
        }
        for g in &s.class_groups {
            out.push_str(&format!(
                "class group on {}: invariant factors {:?}\n",
                show_set(&g.members),
                g.signature
            ));
        }
        match &s.reduction {
            ReductionResult::Reducible { selection, .. } => {
                let picks: Vec<&str> = selection.selection.iter().map(|&e| labels[e].as_str()).collect();
                out.push_str(&format!("reducible: yes, neutral selection ({})\n", picks.join(",")));
            }
            ReductionResult::Irreducible(w) => out.push_str(&format!(
                "reducible: no, class {} is forced to both of {}\n",
                classes[w.class],
                show_set(&w.images)
            )),
        }
        out
    }
}

fn analyze(t: &LabeledTable) -> Result<Analysis> {
    let (associative, va) = AxiomStatus::from(t.table.check_associative());
    let (symmetric, vs) = AxiomStatus::from(t.table.check_symmetric());
    let (idempotent, vi) = AxiomStatus::from(t.table.check_idempotent());
    let violations: Vec<AxiomViolation> = [va, vs, vi].into_iter().flatten().collect();
    let structure = if violations.is_empty() {
        let band = SymmetricBand::new_unchecked(t.table.clone());
        let s = decompose_band(&band)?;
        let reduction = decide_reducible(&s, band.arity())?;
        let c = s.partition.num_classes();
        Some(Structure {
            classification: band.classify(),
            sigma_classes: s.partition.classes().to_vec(),
            quotient_meet: (0..c)
                .map(|a| (0..c).map(|b| s.semilattice.meet(a, b)).collect())
                .collect(),
            class_groups: s
                .groups
                .iter()
                .map(|g| GroupSummary {
                    class: g.class_index,
                    members: g.members.clone(),
                    signature: g.factor_signature.clone(),
                })
                .collect(),
            reducible: reduction.is_reducible(),
            reduction,
        })
    } else {
        None
    };
    Ok(Analysis {
        axioms: Axioms {
            associative,
            symmetric,
            idempotent,
        },
        structure,
        violations,
    })
}
