//! Finite symmetric n-ary bands: operations `F: X^n -> X` on a finite set
//! that are associative, invariant under permutations of their arguments,
//! and idempotent.
//!
//! Every such band is a strong n-ary semilattice of n-ary extensions of
//! Abelian groups whose exponents divide `n - 1`. This crate computes that
//! decomposition, builds bands back from the pieces, enumerates all bands on
//! small carriers, and decides when a band is the n-ary extension of a binary
//! semigroup.
//!
//! | module | contents |
//! |---|---|
//! | [`optable`] | dense operation tables, axiom checks, extension, isomorphism |
//! | [`bandcore`] | associated binary band, left translations, least semilattice congruence |
//! | [`group`] | finite Abelian group tables and their homomorphisms |
//! | [`structure`] | strong semilattice decomposition and its validation |
//! | [`compose`] | synthesis from decompositions, enumeration, brute-force oracle |
//! | [`reduce`] | reducibility to a binary semigroup |
//! | [`io`] | JSON documents for tables, systems, and reductions |
//! | [`cli`] | the `symband` command-line front end |

pub mod bandcore;
pub mod cli;
pub mod compose;
pub mod error;
pub mod group;
pub mod io;
pub mod optable;
pub mod reduce;
pub mod structure;

pub use bandcore::{Classification, LambdaTable, QuotientSemilattice, SigmaPartition, SymmetricBand};
pub use compose::{BandCatalog, GroupSpec};
pub use error::{AxiomViolation, Error, Result};
pub use group::AbelianGroup;
pub use optable::{OpTable, TupleCodec};
pub use reduce::{NeutralSelection, ReductionResult};
pub use structure::{ClassGroup, HomMap, StrongSystem, ValidationReport};

/// Resource limits for the exhaustive operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Largest table, in cells, that `extend` may materialize.
    pub max_cells: u64,
    /// Largest carrier for which all `m!` relabelings are tried.
    pub max_relabel_size: usize,
    /// Largest candidate space a brute-force oracle may scan.
    pub max_candidates: u64,
    /// Largest carrier for structural enumeration.
    pub max_enumeration_size: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_cells: 1 << 28,
            max_relabel_size: 8,
            max_candidates: 1 << 24,
            max_enumeration_size: 6,
        }
    }
}
