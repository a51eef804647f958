//! Tail-biting trellis constructions and dualization for linear block codes
//! over prime fields.
//!
//! The crate builds sectional linear trellises for a code `C = im G =
//! ker H^T` of length `n` on the circular time axis `{0, ..., n-1}`:
//!
//! - elementary and product trellises from generators with spans,
//! - BCJR trellises `T_(G,H,D)` from a displacement matrix or a span list,
//! - KV-trellises from selections of characteristic generators,
//!
//! and analyzes them: label codes, complexity profiles, structural
//! properties, reduction, and isomorphism testing. Two dualization methods
//! are implemented — local (transition-space) dualization with a sign
//! inverter and the BCJR dual `T_(H,G,D^T)` — together with the explicit
//! construction of a dual characteristic matrix whose KV-trellises are dual
//! to those of the primal code.
//!
//! All arithmetic is exact over GF(p). Every returned basis is in reduced
//! echelon form, so results are canonical and testable entry for entry.

pub mod chardual;
pub mod code;
pub mod construct;
pub mod dual;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod io;
mod iso;
pub mod span;
pub mod trellis;
pub mod verify;

pub use chardual::{
    dual_characteristic_pair, dual_kv_pair, dual_selection, kv_conjecture_suite,
    verify_bcjr_symmetry, verify_rank_equivalence, ConjectureReport, DualCharResult, DualKvReport,
    DualSelection, RankEquivalenceReport, SymmetryReport,
};
pub use code::{CharacteristicPair, GeneratorPolicy, LinearCode};
pub use construct::{
    displacement_from_spans, elementary_trellis, kv_trellis, BcjrTrellis, ProductTrellis,
};
pub use dual::{
    bcjr_dual, check_subtrellis_dual, local_dual, verify_kv_duality, KvDualityReport,
    StatePairing, SubtrellisReport,
};
pub use error::{Error, Result};
pub use field::{FieldMatrix, PrimeField};
pub use span::{spans_of_vector, Span, SpanList};
pub use trellis::{ComplexityProfile, Isomorphism, LinearTrellis};

/// Enumeration and search limits shared by the expensive operations.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Cap on any single subspace/coefficient enumeration (p^dim).
    pub enumeration: u64,
    /// Largest per-time state dimension the isomorphism search accepts.
    pub iso_state_dim: usize,
    /// Cap on explicit vertex/edge sets per section (DOT export).
    pub graph_states: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { enumeration: 1 << 16, iso_state_dim: 4, graph_states: 4096 }
    }
}
