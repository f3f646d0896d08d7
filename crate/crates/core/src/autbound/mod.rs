//! Boundaries of automatic structures on free abelian groups, read off a
//! labelled automaton.

mod boundary;
mod cycles;
mod fellow;
mod fsa;

pub use boundary::{boundary_points, hausdorff_profile, simple_boundary_sequences, SimpleBoundarySequence};
pub use cycles::{
    cycle_label_generators, generated_index, has_zero_cycle, simple_cycles, Cycle, CycleEnumeration,
    GeneratedIndex, ZeroCycle,
};
pub use fellow::{check_fellow_traveller, FellowPair, FellowReport};
pub use fsa::{shortlex_structure, AlphabetLetter, FsaError, LabeledFsa};

/// Cap on enumerated cycles and sequences.
pub const DEFAULT_CYCLE_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutError {
    #[error(transparent)]
    Fsa(#[from] FsaError),
    #[error("more than {0} simple cycles or paths")]
    Overflow(usize),
    #[error("the structure is not finite-to-one: a cycle at state {} has label sum zero", .0.base)]
    ZeroCycle(ZeroCycle),
}
