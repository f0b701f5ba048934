//! Shared workloads for the criterion benches.

use mcs_core::construct::{build_embedding_group, build_extraspecial_instance, magic_table};
use mcs_core::{ExtraSpecialKind, FiniteGroup, SudokuTable};

/// Magic table of the embedding group of `h`.
pub fn embedding_table(h: &FiniteGroup) -> SudokuTable {
    let inst = build_embedding_group(h).expect("embedding hypotheses hold");
    magic_table(&inst).expect("embedding hypotheses hold")
}

/// Magic table of the extra-special group of order `p^3` of the given kind.
pub fn extraspecial_table(p: usize, kind: ExtraSpecialKind) -> SudokuTable {
    let (_, inst) = build_extraspecial_instance(p, kind).expect("odd prime");
    magic_table(&inst).expect("extra-special hypotheses hold")
}
