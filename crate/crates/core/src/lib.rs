//! Construction, verification and exhaustive search of (pandiagonal) magic
//! Cayley-sudoku tables of finite groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`group`], [`subgroup`], [`extraspecial`]: finite-group arithmetic;
//! * [`table`], [`verify`]: labeled tables, raw grids and property checks;
//! * [`construct`]: coset-based Cayley-sudoku tables and the magic construction;
//! * [`search`]: existence decisions with replayable certificates;
//! * [`spec_lang`], [`table_file`], [`fixtures`]: text formats and bundled tables.

pub mod construct;
pub mod extraspecial;
pub mod fixtures;
pub mod group;
pub mod search;
pub mod spec_lang;
pub mod subgroup;
pub mod table;
pub mod table_file;
pub mod verify;

pub use construct::{
    abelian_reps, build_embedding_group, build_extraspecial_instance, check_abelian_hypotheses, check_mcs_hypotheses,
    construction1, construction1_canonical, magic_table, ConstructionError, HypothesisReport, MagicInstance,
};
pub use extraspecial::{ExtraSpecial, ExtraSpecialKind};
pub use group::{ElementId, FiniteGroup, GroupError};
pub use search::{decide_magic_existence, replay_certificate, Certificate, SearchConfig, SearchMode, SearchOutcome};
pub use spec_lang::{parse_group_spec, GroupSpecAst};
pub use subgroup::{CosetReps, Side, Subgroup};
pub use table::{AnyGrid, BlockLayout, CellGrid, RawGrid, SudokuTable};
pub use table_file::TableFile;
pub use verify::{Checks, VerificationReport};
