//! The three example tables from the literature, bundled as table files.

use crate::table::{AnyGrid, RawGrid, SudokuTable};
use crate::table_file::read_table;

pub const TABLE1_TEXT: &str = include_str!("../fixtures/table1.tbl");
pub const TABLE2_TEXT: &str = include_str!("../fixtures/table2.tbl");
pub const TABLE3_TEXT: &str = include_str!("../fixtures/table3.tbl");

/// Fixture names accepted by [`fixture_text`].
pub const FIXTURE_NAMES: [&str; 3] = ["table1", "table2", "table3"];

pub fn fixture_text(name: &str) -> Option<&'static str> {
    match name {
        "table1" => Some(TABLE1_TEXT),
        "table2" => Some(TABLE2_TEXT),
        "table3" => Some(TABLE3_TEXT),
        _ => None,
    }
}

fn labeled(text: &str) -> SudokuTable {
    match read_table(text).expect("bundled fixture parses") {
        AnyGrid::Labeled(t) => t,
        AnyGrid::Raw(_) => panic!("fixture has border labels"),
    }
}

/// Cayley-sudoku table of `Z9` with `3 x 3` blocks.
pub fn table1() -> SudokuTable {
    labeled(TABLE1_TEXT)
}

/// Modular magic sudoku grid over `Z9`; it carries no border labels.
pub fn table2() -> RawGrid {
    match read_table(TABLE2_TEXT).expect("bundled fixture parses") {
        AnyGrid::Raw(g) => g,
        AnyGrid::Labeled(_) => panic!("fixture has no border labels"),
    }
}

/// Pandiagonal magic Cayley-sudoku table of `Z3 x Z3`.
pub fn table3() -> SudokuTable {
    labeled(TABLE3_TEXT)
}
