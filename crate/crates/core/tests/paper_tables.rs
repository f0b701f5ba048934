use std::path::PathBuf;

use mcs_core::construct::{construction1_canonical, magic_table};
use mcs_core::fixtures::{table1, table2, table3, TABLE1_TEXT};
use mcs_core::spec_lang::build_group;
use mcs_core::table_file::{read_table, render_ascii, write_table, TableFile};
use mcs_core::verify::{
    block_line_products, block_row_column_products, verify, verify_cayley, verify_magic, verify_modular_magic_grid,
    verify_pandiagonal_magic, verify_sudoku, Failure, LineKind, VerifyError,
};
use mcs_core::{AnyGrid, CellGrid, Checks, CosetReps, ElementId, FiniteGroup, MagicInstance, Side, Subgroup};

fn id(i: usize) -> ElementId {
    ElementId::new(i)
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn names(g: &FiniteGroup, xs: &[&str]) -> Vec<ElementId> {
    xs.iter().map(|x| g.element(x).unwrap()).collect()
}

#[test]
fn cyclic_arithmetic_matches_table1() {
    let z9 = FiniteGroup::cyclic(9).unwrap();
    assert_eq!(z9.op(id(7), id(5)), id(3));
}

#[test]
fn construction1_reproduces_table1() {
    let z9 = FiniteGroup::cyclic(9).unwrap();
    let h = Subgroup::new(&z9, &[id(0), id(3), id(6)]).unwrap();
    assert_eq!(z9.subgroup_generated(&[id(3)]).unwrap(), h);
    let t = construction1_canonical(&h).unwrap();
    assert_eq!(t, table1());
    let layout = t.layout();
    assert!(verify_cayley(&t).unwrap());
    assert!(verify_sudoku(&t, &layout).unwrap());
}

#[test]
fn table1_is_not_magic() {
    let t = table1();
    let layout = t.layout();
    assert!(!verify_magic(&t, &layout).unwrap());
    let lines = block_row_column_products(&t, &layout, (0, 0)).unwrap();
    assert_eq!(lines[&LineKind::Row(0)], id(0));
    assert_eq!(lines[&LineKind::Row(1)], id(3));
}

#[test]
fn perturbed_table1_fails_with_location() {
    let mut t = table1();
    let old = t.cell(4, 5);
    t.set_cell(4, 5, t.group().op(old, id(1)));
    let report = verify(&t, &t.layout(), Checks::sudoku()).unwrap();
    assert_eq!(report.is_cayley, Some(false));
    assert_eq!(report.is_sudoku, Some(false));
    assert!(report.failures.iter().any(|f| matches!(f, Failure::Cayley { row: 4, col: 5, .. })));
    assert!(report.failures.iter().any(|f| matches!(f, Failure::Sudoku { block: (1, 1), .. })));
}

#[test]
fn magic_table_reproduces_table3() {
    let g = build_group("C3 x C3").unwrap();
    let n_order = names(&g, &["00", "10", "20"]);
    let n = Subgroup::new(&g, &n_order).unwrap();
    let t = CosetReps::new(&n, names(&g, &["00", "01", "02"]), Side::Left).unwrap();
    let inst = MagicInstance::with_n_order(&g, n, n_order, t).unwrap();
    let table = magic_table(&inst).unwrap();
    assert_eq!(table, table3());
    let report = verify(&table, &table.layout(), Checks::pandiagonal()).unwrap();
    assert!(report.passed());
    assert_eq!(report.failure_count, 0);
}

#[test]
fn table3_broken_diagonal_spot_check() {
    let t = table3();
    let g = t.group().clone();
    let lines = block_line_products(&t, &t.layout(), (0, 0)).unwrap();
    // starts in the second row, first column: 01, 12, then 20 wrapping around
    assert_eq!(lines[&LineKind::Diagonal(2)], g.element("00").unwrap());
    assert_eq!(lines.len(), 12);
    assert!(lines.values().all(|&x| x == g.identity()));
    assert!(verify_pandiagonal_magic(&t, &t.layout()).unwrap());
}

#[test]
fn table2_is_a_modular_magic_grid() {
    let t = table2();
    let layout = t.layout();
    assert!(verify_modular_magic_grid(&t, &layout).unwrap());
    let lines = block_line_products(&t, &layout, (0, 1)).unwrap();
    // 7 + 8 + 3 and 6 + 0 + 3
    assert_eq!(lines[&LineKind::Column(0)], id(0));
    assert_eq!(lines[&LineKind::Antidiagonal(1)], id(0));
    assert_eq!(verify_cayley(&t), Err(VerifyError::RawGrid));
}

#[test]
fn table2_with_swapped_entries_fails() {
    let t = table2();
    let mut cells = t.cells().to_vec();
    cells.swap(0, 1);
    let g = t.group().clone();
    let swapped = mcs_core::RawGrid::new(&g, 9, 9, 3, 3, cells).unwrap();
    assert!(!verify_modular_magic_grid(&swapped, &swapped.layout()).unwrap());
}

#[test]
fn ascii_renders_match_golden_files() {
    assert_eq!(render_ascii(&table1()), golden("table1.txt"));
    assert_eq!(render_ascii(&table2()), golden("table2.txt"));
    let t3 = render_ascii(&table3());
    assert_eq!(t3, golden("table3.txt"));
    let first_body_row = t3.lines().nth(2).unwrap();
    assert!(first_body_row.contains("00 10 20 | 01 11 21 | 02 12 22"));
}

#[test]
fn table1_file_round_trips() {
    let file = TableFile::parse(TABLE1_TEXT).unwrap();
    let grid = file.to_grid().unwrap();
    let AnyGrid::Labeled(t) = &grid else { panic!("labeled") };
    assert_eq!(TableFile::from_grid(t), file);
    assert_eq!(read_table(&write_table(t)).unwrap(), grid);
}
