//! Checks for the Cayley, sudoku, magic and pandiagonal-magic properties.
//!
//! Lines of a `k x k` block are indexed as follows (0-based row `r`):
//!
//! * broken diagonal `j` (`1 <= j <= k`) visits column `(r + j) mod k`;
//!   `j = k` is the main diagonal;
//! * broken antidiagonal `j` visits column `(j - r - 2) mod k`, the 0-based
//!   form of the 1-based position `(l, j - l)`; `j = 1` is the main antidiagonal.
//!
//! Column and (anti)diagonal products run top to bottom, row products left
//! to right. Left-to-right diagonal products are a separate, optional check.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::group::{ElementId, FiniteGroup};
use crate::table::{BlockLayout, CellGrid, LayoutError};

/// Failure lists are truncated to this many entries.
pub const MAX_REPORTED_FAILURES: usize = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("grid has no border labels; Cayley checks need a labeled table")]
    RawGrid,
    #[error("diagonal lines need square blocks, got {rows}x{cols}")]
    NonSquareBlocks { rows: usize, cols: usize },
    #[error("layout {layout_rows}x{layout_cols} does not match grid {grid_rows}x{grid_cols}")]
    LayoutMismatch { layout_rows: usize, layout_cols: usize, grid_rows: usize, grid_cols: usize },
    #[error("block ({0}, {1}) out of range")]
    BlockOutOfRange(usize, usize),
    #[error("malformed modular grid: {0}")]
    MalformedModularGrid(String),
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

/// One line of a block. `Row`/`Column` carry a 0-based offset, diagonals the
/// 1-based `j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineKind {
    Row(usize),
    Column(usize),
    Diagonal(usize),
    Antidiagonal(usize),
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineKind::Row(i) => write!(f, "row {i}"),
            LineKind::Column(i) => write!(f, "column {i}"),
            LineKind::Diagonal(j) => write!(f, "broken-diagonal {j}"),
            LineKind::Antidiagonal(j) => write!(f, "broken-antidiagonal {j}"),
        }
    }
}

impl LineKind {
    /// Lines that count for plain magic: rows, columns, main diagonal (`j = k`)
    /// and main antidiagonal (`j = 1`).
    pub fn is_magic_line(self, k: usize) -> bool {
        match self {
            LineKind::Row(_) | LineKind::Column(_) => true,
            LineKind::Diagonal(j) => j == k,
            LineKind::Antidiagonal(j) => j == 1,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Cayley,
    Sudoku,
    Magic,
    Pandiagonal,
    LeftToRight,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Cayley => "cayley",
            Property::Sudoku => "sudoku",
            Property::Magic => "magic",
            Property::Pandiagonal => "pandiagonal",
            Property::LeftToRight => "left-to-right",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Columns,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// A border label sequence is not a permutation of the group.
    LabelsNotPermutation {
        axis: Axis,
    },
    Cayley {
        row: usize,
        col: usize,
        expected: ElementId,
        observed: ElementId,
    },
    /// `element` occurs `count != 1` times in the block.
    Sudoku {
        block: (usize, usize),
        element: ElementId,
        count: usize,
    },
    /// A line product that is not the identity. `property` is the weakest
    /// property the line belongs to.
    Line {
        property: Property,
        block: (usize, usize),
        line: LineKind,
        observed: ElementId,
    },
}

impl Failure {
    pub fn describe(&self, group: &FiniteGroup) -> String {
        match self {
            Failure::LabelsNotPermutation { axis } => {
                format!("cayley: {axis:?} labels are not a permutation of the group")
            }
            Failure::Cayley { row, col, expected, observed } => format!(
                "cayley: cell ({row}, {col}) is {} but row*col = {}",
                group.name(*observed),
                group.name(*expected)
            ),
            Failure::Sudoku { block, element, count } => {
                format!("sudoku: block ({}, {}) contains {} {count} times", block.0, block.1, group.name(*element))
            }
            Failure::Line { property, block, line, observed } => {
                format!("{property}: block ({}, {}) {line} product is {}", block.0, block.1, group.name(*observed))
            }
        }
    }
}

/// Which properties to check.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Checks {
    pub cayley: bool,
    pub sudoku: bool,
    pub magic: bool,
    pub pandiagonal: bool,
    pub left_to_right: bool,
}

impl Checks {
    pub fn sudoku() -> Self {
        Checks { cayley: true, sudoku: true, ..Default::default() }
    }

    pub fn all() -> Self {
        Checks { cayley: true, sudoku: true, magic: true, pandiagonal: true, left_to_right: true }
    }

    pub fn pandiagonal() -> Self {
        Checks { cayley: true, sudoku: true, magic: true, pandiagonal: true, left_to_right: false }
    }
}

/// Outcome of [`verify`]. Flags are `None` when not requested.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub is_cayley: Option<bool>,
    pub is_sudoku: Option<bool>,
    pub is_magic: Option<bool>,
    pub is_pandiagonal_magic: Option<bool>,
    pub left_to_right_diagonals: Option<bool>,
    /// First [`MAX_REPORTED_FAILURES`] failures, block-major.
    pub failures: Vec<Failure>,
    pub failure_count: usize,
}

impl VerificationReport {
    /// True when every requested flag holds.
    pub fn passed(&self) -> bool {
        [self.is_cayley, self.is_sudoku, self.is_magic, self.is_pandiagonal_magic, self.left_to_right_diagonals]
            .iter()
            .all(|f| f.unwrap_or(true))
    }

    fn push(&mut self, failures: impl IntoIterator<Item = Failure>, count: usize) {
        for f in failures {
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(f);
            }
        }
        self.failure_count += count;
    }

    pub fn render(&self, group: &FiniteGroup) -> String {
        let mut out = String::new();
        let flag = |f: Option<bool>| match f {
            None => "not checked",
            Some(true) => "pass",
            Some(false) => "FAIL",
        };
        out.push_str(&format!("cayley: {}\n", flag(self.is_cayley)));
        out.push_str(&format!("sudoku: {}\n", flag(self.is_sudoku)));
        out.push_str(&format!("magic: {}\n", flag(self.is_magic)));
        out.push_str(&format!("pandiagonal magic: {}\n", flag(self.is_pandiagonal_magic)));
        out.push_str(&format!("left-to-right diagonals: {}\n", flag(self.left_to_right_diagonals)));
        out.push_str(&format!("failures: {}\n", self.failure_count));
        for f in &self.failures {
            out.push_str("  ");
            out.push_str(&f.describe(group));
            out.push('\n');
        }
        if self.failure_count > self.failures.len() {
            out.push_str(&format!("  ... {} more\n", self.failure_count - self.failures.len()));
        }
        out
    }
}

fn check_layout(grid: &dyn CellGrid, layout: &BlockLayout) -> Result<(), VerifyError> {
    if layout.table_rows() != grid.rows() || layout.table_cols() != grid.cols() {
        return Err(VerifyError::LayoutMismatch {
            layout_rows: layout.table_rows(),
            layout_cols: layout.table_cols(),
            grid_rows: grid.rows(),
            grid_cols: grid.cols(),
        });
    }
    Ok(())
}

fn check_square(layout: &BlockLayout) -> Result<usize, VerifyError> {
    if !layout.is_square() {
        return Err(VerifyError::NonSquareBlocks { rows: layout.block_rows(), cols: layout.block_cols() });
    }
    Ok(layout.block_rows())
}

fn check_block(layout: &BlockLayout, block: (usize, usize)) -> Result<(), VerifyError> {
    let (br, bc) = layout.blocks();
    if block.0 >= br || block.1 >= bc {
        return Err(VerifyError::BlockOutOfRange(block.0, block.1));
    }
    Ok(())
}

/// Column visited by broken diagonal `j` in 0-based row `r` of a `k x k` block.
#[inline]
pub fn diagonal_col(k: usize, j: usize, r: usize) -> usize {
    (r + j) % k
}

/// Column visited by broken antidiagonal `j` in 0-based row `r`.
#[inline]
pub fn antidiagonal_col(k: usize, j: usize, r: usize) -> usize {
    (j + 2 * k - r - 2) % k
}

struct BlockView<'a> {
    grid: &'a dyn CellGrid,
    r0: usize,
    c0: usize,
}

impl BlockView<'_> {
    #[inline]
    fn at(&self, r: usize, c: usize) -> ElementId {
        self.grid.cell(self.r0 + r, self.c0 + c)
    }
}

fn block_view<'a>(grid: &'a dyn CellGrid, layout: &BlockLayout, block: (usize, usize)) -> BlockView<'a> {
    BlockView { grid, r0: block.0 * layout.block_rows(), c0: block.1 * layout.block_cols() }
}

fn row_col_products(
    g: &FiniteGroup,
    view: &BlockView<'_>,
    rows: usize,
    cols: usize,
    mut sink: impl FnMut(LineKind, ElementId),
) {
    for r in 0..rows {
        sink(LineKind::Row(r), g.product_of((0..cols).map(|c| view.at(r, c))));
    }
    for c in 0..cols {
        sink(LineKind::Column(c), g.product_of((0..rows).map(|r| view.at(r, c))));
    }
}

fn diagonal_products(
    g: &FiniteGroup,
    view: &BlockView<'_>,
    k: usize,
    js: &[usize],
    mut sink: impl FnMut(LineKind, ElementId),
) {
    for &j in js {
        sink(LineKind::Diagonal(j), g.product_of((0..k).map(|r| view.at(r, diagonal_col(k, j, r)))));
    }
    for &j in js {
        sink(LineKind::Antidiagonal(j), g.product_of((0..k).map(|r| view.at(r, antidiagonal_col(k, j, r)))));
    }
}

fn left_to_right_products(g: &FiniteGroup, view: &BlockView<'_>, k: usize, mut sink: impl FnMut(LineKind, ElementId)) {
    for j in 1..=k {
        // row whose diagonal-j entry sits in column c
        let prod = g.product_of((0..k).map(|c| view.at((c + k - j % k) % k, c)));
        sink(LineKind::Diagonal(j), prod);
    }
    for j in 1..=k {
        let prod = g.product_of((0..k).map(|c| view.at((j + 2 * k - c - 2) % k, c)));
        sink(LineKind::Antidiagonal(j), prod);
    }
}

/// Every row, column, broken diagonal and broken antidiagonal product of one
/// square block.
pub fn block_line_products(
    grid: &dyn CellGrid,
    layout: &BlockLayout,
    block: (usize, usize),
) -> Result<BTreeMap<LineKind, ElementId>, VerifyError> {
    check_layout(grid, layout)?;
    let k = check_square(layout)?;
    check_block(layout, block)?;
    let g = grid.group();
    let view = block_view(grid, layout, block);
    let mut out = BTreeMap::new();
    row_col_products(g, &view, k, k, |l, x| {
        out.insert(l, x);
    });
    let js: Vec<usize> = (1..=k).collect();
    diagonal_products(g, &view, k, &js, |l, x| {
        out.insert(l, x);
    });
    Ok(out)
}

/// Row and column products of one block of any rectangular shape.
pub fn block_row_column_products(
    grid: &dyn CellGrid,
    layout: &BlockLayout,
    block: (usize, usize),
) -> Result<BTreeMap<LineKind, ElementId>, VerifyError> {
    check_layout(grid, layout)?;
    check_block(layout, block)?;
    let view = block_view(grid, layout, block);
    let mut out = BTreeMap::new();
    row_col_products(grid.group(), &view, layout.block_rows(), layout.block_cols(), |l, x| {
        out.insert(l, x);
    });
    Ok(out)
}

/// Broken diagonal and antidiagonal products taken left to right (by column).
pub fn block_left_to_right_products(
    grid: &dyn CellGrid,
    layout: &BlockLayout,
    block: (usize, usize),
) -> Result<BTreeMap<LineKind, ElementId>, VerifyError> {
    check_layout(grid, layout)?;
    let k = check_square(layout)?;
    check_block(layout, block)?;
    let view = block_view(grid, layout, block);
    let mut out = BTreeMap::new();
    left_to_right_products(grid.group(), &view, k, |l, x| {
        out.insert(l, x);
    });
    Ok(out)
}

struct Capped {
    kept: Vec<Failure>,
    count: usize,
    magic_failed: bool,
    pandiagonal_failed: bool,
    left_to_right_failed: bool,
}

impl Capped {
    fn new() -> Self {
        Capped {
            kept: Vec::new(),
            count: 0,
            magic_failed: false,
            pandiagonal_failed: false,
            left_to_right_failed: false,
        }
    }

    fn push(&mut self, f: Failure) {
        if let Failure::Line { property, .. } = &f {
            match property {
                Property::Magic => {
                    self.magic_failed = true;
                    self.pandiagonal_failed = true;
                }
                Property::Pandiagonal => self.pandiagonal_failed = true,
                Property::LeftToRight => self.left_to_right_failed = true,
                _ => {}
            }
        }
        if self.kept.len() < MAX_REPORTED_FAILURES {
            self.kept.push(f);
        }
        self.count += 1;
    }
}

fn cayley_failures(grid: &dyn CellGrid) -> Result<Capped, VerifyError> {
    let (rows, cols) = grid.labels().ok_or(VerifyError::RawGrid)?;
    let g = grid.group();
    let mut out = Capped::new();
    for (axis, labels) in [(Axis::Rows, rows), (Axis::Columns, cols)] {
        let mut seen = vec![false; g.order()];
        let ok = labels.len() == g.order()
            && labels.iter().all(|x| x.index() < g.order() && !std::mem::replace(&mut seen[x.index()], true));
        if !ok {
            out.push(Failure::LabelsNotPermutation { axis });
        }
    }
    if grid.rows() != rows.len() || grid.cols() != cols.len() {
        return Err(VerifyError::LayoutMismatch {
            layout_rows: rows.len(),
            layout_cols: cols.len(),
            grid_rows: grid.rows(),
            grid_cols: grid.cols(),
        });
    }
    let per_row: Vec<Capped> = (0..grid.rows())
        .into_par_iter()
        .map(|r| {
            let mut c = Capped::new();
            for (col, &label) in cols.iter().enumerate() {
                let expected = g.op(rows[r], label);
                let observed = grid.cell(r, col);
                if expected != observed {
                    c.push(Failure::Cayley { row: r, col, expected, observed });
                }
            }
            c
        })
        .collect();
    for c in per_row {
        for f in c.kept {
            if out.kept.len() < MAX_REPORTED_FAILURES {
                out.kept.push(f);
            }
        }
        out.count += c.count;
    }
    Ok(out)
}

fn sudoku_block_failures(grid: &dyn CellGrid, layout: &BlockLayout, block: (usize, usize)) -> Capped {
    let g = grid.group();
    let view = block_view(grid, layout, block);
    let mut counts = vec![0usize; g.order()];
    for r in 0..layout.block_rows() {
        for c in 0..layout.block_cols() {
            counts[view.at(r, c).index()] += 1;
        }
    }
    let mut out = Capped::new();
    for (i, &n) in counts.iter().enumerate() {
        if n != 1 {
            out.push(Failure::Sudoku { block, element: ElementId::new(i), count: n });
        }
    }
    out
}

fn line_block_failures(grid: &dyn CellGrid, layout: &BlockLayout, block: (usize, usize), checks: &Checks) -> Capped {
    let g = grid.group();
    let k = layout.block_rows();
    let view = block_view(grid, layout, block);
    let e = g.identity();
    let mut out = Capped::new();
    let mut sink = |line: LineKind, x: ElementId| {
        if x != e {
            let property = if line.is_magic_line(k) { Property::Magic } else { Property::Pandiagonal };
            out.push(Failure::Line { property, block, line, observed: x });
        }
    };
    row_col_products(g, &view, k, k, &mut sink);
    let js: Vec<usize> = if checks.pandiagonal {
        (1..=k).collect()
    } else {
        // main antidiagonal (j = 1) and main diagonal (j = k)
        let mut v = vec![1, k];
        v.dedup();
        v
    };
    diagonal_products(g, &view, k, &js, &mut sink);
    if checks.left_to_right {
        left_to_right_products(g, &view, k, |line, x| {
            if x != e {
                out.push(Failure::Line { property: Property::LeftToRight, block, line, observed: x });
            }
        });
    }
    out
}

/// Runs the requested checks and returns the full report.
pub fn verify(grid: &dyn CellGrid, layout: &BlockLayout, checks: Checks) -> Result<VerificationReport, VerifyError> {
    check_layout(grid, layout)?;
    let mut report = VerificationReport::default();
    if checks.cayley {
        let c = cayley_failures(grid)?;
        report.is_cayley = Some(c.count == 0);
        report.push(c.kept, c.count);
    }
    let (br, bc) = layout.blocks();
    let blocks: Vec<(usize, usize)> = (0..br).flat_map(|i| (0..bc).map(move |j| (i, j))).collect();
    if checks.sudoku {
        let per_block: Vec<Capped> = blocks.par_iter().map(|&b| sudoku_block_failures(grid, layout, b)).collect();
        let total: usize = per_block.iter().map(|c| c.count).sum();
        report.is_sudoku = Some(total == 0);
        for c in per_block {
            report.push(c.kept, c.count);
        }
    }
    if checks.magic || checks.pandiagonal || checks.left_to_right {
        check_square(layout)?;
        let per_block: Vec<Capped> =
            blocks.par_iter().map(|&b| line_block_failures(grid, layout, b, &checks)).collect();
        let magic_ok = !per_block.iter().any(|c| c.magic_failed);
        let pan_ok = !per_block.iter().any(|c| c.pandiagonal_failed);
        let ltr_ok = !per_block.iter().any(|c| c.left_to_right_failed);
        if checks.magic || checks.pandiagonal {
            report.is_magic = Some(magic_ok);
        }
        if checks.pandiagonal {
            report.is_pandiagonal_magic = Some(pan_ok);
        }
        if checks.left_to_right {
            report.left_to_right_diagonals = Some(ltr_ok);
        }
        for c in per_block {
            report.push(c.kept, c.count);
        }
    }
    Ok(report)
}

pub fn verify_cayley(grid: &dyn CellGrid) -> Result<bool, VerifyError> {
    Ok(cayley_failures(grid)?.count == 0)
}

/// Every block holds each group element exactly once. Works on raw grids too.
pub fn verify_sudoku(grid: &dyn CellGrid, layout: &BlockLayout) -> Result<bool, VerifyError> {
    let checks = Checks { sudoku: true, ..Default::default() };
    Ok(verify(grid, layout, checks)?.passed())
}

/// Rows, columns, main diagonal and main antidiagonal of every block multiply
/// to the identity.
pub fn verify_magic(grid: &dyn CellGrid, layout: &BlockLayout) -> Result<bool, VerifyError> {
    let checks = Checks { magic: true, ..Default::default() };
    Ok(verify(grid, layout, checks)?.passed())
}

/// Rows, columns and every broken diagonal and antidiagonal of every block
/// multiply to the identity.
pub fn verify_pandiagonal_magic(grid: &dyn CellGrid, layout: &BlockLayout) -> Result<bool, VerifyError> {
    let checks = Checks { magic: true, pandiagonal: true, ..Default::default() };
    Ok(verify(grid, layout, checks)?.passed())
}

/// A `k^2 x k^2` grid over `Z_(k^2)` is a modular magic sudoku grid when every
/// row, column and `k x k` block holds each symbol once and each block's rows,
/// columns, diagonal and antidiagonal sum to 0.
pub fn verify_modular_magic_grid(grid: &dyn CellGrid, layout: &BlockLayout) -> Result<bool, VerifyError> {
    Ok(modular_magic_report(grid, layout)?.passed())
}

pub fn modular_magic_report(grid: &dyn CellGrid, layout: &BlockLayout) -> Result<VerificationReport, VerifyError> {
    check_layout(grid, layout)?;
    let k = check_square(layout)?;
    let n = k * k;
    let g = grid.group();
    if grid.rows() != n || grid.cols() != n {
        return Err(VerifyError::MalformedModularGrid(format!(
            "expected {n}x{n} grid for {k}x{k} blocks, got {}x{}",
            grid.rows(),
            grid.cols()
        )));
    }
    let cyclic = FiniteGroup::cyclic(n).expect("n >= 1");
    if g.order() != n || g.spec() != cyclic.spec() {
        return Err(VerifyError::MalformedModularGrid(format!("entries must lie in Z_{n}, got group {:?}", g.spec())));
    }
    let mut report = verify(grid, layout, Checks { sudoku: true, magic: true, ..Default::default() })?;
    let mut latin = Capped::new();
    for r in 0..n {
        let mut seen = vec![0usize; n];
        for c in 0..n {
            seen[grid.cell(r, c).index()] += 1;
        }
        if seen.iter().any(|&x| x != 1) {
            latin.push(Failure::Line {
                property: Property::Sudoku,
                block: (r / k, 0),
                line: LineKind::Row(r),
                observed: g.identity(),
            });
        }
    }
    for c in 0..n {
        let mut seen = vec![0usize; n];
        for r in 0..n {
            seen[grid.cell(r, c).index()] += 1;
        }
        if seen.iter().any(|&x| x != 1) {
            latin.push(Failure::Line {
                property: Property::Sudoku,
                block: (0, c / k),
                line: LineKind::Column(c),
                observed: g.identity(),
            });
        }
    }
    if latin.count > 0 {
        report.is_sudoku = Some(false);
        report.push(latin.kept, latin.count);
    }
    Ok(report)
}
