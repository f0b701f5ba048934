//! Labeled Cayley tables, unlabeled grids, and block layouts.

use thiserror::Error;

use crate::group::{ElementId, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayoutError {
    #[error("blocks of {block_rows}x{block_cols} do not tile a {table_rows}x{table_cols} table")]
    DoesNotTile { block_rows: usize, block_cols: usize, table_rows: usize, table_cols: usize },
    #[error("grid body has {got} cells, expected {expected}")]
    BodyShape { expected: usize, got: usize },
    #[error("label sequence has length {got}, expected {expected}")]
    LabelLength { expected: usize, got: usize },
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
}

/// Contiguous tiling of a table into equal rectangular blocks.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockLayout {
    block_rows: usize,
    block_cols: usize,
    table_rows: usize,
    table_cols: usize,
}

impl BlockLayout {
    pub fn new(
        block_rows: usize,
        block_cols: usize,
        table_rows: usize,
        table_cols: usize,
    ) -> Result<Self, LayoutError> {
        if block_rows == 0 || block_cols == 0 || table_rows % block_rows != 0 || table_cols % block_cols != 0 {
            return Err(LayoutError::DoesNotTile { block_rows, block_cols, table_rows, table_cols });
        }
        Ok(BlockLayout { block_rows, block_cols, table_rows, table_cols })
    }

    /// Square `k x k` blocks on a `k^2 x k^2` table.
    pub fn square(k: usize) -> Self {
        BlockLayout::new(k, k, k * k, k * k).expect("k x k tiles k^2 x k^2")
    }

    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    pub fn block_cols(&self) -> usize {
        self.block_cols
    }

    pub fn table_rows(&self) -> usize {
        self.table_rows
    }

    pub fn table_cols(&self) -> usize {
        self.table_cols
    }

    /// Number of block rows and block columns.
    pub fn blocks(&self) -> (usize, usize) {
        (self.table_rows / self.block_rows, self.table_cols / self.block_cols)
    }

    pub fn is_square(&self) -> bool {
        self.block_rows == self.block_cols
    }
}

/// Read access shared by labeled tables and raw grids.
pub trait CellGrid: Sync {
    fn group(&self) -> &FiniteGroup;
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn cell(&self, r: usize, c: usize) -> ElementId;
    /// Row and column border labels, if the grid carries them.
    fn labels(&self) -> Option<(&[ElementId], &[ElementId])>;
    /// The layout recorded with the grid.
    fn layout(&self) -> BlockLayout;
}

/// A Cayley table with border labels and a block layout. The row label
/// multiplies on the left: `body[r][c] = row_labels[r] * col_labels[c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SudokuTable {
    group: FiniteGroup,
    row_labels: Vec<ElementId>,
    col_labels: Vec<ElementId>,
    block_rows: usize,
    block_cols: usize,
    body: Vec<ElementId>,
}

impl SudokuTable {
    /// Fills the body from the labels.
    pub fn from_labels(
        group: &FiniteGroup,
        row_labels: Vec<ElementId>,
        col_labels: Vec<ElementId>,
        block_rows: usize,
        block_cols: usize,
    ) -> Result<Self, LayoutError> {
        let n = group.order();
        check_labels(group, &row_labels, &col_labels)?;
        BlockLayout::new(block_rows, block_cols, n, n)?;
        let mut body = Vec::with_capacity(n * n);
        for &r in &row_labels {
            body.extend(col_labels.iter().map(|&c| group.op(r, c)));
        }
        Ok(SudokuTable { group: group.clone(), row_labels, col_labels, block_rows, block_cols, body })
    }

    /// Takes an arbitrary body; nothing beyond shape is checked, so the result
    /// may fail the Cayley check.
    pub fn from_parts(
        group: &FiniteGroup,
        row_labels: Vec<ElementId>,
        col_labels: Vec<ElementId>,
        block_rows: usize,
        block_cols: usize,
        body: Vec<ElementId>,
    ) -> Result<Self, LayoutError> {
        let n = group.order();
        check_labels(group, &row_labels, &col_labels)?;
        BlockLayout::new(block_rows, block_cols, n, n)?;
        if body.len() != n * n {
            return Err(LayoutError::BodyShape { expected: n * n, got: body.len() });
        }
        if let Some(bad) = body.iter().find(|x| x.index() >= n) {
            return Err(LayoutError::ElementOutOfRange(bad.index()));
        }
        Ok(SudokuTable { group: group.clone(), row_labels, col_labels, block_rows, block_cols, body })
    }

    pub fn row_labels(&self) -> &[ElementId] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[ElementId] {
        &self.col_labels
    }

    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    pub fn block_cols(&self) -> usize {
        self.block_cols
    }

    pub fn body(&self) -> &[ElementId] {
        &self.body
    }

    pub fn size(&self) -> usize {
        self.group.order()
    }

    pub fn set_cell(&mut self, r: usize, c: usize, x: ElementId) {
        let n = self.size();
        self.body[r * n + c] = x;
    }

    pub fn row(&self, r: usize) -> &[ElementId] {
        let n = self.size();
        &self.body[r * n..(r + 1) * n]
    }
}

fn check_labels(group: &FiniteGroup, rows: &[ElementId], cols: &[ElementId]) -> Result<(), LayoutError> {
    let n = group.order();
    for labels in [rows, cols] {
        if labels.len() != n {
            return Err(LayoutError::LabelLength { expected: n, got: labels.len() });
        }
        if let Some(bad) = labels.iter().find(|x| x.index() >= n) {
            return Err(LayoutError::ElementOutOfRange(bad.index()));
        }
    }
    Ok(())
}

impl CellGrid for SudokuTable {
    fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn rows(&self) -> usize {
        self.size()
    }

    fn cols(&self) -> usize {
        self.size()
    }

    #[inline]
    fn cell(&self, r: usize, c: usize) -> ElementId {
        self.body[r * self.size() + c]
    }

    fn labels(&self) -> Option<(&[ElementId], &[ElementId])> {
        Some((&self.row_labels, &self.col_labels))
    }

    fn layout(&self) -> BlockLayout {
        BlockLayout::new(self.block_rows, self.block_cols, self.size(), self.size()).expect("validated on construction")
    }
}

/// A grid of group elements without border labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGrid {
    group: FiniteGroup,
    rows: usize,
    cols: usize,
    block_rows: usize,
    block_cols: usize,
    cells: Vec<ElementId>,
}

impl RawGrid {
    pub fn new(
        group: &FiniteGroup,
        rows: usize,
        cols: usize,
        block_rows: usize,
        block_cols: usize,
        cells: Vec<ElementId>,
    ) -> Result<Self, LayoutError> {
        BlockLayout::new(block_rows, block_cols, rows, cols)?;
        if cells.len() != rows * cols {
            return Err(LayoutError::BodyShape { expected: rows * cols, got: cells.len() });
        }
        if let Some(bad) = cells.iter().find(|x| x.index() >= group.order()) {
            return Err(LayoutError::ElementOutOfRange(bad.index()));
        }
        Ok(RawGrid { group: group.clone(), rows, cols, block_rows, block_cols, cells })
    }

    pub fn cells(&self) -> &[ElementId] {
        &self.cells
    }
}

impl CellGrid for RawGrid {
    fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn cell(&self, r: usize, c: usize) -> ElementId {
        self.cells[r * self.cols + c]
    }

    fn labels(&self) -> Option<(&[ElementId], &[ElementId])> {
        None
    }

    fn layout(&self) -> BlockLayout {
        BlockLayout::new(self.block_rows, self.block_cols, self.rows, self.cols).expect("validated on construction")
    }
}

/// Either kind of grid, as loaded from a table file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGrid {
    Labeled(SudokuTable),
    Raw(RawGrid),
}

impl AnyGrid {
    pub fn as_grid(&self) -> &dyn CellGrid {
        match self {
            AnyGrid::Labeled(t) => t,
            AnyGrid::Raw(g) => g,
        }
    }
}
