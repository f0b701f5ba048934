//! Plain-text table files and ASCII rendering.
//!
//! A table file lists its fields in a fixed order, one per line, with the body
//! last:
//!
//! ```text
//! group_spec: C9
//! element_names: 0 1 2 3 4 5 6 7 8
//! row_labels: 0 1 2 3 4 5 6 7 8
//! col_labels: 0 3 6 1 4 7 2 5 8
//! block_rows: 3
//! block_cols: 3
//! body:
//! 0 3 6 1 4 7 2 5 8
//! ...
//! ```
//!
//! Entries are element names separated by whitespace. Files without
//! `row_labels` and `col_labels` describe raw grids. Lines starting with `#`
//! are comments.

use std::collections::HashMap;

use thiserror::Error;

use crate::group::{ElementId, FiniteGroup};
use crate::spec_lang::{build_group, SpecError};
use crate::table::{AnyGrid, CellGrid, LayoutError, RawGrid, SudokuTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing field {0}")]
    MissingField(&'static str),
    #[error("group spec: {0}")]
    Spec(#[from] SpecError),
    #[error("table file has no group spec; tables of ad hoc groups cannot be reloaded")]
    EmptySpec,
    #[error("element_names do not match the elements of {spec}")]
    NameMismatch { spec: String },
    #[error("unknown element name {0:?}")]
    UnknownName(String),
    #[error("row_labels and col_labels must be given together")]
    HalfLabeled,
    #[error("body row {row} has {got} entries, expected {expected}")]
    RaggedBody { row: usize, expected: usize, got: usize },
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableFile {
    pub group_spec: String,
    pub element_names: Vec<String>,
    pub row_labels: Option<Vec<String>>,
    pub col_labels: Option<Vec<String>>,
    pub block_rows: usize,
    pub block_cols: usize,
    pub body: Vec<Vec<String>>,
}

fn names_of(group: &FiniteGroup, xs: &[ElementId]) -> Vec<String> {
    xs.iter().map(|&x| group.name(x).to_string()).collect()
}

impl TableFile {
    /// Captures any grid, labeled or raw.
    pub fn from_grid(grid: &dyn CellGrid) -> Self {
        let g = grid.group();
        let layout = grid.layout();
        let (row_labels, col_labels) = match grid.labels() {
            Some((r, c)) => (Some(names_of(g, r)), Some(names_of(g, c))),
            None => (None, None),
        };
        TableFile {
            group_spec: g.spec().to_string(),
            element_names: g.names().to_vec(),
            row_labels,
            col_labels,
            block_rows: layout.block_rows(),
            block_cols: layout.block_cols(),
            body: (0..grid.rows())
                .map(|r| (0..grid.cols()).map(|c| g.name(grid.cell(r, c)).to_string()).collect())
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("group_spec: {}\n", self.group_spec));
        s.push_str(&format!("element_names: {}\n", self.element_names.join(" ")));
        if let Some(r) = &self.row_labels {
            s.push_str(&format!("row_labels: {}\n", r.join(" ")));
        }
        if let Some(c) = &self.col_labels {
            s.push_str(&format!("col_labels: {}\n", c.join(" ")));
        }
        s.push_str(&format!("block_rows: {}\n", self.block_rows));
        s.push_str(&format!("block_cols: {}\n", self.block_cols));
        s.push_str("body:\n");
        for row in &self.body {
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, TableFileError> {
        let mut fields: HashMap<String, (usize, String)> = HashMap::new();
        let mut body = Vec::new();
        let mut in_body = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if in_body {
                body.push(line.split_whitespace().map(str::to_string).collect::<Vec<_>>());
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| TableFileError::Syntax {
                line: line_no,
                message: format!("expected 'key: value', found {line:?}"),
            })?;
            let key = key.trim();
            if !["group_spec", "element_names", "row_labels", "col_labels", "block_rows", "block_cols", "body"]
                .contains(&key)
            {
                return Err(TableFileError::Syntax { line: line_no, message: format!("unknown field {key:?}") });
            }
            if key == "body" {
                if !value.trim().is_empty() {
                    return Err(TableFileError::Syntax {
                        line: line_no,
                        message: "body starts on the next line".into(),
                    });
                }
                in_body = true;
                continue;
            }
            if fields.insert(key.to_string(), (line_no, value.trim().to_string())).is_some() {
                return Err(TableFileError::Syntax { line: line_no, message: format!("duplicate field {key:?}") });
            }
        }
        if !in_body {
            return Err(TableFileError::MissingField("body"));
        }
        let take = |key: &'static str| fields.get(key).cloned().ok_or(TableFileError::MissingField(key));
        let list = |key: &'static str| fields.get(key).map(|(_, v)| v.split_whitespace().map(str::to_string).collect());
        let int = |key: &'static str| -> Result<usize, TableFileError> {
            let (line, v) = take(key)?;
            v.parse().map_err(|_| TableFileError::Syntax { line, message: format!("{key} must be a positive integer") })
        };
        Ok(TableFile {
            group_spec: take("group_spec")?.1,
            element_names: list("element_names").ok_or(TableFileError::MissingField("element_names"))?,
            row_labels: list("row_labels"),
            col_labels: list("col_labels"),
            block_rows: int("block_rows")?,
            block_cols: int("block_cols")?,
            body,
        })
    }

    /// Rebuilds the group from `group_spec` and resolves every name.
    pub fn to_grid(&self) -> Result<AnyGrid, TableFileError> {
        if self.group_spec.is_empty() {
            return Err(TableFileError::EmptySpec);
        }
        let group = build_group(&self.group_spec)?;
        if group.names() != self.element_names.as_slice() {
            return Err(TableFileError::NameMismatch { spec: self.group_spec.clone() });
        }
        let resolve = |name: &str| group.element(name).map_err(|_| TableFileError::UnknownName(name.to_string()));
        let resolve_all = |names: &[String]| names.iter().map(|n| resolve(n)).collect::<Result<Vec<_>, _>>();
        let cols = self.body.first().map_or(0, Vec::len);
        for (row, r) in self.body.iter().enumerate() {
            if r.len() != cols {
                return Err(TableFileError::RaggedBody { row, expected: cols, got: r.len() });
            }
        }
        let mut cells = Vec::with_capacity(self.body.len() * cols);
        for r in &self.body {
            cells.extend(resolve_all(r)?);
        }
        match (&self.row_labels, &self.col_labels) {
            (Some(r), Some(c)) => {
                let table = SudokuTable::from_parts(
                    &group,
                    resolve_all(r)?,
                    resolve_all(c)?,
                    self.block_rows,
                    self.block_cols,
                    cells,
                )?;
                Ok(AnyGrid::Labeled(table))
            }
            (None, None) => {
                Ok(AnyGrid::Raw(RawGrid::new(&group, self.body.len(), cols, self.block_rows, self.block_cols, cells)?))
            }
            _ => Err(TableFileError::HalfLabeled),
        }
    }
}

pub fn serialize(grid: &dyn CellGrid) -> TableFile {
    TableFile::from_grid(grid)
}

pub fn parse_table(file: &TableFile) -> Result<AnyGrid, TableFileError> {
    file.to_grid()
}

/// Text of a grid in table-file form.
pub fn write_table(grid: &dyn CellGrid) -> String {
    TableFile::from_grid(grid).to_text()
}

/// Parses table-file text straight to a grid.
pub fn read_table(text: &str) -> Result<AnyGrid, TableFileError> {
    TableFile::parse(text)?.to_grid()
}

/// Renders a grid in the style of the printed tables: border labels
/// separated by `||`, a double rule under the header, and single rules at
/// block boundaries.
pub fn render_ascii(grid: &dyn CellGrid) -> String {
    let g = grid.group();
    let layout = grid.layout();
    let (rows, cols) = (grid.rows(), grid.cols());
    let width_of = |x: ElementId| g.name(x).chars().count();
    let mut cell_w = 1;
    for r in 0..rows {
        for c in 0..cols {
            cell_w = cell_w.max(width_of(grid.cell(r, c)));
        }
    }
    let labels = grid.labels();
    if let Some((_, cl)) = labels {
        cell_w = cell_w.max(cl.iter().map(|&x| width_of(x)).max().unwrap_or(1));
    }
    let label_w = labels.map(|(rl, _)| rl.iter().map(|&x| width_of(x)).max().unwrap_or(1));

    let cells_line = |items: &mut dyn Iterator<Item = ElementId>| {
        let mut s = String::new();
        for (c, x) in items.enumerate() {
            s.push_str(&format!(" {:>cell_w$}", g.name(x)));
            if (c + 1) % layout.block_cols() == 0 {
                s.push_str(" |");
            }
        }
        s
    };

    let mut lines = Vec::new();
    match (labels, label_w) {
        (Some((rl, cl)), Some(lw)) => {
            let header = format!("{:>lw$} ||{}", "", cells_line(&mut cl.iter().copied()));
            let width = header.chars().count();
            lines.push(header);
            lines.push("=".repeat(width));
            for (r, &label) in rl.iter().enumerate() {
                lines.push(format!("{:>lw$} ||{}", g.name(label), cells_line(&mut (0..cols).map(|c| grid.cell(r, c)))));
                if (r + 1) % layout.block_rows() == 0 {
                    lines.push("-".repeat(width));
                }
            }
        }
        _ => {
            let sample = format!("|{}", cells_line(&mut (0..cols).map(|_| g.identity())));
            let width = sample.chars().count();
            lines.push("-".repeat(width));
            for r in 0..rows {
                lines.push(format!("|{}", cells_line(&mut (0..cols).map(|c| grid.cell(r, c)))));
                if (r + 1) % layout.block_rows() == 0 {
                    lines.push("-".repeat(width));
                }
            }
        }
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

/// Comma-separated body, preceded by the column labels when present (with an
/// empty corner cell).
pub fn render_csv(grid: &dyn CellGrid) -> String {
    let g = grid.group();
    let mut out = String::new();
    let labels = grid.labels();
    if let Some((_, cl)) = labels {
        out.push(',');
        out.push_str(&names_of(g, cl).join(","));
        out.push('\n');
    }
    for r in 0..grid.rows() {
        let mut row: Vec<String> = (0..grid.cols()).map(|c| g.name(grid.cell(r, c)).to_string()).collect();
        if let Some((rl, _)) = labels {
            row.insert(0, g.name(rl[r]).to_string());
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group_renders_one_cell() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let e = g.identity();
        let t = SudokuTable::from_labels(&g, vec![e], vec![e], 1, 1).unwrap();
        assert_eq!(render_ascii(&t), "  || 0 |\n========\n0 || 0 |\n--------\n");
    }

    #[test]
    fn roundtrip_labeled_and_raw() {
        let g = build_group("C2 x C2").unwrap();
        let labels: Vec<_> = g.elements().collect();
        let t = SudokuTable::from_labels(&g, labels.clone(), labels, 2, 2).unwrap();
        let text = write_table(&t);
        assert_eq!(read_table(&text).unwrap(), AnyGrid::Labeled(t.clone()));

        let raw = RawGrid::new(&g, 4, 4, 2, 2, t.body().to_vec()).unwrap();
        let text = write_table(&raw);
        assert!(!text.contains("row_labels"));
        assert_eq!(read_table(&text).unwrap(), AnyGrid::Raw(raw));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(TableFile::parse("group_spec: C2\n").unwrap_err(), TableFileError::MissingField("body"));
        assert!(matches!(TableFile::parse("oops\nbody:\n"), Err(TableFileError::Syntax { line: 1, .. })));
        let text = "group_spec: C2\nelement_names: 0 1\nblock_rows: 1\nblock_cols: 1\nbody:\n0 1\n1 7\n";
        assert_eq!(read_table(text).unwrap_err(), TableFileError::UnknownName("7".into()));
        let text = "group_spec: C2\nelement_names: 0 1\nblock_rows: 1\nblock_cols: 1\nbody:\n0 1\n1\n";
        assert!(matches!(read_table(text), Err(TableFileError::RaggedBody { row: 1, .. })));
        let text = "group_spec: C3\nelement_names: 0 1\nblock_rows: 1\nblock_cols: 1\nbody:\n0\n";
        assert!(matches!(read_table(text), Err(TableFileError::NameMismatch { .. })));
    }
}
