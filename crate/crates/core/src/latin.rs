//! Colorings of `K_m □ K_n` viewed as Latin rectangles.
//!
//! A proper coloring of `K_m □ K_n` is exactly an `m x n` array whose rows
//! and columns have distinct entries. It is locating iff any two cells with
//! the same symbol see different symbol sets along their row and column.
//! That condition is checked here directly, without color codes.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::coloring::Color;
use crate::matrix::{ColoringMatrix, FormatError};

#[derive(Debug, Error)]
pub enum LatinError {
    #[error("symbol {symbol} repeats in row {row}")]
    RowRepeat { row: usize, symbol: Color },
    #[error("symbol {symbol} repeats in column {col}")]
    ColumnRepeat { col: usize, symbol: Color },
    #[error(transparent)]
    Format(#[from] FormatError),
}

/// An `m x n` array over symbols `1..=s` with distinct entries in every row
/// and every column. Every symbol up to `s` occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinRectangle {
    cells: ColoringMatrix,
}

impl LatinRectangle {
    pub fn new(rows: Vec<Vec<Color>>) -> Result<Self, LatinError> {
        Self::from_coloring(&ColoringMatrix::from_rows(rows)?)
    }

    pub fn from_coloring(cm: &ColoringMatrix) -> Result<Self, LatinError> {
        for row in 1..=cm.rows() {
            if let Some(symbol) = first_repeat(cm.row(row).iter().copied()) {
                return Err(LatinError::RowRepeat { row, symbol });
            }
        }
        for col in 1..=cm.cols() {
            if let Some(symbol) = first_repeat(cm.column(col)) {
                return Err(LatinError::ColumnRepeat { col, symbol });
            }
        }
        Ok(LatinRectangle { cells: cm.clone() })
    }

    pub fn parse_grid_text(text: &str) -> Result<Self, LatinError> {
        Self::from_coloring(&ColoringMatrix::parse_grid_text(text)?)
    }

    pub fn to_grid_text(&self) -> String {
        self.cells.to_grid_text()
    }

    pub fn to_coloring(&self) -> ColoringMatrix {
        self.cells.clone()
    }

    pub fn m(&self) -> usize {
        self.cells.rows()
    }

    pub fn n(&self) -> usize {
        self.cells.cols()
    }

    pub fn symbols(&self) -> Color {
        self.cells.num_colors()
    }

    /// Symbol at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Color {
        self.cells.get(row, col)
    }

    /// Symbols other than the cell's own that share its row or column.
    fn sight(&self, row: usize, col: usize) -> BTreeSet<Color> {
        let own = self.get(row, col);
        self.cells
            .row(row)
            .iter()
            .copied()
            .chain(self.cells.column(col))
            .filter(|&s| s != own)
            .collect()
    }
}

fn first_repeat(items: impl IntoIterator<Item = Color>) -> Option<Color> {
    let mut seen = BTreeSet::new();
    items.into_iter().find(|&x| !seen.insert(x))
}

/// Whether every pair of same-symbol cells is separated by a symbol that
/// occurs in the row or column of exactly one of them.
pub fn is_locating_latin(lr: &LatinRectangle) -> bool {
    first_unseparated_pair(lr).is_none()
}

/// Two cells (1-based) with the same symbol and the same row/column symbol
/// sets, if any.
pub fn first_unseparated_pair(lr: &LatinRectangle) -> Option<((usize, usize), (usize, usize))> {
    let cells: Vec<(usize, usize)> = (1..=lr.m())
        .flat_map(|i| (1..=lr.n()).map(move |j| (i, j)))
        .collect();
    for s in 1..=lr.symbols() {
        let same: Vec<_> = cells
            .iter()
            .copied()
            .filter(|&(i, j)| lr.get(i, j) == s)
            .collect();
        let sights: Vec<_> = same.iter().map(|&(i, j)| lr.sight(i, j)).collect();
        for a in 0..same.len() {
            for b in a + 1..same.len() {
                if sights[a].symmetric_difference(&sights[b]).next().is_none() {
                    return Some((same[a], same[b]));
                }
            }
        }
    }
    None
}
