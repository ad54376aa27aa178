//! Matrix view of product-graph colorings, per-row/column profiles, and the
//! coloring file format.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{colorful_vertices, Color, Coloring, ColoringError};
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed coloring document: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("coloring document: {0}")]
    Invalid(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// `rows x cols` color matrix; cell `(i, j)` is the color of vertex
/// `v_{i,j}` of a product graph (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoringMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Color>,
}

impl ColoringMatrix {
    pub fn from_rows(rows: Vec<Vec<Color>>) -> Result<Self, FormatError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(FormatError::Invalid("empty matrix".into()));
        }
        if let Some(i) = rows.iter().position(|row| row.len() != c) {
            return Err(FormatError::Invalid(format!(
                "row {} has {} entries, expected {c}",
                i + 1,
                rows[i].len()
            )));
        }
        let cells: Vec<Color> = rows.into_iter().flatten().collect();
        Coloring::new(cells.clone())?;
        Ok(ColoringMatrix {
            rows: r,
            cols: c,
            cells,
        })
    }

    /// Builds a matrix from a cell function over 1-based `(row, col)`.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Color,
    ) -> Result<Self, FormatError> {
        ColoringMatrix::from_rows(
            (1..=rows)
                .map(|i| (1..=cols).map(|j| f(i, j)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_colors(&self) -> Color {
        self.cells.iter().copied().max().unwrap_or(0)
    }

    /// 1-based access.
    pub fn get(&self, row: usize, col: usize) -> Color {
        self.cells[(row - 1) * self.cols + (col - 1)]
    }

    pub fn row(&self, row: usize) -> &[Color] {
        &self.cells[(row - 1) * self.cols..row * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<Color> {
        (1..=self.rows).map(|i| self.get(i, col)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Color>> {
        self.cells
            .chunks(self.cols)
            .map(<[Color]>::to_vec)
            .collect()
    }

    pub fn cells(&self) -> &[Color] {
        &self.cells
    }

    pub fn to_coloring(&self) -> Coloring {
        Coloring::new(self.cells.clone()).expect("matrix colors are surjective")
    }

    pub fn transpose(&self) -> ColoringMatrix {
        ColoringMatrix {
            rows: self.cols,
            cols: self.rows,
            cells: (1..=self.cols)
                .flat_map(|j| (1..=self.rows).map(move |i| (i, j)))
                .map(|(i, j)| self.get(i, j))
                .collect(),
        }
    }

    /// First `cols` columns; fails if some color only occurred in the dropped ones.
    pub fn truncate_columns(&self, cols: usize) -> Result<ColoringMatrix, FormatError> {
        assert!(cols >= 1 && cols <= self.cols);
        ColoringMatrix::from_rows(
            self.to_rows()
                .into_iter()
                .map(|r| r[..cols].to_vec())
                .collect(),
        )
    }

    /// Plain whitespace-separated integer grid, one row per line.
    pub fn to_grid_text(&self) -> String {
        let mut out = String::new();
        for row in self.cells.chunks(self.cols) {
            let line: Vec<String> = row.iter().map(Color::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_grid_text(text: &str) -> Result<Self, FormatError> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<Color>()
                            .map_err(|_| FormatError::Invalid(format!("bad entry {t:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        ColoringMatrix::from_rows(rows)
    }
}

impl fmt::Display for ColoringMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.num_colors().to_string().len();
        for row in self.cells.chunks(self.cols) {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Color statistics of one row or column.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LineProfile {
    pub present: BTreeSet<Color>,
    pub missing: BTreeSet<Color>,
    /// Colors of the colorful vertices lying on this line.
    pub full: BTreeSet<Color>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profiles {
    pub rows: Vec<LineProfile>,
    pub columns: Vec<LineProfile>,
}

/// Row and column profiles of `cm` as a coloring of the product graph `g`.
pub fn profiles(g: &Graph, cm: &ColoringMatrix) -> Result<Profiles, ColoringError> {
    let shape = g.grid();
    assert!(
        shape.is_some_and(|s| s.rows == cm.rows() && s.cols == cm.cols()),
        "matrix shape does not match the product graph"
    );
    let coloring = cm.to_coloring();
    let k = coloring.num_colors();
    let mut rows = vec![LineProfile::default(); cm.rows()];
    let mut columns = vec![LineProfile::default(); cm.cols()];
    for i in 1..=cm.rows() {
        for j in 1..=cm.cols() {
            rows[i - 1].present.insert(cm.get(i, j));
            columns[j - 1].present.insert(cm.get(i, j));
        }
    }
    for line in rows.iter_mut().chain(columns.iter_mut()) {
        line.missing = (1..=k).filter(|c| !line.present.contains(c)).collect();
    }
    for (v, color) in colorful_vertices(g, &coloring)? {
        let (i, j) = (v / cm.cols(), v % cm.cols());
        rows[i].full.insert(color);
        columns[j].full.insert(color);
    }
    Ok(Profiles { rows, columns })
}

/// The on-disk coloring document (TOML).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDocument {
    pub family: String,
    pub m: usize,
    pub n: usize,
    pub k: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    pub matrix: Vec<Vec<Color>>,
}

impl ColoringDocument {
    pub fn new(family: impl Into<String>, matrix: &ColoringMatrix, case: Option<String>) -> Self {
        ColoringDocument {
            family: family.into(),
            m: matrix.rows(),
            n: matrix.cols(),
            k: matrix.num_colors(),
            case,
            matrix: matrix.to_rows(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("document serializes")
    }

    /// Parses and checks the header fields against the matrix.
    pub fn from_toml(text: &str) -> Result<Self, FormatError> {
        let doc: ColoringDocument = toml::from_str(text)?;
        doc.matrix()?;
        Ok(doc)
    }

    pub fn matrix(&self) -> Result<ColoringMatrix, FormatError> {
        let cm = ColoringMatrix::from_rows(self.matrix.clone())?;
        if cm.rows() != self.m || cm.cols() != self.n {
            return Err(FormatError::Invalid(format!(
                "header says {}x{} but matrix is {}x{}",
                self.m,
                self.n,
                cm.rows(),
                cm.cols()
            )));
        }
        if cm.num_colors() != self.k {
            return Err(FormatError::Invalid(format!(
                "header says k = {} but matrix uses {} colors",
                self.k,
                cm.num_colors()
            )));
        }
        Ok(cm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSpec;

    fn a1_kmpn() -> ColoringMatrix {
        ColoringMatrix::from_rows(vec![vec![1, 4, 2, 3], vec![2, 1, 4, 1], vec![3, 2, 3, 4]])
            .unwrap()
    }

    #[test]
    fn column_profile_of_a1() {
        let g = "K3xP4".parse::<GraphSpec>().unwrap().build().unwrap();
        let p = profiles(&g, &a1_kmpn()).unwrap();
        assert_eq!(p.columns[0].missing, BTreeSet::from([4]));
        let missing: Vec<Color> = p
            .columns
            .iter()
            .map(|c| *c.missing.first().unwrap())
            .collect();
        assert_eq!(missing, vec![4, 3, 1, 2]);
        // one full color per column, all distinct
        let full: Vec<&BTreeSet<Color>> = p.columns.iter().map(|c| &c.full).collect();
        assert!(full.iter().all(|f| f.len() == 1));
        let union: BTreeSet<Color> = full.iter().flat_map(|f| f.iter().copied()).collect();
        assert_eq!(union.len(), 4);
        for line in p.columns.iter().chain(p.rows.iter()) {
            assert!(line.full.is_disjoint(&line.missing));
            assert_eq!(line.present.len() + line.missing.len(), 4);
        }
    }

    #[test]
    fn row_profile_of_two_row_kmkn() {
        let n = 5;
        let cm = ColoringMatrix::from_rows(vec![
            (1..=n).collect(),
            std::iter::once(n + 1).chain(1..n).collect(),
        ])
        .unwrap();
        let g = "K2xK5".parse::<GraphSpec>().unwrap().build().unwrap();
        let p = profiles(&g, &cm).unwrap();
        assert_eq!(p.rows[0].missing, BTreeSet::from([n + 1]));
        assert_eq!(p.rows[1].missing, BTreeSet::from([n]));
    }

    #[test]
    fn full_column_has_nothing_missing() {
        let cm = ColoringMatrix::from_rows(vec![vec![1, 2], vec![2, 1]]).unwrap();
        let g = "K2xK2".parse::<GraphSpec>().unwrap().build().unwrap();
        let p = profiles(&g, &cm).unwrap();
        assert!(p.columns.iter().all(|c| c.missing.is_empty()));
    }

    #[test]
    fn document_round_trip_and_validation() {
        let doc = ColoringDocument::new("K3xP4", &a1_kmpn(), Some("kmpn-A1".into()));
        let text = doc.to_toml();
        let back = ColoringDocument::from_toml(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.matrix().unwrap(), a1_kmpn());

        let wrong_k = text.replace("k = 4", "k = 5");
        assert!(ColoringDocument::from_toml(&wrong_k).is_err());
        let wrong_m = text.replace("m = 3", "m = 2");
        assert!(ColoringDocument::from_toml(&wrong_m).is_err());
        assert!(ColoringDocument::from_toml("family = 3").is_err());
    }

    #[test]
    fn grid_text_round_trip() {
        let cm = a1_kmpn();
        let text = cm.to_grid_text();
        assert_eq!(text, "1 4 2 3\n2 1 4 1\n3 2 3 4\n");
        assert_eq!(ColoringMatrix::parse_grid_text(&text).unwrap(), cm);
        assert!(ColoringMatrix::parse_grid_text("1 2\n3\n").is_err());
        assert!(ColoringMatrix::parse_grid_text("1 x\n").is_err());
    }

    #[test]
    fn transpose_and_truncate() {
        let cm = a1_kmpn();
        let t = cm.transpose();
        assert_eq!((t.rows(), t.cols()), (4, 3));
        assert_eq!(t.get(2, 1), 4);
        assert_eq!(t.transpose(), cm);
        let cut = cm.truncate_columns(2).unwrap();
        assert_eq!(cut.to_rows(), vec![vec![1, 4], vec![2, 1], vec![3, 2]]);
        assert_eq!(cm.column(3), vec![2, 4, 3]);
    }
}
