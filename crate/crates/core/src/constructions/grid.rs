use super::{product_graph, validate, ConstructionError, ConstructionResult, TheoremCase};
use crate::graph::Family;
use crate::matrix::ColoringMatrix;

/// Four-coloring of the grid `P_m □ P_n`.
///
/// Cells are 2-colored by parity of `i + j`, then the two ends of the first
/// row get the singleton colors 3 and 4. Distances to those two corners
/// pin down every cell. For `m > n` the construction runs on the transpose.
pub fn grid_coloring(m: usize, n: usize) -> Result<ConstructionResult, ConstructionError> {
    if m < 2 || n < 2 {
        return Err(ConstructionError::InvalidParameters(format!(
            "grid needs m, n >= 2, got ({m}, {n})"
        )));
    }
    let transposed = m > n;
    let (rows, cols) = if transposed { (n, m) } else { (m, n) };
    let base = ColoringMatrix::from_fn(rows, cols, |i, j| match (i, j) {
        (1, 1) => 3,
        (1, c) if c == cols => 4,
        _ if (i + j) % 2 == 0 => 1,
        _ => 2,
    })
    .expect("all four colors appear");
    let matrix = if transposed { base.transpose() } else { base };
    let graph = product_graph((Family::Path, m), (Family::Path, n));
    validate(&graph, matrix, TheoremCase::Grid, 4, transposed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let r = grid_coloring(2, 2).unwrap();
        assert_eq!(r.matrix.to_rows(), vec![vec![3, 4], vec![2, 1]]);
        assert_eq!(r.colors_used, 4);
        assert!(!r.transposed);
    }

    #[test]
    fn corner_colors_are_singletons() {
        for (m, n) in [(2, 7), (3, 4), (5, 5), (6, 3)] {
            let r = grid_coloring(m, n).unwrap();
            let cells = r.matrix.cells();
            assert_eq!(cells.iter().filter(|&&c| c == 3).count(), 1);
            assert_eq!(cells.iter().filter(|&&c| c == 4).count(), 1);
        }
    }

    #[test]
    fn tall_grid_is_transposed() {
        let r = grid_coloring(5, 3).unwrap();
        assert!(r.transposed);
        assert_eq!((r.matrix.rows(), r.matrix.cols()), (5, 3));
    }

    #[test]
    fn rejects_degenerate() {
        assert!(matches!(
            grid_coloring(1, 4),
            Err(ConstructionError::InvalidParameters(_))
        ));
    }
}
