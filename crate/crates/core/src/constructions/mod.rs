//! Explicit locating colorings of `P_m □ P_n`, `K_m □ P_n` and `K_m □ K_n`.
//!
//! Every public constructor checks its output with
//! [`is_locating`](crate::coloring::is_locating) before returning it and
//! fails with [`ConstructionError::Invalid`] (carrying the clashing pair)
//! otherwise.

mod grid;
mod kmkn;
mod kmpn;

use std::fmt;

use thiserror::Error;

use crate::coloring::{is_locating, Clash, Color, ColoringError, Locating};
use crate::graph::{build_family, cartesian_product, Family, Graph};
use crate::matrix::ColoringMatrix;

pub use grid::grid_coloring;
pub use kmkn::{
    kmkn_coloring, kmkn_inductive_rows, kmkn_modular_coloring, ExtensionState, ExtensionStep,
    KMKN_A1, KMKN_A2, KMKN_A3,
};
pub use kmpn::{
    kmpn_coloring, kmpn_inductive_columns, kmpn_inductive_trace, ColumnPlan, EndGame,
    InductiveTrace, KMPN_A1, KMPN_A2,
};

/// Which construction produced a coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremCase {
    Grid,
    KmpnAlternating,
    KmpnA1,
    KmpnA2,
    KmpnInductive,
    KmknTwoRows,
    KmknThreeByThree,
    KmknThreeByFour,
    KmknThreeByFive,
    KmknThreeRows,
    KmknFourRowSeed,
    KmknInductive,
    KmknModular,
}

impl TheoremCase {
    pub fn tag(self) -> &'static str {
        match self {
            TheoremCase::Grid => "grid",
            TheoremCase::KmpnAlternating => "kmpn-m+2",
            TheoremCase::KmpnA1 => "kmpn-A1",
            TheoremCase::KmpnA2 => "kmpn-A2",
            TheoremCase::KmpnInductive => "kmpn-inductive",
            TheoremCase::KmknTwoRows => "kmkn-m2",
            TheoremCase::KmknThreeByThree => "kmkn-m3-n3",
            TheoremCase::KmknThreeByFour => "kmkn-m3-n4",
            TheoremCase::KmknThreeByFive => "kmkn-m3-n5",
            TheoremCase::KmknThreeRows => "kmkn-m3-n>=6",
            TheoremCase::KmknFourRowSeed => "kmkn-m4-explicit",
            TheoremCase::KmknInductive => "kmkn-inductive",
            TheoremCase::KmknModular => "kmkn-modular",
        }
    }
}

impl fmt::Display for TheoremCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("(m, n) = ({m}, {n}) lies in {region}, where no explicit construction is known; use `chi` with a budget instead")]
    UnsupportedRegion {
        m: usize,
        n: usize,
        region: &'static str,
    },
    #[error("{case} construction is not locating: {detail}")]
    Invalid {
        case: TheoremCase,
        detail: String,
        clash: Option<Clash>,
    },
    #[error("row {row}: no perfect matching for the remaining {size} cells")]
    MatchingInfeasible { row: usize, size: usize },
}

impl ConstructionError {
    fn invalid(case: TheoremCase, detail: impl Into<String>) -> Self {
        ConstructionError::Invalid {
            case,
            detail: detail.into(),
            clash: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub matrix: ColoringMatrix,
    pub colors_used: Color,
    pub case: TheoremCase,
    /// Set when the rows and columns of the request were swapped to reach a
    /// covered case; `matrix` is already in the requested orientation.
    pub transposed: bool,
}

/// Largest `k` with `k(k - 1) - 1 <= n`.
pub fn m0(n: usize) -> usize {
    let mut k = 1;
    while (k + 1) * k <= n + 1 {
        k += 1;
    }
    k
}

/// Builds `P_m □ P_n`, `K_m □ P_n` etc. for a family pair.
pub fn product_graph(rows: (Family, usize), cols: (Family, usize)) -> Graph {
    let g = build_family(rows.0, rows.1).expect("valid family size");
    let h = build_family(cols.0, cols.1).expect("valid family size");
    cartesian_product(&g, &h)
}

/// Checks that `matrix` is a locating coloring of `graph` with exactly
/// `expected_colors` colors.
pub(crate) fn validate(
    graph: &Graph,
    matrix: ColoringMatrix,
    case: TheoremCase,
    expected_colors: Color,
    transposed: bool,
) -> Result<ConstructionResult, ConstructionError> {
    let colors_used = matrix.num_colors();
    if colors_used != expected_colors {
        return Err(ConstructionError::invalid(
            case,
            format!("uses {colors_used} colors, expected {expected_colors}"),
        ));
    }
    match is_locating(graph, &matrix.to_coloring()) {
        Ok(Locating::Yes) => Ok(ConstructionResult {
            matrix,
            colors_used,
            case,
            transposed,
        }),
        Ok(Locating::No(clash)) => {
            let shape = graph.grid().expect("product graph");
            let detail = format!(
                "v{:?} and v{:?} share code {}",
                shape.coords(clash.first),
                shape.coords(clash.second),
                clash.code
            );
            Err(ConstructionError::Invalid {
                case,
                detail,
                clash: Some(clash),
            })
        }
        Err(ColoringError::Improper { u, v, color }) => {
            let shape = graph.grid().expect("product graph");
            Err(ConstructionError::invalid(
                case,
                format!(
                    "v{:?} and v{:?} are adjacent with color {color}",
                    shape.coords(u),
                    shape.coords(v)
                ),
            ))
        }
        Err(e) => Err(ConstructionError::invalid(case, e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m0_values() {
        assert_eq!(m0(3), 2);
        assert_eq!(m0(4), 2);
        assert_eq!(m0(5), 3);
        assert_eq!(m0(10), 3);
        assert_eq!(m0(11), 4);
        assert_eq!(m0(19), 5);
        assert_eq!(m0(28), 5);
        assert_eq!(m0(29), 6);
        assert_eq!(m0(40), 6);
        assert_eq!(m0(41), 7);
    }

    #[test]
    fn m0_matches_definition() {
        for n in 3..500usize {
            let brute = (1..=n)
                .filter(|&k| (k * (k - 1)) as isize - 1 <= n as isize)
                .max()
                .unwrap();
            assert_eq!(m0(n), brute, "n = {n}");
        }
    }
}
