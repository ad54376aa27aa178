//! Browser bindings for the locating-coloring tools.
//!
//! Each exported function takes plain strings and numbers and returns a
//! JSON string, so the page needs no generated type glue. The same logic is
//! available natively through [`construct_report`], [`verify_report`] and
//! [`chi_report`].

use serde::Serialize;
use wasm_bindgen::prelude::*;

use locating_core::coloring::{is_locating, Locating};
use locating_core::constructions::{grid_coloring, kmkn_coloring, kmpn_coloring};
use locating_core::solver::locating_chromatic_number;
use locating_core::{ColoringError, ColoringMatrix, Graph, GraphSpec, SolveBudget};

/// Search nodes allowed per `chi` call so the page stays responsive.
pub const CHI_NODE_LIMIT: u64 = 20_000_000;
/// Largest graph `chi` accepts.
pub const CHI_MAX_VERTICES: usize = 30;

#[derive(Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Reply {
    Constructed {
        graph: String,
        case: String,
        colors: u32,
        matrix: Vec<Vec<u32>>,
    },
    Locating {
        graph: String,
        colors: u32,
    },
    NotLocating {
        graph: String,
        reason: String,
        /// 1-based `(row, column)` of the offending cells.
        cells: [(usize, usize); 2],
    },
    Chi {
        graph: String,
        value: u32,
        nodes: u64,
        matrix: Vec<Vec<u32>>,
    },
    Error {
        message: String,
    },
}

impl Reply {
    fn error(message: impl ToString) -> Self {
        Reply::Error {
            message: message.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reply serializes")
    }
}

fn grid_of(g: &Graph) -> (usize, usize) {
    g.grid().map_or((1, g.vertex_count()), |s| (s.rows, s.cols))
}

/// Runs `grid`, `kmpn` or `kmkn` for `(m, n)`.
pub fn construct_report(family: &str, m: usize, n: usize) -> Reply {
    let (result, graph) = match family {
        "grid" => (grid_coloring(m, n), format!("P{m}xP{n}")),
        "kmpn" => (kmpn_coloring(m, n), format!("K{m}xP{n}")),
        "kmkn" => (kmkn_coloring(m, n), format!("K{m}xK{n}")),
        other => return Reply::error(format!("unknown construction {other:?}")),
    };
    match result {
        Ok(r) => Reply::Constructed {
            graph,
            case: r.case.to_string(),
            colors: r.colors_used,
            matrix: r.matrix.to_rows(),
        },
        Err(e) => Reply::error(e),
    }
}

/// Checks a whitespace-separated integer grid against a graph spec.
pub fn verify_report(spec: &str, grid_text: &str) -> Reply {
    let g = match spec
        .parse::<GraphSpec>()
        .map_err(|e| e.to_string())
        .and_then(|s| s.build().map_err(|e| e.to_string()))
    {
        Ok(g) => g,
        Err(e) => return Reply::error(e),
    };
    let matrix = match ColoringMatrix::parse_grid_text(grid_text) {
        Ok(m) => m,
        Err(e) => return Reply::error(e),
    };
    if matrix.cells().len() != g.vertex_count() {
        return Reply::error(format!(
            "{} cells given, {} has {} vertices",
            matrix.cells().len(),
            g.name(),
            g.vertex_count()
        ));
    }
    let cols = grid_of(&g).1;
    let at = |v: usize| (v / cols + 1, v % cols + 1);
    let coloring = matrix.to_coloring();
    let graph = g.name().to_string();
    match is_locating(&g, &coloring) {
        Ok(Locating::Yes) => Reply::Locating {
            graph,
            colors: coloring.num_colors(),
        },
        Ok(Locating::No(clash)) => Reply::NotLocating {
            graph,
            reason: format!("same color code {}", clash.code),
            cells: [at(clash.first), at(clash.second)],
        },
        Err(ColoringError::Improper { u, v, color }) => Reply::NotLocating {
            graph,
            reason: format!("adjacent cells share color {color}"),
            cells: [at(u), at(v)],
        },
        Err(e) => Reply::error(e),
    }
}

/// Exact locating chromatic number under the page's search limits.
pub fn chi_report(spec: &str) -> Reply {
    let g = match spec
        .parse::<GraphSpec>()
        .map_err(|e| e.to_string())
        .and_then(|s| s.build().map_err(|e| e.to_string()))
    {
        Ok(g) => g,
        Err(e) => return Reply::error(e),
    };
    let budget = SolveBudget {
        node_limit: Some(CHI_NODE_LIMIT),
        ..SolveBudget::with_max_vertices(CHI_MAX_VERTICES)
    };
    match locating_chromatic_number(&g, &budget) {
        Ok(r) => {
            let cols = grid_of(&g).1;
            Reply::Chi {
                graph: g.name().to_string(),
                value: r.value,
                nodes: r.nodes,
                matrix: r
                    .witness
                    .as_slice()
                    .chunks(cols)
                    .map(<[u32]>::to_vec)
                    .collect(),
            }
        }
        Err(e) => Reply::error(e),
    }
}

#[wasm_bindgen]
pub fn construct(family: &str, m: usize, n: usize) -> String {
    construct_report(family, m, n).to_json()
}

#[wasm_bindgen]
pub fn verify(spec: &str, grid_text: &str) -> String {
    verify_report(spec, grid_text).to_json()
}

#[wasm_bindgen]
pub fn chi(spec: &str) -> String {
    chi_report(spec).to_json()
}
