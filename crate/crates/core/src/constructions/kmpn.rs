use std::fmt;

use super::{product_graph, validate, ConstructionError, ConstructionResult, TheoremCase};
use crate::coloring::Color;
use crate::graph::Family;
use crate::matching::{perfect_matching, BipartiteGraph};
use crate::matrix::ColoringMatrix;

/// Locating 4-coloring of `K_3 □ P_4`.
pub const KMPN_A1: [[Color; 4]; 3] = [[1, 4, 2, 3], [2, 1, 4, 1], [3, 2, 3, 4]];

/// Locating 5-coloring of `K_4 □ P_5`.
pub const KMPN_A2: [[Color; 5]; 4] = [
    [1, 5, 1, 5, 4],
    [2, 3, 5, 3, 5],
    [3, 1, 2, 4, 2],
    [4, 2, 4, 1, 3],
];

/// Optimal locating coloring of `K_m □ P_n` for `m >= 3`, `n >= 2`.
///
/// Uses `m + 2` colors when `m <= n - 2` and `m + 1` colors otherwise.
pub fn kmpn_coloring(m: usize, n: usize) -> Result<ConstructionResult, ConstructionError> {
    if m < 3 || n < 2 {
        return Err(ConstructionError::InvalidParameters(format!(
            "K_m x P_n needs m >= 3 and n >= 2, got ({m}, {n})"
        )));
    }
    let graph = product_graph((Family::Complete, m), (Family::Path, n));
    let k = m as Color;
    if m + 2 <= n {
        return validate(
            &graph,
            alternating(m, n),
            TheoremCase::KmpnAlternating,
            k + 2,
            false,
        );
    }
    let (matrix, case) = match m {
        3 => (
            fixed(&KMPN_A1).truncate_columns(n).expect("n <= 4"),
            TheoremCase::KmpnA1,
        ),
        4 => (
            fixed(&KMPN_A2).truncate_columns(n).expect("n <= 5"),
            TheoremCase::KmpnA2,
        ),
        _ => (kmpn_inductive_columns(m, n)?, TheoremCase::KmpnInductive),
    };
    validate(&graph, matrix, case, k + 1, false)
}

pub(crate) fn fixed<const C: usize>(rows: &[[Color; C]]) -> ColoringMatrix {
    ColoringMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("constant matrix")
}

/// First column `[m+1, 1, ..., m-2, m+2]`, then `[1..m]` and its cyclic
/// shift `[m, 1, ..., m-1]` alternately.
fn alternating(m: usize, n: usize) -> ColoringMatrix {
    let k = m as Color;
    ColoringMatrix::from_fn(m, n, |i, j| {
        let i = i as Color;
        match j {
            1 if i == 1 => k + 1,
            1 if i == k => k + 2,
            1 => i - 1,
            _ if j % 2 == 0 => i,
            _ if i == 1 => k,
            _ => i - 1,
        }
    })
    .expect("m + 2 colors appear")
}

/// Missing and full color of one column of an `(m+1)`-coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnPlan {
    pub missing: Color,
    pub full: Color,
}

const fn col(missing: Color, full: Color) -> ColumnPlan {
    ColumnPlan { missing, full }
}

/// How the last column was reconciled with the earlier ones.
///
/// The `Prev` variants also rewrite the column three places from the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndGame {
    Direct,
    Case1a,
    Case1b,
    Case1c,
    Case1cPrev,
    Case1d,
    Case2a,
    Case2aPrev { swapped: bool },
    Case2b,
}

impl fmt::Display for EndGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndGame::Direct => "direct",
            EndGame::Case1a => "1a",
            EndGame::Case1b => "1b",
            EndGame::Case1c => "1c",
            EndGame::Case1cPrev => "1c-prev",
            EndGame::Case1d => "1d",
            EndGame::Case2a => "2a",
            EndGame::Case2aPrev { swapped: false } => "2a-prev",
            EndGame::Case2aPrev { swapped: true } => "2a-prev-swapped",
            EndGame::Case2b => "2b",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductiveTrace {
    pub plan: Vec<ColumnPlan>,
    pub end_game: EndGame,
    /// All `m + 1` columns.
    pub matrix: ColoringMatrix,
}

/// The `(m+1)`-coloring of `K_m □ P_n` for `m >= 5`, `2 <= n <= m + 1`,
/// obtained by dropping columns from the right of the full construction.
pub fn kmpn_inductive_columns(m: usize, n: usize) -> Result<ColoringMatrix, ConstructionError> {
    if n < 2 || n > m + 1 {
        return Err(ConstructionError::InvalidParameters(format!(
            "inductive columns need 2 <= n <= m + 1, got ({m}, {n})"
        )));
    }
    let trace = kmpn_inductive_trace(m)?;
    let matrix = trace.matrix.truncate_columns(n).expect("n <= m + 1");
    let graph = product_graph((Family::Complete, m), (Family::Path, n));
    Ok(validate(
        &graph,
        matrix,
        TheoremCase::KmpnInductive,
        m as Color + 1,
        false,
    )?
    .matrix)
}

/// Builds the `m x (m+1)` coloring column by column and reports the plan.
pub fn kmpn_inductive_trace(m: usize) -> Result<InductiveTrace, ConstructionError> {
    if m < 5 {
        return Err(ConstructionError::InvalidParameters(format!(
            "inductive columns need m >= 5, got {m}"
        )));
    }
    let case = TheoremCase::KmpnInductive;
    let graph = product_graph((Family::Complete, m), (Family::Path, m + 1));
    let mut last_err = None;
    for (end_game, plan) in finish_plan(&opening_plan(m)?, m) {
        let columns = match fill_columns(&plan, m) {
            Ok(columns) => columns,
            Err(t) => {
                last_err = Some(ConstructionError::invalid(
                    case,
                    format!(
                        "end game {end_game}: column {} cannot follow its plan",
                        t + 1
                    ),
                ));
                continue;
            }
        };
        let matrix =
            ColoringMatrix::from_fn(m, m + 1, |i, j| columns[j - 1][i - 1]).expect("m + 1 colors");
        match validate(&graph, matrix, case, m as Color + 1, false) {
            Ok(result) => {
                return Ok(InductiveTrace {
                    plan,
                    end_game,
                    matrix: result.matrix,
                })
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one end-game candidate"))
}

/// Plans for columns `1..=m`, each new column either swapping the previous
/// missing and full colors or taking the smallest unused pair.
fn opening_plan(m: usize) -> Result<Vec<ColumnPlan>, ConstructionError> {
    let k = m as Color;
    let mut plan = vec![col(k + 1, 1), col(k, k - 1)];
    while plan.len() < m {
        let last = *plan.last().expect("non-empty");
        let used_missing = |c: Color| plan.iter().any(|p| p.missing == c);
        let used_full = |c: Color| plan.iter().any(|p| p.full == c);
        let next = if !used_missing(last.full) && !used_full(last.missing) {
            Some(col(last.full, last.missing))
        } else {
            (1..=k + 1)
                .filter(|&xj| !used_full(xj) && xj != last.missing)
                .find_map(|xj| {
                    (1..=k + 1)
                        .find(|&xi| !used_missing(xi) && xi != last.full && xi != xj)
                        .map(|xi| col(xi, xj))
                })
        };
        match next {
            Some(p) => plan.push(p),
            None => {
                return Err(ConstructionError::invalid(
                    TheoremCase::KmpnInductive,
                    format!("no missing/full pair left for column {}", plan.len() + 1),
                ))
            }
        }
    }
    Ok(plan)
}

/// Completes a plan of `m` columns with a final one, rewriting earlier
/// columns where the forced colors collide. Returns candidates in order of
/// preference.
pub(crate) fn finish_plan(history: &[ColumnPlan], m: usize) -> Vec<(EndGame, Vec<ColumnPlan>)> {
    let n = m + 1;
    assert_eq!(history.len(), n - 1);
    let colors = 1..=m as Color + 1;
    let u = colors
        .clone()
        .find(|&c| history.iter().all(|p| p.missing != c))
        .expect("one missing color unused");
    let w = colors
        .clone()
        .find(|&c| history.iter().all(|p| p.full != c))
        .expect("one full color unused");
    let x1 = history[n - 2].full;
    let xm1 = history[n - 2].missing;
    let mut p = history.to_vec();
    if (u == x1) == (w == xm1) {
        p.push(col(u, w));
        return vec![(EndGame::Direct, p)];
    }
    // 1-based columns n-3, n-2, n-1 sit at indices n-4, n-3, n-2
    let ColumnPlan {
        missing: xj,
        full: xs,
    } = p[n - 3];
    if u == x1 {
        let xi = w;
        let tag = match (xs == xm1, xi == xj) {
            (false, true) => {
                p[n - 3] = col(xj, x1);
                p[n - 2] = col(x1, xj);
                p.push(col(xm1, xs));
                EndGame::Case1a
            }
            (true, false) => {
                p[n - 3] = col(x1, xs);
                p[n - 2] = col(xs, x1);
                p.push(col(xj, xi));
                EndGame::Case1b
            }
            (false, false) if p[n - 4].full != xj => {
                p[n - 3] = col(xj, x1);
                p[n - 2] = col(xm1, xs);
                p.push(col(x1, xi));
                EndGame::Case1c
            }
            (false, false) => {
                let xl = p[n - 4].missing;
                p[n - 4] = col(xl, xj);
                p[n - 3] = col(xm1, x1);
                p[n - 2] = col(xj, xi);
                p.push(col(x1, xs));
                EndGame::Case1cPrev
            }
            (true, true) => {
                let ColumnPlan {
                    missing: xk,
                    full: xl,
                } = p[n - 4];
                p[n - 4] = col(x1, xi);
                p[n - 3] = col(xk, xm1);
                p[n - 2] = col(xi, x1);
                p.push(col(xm1, xl));
                EndGame::Case1d
            }
        };
        return vec![(tag, p)];
    }
    let xi = u;
    if xi == xs {
        p[n - 3] = col(xm1, xs);
        p[n - 2] = col(xs, xm1);
        p.push(col(xj, x1));
        return vec![(EndGame::Case2b, p)];
    }
    if p[n - 4].missing != x1 {
        p[n - 3] = col(xm1, x1);
        p[n - 2] = col(xi, xs);
        p.push(col(xj, xm1));
        return vec![(EndGame::Case2a, p)];
    }
    // when x_l = x_i the roles of x_i and x_j may swap, so try both
    let xl = p[n - 4].full;
    let mut branches = vec![(false, xi, xj), (true, xj, xi)];
    if xl == xi {
        branches.reverse();
    }
    branches
        .into_iter()
        .map(|(swapped, a, b)| {
            let mut q = p.clone();
            q[n - 4] = col(xm1, x1);
            q[n - 3] = col(a, xl);
            q[n - 2] = col(x1, xs);
            q.push(col(b, xm1));
            (EndGame::Case2aPrev { swapped }, q)
        })
        .collect()
}

/// Column contents realizing `plan`, or the index of the first column that
/// cannot follow its predecessor.
///
/// Column 1 is `[1..m]`. In column `t` the only colorful cell sits in the row
/// where column `t - 1` holds the missing color of `t`; that row carries the
/// full color, and the previous missing color is copied next to the previous
/// colorful cell. A matching fills the remaining rows.
pub(crate) fn fill_columns(plan: &[ColumnPlan], m: usize) -> Result<Vec<Vec<Color>>, usize> {
    let first: Vec<Color> = (1..=m as Color).collect();
    if plan[0].missing != m as Color + 1 {
        return Err(0);
    }
    let mut colorful = first
        .iter()
        .position(|&c| c == plan[0].full)
        .ok_or(0usize)?;
    let mut columns = vec![first];
    for t in 1..plan.len() {
        let (prev_plan, next) = (plan[t - 1], plan[t]);
        let prev = &columns[t - 1];
        if next.missing == prev_plan.missing || next.full == next.missing {
            return Err(t);
        }
        let b = prev.iter().position(|&c| c == next.missing).ok_or(t)?;
        let mut cells: Vec<Option<Color>> = vec![None; m];
        if b == colorful {
            if next.full != prev_plan.missing {
                return Err(t);
            }
            cells[b] = Some(next.full);
        } else {
            if next.full == prev_plan.missing {
                return Err(t);
            }
            cells[colorful] = Some(prev_plan.missing);
            cells[b] = Some(next.full);
        }
        let rows: Vec<usize> = (0..m).filter(|&r| cells[r].is_none()).collect();
        let free: Vec<Color> = (1..=m as Color + 1)
            .filter(|&c| c != next.missing && !cells.contains(&Some(c)))
            .collect();
        let bg = BipartiteGraph::from_fn(rows.len(), free.len(), |l, r| free[r] != prev[rows[l]]);
        let matching = perfect_matching(&bg).ok_or(t)?;
        for (l, &r) in matching.iter().enumerate() {
            cells[rows[l]] = Some(free[r]);
        }
        columns.push(cells.into_iter().map(|c| c.expect("filled")).collect());
        colorful = b;
    }
    Ok(columns)
}
