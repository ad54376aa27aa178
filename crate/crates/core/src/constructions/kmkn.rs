use std::collections::BTreeSet;

use super::kmpn::fixed;
use super::{m0, product_graph, validate, ConstructionError, ConstructionResult, TheoremCase};
use crate::coloring::Color;
use crate::graph::Family;
use crate::matching::{perfect_matching, BipartiteGraph};
use crate::matrix::ColoringMatrix;

/// Locating 5-coloring of `K_3 □ K_3`.
pub const KMKN_A1: [[Color; 3]; 3] = [[1, 2, 3], [4, 1, 2], [2, 5, 4]];
/// Locating 6-coloring of `K_3 □ K_4`.
pub const KMKN_A2: [[Color; 4]; 3] = [[1, 2, 3, 4], [5, 1, 2, 3], [6, 5, 1, 2]];
/// Locating 6-coloring of `K_3 □ K_5`.
pub const KMKN_A3: [[Color; 5]; 3] = [[1, 5, 3, 4, 2], [6, 1, 5, 2, 4], [3, 4, 2, 5, 6]];

/// Optimal locating coloring of `K_m □ K_n` where one is known.
///
/// Orientation does not matter: for `m > n` the `K_n □ K_m` coloring is
/// built and transposed. Fails with [`ConstructionError::UnsupportedRegion`]
/// for `m = m0(n)` and for `n / 2 < m <= n` with `m >= 4`.
pub fn kmkn_coloring(m: usize, n: usize) -> Result<ConstructionResult, ConstructionError> {
    if m.min(n) < 2 || m.max(n) < 3 {
        return Err(ConstructionError::InvalidParameters(format!(
            "K_m x K_n needs 2 <= m <= n with n >= 3, got ({m}, {n})"
        )));
    }
    if m > n {
        let mut r = kmkn_coloring(n, m).map_err(|e| match e {
            ConstructionError::UnsupportedRegion { region, .. } => {
                ConstructionError::UnsupportedRegion { m, n, region }
            }
            e => e,
        })?;
        r.matrix = r.matrix.transpose();
        r.transposed = true;
        return Ok(r);
    }
    let k = n as Color;
    let (matrix, case, colors) = match (m, n) {
        (2, _) => (two_rows(n), TheoremCase::KmknTwoRows, k + 1),
        (3, 3) => (fixed(&KMKN_A1), TheoremCase::KmknThreeByThree, 5),
        (3, 4) => (fixed(&KMKN_A2), TheoremCase::KmknThreeByFour, 6),
        (3, 5) => (fixed(&KMKN_A3), TheoremCase::KmknThreeByFive, 6),
        (3, _) => (three_rows(n), TheoremCase::KmknThreeRows, k + 1),
        _ => {
            let top = m0(n);
            if m < top {
                let case = if m == 4 {
                    TheoremCase::KmknFourRowSeed
                } else {
                    TheoremCase::KmknInductive
                };
                (kmkn_inductive_rows(m, n)?, case, k + 1)
            } else if m == top {
                return Err(ConstructionError::UnsupportedRegion {
                    m,
                    n,
                    region: "m = m0(n)",
                });
            } else if 2 * m <= n {
                (
                    kmkn_modular_coloring(m, n)?,
                    TheoremCase::KmknModular,
                    k + 2,
                )
            } else {
                return Err(ConstructionError::UnsupportedRegion {
                    m,
                    n,
                    region: "n/2 < m <= n",
                });
            }
        }
    };
    let graph = product_graph((Family::Complete, m), (Family::Complete, n));
    validate(&graph, matrix, case, colors, false)
}

fn two_rows(n: usize) -> ColoringMatrix {
    let k = n as Color;
    ColoringMatrix::from_fn(2, n, |i, j| match (i, j as Color) {
        (1, j) => j,
        (_, 1) => k + 1,
        (_, j) => j - 1,
    })
    .expect("n + 1 colors")
}

fn three_rows(n: usize) -> ColoringMatrix {
    let k = n as Color;
    ColoringMatrix::from_fn(3, n, |i, j| match (i, j as Color) {
        (1, j) => j,
        (2, 1) => k + 1,
        (2, j) => j - 1,
        (_, j) => j + 1,
    })
    .expect("n + 1 colors")
}

/// `(n + 2)`-coloring with cell `(i, j)` colored `(i - 1) n + j` modulo
/// `n + 2`, for `m0(n) + 1 <= m <= n / 2`. It has no colorful vertex.
pub fn kmkn_modular_coloring(m: usize, n: usize) -> Result<ColoringMatrix, ConstructionError> {
    if n < 3 || m < m0(n) + 1 || 2 * m > n {
        return Err(ConstructionError::InvalidParameters(format!(
            "modular coloring needs m0(n) + 1 <= m <= n/2, got ({m}, {n})"
        )));
    }
    let matrix =
        ColoringMatrix::from_fn(m, n, |i, j| (((i - 1) * n + j - 1) % (n + 2)) as Color + 1)
            .expect("n + 2 colors");
    let graph = product_graph((Family::Complete, m), (Family::Complete, n));
    Ok(validate(
        &graph,
        matrix,
        TheoremCase::KmknModular,
        n as Color + 2,
        false,
    )?
    .matrix)
}

/// `(n + 1)`-coloring for `4 <= m <= m0(n) - 1`, grown one row at a time
/// from the four-row seed.
pub fn kmkn_inductive_rows(m: usize, n: usize) -> Result<ColoringMatrix, ConstructionError> {
    if m < 4 || m + 1 > m0(n) {
        return Err(ConstructionError::InvalidParameters(format!(
            "inductive rows need 4 <= m <= m0(n) - 1, got ({m}, {n})"
        )));
    }
    let mut state = ExtensionState::seed(n)?;
    while state.rows.len() < m {
        state.extend()?;
    }
    let case = if m == 4 {
        TheoremCase::KmknFourRowSeed
    } else {
        TheoremCase::KmknInductive
    };
    let graph = product_graph((Family::Complete, m), (Family::Complete, n));
    Ok(validate(&graph, state.matrix(), case, n as Color + 1, false)?.matrix)
}

/// Partial `(n + 1)`-coloring of `K_i □ K_n` kept under four invariants:
/// rows and columns have distinct entries, rows miss distinct colors, no
/// color is full twice, and every missing color is full somewhere.
///
/// Row `r` misses exactly one color; a cell is colorful ("full") when its
/// column contains that color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionState {
    n: usize,
    rows: Vec<Vec<Color>>,
}

/// What one call to [`ExtensionState::extend`] did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionStep {
    /// Row count before the step.
    pub i: usize,
    /// Full color whose columns received non-full colors.
    pub chosen_full: Color,
    /// Fewest feasible columns seen when placing an old missing color.
    pub min_insert_options: usize,
    /// Minimum degree of the column/color availability graph.
    pub min_degree: usize,
}

impl ExtensionState {
    /// The explicit four-row matrix, valid for `n >= 13`.
    pub fn seed(n: usize) -> Result<Self, ConstructionError> {
        if n < 13 {
            return Err(ConstructionError::InvalidParameters(format!(
                "the four-row seed needs n >= 13, got {n}"
            )));
        }
        let k = n as Color;
        let r1: Vec<Color> = (1..=k).collect();
        let r2: Vec<Color> = std::iter::once(k + 1).chain(1..k).collect();
        let r3: Vec<Color> = [k, k + 1].into_iter().chain(1..k - 1).collect();
        let r4: Vec<Color> = (4..=k).chain([2, 3, k + 1]).collect();
        let state = ExtensionState {
            n,
            rows: vec![r1, r2, r3, r4],
        };
        state
            .check()
            .map_err(|e| ConstructionError::invalid(TheoremCase::KmknFourRowSeed, e))?;
        Ok(state)
    }

    /// Wraps rows built elsewhere after checking the invariants.
    pub fn from_rows(n: usize, rows: Vec<Vec<Color>>) -> Result<Self, String> {
        let state = ExtensionState { n, rows };
        state.check()?;
        Ok(state)
    }

    pub fn rows(&self) -> &[Vec<Color>] {
        &self.rows
    }

    pub fn matrix(&self) -> ColoringMatrix {
        ColoringMatrix::from_rows(self.rows.clone()).expect("invariants imply all colors appear")
    }

    fn palette(&self) -> std::ops::RangeInclusive<Color> {
        1..=self.n as Color + 1
    }

    fn column_has(&self, c: usize, color: Color) -> bool {
        self.rows.iter().any(|r| r[c] == color)
    }

    /// Missing color of each row.
    pub fn missing(&self) -> Vec<Color> {
        self.rows
            .iter()
            .map(|r| {
                self.palette()
                    .find(|x| !r.contains(x))
                    .expect("row has n of n + 1 colors")
            })
            .collect()
    }

    /// Colors of all colorful cells, with repetition.
    pub fn full(&self) -> Vec<Color> {
        let missing = self.missing();
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if self.column_has(c, missing[r]) {
                    out.push(x);
                }
            }
        }
        out
    }

    pub fn used_missing(&self) -> BTreeSet<Color> {
        self.missing().into_iter().collect()
    }

    pub fn used_full(&self) -> BTreeSet<Color> {
        self.full().into_iter().collect()
    }

    /// Checks the four invariants, naming the first one that fails.
    pub fn check(&self) -> Result<(), String> {
        let n = self.n;
        for (r, row) in self.rows.iter().enumerate() {
            let set: BTreeSet<_> = row.iter().collect();
            if row.len() != n || set.len() != n || row.iter().any(|&x| x == 0 || x as usize > n + 1)
            {
                return Err(format!(
                    "(a) row {} is not n distinct colors from 1..=n+1",
                    r + 1
                ));
            }
        }
        for c in 0..n {
            let set: BTreeSet<_> = self.rows.iter().map(|r| r[c]).collect();
            if set.len() != self.rows.len() {
                return Err(format!("(a) column {} repeats a color", c + 1));
            }
        }
        let missing = self.used_missing();
        if missing.len() != self.rows.len() {
            return Err("(b) two rows miss the same color".into());
        }
        let full = self.full();
        let full_set: BTreeSet<_> = full.iter().copied().collect();
        if full_set.len() != full.len() {
            return Err("(c) a full color repeats".into());
        }
        if let Some(x) = missing.iter().find(|x| !full_set.contains(x)) {
            return Err(format!("(d) missing color {x} is not full"));
        }
        Ok(())
    }

    /// Adds one row and keeps the invariants.
    ///
    /// Picks the smallest full color `j` that is not missing anywhere; the new
    /// row omits `j`. Each old missing color goes to the leftmost column where
    /// it creates a single new full color, the columns holding `j` get
    /// non-full colors, and a perfect matching fills the rest. Larger `j` are
    /// tried if a step gets stuck.
    pub fn extend(&mut self) -> Result<ExtensionStep, ConstructionError> {
        let i = self.rows.len();
        let missing = self.missing();
        let full = self.used_full();
        let mut last_err = None;
        for j in full.iter().copied().filter(|j| !missing.contains(j)) {
            match self.try_extend(j, &missing, &full) {
                Ok((row, step)) => {
                    self.rows.push(row);
                    self.check()
                        .map_err(|e| ConstructionError::invalid(TheoremCase::KmknInductive, e))?;
                    return Ok(step);
                }
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.unwrap_or_else(|| {
            ConstructionError::invalid(
                TheoremCase::KmknInductive,
                format!("row {}: no full color to omit", i + 1),
            )
        }))
    }

    fn try_extend(
        &self,
        j: Color,
        missing: &[Color],
        full: &BTreeSet<Color>,
    ) -> Result<(Vec<Color>, ExtensionStep), ConstructionError> {
        let n = self.n;
        let i = self.rows.len();
        let reserved: Vec<usize> = (0..n).filter(|&c| self.column_has(c, j)).collect();
        let mut row: Vec<Option<Color>> = vec![None; n];
        let mut new_full = BTreeSet::new();
        let mut min_insert_options = usize::MAX;
        for (r, &k) in missing.iter().enumerate() {
            let options: Vec<usize> = (0..n)
                .filter(|&c| {
                    row[c].is_none()
                        && !reserved.contains(&c)
                        && !self.column_has(c, k)
                        && !full.contains(&self.rows[r][c])
                        && !new_full.contains(&self.rows[r][c])
                })
                .collect();
            min_insert_options = min_insert_options.min(options.len());
            let Some(&c) = options.first() else {
                return Err(ConstructionError::invalid(
                    TheoremCase::KmknInductive,
                    format!(
                        "row {}: no column for missing color {k} with j = {j}",
                        i + 1
                    ),
                ));
            };
            row[c] = Some(k);
            new_full.insert(self.rows[r][c]);
        }

        let spare: Vec<Color> = self
            .palette()
            .filter(|x| {
                *x != j && !missing.contains(x) && !full.contains(x) && !new_full.contains(x)
            })
            .collect();
        let bg = BipartiteGraph::from_fn(reserved.len(), spare.len(), |l, r| {
            !self.column_has(reserved[l], spare[r])
        });
        let assigned = crate::matching::maximum_matching(&bg);
        if assigned.iter().any(Option::is_none) {
            return Err(ConstructionError::invalid(
                TheoremCase::KmknInductive,
                format!(
                    "row {}: columns of {j} cannot all take non-full colors",
                    i + 1
                ),
            ));
        }
        for (l, r) in assigned.into_iter().enumerate() {
            row[reserved[l]] = Some(spare[r.expect("checked")]);
        }

        let open: Vec<usize> = (0..n).filter(|&c| row[c].is_none()).collect();
        let rest: Vec<Color> = self
            .palette()
            .filter(|&x| x != j && !row.contains(&Some(x)))
            .collect();
        debug_assert_eq!(open.len(), rest.len());
        let bg = BipartiteGraph::from_fn(open.len(), rest.len(), |l, r| {
            !self.column_has(open[l], rest[r])
        });
        let min_degree = bg.min_degree();
        let matching = perfect_matching(&bg).ok_or(ConstructionError::MatchingInfeasible {
            row: i + 1,
            size: open.len(),
        })?;
        for (l, &r) in matching.iter().enumerate() {
            row[open[l]] = Some(rest[r]);
        }
        let step = ExtensionStep {
            i,
            chosen_full: j,
            min_insert_options,
            min_degree,
        };
        Ok((row.into_iter().map(|x| x.expect("filled")).collect(), step))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::colorful_vertices;

    #[test]
    fn fixed_matrices() {
        assert_eq!(kmkn_coloring(3, 3).unwrap().matrix, fixed(&KMKN_A1));
        assert_eq!(kmkn_coloring(3, 4).unwrap().colors_used, 6);
        let r = kmkn_coloring(3, 5).unwrap();
        assert_eq!((r.matrix.clone(), r.colors_used), (fixed(&KMKN_A3), 6));
        let r = kmkn_coloring(2, 5).unwrap();
        assert_eq!(
            r.matrix.to_rows(),
            vec![vec![1, 2, 3, 4, 5], vec![6, 1, 2, 3, 4]]
        );
        let r = kmkn_coloring(3, 7).unwrap();
        assert_eq!(r.matrix.row(3), &[2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn modular_four_by_ten() {
        let r = kmkn_coloring(4, 10).unwrap();
        assert_eq!((r.case, r.colors_used), (TheoremCase::KmknModular, 12));
        assert_eq!(r.matrix.row(1), &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        let g = product_graph((Family::Complete, 4), (Family::Complete, 10));
        assert!(colorful_vertices(&g, &r.matrix.to_coloring())
            .unwrap()
            .is_empty());
        for i in 1..=4usize {
            let row = r.matrix.row(i);
            let gone: Vec<Color> = (1..=12).filter(|x| !row.contains(x)).collect();
            let want: BTreeSet<Color> = [i * 10 + 1, i * 10 + 2]
                .iter()
                .map(|x| ((x - 1) % 12) as Color + 1)
                .collect();
            assert_eq!(gone.into_iter().collect::<BTreeSet<_>>(), want);
        }
    }

    #[test]
    fn seed_properties() {
        let s = ExtensionState::seed(19).unwrap();
        assert_eq!(s.missing(), vec![20, 19, 18, 1]);
        assert_eq!(s.full().len(), 12);
        let m = kmkn_inductive_rows(4, 19).unwrap();
        assert_eq!(m.num_colors(), 20);
    }

    #[test]
    fn seed_full_colors() {
        let n = 20;
        let s = ExtensionState::seed(n).unwrap();
        let k = n as Color;
        let want: BTreeSet<Color> =
            [1, 2, k, k + 1, k - 4, k - 1, k - 6, k - 3, k - 2, 4, 5, 6].into();
        assert_eq!(s.used_full(), want);
    }

    #[test]
    fn extension_meets_proof_bounds() {
        for (m, n) in [(5, 29), (5, 40), (6, 41), (7, 55)] {
            let mut s = ExtensionState::seed(n).unwrap();
            while s.rows().len() < m {
                let step = s.extend().unwrap();
                let i = step.i as isize;
                let n = n as isize;
                assert!(
                    step.min_insert_options as isize >= n - i * i + 1 - 2 * (i - 1),
                    "{step:?}"
                );
                assert!(step.min_degree as isize >= n - 3 * i, "{step:?}");
            }
            assert_eq!(s.full().len(), m * (m - 1));
            assert_eq!(s.used_missing().len(), m);
        }
    }

    #[test]
    fn inductive_matches_dispatch() {
        let r = kmkn_coloring(5, 29).unwrap();
        assert_eq!((r.case, r.colors_used), (TheoremCase::KmknInductive, 30));
    }

    #[test]
    fn regions() {
        assert!(matches!(
            kmkn_coloring(5, 19),
            Err(ConstructionError::UnsupportedRegion { .. })
        ));
        assert!(matches!(
            kmkn_coloring(6, 10),
            Err(ConstructionError::UnsupportedRegion { .. })
        ));
        assert!(matches!(
            kmkn_coloring(4, 4),
            Err(ConstructionError::UnsupportedRegion { .. })
        ));
        assert!(matches!(
            kmkn_coloring(1, 4),
            Err(ConstructionError::InvalidParameters(_))
        ));
        assert!(kmkn_modular_coloring(3, 10).is_err());
    }

    #[test]
    fn transposed_request() {
        let r = kmkn_coloring(5, 3).unwrap();
        assert!(r.transposed);
        assert_eq!(r.matrix.transpose(), fixed(&KMKN_A3));
    }

    #[test]
    fn check_reports_broken_invariant() {
        let mut rows = ExtensionState::seed(19).unwrap().rows().to_vec();
        rows[1].swap(0, 1);
        assert!(ExtensionState::from_rows(19, rows)
            .unwrap_err()
            .starts_with("(a)"));
    }
}
