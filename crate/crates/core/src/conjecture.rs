//! Desk-scale evidence for four open statements about locating chromatic
//! numbers of product graphs.
//!
//! 1. `χ_L(K_m0 □ K_n) = n + 1` with `m0 = m0(n)`.
//! 2. `χ_L(K_m □ K_n) = n + 3` when `⌈(n+3)/2⌉ < m <= n`, together with the
//!    companion claim `χ_L(K_m □ K_n) = n + 2` for `n/2 < m <= ⌈(n+3)/2⌉`.
//! 3. `χ_L(K_m □ C_n) = χ_L(K_m □ P_n)` for large enough `m` and `n`.
//! 4. `χ_L(G □ H) <= max(χ_L(G), χ_L(H)) + 3` for connected `G`, `H`.
//!
//! Every verdict other than `unresolved` rests on exact solver values.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{is_locating, Color};
use crate::constructions::m0;
use crate::graph::{build_family, cartesian_product, Family, Graph};
use crate::solver::{locating_chromatic_number, SolveBudget, SolveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Consistent,
    Counterexample,
    /// The solver could not finish within budget.
    Unresolved,
    /// Values differ at a size the asymptotic statement does not cover.
    SmallCaseDeviation,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Counterexample => "counterexample",
            Verdict::Unresolved => "unresolved",
            Verdict::SmallCaseDeviation => "small-case-deviation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Equal,
    AtMost,
}

/// One instance of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub graph: String,
    /// Orders of the two factors.
    pub m: usize,
    pub n: usize,
    /// Which statement the instance tests.
    pub claim: String,
    pub relation: Relation,
    pub predicted: Option<u32>,
    pub value: Option<u32>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// A verified locating coloring with `value` colors, kept for
    /// counterexamples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Color>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub conjecture: u8,
    pub max_m: usize,
    pub max_n: usize,
    pub max_vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_limit: Option<u64>,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_m: usize,
    pub max_n: usize,
    pub budget: SolveBudget,
    /// Instances solved concurrently.
    pub jobs: usize,
}

impl Limits {
    pub fn new(max_m: usize, max_n: usize) -> Self {
        Limits {
            max_m,
            max_n,
            budget: SolveBudget::default(),
            jobs: 1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConjectureError {
    #[error("unknown conjecture {0}; expected 1, 2, 3 or 4")]
    UnknownId(u8),
    #[error("could not start {jobs} worker threads: {reason}")]
    Pool { jobs: usize, reason: String },
}

/// Planned instance before solving.
#[derive(Debug, Clone)]
enum Task {
    /// Compare `χ_L` of the graph with a fixed value.
    Fixed {
        claim: &'static str,
        graph: (Family, usize, Family, usize),
        predicted: u32,
        note: Option<String>,
    },
    /// Compare `χ_L(K_m □ C_n)` with `χ_L(K_m □ P_n)`.
    CycleVsPath { m: usize, n: usize },
    /// Compare `χ_L(G □ H)` with `max(χ_L(G), χ_L(H)) + 3`.
    ProductBound {
        g: (Family, usize),
        h: (Family, usize),
    },
}

pub fn check_conjecture(id: u8, limits: &Limits) -> Result<ConjectureReport, ConjectureError> {
    let tasks = match id {
        1 => conjecture_one(limits),
        2 => conjecture_two(limits),
        3 => conjecture_three(limits),
        4 => conjecture_four(limits),
        other => return Err(ConjectureError::UnknownId(other)),
    };
    let budget = limits.budget;
    let jobs = limits.jobs.max(1);
    let entries = if jobs == 1 {
        tasks.iter().map(|t| evaluate(t, &budget)).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| ConjectureError::Pool {
                jobs,
                reason: e.to_string(),
            })?
            .install(|| tasks.par_iter().map(|t| evaluate(t, &budget)).collect())
    };
    Ok(ConjectureReport {
        conjecture: id,
        max_m: limits.max_m,
        max_n: limits.max_n,
        max_vertices: budget.max_vertices,
        node_limit: budget.node_limit,
        entries,
    })
}

fn kk(m: usize, n: usize) -> (Family, usize, Family, usize) {
    (Family::Complete, m, Family::Complete, n)
}

fn conjecture_one(limits: &Limits) -> Vec<Task> {
    (3..=limits.max_n)
        .filter_map(|n| {
            let m = m0(n);
            (m <= limits.max_m).then(|| {
                let note =
                    in_open_range(n).then(|| "no explicit construction covers this n".to_string());
                Task::Fixed {
                    claim: "conjecture 1",
                    graph: kk(m, n),
                    predicted: n as u32 + 1,
                    note,
                }
            })
        })
        .collect()
}

/// Whether `K_m0 □ K_n` is not already settled by the row construction,
/// i.e. `m0 >= 4` and `m0(m0 - 1) - 1 <= n <= m0(m0 - 1) - 1 + (m0 - 3)`.
pub fn in_open_range(n: usize) -> bool {
    let m = m0(n);
    m >= 4 && n + 1 - m * (m - 1) <= m - 3
}

fn conjecture_two(limits: &Limits) -> Vec<Task> {
    let mut tasks = Vec::new();
    for n in 3..=limits.max_n {
        let edge = (n + 3).div_ceil(2);
        for m in (n / 2 + 1).max(2)..=n.min(limits.max_m) {
            let (claim, predicted) = if m > edge {
                ("conjecture 2", n as u32 + 3)
            } else {
                ("claim n+2", n as u32 + 2)
            };
            tasks.push(Task::Fixed {
                claim,
                graph: kk(m, n),
                predicted,
                note: None,
            });
        }
    }
    tasks
}

fn conjecture_three(limits: &Limits) -> Vec<Task> {
    (3..=limits.max_m)
        .flat_map(|m| (3..=limits.max_n).map(move |n| Task::CycleVsPath { m, n }))
        .collect()
}

/// Unordered pairs of factors drawn from the built-in families.
fn conjecture_four(limits: &Limits) -> Vec<Task> {
    let factors = |max: usize| {
        let mut out = Vec::new();
        for family in [Family::Path, Family::Cycle, Family::Complete] {
            let start = if family == Family::Cycle { 3 } else { 2 };
            out.extend((start..=max).map(|k| (family, k)));
        }
        out
    };
    let (left, right) = (factors(limits.max_m), factors(limits.max_n));
    let mut pairs: Vec<((Family, usize), (Family, usize))> = Vec::new();
    for &g in &left {
        for &h in &right {
            let key = if (g.0 as u8, g.1) <= (h.0 as u8, h.1) {
                (g, h)
            } else {
                (h, g)
            };
            if !pairs.contains(&key) {
                pairs.push(key);
            }
        }
    }
    pairs.sort_by_key(|&(g, h)| (g.1 * h.1, g.0 as u8, g.1, h.0 as u8, h.1));
    pairs
        .into_iter()
        .map(|(g, h)| Task::ProductBound { g, h })
        .collect()
}

fn product(a: (Family, usize), b: (Family, usize)) -> Graph {
    let g = build_family(a.0, a.1).expect("family sizes are in range");
    let h = build_family(b.0, b.1).expect("family sizes are in range");
    cartesian_product(&g, &h)
}

struct Solved {
    value: u32,
    witness: Vec<Color>,
}

fn solve(g: &Graph, budget: &SolveBudget) -> Result<Solved, String> {
    match locating_chromatic_number(g, budget) {
        Ok(r) => {
            assert!(
                is_locating(g, &r.witness)
                    .map(|l| l.is_yes())
                    .unwrap_or(false),
                "solver witness for {} is not locating",
                g.name()
            );
            Ok(Solved {
                value: r.value,
                witness: r.witness.into_vec(),
            })
        }
        Err(e @ (SolveError::TooManyVertices { .. } | SolveError::BudgetExceeded { .. })) => {
            Err(e.to_string())
        }
        Err(e) => panic!("unexpected solver error on {}: {e}", g.name()),
    }
}

fn evaluate(task: &Task, budget: &SolveBudget) -> Entry {
    match task {
        Task::Fixed {
            claim,
            graph: (fg, m, fh, n),
            predicted,
            note,
        } => {
            let g = product((*fg, *m), (*fh, *n));
            let mut entry = Entry {
                graph: g.name().to_string(),
                m: *m,
                n: *n,
                claim: claim.to_string(),
                relation: Relation::Equal,
                predicted: Some(*predicted),
                value: None,
                verdict: Verdict::Unresolved,
                note: note.clone(),
                witness: None,
            };
            match solve(&g, budget) {
                Ok(s) => {
                    entry.value = Some(s.value);
                    if s.value == *predicted {
                        entry.verdict = Verdict::Consistent;
                    } else {
                        entry.verdict = Verdict::Counterexample;
                        entry.note = Some(certificate(s.value, *predicted));
                        entry.witness = Some(s.witness);
                    }
                }
                Err(reason) => entry.note = Some(reason),
            }
            entry
        }
        Task::CycleVsPath { m, n } => {
            let cyc = product((Family::Complete, *m), (Family::Cycle, *n));
            let path = product((Family::Complete, *m), (Family::Path, *n));
            let mut entry = Entry {
                graph: cyc.name().to_string(),
                m: *m,
                n: *n,
                claim: "conjecture 3".into(),
                relation: Relation::Equal,
                predicted: None,
                value: None,
                verdict: Verdict::Unresolved,
                note: None,
                witness: None,
            };
            let p = solve(&path, budget);
            let c = solve(&cyc, budget);
            entry.predicted = p.as_ref().ok().map(|s| s.value);
            entry.value = c.as_ref().ok().map(|s| s.value);
            match (p, c) {
                (Ok(p), Ok(c)) if p.value == c.value => entry.verdict = Verdict::Consistent,
                (Ok(p), Ok(c)) => {
                    entry.verdict = Verdict::SmallCaseDeviation;
                    entry.note = Some(format!("{} has value {}", path.name(), p.value));
                    entry.witness = Some(c.witness);
                }
                (Err(reason), _) | (_, Err(reason)) => entry.note = Some(reason),
            }
            entry
        }
        Task::ProductBound { g, h } => {
            let gh = product(*g, *h);
            let mut entry = Entry {
                graph: gh.name().to_string(),
                m: g.1,
                n: h.1,
                claim: "conjecture 4".into(),
                relation: Relation::AtMost,
                predicted: None,
                value: None,
                verdict: Verdict::Unresolved,
                note: None,
                witness: None,
            };
            let factor =
                |f: (Family, usize)| solve(&build_family(f.0, f.1).expect("in range"), budget);
            let bound = factor(*g).and_then(|a| factor(*h).map(|b| a.value.max(b.value) + 3));
            entry.predicted = bound.as_ref().ok().copied();
            match (bound, solve(&gh, budget)) {
                (Ok(bound), Ok(s)) => {
                    entry.value = Some(s.value);
                    if s.value <= bound {
                        entry.verdict = Verdict::Consistent;
                    } else {
                        entry.verdict = Verdict::Counterexample;
                        entry.note = Some(certificate(s.value, bound));
                        entry.witness = Some(s.witness);
                    }
                }
                (Err(reason), _) | (_, Err(reason)) => entry.note = Some(reason),
            }
            entry
        }
    }
}

fn certificate(value: u32, predicted: u32) -> String {
    if value < predicted {
        format!("witness is a verified locating {value}-coloring")
    } else {
        format!("exhaustive search found no locating {}-coloring", value - 1)
    }
}

impl ConjectureReport {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.entries.iter().filter(|e| e.verdict == verdict).count()
    }

    /// Fixed-width table, one line per instance.
    pub fn table(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .entries
            .iter()
            .map(|e| {
                let rel = match e.relation {
                    Relation::Equal => "=",
                    Relation::AtMost => "<=",
                };
                let show = |v: Option<u32>| v.map_or("?".to_string(), |v| v.to_string());
                [
                    e.graph.clone(),
                    e.claim.clone(),
                    format!("{rel} {}", show(e.predicted)),
                    show(e.value),
                    e.verdict.as_str().to_string(),
                ]
            })
            .collect();
        let header = ["graph", "statement", "predicted", "chi_L", "verdict"];
        let mut widths = header.map(str::len);
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&header.map(String::from));
        for row in &rows {
            line(row);
        }
        let _ = writeln!(
            out,
            "{} instances: {} consistent, {} counterexample, {} small-case-deviation, {} unresolved",
            self.entries.len(),
            self.count(Verdict::Consistent),
            self.count(Verdict::Counterexample),
            self.count(Verdict::SmallCaseDeviation),
            self.count(Verdict::Unresolved),
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjecture_one_small() {
        let r = check_conjecture(1, &Limits::new(3, 5)).unwrap();
        let first = &r.entries[0];
        assert_eq!(
            (first.graph.as_str(), first.predicted, first.value),
            ("K2xK3", Some(4), Some(4))
        );
        assert_eq!(first.verdict, Verdict::Consistent);
        assert!(r.entries.iter().all(|e| e.verdict == Verdict::Consistent));
        assert!(r.entries.iter().all(|e| e.note.is_none()));
    }

    #[test]
    fn open_range() {
        let open: Vec<usize> = (3..50).filter(|&n| in_open_range(n)).collect();
        assert_eq!(
            open,
            vec![11, 12, 19, 20, 21, 29, 30, 31, 32, 41, 42, 43, 44, 45]
        );
    }

    #[test]
    fn conjecture_four_k2_pair() {
        let r = check_conjecture(4, &Limits::new(2, 2)).unwrap();
        let e = r.entries.iter().find(|e| e.graph == "K2xK2").unwrap();
        assert_eq!(
            (e.value, e.predicted, e.verdict),
            (Some(4), Some(5), Verdict::Consistent)
        );
    }

    #[test]
    fn conjecture_three_pair() {
        let r = check_conjecture(3, &Limits::new(3, 4)).unwrap();
        let e = r.entries.iter().find(|e| e.n == 4).unwrap();
        assert_eq!(e.graph, "K3xC4");
        assert_eq!(e.predicted, Some(4));
        assert_eq!(e.verdict, Verdict::Consistent);
        let e = r.entries.iter().find(|e| e.n == 3).unwrap();
        assert_eq!(
            (e.value, e.predicted, e.verdict),
            (Some(5), Some(4), Verdict::SmallCaseDeviation)
        );
    }

    #[test]
    fn over_budget_is_unresolved() {
        let mut limits = Limits::new(3, 3);
        limits.budget.max_vertices = 5;
        let r = check_conjecture(1, &limits).unwrap();
        assert!(r
            .entries
            .iter()
            .all(|e| e.verdict == Verdict::Unresolved && e.note.is_some()));
    }

    #[test]
    fn report_round_trip_and_determinism() {
        let mut limits = Limits::new(3, 5);
        let a = check_conjecture(2, &limits).unwrap();
        limits.jobs = 3;
        let b = check_conjecture(2, &limits).unwrap();
        assert_eq!(a, b);
        assert_eq!(ConjectureReport::from_toml(&a.to_toml()).unwrap(), a);
        assert!(a.table().contains("K3xK3"));
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(
            check_conjecture(5, &Limits::new(3, 3)),
            Err(ConjectureError::UnknownId(5))
        ));
    }
}
