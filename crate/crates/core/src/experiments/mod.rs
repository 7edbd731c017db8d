//! Sweeps over parameter grids that check proved statements, observe
//! conjectures and emit figure data.
//!
//! A sweep is a list of parameter points plus an `evaluate` function. Points are
//! evaluated in parallel, optionally journaled to disk one JSON line at a time
//! so an interrupted run can resume, and sorted by parameters before the
//! report is assembled.

mod arithmetic;
mod conjectures;
mod figure;
mod grid;
mod io;
mod strict;
mod theorem1;

use std::fmt;
use std::path::PathBuf;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use arithmetic::{verify_arithmetic, verify_arithmetic_lemmas, ArithmeticLemmaSweep, ArithmeticSweep};
pub use conjectures::{
    check_conjecture_1_2, check_conjecture_3, conjecture3_formula, conjecture3_formula_balanced, conjecture_branch,
    Conjecture12Sweep, Conjecture3Sweep,
};
pub use figure::{figure_frobenius_family, write_figure_csv, FigureRow};
pub use grid::Grid;
pub use io::{counterexample_path, read_journal, write_report_csv, Journal};
pub use strict::{strict_inequality_conditions, StrictInequalitySweep};
pub use theorem1::{random_monoids, verify_theorem1, RandomMonoids, Theorem1Sweep};

/// One value in a report row.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Text(v) => f.write_str(v),
            Cell::Empty => Ok(()),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        i64::try_from(v).map(Cell::Int).unwrap_or_else(|_| Cell::Text(v.to_string()))
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::from(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map(Into::into).unwrap_or(Cell::Empty)
    }
}

impl Cell {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Cell::Int(v) => Some(*v),
            _ => None,
        }
    }
}

/// Comma-joined generator list, the textual form used in parameter cells.
pub fn gens_text(gens: &[u64]) -> String {
    gens.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Parses a comma-separated list of positive integers.
pub fn parse_gens(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Grid(format!("bad generator '{t}' in '{text}'")))
        })
        .collect()
}

/// A claim that failed at one parameter point (and element, when the claim is
/// element-wise).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: Vec<Cell>,
    pub element: Option<u64>,
    pub claim: String,
    pub expected: String,
    pub actual: String,
}

impl Counterexample {
    pub fn new(
        params: &[Cell],
        element: Option<u64>,
        claim: &str,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        Counterexample {
            params: params.to_vec(),
            element,
            claim: claim.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

/// Outcome at one parameter point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointResult {
    pub params: Vec<Cell>,
    pub values: Vec<Cell>,
    /// False when any reported value is only a bounded-scan observation.
    pub exact: bool,
    /// Case of a case split the point falls into, if the sweep has one.
    pub branch: Option<String>,
    pub counterexamples: Vec<Counterexample>,
}

impl PointResult {
    pub fn supported(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// A grid point that was not evaluated because its parameters are invalid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedPoint {
    pub params: Vec<Cell>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchSupport {
    pub branch: String,
    pub points: usize,
    pub supported: usize,
    pub support_ratio: f64,
}

/// A ratio over some unit other than points (for example factorization pairs).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedRatio {
    pub name: String,
    pub numerator: u64,
    pub denominator: u64,
    pub ratio: f64,
}

impl NamedRatio {
    pub fn new(name: &str, numerator: u64, denominator: u64) -> Self {
        NamedRatio {
            name: name.into(),
            numerator,
            denominator,
            ratio: if denominator == 0 { 1.0 } else { numerator as f64 / denominator as f64 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub family: String,
    pub grid: String,
    pub param_names: Vec<String>,
    pub columns: Vec<String>,
    pub points: Vec<PointResult>,
    pub skipped: Vec<SkippedPoint>,
    pub counterexamples: Vec<Counterexample>,
    /// 1 − (points with a counterexample)/(points); 1 for an empty sweep.
    pub support_ratio: f64,
    pub branches: Vec<BranchSupport>,
    pub ratios: Vec<NamedRatio>,
}

impl SweepReport {
    /// Sorts points and counterexamples and derives the ratios.
    pub fn assemble(
        family: String,
        grid: String,
        param_names: Vec<String>,
        columns: Vec<String>,
        mut points: Vec<PointResult>,
        mut skipped: Vec<SkippedPoint>,
    ) -> Self {
        points.sort_by(|a, b| a.params.cmp(&b.params));
        skipped.sort_by(|a, b| a.params.cmp(&b.params));
        let mut counterexamples: Vec<Counterexample> =
            points.iter().flat_map(|p| p.counterexamples.iter().cloned()).collect();
        counterexamples.sort();
        let ratio = |total: usize, good: usize| {
            if total == 0 {
                1.0
            } else {
                good as f64 / total as f64
            }
        };
        let good = points.iter().filter(|p| p.supported()).count();
        let support_ratio = ratio(points.len(), good);
        let mut names: Vec<String> = points.iter().filter_map(|p| p.branch.clone()).collect();
        names.sort();
        names.dedup();
        let branches = names
            .into_iter()
            .map(|branch| {
                let members: Vec<&PointResult> =
                    points.iter().filter(|p| p.branch.as_deref() == Some(branch.as_str())).collect();
                let supported = members.iter().filter(|p| p.supported()).count();
                BranchSupport {
                    support_ratio: ratio(members.len(), supported),
                    branch,
                    points: members.len(),
                    supported,
                }
            })
            .collect();
        SweepReport {
            family,
            grid,
            param_names,
            columns,
            points,
            skipped,
            counterexamples,
            support_ratio,
            branches,
            ratios: Vec::new(),
        }
    }

    /// Value of `column` at the point with the given parameters.
    pub fn value(&self, params: &[Cell], column: &str) -> Option<&Cell> {
        let c = self.columns.iter().position(|n| n == column)?;
        self.points.iter().find(|p| p.params == params)?.values.get(c)
    }
}

/// A parameter sweep.
pub trait Sweep: Sync {
    /// Family identifier written into reports.
    fn family(&self) -> String;

    /// Canonical description of the grid and bounds.
    fn grid(&self) -> String;

    fn param_names(&self) -> Vec<String>;

    fn columns(&self) -> Vec<String>;

    fn points(&self) -> Result<Vec<Vec<Cell>>>;

    /// Evaluates one point. `Error::InvalidFamily` marks the point as skipped.
    fn evaluate(&self, params: &[Cell]) -> Result<PointResult>;

    /// Grid points dropped before evaluation.
    fn rejected(&self) -> Vec<SkippedPoint> {
        Vec::new()
    }

    /// Extra ratios computed from the sorted points.
    fn ratios(&self, _points: &[PointResult]) -> Vec<NamedRatio> {
        Vec::new()
    }
}

/// Where (if anywhere) to journal results as points complete.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub journal: Option<PathBuf>,
}

enum Outcome {
    Done(PointResult),
    Skipped(SkippedPoint),
}

/// Runs every point of `sweep` on the current rayon pool.
pub fn run_sweep(sweep: &dyn Sweep, options: &RunOptions) -> Result<SweepReport> {
    let points = sweep.points()?;
    let (done, journal) = match &options.journal {
        Some(path) => {
            let done = read_journal(path, &sweep.family(), &sweep.grid())?;
            // Rewritten from the parsed points so a torn final line is dropped.
            let mut journal = Journal::open(path, &sweep.family(), &sweep.grid(), true)?;
            for p in &done {
                journal.append(p)?;
            }
            (done, Some(Mutex::new(journal)))
        }
        None => (Vec::new(), None),
    };
    let todo: Vec<&Vec<Cell>> = points
        .iter()
        .filter(|p| !done.iter().any(|d| &d.params == *p))
        .collect();
    let fresh: Vec<Outcome> = todo
        .par_iter()
        .map(|params| {
            let outcome = match sweep.evaluate(params) {
                Ok(r) => Outcome::Done(r),
                Err(Error::InvalidFamily(reason)) => Outcome::Skipped(SkippedPoint {
                    params: params.to_vec(),
                    reason,
                }),
                Err(e) => return Err(e),
            };
            if let (Some(j), Outcome::Done(r)) = (&journal, &outcome) {
                j.lock().expect("journal lock").append(r)?;
            }
            Ok(outcome)
        })
        .collect::<Result<_>>()?;
    let mut results: Vec<PointResult> = done.into_iter().filter(|d| points.contains(&d.params)).collect();
    let mut skipped = sweep.rejected();
    for o in fresh {
        match o {
            Outcome::Done(r) => results.push(r),
            Outcome::Skipped(s) => skipped.push(s),
        }
    }
    let mut report = SweepReport::assemble(
        sweep.family(),
        sweep.grid(),
        sweep.param_names(),
        sweep.columns(),
        results,
        skipped,
    );
    report.ratios = sweep.ratios(&report.points);
    Ok(report)
}

/// Re-evaluates the point of `cx` and returns the matching counterexamples
/// (same element and claim) found there.
pub fn replay(sweep: &dyn Sweep, cx: &Counterexample) -> Result<Vec<Counterexample>> {
    let point = sweep.evaluate(&cx.params)?;
    Ok(point
        .counterexamples
        .into_iter()
        .filter(|c| c.element == cx.element && c.claim == cx.claim)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Fake;

    impl Sweep for Fake {
        fn family(&self) -> String {
            "fake".into()
        }
        fn grid(&self) -> String {
            "x=0..5".into()
        }
        fn param_names(&self) -> Vec<String> {
            vec!["x".into()]
        }
        fn columns(&self) -> Vec<String> {
            vec!["square".into()]
        }
        fn points(&self) -> Result<Vec<Vec<Cell>>> {
            Ok((0..=5).rev().map(|x| vec![Cell::Int(x)]).collect())
        }
        fn evaluate(&self, params: &[Cell]) -> Result<PointResult> {
            let x = params[0].as_int().unwrap();
            if x == 1 {
                return Err(Error::InvalidFamily("one".into()));
            }
            let mut counterexamples = Vec::new();
            if x * x > 10 {
                counterexamples.push(Counterexample::new(params, Some(x as u64), "small", "<= 10", x * x));
            }
            Ok(PointResult {
                params: params.to_vec(),
                values: vec![Cell::Int(x * x)],
                exact: true,
                branch: Some(if x % 2 == 0 { "even" } else { "odd" }.into()),
                counterexamples,
            })
        }
    }

    #[test]
    fn report_assembly() {
        let r = run_sweep(&Fake, &RunOptions::default()).unwrap();
        let xs: Vec<i64> = r.points.iter().map(|p| p.params[0].as_int().unwrap()).collect();
        assert_eq!(xs, vec![0, 2, 3, 4, 5]);
        assert_eq!(r.skipped.len(), 1);
        assert_eq!(r.counterexamples.len(), 2);
        assert!((r.support_ratio - 0.6).abs() < 1e-12);
        assert_eq!(r.branches.len(), 2);
        assert_eq!(r.value(&[Cell::Int(3)], "square"), Some(&Cell::Int(9)));
        for cx in &r.counterexamples {
            assert_eq!(replay(&Fake, cx).unwrap(), vec![cx.clone()]);
        }
    }

    #[test]
    fn cells_round_trip() {
        let cells = vec![Cell::Int(-3), Cell::Bool(true), Cell::Text("4,9".into()), Cell::Empty];
        let json = serde_json::to_string(&cells).unwrap();
        assert_eq!(json, r#"[-3,true,"4,9",null]"#);
        assert_eq!(serde_json::from_str::<Vec<Cell>>(&json).unwrap(), cells);
        assert_eq!(parse_gens("4, 9,19").unwrap(), vec![4, 9, 19]);
        assert!(parse_gens("4,x").is_err());
    }
}
