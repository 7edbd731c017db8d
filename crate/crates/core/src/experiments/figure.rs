use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gens_text;
use crate::catenary::Exactness;
use crate::error::{Error, Result};
use crate::families::{frobenius_family_invariants, FrobeniusFamily};

/// One row of the Frobenius-family table: computed values beside the closed
/// forms 2a−3 and a²−2a−1 and both difference formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigureRow {
    pub a: u64,
    pub generators: String,
    pub catenary: u64,
    pub monotone: u64,
    pub gap: i64,
    pub predicted_catenary: u64,
    pub predicted_monotone: u64,
    pub derived_gap: i64,
    pub stated_gap: i64,
    pub betti_matches: bool,
    pub monotone_exact: bool,
    pub outside_hypothesis: bool,
}

pub const FIGURE_A_MAX: u64 = 60;

/// Rows for a ∈ [a_min, a_max], sorted by a. Requires 4 ≤ a_min ≤ a_max ≤ 60.
pub fn figure_frobenius_family(a_min: u64, a_max: u64, window: Option<u64>) -> Result<Vec<FigureRow>> {
    if a_min < 4 || a_min > a_max || a_max > FIGURE_A_MAX {
        return Err(Error::Guard(format!(
            "figure needs 4 <= a_min <= a_max <= {FIGURE_A_MAX}, got [{a_min}, {a_max}]"
        )));
    }
    let mut rows: Vec<FigureRow> = (a_min..=a_max)
        .into_par_iter()
        .map(|a| {
            let fam = FrobeniusFamily::new(a)?;
            let inv = frobenius_family_invariants(&fam, window)?;
            Ok(FigureRow {
                a,
                generators: gens_text(&inv.generators),
                catenary: inv.catenary,
                monotone: inv.monotone.value,
                gap: inv.gap,
                predicted_catenary: inv.expected_catenary,
                predicted_monotone: inv.expected_monotone,
                derived_gap: inv.derived_gap,
                stated_gap: inv.stated_gap,
                betti_matches: inv.betti_matches(),
                monotone_exact: inv.monotone.exactness == Exactness::Exact,
                outside_hypothesis: inv.outside_hypothesis,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.a);
    Ok(rows)
}

pub fn write_figure_csv(rows: &[FigureRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let rows = figure_frobenius_family(5, 6, None).unwrap();
        let short: Vec<(u64, u64, u64, i64)> = rows.iter().map(|r| (r.a, r.catenary, r.monotone, r.gap)).collect();
        assert_eq!(short, vec![(5, 7, 14, 7), (6, 9, 23, 14)]);
        assert!(rows.iter().all(|r| r.betti_matches && r.gap == r.derived_gap));
        assert!(figure_frobenius_family(3, 6, None).is_err());
        assert!(figure_frobenius_family(7, 6, None).is_err());
        assert!(figure_frobenius_family(5, 61, None).is_err());
    }

    #[test]
    fn csv_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        write_figure_csv(&figure_frobenius_family(5, 5, None).unwrap(), &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "a,generators,catenary,monotone,gap,predicted_catenary,predicted_monotone,derived_gap,stated_gap,betti_matches,monotone_exact,outside_hypothesis"
        );
        assert_eq!(lines.next().unwrap(), "5,\"5,6,19\",7,14,7,7,14,7,1,true,true,false");
    }
}
