use super::{gens_text, parse_gens, Cell, Counterexample, Grid, PointResult, SkippedPoint, Sweep, SweepReport};
use crate::catenary::{default_scan_bound, monoid_catenary, monoid_equivalent, DegreeScanner};
use crate::error::{Error, Result};
use crate::factorization::{raw_distance, FactorizationSet};
use crate::families::{dissonance, GapFamily};
use crate::monoid::NumericalMonoid;

/// Second hypothesis at one element: every same-length pair has a common
/// neighbour of another length closer than c_eq(m) to both.
fn third_factorization_hypothesis(fs: &FactorizationSet, ceq: u64) -> bool {
    let zs = fs.factorizations();
    fs.length_classes().iter().all(|(&len, class)| {
        class.iter().enumerate().all(|(x, &i)| {
            class[x + 1..].iter().all(|&j| {
                zs.iter().any(|w| {
                    w.len() != len && raw_distance(&zs[i], w) < ceq && raw_distance(&zs[j], w) < ceq
                })
            })
        })
    })
}

/// Default element bound: n₂·c_eq(M) + ℱ(M) + n₃ in dimension three.
pub fn strict_default_bound(monoid: &NumericalMonoid) -> Result<u64> {
    if monoid.embedding_dimension() == 3 {
        Ok(dissonance(monoid)?.saturating_add(monoid.largest_generator()))
    } else {
        Ok(default_scan_bound(monoid))
    }
}

/// Tests the hypotheses and conclusion of the strict-inequality theorem per
/// element and of its corollary per monoid.
#[derive(Debug, Clone)]
pub struct StrictInequalitySweep {
    monoids: Vec<Vec<u64>>,
    rejected: Vec<SkippedPoint>,
    bound: Option<u64>,
    grid: String,
}

impl StrictInequalitySweep {
    /// Explicit generator lists, kept as given.
    pub fn explicit(monoids: Vec<Vec<u64>>, bound: Option<u64>) -> Result<Self> {
        for g in &monoids {
            NumericalMonoid::with_generators(g)?;
        }
        let mut grid = format!("gens={}", monoids.iter().map(|g| gens_text(g)).collect::<Vec<_>>().join("|"));
        if let Some(b) = bound {
            grid.push_str(&format!(";bound={b}"));
        }
        Ok(StrictInequalitySweep {
            monoids,
            rejected: Vec::new(),
            bound,
            grid,
        })
    }

    /// Gap-family grid; keys n, a, x (defaults 1..3, 2..6, 2..5) and bound.
    pub fn from_grid(grid: &Grid) -> Result<Self> {
        grid.expect_keys(&["n", "a", "x", "bound"])?;
        let mut monoids = Vec::new();
        let mut rejected = Vec::new();
        for p in grid.product(&[("n", &[1, 2, 3]), ("a", &[2, 3, 4, 5, 6]), ("x", &[2, 3, 4, 5])]) {
            let as_u64: Option<Vec<u64>> = p.iter().map(|&v| u64::try_from(v).ok()).collect();
            let fam = as_u64
                .ok_or_else(|| Error::InvalidFamily(format!("negative parameter in {p:?}")))
                .and_then(|v| GapFamily::new(v[0], v[1], v[2]));
            match fam {
                Ok(f) => monoids.push(f.monoid().generators().to_vec()),
                Err(Error::InvalidFamily(reason)) => rejected.push(SkippedPoint {
                    params: vec![Cell::Text(format!("n={},a={},x={}", p[0], p[1], p[2]))],
                    reason,
                }),
                Err(e) => return Err(e),
            }
        }
        let bound = grid.get("bound").map(|_| grid.single_u64_or("bound", 0)).transpose()?;
        Ok(StrictInequalitySweep {
            monoids,
            rejected,
            bound,
            grid: grid.to_string(),
        })
    }
}

impl Sweep for StrictInequalitySweep {
    fn family(&self) -> String {
        "strict-inequality".into()
    }

    fn grid(&self) -> String {
        self.grid.clone()
    }

    fn param_names(&self) -> Vec<String> {
        vec!["generators".into()]
    }

    fn columns(&self) -> Vec<String> {
        [
            "bound",
            "catenary",
            "equivalent",
            "adjacent_observed",
            "monotone",
            "elements",
            "first_hypothesis",
            "both_hypotheses",
            "conclusion_holds",
            "corollary_hypotheses",
            "corollary_conclusion",
        ]
        .map(String::from)
        .to_vec()
    }

    fn points(&self) -> Result<Vec<Vec<Cell>>> {
        let mut pts: Vec<Vec<Cell>> = self.monoids.iter().map(|g| vec![Cell::Text(gens_text(g))]).collect();
        pts.sort();
        pts.dedup();
        Ok(pts)
    }

    fn rejected(&self) -> Vec<SkippedPoint> {
        self.rejected.clone()
    }

    fn evaluate(&self, params: &[Cell]) -> Result<PointResult> {
        let Some(Cell::Text(text)) = params.first() else {
            return Err(Error::Grid("strict-inequality points carry a generator list".into()));
        };
        let monoid = NumericalMonoid::with_generators(&parse_gens(text)?)?;
        let bound = match self.bound {
            Some(b) => b,
            None => strict_default_bound(&monoid)?,
        };
        let catenary = monoid_catenary(&monoid)?;
        let equivalent = monoid_equivalent(&monoid, Some(bound))?;

        let mut cx = Vec::new();
        let mut counts = [0u64; 4];
        let mut adjacent = 0;
        let mut second_everywhere = true;
        let mut scanner = DegreeScanner::new(&monoid, bound);
        while let Some(row) = scanner.next_with_set() {
            let (fs, deg) = row?;
            counts[0] += 1;
            adjacent = adjacent.max(deg.adjacent);
            let second = third_factorization_hypothesis(&fs, deg.equivalent);
            second_everywhere &= second;
            if deg.equivalent > deg.adjacent {
                counts[1] += 1;
                if second {
                    counts[2] += 1;
                    if deg.monotone > deg.catenary {
                        counts[3] += 1;
                    } else {
                        cx.push(Counterexample::new(
                            params,
                            Some(fs.element()),
                            "c_mon(m) > c(m) under both hypotheses",
                            format!("> {}", deg.catenary),
                            deg.monotone,
                        ));
                    }
                }
            }
        }

        let monotone = equivalent.value.max(adjacent);
        let corollary = equivalent.value > adjacent && second_everywhere;
        let conclusion = monotone > catenary.value;
        if corollary && !conclusion {
            cx.push(Counterexample::new(
                params,
                None,
                "c_mon(M) > c(M) under both hypotheses",
                format!("> {}", catenary.value),
                monotone,
            ));
        }
        let mut values: Vec<Cell> = vec![
            bound.into(),
            catenary.value.into(),
            equivalent.value.into(),
            adjacent.into(),
            monotone.into(),
        ];
        values.extend(counts.iter().map(|&v| Cell::from(v)));
        values.push(corollary.into());
        values.push(conclusion.into());
        Ok(PointResult {
            params: params.to_vec(),
            values,
            exact: false,
            branch: Some(if corollary { "hypotheses hold" } else { "hypotheses fail" }.into()),
            counterexamples: cx,
        })
    }
}

/// Single-monoid form; `bound` defaults per [`strict_default_bound`].
pub fn strict_inequality_conditions(monoid: &NumericalMonoid, bound: Option<u64>) -> Result<SweepReport> {
    let sweep = StrictInequalitySweep::explicit(vec![monoid.generators().to_vec()], bound)?;
    super::run_sweep(&sweep, &Default::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(r: &SweepReport, name: &str) -> Cell {
        r.value(&r.points[0].params, name).unwrap().clone()
    }

    #[test]
    fn worked_examples() {
        let kept = NumericalMonoid::with_generators(&[4, 9, 18]).unwrap();
        let r = strict_inequality_conditions(&kept, None).unwrap();
        assert_eq!(column(&r, "catenary"), Cell::Int(9));
        assert_eq!(column(&r, "monotone"), Cell::Int(14));
        assert_eq!(column(&r, "corollary_conclusion"), Cell::Bool(true));
        assert_eq!(r.support_ratio, 1.0);

        let m = NumericalMonoid::new(&[4, 9, 19]).unwrap();
        let r = strict_inequality_conditions(&m, None).unwrap();
        assert_eq!(column(&r, "catenary"), Cell::Int(7));
        assert_eq!(column(&r, "monotone"), Cell::Int(7));
        assert_eq!(column(&r, "corollary_hypotheses"), Cell::Bool(false));
        assert_eq!(column(&r, "corollary_conclusion"), Cell::Bool(false));
    }
}
