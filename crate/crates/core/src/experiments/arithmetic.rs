use super::{gens_text, Cell, Counterexample, Grid, PointResult, Sweep, SweepReport};
use crate::catenary::{monoid_catenary, DegreeScanner};
use crate::error::{Error, Result};
use crate::factorization::{distance, enumerate_with, EnumerationLimits};
use crate::families::{ArithmeticFamily, OptimizedForm};

fn family_params(params: &[Cell]) -> Result<(u64, u64, u64)> {
    let get = |i: usize| {
        params
            .get(i)
            .and_then(Cell::as_int)
            .and_then(|v| u64::try_from(v).ok())
            .ok_or_else(|| Error::InvalidFamily(format!("bad arithmetic parameters {params:?}")))
    };
    Ok((get(0)?, get(1)?, get(2)?))
}

fn grid_points(grid: &Grid) -> Result<Vec<Vec<Cell>>> {
    grid.expect_keys(&["a", "d", "k", "bound"])?;
    Ok(grid
        .product(&[("a", &[3, 4, 5, 6, 7, 8, 9, 10, 11, 12]), ("d", &[1, 2, 3, 4]), ("k", &[1, 2, 3, 4])])
        .into_iter()
        .map(|p| p.into_iter().map(Cell::Int).collect())
        .collect())
}

/// Element-wise and set-wise checks of the arithmetic-sequence theorems.
#[derive(Debug, Clone)]
pub struct ArithmeticSweep {
    points: Vec<Vec<Cell>>,
    bound: u64,
    grid: String,
}

impl ArithmeticSweep {
    /// Keys: a, d, k (defaults 3..12, 1..4, 1..4) and bound (default 400).
    pub fn from_grid(grid: &Grid) -> Result<Self> {
        Ok(ArithmeticSweep {
            points: grid_points(grid)?,
            bound: grid.single_u64_or("bound", 400)?,
            grid: grid.to_string(),
        })
    }

    pub fn single(fam: &ArithmeticFamily, bound: u64) -> Self {
        ArithmeticSweep {
            points: vec![vec![Cell::from(fam.a()), Cell::from(fam.d()), Cell::from(fam.k())]],
            bound,
            grid: format!("a={};d={};k={};bound={bound}", fam.a(), fam.d(), fam.k()),
        }
    }
}

impl Sweep for ArithmeticSweep {
    fn family(&self) -> String {
        "arithmetic".into()
    }

    fn grid(&self) -> String {
        self.grid.clone()
    }

    fn param_names(&self) -> Vec<String> {
        ["a", "d", "k"].map(String::from).to_vec()
    }

    fn columns(&self) -> Vec<String> {
        [
            "generators",
            "frobenius",
            "catenary_closed",
            "catenary_betti",
            "elements",
            "max_catenary",
            "max_equivalent",
            "max_adjacent",
            "max_monotone",
        ]
        .map(String::from)
        .to_vec()
    }

    fn points(&self) -> Result<Vec<Vec<Cell>>> {
        Ok(self.points.clone())
    }

    fn evaluate(&self, params: &[Cell]) -> Result<PointResult> {
        let (a, d, k) = family_params(params)?;
        let fam = ArithmeticFamily::new(a, d, k)?;
        let monoid = fam.monoid();
        let closed = fam.catenary_closed();
        let mut cx = Vec::new();

        let betti = monoid_catenary(monoid)?;
        if betti.value != closed {
            cx.push(Counterexample::new(params, None, "betti c(M) = ceil(a/k)+d", closed, betti.value));
        }

        // Membership criterion against the DP on [0, F + ad].
        let top = monoid.frobenius() + (a * d) as i64;
        for m in 0..=top.max(0) {
            let criterion = fam.contains(m);
            if criterion != monoid.contains_dp(m)? {
                cx.push(Counterexample::new(params, Some(m as u64), "membership criterion", !criterion, criterion));
            }
        }

        let mut elements = 0u64;
        let mut maxima = [0u64; 4];
        let mut scanner = DegreeScanner::new(monoid, self.bound);
        while let Some(row) = scanner.next_with_set() {
            let (fs, deg) = row?;
            let m = Some(fs.element());
            elements += 1;
            for (slot, v) in maxima
                .iter_mut()
                .zip([deg.catenary, deg.equivalent, deg.adjacent, deg.monotone])
            {
                *slot = (*slot).max(v);
            }
            if deg.monotone != deg.catenary {
                cx.push(Counterexample::new(params, m, "c_mon(m) = c(m)", deg.catenary, deg.monotone));
            }
            let profile = fs.profile()?;
            if profile.delta.iter().any(|&g| g != d) {
                cx.push(Counterexample::new(params, m, "delta(m) within {d}", d, format!("{:?}", profile.delta)));
            }
            let repeated = fs.length_classes().values().any(|c| c.len() > 1);
            if repeated && deg.equivalent != 2 {
                cx.push(Counterexample::new(params, m, "c_eq(m) = 2", 2, deg.equivalent));
            }
            if deg.catenary != 0 && deg.catenary != 2 && deg.adjacent != deg.catenary {
                cx.push(Counterexample::new(params, m, "c_adj(m) = c(m)", deg.catenary, deg.adjacent));
            }
        }

        Ok(PointResult {
            params: params.to_vec(),
            values: vec![
                gens_text(monoid.generators()).into(),
                monoid.frobenius().into(),
                closed.into(),
                betti.value.into(),
                elements.into(),
                maxima[0].into(),
                maxima[1].into(),
                maxima[2].into(),
                maxima[3].into(),
            ],
            exact: !betti.heuristic,
            branch: None,
            counterexamples: cx,
        })
    }
}

/// All arithmetic theorem checks for one family, elements ≤ `bound`.
pub fn verify_arithmetic(fam: &ArithmeticFamily, bound: u64) -> Result<SweepReport> {
    super::run_sweep(&ArithmeticSweep::single(fam, bound), &Default::default())
}

/// Exhaustive checks of the optimized-form procedure, the non-minimal-length
/// inequality, the α bound and move B over every factorization of m ≤ bound.
#[derive(Debug, Clone)]
pub struct ArithmeticLemmaSweep {
    points: Vec<Vec<Cell>>,
    bound: u64,
    grid: String,
}

impl ArithmeticLemmaSweep {
    pub fn from_grid(grid: &Grid) -> Result<Self> {
        Ok(ArithmeticLemmaSweep {
            points: grid_points(grid)?,
            bound: grid.single_u64_or("bound", 400)?,
            grid: grid.to_string(),
        })
    }

    pub fn single(fam: &ArithmeticFamily, bound: u64) -> Self {
        ArithmeticLemmaSweep {
            points: vec![vec![Cell::from(fam.a()), Cell::from(fam.d()), Cell::from(fam.k())]],
            bound,
            grid: format!("a={};d={};k={};bound={bound}", fam.a(), fam.d(), fam.k()),
        }
    }
}

impl Sweep for ArithmeticLemmaSweep {
    fn family(&self) -> String {
        "arithmetic-lemmas".into()
    }

    fn grid(&self) -> String {
        self.grid.clone()
    }

    fn param_names(&self) -> Vec<String> {
        ["a", "d", "k"].map(String::from).to_vec()
    }

    fn columns(&self) -> Vec<String> {
        [
            "factorizations",
            "optimized",
            "optimized_non_minimal",
            "inequality_agrees",
            "move_b_applied",
        ]
        .map(String::from)
        .to_vec()
    }

    fn points(&self) -> Result<Vec<Vec<Cell>>> {
        Ok(self.points.clone())
    }

    fn evaluate(&self, params: &[Cell]) -> Result<PointResult> {
        let (a, d, k) = family_params(params)?;
        let fam = ArithmeticFamily::new(a, d, k)?;
        let monoid = fam.monoid();
        let c = fam.catenary_closed();
        let limits = EnumerationLimits::from_env();
        let mut cx = Vec::new();
        let mut counts = [0u64; 5];
        for m in 0..=self.bound {
            let fs = enumerate_with(monoid, m, limits)?;
            if fs.is_empty() {
                continue;
            }
            let e = Some(m);
            let shortest = fs.profile()?.min_length;
            for z in fs.factorizations() {
                counts[0] += 1;
                let o = fam.optimize(z)?;
                if o.element(monoid)? != m || o.len() != z.len() || OptimizedForm::parse(&o).is_none() {
                    cx.push(Counterexample::new(
                        params,
                        e,
                        "optimize keeps element and length and is optimized",
                        format!("{:?}", z.coeffs()),
                        format!("{:?}", o.coeffs()),
                    ));
                }
                if let Some(form) = OptimizedForm::parse(z) {
                    counts[1] += 1;
                    let predicted = fam.is_non_minimal_length(&form);
                    let shorter = z.len() > shortest;
                    if predicted == shorter {
                        counts[3] += 1;
                    }
                    if predicted && !shorter {
                        cx.push(Counterexample::new(
                            params,
                            e,
                            "inequality implies a shorter factorization",
                            format!("{:?} has length > {shortest}", z.coeffs()),
                            "minimal length",
                        ));
                    }
                    if shorter {
                        counts[2] += 1;
                        if !fam.alpha_lower_bound_check(&form) {
                            cx.push(Counterexample::new(
                                params,
                                e,
                                "alpha >= c(M) - 1",
                                format!(">= {}", c - 1),
                                form.alpha,
                            ));
                        }
                    }
                }
                if z.coeffs()[0] >= c {
                    counts[4] += 1;
                    let bz = fam.move_b(z)?;
                    let dist = distance(z, &bz)?;
                    let ok = bz.element(monoid)? == m && bz.len() + d == z.len() && dist == c;
                    if !ok {
                        cx.push(Counterexample::new(
                            params,
                            e,
                            "move B drops length by d at distance c(M)",
                            format!("length {} distance {c}", z.len() - d),
                            format!("length {} distance {dist}", bz.len()),
                        ));
                    }
                }
            }
        }
        Ok(PointResult {
            params: params.to_vec(),
            values: counts.iter().map(|&v| Cell::from(v)).collect(),
            exact: true,
            branch: None,
            counterexamples: cx,
        })
    }
}

pub fn verify_arithmetic_lemmas(fam: &ArithmeticFamily, bound: u64) -> Result<SweepReport> {
    super::run_sweep(&ArithmeticLemmaSweep::single(fam, bound), &Default::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_family() {
        let fam = ArithmeticFamily::new(11, 4, 4).unwrap();
        let r = verify_arithmetic(&fam, 250).unwrap();
        assert_eq!(r.counterexamples, vec![]);
        assert_eq!(r.points[0].values[3], Cell::Int(7));
        let r = verify_arithmetic_lemmas(&fam, 200).unwrap();
        assert_eq!(r.counterexamples, vec![]);
    }

    #[test]
    fn two_generators() {
        let fam = ArithmeticFamily::new(2, 1, 1).unwrap();
        let r = verify_arithmetic(&fam, 100).unwrap();
        assert_eq!(r.support_ratio, 1.0);
        assert_eq!(r.points[0].values[0], Cell::Text("2,3".into()));
    }

    #[test]
    fn invalid_points_are_skipped() {
        let grid = Grid::parse("a=4;d=1,2;k=1..4;bound=60").unwrap();
        let r = super::super::run_sweep(&ArithmeticSweep::from_grid(&grid).unwrap(), &Default::default()).unwrap();
        // d=2 shares a factor with 4; k=4 exceeds a-1.
        assert_eq!(r.points.len(), 3);
        assert_eq!(r.skipped.len(), 5);
        assert_eq!(r.support_ratio, 1.0);
    }
}
