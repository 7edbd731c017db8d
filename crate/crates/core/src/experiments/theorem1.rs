use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{gens_text, parse_gens, Cell, Counterexample, Grid, PointResult, Sweep, SweepReport};
use crate::catenary::{adjacent_of, catenary_of, equivalent_of, monotone_direct_of};
use crate::error::{Error, Result};
use crate::factorization::{enumerate_with, EnumerationLimits};
use crate::monoid::NumericalMonoid;

/// Seeded random monoids with minimal generators drawn from [gmin, gmax].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomMonoids {
    pub seed: u64,
    pub count: usize,
    /// Embedding dimensions, used round-robin.
    pub dims: Vec<usize>,
    /// Smallest allowed generator; `None` picks a default per dimension.
    pub gmin: Option<u64>,
    pub gmax: u64,
}

impl RandomMonoids {
    /// Default smallest generator. With three or four generators below 5,
    /// |Z(m)| at m ≈ 400 runs to thousands and the quadratic direct chain
    /// search dominates the sweep (minutes instead of seconds).
    pub fn default_gmin(k: usize) -> u64 {
        if k <= 2 {
            2
        } else {
            5
        }
    }
}

/// Deterministic list of generator sets.
pub fn random_monoids(plan: &RandomMonoids) -> Result<Vec<Vec<u64>>> {
    if plan.dims.is_empty() {
        return Err(Error::Grid("no embedding dimensions given".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut out = Vec::with_capacity(plan.count);
    for i in 0..plan.count {
        let k = plan.dims[i % plan.dims.len()];
        let lo = plan.gmin.unwrap_or_else(|| RandomMonoids::default_gmin(k)).max(1);
        if k == 0 || plan.gmax < lo || ((plan.gmax - lo + 1) as usize) < k {
            return Err(Error::Grid(format!(
                "cannot draw {k} generators from [{lo}, {}]",
                plan.gmax
            )));
        }
        let span = (plan.gmax - lo + 1) as usize;
        let mut found = None;
        for _ in 0..100_000 {
            let mut gens: Vec<u64> = sample(&mut rng, span, k).into_iter().map(|x| lo + x as u64).collect();
            gens.sort_unstable();
            if let Ok(m) = NumericalMonoid::new(&gens) {
                if m.embedding_dimension() == k {
                    found = Some(gens);
                    break;
                }
            }
        }
        out.push(found.ok_or_else(|| {
            Error::Grid(format!("no minimal coprime {k}-generator set in [{lo}, {}]", plan.gmax))
        })?);
    }
    Ok(out)
}

/// Compares the direct monotone chain search with max(c_eq, c_adj) at every
/// element up to the bound, for a list of monoids.
#[derive(Debug, Clone)]
pub struct Theorem1Sweep {
    monoids: Vec<Vec<u64>>,
    bound: u64,
    grid: String,
}

impl Theorem1Sweep {
    /// Explicit generator lists, kept as given.
    pub fn explicit(monoids: Vec<Vec<u64>>, bound: u64) -> Result<Self> {
        for g in &monoids {
            NumericalMonoid::with_generators(g)?;
        }
        let grid = format!(
            "gens={};bound={bound}",
            monoids.iter().map(|g| gens_text(g)).collect::<Vec<_>>().join("|")
        );
        Ok(Theorem1Sweep { monoids, bound, grid })
    }

    /// Keys: seed, count, k, gmin, gmax, bound.
    pub fn from_grid(grid: &Grid) -> Result<Self> {
        grid.expect_keys(&["seed", "count", "k", "gmin", "gmax", "bound"])?;
        let dims = grid
            .values_or("k", &[2, 3, 4])
            .into_iter()
            .map(|k| usize::try_from(k).map_err(|_| Error::Grid("k must be positive".into())))
            .collect::<Result<Vec<_>>>()?;
        let gmin = match grid.get("gmin") {
            Some(_) => Some(grid.single_u64_or("gmin", 0)?),
            None => None,
        };
        let plan = RandomMonoids {
            seed: grid.single_u64_or("seed", 1)?,
            count: grid.single_u64_or("count", 50)? as usize,
            dims,
            gmin,
            gmax: grid.single_u64_or("gmax", 30)?,
        };
        let bound = grid.single_u64_or("bound", 400)?;
        let mut sweep = Self::explicit(random_monoids(&plan)?, bound)?;
        sweep.grid = grid.to_string();
        Ok(sweep)
    }

    pub fn monoids(&self) -> &[Vec<u64>] {
        &self.monoids
    }
}

impl Sweep for Theorem1Sweep {
    fn family(&self) -> String {
        "theorem1".into()
    }

    fn grid(&self) -> String {
        self.grid.clone()
    }

    fn param_names(&self) -> Vec<String> {
        vec!["generators".into()]
    }

    fn columns(&self) -> Vec<String> {
        ["bound", "elements", "max_catenary", "max_monotone", "mismatches"]
            .map(String::from)
            .to_vec()
    }

    fn points(&self) -> Result<Vec<Vec<Cell>>> {
        let mut pts: Vec<Vec<Cell>> = self.monoids.iter().map(|g| vec![Cell::Text(gens_text(g))]).collect();
        pts.dedup();
        Ok(pts)
    }

    fn evaluate(&self, params: &[Cell]) -> Result<PointResult> {
        let Some(Cell::Text(text)) = params.first() else {
            return Err(Error::Grid("theorem1 points carry a generator list".into()));
        };
        let monoid = NumericalMonoid::with_generators(&parse_gens(text)?)?;
        if self.bound < monoid.multiplicity() {
            return Err(Error::PreconditionFailed(format!(
                "bound {} is below the smallest generator {}",
                self.bound,
                monoid.multiplicity()
            )));
        }
        let limits = EnumerationLimits::from_env();
        let mut elements = 0u64;
        let (mut max_c, mut max_mon) = (0, 0);
        let mut counterexamples = Vec::new();
        for m in 0..=self.bound {
            if !monoid.contains(m as i64) {
                continue;
            }
            elements += 1;
            let fs = enumerate_with(&monoid, m, limits)?;
            let direct = monotone_direct_of(&fs);
            let formula = equivalent_of(&fs).max(adjacent_of(&fs));
            max_c = max_c.max(catenary_of(&fs));
            max_mon = max_mon.max(direct);
            if direct != formula {
                counterexamples.push(Counterexample::new(
                    params,
                    Some(m),
                    "monotone_direct = max(equivalent, adjacent)",
                    formula,
                    direct,
                ));
            }
        }
        Ok(PointResult {
            params: params.to_vec(),
            values: vec![
                self.bound.into(),
                elements.into(),
                max_c.into(),
                max_mon.into(),
                counterexamples.len().into(),
            ],
            exact: true,
            branch: None,
            counterexamples,
        })
    }
}

/// c_mon(M) = max(c_eq(M), c_adj(M)) check for a single monoid (generators kept as given).
pub fn verify_theorem1(monoid: &NumericalMonoid, bound: u64) -> Result<SweepReport> {
    if bound < monoid.multiplicity() {
        return Err(Error::PreconditionFailed(format!(
            "bound {bound} is below the smallest generator {}",
            monoid.multiplicity()
        )));
    }
    let sweep = Theorem1Sweep::explicit(vec![monoid.generators().to_vec()], bound)?;
    super::run_sweep(&sweep, &Default::default())
}
