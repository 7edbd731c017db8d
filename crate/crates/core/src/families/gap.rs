use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dim3::{dim3_equivalent_closed, dim3_same_length_step};
use crate::catenary::{adjacent_of, monoid_catenary, Exactness, InvariantReport, Method};
use crate::error::{Error, Result};
use crate::factorization::{enumerate_with, raw_distance, EnumerationLimits, Factorization, FactorizationSet};
use crate::monoid::NumericalMonoid;

/// ⟨na, na+n, 2na+nx+1⟩.
#[derive(Debug, Clone)]
pub struct GapFamily {
    n: u64,
    a: u64,
    x: u64,
    monoid: NumericalMonoid,
}

impl GapFamily {
    pub fn new(n: u64, a: u64, x: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidFamily("gap: need n >= 1".into()));
        }
        if a < 2 {
            return Err(Error::InvalidFamily(format!("gap: need a >= 2, got a={a}")));
        }
        if x < 2 {
            return Err(Error::InvalidFamily(format!("gap: need x >= 2, got x={x}")));
        }
        let overflow = || Error::Overflow("gap family generators");
        let na = n.checked_mul(a).ok_or_else(overflow)?;
        let nx = n.checked_mul(x).ok_or_else(overflow)?;
        let third = na
            .checked_mul(2)
            .and_then(|v| v.checked_add(nx))
            .and_then(|v| v.checked_add(1))
            .ok_or_else(overflow)?;
        let gens = [na, na + n, third];
        let monoid = NumericalMonoid::new(&gens)?;
        if monoid.embedding_dimension() != 3 {
            return Err(Error::InvalidFamily(format!(
                "gap: generators {gens:?} are not minimal (reduce to {:?})",
                monoid.generators()
            )));
        }
        Ok(GapFamily { n, a, x, monoid })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn monoid(&self) -> &NumericalMonoid {
        &self.monoid
    }

    /// na + nx + 1.
    pub fn equivalent_closed(&self) -> u64 {
        self.n * (self.a + self.x) + 1
    }

    /// 3·(ℱ(M) + n₃).
    pub fn default_window(&self) -> u64 {
        self.monoid
            .largest_generator()
            .saturating_add_signed(self.monoid.frobenius())
            .saturating_mul(3)
    }
}

/// How often the predicted third factorization was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ThirdFactorizationCheck {
    /// Same-length pairs z, z + v examined, v the minimal same-length step.
    pub pairs: u64,
    /// Pairs with some z₂ of length |z| − n, d(z, z₂) = nx+1, d(z+v, z₂) = na+n.
    pub supported: u64,
    /// Least element with an unsupported pair.
    pub first_failure: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapChecks {
    pub equivalent_matches_dim3: bool,
    pub adjacent_below_equivalent: bool,
    pub monotone_above_catenary: bool,
}

impl GapChecks {
    pub fn all(&self) -> bool {
        self.equivalent_matches_dim3 && self.adjacent_below_equivalent && self.monotone_above_catenary
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapInvariants {
    pub n: u64,
    pub a: u64,
    pub x: u64,
    pub generators: Vec<u64>,
    pub frobenius: i64,
    pub equivalent: InvariantReport,
    pub equivalent_dim3: u64,
    pub adjacent: InvariantReport,
    /// Least element attaining the observed c_adj.
    pub adjacent_element: u64,
    pub monotone: InvariantReport,
    pub catenary: InvariantReport,
    pub third_factorization: ThirdFactorizationCheck,
    pub checks: GapChecks,
}

fn third_factorization_pairs(fs: &FactorizationSet, step: [i64; 3], n: u64, near: u64, far: u64) -> (u64, u64) {
    let zs = fs.factorizations();
    let mut pairs = 0;
    let mut supported = 0;
    for (&len, idx) in fs.length_classes() {
        if idx.len() < 2 {
            continue;
        }
        let shorter = if len >= n { fs.class(len - n) } else { Vec::new() };
        for &i in idx {
            let z = &zs[i];
            let shifted: Option<Vec<u64>> = z
                .coeffs()
                .iter()
                .zip(step)
                .map(|(&c, s)| u64::try_from(c as i64 + s).ok())
                .collect();
            let Some(shifted) = shifted else { continue };
            let z1 = Factorization::from_coeffs(shifted);
            if fs.position(&z1).is_none() {
                continue;
            }
            pairs += 1;
            if shorter
                .iter()
                .any(|z2| raw_distance(z, z2) == near && raw_distance(&z1, z2) == far)
            {
                supported += 1;
            }
        }
    }
    (pairs, supported)
}

/// Closed forms and scans for the gap family. `window` bounds the c_adj scan
/// (default 3·(ℱ(M) + n₃)).
pub fn gap_family_invariants(fam: &GapFamily, window: Option<u64>) -> Result<GapInvariants> {
    let monoid = &fam.monoid;
    let window = window.unwrap_or_else(|| fam.default_window());
    let closed = fam.equivalent_closed();
    let dim3 = dim3_equivalent_closed(monoid)?;
    let step = dim3_same_length_step(monoid)?;
    let (n, a, x) = (fam.n, fam.a, fam.x);
    let (near, far) = (n * x + 1, n * a + n);
    let limits = EnumerationLimits::from_env();

    let rows: Vec<(u64, u64, u64, u64)> = (0..=window)
        .into_par_iter()
        .filter(|&m| monoid.contains(m as i64))
        .map(|m| {
            let fs = enumerate_with(monoid, m, limits)?;
            let (pairs, supported) = third_factorization_pairs(&fs, step, n, near, far);
            Ok((m, adjacent_of(&fs), pairs, supported))
        })
        .collect::<Result<_>>()?;

    let mut adj = (0, 0);
    let mut third = ThirdFactorizationCheck::default();
    for &(m, v, pairs, supported) in &rows {
        if v > adj.0 {
            adj = (v, m);
        }
        third.pairs += pairs;
        third.supported += supported;
        if supported < pairs && third.first_failure.is_none() {
            third.first_failure = Some(m);
        }
    }

    let catenary = monoid_catenary(monoid)?;
    let checks = GapChecks {
        equivalent_matches_dim3: closed == dim3,
        adjacent_below_equivalent: adj.0 < closed,
        monotone_above_catenary: closed > catenary.value,
    };
    Ok(GapInvariants {
        n,
        a,
        x,
        generators: monoid.generators().to_vec(),
        frobenius: monoid.frobenius(),
        equivalent: InvariantReport::exact(closed, Method::ClosedForm),
        equivalent_dim3: dim3,
        adjacent: InvariantReport::observed(adj.0, window),
        adjacent_element: adj.1,
        monotone: InvariantReport::exact(closed, Method::ClosedForm),
        catenary,
        third_factorization: third,
        checks,
    })
}

/// ⟨a, a+1, ℱ⟨a,a+1⟩⟩ = ⟨a, a+1, a²−a−1⟩, the gap family with n = 1 and
/// x = a² − 3a − 2.
#[derive(Debug, Clone)]
pub struct FrobeniusFamily {
    a: u64,
    gap: GapFamily,
}

impl FrobeniusFamily {
    pub fn new(a: u64) -> Result<Self> {
        if a < 4 {
            return Err(Error::InvalidFamily(format!("frobenius: need a >= 4, got a={a}")));
        }
        let x = a
            .checked_mul(a)
            .and_then(|sq| sq.checked_sub(3 * a + 2))
            .ok_or(Error::Overflow("frobenius family parameter"))?;
        let gap = GapFamily::new(1, a, x)?;
        Ok(FrobeniusFamily { a, gap })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn as_gap(&self) -> &GapFamily {
        &self.gap
    }

    pub fn monoid(&self) -> &NumericalMonoid {
        &self.gap.monoid
    }

    /// True when the gap-family parameter x falls below 2.
    pub fn outside_hypothesis(&self) -> bool {
        self.gap.x < 2
    }

    pub fn expected_betti(&self) -> Vec<u64> {
        let a = self.a;
        let mut v = vec![a * a - 1, a * a, 2 * (a * a - a - 1)];
        v.sort_unstable();
        v
    }

    /// 2a − 3.
    pub fn expected_catenary(&self) -> u64 {
        2 * self.a - 3
    }

    /// a² − 2a − 1.
    pub fn expected_monotone(&self) -> u64 {
        self.a * self.a - 2 * self.a - 1
    }

    /// a² − 4a − 4.
    pub fn stated_gap(&self) -> i64 {
        let a = self.a as i64;
        a * a - 4 * a - 4
    }

    /// a² − 4a + 2, from c_mon − c with the two closed forms above.
    pub fn derived_gap(&self) -> i64 {
        let a = self.a as i64;
        a * a - 4 * a + 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusInvariants {
    pub a: u64,
    pub generators: Vec<u64>,
    pub betti: Vec<u64>,
    pub catenary: u64,
    pub equivalent: u64,
    pub adjacent: InvariantReport,
    pub monotone: InvariantReport,
    /// c_mon(M) − c(M) from the computed values.
    pub gap: i64,
    pub expected_betti: Vec<u64>,
    pub expected_catenary: u64,
    pub expected_monotone: u64,
    pub stated_gap: i64,
    pub derived_gap: i64,
    pub outside_hypothesis: bool,
}

impl FrobeniusInvariants {
    pub fn betti_matches(&self) -> bool {
        self.betti == self.expected_betti
    }

    pub fn catenary_matches(&self) -> bool {
        self.catenary == self.expected_catenary
    }

    pub fn monotone_matches(&self) -> bool {
        self.monotone.value == self.expected_monotone
    }
}

/// Computes Betti elements, c(M) and c_mon(M) for the Frobenius family and
/// sets them beside the closed-form predictions.
pub fn frobenius_family_invariants(fam: &FrobeniusFamily, window: Option<u64>) -> Result<FrobeniusInvariants> {
    let monoid = fam.monoid();
    let betti = crate::catenary::betti_elements(monoid)?;
    let gap = gap_family_invariants(&fam.gap, window)?;
    let catenary = gap.catenary;
    let equivalent = gap.equivalent_dim3;
    let exactness = if gap.adjacent.value < equivalent {
        Exactness::Exact
    } else {
        Exactness::ObservedLowerBound
    };
    let monotone = InvariantReport {
        value: equivalent.max(gap.adjacent.value),
        exactness,
        method: Method::MaxFormula,
        scan_bound: gap.adjacent.scan_bound,
        heuristic: false,
    };
    Ok(FrobeniusInvariants {
        a: fam.a,
        generators: monoid.generators().to_vec(),
        betti: betti.elements,
        catenary: catenary.value,
        equivalent,
        adjacent: gap.adjacent,
        monotone,
        gap: monotone.value as i64 - catenary.value as i64,
        expected_betti: fam.expected_betti(),
        expected_catenary: fam.expected_catenary(),
        expected_monotone: fam.expected_monotone(),
        stated_gap: fam.stated_gap(),
        derived_gap: fam.derived_gap(),
        outside_hypothesis: fam.outside_hypothesis(),
    })
}
