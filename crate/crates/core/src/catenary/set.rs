use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::betti::betti_elements_with;
use super::catenary_of;
use super::scan::DegreeScanner;
use super::ElementDegrees;
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::factorization::{enumerate_with, EnumerationLimits, FactorizationSet};
use crate::monoid::NumericalMonoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    ObservedLowerBound,
}

impl Exactness {
    /// The weaker of two flags.
    pub fn weakest(self, other: Exactness) -> Exactness {
        self.max(other)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    BettiScan,
    BoundedScan,
    MaxFormula,
    DirectChain,
}

/// A monoid-level invariant with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub value: u64,
    pub exactness: Exactness,
    pub method: Method,
    pub scan_bound: Option<u64>,
    /// The scan bound is not known to be sufficient.
    pub heuristic: bool,
}

impl InvariantReport {
    pub fn exact(value: u64, method: Method) -> Self {
        InvariantReport {
            value,
            exactness: Exactness::Exact,
            method,
            scan_bound: None,
            heuristic: false,
        }
    }

    pub fn observed(value: u64, scan_bound: u64) -> Self {
        InvariantReport {
            value,
            exactness: Exactness::ObservedLowerBound,
            method: Method::BoundedScan,
            scan_bound: Some(scan_bound),
            heuristic: false,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }
}

fn require_dimension(monoid: &NumericalMonoid) -> Result<usize> {
    let k = monoid.embedding_dimension();
    if k < 2 {
        return Err(Error::EmbeddingDimensionTooSmall(k));
    }
    Ok(k)
}

/// ℱ(M) + 2·n_k·k.
pub fn default_scan_bound(monoid: &NumericalMonoid) -> u64 {
    let k = monoid.embedding_dimension() as u64;
    let base = monoid.largest_generator().saturating_mul(2).saturating_mul(k);
    base.saturating_add_signed(monoid.frobenius())
}

/// Maximum of `f` over Z(m) for every element m ≤ `bound`, with the least
/// element attaining it.
pub fn scan_max<F>(monoid: &NumericalMonoid, bound: u64, f: F) -> Result<(u64, u64)>
where
    F: Fn(&FactorizationSet) -> u64 + Sync,
{
    let limits = EnumerationLimits::from_env();
    let values: Vec<(u64, u64)> = (0..=bound)
        .into_par_iter()
        .filter(|&m| monoid.contains(m as i64))
        .map(|m| Ok((f(&enumerate_with(monoid, m, limits)?), m)))
        .collect::<Result<_>>()?;
    Ok(values
        .into_iter()
        .fold((0, 0), |best, (v, m)| if v > best.0 { (v, m) } else { best }))
}

/// Maximum of one element degree over every element m ≤ `bound`, with the
/// least element attaining it. Uses the incremental [`DegreeScanner`].
pub fn scan_degree_max(
    monoid: &NumericalMonoid,
    bound: u64,
    pick: impl Fn(&ElementDegrees) -> u64,
) -> Result<(u64, u64)> {
    let mut best = (0, 0);
    for row in DegreeScanner::new(monoid, bound) {
        let (m, d) = row?;
        let v = pick(&d);
        if v > best.0 {
            best = (v, m);
        }
    }
    Ok(best)
}

/// c(M) as the maximum of c(m) over the Betti elements.
pub fn monoid_catenary(monoid: &NumericalMonoid) -> Result<InvariantReport> {
    require_dimension(monoid)?;
    let limits = EnumerationLimits::from_env();
    let scan = betti_elements_with(monoid, limits)?;
    let mut value = 0;
    for &b in &scan.elements {
        value = value.max(catenary_of(&enumerate_with(monoid, b, limits)?));
    }
    Ok(InvariantReport {
        value,
        exactness: Exactness::Exact,
        method: Method::BettiScan,
        scan_bound: Some(scan.bound),
        heuristic: scan.heuristic,
    })
}

/// (n₃ − n₁)/gcd(n₃ − n₁, n₂ − n₁) for three generators.
pub(crate) fn dim3_equivalent_value(gens: &[u64]) -> u64 {
    let (a, b) = (gens[2] - gens[0], gens[1] - gens[0]);
    a / gcd(a, b)
}

/// c_eq(M): closed form in embedding dimension 2 and 3, a bounded scan above.
pub fn monoid_equivalent(monoid: &NumericalMonoid, scan_bound: Option<u64>) -> Result<InvariantReport> {
    match require_dimension(monoid)? {
        // Two generators: length and element fix the factorization.
        2 => Ok(InvariantReport::exact(0, Method::ClosedForm)),
        3 => Ok(InvariantReport::exact(
            dim3_equivalent_value(monoid.generators()),
            Method::ClosedForm,
        )),
        _ => {
            let bound = scan_bound.unwrap_or_else(|| default_scan_bound(monoid));
            let (value, _) = scan_degree_max(monoid, bound, |d| d.equivalent)?;
            Ok(InvariantReport::observed(value, bound))
        }
    }
}

/// c_adj(M) observed over elements up to the scan bound.
pub fn monoid_adjacent(monoid: &NumericalMonoid, scan_bound: Option<u64>) -> Result<InvariantReport> {
    require_dimension(monoid)?;
    let bound = scan_bound.unwrap_or_else(|| default_scan_bound(monoid));
    let (value, _) = scan_degree_max(monoid, bound, |d| d.adjacent)?;
    Ok(InvariantReport::observed(value, bound))
}

/// c_mon(M) = max(c_eq(M), c_adj(M)), as exact as the weaker input.
pub fn monoid_monotone(monoid: &NumericalMonoid, scan_bound: Option<u64>) -> Result<InvariantReport> {
    let eq = monoid_equivalent(monoid, scan_bound)?;
    let adj = monoid_adjacent(monoid, scan_bound)?;
    Ok(InvariantReport {
        value: eq.value.max(adj.value),
        exactness: eq.exactness.weakest(adj.exactness),
        method: Method::MaxFormula,
        scan_bound: adj.scan_bound.or(eq.scan_bound),
        heuristic: eq.heuristic || adj.heuristic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monoid(g: &[u64]) -> NumericalMonoid {
        NumericalMonoid::new(g).unwrap()
    }

    #[test]
    fn four_nine_eighteen() {
        // 18 = 9 + 9 is kept as an atom.
        let m = NumericalMonoid::with_generators(&[4, 9, 18]).unwrap();
        assert_eq!(monoid_catenary(&m).unwrap().value, 9);
        let eq = monoid_equivalent(&m, None).unwrap();
        assert_eq!((eq.value, eq.exactness), (14, Exactness::Exact));
        let mon = monoid_monotone(&m, None).unwrap();
        assert_eq!(mon.value, 14);
        assert_eq!(mon.exactness, Exactness::ObservedLowerBound);
    }

    #[test]
    fn four_nine_nineteen() {
        let m = monoid(&[4, 9, 19]);
        assert_eq!(monoid_catenary(&m).unwrap().value, 7);
        assert_eq!(monoid_equivalent(&m, None).unwrap().value, 3);
        assert_eq!(monoid_adjacent(&m, None).unwrap().value, 7);
        assert_eq!(monoid_monotone(&m, None).unwrap().value, 7);
    }

    #[test]
    fn closed_form_agrees_with_scan() {
        for gens in [[3u64, 7, 8], [4, 9, 19], [5, 6, 19], [5, 7, 9]] {
            let m = monoid(&gens);
            let closed = monoid_equivalent(&m, None).unwrap().value;
            let (scanned, _) = scan_max(&m, default_scan_bound(&m) + 9 * closed, crate::catenary::equivalent_of).unwrap();
            assert_eq!(closed, scanned, "{gens:?}");
        }
        assert_eq!(monoid_equivalent(&monoid(&[3, 7, 8]), None).unwrap().value, 5);
    }

    #[test]
    fn arithmetic_example() {
        let m = monoid(&[11, 15, 19, 23, 27]);
        let c = monoid_catenary(&m).unwrap();
        assert_eq!(c.value, 7);
        assert!(c.heuristic);
        let eq = monoid_equivalent(&m, None).unwrap();
        assert_eq!(eq.value, 2);
        assert_eq!(eq.method, Method::BoundedScan);
    }

    #[test]
    fn two_generators() {
        let m = monoid(&[2, 3]);
        assert_eq!(monoid_catenary(&m).unwrap().value, 3);
        assert_eq!(monoid_equivalent(&m, None).unwrap().value, 0);
        assert_eq!(monoid_adjacent(&m, None).unwrap().value, 3);
        assert!(matches!(
            monoid_catenary(&monoid(&[1])),
            Err(Error::EmbeddingDimensionTooSmall(1))
        ));
    }

    #[test]
    fn weakest_exactness() {
        assert_eq!(
            Exactness::Exact.weakest(Exactness::ObservedLowerBound),
            Exactness::ObservedLowerBound
        );
        assert_eq!(Exactness::Exact.weakest(Exactness::Exact), Exactness::Exact);
    }
}
