use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::graph::UnionFind;
use crate::error::{Error, Result};
use crate::factorization::{enumerate_with, EnumerationLimits, FactorizationSet};
use crate::monoid::{least_per_residue, NumericalMonoid};

/// True when the graph on Z(m) joining factorizations with overlapping
/// support is disconnected.
pub fn support_disconnected(fs: &FactorizationSet) -> bool {
    let zs = fs.factorizations();
    if zs.len() < 2 {
        return false;
    }
    let k = zs[0].dimension();
    // Nodes 0..k are generators, k.. are factorizations; a factorization is
    // joined to every generator in its support.
    let mut uf = UnionFind::new(k + zs.len());
    for (j, z) in zs.iter().enumerate() {
        for (i, &c) in z.coeffs().iter().enumerate() {
            if c > 0 {
                uf.union(i, k + j);
            }
        }
    }
    let root = uf.find(k);
    (1..zs.len()).any(|j| uf.find(k + j) != root)
}

pub fn is_betti(monoid: &NumericalMonoid, m: u64) -> Result<bool> {
    monoid.require_element(m)?;
    if m == 0 {
        return Err(Error::PreconditionFailed("Betti test needs m > 0".into()));
    }
    if !two_supports_possible(monoid, m) {
        return Ok(false);
    }
    let fs = enumerate_with(monoid, m, EnumerationLimits::from_env())?;
    Ok(support_disconnected(&fs))
}

// Two factorizations with disjoint support need m − n_i ∈ M for at least two i.
fn two_supports_possible(monoid: &NumericalMonoid, m: u64) -> bool {
    monoid
        .generators()
        .iter()
        .filter(|&&g| g <= m && monoid.contains((m - g) as i64))
        .nth(1)
        .is_some()
}

/// Result of scanning for Betti elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiScan {
    pub elements: Vec<u64>,
    /// Largest element examined.
    pub bound: u64,
    /// c_i = least c ≥ 1 with c·n_i in the monoid generated by the others.
    pub coefficients: Vec<u64>,
    /// Set when the bound is not known to capture every Betti element.
    pub heuristic: bool,
}

fn scan_coefficients(gens: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(gens.len());
    for (i, &g) in gens.iter().enumerate() {
        let others: Vec<u64> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &h)| h)
            .collect();
        let cap = others[0];
        let table = least_per_residue(&others)?;
        let mut found = None;
        for c in 1..=cap {
            let target = c.checked_mul(g).ok_or(Error::Overflow("Betti coefficient"))?;
            if table[(target % cap) as usize].is_some_and(|w| target >= w) {
                found = Some(c);
                break;
            }
        }
        out.push(found.expect("c = min(others) always works"));
    }
    Ok(out)
}

pub fn betti_elements(monoid: &NumericalMonoid) -> Result<BettiScan> {
    betti_elements_with(monoid, EnumerationLimits::from_env())
}

pub fn betti_elements_with(monoid: &NumericalMonoid, limits: EnumerationLimits) -> Result<BettiScan> {
    let k = monoid.embedding_dimension();
    if k < 2 {
        return Err(Error::EmbeddingDimensionTooSmall(k));
    }
    let gens = monoid.generators();
    let coefficients = scan_coefficients(gens)?;
    let bound = coefficients
        .iter()
        .zip(gens)
        .map(|(&c, &g)| c * g)
        .max()
        .expect("non-empty");
    let hits: Vec<Option<u64>> = (monoid.multiplicity()..=bound)
        .into_par_iter()
        .map(|m| -> Result<Option<u64>> {
            if !monoid.contains(m as i64) || !two_supports_possible(monoid, m) {
                return Ok(None);
            }
            let fs = enumerate_with(monoid, m, limits)?;
            Ok(support_disconnected(&fs).then_some(m))
        })
        .collect::<Result<_>>()?;
    Ok(BettiScan {
        elements: hits.into_iter().flatten().collect(),
        bound,
        coefficients,
        heuristic: k > 3,
    })
}
