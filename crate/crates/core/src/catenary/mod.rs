//! Catenary degree variants of single elements and of whole monoids.
//!
//! Element-level degrees are computed from an enumerated [`FactorizationSet`]:
//!
//! * `catenary`: least N connecting all of Z(m) by N-chains;
//! * `equivalent`: the same, with chains confined to one length class;
//! * `adjacent`: the largest minimal distance between consecutive length classes;
//! * `monotone`: least N connecting every pair by a chain whose lengths move in
//!   one direction. [`monotone`] uses max(equivalent, adjacent) and
//!   [`monotone_direct`] searches chains directly; the two must agree.
//!
//! Monoid-level values come with an [`InvariantReport`] recording whether the
//! number is exact or only the maximum seen in a bounded scan.

mod betti;
pub(crate) mod graph;
mod scan;
mod set;
mod witness;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::factorization::{enumerate_with, raw_distance, EnumerationLimits, FactorizationSet};
use crate::monoid::NumericalMonoid;

pub use betti::{betti_elements, betti_elements_with, is_betti, support_disconnected, BettiScan};
pub use set::{
    default_scan_bound, monoid_adjacent, monoid_catenary, monoid_equivalent, monoid_monotone,
    scan_degree_max, scan_max, Exactness, InvariantReport, Method,
};
pub use scan::{scan_degrees, DegreeScanner};
pub(crate) use set::dim3_equivalent_value;
pub use witness::{certify, chain_witness, Certificate, ChainKind, ChainWitness, PairPolicy};

use graph::{bottleneck, reachability, BitSet};

/// c(m) of an enumerated set.
pub fn catenary_of(fs: &FactorizationSet) -> u64 {
    let nodes: Vec<_> = fs.factorizations().iter().collect();
    bottleneck(&nodes)
}

/// c_eq(m): worst bottleneck over the length classes.
pub fn equivalent_of(fs: &FactorizationSet) -> u64 {
    fs.length_classes()
        .values()
        .map(|idx| {
            let nodes: Vec<_> = idx.iter().map(|&i| fs.get(i)).collect();
            bottleneck(&nodes)
        })
        .max()
        .unwrap_or(0)
}

/// The closest pair between two consecutive length classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacentStep {
    pub lower_length: u64,
    pub upper_length: u64,
    pub distance: u64,
    /// Indices into the factorization set; canonically least among ties.
    pub lower: usize,
    pub upper: usize,
}

/// Minimal cross-class distance for every pair of consecutive lengths.
pub fn adjacent_steps(fs: &FactorizationSet) -> Vec<AdjacentStep> {
    let classes: Vec<(&u64, &Vec<usize>)> = fs.length_classes().iter().collect();
    classes
        .windows(2)
        .map(|w| {
            let (&lo_len, lo) = w[0];
            let (&hi_len, hi) = w[1];
            let mut best: Option<(u64, usize, usize)> = None;
            for &i in lo {
                for &j in hi {
                    let d = raw_distance(fs.get(i), fs.get(j));
                    // Indices follow canonical order, so the first minimum seen
                    // in (i, j) order is the canonically least pair.
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
            let (distance, lower, upper) = best.expect("length classes are non-empty");
            AdjacentStep {
                lower_length: lo_len,
                upper_length: hi_len,
                distance,
                lower,
                upper,
            }
        })
        .collect()
}

/// c_adj(m).
pub fn adjacent_of(fs: &FactorizationSet) -> u64 {
    adjacent_steps(fs).iter().map(|s| s.distance).max().unwrap_or(0)
}

/// c_mon(m) as max(c_eq(m), c_adj(m)).
pub fn monotone_of(fs: &FactorizationSet) -> u64 {
    equivalent_of(fs).max(adjacent_of(fs))
}

/// True when every z can reach every z′ with |z| ≤ |z′| along steps u → v
/// with |u| ≤ |v| and d(u, v) ≤ `bound`.
pub(crate) fn monotone_feasible(fs: &FactorizationSet, bound: u64) -> bool {
    let zs = fs.factorizations();
    let n = zs.len();
    let edge = |u: usize, v: usize| zs[u].len() <= zs[v].len() && raw_distance(&zs[u], &zs[v]) <= bound;
    let reach = reachability(n, edge);
    // up[l] = nodes of length at least the l-th smallest length.
    let lengths: Vec<u64> = fs.length_classes().keys().copied().collect();
    let mut up: Vec<BitSet> = Vec::with_capacity(lengths.len());
    for &l in &lengths {
        let mut set = BitSet::new(n);
        for (i, z) in zs.iter().enumerate() {
            if z.len() >= l {
                set.insert(i);
            }
        }
        up.push(set);
    }
    zs.iter().enumerate().all(|(i, z)| {
        let li = lengths.binary_search(&z.len()).expect("length present");
        reach[i].is_superset(&up[li])
    })
}

/// c_mon(m) straight from the definition: the least candidate distance for
/// which monotone chains connect every pair, found by binary search over the
/// distinct pairwise distances.
pub fn monotone_direct_of(fs: &FactorizationSet) -> u64 {
    let zs = fs.factorizations();
    if zs.len() < 2 {
        return 0;
    }
    let mut candidates: Vec<u64> = Vec::new();
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            candidates.push(raw_distance(&zs[i], &zs[j]));
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    debug_assert!(monotone_feasible(fs, candidates[hi]));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if monotone_feasible(fs, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// All four degrees of one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDegrees {
    pub catenary: u64,
    pub equivalent: u64,
    pub adjacent: u64,
    pub monotone: u64,
}

impl ElementDegrees {
    pub fn of(fs: &FactorizationSet) -> Self {
        let equivalent = equivalent_of(fs);
        let adjacent = adjacent_of(fs);
        ElementDegrees {
            catenary: catenary_of(fs),
            equivalent,
            adjacent,
            monotone: equivalent.max(adjacent),
        }
    }
}

fn element_set(monoid: &NumericalMonoid, m: u64) -> Result<FactorizationSet> {
    monoid.require_element(m)?;
    enumerate_with(monoid, m, EnumerationLimits::from_env())
}

pub fn catenary(monoid: &NumericalMonoid, m: u64) -> Result<u64> {
    Ok(catenary_of(&element_set(monoid, m)?))
}

pub fn equivalent(monoid: &NumericalMonoid, m: u64) -> Result<u64> {
    Ok(equivalent_of(&element_set(monoid, m)?))
}

pub fn adjacent(monoid: &NumericalMonoid, m: u64) -> Result<u64> {
    Ok(adjacent_of(&element_set(monoid, m)?))
}

pub fn monotone(monoid: &NumericalMonoid, m: u64) -> Result<u64> {
    Ok(monotone_of(&element_set(monoid, m)?))
}

pub fn monotone_direct(monoid: &NumericalMonoid, m: u64) -> Result<u64> {
    Ok(monotone_direct_of(&element_set(monoid, m)?))
}

pub fn degrees(monoid: &NumericalMonoid, m: u64) -> Result<ElementDegrees> {
    Ok(ElementDegrees::of(&element_set(monoid, m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::factorization::enumerate;

    fn monoid(g: &[u64]) -> NumericalMonoid {
        NumericalMonoid::new(g).unwrap()
    }

    #[test]
    fn thirty_eight_in_5_6_19() {
        // Z(38) = {(4,3,0), (0,0,2)}: disjoint supports, lengths 7 and 2.
        let m = monoid(&[5, 6, 19]);
        let fs = enumerate(&m, 38).unwrap();
        assert_eq!(fs.len(), 2);
        let d = ElementDegrees::of(&fs);
        assert_eq!(d.catenary, 7);
        assert_eq!(d.adjacent, 7);
        assert_eq!(d.equivalent, 0);
        assert_eq!(d.monotone, 7);
        assert_eq!(monotone_direct_of(&fs), 7);
    }

    #[test]
    fn unique_factorization_gives_zero() {
        let m = monoid(&[4, 9, 19]);
        for e in [0, 4, 9, 13] {
            let d = degrees(&m, e).unwrap();
            assert_eq!(d, ElementDegrees { catenary: 0, equivalent: 0, adjacent: 0, monotone: 0 });
            assert_eq!(monotone_direct(&m, e).unwrap(), 0);
        }
    }

    #[test]
    fn one_hundred_five_in_4_9_19() {
        let m = monoid(&[4, 9, 19]);
        let fs = enumerate(&m, 105).unwrap();
        let d = ElementDegrees::of(&fs);
        // Same-length neighbours differ by (2,-3,1): distance 3.
        assert_eq!(d.equivalent, 3);
        assert_eq!(d.monotone, monotone_direct_of(&fs));
        assert!(d.catenary <= d.monotone);
    }

    #[test]
    fn not_in_monoid() {
        let m = monoid(&[4, 9, 19]);
        assert_eq!(catenary(&m, 15).unwrap_err(), Error::NotInMonoid { element: 15 });
        assert!(monotone_direct(&m, 1).is_err());
    }

    #[test]
    fn arithmetic_element_equivalent_is_two() {
        let m = monoid(&[11, 15, 19, 23, 27]);
        let fs = enumerate(&m, 111).unwrap();
        assert!(fs.length_classes().values().any(|c| c.len() > 1));
        assert_eq!(equivalent_of(&fs), 2);
        assert_eq!(monotone_direct_of(&fs), catenary_of(&fs));
    }

    #[test]
    fn adjacent_witness_is_canonically_least() {
        let m = monoid(&[4, 9, 19]);
        let fs = enumerate(&m, 105).unwrap();
        for step in adjacent_steps(&fs) {
            let lo = fs.class(step.lower_length);
            let hi = fs.class(step.upper_length);
            let min = lo
                .iter()
                .flat_map(|a| hi.iter().map(move |b| raw_distance(a, b)))
                .min()
                .unwrap();
            assert_eq!(step.distance, min);
            assert_eq!(raw_distance(fs.get(step.lower), fs.get(step.upper)), min);
            // No earlier pair in canonical order attains the minimum.
            for &i in &fs.length_classes()[&step.lower_length] {
                for &j in &fs.length_classes()[&step.upper_length] {
                    if (i, j) < (step.lower, step.upper) {
                        assert!(raw_distance(fs.get(i), fs.get(j)) > min);
                    }
                }
            }
        }
    }
}
