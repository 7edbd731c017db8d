//! Numerical monoids: construction, minimal generators, membership, Apéry set
//! and Frobenius number.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::RwLock;

use crate::arith::gcd_all;
use crate::error::{Error, Result};

/// Largest modulus for which residue tables are built.
const MAX_RESIDUE_TABLE: u64 = 1 << 26;

/// Largest element the membership DP table is allowed to grow to.
const MAX_DP_ELEMENT: u64 = 1 << 30;

/// For every residue class modulo `gens[0]`, the least value representable as a
/// non-negative combination of `gens` (or `None` when the class is
/// unreachable, which happens when the gcd of `gens` exceeds one).
///
/// Dijkstra over residues; edges add one generator.
pub(crate) fn least_per_residue(gens: &[u64]) -> Result<Vec<Option<u64>>> {
    let modulus = gens[0];
    if modulus > MAX_RESIDUE_TABLE {
        return Err(Error::Guard(format!(
            "smallest generator {modulus} exceeds residue table limit {MAX_RESIDUE_TABLE}"
        )));
    }
    let n = modulus as usize;
    let mut best: Vec<Option<u64>> = vec![None; n];
    best[0] = Some(0);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((value, residue))) = heap.pop() {
        if best[residue] != Some(value) {
            continue;
        }
        for &g in &gens[1..] {
            let next = value
                .checked_add(g)
                .ok_or(Error::Overflow("building residue table"))?;
            let r = (next % modulus) as usize;
            if best[r].is_none_or(|b| next < b) {
                best[r] = Some(next);
                heap.push(Reverse((next, r)));
            }
        }
    }
    Ok(best)
}

/// True when `target` is a non-negative combination of `gens` (which need not
/// be coprime). `gens` must be sorted ascending and non-empty.
pub(crate) fn representable(gens: &[u64], target: u64) -> Result<bool> {
    let table = least_per_residue(gens)?;
    Ok(table[(target % gens[0]) as usize].is_some_and(|w| target >= w))
}

/// A numerical monoid given by its minimal generating set.
pub struct NumericalMonoid {
    generators: Vec<u64>,
    minimal: Vec<u64>,
    original: Vec<u64>,
    apery: Vec<u64>,
    frobenius: i64,
    prefix_tables: Vec<Vec<Option<u64>>>,
    membership: RwLock<Vec<bool>>,
}

impl NumericalMonoid {
    /// Builds the monoid generated by `raw`, reducing the list to the minimal
    /// generating set (sorted ascending). The input list is kept and exposed
    /// through [`NumericalMonoid::reduced_from`] when reduction changed it.
    pub fn new(raw: &[u64]) -> Result<Self> {
        Self::build(raw, true)
    }

    /// Builds the monoid but keeps every listed generator as an atom, even
    /// when some are sums of others. Factorizations are then taken over the
    /// full list. [`NumericalMonoid::minimal_generators`] still reports the
    /// minimal set.
    pub fn with_generators(raw: &[u64]) -> Result<Self> {
        Self::build(raw, false)
    }

    fn build(raw: &[u64], reduce: bool) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if raw.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let g = gcd_all(raw);
        if g != 1 {
            return Err(Error::NonCoprime { gcd: g });
        }

        let mut sorted = raw.to_vec();
        sorted.sort_unstable();
        sorted.dedup();

        // A generator can only be a sum of strictly smaller ones.
        let mut minimal: Vec<u64> = Vec::with_capacity(sorted.len());
        for &candidate in &sorted {
            if minimal.is_empty() || !representable(&minimal, candidate)? {
                minimal.push(candidate);
            }
        }
        let generators = if reduce { minimal.clone() } else { sorted };

        let apery: Vec<u64> = least_per_residue(&generators)?
            .into_iter()
            .map(|w| w.expect("coprime generators reach every residue"))
            .collect();
        let max_apery = *apery.iter().max().expect("apery set is non-empty");
        let frobenius = i64::try_from(max_apery)
            .map_err(|_| Error::Overflow("computing the Frobenius number"))?
            - generators[0] as i64;

        let prefix_tables = (1..=generators.len())
            .map(|i| least_per_residue(&generators[..i]))
            .collect::<Result<Vec<_>>>()?;

        Ok(NumericalMonoid {
            generators,
            minimal,
            original: raw.to_vec(),
            apery,
            frobenius,
            prefix_tables,
            membership: RwLock::new(vec![true]),
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn largest_generator(&self) -> u64 {
        *self.generators.last().expect("non-empty")
    }

    /// The caller-supplied list, if it differed from the minimal generating set.
    pub fn reduced_from(&self) -> Option<&[u64]> {
        let mut sorted = self.original.clone();
        sorted.sort_unstable();
        if sorted == self.minimal {
            None
        } else {
            Some(&self.original)
        }
    }

    /// The unique minimal generating set.
    pub fn minimal_generators(&self) -> &[u64] {
        &self.minimal
    }

    /// False when some atom is a sum of the others.
    pub fn is_minimal(&self) -> bool {
        self.generators == self.minimal
    }

    /// Least element in each residue class modulo the smallest generator.
    pub fn apery_set(&self) -> &[u64] {
        &self.apery
    }

    /// Largest integer outside the monoid; −1 for the whole of ℕ.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// Membership through the Apéry set: `m` is in the monoid iff it is at
    /// least the Apéry element of its residue class.
    pub fn contains(&self, m: i64) -> bool {
        if m < 0 {
            return false;
        }
        let m = m as u64;
        m >= self.apery[(m % self.generators[0]) as usize]
    }

    /// Membership by dynamic programming over `[0, m]`. The table is shared
    /// across calls and grown on demand.
    pub fn contains_dp(&self, m: i64) -> Result<bool> {
        if m < 0 {
            return Ok(false);
        }
        let m = m as u64;
        if m > MAX_DP_ELEMENT {
            return Err(Error::Guard(format!(
                "membership table limited to {MAX_DP_ELEMENT}, asked for {m}"
            )));
        }
        let idx = m as usize;
        {
            let table = self.membership.read().expect("membership lock poisoned");
            if idx < table.len() {
                return Ok(table[idx]);
            }
        }
        let mut table = self.membership.write().expect("membership lock poisoned");
        let start = table.len();
        table.reserve(idx + 1 - start);
        for x in start..=idx {
            let reachable = self
                .generators
                .iter()
                .any(|&g| (g as usize) <= x && table[x - g as usize]);
            table.push(reachable);
        }
        Ok(table[idx])
    }

    /// True when `value` is a combination of the first `count` generators.
    pub(crate) fn prefix_contains(&self, count: usize, value: u64) -> bool {
        let table = &self.prefix_tables[count - 1];
        table[(value % self.generators[0]) as usize].is_some_and(|w| value >= w)
    }

    /// `element` as a signed value, for APIs that allow negative queries.
    pub(crate) fn signed(element: u64) -> Result<i64> {
        i64::try_from(element).map_err(|_| Error::Overflow("converting element to i64"))
    }

    /// Errors unless `m` is an element.
    pub fn require_element(&self, m: u64) -> Result<()> {
        let s = Self::signed(m)?;
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::NotInMonoid { element: s })
        }
    }
}

impl Clone for NumericalMonoid {
    fn clone(&self) -> Self {
        let table = self.membership.read().expect("membership lock poisoned").clone();
        NumericalMonoid {
            generators: self.generators.clone(),
            minimal: self.minimal.clone(),
            original: self.original.clone(),
            apery: self.apery.clone(),
            frobenius: self.frobenius,
            prefix_tables: self.prefix_tables.clone(),
            membership: RwLock::new(table),
        }
    }
}

impl PartialEq for NumericalMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for NumericalMonoid {}

impl fmt::Debug for NumericalMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumericalMonoid")
            .field("generators", &self.generators)
            .field("frobenius", &self.frobenius)
            .finish()
    }
}

impl fmt::Display for NumericalMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}
