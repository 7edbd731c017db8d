//! Factorization sets Z(m), lengths, delta sets and the factorization metric.

use std::collections::BTreeMap;
use std::env;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::NumericalMonoid;

/// Default cap on |Z(m)| before enumeration gives up.
pub const DEFAULT_MAX_FACTORIZATIONS: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_FACTORIZATIONS`].
pub const MAX_FACTORIZATIONS_ENV: &str = "MONOID_MAX_FACTORIZATIONS";

/// Limits applied while enumerating factorizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationLimits {
    pub max_factorizations: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_factorizations: DEFAULT_MAX_FACTORIZATIONS,
        }
    }
}

impl EnumerationLimits {
    pub fn with_cap(max_factorizations: usize) -> Self {
        EnumerationLimits { max_factorizations }
    }

    /// Default limits, overridden by `MONOID_MAX_FACTORIZATIONS` when it
    /// holds a positive integer.
    pub fn from_env() -> Self {
        env::var(MAX_FACTORIZATIONS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&cap| cap > 0)
            .map(Self::with_cap)
            .unwrap_or_default()
    }
}

/// A coefficient vector over the generators (ascending order) together with
/// its length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factorization {
    coeffs: Vec<u64>,
    length: u64,
}

impl Factorization {
    /// Checks that `coeffs` has one entry per generator and factors `element`.
    pub fn new(monoid: &NumericalMonoid, coeffs: Vec<u64>, element: u64) -> Result<Self> {
        let k = monoid.embedding_dimension();
        if coeffs.len() != k {
            return Err(Error::DimensionMismatch {
                left: coeffs.len(),
                right: k,
            });
        }
        let value = dot(&coeffs, monoid.generators())?;
        if value != element {
            return Err(Error::InvalidFactorization(format!(
                "{coeffs:?} factors {value}, not {element}"
            )));
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// A factorization of whatever element `coeffs` evaluates to.
    pub fn of_coeffs(monoid: &NumericalMonoid, coeffs: Vec<u64>) -> Result<Self> {
        let element = dot(&coeffs, monoid.generators())?;
        Self::new(monoid, coeffs, element)
    }

    pub(crate) fn from_coeffs(coeffs: Vec<u64>) -> Self {
        let length = coeffs.iter().sum();
        Factorization { coeffs, length }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn len(&self) -> u64 {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn dimension(&self) -> usize {
        self.coeffs.len()
    }

    /// The element this factorization evaluates to.
    pub fn element(&self, monoid: &NumericalMonoid) -> Result<u64> {
        dot(&self.coeffs, monoid.generators())
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }
}

pub(crate) fn dot(coeffs: &[u64], gens: &[u64]) -> Result<u64> {
    coeffs.iter().zip(gens).try_fold(0u64, |acc, (&c, &g)| {
        c.checked_mul(g)
            .and_then(|t| acc.checked_add(t))
            .ok_or(Error::Overflow("evaluating a factorization"))
    })
}

fn check_dims(z: &Factorization, w: &Factorization) -> Result<()> {
    if z.dimension() != w.dimension() {
        return Err(Error::DimensionMismatch {
            left: z.dimension(),
            right: w.dimension(),
        });
    }
    Ok(())
}

/// Componentwise minimum of two factorizations. It factors a divisor of the
/// element, so it is returned as a plain vector.
pub fn gcd(z: &Factorization, w: &Factorization) -> Result<Vec<u64>> {
    check_dims(z, w)?;
    Ok(z.coeffs.iter().zip(&w.coeffs).map(|(&a, &b)| a.min(b)).collect())
}

/// d(z, w) = max(|z|, |w|) − |gcd(z, w)|.
pub fn distance(z: &Factorization, w: &Factorization) -> Result<u64> {
    check_dims(z, w)?;
    Ok(raw_distance(z, w))
}

#[inline]
pub(crate) fn raw_distance(z: &Factorization, w: &Factorization) -> u64 {
    let common: u64 = z
        .coeffs
        .iter()
        .zip(&w.coeffs)
        .map(|(&a, &b)| a.min(b))
        .sum();
    z.length.max(w.length) - common
}

/// Z(m) in canonical order (coefficient vectors lexicographically descending)
/// with its length classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationSet {
    element: u64,
    factorizations: Vec<Factorization>,
    by_length: BTreeMap<u64, Vec<usize>>,
}

impl FactorizationSet {
    pub(crate) fn from_factorizations(element: u64, mut factorizations: Vec<Factorization>) -> Self {
        factorizations.sort_unstable_by(|a, b| b.coeffs.cmp(&a.coeffs));
        factorizations.dedup();
        let mut by_length: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, z) in factorizations.iter().enumerate() {
            by_length.entry(z.len()).or_default().push(i);
        }
        FactorizationSet {
            element,
            factorizations,
            by_length,
        }
    }

    pub fn element(&self) -> u64 {
        self.element
    }

    pub fn factorizations(&self) -> &[Factorization] {
        &self.factorizations
    }

    pub fn len(&self) -> usize {
        self.factorizations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factorizations.is_empty()
    }

    pub fn get(&self, i: usize) -> &Factorization {
        &self.factorizations[i]
    }

    /// Indices of factorizations grouped by length, ascending.
    pub fn length_classes(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.by_length
    }

    /// Z_a(m): the factorizations of length `a`.
    pub fn class(&self, length: u64) -> Vec<&Factorization> {
        self.by_length
            .get(&length)
            .map(|idx| idx.iter().map(|&i| &self.factorizations[i]).collect())
            .unwrap_or_default()
    }

    pub fn position(&self, z: &Factorization) -> Option<usize> {
        self.factorizations
            .binary_search_by(|probe| z.coeffs.cmp(&probe.coeffs))
            .ok()
    }

    pub fn profile(&self) -> Result<LengthProfile> {
        LengthProfile::from_lengths(self.by_length.keys().copied().collect())
    }
}

/// ℒ(m), l(m), L(m) and Δ(m).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthProfile {
    pub lengths: Vec<u64>,
    pub min_length: u64,
    pub max_length: u64,
    pub delta: Vec<u64>,
}

impl LengthProfile {
    /// `lengths` must be sorted ascending without duplicates.
    pub fn from_lengths(lengths: Vec<u64>) -> Result<Self> {
        let (&min_length, &max_length) = match (lengths.first(), lengths.last()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::EmptySet),
        };
        let mut delta: Vec<u64> = lengths.windows(2).map(|w| w[1] - w[0]).collect();
        delta.sort_unstable();
        delta.dedup();
        Ok(LengthProfile {
            lengths,
            min_length,
            max_length,
            delta,
        })
    }
}

/// Enumerates Z(`element`) with the default cap.
pub fn enumerate(monoid: &NumericalMonoid, element: u64) -> Result<FactorizationSet> {
    enumerate_with(monoid, element, EnumerationLimits::default())
}

/// Enumerates Z(`element`). The descent assigns the coefficient of the
/// largest remaining generator from ⌊remaining/n⌋ down to 0, pruning any
/// branch whose remainder is not a combination of the smaller generators.
pub fn enumerate_with(
    monoid: &NumericalMonoid,
    element: u64,
    limits: EnumerationLimits,
) -> Result<FactorizationSet> {
    let gens = monoid.generators();
    let k = gens.len();
    let mut out: Vec<Factorization> = Vec::new();
    if !monoid.prefix_contains(k, element) {
        return Ok(FactorizationSet::from_factorizations(element, out));
    }
    let mut coeffs = vec![0u64; k];
    descend(monoid, k - 1, element, &mut coeffs, &mut out, limits, element)?;
    Ok(FactorizationSet::from_factorizations(element, out))
}

fn descend(
    monoid: &NumericalMonoid,
    index: usize,
    remaining: u64,
    coeffs: &mut Vec<u64>,
    out: &mut Vec<Factorization>,
    limits: EnumerationLimits,
    element: u64,
) -> Result<()> {
    let g = monoid.generators()[index];
    if index == 0 {
        debug_assert_eq!(remaining % g, 0);
        coeffs[0] = remaining / g;
        if out.len() >= limits.max_factorizations {
            return Err(Error::ExplosionGuard {
                element,
                cap: limits.max_factorizations,
            });
        }
        out.push(Factorization::from_coeffs(coeffs.clone()));
        return Ok(());
    }
    for c in (0..=remaining / g).rev() {
        let rest = remaining - c * g;
        if monoid.prefix_contains(index, rest) {
            coeffs[index] = c;
            descend(monoid, index - 1, rest, coeffs, out, limits, element)?;
        }
    }
    coeffs[index] = 0;
    Ok(())
}
