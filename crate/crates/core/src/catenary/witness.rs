use serde::{Deserialize, Serialize};

use super::graph::{bfs_path, UnionFind};
use crate::factorization::{raw_distance, Factorization, FactorizationSet};

/// Which chains are admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainKind {
    /// Any N-chain.
    Any,
    /// Every step keeps the length.
    EqualLength,
    /// Lengths weakly monotone along the chain.
    Monotone,
}

/// An explicit chain of factorizations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainWitness {
    pub steps: Vec<Factorization>,
    pub bottleneck: u64,
    pub monotone: bool,
    pub equal_length: bool,
}

impl ChainWitness {
    pub fn from_steps(steps: Vec<Factorization>) -> Self {
        let bottleneck = steps
            .windows(2)
            .map(|w| raw_distance(&w[0], &w[1]))
            .max()
            .unwrap_or(0);
        let lens: Vec<u64> = steps.iter().map(Factorization::len).collect();
        let up = lens.windows(2).all(|w| w[0] <= w[1]);
        let down = lens.windows(2).all(|w| w[0] >= w[1]);
        let equal_length = lens.windows(2).all(|w| w[0] == w[1]);
        ChainWitness {
            steps,
            bottleneck,
            monotone: up || down,
            equal_length,
        }
    }
}

/// A chain from `from` to `to` (indices into `fs`) whose steps are all at
/// distance at most `bound` and admissible for `kind`; `None` if none exists.
pub fn chain_witness(
    fs: &FactorizationSet,
    from: usize,
    to: usize,
    bound: u64,
    kind: ChainKind,
) -> Option<ChainWitness> {
    let zs = fs.factorizations();
    let (lf, lt) = (zs[from].len(), zs[to].len());
    if kind == ChainKind::EqualLength && lf != lt {
        return None;
    }
    let edge = |u: usize, v: usize| {
        let (lu, lv) = (zs[u].len(), zs[v].len());
        let allowed = match kind {
            ChainKind::Any => true,
            ChainKind::EqualLength => lu == lv,
            ChainKind::Monotone if lf <= lt => lu <= lv,
            ChainKind::Monotone => lu >= lv,
        };
        allowed && raw_distance(&zs[u], &zs[v]) <= bound
    };
    let path = bfs_path(zs.len(), from, to, edge)?;
    Some(ChainWitness::from_steps(
        path.into_iter().map(|i| zs[i].clone()).collect(),
    ))
}

/// Which pairs a certificate must connect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairPolicy {
    /// A spanning family: the first factorization (or the first of each
    /// length class, for equal-length chains) to every other one.
    Spanning,
    /// Every unordered pair that the chain kind requires to be connected.
    All,
}

/// Evidence that `value` is the degree for `kind`: chains with bottleneck at
/// most `value`, plus a pair that no chain connects below `value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub value: u64,
    pub witnesses: Vec<ChainWitness>,
    /// Indices of a pair with no admissible chain at `value − 1`.
    pub cut: Option<(usize, usize)>,
}

fn required_pairs(fs: &FactorizationSet, kind: ChainKind, policy: PairPolicy) -> Vec<(usize, usize)> {
    let n = fs.len();
    match (kind, policy) {
        (ChainKind::EqualLength, PairPolicy::Spanning) => fs
            .length_classes()
            .values()
            .flat_map(|idx| idx[1..].iter().map(move |&j| (idx[0], j)))
            .collect(),
        (ChainKind::EqualLength, PairPolicy::All) => fs
            .length_classes()
            .values()
            .flat_map(|idx| {
                idx.iter()
                    .enumerate()
                    .flat_map(move |(a, &i)| idx[a + 1..].iter().map(move |&j| (i, j)))
            })
            .collect(),
        (_, PairPolicy::Spanning) => (1..n).map(|j| (0, j)).collect(),
        (_, PairPolicy::All) => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect(),
    }
}

fn connected_at(fs: &FactorizationSet, kind: ChainKind, bound: u64) -> Option<(usize, usize)> {
    let zs = fs.factorizations();
    match kind {
        ChainKind::Any | ChainKind::EqualLength => {
            let mut uf = UnionFind::new(zs.len());
            for i in 0..zs.len() {
                for j in i + 1..zs.len() {
                    let same = zs[i].len() == zs[j].len();
                    if (kind == ChainKind::Any || same) && raw_distance(&zs[i], &zs[j]) <= bound {
                        uf.union(i, j);
                    }
                }
            }
            required_pairs(fs, kind, PairPolicy::All)
                .into_iter()
                .find(|&(i, j)| uf.find(i) != uf.find(j))
        }
        ChainKind::Monotone => required_pairs(fs, kind, PairPolicy::All)
            .into_iter()
            .find(|&(i, j)| chain_witness(fs, i, j, bound, kind).is_none()),
    }
}

/// Builds a certificate for `value`, or `None` if `value` is not the degree:
/// either some required pair has no chain at `value`, or every pair already
/// has one at `value − 1`.
pub fn certify(
    fs: &FactorizationSet,
    kind: ChainKind,
    value: u64,
    policy: PairPolicy,
) -> Option<Certificate> {
    let mut witnesses = Vec::new();
    for (i, j) in required_pairs(fs, kind, policy) {
        witnesses.push(chain_witness(fs, i, j, value, kind)?);
    }
    if policy == PairPolicy::Spanning && kind == ChainKind::Monotone {
        connected_at(fs, kind, value).map_or(Some(()), |_| None)?;
    }
    let cut = if value == 0 {
        None
    } else {
        Some(connected_at(fs, kind, value - 1)?)
    };
    Some(Certificate {
        value,
        witnesses,
        cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catenary::{catenary_of, equivalent_of, monotone_of};
    use crate::factorization::enumerate;
    use crate::monoid::NumericalMonoid;

    #[test]
    fn witness_flags() {
        let w = ChainWitness::from_steps(vec![
            Factorization::from_coeffs(vec![5, 0, 0]),
            Factorization::from_coeffs(vec![0, 1, 2]),
        ]);
        assert_eq!(w.bottleneck, 5);
        assert!(w.monotone);
        assert!(!w.equal_length);
    }

    #[test]
    fn certificates_for_105() {
        let m = NumericalMonoid::new(&[4, 9, 19]).unwrap();
        let fs = enumerate(&m, 105).unwrap();
        for (kind, value) in [
            (ChainKind::Any, catenary_of(&fs)),
            (ChainKind::EqualLength, equivalent_of(&fs)),
            (ChainKind::Monotone, monotone_of(&fs)),
        ] {
            let cert = certify(&fs, kind, value, PairPolicy::All).expect("certifies");
            for w in &cert.witnesses {
                assert!(w.bottleneck <= value);
                match kind {
                    ChainKind::EqualLength => assert!(w.equal_length),
                    ChainKind::Monotone => assert!(w.monotone),
                    ChainKind::Any => {}
                }
            }
            assert!(cert.cut.is_some());
            assert!(certify(&fs, kind, value + 1, PairPolicy::All).is_none());
            assert!(certify(&fs, kind, value - 1, PairPolicy::All).is_none());
        }
    }

    #[test]
    fn zero_value_has_no_cut() {
        let m = NumericalMonoid::new(&[4, 9, 19]).unwrap();
        let fs = enumerate(&m, 9).unwrap();
        let cert = certify(&fs, ChainKind::Any, 0, PairPolicy::Spanning).unwrap();
        assert!(cert.witnesses.is_empty());
        assert_eq!(cert.cut, None);
    }
}
