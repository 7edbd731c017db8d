//! Element degrees for every m ≤ bound in one ascending pass.
//!
//! Two factorizations of m sharing generator i stay at the same distance after
//! removing one copy of n_i, so their minimax distance in Z(m) is bounded by
//! the one in Z(m − n_i). The pass keeps, for each recent element, a spanning
//! tree of the minimax metric on Z(m) (and one per length class), lifts the
//! trees of m − n_i into Z(m), and adds the support-disjoint pairs that could
//! still lower the bottleneck. Cross-class minimum distances follow the same
//! recursion: δ_m(a, b) = min(b, min_i δ_{m−n_i}(a−1, b−1)).

use super::graph::UnionFind;
use super::ElementDegrees;
use crate::error::Result;
use crate::factorization::{enumerate_with, EnumerationLimits, Factorization, FactorizationSet};
use crate::monoid::NumericalMonoid;

type Edge = (u64, u32, u32);

#[derive(Default)]
struct Level {
    count: usize,
    lengths: Vec<u64>,
    tree: Vec<Edge>,
    class_tree: Vec<Edge>,
    /// δ for length index pairs p < q, row-major upper triangle.
    cross: Vec<u64>,
}

impl Level {
    fn cross_index(&self, p: usize, q: usize) -> usize {
        let n = self.lengths.len();
        p * n - p * (p + 1) / 2 + (q - p - 1)
    }

    fn cross_at(&self, a: u64, b: u64) -> Option<u64> {
        let p = self.lengths.binary_search(&a).ok()?;
        let q = self.lengths.binary_search(&b).ok()?;
        Some(self.cross[self.cross_index(p, q)])
    }
}

/// Minimum spanning forest of `edges`. Weights are small, so edges are
/// bucketed by weight instead of sorted; ties keep input order.
fn kruskal(n: usize, edges: Vec<Edge>) -> Vec<Edge> {
    let top = edges.iter().map(|e| e.0).max().unwrap_or(0) as usize;
    let mut order: Vec<Edge> = if top <= 4 * edges.len() + 64 {
        let mut start = vec![0usize; top + 2];
        for e in &edges {
            start[e.0 as usize + 1] += 1;
        }
        for w in 1..start.len() {
            start[w] += start[w - 1];
        }
        let mut out = vec![(0, 0, 0); edges.len()];
        for e in edges {
            let slot = &mut start[e.0 as usize];
            out[*slot] = e;
            *slot += 1;
        }
        out
    } else {
        let mut edges = edges;
        edges.sort_by_key(|e| e.0);
        edges
    };
    let mut uf = UnionFind::new(n);
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for e in order.drain(..) {
        if uf.union(e.1 as usize, e.2 as usize) {
            out.push(e);
            if out.len() + 1 == n {
                break;
            }
        }
    }
    out
}

fn disjoint(z: &Factorization, w: &Factorization) -> bool {
    z.coeffs().iter().zip(w.coeffs()).all(|(&a, &b)| a == 0 || b == 0)
}

/// Streams [`ElementDegrees`] for m = 0, 1, …, bound (non-elements skipped).
pub struct DegreeScanner<'a> {
    monoid: &'a NumericalMonoid,
    limits: EnumerationLimits,
    window: Vec<Level>,
    next: u64,
    bound: u64,
}

impl<'a> DegreeScanner<'a> {
    pub fn new(monoid: &'a NumericalMonoid, bound: u64) -> Self {
        Self::with_limits(monoid, bound, EnumerationLimits::from_env())
    }

    pub fn with_limits(monoid: &'a NumericalMonoid, bound: u64, limits: EnumerationLimits) -> Self {
        let size = monoid.largest_generator() as usize + 1;
        DegreeScanner {
            monoid,
            limits,
            window: (0..size).map(|_| Level::default()).collect(),
            next: 0,
            bound,
        }
    }

    fn slot(&self, e: u64) -> usize {
        (e % self.window.len() as u64) as usize
    }

    fn step(&mut self, e: u64) -> Result<Option<(FactorizationSet, ElementDegrees)>> {
        let slot = self.slot(e);
        if !self.monoid.contains(e as i64) {
            self.window[slot] = Level::default();
            return Ok(None);
        }
        let fs = enumerate_with(self.monoid, e, self.limits)?;
        let zs = fs.factorizations();
        let n = zs.len();
        let gens = self.monoid.generators();
        let lengths: Vec<u64> = fs.length_classes().keys().copied().collect();

        let mut lifted: Vec<Edge> = Vec::new();
        let mut lifted_class: Vec<Edge> = Vec::new();
        let mut below: Vec<Option<&Level>> = Vec::with_capacity(gens.len());
        for (i, &g) in gens.iter().enumerate() {
            if g > e {
                below.push(None);
                continue;
            }
            let prev = &self.window[self.slot(e - g)];
            let lift: Vec<u32> = (0..n)
                .filter(|&j| zs[j].coeffs()[i] > 0)
                .map(|j| j as u32)
                .collect();
            debug_assert_eq!(lift.len(), prev.count);
            lifted.extend(prev.tree.iter().map(|&(w, a, b)| (w, lift[a as usize], lift[b as usize])));
            lifted_class.extend(
                prev.class_tree
                    .iter()
                    .map(|&(w, a, b)| (w, lift[a as usize], lift[b as usize])),
            );
            below.push(Some(prev));
        }

        // Whole set.
        let mut tree = kruskal(n, lifted);
        let cap = if tree.len() + 1 == n {
            tree.iter().map(|e| e.0).max().unwrap_or(0)
        } else {
            u64::MAX
        };
        let short: Vec<usize> = (0..n).filter(|&j| zs[j].len() < cap).collect();
        let mut direct = Vec::new();
        for (x, &i) in short.iter().enumerate() {
            for &j in &short[x + 1..] {
                if disjoint(&zs[i], &zs[j]) {
                    direct.push((zs[i].len().max(zs[j].len()), i as u32, j as u32));
                }
            }
        }
        if !direct.is_empty() {
            direct.extend(tree);
            tree = kruskal(n, direct);
        }
        let catenary = tree.iter().map(|e| e.0).max().unwrap_or(0);

        // Length classes.
        let mut class_tree = kruskal(n, lifted_class);
        let mut class_edges = vec![0usize; lengths.len()];
        let mut class_cap = vec![0u64; lengths.len()];
        for &(w, a, _) in &class_tree {
            let p = lengths.binary_search(&zs[a as usize].len()).expect("length present");
            class_edges[p] += 1;
            class_cap[p] = class_cap[p].max(w);
        }
        let mut direct = Vec::new();
        for (p, idx) in fs.length_classes().values().enumerate() {
            let connected = class_edges[p] + 1 == idx.len();
            if connected && lengths[p] >= class_cap[p] {
                continue;
            }
            for (x, &i) in idx.iter().enumerate() {
                for &j in &idx[x + 1..] {
                    if disjoint(&zs[i], &zs[j]) {
                        direct.push((lengths[p], i as u32, j as u32));
                    }
                }
            }
        }
        if !direct.is_empty() {
            direct.extend(class_tree);
            class_tree = kruskal(n, direct);
        }
        let equivalent = class_tree.iter().map(|e| e.0).max().unwrap_or(0);

        // Cross-class minimum distances.
        let mut level = Level {
            count: n,
            lengths,
            tree,
            class_tree,
            cross: Vec::new(),
        };
        let l = level.lengths.len();
        level.cross = vec![u64::MAX; l * l.saturating_sub(1) / 2];
        for p in 0..l {
            for q in p + 1..l {
                let (a, b) = (level.lengths[p], level.lengths[q]);
                let mut best = b;
                if a > 0 {
                    for prev in below.iter().flatten() {
                        if let Some(d) = prev.cross_at(a - 1, b - 1) {
                            best = best.min(d);
                        }
                    }
                }
                let idx = level.cross_index(p, q);
                level.cross[idx] = best;
            }
        }
        let adjacent = (0..l.saturating_sub(1))
            .map(|p| level.cross[level.cross_index(p, p + 1)])
            .max()
            .unwrap_or(0);

        self.window[slot] = level;
        let degrees = ElementDegrees {
            catenary,
            equivalent,
            adjacent,
            monotone: equivalent.max(adjacent),
        };
        Ok(Some((fs, degrees)))
    }

    /// Like `next`, but also hands back Z(m).
    pub fn next_with_set(&mut self) -> Option<Result<(FactorizationSet, ElementDegrees)>> {
        while self.next <= self.bound {
            let e = self.next;
            self.next += 1;
            match self.step(e) {
                Ok(Some(row)) => return Some(Ok(row)),
                Ok(None) => {}
                Err(err) => {
                    self.next = self.bound.saturating_add(1);
                    return Some(Err(err));
                }
            }
        }
        None
    }
}

impl Iterator for DegreeScanner<'_> {
    type Item = Result<(u64, ElementDegrees)>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_with_set()
            .map(|row| row.map(|(fs, d)| (fs.element(), d)))
    }
}

/// Degrees of every element m ≤ `bound`.
pub fn scan_degrees(monoid: &NumericalMonoid, bound: u64) -> Result<Vec<(u64, ElementDegrees)>> {
    DegreeScanner::new(monoid, bound).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::enumerate;

    fn check(gens: &[u64], bound: u64) {
        let m = NumericalMonoid::new(gens).unwrap();
        for row in DegreeScanner::new(&m, bound) {
            let (e, fast) = row.unwrap();
            let slow = ElementDegrees::of(&enumerate(&m, e).unwrap());
            assert_eq!(fast, slow, "{gens:?} m={e}");
        }
    }

    #[test]
    fn agrees_with_definitions() {
        check(&[5, 7, 9], 200);
        check(&[4, 9, 19], 200);
        check(&[5, 6, 19], 150);
        check(&[11, 15, 19, 23, 27], 180);
        check(&[6, 10, 15], 150);
        check(&[2, 3], 60);
        check(&[1], 10);
        check(&[7, 8, 11, 13], 120);
    }

    #[test]
    fn kept_generators() {
        let m = NumericalMonoid::with_generators(&[4, 9, 18]).unwrap();
        for row in DegreeScanner::new(&m, 150) {
            let (e, fast) = row.unwrap();
            assert_eq!(fast, ElementDegrees::of(&enumerate(&m, e).unwrap()), "m={e}");
        }
    }
}
