//! Graph routines over factorization sets: bottleneck connectivity,
//! directed reachability and breadth-first chains.

use std::collections::VecDeque;

use crate::factorization::{raw_distance, Factorization};

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    components: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
            components: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        self.components -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }
}

/// Smallest N such that the graph on `nodes` with edges {d ≤ N} is connected:
/// the largest edge Kruskal adds. Zero for fewer than two nodes.
pub(crate) fn bottleneck(nodes: &[&Factorization]) -> u64 {
    let n = nodes.len();
    if n < 2 {
        return 0;
    }
    let mut edges: Vec<(u64, u32, u32)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((raw_distance(nodes[i], nodes[j]), i as u32, j as u32));
        }
    }
    edges.sort_unstable();
    let mut uf = UnionFind::new(n);
    for (d, i, j) in edges {
        if uf.union(i as usize, j as usize) && uf.components() == 1 {
            return d;
        }
    }
    unreachable!("complete graph is connected")
}

/// Dense bitset used for reachability closures.
#[derive(Clone)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub(crate) fn is_superset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| b & !a == 0)
    }
}

/// Strongly connected components of a directed graph given by an adjacency
/// predicate on `0..n`. Returns the component id of each node; ids are
/// assigned in reverse topological order (a component only reaches
/// components with smaller ids).
pub(crate) fn strongly_connected(n: usize, edge: impl Fn(usize, usize) -> bool) -> (Vec<usize>, usize) {
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNVISITED; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut next_comp = 0usize;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        // Iterative Tarjan: frames hold (node, next neighbour to try).
        let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, start)) = frames.last() {
            let mut cursor = start;
            let mut child = None;
            while cursor < n {
                let w = cursor;
                cursor += 1;
                if w == v || !edge(v, w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    child = Some(w);
                    break;
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            }
            frames.last_mut().expect("frame present").1 = cursor;
            if let Some(w) = child {
                index[w] = next_index;
                low[w] = next_index;
                next_index += 1;
                stack.push(w);
                on_stack[w] = true;
                frames.push((w, 0));
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    (comp, next_comp)
}

/// For each node, the set of nodes reachable from it (itself included).
pub(crate) fn reachability(n: usize, edge: impl Fn(usize, usize) -> bool + Copy) -> Vec<BitSet> {
    let (comp, count) = strongly_connected(n, edge);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, &c) in comp.iter().enumerate() {
        members[c].push(v);
    }
    let mut reach: Vec<BitSet> = Vec::with_capacity(count);
    let mut mark = vec![usize::MAX; count];
    // Components with smaller ids are finished before larger ones need them.
    for c in 0..count {
        let mut set = BitSet::new(n);
        for &v in &members[c] {
            set.insert(v);
        }
        for &v in &members[c] {
            for w in 0..n {
                let cw = comp[w];
                if cw != c && mark[cw] != c && edge(v, w) {
                    mark[cw] = c;
                    debug_assert!(cw < c);
                    set.union_with(&reach[cw]);
                }
            }
        }
        reach.push(set);
    }
    comp.iter().map(|&c| reach[c].clone()).collect()
}

/// Shortest path (by hop count) from `from` to `to` under `edge`, ties broken
/// toward lower indices.
pub(crate) fn bfs_path(
    n: usize,
    from: usize,
    to: usize,
    edge: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    parent[from] = from;
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in 0..n {
            if parent[w] == usize::MAX && edge(v, w) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}
