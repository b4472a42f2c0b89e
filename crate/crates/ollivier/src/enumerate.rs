//! Exhaustive enumeration of small graphs up to isomorphism.
//!
//! Graphs on up to 8 vertices are generated level by level: every graph on
//! `n` vertices arises from some graph on `n - 1` vertices by attaching a new
//! vertex with an arbitrary neighbour set, so augmenting every representative
//! with every mask and deduplicating by canonical form is exhaustive. The
//! canonical form is the lexicographically least upper-triangle encoding over
//! vertex orders consistent with a degree-based invariant; restricting to
//! invariant-consistent orders keeps the form well defined while pruning most
//! of the search.

use crate::graph::Graph;

/// Adjacency-mask graph on at most 8 vertices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SmallGraph {
    n: u8,
    rows: [u8; 8],
}

impl SmallGraph {
    pub fn empty(n: usize) -> SmallGraph {
        assert!(n >= 1 && n <= 8);
        SmallGraph {
            n: n as u8,
            rows: [0; 8],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] & (1 << j) != 0
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i != j && i < self.vertex_count() && j < self.vertex_count());
        self.rows[i] |= 1 << j;
        self.rows[j] |= 1 << i;
    }

    pub fn edge_count(&self) -> usize {
        self.rows[..self.vertex_count()]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// New graph with one extra vertex adjacent to the mask's bits.
    fn extend(&self, mask: u8) -> SmallGraph {
        let n = self.vertex_count();
        let mut g = *self;
        g.n += 1;
        g.rows[n] = mask;
        for i in 0..n {
            if mask & (1 << i) != 0 {
                g.rows[i] |= 1 << n;
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen: u8 = 1;
        let mut frontier: u8 = 1;
        while frontier != 0 {
            let mut next: u8 = 0;
            for i in 0..n {
                if frontier & (1 << i) != 0 {
                    next |= self.rows[i];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        (seen.count_ones() as usize) == n
    }

    /// Position of the upper-triangle bit for the pair `i < j`.
    fn bit_pos(i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        j * (j - 1) / 2 + i
    }

    fn from_key(n: usize, key: u64) -> SmallGraph {
        let mut g = SmallGraph::empty(n);
        for j in 1..n {
            for i in 0..j {
                if key & (1 << Self::bit_pos(i, j)) != 0 {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Canonical upper-triangle key, identical for isomorphic graphs.
    pub fn canonical_key(&self) -> u64 {
        let n = self.vertex_count();
        if n <= 1 {
            return 0;
        }
        // invariant: degree plus sorted neighbour degrees
        let degree: Vec<u8> = (0..n).map(|i| self.rows[i].count_ones() as u8).collect();
        let invariant: Vec<(u8, Vec<u8>)> = (0..n)
            .map(|i| {
                let mut nd: Vec<u8> = (0..n)
                    .filter(|&j| self.has_edge(i, j))
                    .map(|j| degree[j])
                    .collect();
                nd.sort_unstable();
                (degree[i], nd)
            })
            .collect();
        let mut target = invariant.clone();
        target.sort();
        target.reverse();

        struct Dfs<'a> {
            g: &'a SmallGraph,
            n: usize,
            invariant: &'a [(u8, Vec<u8>)],
            target: &'a [(u8, Vec<u8>)],
            placed: Vec<usize>,
            used: [bool; 8],
            partial: Vec<u8>,
            best: Option<Vec<u8>>,
        }

        impl Dfs<'_> {
            fn rec(&mut self) {
                let p = self.placed.len();
                if p == self.n {
                    let better = self
                        .best
                        .as_ref()
                        .map_or(true, |b| self.partial < *b);
                    if better {
                        self.best = Some(self.partial.clone());
                    }
                    return;
                }
                for v in 0..self.n {
                    if self.used[v] || self.invariant[v] != self.target[p] {
                        continue;
                    }
                    let mut bits = 0u8;
                    for (q, &w) in self.placed.iter().enumerate() {
                        if self.g.has_edge(v, w) {
                            bits |= 1 << q;
                        }
                    }
                    self.partial.push(bits);
                    let prune = match &self.best {
                        Some(b) => self.partial.as_slice() > &b[..self.partial.len()],
                        None => false,
                    };
                    if !prune {
                        self.used[v] = true;
                        self.placed.push(v);
                        self.rec();
                        self.placed.pop();
                        self.used[v] = false;
                    }
                    self.partial.pop();
                }
            }
        }

        let mut dfs = Dfs {
            g: self,
            n,
            invariant: &invariant,
            target: &target,
            placed: Vec::with_capacity(n),
            used: [false; 8],
            partial: Vec::with_capacity(n),
            best: None,
        };
        dfs.rec();
        let best = dfs.best.expect("every graph admits a placement");

        let mut key = 0u64;
        for (j, bits) in best.iter().enumerate() {
            for i in 0..j {
                if bits & (1 << i) != 0 {
                    key |= 1 << Self::bit_pos(i, j);
                }
            }
        }
        key
    }

    /// Expands to a labelled [`Graph`] with labels `v0..`.
    pub fn to_graph(&self) -> Graph {
        let n = self.vertex_count();
        let mut pairs = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    pairs.push((format!("v{i}"), format!("v{j}")));
                }
            }
        }
        if pairs.is_empty() {
            // edgeless graphs need their vertices materialised another way;
            // only the single-vertex case matters for the corpora
            return Graph::from_edge_labels(Vec::<(String, String)>::new()).unwrap();
        }
        Graph::from_edge_labels(pairs).unwrap()
    }
}

/// All graphs with 1..=`max_n` vertices up to isomorphism, in a fixed order.
pub fn all_graphs_upto(max_n: usize) -> Vec<SmallGraph> {
    assert!(max_n >= 1 && max_n <= 8, "mask representation caps at 8");
    let mut out = vec![SmallGraph::empty(1)];
    let mut level = vec![SmallGraph::empty(1)];
    for n in 2..=max_n {
        let mut keys = std::collections::BTreeSet::new();
        for g in &level {
            for mask in 0..(1u16 << (n - 1)) {
                keys.insert(g.extend(mask as u8).canonical_key());
            }
        }
        level = keys
            .into_iter()
            .map(|k| SmallGraph::from_key(n, k))
            .collect();
        out.extend(level.iter().copied());
    }
    out
}

/// All connected graphs with 1..=`max_n` vertices up to isomorphism.
pub fn connected_graphs_upto(max_n: usize) -> Vec<SmallGraph> {
    all_graphs_upto(max_n)
        .into_iter()
        .filter(SmallGraph::is_connected)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_the_known_sequences() {
        // numbers of graphs and of connected graphs up to isomorphism
        // (OEIS A000088 / A001349)
        let all = [1usize, 2, 4, 11, 34, 156, 1044];
        let connected = [1usize, 1, 2, 6, 21, 112, 853];
        let graphs = all_graphs_upto(7);
        for n in 1..=7 {
            let total = graphs.iter().filter(|g| g.vertex_count() == n).count();
            assert_eq!(total, all[n - 1], "graph count at n = {n}");
            let conn = graphs
                .iter()
                .filter(|g| g.vertex_count() == n && g.is_connected())
                .count();
            assert_eq!(conn, connected[n - 1], "connected count at n = {n}");
        }
    }

    #[test]
    fn canonical_key_is_isomorphism_invariant() {
        // the 4-cycle under two different labellings
        let mut a = SmallGraph::empty(4);
        a.add_edge(0, 1);
        a.add_edge(1, 2);
        a.add_edge(2, 3);
        a.add_edge(3, 0);
        let mut b = SmallGraph::empty(4);
        b.add_edge(0, 2);
        b.add_edge(2, 1);
        b.add_edge(1, 3);
        b.add_edge(3, 0);
        assert_eq!(a.canonical_key(), b.canonical_key());

        // ... and distinguishes the path
        let mut p = SmallGraph::empty(4);
        p.add_edge(0, 1);
        p.add_edge(1, 2);
        p.add_edge(2, 3);
        assert_ne!(a.canonical_key(), p.canonical_key());
    }

    #[test]
    fn expansion_preserves_structure() {
        let mut g = SmallGraph::empty(5);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
        }
        let graph = g.to_graph();
        assert_eq!(graph.vertex_count(), 5);
        assert_eq!(graph.edge_count(), 5);
        assert!(graph.girth_at_least(5));
    }
}
