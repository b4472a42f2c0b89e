//! Immutable simple unweighted graphs over dense vertex ids.
//!
//! Construction symmetrises and deduplicates the input edge list and rejects
//! self-loops. Everything after construction is a pure read, so a `Graph` can
//! be shared freely between worker threads.

use crate::{Error, Result};
use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

/// Dense index of a vertex within its owning graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Hop distance bounded by an explicit cap.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Distance {
    Hops(u32),
    ExceedsCap,
}

impl Distance {
    pub fn hops(self) -> Option<u32> {
        match self {
            Distance::Hops(h) => Some(h),
            Distance::ExceedsCap => None,
        }
    }

    pub fn exceeds_cap(self) -> bool {
        matches!(self, Distance::ExceedsCap)
    }
}

/// Immutable simple graph with per-vertex sorted adjacency and external labels.
#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<VertexId>>,
    label_index: HashMap<String, VertexId>,
    edge_count: usize,
}

/// Bidirectional index map returned by [`Graph::induced_subgraph`].
#[derive(Clone, Debug)]
pub struct SubgraphMap {
    pub to_original: Vec<VertexId>,
    pub from_original: HashMap<VertexId, VertexId>,
}

impl Graph {
    /// Builds the simple graph of an edge list given as label pairs.
    ///
    /// Duplicate edges (in either orientation) are merged; label-to-id
    /// assignment follows first appearance order.
    pub fn from_edge_labels<I, S>(pairs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = Vec::new();
        let mut label_index: HashMap<String, VertexId> = HashMap::new();
        let mut edges: Vec<(VertexId, VertexId)> = Vec::new();

        let intern = |label: String,
                          labels: &mut Vec<String>,
                          label_index: &mut HashMap<String, VertexId>| {
            match label_index.entry(label) {
                Entry::Occupied(e) => *e.get(),
                Entry::Vacant(e) => {
                    let id = VertexId::new(labels.len());
                    labels.push(e.key().clone());
                    e.insert(id);
                    id
                }
            }
        };

        for (a, b) in pairs {
            let (a, b) = (a.into(), b.into());
            if a == b {
                return Err(Error::SelfLoop { label: a });
            }
            let ia = intern(a, &mut labels, &mut label_index);
            let ib = intern(b, &mut labels, &mut label_index);
            edges.push((ia, ib));
        }

        let mut adjacency = vec![Vec::new(); labels.len()];
        for &(a, b) in &edges {
            adjacency[a.index()].push(b);
            adjacency[b.index()].push(a);
        }
        let mut edge_count = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        debug_assert_eq!(edge_count % 2, 0);

        Ok(Graph {
            labels,
            adjacency,
            label_index,
            edge_count: edge_count / 2,
        })
    }

    /// Parses the canonical edge-list text format: one edge per line as two
    /// whitespace-separated tokens; `#`-lines and blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::EdgeListParse {
                        line: idx + 1,
                        message: format!("expected two tokens, got '{line}'"),
                    })
                }
            };
            if a == b {
                return Err(Error::EdgeListParse {
                    line: idx + 1,
                    message: format!("self-loop '{a} {b}'"),
                });
            }
            pairs.push((a.to_string(), b.to_string()));
        }
        Graph::from_edge_labels(pairs)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId::new)
    }

    /// Edges as ordered pairs with the smaller id first.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |a| {
            self.neighbors(a)
                .iter()
                .copied()
                .filter(move |&b| a < b)
                .map(move |b| (a, b))
        })
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v.index()]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adjacency[a.index()].binary_search(&b).is_ok()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.label_index.get(label).copied()
    }

    /// Exact BFS hop distance if at most `cap`, else `ExceedsCap`.
    /// Disconnected pairs report `ExceedsCap`.
    pub fn distance_capped(&self, a: VertexId, b: VertexId, cap: u32) -> Distance {
        if a == b {
            return Distance::Hops(0);
        }
        if cap == 0 {
            return Distance::ExceedsCap;
        }
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[a.index()] = 0;
        queue.push_back(a);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x.index()];
            if dx >= cap {
                continue;
            }
            for &y in self.neighbors(x) {
                if dist[y.index()] == u32::MAX {
                    dist[y.index()] = dx + 1;
                    if y == b {
                        return Distance::Hops(dx + 1);
                    }
                    queue.push_back(y);
                }
            }
        }
        Distance::ExceedsCap
    }

    /// BFS distances from `source`, reported only up to `cap` hops.
    pub fn distances_from_capped(&self, source: VertexId, cap: u32) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source.index()] = Some(0);
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x.index()].unwrap();
            if dx >= cap {
                continue;
            }
            for &y in self.neighbors(x) {
                if dist[y.index()].is_none() {
                    dist[y.index()] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// True iff the graph contains no cycle of length `< g`.
    ///
    /// Per-vertex BFS; a non-tree edge `(x, y)` seen from root `r` witnesses a
    /// cycle of length at most `dist(x) + dist(y) + 1`, and scanning every
    /// root makes the minimum of those witnesses exactly the girth.
    pub fn girth_at_least(&self, g: u32) -> bool {
        assert!(g >= 3, "girth thresholds start at 3");
        let n = self.vertex_count();
        let depth_limit = g / 2 + 1;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for root in self.vertices() {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            parent.iter_mut().for_each(|p| *p = u32::MAX);
            let mut queue = VecDeque::new();
            dist[root.index()] = 0;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                let dx = dist[x.index()];
                if dx >= depth_limit {
                    continue;
                }
                for &y in self.neighbors(x) {
                    if dist[y.index()] == u32::MAX {
                        dist[y.index()] = dx + 1;
                        parent[y.index()] = x.0;
                        queue.push_back(y);
                    } else if parent[x.index()] != y.0 && parent[y.index()] != x.0 {
                        let cycle = dx + dist[y.index()] + 1;
                        if cycle < g {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// True iff every connected component is 2-colourable.
    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        for root in self.vertices() {
            if color[root.index()] != u8::MAX {
                continue;
            }
            color[root.index()] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x.index()];
                for &y in self.neighbors(x) {
                    if color[y.index()] == u8::MAX {
                        color[y.index()] = 1 - cx;
                        queue.push_back(y);
                    } else if color[y.index()] == cx {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Subgraph induced by `subset`, with the bidirectional index map.
    /// Labels carry over from the parent graph.
    pub fn induced_subgraph(&self, subset: &[VertexId]) -> (Graph, SubgraphMap) {
        let mut to_original: Vec<VertexId> = subset.to_vec();
        to_original.sort_unstable();
        to_original.dedup();
        let from_original: HashMap<VertexId, VertexId> = to_original
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, VertexId::new(i)))
            .collect();

        let labels: Vec<String> = to_original
            .iter()
            .map(|&v| self.labels[v.index()].clone())
            .collect();
        let mut adjacency: Vec<Vec<VertexId>> = vec![Vec::new(); to_original.len()];
        let mut edge_count = 0;
        for (i, &v) in to_original.iter().enumerate() {
            for &w in self.neighbors(v) {
                if let Some(&j) = from_original.get(&w) {
                    adjacency[i].push(j);
                }
            }
            adjacency[i].sort_unstable();
            edge_count += adjacency[i].len();
        }
        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), VertexId::new(i)))
            .collect();

        (
            Graph {
                labels,
                adjacency,
                label_index,
                edge_count: edge_count / 2,
            },
            SubgraphMap {
                to_original,
                from_original,
            },
        )
    }

    /// Connected components as disjoint covering blocks, each sorted, blocks
    /// ordered by smallest contained vertex.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for root in self.vertices() {
            if seen[root.index()] {
                continue;
            }
            seen[root.index()] = true;
            let mut block = vec![root];
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in self.neighbors(x) {
                    if !seen[y.index()] {
                        seen[y.index()] = true;
                        block.push(y);
                        queue.push_back(y);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    /// Edge list in the canonical text format, sorted by label pair.
    pub fn to_edge_list_text(&self) -> String {
        let mut lines: Vec<String> = self
            .edges()
            .map(|(a, b)| {
                let (la, lb) = (self.label(a), self.label(b));
                if la <= lb {
                    format!("{la} {lb}")
                } else {
                    format!("{lb} {la}")
                }
            })
            .collect();
        lines.sort();
        let mut text = lines.join("\n");
        if !text.is_empty() {
            text.push('\n');
        }
        text
    }
}

/// Convenience constructor used throughout the tests.
pub fn graph_from_pairs(pairs: &[(&str, &str)]) -> Graph {
    Graph::from_edge_labels(pairs.iter().map(|&(a, b)| (a, b))).expect("valid edge list")
}

/// Cycle graph C_n with labels `c0..c{n-1}`.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3);
    let pairs: Vec<(String, String)> = (0..n)
        .map(|i| (format!("c{i}"), format!("c{}", (i + 1) % n)))
        .collect();
    Graph::from_edge_labels(pairs).expect("valid cycle")
}

/// Complete graph K_n with labels `k0..k{n-1}`.
pub fn complete_graph(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((format!("k{i}"), format!("k{j}")));
        }
    }
    Graph::from_edge_labels(pairs).expect("valid complete graph")
}

/// Path graph P_n (n vertices, n-1 edges) with labels `p0..p{n-1}`.
pub fn path_graph(n: usize) -> Graph {
    assert!(n >= 1);
    let pairs: Vec<(String, String)> = (0..n.saturating_sub(1))
        .map(|i| (format!("p{i}"), format!("p{}", i + 1)))
        .collect();
    if pairs.is_empty() {
        // single vertex needs explicit construction: empty edge list is the
        // empty graph, not K_1
        return Graph::from_edge_labels(Vec::<(String, String)>::new()).unwrap();
    }
    Graph::from_edge_labels(pairs).expect("valid path")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_dedups_and_symmetrises() {
        let g = graph_from_pairs(&[("a", "b"), ("b", "a"), ("a", "b")]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        let a = g.vertex_by_label("a").unwrap();
        let b = g.vertex_by_label("b").unwrap();
        assert!(g.has_edge(a, b) && g.has_edge(b, a));
    }

    #[test]
    fn build_path() {
        let g = graph_from_pairs(&[("a", "b"), ("b", "c")]);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn self_loop_rejected() {
        let err = Graph::from_edge_labels(vec![("a".to_string(), "a".to_string())]).unwrap_err();
        assert_eq!(
            err,
            Error::SelfLoop {
                label: "a".to_string()
            }
        );
    }

    #[test]
    fn empty_input_is_empty_graph() {
        let g = Graph::from_edge_labels(Vec::<(String, String)>::new()).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
        assert!(g.connected_components().is_empty());
    }

    #[test]
    fn parse_edge_list_format() {
        let g = Graph::parse_edge_list("# comment\n\na b\n  b   c  \n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);

        let err = Graph::parse_edge_list("a\n").unwrap_err();
        assert!(matches!(err, Error::EdgeListParse { line: 1, .. }));
        let err = Graph::parse_edge_list("a b\nc c\n").unwrap_err();
        assert!(matches!(err, Error::EdgeListParse { line: 2, .. }));
    }

    #[test]
    fn distance_on_cycle_and_cap() {
        let c5 = cycle_graph(5);
        let a = c5.vertex_by_label("c0").unwrap();
        let b = c5.vertex_by_label("c2").unwrap();
        assert_eq!(c5.distance_capped(a, b, 4), Distance::Hops(2));
        assert_eq!(c5.distance_capped(a, a, 4), Distance::Hops(0));

        let p4 = path_graph(4);
        let a = p4.vertex_by_label("p0").unwrap();
        let d = p4.vertex_by_label("p3").unwrap();
        assert_eq!(p4.distance_capped(a, d, 2), Distance::ExceedsCap);
        assert_eq!(p4.distance_capped(a, d, 3), Distance::Hops(3));
    }

    #[test]
    fn disconnected_pair_exceeds_cap() {
        let g = graph_from_pairs(&[("a", "b"), ("c", "d")]);
        let a = g.vertex_by_label("a").unwrap();
        let c = g.vertex_by_label("c").unwrap();
        assert_eq!(g.distance_capped(a, c, 10), Distance::ExceedsCap);
    }

    #[test]
    fn girth_thresholds() {
        let c5 = cycle_graph(5);
        assert!(c5.girth_at_least(5));
        assert!(!c5.girth_at_least(6));
        let k3 = complete_graph(3);
        assert!(!k3.girth_at_least(4));
        assert!(k3.girth_at_least(3));
        let p4 = path_graph(4);
        assert!(p4.girth_at_least(3));
        assert!(p4.girth_at_least(100));
        let c4 = cycle_graph(4);
        assert!(c4.girth_at_least(4));
        assert!(!c4.girth_at_least(5));
        let c6 = cycle_graph(6);
        assert!(c6.girth_at_least(6));
        assert!(!c6.girth_at_least(7));
    }

    #[test]
    fn bipartite_checks() {
        assert!(cycle_graph(4).is_bipartite());
        assert!(!complete_graph(3).is_bipartite());
        assert!(path_graph(5).is_bipartite());
        // disconnected: even cycle plus odd cycle
        let mut pairs = vec![("a", "b"), ("b", "c"), ("c", "a")];
        pairs.extend([("x", "y"), ("y", "z"), ("z", "w"), ("w", "x")]);
        assert!(!graph_from_pairs(&pairs).is_bipartite());
    }

    #[test]
    fn induced_subgraph_keeps_internal_edges() {
        let k3 = complete_graph(3);
        let a = k3.vertex_by_label("k0").unwrap();
        let b = k3.vertex_by_label("k1").unwrap();
        let (sub, map) = k3.induced_subgraph(&[a, b]);
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.edge_count(), 1);
        assert_eq!(map.to_original.len(), 2);
        assert_eq!(map.from_original[&a].index(), 0);

        let (empty, _) = k3.induced_subgraph(&[]);
        assert_eq!(empty.vertex_count(), 0);
    }

    #[test]
    fn components_partition_vertices() {
        let g = graph_from_pairs(&[("a", "b"), ("c", "d")]);
        let blocks = g.connected_components();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.len() == 2));

        let c5 = cycle_graph(5);
        assert_eq!(c5.connected_components().len(), 1);
    }

    #[test]
    fn edge_list_text_round_trip() {
        let g = graph_from_pairs(&[("b", "a"), ("b", "c")]);
        let text = g.to_edge_list_text();
        assert_eq!(text, "a b\nb c\n");
        let g2 = Graph::parse_edge_list(&text).unwrap();
        assert_eq!(g2.edge_count(), 2);
    }
}
