//! Small simple undirected graphs with one machine word per adjacency row.
//!
//! Every graph holds at most [`MAX_ORDER`] vertices, labelled `0..n`. Values
//! are immutable: the edge mutators return a modified copy.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 64;

/// A set of vertices of a graph on at most 64 vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        vs.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Immutable simple undirected graph on `1..=64` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.order(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidOrder {
            order: n,
            reason: "a graph needs at least one vertex",
        });
    }
    if n > MAX_ORDER {
        return Err(Error::Capacity {
            requested: n,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::EdgeState {
                    u,
                    v,
                    reason: "self-loops are not allowed",
                });
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, checking symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        check_order(rows.len())?;
        let n = rows.len();
        let mask = VertexSet::full(n).0;
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::Graph6(format!(
                    "row {u} references vertices beyond {n}"
                )));
            }
            if row >> u & 1 == 1 {
                return Err(Error::EdgeState {
                    u,
                    v: u,
                    reason: "self-loops are not allowed",
                });
            }
            for v in VertexSet(row) {
                if rows[v] >> u & 1 == 0 {
                    return Err(Error::EdgeState {
                        u,
                        v,
                        reason: "adjacency is not symmetric",
                    });
                }
            }
        }
        Ok(Graph { adj: rows })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    fn clear_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Closed neighbourhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v]).with(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u] >> v & 1 == 1
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            VertexSet(self.adj[u] & !((2u64 << u).wrapping_sub(1)))
                .iter()
                .map(move |v| (u, v))
        })
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter()
            .map(|v| (self.adj[v] & s.0).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Number of edges between the disjoint sets `s` and `t`.
    pub fn edges_between(&self, s: VertexSet, t: VertexSet) -> usize {
        s.iter()
            .map(|v| (self.adj[v] & t.0).count_ones() as usize)
            .sum()
    }

    /// Returns `self + uv`.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::EdgeState {
                u,
                v,
                reason: "self-loops are not allowed",
            });
        }
        if self.has_edge(u, v) {
            return Err(Error::EdgeState {
                u,
                v,
                reason: "edge already present",
            });
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    /// Returns `self - uv`.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::EdgeState {
                u,
                v,
                reason: "edge not present",
            });
        }
        let mut g = self.clone();
        g.clear_edge(u, v);
        Ok(g)
    }

    /// Applies a batch of deletions then insertions, failing on the first
    /// edge in the wrong state.
    pub fn rewire(&self, removed: &[(usize, usize)], added: &[(usize, usize)]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in removed {
            g = g.remove_edge(u, v)?;
        }
        for &(u, v) in added {
            g = g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Subgraph induced by `s`, relabelled by increasing original index.
    pub fn induced(&self, s: VertexSet) -> Result<Graph> {
        let verts: Vec<usize> = s.intersection(self.vertices()).iter().collect();
        check_order(verts.len())?;
        let rows = verts
            .iter()
            .map(|&v| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.has_edge(v, w))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Ok(Graph { adj: rows })
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order(), "permutation length mismatch");
        let mut rows = vec![0u64; self.order()];
        for (u, v) in self.edges() {
            rows[perm[u]] |= 1 << perm[v];
            rows[perm[v]] |= 1 << perm[u];
        }
        Graph { adj: rows }
    }

    /// Adds one isolated vertex with neighbourhood `nbrs`.
    pub fn extended(&self, nbrs: VertexSet) -> Result<Graph> {
        let n = self.order();
        check_order(n + 1)?;
        let mut rows = self.adj.clone();
        for v in nbrs.intersection(self.vertices()) {
            rows[v] |= 1 << n;
        }
        rows.push(nbrs.intersection(self.vertices()).0);
        Ok(Graph { adj: rows })
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u64;
            for v in frontier {
                next |= self.adj[v];
            }
            frontier = VertexSet(next).intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, self.vertices()) == self.vertices()
    }

    /// Whether `s` induces a connected subgraph. The empty set is not connected.
    pub fn is_connected_set(&self, s: VertexSet) -> bool {
        match s.first() {
            None => false,
            Some(v) => self.reach(v, s) == s,
        }
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn components_within(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.reach(v, rest);
            out.push(c);
            rest = rest.difference(c);
        }
        out
    }

    /// Cut vertices together with the vertex sets of the blocks
    /// (maximal 2-connected subgraphs, bridges and isolated vertices included).
    pub fn blocks(&self) -> (VertexSet, Vec<VertexSet>) {
        let n = self.order();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cut = VertexSet::EMPTY;
        let mut blocks = Vec::new();
        let mut time = 0usize;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            if self.adj[root] == 0 {
                blocks.push(VertexSet::singleton(root));
                continue;
            }
            let mut root_children = 0;
            // (vertex, parent, remaining neighbours)
            let mut stack: Vec<(usize, usize, u64)> = vec![(root, usize::MAX, self.adj[root])];
            while let Some(top) = stack.last_mut() {
                let (v, parent, rem) = *top;
                if rem != 0 {
                    let w = rem.trailing_zeros() as usize;
                    top.2 &= rem - 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push((v, w));
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, self.adj[w]));
                    } else if disc[w] < disc[v] {
                        edge_stack.push((v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] >= disc[parent] {
                            if parent != root {
                                cut = cut.with(parent);
                            }
                            let mut b = VertexSet::EMPTY;
                            while let Some((a, c)) = edge_stack.pop() {
                                b = b.with(a).with(c);
                                if (a, c) == (parent, v) {
                                    break;
                                }
                            }
                            blocks.push(b);
                        }
                    }
                }
            }
            if root_children > 1 {
                cut = cut.with(root);
            }
        }
        (cut, blocks)
    }

    pub fn cut_vertices(&self) -> VertexSet {
        self.blocks().0
    }

    /// `P_k`.
    pub fn path(k: usize) -> Result<Graph> {
        check_order(k)?;
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Graph::from_edges(k, &edges)
    }

    /// `C_k`, `k >= 3`.
    pub fn cycle(k: usize) -> Result<Graph> {
        if k < 3 {
            return Err(Error::InvalidOrder {
                order: k,
                reason: "a cycle needs at least 3 vertices",
            });
        }
        check_order(k)?;
        let mut edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        edges.push((k - 1, 0));
        Graph::from_edges(k, &edges)
    }

    /// `K_{1,k-1}` with centre 0.
    pub fn star(k: usize) -> Result<Graph> {
        check_order(k)?;
        let edges: Vec<_> = (1..k).map(|i| (0, i)).collect();
        Graph::from_edges(k, &edges)
    }

    pub fn complete(k: usize) -> Result<Graph> {
        check_order(k)?;
        let rows = (0..k).map(|v| VertexSet::full(k).without(v).0).collect();
        Ok(Graph { adj: rows })
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
        check_order(a + b)?;
        let mut edges = Vec::new();
        for i in 0..a {
            for j in a..a + b {
                edges.push((i, j));
            }
        }
        Graph::from_edges(a + b, &edges)
    }

    /// Vertex-disjoint union; vertices of `gs[i]` follow those of `gs[i-1]`.
    pub fn disjoint_union(gs: &[Graph]) -> Result<Graph> {
        let total: usize = gs.iter().map(Graph::order).sum();
        check_order(total)?;
        let mut rows = Vec::with_capacity(total);
        let mut offset = 0;
        for g in gs {
            rows.extend(g.adj.iter().map(|&r| r << offset));
            offset += g.order();
        }
        Ok(Graph { adj: rows })
    }

    /// `K_1 ∨ g`; the new vertex is 0 and `g`'s vertices shift up by one.
    pub fn join_one(g: &Graph) -> Result<Graph> {
        let n = g.order() + 1;
        check_order(n)?;
        let mut rows = Vec::with_capacity(n);
        rows.push(VertexSet::full(n).without(0).0);
        rows.extend(g.adj.iter().map(|&r| (r << 1) | 1));
        Ok(Graph { adj: rows })
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> VertexSet {
        let n = self.order();
        VertexSet::from_vertices((0..n).filter(|&v| self.degree(v) == n - 1))
    }

    pub fn is_star(&self) -> bool {
        let n = self.order();
        if n < 2 || self.size() != n - 1 {
            return false;
        }
        n == 2 || (0..n).any(|v| self.degree(v) == n - 1)
    }
}
