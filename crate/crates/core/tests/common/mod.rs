//! Brute-force oracles, written against adjacency queries only so that they
//! share no code with the library's recognisers or generator.

#![allow(dead_code)]

use std::collections::HashMap;

use outerq::{canonical_code, CanonicalCode, Graph};

/// Vertex pairs `(i, j)`, `i < j`, in the order used by [`labeled_graph`].
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// The labelled graph on `n` vertices whose edge set is the bits of `mask`.
pub fn labeled_graph(n: usize, mask: u64) -> Graph {
    let edges: Vec<(usize, usize)> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Every labelled graph on `n` vertices, one representative per canonical
/// code, filtered by `keep`.
pub fn filter_all(n: usize, keep: impl Fn(&Graph) -> bool) -> HashMap<CanonicalCode, Graph> {
    let m = n * (n - 1) / 2;
    let mut out = HashMap::new();
    for mask in 0..1u64 << m {
        let g = labeled_graph(n, mask);
        if keep(&g) {
            out.entry(canonical_code(&g)).or_insert(g);
        }
    }
    out
}

fn connected_within(g: &Graph, set: &[usize]) -> bool {
    if set.is_empty() {
        return true;
    }
    let mut seen = vec![set[0]];
    let mut i = 0;
    while i < seen.len() {
        let v = seen[i];
        for &w in set {
            if g.has_edge(v, w) && !seen.contains(&w) {
                seen.push(w);
            }
        }
        i += 1;
    }
    seen.len() == set.len()
}

pub fn connected(g: &Graph) -> bool {
    connected_within(g, &(0..g.order()).collect::<Vec<_>>())
}

/// Quotient of `g` after contracting every edge in `contract`: one vertex
/// per class of the resulting partition, adjacent when some edge joins the
/// classes.
fn contract(g: &Graph, contract: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut class: Vec<usize> = (0..n).collect();
    for &(a, b) in contract {
        let (ca, cb) = (class[a], class[b]);
        if ca != cb {
            for c in class.iter_mut() {
                if *c == cb {
                    *c = ca;
                }
            }
        }
    }
    let mut ids: Vec<usize> = class.clone();
    ids.sort_unstable();
    ids.dedup();
    let index = |c: usize| ids.binary_search(&c).unwrap();
    let k = ids.len();
    let mut adj = vec![vec![false; k]; k];
    for (u, v) in pairs(n) {
        let (a, b) = (index(class[u]), index(class[v]));
        if a != b && g.has_edge(u, v) {
            adj[a][b] = true;
            adj[b][a] = true;
        }
    }
    adj
}

/// Whether the graph with adjacency `adj` contains `h` (given by edges on
/// `h_order` vertices) as a subgraph, by trying every injective map.
fn contains_subgraph(adj: &[Vec<bool>], h_order: usize, h_edges: &[(usize, usize)]) -> bool {
    fn go(
        adj: &[Vec<bool>],
        h_order: usize,
        h_edges: &[(usize, usize)],
        map: &mut Vec<usize>,
    ) -> bool {
        if map.len() == h_order {
            return h_edges.iter().all(|&(a, b)| adj[map[a]][map[b]]);
        }
        for v in 0..adj.len() {
            if map.contains(&v) {
                continue;
            }
            map.push(v);
            // prune on edges whose endpoints are both placed
            let ok = h_edges
                .iter()
                .all(|&(a, b)| a >= map.len() || b >= map.len() || adj[map[a]][map[b]]);
            if ok && go(adj, h_order, h_edges, map) {
                return true;
            }
            map.pop();
        }
        false
    }
    go(adj, h_order, h_edges, &mut Vec::new())
}

pub const K4_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
pub const K23_EDGES: [(usize, usize); 6] = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];

/// Minor test by contraction: `h` is a minor of `g` iff contracting some
/// edge set leaves a graph with an `h` subgraph. Only sets of at most
/// `n - |h|` edges need trying, since contracting a spanning forest of each
/// branch set removes exactly that many vertices.
pub fn has_minor_by_contraction(g: &Graph, h_order: usize, h_edges: &[(usize, usize)]) -> bool {
    let n = g.order();
    if n < h_order {
        return false;
    }
    let edges: Vec<(usize, usize)> = pairs(n)
        .into_iter()
        .filter(|&(u, v)| g.has_edge(u, v))
        .collect();
    let budget = n - h_order;
    let mut chosen = Vec::new();
    fn subsets(
        g: &Graph,
        edges: &[(usize, usize)],
        start: usize,
        budget: usize,
        chosen: &mut Vec<(usize, usize)>,
        test: &dyn Fn(&Graph, &[(usize, usize)]) -> bool,
    ) -> bool {
        if test(g, chosen) {
            return true;
        }
        if chosen.len() == budget {
            return false;
        }
        for i in start..edges.len() {
            chosen.push(edges[i]);
            if subsets(g, edges, i + 1, budget, chosen, test) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let test = |g: &Graph, s: &[(usize, usize)]| {
        let q = contract(g, s);
        q.len() >= h_order && contains_subgraph(&q, h_order, h_edges)
    };
    subsets(g, &edges, 0, budget, &mut chosen, &test)
}

pub fn outerplanar_oracle(g: &Graph) -> bool {
    !has_minor_by_contraction(g, 4, &K4_EDGES) && !has_minor_by_contraction(g, 5, &K23_EDGES)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..1u32 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Whether the vertices of `set` can be ordered into a cycle of `g`.
fn hamiltonian_cycle_on(g: &Graph, set: &[usize]) -> bool {
    let (first, rest) = set.split_first().unwrap();
    let mut rest = rest.to_vec();
    loop {
        let mut order = vec![*first];
        order.extend(&rest);
        if (0..order.len()).all(|i| g.has_edge(order[i], order[(i + 1) % order.len()])) {
            return true;
        }
        if !next_permutation(&mut rest) {
            return false;
        }
    }
}

/// `C_l` subgraph test: some `l`-subset carries a Hamiltonian cycle.
pub fn cycle_oracle(g: &Graph, l: usize) -> bool {
    l <= g.order()
        && k_subsets(g.order(), l)
            .iter()
            .any(|s| hamiltonian_cycle_on(g, s))
}

/// Bit masks of the `l`-subsets that carry a Hamiltonian path, via the
/// usual subset-endpoint dynamic programme.
fn path_sets(g: &Graph, l: usize) -> Vec<u32> {
    let n = g.order();
    // reach[mask] = endpoints of Hamiltonian paths of g[mask]
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for mask in 1u32..1 << n {
        let ends = reach[mask as usize];
        if ends == 0 {
            continue;
        }
        for v in 0..n {
            if ends >> v & 1 == 0 {
                continue;
            }
            for w in 0..n {
                if mask >> w & 1 == 0 && g.has_edge(v, w) {
                    reach[(mask | 1 << w) as usize] |= 1 << w;
                }
            }
        }
    }
    (1u32..1 << n)
        .filter(|&m| m.count_ones() as usize == l && reach[m as usize] != 0)
        .collect()
}

/// `tP_l` subgraph test: `t` pairwise disjoint `l`-sets each carrying a
/// Hamiltonian path.
pub fn path_packing_oracle(g: &Graph, t: usize, l: usize) -> bool {
    if t * l > g.order() {
        return false;
    }
    let sets = path_sets(g, l);
    fn pack(sets: &[u32], start: usize, used: u32, left: usize) -> bool {
        left == 0
            || (start..sets.len())
                .any(|i| sets[i] & used == 0 && pack(sets, i + 1, used | sets[i], left - 1))
    }
    pack(&sets, 0, 0, t)
}
