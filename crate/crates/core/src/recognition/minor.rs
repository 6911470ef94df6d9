//! Branch-set search for the two outerplanarity obstructions.
//!
//! Both `K4` and `K2,3` are 2-connected with maximum degree 3, so a minor
//! exists iff some block of the graph contains a subdivision of the pattern.
//! Blocks are screened with necessary counts (cyclomatic number and vertices
//! of block-degree at least 3) before the exponential search over connected
//! vertex subsets runs. Intended for blocks of at most a couple of dozen
//! vertices.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MinorPattern {
    K4,
    K23,
}

impl FromStr for MinorPattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s
            .trim()
            .replace(['_', '{', '}', ' '], "")
            .to_ascii_uppercase()
            .as_str()
        {
            "K4" => Ok(MinorPattern::K4),
            "K2,3" | "K23" | "K3,2" => Ok(MinorPattern::K23),
            _ => Err(Error::UnsupportedMinor(s.to_string())),
        }
    }
}

/// Parses `name` and runs [`has_minor`].
pub fn has_minor_named(g: &Graph, name: &str) -> Result<bool> {
    Ok(has_minor(g, name.parse()?))
}

pub fn has_minor(g: &Graph, pattern: MinorPattern) -> bool {
    let (_, blocks) = g.blocks();
    blocks.into_iter().any(|b| block_has_minor(g, b, pattern))
}

fn block_has_minor(g: &Graph, block: VertexSet, pattern: MinorPattern) -> bool {
    let nb = block.len();
    let mb = g.edges_within(block);
    let branch_vertices = block
        .iter()
        .filter(|&v| g.neighbors(v).intersection(block).len() >= 3)
        .count();
    let feasible = match pattern {
        MinorPattern::K4 => nb >= 4 && mb >= nb + 2 && branch_vertices >= 4,
        MinorPattern::K23 => nb >= 5 && mb > nb && branch_vertices >= 2,
    };
    if !feasible {
        return false;
    }
    let sets = connected_subsets(g, block);
    match pattern {
        MinorPattern::K4 => k4_search(&sets, &mut Vec::with_capacity(4), VertexSet::EMPTY),
        MinorPattern::K23 => k23_search(g, block, &sets),
    }
}

/// A connected vertex subset together with its neighbourhood inside the block.
#[derive(Clone, Copy)]
struct Branch {
    set: VertexSet,
    nbr: VertexSet,
    min: usize,
}

/// Every non-empty connected subset of `within`, each produced once, ordered
/// by smallest vertex.
fn connected_subsets(g: &Graph, within: VertexSet) -> Vec<Branch> {
    // `within` limits growth to vertices above the root; neighbourhoods are
    // taken in the whole `block`
    fn grow(
        g: &Graph,
        block: VertexSet,
        within: VertexSet,
        set: VertexSet,
        ext: VertexSet,
        forbidden: VertexSet,
        out: &mut Vec<Branch>,
    ) {
        let nbr = set
            .iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(g.neighbors(v)));
        out.push(Branch {
            set,
            nbr: nbr.intersection(block).difference(set),
            min: set.first().unwrap(),
        });
        let mut forbidden = forbidden;
        for w in ext {
            let next_set = set.with(w);
            let next_ext = ext
                .union(g.neighbors(w).intersection(within))
                .difference(next_set)
                .difference(forbidden)
                .without(w);
            grow(g, block, within, next_set, next_ext, forbidden.with(w), out);
            forbidden = forbidden.with(w);
        }
    }
    let mut out = Vec::new();
    for r in within {
        let higher = VertexSet(within.0 & !((2u64 << r).wrapping_sub(1)));
        let lower = within.difference(higher).without(r);
        let ext = g.neighbors(r).intersection(higher);
        grow(
            g,
            within,
            higher.with(r),
            VertexSet::singleton(r),
            ext,
            lower,
            &mut out,
        );
    }
    out
}

/// Four pairwise adjacent disjoint branch sets, chosen in increasing order of
/// their smallest vertex.
fn k4_search(sets: &[Branch], chosen: &mut Vec<Branch>, used: VertexSet) -> bool {
    if chosen.len() == 4 {
        return true;
    }
    let floor = chosen.last().map_or(0, |b| b.min + 1);
    for b in sets {
        if b.min < floor || !b.set.is_disjoint(used) {
            continue;
        }
        if chosen.iter().all(|c| !c.nbr.is_disjoint(b.set)) {
            chosen.push(*b);
            if k4_search(sets, chosen, used.union(b.set)) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Picks the two degree-3 branch sets, then asks for three disjoint connected
/// sets touching both, which is three vertex-disjoint paths between their
/// neighbourhoods in the rest of the block.
fn k23_search(g: &Graph, block: VertexSet, sets: &[Branch]) -> bool {
    let candidates: Vec<&Branch> = sets.iter().filter(|b| b.nbr.len() >= 3).collect();
    for (i, a1) in candidates.iter().enumerate() {
        for a2 in &candidates[i + 1..] {
            if !a1.set.is_disjoint(a2.set) {
                continue;
            }
            let rest = block.difference(a1.set).difference(a2.set);
            let x = a1.nbr.intersection(rest);
            let y = a2.nbr.intersection(rest);
            if x.len() < 3 || y.len() < 3 {
                continue;
            }
            if disjoint_paths_at_least(g, rest, x, y, 3) {
                return true;
            }
        }
    }
    false
}

/// Whether `k` vertex-disjoint `x`–`y` paths exist inside `within`
/// (a single vertex of `x ∩ y` counts as a path).
pub(crate) fn disjoint_paths_at_least(
    g: &Graph,
    within: VertexSet,
    x: VertexSet,
    y: VertexSet,
    k: usize,
) -> bool {
    // node 2i = in(v_i), 2i+1 = out(v_i), then source and sink
    let verts: Vec<usize> = within.iter().collect();
    let mut index = [usize::MAX; 64];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let m = verts.len();
    let (src, sink) = (2 * m, 2 * m + 1);
    let size = 2 * m + 2;
    let mut cap = vec![vec![0i32; size]; size];
    for (i, &v) in verts.iter().enumerate() {
        cap[2 * i][2 * i + 1] = 1;
        if x.contains(v) {
            cap[src][2 * i] = 1;
        }
        if y.contains(v) {
            cap[2 * i + 1][sink] = 1;
        }
        for w in g.neighbors(v).intersection(within) {
            cap[2 * i + 1][2 * index[w]] = 1;
        }
    }
    let mut flow = 0;
    while flow < k {
        let mut prev = vec![usize::MAX; size];
        prev[src] = src;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for b in 0..size {
                if prev[b] == usize::MAX && cap[a][b] > 0 {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return false;
        }
        let mut b = sink;
        while b != src {
            let a = prev[b];
            cap[a][b] -= 1;
            cap[b][a] += 1;
            b = a;
        }
        flow += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k23_found_whatever_the_labels() {
        // parts {0, 2} and {1, 3, 4}
        let g = Graph::from_edges(5, &[(0, 1), (0, 3), (0, 4), (1, 2), (2, 3), (2, 4)]).unwrap();
        assert!(has_minor(&g, MinorPattern::K23));
    }

    #[test]
    fn patterns_contain_themselves() {
        assert!(has_minor(&Graph::complete(4).unwrap(), MinorPattern::K4));
        let k23 = Graph::complete_bipartite(2, 3).unwrap();
        assert!(has_minor(&k23, MinorPattern::K23));
        assert!(!has_minor(&k23, MinorPattern::K4));
        assert!(!has_minor(&Graph::complete(4).unwrap(), MinorPattern::K23));
    }

    #[test]
    fn subdivisions_and_larger_hosts() {
        // K4 with every edge subdivided once
        let mut edges = Vec::new();
        let mut next = 4;
        for (a, b) in Graph::complete(4).unwrap().edges() {
            edges.push((a, next));
            edges.push((next, b));
            next += 1;
        }
        let sub = Graph::from_edges(10, &edges).unwrap();
        assert!(has_minor(&sub, MinorPattern::K4));
        assert!(has_minor(&Graph::complete(5).unwrap(), MinorPattern::K23));
        // wheel W5 has a K4 minor
        let wheel = Graph::join_one(&Graph::cycle(5).unwrap()).unwrap();
        assert!(has_minor(&wheel, MinorPattern::K4));
        // fans are outerplanar
        let fan = Graph::join_one(&Graph::path(6).unwrap()).unwrap();
        assert!(!has_minor(&fan, MinorPattern::K4));
        assert!(!has_minor(&fan, MinorPattern::K23));
    }

    #[test]
    fn connected_subset_count() {
        // connected subsets of P4: 4 + 3 + 2 + 1
        let p4 = Graph::path(4).unwrap();
        assert_eq!(connected_subsets(&p4, p4.vertices()).len(), 10);
        // all 15 non-empty subsets of K4 are connected
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(connected_subsets(&k4, k4.vertices()).len(), 15);
        // C5: 5 * 4 proper arcs + the whole cycle
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(connected_subsets(&c5, c5.vertices()).len(), 21);
    }

    #[test]
    fn unsupported_names() {
        assert!(matches!(
            has_minor_named(&Graph::path(3).unwrap(), "K5"),
            Err(Error::UnsupportedMinor(_))
        ));
        assert_eq!(
            has_minor_named(&Graph::complete(4).unwrap(), "K_4"),
            Ok(true)
        );
        assert_eq!(
            has_minor_named(&Graph::complete(4).unwrap(), "K_{2,3}"),
            Ok(false)
        );
    }
}
