//! Local structure of outerplanar graphs around a vertex.

use crate::graph::{Graph, VertexSet};

pub fn common_neighbors(g: &Graph, u: usize, v: usize) -> VertexSet {
    g.neighbors(u).intersection(g.neighbors(v))
}

/// Every component of `G[N(u)]` is a path (an isolated vertex counts as `P1`).
pub fn neighborhood_is_paths(g: &Graph, u: usize) -> bool {
    is_linear_forest(g, g.neighbors(u))
}

/// Whether `G[s]` is a disjoint union of paths.
pub fn is_linear_forest(g: &Graph, s: VertexSet) -> bool {
    if s.iter().any(|v| g.neighbors(v).intersection(s).len() > 2) {
        return false;
    }
    g.components_within(s)
        .into_iter()
        .all(|c| g.edges_within(c) + 1 == c.len())
}

/// Orders of the path components of `G[N(u)]`, largest first, or `None`
/// when the neighbourhood is not a linear forest.
pub fn neighborhood_path_orders(g: &Graph, u: usize) -> Option<Vec<usize>> {
    let s = g.neighbors(u);
    if !is_linear_forest(g, s) {
        return None;
    }
    let mut parts: Vec<usize> = g
        .components_within(s)
        .into_iter()
        .map(VertexSet::len)
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Some(parts)
}

/// One failed instance of the local outerplanar structure properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalStructureViolation {
    EdgeBound { edges: usize, order: usize },
    NeighborhoodNotPaths { u: usize },
    TooManyCommonNeighbors { u: usize, v: usize, common: usize },
    CommonPairMisplaced { u: usize, v: usize },
    CommonPairNotEndpoints { u: usize, v: usize },
    CommonPairsOverlap { u: usize, v1: usize, v2: usize },
}

impl std::fmt::Display for LocalStructureViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use LocalStructureViolation::*;
        match *self {
            EdgeBound { edges, order } => write!(f, "e = {edges} exceeds 2n-3 for n = {order}"),
            NeighborhoodNotPaths { u } => write!(f, "G[N({u})] is not a union of paths"),
            TooManyCommonNeighbors { u, v, common } => {
                write!(f, "|N({u}) ∩ N({v})| = {common} > 2")
            }
            CommonPairMisplaced { u, v } => {
                write!(f, "common neighbours of {u} and {v} are non-adjacent but share a component of G[N({u})]")
            }
            CommonPairNotEndpoints { u, v } => {
                write!(f, "common neighbours of {u} and {v} lie in different paths of G[N({u})] but are not both endpoints")
            }
            CommonPairsOverlap { u, v1, v2 } => {
                write!(
                    f,
                    "vertices {v1} and {v2} outside N[{u}] share a common neighbour with {u}"
                )
            }
        }
    }
}

/// Checks the edge bound and items (i)–(iv) of the local structure lemma for
/// every vertex of `g`, returning all violations found.
pub fn local_structure_violations(g: &Graph) -> Vec<LocalStructureViolation> {
    use LocalStructureViolation::*;
    let n = g.order();
    let mut out = Vec::new();
    if n >= 2 && g.size() + 3 > 2 * n {
        out.push(EdgeBound {
            edges: g.size(),
            order: n,
        });
    }
    for u in 0..n {
        let nu = g.neighbors(u);
        let linear = is_linear_forest(g, nu);
        if !linear {
            out.push(NeighborhoodNotPaths { u });
        }
        let comps = g.components_within(nu);
        let comp_of = |x: usize| comps.iter().position(|c| c.contains(x));
        let mut pairs: Vec<(usize, VertexSet)> = Vec::new();
        for v in 0..n {
            if v == u {
                continue;
            }
            let common = common_neighbors(g, u, v);
            if common.len() > 2 {
                out.push(TooManyCommonNeighbors {
                    u,
                    v,
                    common: common.len(),
                });
            }
            if common.len() == 2 && !nu.contains(v) {
                let mut it = common.iter();
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                if !g.has_edge(a, b) {
                    if comp_of(a) == comp_of(b) {
                        out.push(CommonPairMisplaced { u, v });
                    } else if g.neighbors(a).intersection(nu).len() > 1
                        || g.neighbors(b).intersection(nu).len() > 1
                    {
                        out.push(CommonPairNotEndpoints { u, v });
                    }
                }
                pairs.push((v, common));
            }
        }
        for (i, &(v1, c1)) in pairs.iter().enumerate() {
            for &(v2, c2) in &pairs[i + 1..] {
                if !c1.is_disjoint(c2) {
                    out.push(CommonPairsOverlap { u, v1, v2 });
                }
            }
        }
    }
    out
}
