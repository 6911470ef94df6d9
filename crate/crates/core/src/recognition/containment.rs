//! Subgraph (not induced) containment of cycles and disjoint path unions.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::pattern::ForbiddenPattern;

/// Whether `g` has a cycle on exactly `len` vertices.
pub fn contains_cycle(g: &Graph, len: usize) -> Result<bool> {
    if len < 3 {
        return Err(Error::InvalidPattern(format!(
            "C{len}: a cycle needs at least 3 vertices"
        )));
    }
    if len > g.order() {
        return Ok(false);
    }
    for start in 0..g.order() {
        // the cycle's smallest vertex is `start`
        let allowed = VertexSet(g.vertices().0 & !((2u64 << start).wrapping_sub(1)));
        if g.neighbors(start).intersection(allowed).len() < 2 {
            continue;
        }
        if cycle_from(
            g,
            start,
            start,
            allowed,
            VertexSet::singleton(start),
            1,
            len,
        ) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn cycle_from(
    g: &Graph,
    start: usize,
    cur: usize,
    allowed: VertexSet,
    used: VertexSet,
    count: usize,
    len: usize,
) -> bool {
    if count == len {
        return g.has_edge(cur, start);
    }
    let reachable = g.reach(cur, allowed.difference(used).with(cur));
    if reachable.len() - 1 < len - count {
        return false;
    }
    for w in g.neighbors(cur).intersection(allowed).difference(used) {
        // orient each cycle once: the second vertex is smaller than the last
        if count == 1
            && g.neighbors(start)
                .intersection(allowed)
                .iter()
                .all(|z| z <= w)
        {
            continue;
        }
        if cycle_from(g, start, w, allowed, used.with(w), count + 1, len) {
            return true;
        }
    }
    false
}

/// Whether `g` contains `copies` vertex-disjoint paths, each on exactly `len` vertices.
pub fn contains_disjoint_paths(g: &Graph, copies: usize, len: usize) -> Result<bool> {
    if copies == 0 || len < 2 {
        return Err(Error::InvalidPattern(format!(
            "{copies}P{len}: need t >= 1 and l >= 2"
        )));
    }
    if copies * len > g.order() {
        return Ok(false);
    }
    Ok(pack_paths(g, copies, len, VertexSet::EMPTY, 0))
}

/// Paths are found in increasing order of their smallest vertex.
fn pack_paths(g: &Graph, left: usize, len: usize, used: VertexSet, floor: usize) -> bool {
    if left == 0 {
        return true;
    }
    let avail = g.vertices().difference(used);
    if avail.len() < left * len {
        return false;
    }
    for m in avail.iter().filter(|&m| m >= floor) {
        let allowed = VertexSet(avail.0 & !((1u64 << m) - 1));
        if allowed.len() < left * len {
            break;
        }
        let mut seen = HashSet::new();
        let mut found = false;
        paths_through(g, m, len, allowed, &mut |set| {
            if seen.insert(set) && pack_paths(g, left - 1, len, used.union(set), m + 1) {
                found = true;
            }
            found
        });
        if found {
            return true;
        }
    }
    false
}

/// Calls `visit` with the vertex set of every path on `len` vertices that
/// contains `m` and stays inside `allowed`; stops once `visit` returns true.
fn paths_through(
    g: &Graph,
    m: usize,
    len: usize,
    allowed: VertexSet,
    visit: &mut dyn FnMut(VertexSet) -> bool,
) {
    // first arm from m uses `a` further vertices, second arm the rest
    fn arm(
        g: &Graph,
        cur: usize,
        remaining: usize,
        allowed: VertexSet,
        used: VertexSet,
        then: &mut dyn FnMut(VertexSet) -> bool,
    ) -> bool {
        if remaining == 0 {
            return then(used);
        }
        for w in g.neighbors(cur).intersection(allowed).difference(used) {
            if arm(g, w, remaining - 1, allowed, used.with(w), then) {
                return true;
            }
        }
        false
    }
    let start = VertexSet::singleton(m);
    for first in (0..len).rev() {
        let second = len - 1 - first;
        if second > first {
            break;
        }
        let stop = arm(g, m, first, allowed, start, &mut |used1| {
            arm(g, m, second, allowed, used1, &mut |used2| visit(used2))
        });
        if stop {
            return;
        }
    }
}

pub fn contains_pattern(g: &Graph, pattern: ForbiddenPattern) -> bool {
    match pattern {
        ForbiddenPattern::Cycle { len } => contains_cycle(g, len).expect("validated pattern"),
        ForbiddenPattern::PathUnion { copies, len } => {
            contains_disjoint_paths(g, copies, len).expect("validated pattern")
        }
    }
}

pub fn is_f_free(g: &Graph, pattern: ForbiddenPattern) -> bool {
    !contains_pattern(g, pattern)
}
