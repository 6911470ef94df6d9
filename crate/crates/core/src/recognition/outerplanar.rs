//! Outerplanarity.
//!
//! [`is_outerplanar`] works block by block. A 2-connected outerplanar block
//! on at least three vertices has a unique Hamiltonian cycle, and contracting
//! one edge at a degree-2 vertex keeps the block 2-connected and outerplanar
//! while preserving that cycle. Repeatedly contracting degree-2 vertices down
//! to a triangle and re-inserting them therefore reconstructs the only
//! candidate boundary cycle; the block is outerplanar iff that candidate uses
//! real edges and the remaining edges are pairwise non-crossing chords.
//!
//! [`is_outerplanar_by_minors`] is the forbidden-minor characterisation
//! (no `K4`, no `K2,3`) and is kept as an independent route.

use crate::graph::{Graph, VertexSet};

use super::minor::{has_minor, MinorPattern};

pub fn is_outerplanar(g: &Graph) -> bool {
    if !passes_edge_bound(g) {
        return false;
    }
    let (_, blocks) = g.blocks();
    blocks
        .into_iter()
        .all(|b| b.len() <= 3 || block_is_outerplanar(g, b))
}

pub fn is_outerplanar_by_minors(g: &Graph) -> bool {
    passes_edge_bound(g) && !has_minor(g, MinorPattern::K4) && !has_minor(g, MinorPattern::K23)
}

/// `e <= 2n' - 3` on every component with at least two vertices.
pub fn passes_edge_bound(g: &Graph) -> bool {
    g.components()
        .into_iter()
        .all(|c| c.len() < 2 || g.edges_within(c) + 3 <= 2 * c.len())
}

fn block_is_outerplanar(g: &Graph, block: VertexSet) -> bool {
    let local = g.induced(block).expect("block is non-empty");
    let k = local.order();
    if local.size() + 3 > 2 * k {
        return false;
    }
    let orig = local.rows();
    let mut work: Vec<u64> = orig.to_vec();
    let mut alive = VertexSet::full(k);
    let mut removed: Vec<(usize, usize, usize)> = Vec::with_capacity(k);

    while alive.len() > 3 {
        let Some(v) = alive.iter().find(|&v| work[v].count_ones() == 2) else {
            return false;
        };
        let mut nb = VertexSet(work[v]).iter();
        let (a, b) = (nb.next().unwrap(), nb.next().unwrap());
        work[a] = (work[a] & !(1 << v)) | 1 << b;
        work[b] = (work[b] & !(1 << v)) | 1 << a;
        work[v] = 0;
        alive = alive.without(v);
        removed.push((v, a, b));
    }

    let tri: Vec<usize> = alive.iter().collect();
    if tri.len() != 3 || !tri.iter().all(|&v| work[v].count_ones() == 2) {
        return false;
    }
    let mut next = vec![usize::MAX; k];
    next[tri[0]] = tri[1];
    next[tri[1]] = tri[2];
    next[tri[2]] = tri[0];
    for &(v, a, b) in removed.iter().rev() {
        if next[a] == b {
            next[a] = v;
            next[v] = b;
        } else if next[b] == a {
            next[b] = v;
            next[v] = a;
        } else {
            return false;
        }
    }

    let mut pos = vec![0usize; k];
    let mut cur = 0;
    for i in 0..k {
        pos[cur] = i;
        let nxt = next[cur];
        if orig[cur] >> nxt & 1 == 0 {
            return false;
        }
        cur = nxt;
    }
    if cur != 0 {
        return false;
    }

    let mut chords: Vec<(usize, usize)> = local
        .edges()
        .map(|(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
        .filter(|&(p, q)| q - p != 1 && !(p == 0 && q == k - 1))
        .collect();
    chords.sort_unstable();
    for (i, &(p1, q1)) in chords.iter().enumerate() {
        for &(p2, q2) in &chords[i + 1..] {
            if p1 < p2 && p2 < q1 && q1 < q2 {
                return false;
            }
        }
    }
    true
}
